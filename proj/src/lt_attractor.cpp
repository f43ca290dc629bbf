#include "stokes/lt_attractor.hpp"

#include "stokes/errors.hpp"
#include "stokes/operators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace stokes {

namespace {

void require_params(const FluidParams& p) {
    if (p.n != 2) throw std::invalid_argument("the dimension bound is implemented for n = 2");
    const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(p.measure) || !positive(p.nu) || !positive(p.f_norm) || !positive(p.lambda1))
        throw std::invalid_argument("fluid parameters must be positive and finite");
}

double quadratic_a(const FluidParams& p) { return p.nu * lt_constants().c_sp / (2.0 * p.measure); }

double quadratic_b(const FluidParams& p) {
    const double g = p.grashof();
    return p.nu * p.lambda1 * lt_constants().c_LT * g * g / 4.0;
}

}  // namespace

LTConstants lt_constants() {
    LTConstants c;
    c.R = std::numbers::pi / std::sqrt(3.0);
    c.L_cl_1_2 = 1.0 / (8.0 * std::numbers::pi);
    c.c_LT = 4.0 * c.R * c.L_cl_1_2;
    c.c_sp = 2.0 * std::numbers::pi;
    return c;
}

double classical_lt_constant(double gamma, int n) {
    if (!(gamma >= 0.0) || n < 1) throw std::invalid_argument("need gamma >= 0 and n >= 1");
    return std::tgamma(gamma + 1.0) /
           (std::pow(4.0 * std::numbers::pi, 0.5 * n) * std::tgamma(gamma + 0.5 * n + 1.0));
}

ScalarField density(const std::vector<VectorField2>& family) {
    if (family.empty()) throw std::invalid_argument("density needs a nonempty family");
    const DomainPtr& d = family.front().domain_ptr();
    ScalarField rho(d);
    for (const auto& v : family) {
        require_same_grid(*d, v.domain());
        rho.values() += v.u1().cwiseAbs2() + v.u2().cwiseAbs2();
    }
    return rho;
}

BoundCheck lt_check(const std::vector<VectorField2>& family) {
    const ScalarField rho = density(family);
    const GriddedDomain& d = rho.domain();
    const Eigen::MatrixXd g = gram_matrix(family);
    const double dev = (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
    if (!(dev <= 2e-2)) {
        std::ostringstream msg;
        msg << "family is not orthonormal: max |G - I| = " << dev << " exceeds 0.02";
        throw OrthonormalityViolation(msg.str(), dev);
    }
    double energy = 0.0;
    for (const auto& v : family) {
        const double scale = std::max(v.u1().cwiseAbs().maxCoeff(), v.u2().cwiseAbs().maxCoeff()) / d.h();
        if (max_interior_divergence(v) > 1e-8 * scale)
            throw std::invalid_argument("Lieb-Thirring check needs discretely divergence-free fields");
        energy += grad_norm_sq(v);
    }
    const double lhs = inner(rho, rho);
    const double rhs = lt_constants().c_LT * energy;
    return make_check("lieb_thirring", BoundCheck::Sense::upper, static_cast<int>(family.size()), lhs, rhs,
                      0.02 * rhs, 2, d.measure());
}

double FluidParams::grashof() const { return f_norm / (lambda1 * nu * nu); }

DimBound dim_bound(const FluidParams& params) {
    require_params(params);
    const LTConstants c = lt_constants();
    DimBound out;
    out.grashof = params.grashof();
    out.a = quadratic_a(params);
    out.b = quadratic_b(params);
    out.m_star = std::sqrt(c.c_LT / (2.0 * c.c_sp)) * std::sqrt(params.lambda1 * params.measure) * out.grashof;
    out.dim_bound = out.m_star;
    out.dim_bound_coarse = params.f_norm * params.measure /
                           (4.0 * std::numbers::pi * std::pow(3.0, 0.25) * params.nu * params.nu);
    out.lambda1_admissible = params.lambda1 > 2.0 * std::numbers::pi / params.measure;
    out.lambda1_source = params.lambda1_source;
    if (!out.lambda1_admissible) {
        std::ostringstream msg;
        msg << "lambda1 = " << params.lambda1 << " does not exceed 2 pi / |Omega| = "
            << 2.0 * std::numbers::pi / params.measure << "; the coarse bound need not dominate";
        out.warning = msg.str();
    }
    return out;
}

double q_upper(const FluidParams& params, double m) {
    require_params(params);
    if (!(m >= 0.0)) throw std::invalid_argument("m must be nonnegative");
    return -quadratic_a(params) * m * m + quadratic_b(params);
}

}  // namespace stokes
