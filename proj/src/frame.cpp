#include "stokes/frame.hpp"

#include "stokes/errors.hpp"
#include "stokes/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace stokes {

namespace {

using cplx = std::complex<double>;

std::vector<cplx> axis_phases(int count, double origin, double h, double frequency) {
    std::vector<cplx> out(static_cast<std::size_t>(count) + 1);
    for (int i = 0; i <= count; ++i) out[static_cast<std::size_t>(i)] = std::polar(1.0, -frequency * (origin + i * h));
    return out;
}

cplx transform(const GriddedDomain& d, const Eigen::VectorXd& values, Frequency xi) {
    const auto ex = axis_phases(d.nx(), d.x0(), d.h(), xi.x);
    const auto ey = axis_phases(d.ny(), d.y0(), d.h(), xi.y);
    cplx sum = 0.0;
    for (int k = 0; k < d.interior_count(); ++k) {
        const Node p = d.node(k);
        sum += ex[static_cast<std::size_t>(p.i)] * ey[static_cast<std::size_t>(p.j)] * values[k];
    }
    return d.h() * d.h() * sum;
}

// Transforms of every column of F at a batch of frequencies: rows = columns of F.
void batch_transform(const GriddedDomain& d, const Eigen::MatrixXd& F, std::span<const Frequency> xs,
                     Eigen::MatrixXd& re, Eigen::MatrixXd& im) {
    const int n = d.interior_count();
    const auto count = static_cast<int>(xs.size());
    Eigen::MatrixXd pr(n, count);
    Eigen::MatrixXd pi(n, count);
    for (int b = 0; b < count; ++b) {
        const auto ex = axis_phases(d.nx(), d.x0(), d.h(), xs[static_cast<std::size_t>(b)].x);
        const auto ey = axis_phases(d.ny(), d.y0(), d.h(), xs[static_cast<std::size_t>(b)].y);
        for (int k = 0; k < n; ++k) {
            const Node p = d.node(k);
            const cplx phase = ex[static_cast<std::size_t>(p.i)] * ey[static_cast<std::size_t>(p.j)];
            pr(k, b) = phase.real();
            pi(k, b) = phase.imag();
        }
    }
    const double w = d.h() * d.h();
    re.noalias() = w * (F.transpose() * pr);
    im.noalias() = w * (F.transpose() * pi);
}

double max_eigenvalue(const Eigen::MatrixXd& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

double deviation(const Eigen::MatrixXd& g) {
    return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

template <typename Family>
void require_orthonormal(const Family& family, double tol) {
    if (family.empty()) throw std::invalid_argument("frame check needs a nonempty family");
    const double dev = deviation(gram_matrix(family));
    if (!(dev <= tol)) {
        std::ostringstream msg;
        msg << "family is not orthonormal: max |G - I| = " << dev << " exceeds " << tol;
        throw OrthonormalityViolation(msg.str(), dev);
    }
}

constexpr std::size_t kBatch = 64;

}  // namespace

std::complex<double> fourier_at(const ScalarField& field, Frequency xi) {
    return transform(field.domain(), field.values(), xi);
}

std::array<std::complex<double>, 2> fourier_at(const VectorField2& field, Frequency xi) {
    return {transform(field.domain(), field.u1(), xi), transform(field.domain(), field.u2(), xi)};
}

double gram_max_eigenvalue(const std::vector<ScalarField>& family) {
    if (family.empty()) throw std::invalid_argument("empty family");
    return max_eigenvalue(gram_matrix(family));
}

double gram_max_eigenvalue(const std::vector<VectorField2>& family) {
    if (family.empty()) throw std::invalid_argument("empty family");
    return max_eigenvalue(gram_matrix(family));
}

double orthonormality_deviation(const std::vector<ScalarField>& family) {
    return deviation(gram_matrix(family));
}

double orthonormality_deviation(const std::vector<VectorField2>& family) {
    return deviation(gram_matrix(family));
}

std::vector<ScalarField> project_component(const std::vector<VectorField2>& family, int axis) {
    std::vector<ScalarField> out;
    out.reserve(family.size());
    for (const auto& u : family) out.push_back(u.component(axis));
    return out;
}

std::vector<Frequency> default_xi_grid(const GriddedDomain& domain, std::uint64_t seed) {
    constexpr int kLattice = 32;
    const double two_pi = 2.0 * std::numbers::pi;
    const double lx = domain.nx() * domain.h();
    const double ly = domain.ny() * domain.h();
    std::vector<Frequency> grid;
    grid.reserve((2 * kLattice + 1) * (2 * kLattice + 1) + 3 * 64);
    for (int q = -kLattice; q <= kLattice; ++q)
        for (int p = -kLattice; p <= kLattice; ++p) grid.push_back({two_pi * p / lx, two_pi * q / ly});

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, two_pi);
    for (const double radius : {1.0, 5.0, 25.0}) {
        for (int k = 0; k < 64; ++k) {
            const double a = angle(rng);
            grid.push_back({radius * std::cos(a), radius * std::sin(a)});
        }
    }
    return grid;
}

std::string to_string(FrameKind kind) {
    switch (kind) {
        case FrameKind::scalar: return "scalar";
        case FrameKind::vector: return "vector";
        case FrameKind::divfree: return "divfree";
    }
    return "unknown";
}

FrameReport frame_check(const std::vector<ScalarField>& family, std::span<const Frequency> xi_grid,
                        const FrameOptions& options) {
    require_orthonormal(family, options.orthonormality_tol);
    const GriddedDomain& d = family.front().domain();
    const auto m = static_cast<int>(family.size());
    Eigen::MatrixXd F(d.interior_count(), m);
    for (int k = 0; k < m; ++k) F.col(k) = family[static_cast<std::size_t>(k)].values();

    FrameReport r;
    r.m = m;
    r.kind = FrameKind::scalar;
    r.bound = d.measure();
    r.slack = options.slack;
    r.xi_count = xi_grid.size();
    r.prefix_sups.assign(static_cast<std::size_t>(m), 0.0);

    Eigen::MatrixXd re, im;
    for (std::size_t start = 0; start < xi_grid.size(); start += kBatch) {
        const auto batch = xi_grid.subspan(start, std::min(kBatch, xi_grid.size() - start));
        batch_transform(d, F, batch, re, im);
        for (int b = 0; b < static_cast<int>(batch.size()); ++b) {
            double partial = 0.0;
            for (int k = 0; k < m; ++k) {
                partial += re(k, b) * re(k, b) + im(k, b) * im(k, b);
                auto& best = r.prefix_sups[static_cast<std::size_t>(k)];
                best = std::max(best, partial);
            }
            if (partial > r.sup_value) {
                r.sup_value = partial;
                r.argmax_xi = batch[static_cast<std::size_t>(b)];
            }
        }
    }
    r.passed = r.sup_value <= r.bound * (1.0 + r.slack);
    return r;
}

FrameReport frame_check(const std::vector<VectorField2>& family, std::span<const Frequency> xi_grid,
                        FrameKind kind, const FrameOptions& options) {
    if (kind == FrameKind::scalar) throw std::invalid_argument("vector families need the vector or divfree kind");
    require_orthonormal(family, options.orthonormality_tol);
    const GriddedDomain& d = family.front().domain();
    constexpr int n = 2;
    if (kind == FrameKind::divfree) {
        for (const auto& u : family) {
            const double scale = std::max(u.u1().cwiseAbs().maxCoeff(), u.u2().cwiseAbs().maxCoeff()) / d.h();
            if (max_interior_divergence(u) > 1e-8 * scale)
                throw std::invalid_argument("divfree frame check needs discretely divergence-free fields");
        }
    }
    const auto m = static_cast<int>(family.size());
    Eigen::MatrixXd F(d.interior_count(), 2 * m);
    for (int k = 0; k < m; ++k) {
        F.col(k) = family[static_cast<std::size_t>(k)].u1();
        F.col(m + k) = family[static_cast<std::size_t>(k)].u2();
    }

    FrameReport r;
    r.m = m;
    r.kind = kind;
    r.bound = (kind == FrameKind::divfree ? n - 1 : n) * d.measure();
    r.slack = options.slack;
    r.xi_count = xi_grid.size();
    r.prefix_sups.assign(static_cast<std::size_t>(m), 0.0);
    const double floor = options.div_residual_floor * std::sqrt(d.measure());

    Eigen::MatrixXd re, im;
    for (std::size_t start = 0; start < xi_grid.size(); start += kBatch) {
        const auto batch = xi_grid.subspan(start, std::min(kBatch, xi_grid.size() - start));
        batch_transform(d, F, batch, re, im);
        for (int b = 0; b < static_cast<int>(batch.size()); ++b) {
            const Frequency xi = batch[static_cast<std::size_t>(b)];
            const double xi_norm = std::hypot(xi.x, xi.y);
            double partial = 0.0;
            double longitudinal = 0.0;
            for (int k = 0; k < m; ++k) {
                const cplx a1(re(k, b), im(k, b));
                const cplx a2(re(m + k, b), im(m + k, b));
                partial += std::norm(a1) + std::norm(a2);
                longitudinal += std::norm(xi.x * a1 + xi.y * a2);
                auto& best = r.prefix_sups[static_cast<std::size_t>(k)];
                best = std::max(best, partial);
            }
            if (kind == FrameKind::divfree && xi_norm > 0.0) {
                const double ratio = std::sqrt(longitudinal) / (xi_norm * (std::sqrt(partial) + floor));
                r.max_div_residual = std::max(r.max_div_residual, ratio);
            }
            if (partial > r.sup_value) {
                r.sup_value = partial;
                r.argmax_xi = xi;
            }
        }
    }
    r.passed = r.sup_value <= r.bound * (1.0 + r.slack);
    return r;
}

std::vector<VectorField2> rotate_quarter_turns(const std::vector<VectorField2>& family, int turns) {
    if (family.empty()) return {};
    const GriddedDomain& d = family.front().domain();
    for (const auto& u : family) require_same_grid(d, u.domain());
    if (d.nx() != d.ny()) throw std::invalid_argument("quarter-turn rotation needs a square bounding box");
    turns = ((turns % 4) + 4) % 4;
    if (turns == 0) return family;

    const int n = d.nx();
    const double h = d.h();
    const double span = n * h;
    // source node (i, j) for target node (ti, tj), and the new lower-left corner
    auto source = [&](int ti, int tj) -> Node {
        switch (turns) {
            case 1: return {tj, n - ti};
            case 2: return {n - ti, n - tj};
            default: return {n - tj, ti};
        }
    };
    double x0 = 0.0;
    double y0 = 0.0;
    switch (turns) {
        case 1: x0 = -(d.y0() + span); y0 = d.x0(); break;
        case 2: x0 = -(d.x0() + span); y0 = -(d.y0() + span); break;
        default: x0 = d.y0(); y0 = -(d.x0() + span); break;
    }

    std::vector<bool> mask(static_cast<std::size_t>(n + 1) * (n + 1), false);
    for (int tj = 0; tj <= n; ++tj)
        for (int ti = 0; ti <= n; ++ti) {
            const Node s = source(ti, tj);
            mask[static_cast<std::size_t>(tj) * (n + 1) + ti] = d.interior(s.i, s.j);
        }
    const DomainPtr rotated = make_masked(n, n, h, std::move(mask), d.measure(), x0, y0, d.shape());

    std::vector<VectorField2> out;
    out.reserve(family.size());
    for (const auto& u : family) {
        VectorField2 r(rotated);
        for (int k = 0; k < rotated->interior_count(); ++k) {
            const Node t = rotated->node(k);
            const Node s = source(t.i, t.j);
            const int from = d.index(s.i, s.j);
            const double a = u.u1()[from];
            const double b = u.u2()[from];
            switch (turns) {
                case 1: r.u1()[k] = -b; r.u2()[k] = a; break;
                case 2: r.u1()[k] = -a; r.u2()[k] = -b; break;
                default: r.u1()[k] = b; r.u2()[k] = -a; break;
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<VectorField2> rotate90(const std::vector<VectorField2>& family) {
    return rotate_quarter_turns(family, 1);
}

}  // namespace stokes
