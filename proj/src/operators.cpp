#include "stokes/operators.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <stdexcept>

namespace stokes {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseSym stiffness_scaled(const GriddedDomain& d, double scale) {
    Triplets entries;
    entries.reserve(static_cast<std::size_t>(d.interior_count()) * 5);
    const std::array<Node, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    for (int k = 0; k < d.interior_count(); ++k) {
        const Node p = d.node(k);
        entries.emplace_back(k, k, 4.0 * scale);
        for (const Node s : steps) {
            const int q = d.index(p.i + s.i, p.j + s.j);
            if (q >= 0) entries.emplace_back(k, q, -scale);
        }
    }
    Eigen::SparseMatrix<double> full(d.interior_count(), d.interior_count());
    full.setFromTriplets(entries.begin(), entries.end());
    return SparseSym::from_full(full);
}

}  // namespace

SparseSym assemble_laplacian(const GriddedDomain& domain) {
    return stiffness_scaled(domain, 1.0 / (domain.h() * domain.h()));
}

SparseSym assemble_stiffness(const GriddedDomain& domain) { return stiffness_scaled(domain, 1.0); }

StokesPencil assemble_stokes_pencil(const GriddedDomain& d) {
    if (d.max_run_x() < 3 || d.max_run_y() < 3)
        throw std::invalid_argument("domain is too thin for the 13-point stencil (fewer than 3 nodes across)");

    const double h2 = d.h() * d.h();
    const double scale = 1.0 / (h2 * h2);
    struct Tap {
        int di, dj;
        double weight;
    };
    // 13-point Delta^2: centre 20, axis neighbours -8, diagonals 2, axis distance two 1.
    static const std::array<Tap, 8> near{{{1, 0, -8}, {-1, 0, -8}, {0, 1, -8}, {0, -1, -8},
                                          {1, 1, 2}, {1, -1, 2}, {-1, 1, 2}, {-1, -1, 2}}};
    static const std::array<Node, 4> axes{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

    Triplets entries;
    entries.reserve(static_cast<std::size_t>(d.interior_count()) * 13);
    for (int k = 0; k < d.interior_count(); ++k) {
        const Node p = d.node(k);
        double centre = 20.0;
        for (const Tap& t : near) {
            const int q = d.index(p.i + t.di, p.j + t.dj);
            if (q >= 0) entries.emplace_back(k, q, t.weight * scale);
        }
        for (const Node a : axes) {
            const bool mid_inside = d.interior(p.i + a.i, p.j + a.j);
            if (!mid_inside) {
                // ghost across a boundary node mirrors the centre value
                centre += 1.0;
                continue;
            }
            const int q = d.index(p.i + 2 * a.i, p.j + 2 * a.j);
            if (q >= 0) entries.emplace_back(k, q, scale);
        }
        entries.emplace_back(k, k, centre * scale);
    }
    Eigen::SparseMatrix<double> full(d.interior_count(), d.interior_count());
    full.setFromTriplets(entries.begin(), entries.end());
    return {SparseSym::from_full(full), assemble_laplacian(d)};
}

VectorField2 stream_to_velocity(const ScalarField& psi) {
    const GriddedDomain& d = psi.domain();
    const double inv2h = 0.5 / d.h();
    Eigen::VectorXd u1(d.interior_count());
    Eigen::VectorXd u2(d.interior_count());
    for (int k = 0; k < d.interior_count(); ++k) {
        const Node p = d.node(k);
        u1[k] = (psi.at(p.i, p.j + 1) - psi.at(p.i, p.j - 1)) * inv2h;
        u2[k] = -(psi.at(p.i + 1, p.j) - psi.at(p.i - 1, p.j)) * inv2h;
    }
    return VectorField2(psi.domain_ptr(), std::move(u1), std::move(u2));
}

LaplaceEigenSet solve_laplacian(const DomainPtr& domain, int m, const SolveOptions& options) {
    const SparseSym A = assemble_laplacian(*domain);
    EigOptions eo;
    eo.tol = options.tol;
    eo.seed = options.seed;
    const auto pairs = smallest_eigenpairs(A, m, eo);

    LaplaceEigenSet out;
    out.domain = domain;
    out.seed = options.seed;
    // Euclidean-normalized vectors have discrete L2 norm h.
    const double to_unit = 1.0 / domain->h();
    for (const auto& p : pairs) {
        out.eigenvalues.push_back(p.value);
        out.residuals.push_back(p.residual);
        out.eigenfunctions.emplace_back(domain, p.vector * to_unit);
    }
    return out;
}

StokesEigenSet solve_stokes(const DomainPtr& domain, int m, const SolveOptions& options) {
    const StokesPencil pencil = assemble_stokes_pencil(*domain);
    EigOptions eo;
    eo.tol = options.tol;
    eo.seed = options.seed;
    const auto pairs = smallest_eigenpairs(pencil.A, pencil.B, m, eo);

    StokesEigenSet out;
    out.domain = domain;
    out.seed = options.seed;
    // psi^T B psi = 1 means grad_norm_sq(psi) = h^2.
    const double to_unit = 1.0 / domain->h();
    std::vector<VectorField2> raw;
    for (const auto& p : pairs) {
        out.eigenvalues.push_back(p.value);
        out.residuals.push_back(p.residual);
        out.stream_functions.emplace_back(domain, p.vector * to_unit);
        raw.push_back(stream_to_velocity(out.stream_functions.back()));
    }
    out.velocities = symmetric_orthonormalize(raw);
    return out;
}

Eigen::MatrixXd gram_matrix(const std::vector<VectorField2>& family) {
    const auto m = static_cast<int>(family.size());
    Eigen::MatrixXd g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) g(i, j) = g(j, i) = inner(family[i], family[j]);
    return g;
}

Eigen::MatrixXd gram_matrix(const std::vector<ScalarField>& family) {
    const auto m = static_cast<int>(family.size());
    Eigen::MatrixXd g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) g(i, j) = g(j, i) = inner(family[i], family[j]);
    return g;
}

std::vector<VectorField2> symmetric_orthonormalize(const std::vector<VectorField2>& family) {
    if (family.empty()) return {};
    const Eigen::MatrixXd g = gram_matrix(family);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0.0))
        throw std::runtime_error("family is linearly dependent");
    const Eigen::MatrixXd inv_sqrt = es.eigenvectors() *
                                     es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                     es.eigenvectors().transpose();
    const auto m = static_cast<int>(family.size());
    std::vector<VectorField2> out;
    out.reserve(family.size());
    for (int k = 0; k < m; ++k) {
        VectorField2 u(family.front().domain_ptr());
        for (int j = 0; j < m; ++j) {
            u.u1() += inv_sqrt(j, k) * family[j].u1();
            u.u2() += inv_sqrt(j, k) * family[j].u2();
        }
        out.push_back(std::move(u));
    }
    return out;
}

Extrapolation richardson(std::span<const double> v) {
    if (v.size() != 3) throw std::invalid_argument("richardson needs values on three grids");
    Extrapolation e;
    e.value = (4.0 * v[2] - v[1]) / 3.0;
    const double coarse = (4.0 * v[1] - v[0]) / 3.0;
    e.error_estimate = std::abs(e.value - coarse);
    e.observed_order = std::log2((v[0] - v[1]) / (v[1] - v[2]));
    return e;
}

}  // namespace stokes
