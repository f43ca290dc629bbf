#pragma once

#include "stokes/eig.hpp"
#include "stokes/grid.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace stokes {

/// Discrete -Delta with Dirichlet conditions: 5-point stencil over the interior
/// nodes, scaled by 1/h^2.
SparseSym assemble_laplacian(const GriddedDomain& domain);

/// 5-point stiffness matrix (diagonal 4, neighbours -1) without the 1/h^2 factor.
SparseSym assemble_stiffness(const GriddedDomain& domain);

struct StokesPencil {
    SparseSym A;  ///< 13-point clamped biharmonic, scaled by 1/h^4
    SparseSym B;  ///< 5-point -Delta, scaled by 1/h^2
};

/// Stream-function form of the 2D Stokes eigenproblem: Delta^2 psi = lambda (-Delta psi)
/// with psi = 0 on the boundary nodes and d psi / dn = 0 imposed by reflecting the
/// ghost node across each boundary neighbour (psi_ghost = psi_inner).
StokesPencil assemble_stokes_pencil(const GriddedDomain& domain);

/// u = (d psi / dy, -d psi / dx) by centered differences of the zero extension.
VectorField2 stream_to_velocity(const ScalarField& psi);

struct SolveOptions {
    double tol = 1e-8;
    std::uint64_t seed = 20250101;
};

struct LaplaceEigenSet {
    DomainPtr domain;
    std::vector<double> eigenvalues;
    std::vector<double> residuals;
    /// Unit discrete L2 norm.
    std::vector<ScalarField> eigenfunctions;
    std::uint64_t seed = 0;
};

struct StokesEigenSet {
    DomainPtr domain;
    std::vector<double> eigenvalues;
    std::vector<double> residuals;
    /// B-orthonormal eigenvectors rescaled so that grad_norm_sq(psi_k) = 1.
    std::vector<ScalarField> stream_functions;
    /// Discrete curls of the stream functions, symmetrically orthonormalized in L2.
    std::vector<VectorField2> velocities;
    std::uint64_t seed = 0;
};

LaplaceEigenSet solve_laplacian(const DomainPtr& domain, int m, const SolveOptions& options = {});

StokesEigenSet solve_stokes(const DomainPtr& domain, int m, const SolveOptions& options = {});

/// Löwdin orthonormalization: replaces the family by F G^{-1/2}, the orthonormal
/// family closest to it in L2. Linear combinations keep the fields divergence free.
std::vector<VectorField2> symmetric_orthonormalize(const std::vector<VectorField2>& family);

/// Gram matrix [(u_i, u_j)] in the discrete L2 product.
Eigen::MatrixXd gram_matrix(const std::vector<VectorField2>& family);
Eigen::MatrixXd gram_matrix(const std::vector<ScalarField>& family);

/// Richardson extrapolation from values on grids h, h/2, h/4 (coarse to fine),
/// assuming second-order convergence.
struct Extrapolation {
    double value = 0.0;           ///< (4 v_fine - v_mid) / 3
    double error_estimate = 0.0;  ///< |value - (4 v_mid - v_coarse) / 3|
    double observed_order = 0.0;  ///< log2((v_coarse - v_mid) / (v_mid - v_fine))
};

Extrapolation richardson(std::span<const double> coarse_to_fine);

}  // namespace stokes
