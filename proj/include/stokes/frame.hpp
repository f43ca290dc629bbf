#pragma once

#include "stokes/grid.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace stokes {

/// Frequency vector xi in radians per unit length.
struct Frequency {
    double x = 0.0;
    double y = 0.0;
};

/// Fourier transform of the zero extension by trapezoidal quadrature:
/// h^2 sum_j exp(-i xi . x_j) f_j over the interior nodes.
std::complex<double> fourier_at(const ScalarField& field, Frequency xi);
std::array<std::complex<double>, 2> fourier_at(const VectorField2& field, Frequency xi);

/// Largest eigenvalue of the Gram matrix; <= 1 exactly when the family is suborthonormal.
double gram_max_eigenvalue(const std::vector<ScalarField>& family);
double gram_max_eigenvalue(const std::vector<VectorField2>& family);

/// max |G_ij - delta_ij| of the Gram matrix.
double orthonormality_deviation(const std::vector<ScalarField>& family);
double orthonormality_deviation(const std::vector<VectorField2>& family);

/// Orthogonal projection onto one Cartesian component (axis 1 or 2).
std::vector<ScalarField> project_component(const std::vector<VectorField2>& family, int axis);

/// Lattice {2 pi (p / Lx, q / Ly) : |p|, |q| <= 32} over the bounding box, followed by
/// 64 seeded random directions at each radius in {1, 5, 25}.
std::vector<Frequency> default_xi_grid(const GriddedDomain& domain, std::uint64_t seed);

enum class FrameKind { scalar, vector, divfree };

std::string to_string(FrameKind kind);

struct FrameOptions {
    double slack = 0.02;
    /// Families whose Gram matrix is further than this from the identity are rejected.
    double orthonormality_tol = 2e-2;
    /// Floor added to |xi| |u_hat(xi)| in the incompressibility ratio, relative to sqrt(|Omega|).
    double div_residual_floor = 1e-3;
};

struct FrameReport {
    int m = 0;
    FrameKind kind = FrameKind::scalar;
    double bound = 0.0;
    double sup_value = 0.0;
    Frequency argmax_xi;
    /// Incompressibility residual, divfree kind only: max over xi != 0 of
    /// |xi . U(xi)| / (|xi| (|U(xi)| + eps)) with U = (u_hat_1, ..., u_hat_m) the
    /// stacked family transform and eps = div_residual_floor sqrt(|Omega|).
    double max_div_residual = 0.0;
    double slack = 0.0;
    bool passed = false;
    std::size_t xi_count = 0;
    /// sup over the grid of the partial sums over the first k members, k = 1..m.
    std::vector<double> prefix_sups;
};

/// Sup over xi of sum_k |phi_hat_k(xi)|^2 against |Omega|.
FrameReport frame_check(const std::vector<ScalarField>& family, std::span<const Frequency> xi_grid,
                        const FrameOptions& options = {});

/// Sup over xi of sum_k |u_hat_k(xi)|^2 against n|Omega| (vector) or (n-1)|Omega| (divfree).
FrameReport frame_check(const std::vector<VectorField2>& family, std::span<const Frequency> xi_grid,
                        FrameKind kind, const FrameOptions& options = {});

/// u -> rho u(rho^{-1} x) for rho the counter-clockwise quarter turn about the origin.
/// The result lives on the rotated grid; needs a square bounding box.
std::vector<VectorField2> rotate90(const std::vector<VectorField2>& family);

/// Rotation by turns quarter turns (turns mod 4), each case mapped directly.
std::vector<VectorField2> rotate_quarter_turns(const std::vector<VectorField2>& family, int turns);

}  // namespace stokes
