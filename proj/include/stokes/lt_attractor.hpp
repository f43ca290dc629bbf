#pragma once

#include "stokes/bounds.hpp"
#include "stokes/grid.hpp"

#include <string>
#include <vector>

namespace stokes {

struct LTConstants {
    double R = 0.0;         ///< pi / sqrt(3)
    double L_cl_1_2 = 0.0;  ///< classical constant at gamma = 1, n = 2: 1 / (8 pi)
    double c_LT = 0.0;      ///< 4 R L_cl_1_2 = 1 / (2 sqrt(3))
    double c_sp = 0.0;      ///< 2 pi
};

LTConstants lt_constants();

/// Gamma(gamma + 1) / ((4 pi)^{n/2} Gamma(gamma + n/2 + 1)).
double classical_lt_constant(double gamma, int n);

/// rho(x) = sum_k |v_k(x)|^2.
ScalarField density(const std::vector<VectorField2>& family);

/// ||rho||^2 <= c_LT sum_k ||grad v_k||^2 for an orthonormal divergence-free family.
/// Upper-sense check with slack 0.02 rhs. Throws OrthonormalityViolation when the
/// Gram matrix is further than 2e-2 from the identity.
BoundCheck lt_check(const std::vector<VectorField2>& family);

struct FluidParams {
    int n = 2;
    double measure = 1.0;
    double nu = 1.0;
    double f_norm = 1.0;
    double lambda1 = 0.0;
    std::string lambda1_source = "given";

    /// G = ||f|| / (lambda1 nu^2).
    double grashof() const;
};

struct DimBound {
    double grashof = 0.0;
    double m_star = 0.0;
    double dim_bound = 0.0;
    double dim_bound_coarse = 0.0;
    /// q(m) <= -a m^2 + b.
    double a = 0.0;
    double b = 0.0;
    /// lambda1 > 2 pi / |Omega|; when false the coarse comparison does not apply.
    bool lambda1_admissible = false;
    std::string lambda1_source;
    std::string warning;
};

/// Throws std::invalid_argument on nonpositive parameters or n != 2.
DimBound dim_bound(const FluidParams& params);

/// -a m^2 + b; requires m >= 0.
double q_upper(const FluidParams& params, double m);

}  // namespace stokes
