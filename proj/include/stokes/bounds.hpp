#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace stokes {

/// One inequality instance evaluated on computed or tabulated data.
///
/// For a lower bound (lhs >= rhs expected) margin = lhs - rhs; for an upper
/// bound (lhs <= rhs expected) margin = rhs - lhs. Either way margin >= 0 is
/// a clean pass, and passed <=> margin >= -slack with slack an absolute
/// tolerance stored alongside the record.
struct BoundCheck {
    enum class Sense { lower, upper };

    std::string name;
    int m = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double slack = 0.0;
    bool passed = false;
    Sense sense = Sense::lower;
    int n = 2;
    double measure = 0.0;
};

BoundCheck make_check(std::string name, BoundCheck::Sense sense, int m, double lhs, double rhs,
                      double slack, int n, double measure);

/// Gamma(x) for x a positive integer or half-integer, given as twice_x = 2x.
double gamma_half_integer(int twice_x);

/// Volume of the unit ball in R^n.
double omega_n(int n);

/// Sum of the first m Dirichlet-Laplacian eigenvalues is at least
/// n/(2+n) ((2 pi)^n / (omega_n |Omega|))^{2/n} m^{1+2/n}.
double li_yau_sum_bound(int n, double measure, int m);

/// Same with |Omega| replaced by (n-1)|Omega|; requires n >= 2.
double stokes_sum_bound(int n, double measure, int m);

/// Lower bound for the k-th Stokes eigenvalue alone (k^{2/n} instead of m^{1+2/n}).
double stokes_each_bound(int n, double measure, int k);

/// Li-Yau bound at m = 1, the floor under mu_1 and hence under lambda_1.
double lambda1_floor(int n, double measure);

/// Leading Weyl coefficient of the Stokes spectrum: lambda_k ~ coeff k^{2/n}.
double weyl_coefficient(int n, double measure);

/// Leading Weyl coefficient of the Dirichlet Laplacian: mu_k ~ coeff k^{2/n}.
double laplace_weyl_coefficient(int n, double measure);

/// Largest possible integral of 0 <= f <= M1 with second moment at most M2:
/// (M1 omega_n)^{2/(2+n)} (M2 (2+n)/n)^{n/(2+n)}, attained by M1 times a ball indicator.
double bathtub_bound(int n, double M1, double M2);

using SumBoundFn = std::function<double(int n, double measure, int m)>;

struct BoundParams {
    int n = 2;
    double measure = 1.0;
    /// Relative slack; 0 for analytic spectra, 0.01 for computed ones.
    double slack_fraction = 0.01;
};

/// One lower-bound check of the partial sums of a nondecreasing spectrum per m.
std::vector<BoundCheck> check_sum_bound(std::span<const double> spectrum, const SumBoundFn& bound,
                                        const std::string& name, const BoundParams& params);

/// One lower-bound check per index k against stokes_each_bound.
std::vector<BoundCheck> check_each_bound(std::span<const double> spectrum, const BoundParams& params);

}  // namespace stokes
