#include "stokes/bounds.hpp"
#include "stokes/operators.hpp"

#include "support.hpp"

#include <doctest.h>

#include <Eigen/QR>

#include <random>

using namespace stokes;
using testing::pi;

namespace {

// Ball indicator scaled by c: returns {M1, integral, second moment}.
struct BallDensity {
    double M1, mass, moment;
};

BallDensity ball(int n, double r, double c) {
    const double w = omega_n(n);
    return {c, c * w * std::pow(r, n), c * n * w * std::pow(r, n + 2) / (n + 2.0)};
}

}  // namespace

TEST_CASE("gamma at integers and half-integers") {
    CHECK(gamma_half_integer(1) == doctest::Approx(std::sqrt(pi)));
    CHECK(gamma_half_integer(2) == 1.0);
    CHECK(gamma_half_integer(5) == doctest::Approx(0.75 * std::sqrt(pi)));
    CHECK(gamma_half_integer(8) == 6.0);
    for (int t = 1; t < 30; ++t) CHECK(gamma_half_integer(t) == doctest::Approx(std::tgamma(0.5 * t)).epsilon(1e-14));
    CHECK_THROWS(gamma_half_integer(0));
}

TEST_CASE("unit ball volumes") {
    CHECK(omega_n(1) == doctest::Approx(2.0));
    CHECK(omega_n(2) == doctest::Approx(pi));
    CHECK(omega_n(3) == doctest::Approx(4.0 * pi / 3.0));
    CHECK_THROWS(omega_n(0));
}

TEST_CASE("Li-Yau sum bound") {
    CHECK(li_yau_sum_bound(2, 1.0, 1) == doctest::Approx(2 * pi));
    CHECK(li_yau_sum_bound(2, 1.0, 4) == doctest::Approx(32 * pi));
    CHECK(li_yau_sum_bound(2, pi, 1) == doctest::Approx(2.0));
    CHECK_THROWS(li_yau_sum_bound(0, 1.0, 1));
    CHECK_THROWS(li_yau_sum_bound(2, 0.0, 1));
    CHECK_THROWS(li_yau_sum_bound(2, 1.0, 0));
}

TEST_CASE("Stokes bounds") {
    for (int m = 1; m <= 20; ++m) CHECK(stokes_sum_bound(2, 1.0, m) == doctest::Approx(2 * pi * m * m));
    CHECK(stokes_sum_bound(3, 1.0, 1) == doctest::Approx(5.74246800037638363).epsilon(1e-14));
    CHECK(stokes_sum_bound(2, 2.0, 1) == doctest::Approx(pi));
    CHECK_THROWS(stokes_sum_bound(1, 1.0, 1));

    CHECK(stokes_each_bound(2, 1.0, 1) == doctest::Approx(2 * pi));
    CHECK(stokes_each_bound(2, 1.0, 4) == doctest::Approx(8 * pi));
    CHECK(stokes_each_bound(2, 1.0, 1) == doctest::Approx(stokes_sum_bound(2, 1.0, 1)));
    CHECK(lambda1_floor(2, 1.0) == doctest::Approx(2 * pi));
    CHECK_THROWS(stokes_each_bound(2, 1.0, 0));
}

TEST_CASE("Weyl coefficients") {
    CHECK(weyl_coefficient(2, 1.0) == doctest::Approx(4 * pi));
    CHECK(weyl_coefficient(2, pi) == doctest::Approx(4.0));
    CHECK(weyl_coefficient(3, 1.0) == doctest::Approx(9.57078000062730605).epsilon(1e-14));
    CHECK(laplace_weyl_coefficient(2, 1.0) == doctest::Approx(4 * pi));
    CHECK(laplace_weyl_coefficient(3, 1.0) == doctest::Approx(std::pow(6 * pi * pi, 2.0 / 3.0)));
    CHECK_THROWS(weyl_coefficient(1, 1.0));
}

TEST_CASE("bounds increase in m and decrease in measure") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> meas(0.1, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 3;
        const double a = meas(rng), b = meas(rng);
        const double lo = std::min(a, b), hi = std::max(a, b);
        if (lo == hi) continue;
        for (int m = 1; m < 10; ++m) {
            CHECK(stokes_sum_bound(n, lo, m + 1) > stokes_sum_bound(n, lo, m));
            CHECK(li_yau_sum_bound(n, lo, m + 1) > li_yau_sum_bound(n, lo, m));
            CHECK(stokes_sum_bound(n, hi, m) < stokes_sum_bound(n, lo, m));
            CHECK(li_yau_sum_bound(n, hi, m) < li_yau_sum_bound(n, lo, m));
        }
    }
}

TEST_CASE("bathtub bound") {
    const double R = 1.7;
    CHECK(bathtub_bound(2, 1.0, pi * std::pow(R, 4) / 2) == doctest::Approx(pi * R * R).epsilon(1e-14));
    CHECK(bathtub_bound(2, 4.0, 3.0) == doctest::Approx(2.0 * bathtub_bound(2, 1.0, 3.0)));
    CHECK(bathtub_bound(2, 1.0, 1.0) == doctest::Approx(2.50662827463100050).epsilon(1e-14));
    CHECK_THROWS(bathtub_bound(2, 0.0, 1.0));
    CHECK_THROWS(bathtub_bound(2, 1.0, -1.0));

    for (const int n : {1, 2, 3})
        for (const double r : {0.3, 1.0, 2.5})
            for (const double M1 : {0.5, 1.0, 7.0}) {
                const BallDensity f = ball(n, r, M1);
                CHECK(std::abs(bathtub_bound(n, f.M1, f.moment) - f.mass) <= 1e-12 * f.mass);
            }
}

TEST_CASE("bathtub bound dominates admissible densities") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 3;
        const double M1 = u(rng);
        const BallDensity f = ball(n, u(rng), M1 * frac(rng));
        const double M2 = f.moment * (1.0 + frac(rng));
        CHECK(f.mass <= bathtub_bound(n, M1, M2) * (1.0 + 1e-14));
        // an annulus of the same height and mass has a larger second moment
        const double r_in = u(rng), width = u(rng);
        const double w = omega_n(n);
        const double mass = M1 * w * (std::pow(r_in + width, n) - std::pow(r_in, n));
        const double moment = M1 * n * w * (std::pow(r_in + width, n + 2) - std::pow(r_in, n + 2)) / (n + 2.0);
        CHECK(mass <= bathtub_bound(n, M1, moment) * (1.0 + 1e-14));
    }
}

TEST_CASE("check records") {
    const BoundCheck lower = make_check("x", BoundCheck::Sense::lower, 1, 0.995, 1.0, 0.01, 2, 1.0);
    CHECK(lower.margin == doctest::Approx(-0.005));
    CHECK(lower.passed);
    const BoundCheck upper = make_check("y", BoundCheck::Sense::upper, 1, 1.2, 1.0, 0.1, 2, 1.0);
    CHECK(upper.margin == doctest::Approx(-0.2));
    CHECK_FALSE(upper.passed);
}

TEST_CASE("sum-bound checks on tabulated spectra") {
    const std::vector<double> square{2 * pi * pi, 5 * pi * pi, 5 * pi * pi, 8 * pi * pi};
    const auto rows = check_sum_bound(square, li_yau_sum_bound, "li_yau", {2, 1.0, 0.0});
    REQUIRE(rows.size() == 4);
    CHECK(rows[3].lhs == doctest::Approx(20 * pi * pi));
    CHECK(rows[3].rhs == doctest::Approx(100.53).epsilon(1e-4));
    for (const auto& r : rows) CHECK(r.passed);

    CHECK(check_sum_bound({}, li_yau_sum_bound, "li_yau", {}).empty());
    const std::vector<double> unordered{2.0, 1.0};
    CHECK_THROWS_AS(check_sum_bound(unordered, li_yau_sum_bound, "li_yau", {}), std::invalid_argument);
    CHECK_THROWS_AS(check_each_bound(unordered, {}), std::invalid_argument);

    const std::vector<double> too_small{1.0, 2.0};
    const auto bad = check_sum_bound(too_small, stokes_sum_bound, "stokes_sum", {2, 1.0, 0.0});
    CHECK_FALSE(bad[0].passed);
}

TEST_CASE("computed Stokes spectrum: bounds and sharpness trend") {
    const auto d = make_rectangle(1.0, 1.0, 64);
    const auto lambda = solve_stokes(d, 50).eigenvalues;
    for (const auto& r : check_sum_bound(lambda, stokes_sum_bound, "stokes_sum", {2, 1.0, 0.01})) CHECK(r.passed);
    for (const auto& r : check_each_bound(lambda, {2, 1.0, 0.01})) CHECK(r.passed);

    // ratio(m) = sum / bound, fitted as L + c / sqrt(m) over m in [10, 50]
    std::vector<double> ratio;
    double partial = 0.0;
    for (int m = 1; m <= 50; ++m) {
        partial += lambda[m - 1];
        ratio.push_back(partial / stokes_sum_bound(2, 1.0, m));
    }
    Eigen::MatrixXd X(41, 2);
    Eigen::VectorXd y(41);
    for (int m = 10; m <= 50; ++m) {
        X(m - 10, 0) = 1.0;
        X(m - 10, 1) = 1.0 / std::sqrt(m);
        y[m - 10] = ratio[m - 1];
        CHECK(ratio[m - 1] >= 1.0);
        if (m > 10) CHECK(ratio[m - 1] <= ratio[m - 2]);
    }
    const Eigen::Vector2d coef = X.colPivHouseholderQr().solve(y);
    CHECK(coef[0] <= 1.35);
}
