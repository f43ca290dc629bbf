#include "stokes/errors.hpp"
#include "stokes/lt_attractor.hpp"
#include "stokes/operators.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace stokes;
using testing::pi;

TEST_CASE("constant chain") {
    const LTConstants c = lt_constants();
    CHECK(c.c_LT == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-15));
    CHECK(c.c_LT == doctest::Approx(0.288675134594812882).epsilon(1e-15));
    CHECK(c.L_cl_1_2 == doctest::Approx(0.0397887357729738339).epsilon(1e-15));
    CHECK(c.R == doctest::Approx(pi / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(c.c_sp == doctest::Approx(2 * pi));
    CHECK(std::abs(4.0 * c.R * c.L_cl_1_2 - c.c_LT) <= 1e-16);
    CHECK(classical_lt_constant(1.0, 2) == doctest::Approx(c.L_cl_1_2).epsilon(1e-14));
    CHECK(std::sqrt(c.c_LT / (2 * c.c_sp)) == doctest::Approx(1.0 / std::sqrt(8 * std::sqrt(3.0) * pi)).epsilon(1e-14));
    CHECK_THROWS(classical_lt_constant(-1.0, 2));
}

TEST_CASE("density") {
    const auto d = make_rectangle(1.0, 1.0, 48);
    const auto set = solve_stokes(d, 5);
    const ScalarField one = density({set.velocities[0]});
    CHECK(one.values().sum() * d->h() * d->h() == doctest::Approx(1.0).epsilon(1e-10));

    const ScalarField rho = density(set.velocities);
    CHECK(rho.values().minCoeff() >= 0.0);
    const double mass = rho.values().sum() * d->h() * d->h();
    CHECK(mass >= 4.9);
    CHECK(mass <= 5.1);

    CHECK_THROWS_AS(density({}), std::invalid_argument);
    const auto other = make_rectangle(1.0, 1.0, 32);
    CHECK_THROWS_AS(density({set.velocities[0], VectorField2(other)}), DomainMismatch);
}

TEST_CASE("Lieb-Thirring density inequality on computed families") {
    for (const auto& d : {make_rectangle(1.0, 1.0, 64), make_rectangle(2.0, 1.0, 64), make_disk(1.0, 64)}) {
        const auto set = solve_stokes(d, 20);
        for (const int m : {1, 5, 10, 20}) {
            const std::vector<VectorField2> family(set.velocities.begin(), set.velocities.begin() + m);
            const BoundCheck c = lt_check(family);
            CAPTURE(d->shape());
            CAPTURE(m);
            CHECK(c.passed);
            CHECK(c.sense == BoundCheck::Sense::upper);
            CHECK(c.lhs / c.rhs < 1.0);
            CHECK(c.slack == doctest::Approx(0.02 * c.rhs));
            CHECK(c.m == m);
        }
    }
}

TEST_CASE("Lieb-Thirring preconditions") {
    CHECK_THROWS_AS(lt_check({}), std::invalid_argument);
    const auto d = make_rectangle(1.0, 1.0, 32);
    const auto set = solve_stokes(d, 3);
    CHECK_THROWS_AS(lt_check({set.velocities[0], set.velocities[0]}), OrthonormalityViolation);

    const auto lap = solve_laplacian(d, 2);
    const VectorField2 not_solenoidal(d, lap.eigenfunctions[0].values(), Eigen::VectorXd::Zero(d->interior_count()));
    CHECK_THROWS_AS(lt_check({not_solenoidal}), std::invalid_argument);
}

TEST_CASE("dimension bound at the reference parameters") {
    const FluidParams p{2, 1.0, 1.0, 1.0, 2 * pi * pi, "given"};
    const DimBound b = dim_bound(p);
    CHECK(testing::rel_err(b.grashof, 0.0506605918211688857) < 1e-14);
    CHECK(testing::rel_err(b.dim_bound, 0.0341141760185430551) < 1e-13);
    CHECK(testing::rel_err(b.dim_bound_coarse, 0.0604658026545352426) < 1e-13);
    CHECK(b.dim_bound == b.m_star);
    CHECK(b.dim_bound < b.dim_bound_coarse);
    CHECK(b.lambda1_admissible);
    CHECK(b.warning.empty());
    CHECK(b.a == doctest::Approx(pi));
    CHECK(b.b == doctest::Approx(2 * pi * pi * lt_constants().c_LT * b.grashof * b.grashof / 4));

    FluidParams strong = p;
    strong.f_norm = 10.0;
    const DimBound s = dim_bound(strong);
    CHECK(testing::rel_err(s.dim_bound, 10.0 * b.dim_bound) < 1e-15);
    CHECK(testing::rel_err(s.dim_bound_coarse, 10.0 * b.dim_bound_coarse) < 1e-15);
}

TEST_CASE("quadratic majorant") {
    const FluidParams p{2, 1.0, 1.0, 1.0, 2 * pi * pi, "given"};
    const DimBound b = dim_bound(p);
    CHECK(q_upper(p, 0.0) == doctest::Approx(b.b).epsilon(1e-15));
    CHECK(q_upper(p, 0.0) > 0.0);
    CHECK(std::abs(q_upper(p, b.m_star)) <= 1e-12 * b.b);
    CHECK(q_upper(p, 2 * b.m_star) == doctest::Approx(-3.0 * b.b).epsilon(1e-12));
    double prev = q_upper(p, 0.0);
    for (double m = 0.01; m < 1.0; m += 0.01) {
        const double q = q_upper(p, m);
        CHECK(q < prev);
        prev = q;
    }
    CHECK_THROWS(q_upper(p, -1.0));
}

TEST_CASE("random parameter draws") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    const LTConstants c = lt_constants();
    int admissible = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        FluidParams p;
        p.measure = std::pow(10.0, logu(rng));
        p.nu = std::pow(10.0, logu(rng));
        p.f_norm = std::pow(10.0, logu(rng));
        // lambda1 above the floor 2 pi / |Omega| by a random factor
        p.lambda1 = 2 * pi / p.measure * (1.0 + std::pow(10.0, logu(rng)));
        const DimBound b = dim_bound(p);
        const double closed = std::sqrt(c.c_LT / (2 * c.c_sp)) * std::sqrt(p.lambda1 * p.measure) * p.grashof();
        CHECK(testing::rel_err(b.dim_bound, closed) < 1e-14);
        CHECK(b.lambda1_admissible);
        CHECK(b.dim_bound < b.dim_bound_coarse);
        CHECK(std::abs(q_upper(p, b.m_star)) <= 1e-12 * b.b);
        admissible += b.lambda1_admissible;
    }
    CHECK(admissible == 1000);
}

TEST_CASE("invalid and flagged parameters") {
    const FluidParams good{2, 1.0, 1.0, 1.0, 2 * pi * pi, "given"};
    const std::vector<void (*)(FluidParams&)> breakers{
        [](FluidParams& p) { p.nu = 0.0; },      [](FluidParams& p) { p.f_norm = -1.0; },
        [](FluidParams& p) { p.measure = 0.0; }, [](FluidParams& p) { p.lambda1 = 0.0; },
        [](FluidParams& p) { p.n = 3; },
    };
    for (const auto breaker : breakers) {
        FluidParams broken = good;
        breaker(broken);
        CHECK_THROWS_AS(dim_bound(broken), std::invalid_argument);
    }

    FluidParams low = good;
    low.lambda1 = 3.0;  // below 2 pi / |Omega|
    const DimBound b = dim_bound(low);
    CHECK_FALSE(b.lambda1_admissible);
    CHECK_FALSE(b.warning.empty());
    CHECK(b.dim_bound > b.dim_bound_coarse);
}
