#include "stokes/errors.hpp"
#include "stokes/grid.hpp"
#include "stokes/operators.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace stokes;
using testing::pi;

TEST_CASE("rectangle construction") {
    const auto sq = make_rectangle(1.0, 1.0, 64);
    CHECK(sq->measure() == 1.0);
    CHECK(sq->h() == doctest::Approx(1.0 / 64));
    CHECK(sq->interior_count() == 63 * 63);

    const auto wide = make_rectangle(2.0, 1.0, 64);
    CHECK(wide->measure() == 2.0);
    CHECK(wide->ny() == 32);
    CHECK(wide->interior_count() == 63 * 31);

    CHECK_THROWS_AS(make_rectangle(1.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_rectangle(0.0, 1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_rectangle(1.0, -1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_rectangle(1.0, 0.3, 16), std::invalid_argument);
}

TEST_CASE("disk construction") {
    const auto fine = make_disk(1.0, 256);
    CHECK(testing::rel_err(fine->measure(), pi) < 0.02);
    CHECK(fine->measure() == doctest::Approx(fine->discrete_measure()));

    const auto coarse = make_disk(1.0, 16);
    CHECK(coarse->measure() > 0.0);
    CHECK_THROWS_AS(make_disk(0.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_disk(-1.0, 64), std::invalid_argument);

    // the mask is symmetric under the eight symmetries of the square
    const auto d = make_disk(1.0, 40);
    for (int j = 0; j <= 40; ++j)
        for (int i = 0; i <= 40; ++i) {
            CHECK(d->interior(i, j) == d->interior(40 - i, j));
            CHECK(d->interior(i, j) == d->interior(j, i));
        }
}

TEST_CASE("every interior node keeps its neighbours inside the box") {
    for (const auto& d : {make_rectangle(1.0, 1.0, 8), make_disk(1.0, 33), make_rectangle(3.0, 1.0, 30)}) {
        for (int k = 0; k < d->interior_count(); ++k) {
            const Node p = d->node(k);
            CHECK(d->index(p.i, p.j) == k);
            CHECK(p.i >= 1);
            CHECK(p.j >= 1);
            CHECK(p.i <= d->nx() - 1);
            CHECK(p.j <= d->ny() - 1);
        }
    }
}

TEST_CASE("masked domains validate their mask") {
    std::vector<bool> mask(25, false);
    CHECK_THROWS_AS(make_masked(4, 4, 0.25, mask), std::invalid_argument);
    mask[0] = true;
    CHECK_THROWS_AS(make_masked(4, 4, 0.25, mask), std::invalid_argument);
    mask[0] = false;
    mask[2 * 5 + 2] = true;
    const auto single = make_masked(4, 4, 0.25, mask);
    CHECK(single->interior_count() == 1);
    CHECK(single->measure() == doctest::Approx(0.0625));
    CHECK(single->index(0, 0) == -1);
    CHECK(single->index(-1, 7) == -1);
}

TEST_CASE("inner product") {
    const auto d = make_rectangle(1.0, 1.0, 128);
    const ScalarField one = sample(d, [](double, double) { return 1.0; });
    CHECK(inner(one, one) == doctest::Approx(1.0).epsilon(0.02));

    std::mt19937_64 rng(7);
    const auto a = testing::random_field(d, rng);
    const auto b = testing::random_field(d, rng);
    CHECK(inner(a, b) == doctest::Approx(inner(b, a)));
    CHECK(inner(a, a) > 0.0);
    CHECK(norm(a) == doctest::Approx(std::sqrt(inner(a, a))));

    const auto other = make_rectangle(1.0, 1.0, 64);
    CHECK_THROWS_AS(inner(a, ScalarField(other)), DomainMismatch);
}

TEST_CASE("orthonormalized eigenfunctions are orthonormal in the discrete product") {
    const auto d = make_rectangle(1.0, 1.0, 32);
    const auto set = solve_laplacian(d, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            CHECK(std::abs(inner(set.eigenfunctions[i], set.eigenfunctions[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
}

TEST_CASE("grad_norm_sq") {
    const auto d = make_rectangle(1.0, 1.0, 32);
    CHECK(grad_norm_sq(ScalarField(d)) == 0.0);

    std::mt19937_64 rng(11);
    const auto f = testing::random_field(d, rng);
    CHECK(grad_norm_sq(f) > 0.0);
    ScalarField scaled = f;
    scaled *= 3.0;
    CHECK(grad_norm_sq(scaled) == doctest::Approx(9.0 * grad_norm_sq(f)));

    // forward differences over every edge reproduce f^T K f
    const SparseSym K = assemble_stiffness(*d);
    CHECK(grad_norm_sq(f) == doctest::Approx(f.values().dot(K * f.values())).epsilon(1e-12));

    VectorField2 u(d, f.values(), 2.0 * f.values());
    CHECK(grad_norm_sq(u) == doctest::Approx(5.0 * grad_norm_sq(f)));
}

TEST_CASE("Rayleigh quotient of the first sine mode converges at second order") {
    std::vector<double> errors;
    for (const int nx : {16, 32, 64, 128}) {
        const auto d = make_rectangle(1.0, 1.0, nx);
        const ScalarField f = sample(d, [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); });
        const double q = grad_norm_sq(f) / inner(f, f);
        errors.push_back(std::abs(q - 2.0 * pi * pi));
    }
    CHECK(errors.back() / (2.0 * pi * pi) < 1e-3);
    for (std::size_t k = 1; k < errors.size(); ++k) {
        const double order = std::log2(errors[k - 1] / errors[k]);
        CHECK(order == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("curl fields are discretely divergence free") {
    std::mt19937_64 rng(3);
    for (const auto& d : {make_rectangle(1.0, 1.0, 24), make_disk(1.0, 30)}) {
        const auto psi = testing::random_field(d, rng);
        const VectorField2 u = stream_to_velocity(psi);
        CHECK(max_interior_divergence(u) < 1e-10);
        CHECK(divergence(u).values().cwiseAbs().maxCoeff() > 0.0);  // boundary rows are not exempt
    }
}

TEST_CASE("fields are zero outside the domain") {
    const auto d = make_disk(1.0, 20);
    ScalarField f = sample(d, [](double, double) { return 2.0; });
    CHECK(f.at(0, 0) == 0.0);
    CHECK(f.at(10, 10) == 2.0);
    CHECK(f.at(-3, 50) == 0.0);
    const VectorField2 u(d, f.values(), -f.values());
    CHECK(u.component(2).at(10, 10) == -2.0);
    CHECK_THROWS(u.component(3));
}
