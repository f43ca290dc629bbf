#include "stokes/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stokes {

namespace {

void require_measure(double measure) {
    if (!(measure > 0.0) || !std::isfinite(measure)) throw std::invalid_argument("measure must be positive");
}

void require_spectrum_ordered(std::span<const double> spectrum) {
    for (std::size_t k = 1; k < spectrum.size(); ++k)
        if (spectrum[k] < spectrum[k - 1]) throw std::invalid_argument("spectrum is not nondecreasing");
}

// n/(2+n) (C / measure)^{2/n} with C = (2 pi)^n / (omega_n * factor)
double sum_coefficient(int n, double measure, double factor) {
    const double base = std::pow(2.0 * std::numbers::pi, n) / (omega_n(n) * factor * measure);
    return static_cast<double>(n) / (2.0 + n) * std::pow(base, 2.0 / n);
}

}  // namespace

BoundCheck make_check(std::string name, BoundCheck::Sense sense, int m, double lhs, double rhs,
                      double slack, int n, double measure) {
    BoundCheck c;
    c.name = std::move(name);
    c.sense = sense;
    c.m = m;
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = sense == BoundCheck::Sense::lower ? lhs - rhs : rhs - lhs;
    c.slack = slack;
    c.passed = c.margin >= -slack;
    c.n = n;
    c.measure = measure;
    return c;
}

double gamma_half_integer(int twice_x) {
    if (twice_x < 1) throw std::invalid_argument("gamma argument must be positive");
    // Gamma(1) = 1, Gamma(1/2) = sqrt(pi), Gamma(x + 1) = x Gamma(x)
    double value = (twice_x % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
    for (int t = (twice_x % 2 == 0) ? 2 : 1; t + 2 <= twice_x; t += 2) value *= 0.5 * t;
    return value;
}

double omega_n(int n) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    return std::pow(std::numbers::pi, 0.5 * n) / gamma_half_integer(n + 2);
}

double li_yau_sum_bound(int n, double measure, int m) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    require_measure(measure);
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    return sum_coefficient(n, measure, 1.0) * std::pow(static_cast<double>(m), 1.0 + 2.0 / n);
}

double stokes_sum_bound(int n, double measure, int m) {
    if (n < 2) throw std::invalid_argument("Stokes bounds need n >= 2");
    require_measure(measure);
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    return sum_coefficient(n, measure, n - 1.0) * std::pow(static_cast<double>(m), 1.0 + 2.0 / n);
}

double stokes_each_bound(int n, double measure, int k) {
    if (n < 2) throw std::invalid_argument("Stokes bounds need n >= 2");
    require_measure(measure);
    if (k < 1) throw std::invalid_argument("index must be at least 1");
    return sum_coefficient(n, measure, n - 1.0) * std::pow(static_cast<double>(k), 2.0 / n);
}

double lambda1_floor(int n, double measure) { return li_yau_sum_bound(n, measure, 1); }

double weyl_coefficient(int n, double measure) {
    if (n < 2) throw std::invalid_argument("Stokes asymptotics need n >= 2");
    require_measure(measure);
    return std::pow(std::pow(2.0 * std::numbers::pi, n) / (omega_n(n) * (n - 1.0) * measure), 2.0 / n);
}

double laplace_weyl_coefficient(int n, double measure) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    require_measure(measure);
    return std::pow(std::pow(2.0 * std::numbers::pi, n) / (omega_n(n) * measure), 2.0 / n);
}

double bathtub_bound(int n, double M1, double M2) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    if (!(M1 > 0.0) || !(M2 > 0.0)) throw std::invalid_argument("M1 and M2 must be positive");
    const double dn = n;
    return std::pow(M1 * omega_n(n), 2.0 / (2.0 + dn)) * std::pow(M2 * (2.0 + dn) / dn, dn / (2.0 + dn));
}

std::vector<BoundCheck> check_sum_bound(std::span<const double> spectrum, const SumBoundFn& bound,
                                        const std::string& name, const BoundParams& params) {
    require_spectrum_ordered(spectrum);
    std::vector<BoundCheck> out;
    out.reserve(spectrum.size());
    double partial = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        partial += spectrum[k];
        const int m = static_cast<int>(k) + 1;
        const double rhs = bound(params.n, params.measure, m);
        out.push_back(make_check(name, BoundCheck::Sense::lower, m, partial, rhs,
                                 params.slack_fraction * rhs, params.n, params.measure));
    }
    return out;
}

std::vector<BoundCheck> check_each_bound(std::span<const double> spectrum, const BoundParams& params) {
    require_spectrum_ordered(spectrum);
    std::vector<BoundCheck> out;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const int index = static_cast<int>(k) + 1;
        const double rhs = stokes_each_bound(params.n, params.measure, index);
        out.push_back(make_check("stokes_each", BoundCheck::Sense::lower, index, spectrum[k], rhs,
                                 params.slack_fraction * rhs, params.n, params.measure));
    }
    return out;
}

}  // namespace stokes
