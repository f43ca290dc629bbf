#pragma once

#include "stokes/grid.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <string>
#include <unistd.h>

namespace testing {

inline constexpr double pi = std::numbers::pi;

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
    static std::atomic<int> counter{0};
    auto dir = std::filesystem::temp_directory_path() /
               ("stokes_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline stokes::ScalarField random_field(const stokes::DomainPtr& d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    stokes::ScalarField f(d);
    for (int k = 0; k < d->interior_count(); ++k) f.values()[k] = g(rng);
    return f;
}

}  // namespace testing
