#pragma once

#include "stokes/bounds.hpp"
#include "stokes/frame.hpp"
#include "stokes/grid.hpp"
#include "stokes/lt_attractor.hpp"
#include "stokes/operators.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace stokes {

using Json = nlohmann::ordered_json;

/// Relative slacks applied by the checks, echoed into every report.
struct Slacks {
    double computed_bounds = 0.01;
    double analytic_bounds = 0.0;
    double frame = 0.02;
    double lieb_thirring = 0.02;
};

/// {c_LT, c_sp, R, L_cl_1_2, slacks{...}}.
Json constants_json(const Slacks& slacks = {});

struct SpectrumReport {
    std::string operator_name;
    Json domain;
    double h = 0.0;
    int m = 0;
    std::vector<double> eigenvalues;
    std::vector<double> residuals;
    double tol = 0.0;
    std::uint64_t solver_seed = 0;
};

Json domain_json(const GriddedDomain& domain);

SpectrumReport make_spectrum_report(const LaplaceEigenSet& set, double tol);
SpectrumReport make_spectrum_report(const StokesEigenSet& set, double tol);

Json to_json(const SpectrumReport& report, const Slacks& slacks = {});
Json to_json(const BoundCheck& check);
Json to_json(const FrameReport& report);
Json to_json(const DimBound& bound);

/// "# c_LT=... c_sp=... slack_...=..." terminated by a newline.
std::string constants_comment(const Slacks& slacks = {});

/// name,m,lhs,rhs,margin,passed with shortest round-trip number formatting,
/// preceded by the constants comment line.
std::string bound_checks_csv(const std::vector<BoundCheck>& checks, const Slacks& slacks = {});

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Binary field blob: 8-byte magic "STKS1\0\0\0", uint64 nx, uint64 ny, float64 h,
/// uint64 m, then m grids of (ny+1) x (nx+1) float64 in row-major order (j outer,
/// i inner), zero outside Omega. Little-endian, as laid out in memory.
struct FieldBlob {
    std::uint64_t nx = 0;
    std::uint64_t ny = 0;
    double h = 0.0;
    std::uint64_t m = 0;
    /// grids_per_field x m grids, each (ny+1)(nx+1) values.
    std::vector<double> data;
};

void write_blob(const std::filesystem::path& path, const std::vector<ScalarField>& fields);

/// Each field contributes its u1 grid followed by its u2 grid; the header carries m.
void write_blob(const std::filesystem::path& path, const std::vector<VectorField2>& fields);

FieldBlob read_blob(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const Json& value);

}  // namespace stokes
