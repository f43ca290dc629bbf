#include "stokes/io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stokes {

namespace {

constexpr std::array<char, 8> kMagic{'S', 'T', 'K', 'S', '1', '\0', '\0', '\0'};

void append_grid(std::vector<double>& out, const GriddedDomain& d, const Eigen::VectorXd& values) {
    const std::size_t base = out.size();
    out.resize(base + static_cast<std::size_t>(d.nx() + 1) * (d.ny() + 1), 0.0);
    for (int k = 0; k < d.interior_count(); ++k) {
        const Node p = d.node(k);
        out[base + static_cast<std::size_t>(p.j) * (d.nx() + 1) + p.i] = values[k];
    }
}

template <typename T>
void put(std::ofstream& f, T value) {
    f.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& f) {
    T value{};
    if (!f.read(reinterpret_cast<char*>(&value), sizeof(T))) throw std::runtime_error("truncated field blob");
    return value;
}

void write_raw(const std::filesystem::path& path, const GriddedDomain& d, std::uint64_t m,
               const std::vector<double>& data) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f.write(kMagic.data(), kMagic.size());
    put<std::uint64_t>(f, static_cast<std::uint64_t>(d.nx()));
    put<std::uint64_t>(f, static_cast<std::uint64_t>(d.ny()));
    put<double>(f, d.h());
    put<std::uint64_t>(f, m);
    f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

Json constants_json(const Slacks& slacks) {
    const LTConstants c = lt_constants();
    Json j;
    j["c_LT"] = c.c_LT;
    j["c_sp"] = c.c_sp;
    j["R"] = c.R;
    j["L_cl_1_2"] = c.L_cl_1_2;
    j["slacks"] = {{"computed_bounds", slacks.computed_bounds},
                   {"analytic_bounds", slacks.analytic_bounds},
                   {"frame", slacks.frame},
                   {"lieb_thirring", slacks.lieb_thirring}};
    return j;
}

Json domain_json(const GriddedDomain& d) {
    Json j;
    j["shape"] = d.shape();
    j["nx"] = d.nx();
    j["ny"] = d.ny();
    j["h"] = d.h();
    j["x0"] = d.x0();
    j["y0"] = d.y0();
    j["measure"] = d.measure();
    j["interior_nodes"] = d.interior_count();
    return j;
}

SpectrumReport make_spectrum_report(const LaplaceEigenSet& set, double tol) {
    return {"laplace", domain_json(*set.domain), set.domain->h(), static_cast<int>(set.eigenvalues.size()),
            set.eigenvalues, set.residuals, tol, set.seed};
}

SpectrumReport make_spectrum_report(const StokesEigenSet& set, double tol) {
    return {"stokes", domain_json(*set.domain), set.domain->h(), static_cast<int>(set.eigenvalues.size()),
            set.eigenvalues, set.residuals, tol, set.seed};
}

Json to_json(const SpectrumReport& r, const Slacks& slacks) {
    Json j;
    j["operator"] = r.operator_name;
    j["domain"] = r.domain;
    j["h"] = r.h;
    j["m"] = r.m;
    j["eigenvalues"] = r.eigenvalues;
    j["residuals"] = r.residuals;
    j["tol"] = r.tol;
    j["solver_seed"] = r.solver_seed;
    j["constants"] = constants_json(slacks);
    return j;
}

Json to_json(const BoundCheck& c) {
    Json j;
    j["name"] = c.name;
    j["m"] = c.m;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["margin"] = c.margin;
    j["slack"] = c.slack;
    j["sense"] = c.sense == BoundCheck::Sense::lower ? "lower" : "upper";
    j["passed"] = c.passed;
    return j;
}

Json to_json(const FrameReport& r) {
    Json j;
    j["m"] = r.m;
    j["bound_kind"] = to_string(r.kind);
    j["bound"] = r.bound;
    j["sup_value"] = r.sup_value;
    j["argmax_xi"] = {r.argmax_xi.x, r.argmax_xi.y};
    j["max_div_residual"] = r.max_div_residual;
    j["slack"] = r.slack;
    j["passed"] = r.passed;
    j["xi_count"] = r.xi_count;
    j["constants"] = constants_json();
    return j;
}

Json to_json(const DimBound& b) {
    Json j;
    j["G"] = b.grashof;
    j["m_star"] = b.m_star;
    j["dim_bound"] = b.dim_bound;
    j["dim_bound_coarse"] = b.dim_bound_coarse;
    j["lambda1_source"] = b.lambda1_source;
    j["q_coeffs"] = {{"a", b.a}, {"b", b.b}};
    j["lambda1_admissible"] = b.lambda1_admissible;
    if (!b.warning.empty()) j["warning"] = b.warning;
    j["constants"] = constants_json();
    return j;
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string constants_comment(const Slacks& slacks) {
    const LTConstants c = lt_constants();
    std::ostringstream out;
    out << "# c_LT=" << format_double(c.c_LT) << " c_sp=" << format_double(c.c_sp)
        << " slack_computed=" << format_double(slacks.computed_bounds)
        << " slack_analytic=" << format_double(slacks.analytic_bounds)
        << " slack_frame=" << format_double(slacks.frame)
        << " slack_lt=" << format_double(slacks.lieb_thirring) << '\n';
    return out.str();
}

std::string bound_checks_csv(const std::vector<BoundCheck>& checks, const Slacks& slacks) {
    std::ostringstream out;
    out << constants_comment(slacks);
    out << "name,m,lhs,rhs,margin,passed\n";
    for (const auto& r : checks) {
        out << r.name << ',' << r.m << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
            << format_double(r.margin) << ',' << (r.passed ? "true" : "false") << '\n';
    }
    return out.str();
}

void write_blob(const std::filesystem::path& path, const std::vector<ScalarField>& fields) {
    if (fields.empty()) throw std::invalid_argument("nothing to write");
    const GriddedDomain& d = fields.front().domain();
    std::vector<double> data;
    for (const auto& f : fields) {
        require_same_grid(d, f.domain());
        append_grid(data, d, f.values());
    }
    write_raw(path, d, fields.size(), data);
}

void write_blob(const std::filesystem::path& path, const std::vector<VectorField2>& fields) {
    if (fields.empty()) throw std::invalid_argument("nothing to write");
    const GriddedDomain& d = fields.front().domain();
    std::vector<double> data;
    for (const auto& f : fields) {
        require_same_grid(d, f.domain());
        append_grid(data, d, f.u1());
        append_grid(data, d, f.u2());
    }
    write_raw(path, d, fields.size(), data);
}

FieldBlob read_blob(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::array<char, 8> magic{};
    if (!f.read(magic.data(), magic.size()) || magic != kMagic)
        throw std::runtime_error(path.string() + " is not a field blob");
    FieldBlob b;
    b.nx = get<std::uint64_t>(f);
    b.ny = get<std::uint64_t>(f);
    b.h = get<double>(f);
    b.m = get<std::uint64_t>(f);
    const auto header = f.tellg();
    f.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::size_t>(f.tellg() - header);
    f.seekg(header);
    if (bytes % sizeof(double) != 0) throw std::runtime_error("field blob payload is not a whole number of doubles");
    b.data.resize(bytes / sizeof(double));
    f.read(reinterpret_cast<char*>(b.data.data()), static_cast<std::streamsize>(bytes));
    const std::size_t grid = static_cast<std::size_t>(b.nx + 1) * (b.ny + 1);
    if (b.m == 0 || b.data.size() % (grid * b.m) != 0) throw std::runtime_error("field blob size does not match header");
    return b;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& value) { write_text(path, value.dump(2) + "\n"); }

}  // namespace stokes
