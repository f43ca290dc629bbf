#include "stokes/cli.hpp"

#include "stokes/bounds.hpp"
#include "stokes/errors.hpp"
#include "stokes/frame.hpp"
#include "stokes/lt_attractor.hpp"
#include "stokes/operators.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>

namespace stokes::cli {

namespace {

const std::vector<std::string> kCheckNames{"bounds", "frame", "lt", "dim"};

template <typename T>
T field(const Json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ConfigError(where + "." + key + " has the wrong type");
    }
}

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& item : j.items())
        if (!allowed.count(item.key())) throw ConfigError("unknown key " + where + "." + item.key());
}

DomainSpec parse_domain(const Json& j) {
    if (!j.is_object()) throw ConfigError("domain must be an object");
    reject_unknown(j, {"shape", "width", "height", "radius", "nx"}, "domain");
    DomainSpec d;
    if (j.contains("shape")) d.shape = field<std::string>(j, "shape", "domain");
    if (d.shape != "rectangle" && d.shape != "disk")
        throw ConfigError("unknown domain shape '" + d.shape + "' (expected rectangle or disk)");
    if (j.contains("width")) d.width = field<double>(j, "width", "domain");
    if (j.contains("height")) d.height = field<double>(j, "height", "domain");
    if (j.contains("radius")) d.radius = field<double>(j, "radius", "domain");
    if (j.contains("nx")) d.nx = field<int>(j, "nx", "domain");
    return d;
}

struct Spectrum {
    std::vector<double> values;
    double measure = 0.0;
    double slack_fraction = 0.0;
    std::string source;
};

struct Context {
    const RunConfig& config;
    DomainPtr domain;
    SolveOptions solve;
    std::optional<StokesEigenSet> stokes;
    std::optional<LaplaceEigenSet> laplace;

    const StokesEigenSet& stokes_set(int m) {
        if (!stokes || static_cast<int>(stokes->eigenvalues.size()) < m) stokes = solve_stokes(domain, m, solve);
        return *stokes;
    }
    const LaplaceEigenSet& laplace_set(int m) {
        if (!laplace || static_cast<int>(laplace->eigenvalues.size()) < m) laplace = solve_laplacian(domain, m, solve);
        return *laplace;
    }
};

Context make_context(const RunConfig& c, bool need_domain) {
    Context ctx{c, nullptr, {c.tol, c.seed}, std::nullopt, std::nullopt};
    if (need_domain) ctx.domain = build_domain(c.domain, c.domain.nx);
    return ctx;
}

bool is_stokes(const RunConfig& c) { return c.operator_name == "stokes"; }

Spectrum spectrum_for(Context& ctx) {
    const RunConfig& c = ctx.config;
    Spectrum s;
    if (c.eigenvalues) {
        s.values = *c.eigenvalues;
        s.measure = c.measure ? *c.measure : ctx.domain->measure();
        s.slack_fraction = Slacks{}.analytic_bounds;
        s.source = "table";
        return s;
    }
    s.measure = ctx.domain->measure();
    s.slack_fraction = Slacks{}.computed_bounds;
    s.source = "computed";
    s.values = is_stokes(c) ? ctx.stokes_set(c.m).eigenvalues : ctx.laplace_set(c.m).eigenvalues;
    s.values.resize(static_cast<std::size_t>(c.m));
    return s;
}

std::vector<BoundCheck> bound_rows(Context& ctx) {
    const Spectrum s = spectrum_for(ctx);
    const BoundParams params{2, s.measure, s.slack_fraction};
    std::vector<BoundCheck> rows;
    const auto append = [&rows](std::vector<BoundCheck> more) { rows.insert(rows.end(), more.begin(), more.end()); };
    if (is_stokes(ctx.config)) {
        append(check_sum_bound(s.values, stokes_sum_bound, "stokes_sum", params));
        append(check_each_bound(s.values, params));
    } else {
        append(check_sum_bound(s.values, li_yau_sum_bound, "li_yau", params));
    }
    if (!s.values.empty()) {
        const double floor = lambda1_floor(2, s.measure);
        rows.push_back(make_check("lambda1_floor", BoundCheck::Sense::lower, 1, s.values.front(), floor,
                                  s.slack_fraction * floor, 2, s.measure));
    }
    return rows;
}

template <typename Family>
BoundCheck suborthonormal_row(const std::string& name, const Family& family, double measure) {
    return make_check(name, BoundCheck::Sense::upper, static_cast<int>(family.size()), gram_max_eigenvalue(family),
                      1.0, 1e-10, 2, measure);
}

BoundCheck frame_row(const FrameReport& r, double measure) {
    return make_check("frame_" + to_string(r.kind), BoundCheck::Sense::upper, r.m, r.sup_value, r.bound,
                      r.slack * r.bound, 2, measure);
}

void frame_rows(Context& ctx, std::vector<BoundCheck>& rows, Json& reports) {
    const RunConfig& c = ctx.config;
    const double measure = ctx.domain->measure();
    const auto grid = default_xi_grid(*ctx.domain, c.seed);
    const auto guarded = [&](auto&& body) {
        try {
            body();
        } catch (const OrthonormalityViolation& e) {
            rows.push_back(make_check("orthonormal_family", BoundCheck::Sense::upper,
                                      c.family_size + (c.inject_duplicate ? 1 : 0), e.deviation(),
                                      FrameOptions{}.orthonormality_tol, 0.0, 2, measure));
        }
    };
    if (is_stokes(c)) {
        std::vector<VectorField2> family = ctx.stokes_set(c.family_size).velocities;
        family.resize(static_cast<std::size_t>(c.family_size), VectorField2(ctx.domain));
        if (c.inject_duplicate) family.push_back(family.front());
        rows.push_back(suborthonormal_row("suborthonormal", family, measure));
        rows.push_back(suborthonormal_row("suborthonormal_u1", project_component(family, 1), measure));
        rows.push_back(suborthonormal_row("suborthonormal_u2", project_component(family, 2), measure));
        guarded([&] {
            for (const FrameKind kind : {FrameKind::vector, FrameKind::divfree}) {
                const FrameReport r = frame_check(family, grid, kind);
                rows.push_back(frame_row(r, measure));
                reports.push_back(to_json(r));
                if (kind == FrameKind::divfree)
                    rows.push_back(make_check("incompressibility", BoundCheck::Sense::upper, r.m, r.max_div_residual,
                                              1e-2, 0.0, 2, measure));
            }
        });
    } else {
        std::vector<ScalarField> family = ctx.laplace_set(c.family_size).eigenfunctions;
        family.resize(static_cast<std::size_t>(c.family_size), ScalarField(ctx.domain));
        if (c.inject_duplicate) family.push_back(family.front());
        rows.push_back(suborthonormal_row("suborthonormal", family, measure));
        guarded([&] {
            const FrameReport r = frame_check(family, grid);
            rows.push_back(frame_row(r, measure));
            reports.push_back(to_json(r));
        });
    }
}

void lt_rows(Context& ctx, std::vector<BoundCheck>& rows) {
    const int m = ctx.config.m;
    const auto& set = ctx.stokes_set(m);
    std::vector<int> sizes;
    for (const int k : {1, 5, 10, 20})
        if (k < m) sizes.push_back(k);
    sizes.push_back(m);
    for (const int k : sizes) {
        const std::vector<VectorField2> family(set.velocities.begin(), set.velocities.begin() + k);
        rows.push_back(lt_check(family));
    }
}

FluidParams fluid_params(Context& ctx) {
    const RunConfig& c = ctx.config;
    FluidParams p;
    p.nu = c.fluid.nu;
    p.f_norm = c.fluid.f_norm;
    p.measure = c.measure ? *c.measure : ctx.domain->measure();
    if (c.fluid.lambda1) {
        p.lambda1 = *c.fluid.lambda1;
        p.lambda1_source = "given";
    } else if (c.eigenvalues && is_stokes(c)) {
        p.lambda1 = c.eigenvalues->front();
        p.lambda1_source = "table";
    } else if (c.refinement.size() >= 3) {
        std::vector<double> values;
        for (auto it = c.refinement.end() - 3; it != c.refinement.end(); ++it)
            values.push_back(solve_stokes(build_domain(c.domain, *it), 1, ctx.solve).eigenvalues.front());
        p.lambda1 = richardson(values).value;
        p.lambda1_source = "richardson";
    } else {
        p.lambda1 = ctx.stokes_set(1).eigenvalues.front();
        p.lambda1_source = "computed";
    }
    return p;
}

DimBound dim_rows(Context& ctx, std::vector<BoundCheck>& rows) {
    const FluidParams p = fluid_params(ctx);
    const DimBound b = dim_bound(p);
    const double floor = 2.0 * std::numbers::pi / p.measure;
    rows.push_back(make_check("lambda1_admissible", BoundCheck::Sense::lower, 1, p.lambda1, floor, 0.0, 2, p.measure));
    rows.push_back(make_check("dim_vs_coarse", BoundCheck::Sense::upper, 0, b.dim_bound, b.dim_bound_coarse, 0.0, 2,
                              p.measure));
    rows.push_back(make_check("q_root", BoundCheck::Sense::upper, 0, std::abs(q_upper(p, b.m_star)), 1e-12 * b.b, 0.0,
                              2, p.measure));
    return b;
}

std::filesystem::path prepare_out(const RunConfig& c) {
    std::error_code ec;
    std::filesystem::create_directories(c.out, ec);
    if (ec || !std::filesystem::is_directory(c.out))
        throw ConfigError("output directory " + c.out.string() + " is not writable");
    return c.out;
}

bool all_passed(const std::vector<BoundCheck>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const BoundCheck& r) { return r.passed; });
}

}  // namespace

std::vector<std::string> parse_checks(const std::vector<std::string>& names) {
    if (names.empty()) throw ConfigError("no checks selected");
    std::set<std::string> chosen;
    for (const auto& n : names) {
        if (n == "all") {
            chosen.insert(kCheckNames.begin(), kCheckNames.end());
        } else if (std::find(kCheckNames.begin(), kCheckNames.end(), n) != kCheckNames.end()) {
            chosen.insert(n);
        } else {
            throw ConfigError("unknown check '" + n + "' (expected bounds, frame, lt, dim or all)");
        }
    }
    std::vector<std::string> out;
    for (const auto& n : kCheckNames)
        if (chosen.count(n)) out.push_back(n);
    return out;
}

RunConfig parse_config(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j,
                   {"domain", "operator", "m", "tol", "refinement", "checks", "seed", "out", "eigenvalues",
                    "measure", "fluid", "frame"},
                   "config");
    RunConfig c;
    if (j.contains("domain")) c.domain = parse_domain(j.at("domain"));
    if (j.contains("operator")) c.operator_name = field<std::string>(j, "operator", "config");
    if (c.operator_name != "stokes" && c.operator_name != "laplace")
        throw ConfigError("operator must be stokes or laplace");
    if (j.contains("m")) c.m = field<int>(j, "m", "config");
    if (c.m < 1) throw ConfigError("m must be at least 1");
    if (j.contains("tol")) c.tol = field<double>(j, "tol", "config");
    if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
    if (j.contains("refinement")) c.refinement = field<std::vector<int>>(j, "refinement", "config");
    for (std::size_t k = 1; k < c.refinement.size(); ++k)
        if (c.refinement[k] <= c.refinement[k - 1]) throw ConfigError("refinement grid sizes must strictly increase");
    if (j.contains("checks")) {
        const Json& ch = j.at("checks");
        c.checks = parse_checks(ch.is_string() ? std::vector<std::string>{ch.get<std::string>()}
                                               : field<std::vector<std::string>>(j, "checks", "config"));
    }
    if (j.contains("seed")) c.seed = field<std::uint64_t>(j, "seed", "config");
    if (j.contains("out")) c.out = field<std::string>(j, "out", "config");
    if (j.contains("eigenvalues")) {
        c.eigenvalues = field<std::vector<double>>(j, "eigenvalues", "config");
        if (c.eigenvalues->empty()) throw ConfigError("eigenvalue table is empty");
    }
    if (j.contains("measure")) {
        c.measure = field<double>(j, "measure", "config");
        if (!(*c.measure > 0.0)) throw ConfigError("measure must be positive");
    }
    if (j.contains("fluid")) {
        const Json& f = j.at("fluid");
        if (!f.is_object()) throw ConfigError("fluid must be an object");
        reject_unknown(f, {"nu", "f_norm", "lambda1"}, "fluid");
        if (f.contains("nu")) c.fluid.nu = field<double>(f, "nu", "fluid");
        if (f.contains("f_norm")) c.fluid.f_norm = field<double>(f, "f_norm", "fluid");
        if (f.contains("lambda1")) c.fluid.lambda1 = field<double>(f, "lambda1", "fluid");
    }
    if (j.contains("frame")) {
        const Json& f = j.at("frame");
        if (!f.is_object()) throw ConfigError("frame must be an object");
        reject_unknown(f, {"inject_duplicate", "family_size"}, "frame");
        if (f.contains("inject_duplicate")) c.inject_duplicate = field<bool>(f, "inject_duplicate", "frame");
        if (f.contains("family_size")) c.family_size = field<int>(f, "family_size", "frame");
        if (c.family_size < 1) throw ConfigError("frame.family_size must be at least 1");
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config " + path.string());
    Json j;
    try {
        j = Json::parse(f);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

DomainPtr build_domain(const DomainSpec& spec, int nx) {
    try {
        if (spec.shape == "rectangle") return make_rectangle(spec.width, spec.height, nx);
        if (spec.shape == "disk") return make_disk(spec.radius, nx);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown domain shape '" + spec.shape + "'");
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
    const auto dir = prepare_out(c);
    Context ctx = make_context(c, true);
    if (is_stokes(c)) {
        const auto& set = ctx.stokes_set(c.m);
        write_json(dir / "spectrum.json", to_json(make_spectrum_report(set, c.tol)));
        write_blob(dir / "eigenfunctions.bin", set.stream_functions);
        write_blob(dir / "velocities.bin", set.velocities);
    } else {
        const auto& set = ctx.laplace_set(c.m);
        write_json(dir / "spectrum.json", to_json(make_spectrum_report(set, c.tol)));
        write_blob(dir / "eigenfunctions.bin", set.eigenfunctions);
    }
    out << "wrote " << c.m << ' ' << c.operator_name << " eigenpairs to " << dir.string() << '\n';
    return kPass;
}

int cmd_check(const RunConfig& c, std::ostream& out) {
    const auto dir = prepare_out(c);
    const auto has = [&](const char* n) { return std::find(c.checks.begin(), c.checks.end(), n) != c.checks.end(); };
    const bool table_only = c.eigenvalues && c.measure && !has("frame") && !has("lt") &&
                            !(has("dim") && !c.fluid.lambda1 && !is_stokes(c));
    Context ctx = make_context(c, !table_only);

    std::vector<BoundCheck> rows;
    Json frames = Json::array();
    Json report;
    report["constants"] = constants_json();
    if (has("bounds")) {
        const auto more = bound_rows(ctx);
        rows.insert(rows.end(), more.begin(), more.end());
    }
    if (has("frame")) {
        frame_rows(ctx, rows, frames);
        write_json(dir / "frame.json", frames);
    }
    if (has("lt")) lt_rows(ctx, rows);
    if (has("dim")) {
        const DimBound b = dim_rows(ctx, rows);
        write_json(dir / "dim.json", to_json(b));
        report["dim"] = to_json(b);
        out << "dim_bound = " << format_double(b.dim_bound) << '\n';
        out << "dim_bound_coarse = " << format_double(b.dim_bound_coarse) << '\n';
        if (!b.warning.empty()) out << "warning: " << b.warning << '\n';
    }
    report["checks"] = Json::array();
    for (const auto& r : rows) report["checks"].push_back(to_json(r));
    report["frame"] = frames;
    const bool ok = all_passed(rows);
    report["passed"] = ok;
    write_text(dir / "checks.csv", bound_checks_csv(rows));
    write_json(dir / "checks.json", report);

    const auto failed = std::count_if(rows.begin(), rows.end(), [](const BoundCheck& r) { return !r.passed; });
    out << rows.size() - static_cast<std::size_t>(failed) << '/' << rows.size() << " checks passed\n";
    for (const auto& r : rows)
        if (!r.passed)
            out << "FAILED " << r.name << " m=" << r.m << " lhs=" << format_double(r.lhs)
                << " rhs=" << format_double(r.rhs) << '\n';
    return ok ? kPass : kCheckFailed;
}

int cmd_report(const RunConfig& c, std::ostream& out) {
    const auto dir = prepare_out(c);
    Context ctx = make_context(c, !(c.eigenvalues && c.measure));
    const Spectrum s = spectrum_for(ctx);
    const bool stokes = is_stokes(c);
    const double coeff = stokes ? weyl_coefficient(2, s.measure) : laplace_weyl_coefficient(2, s.measure);
    const BoundParams params{2, s.measure, s.slack_fraction};
    const auto sums = stokes ? check_sum_bound(s.values, stokes_sum_bound, "stokes_sum", params)
                             : check_sum_bound(s.values, li_yau_sum_bound, "li_yau", params);

    std::string text = constants_comment();
    text += "k,lambda_k,weyl_ratio,liyau_margin\n";
    for (std::size_t k = 0; k < s.values.size(); ++k) {
        const double index = static_cast<double>(k + 1);
        text += std::to_string(k + 1) + ',' + format_double(s.values[k]) + ',' +
                format_double(s.values[k] / (coeff * index)) + ',' + format_double(sums[k].margin) + '\n';
    }
    write_text(dir / "report.csv", text);

    if (c.refinement.size() >= 3 && ctx.domain) {
        Json r;
        r["operator"] = c.operator_name;
        r["grids"] = c.refinement;
        std::vector<double> values;
        for (const int nx : c.refinement) {
            const DomainPtr d = build_domain(c.domain, nx);
            values.push_back(stokes ? solve_stokes(d, 1, ctx.solve).eigenvalues.front()
                                    : solve_laplacian(d, 1, ctx.solve).eigenvalues.front());
        }
        r["lambda1"] = values;
        const Extrapolation e = richardson(std::span<const double>(values).last(3));
        r["extrapolated"] = e.value;
        r["error_estimate"] = e.error_estimate;
        r["observed_order"] = e.observed_order;
        r["constants"] = constants_json();
        write_json(dir / "refinement.json", r);
    }
    out << "wrote " << s.values.size() << " rows to " << (dir / "report.csv").string() << '\n';
    return kPass;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stokes and Dirichlet-Laplacian eigenvalues with executable spectral inequalities"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> checks;
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : {std::pair{"solve", "compute eigenpairs and write spectrum and field blobs"},
                                     std::pair{"check", "evaluate the selected inequalities"},
                                     std::pair{"report", "write plot-ready Weyl and Li-Yau tables"}}) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed, "solver and sampling seed (overrides config)");
        sub->add_option("--checks", checks, "comma-separated subset of bounds,frame,lt,dim or all")->delimiter(',');
        subs.push_back(sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    try {
        RunConfig config = load_config(config_path);
        if (!out_dir.empty()) config.out = out_dir;
        if (seed) config.seed = *seed;
        if (!checks.empty()) config.checks = parse_checks(checks);
        if (subs[0]->parsed()) return cmd_solve(config, out);
        if (subs[1]->parsed()) return cmd_check(config, out);
        return cmd_report(config, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const NonConvergence& e) {
        err << "solver did not converge: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const SolverError& e) {
        err << "solver failure: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace stokes::cli
