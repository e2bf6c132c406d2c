// Configuration-driven experiment runner.
//
//   squeezing_cli [--config PATH] [--out DIR] [--seed INT] [--samples INT] [--experiment NAME] [SUBCOMMAND]
//
// Subcommands: profile | classify | floor | scale | limits | wbscan | convergence.
// Experiments: example11 | lemma22-limits | scaling-demo.
// Exit status: 0 ok, 2 invalid configuration, 3 numerical failure.

#include "squeezing.hpp"

#include <CLI11.hpp>
#include <boost/version.hpp>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace squeezing;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kSchema = 2, kNumerical = 3 };

struct SchemaError : ValidationError {
    using ValidationError::ValidationError;
};

const std::vector<std::string> kCommands{"profile", "classify", "floor", "scale", "limits", "wbscan", "convergence"};
const std::vector<std::string> kExperiments{"example11", "lemma22-limits", "scaling-demo"};

// --- schema -------------------------------------------------------------------

enum class Kind { Number, Integer, String, Bool, Array, Object, DomainSpec, Point, NumberOrArray };

struct KeySpec {
    Kind kind;
    std::vector<std::string> commands;  ///< empty: every command
};

const std::map<std::string, KeySpec>& schema() {
    static const std::map<std::string, KeySpec> s{
        {"command", {Kind::String, {}}},
        {"experiment", {Kind::String, {}}},
        {"out", {Kind::String, {}}},
        {"seed", {Kind::Integer, {}}},
        {"samples", {Kind::Integer, {}}},
        {"domain", {Kind::DomainSpec, {"profile", "classify", "floor", "wbscan", "convergence", "example11"}}},
        {"s", {Kind::NumberOrArray, {"profile", "classify", "floor", "convergence", "example11"}}},
        {"r", {Kind::NumberOrArray, {"floor"}}},
        {"sequence", {Kind::String, {"profile", "classify"}}},
        {"indices", {Kind::Array, {"profile", "classify", "convergence", "example11"}}},
        {"terms", {Kind::Array, {"profile", "classify"}}},
        {"direction", {Kind::Point, {"profile", "classify"}}},
        {"cone_ratio", {Kind::Number, {"profile", "classify"}}},
        {"thresholds", {Kind::Object, {"classify"}}},
        {"boundary_samples", {Kind::Integer, {"profile", "floor", "example11"}}},
        {"floor_r", {Kind::Number, {"profile"}}},
        {"grid_count", {Kind::Integer, {"profile", "floor"}}},
        {"analytic", {Kind::Bool, {"floor"}}},
        {"count", {Kind::Integer, {"wbscan"}}},
        {"tube", {Kind::Number, {"wbscan"}}},
        {"function", {Kind::DomainSpec, {"scale"}}},
        {"reference", {Kind::DomainSpec, {"scale"}}},
        {"base", {Kind::Point, {"scale"}}},
        {"deltas", {Kind::Array, {"scale"}}},
        {"m", {Kind::Integer, {"scale"}}},
        {"starts", {Kind::Integer, {"scale"}}},
        {"b", {Kind::Number, {"limits"}}},
        {"kmax", {Kind::Integer, {"limits"}}},
        {"cloud", {Kind::Object, {"convergence"}}},
        {"margin", {Kind::Number, {"convergence"}}},
        {"eps", {Kind::Number, {"convergence"}}},
        {"u_radius", {Kind::Number, {"convergence"}}},
        {"a_grid", {Kind::Array, {"convergence"}}},
        {"exhaustion_count", {Kind::Integer, {"convergence"}}},
    };
    return s;
}

bool kind_ok(const json& v, Kind k) {
    switch (k) {
        case Kind::Number: return v.is_number();
        case Kind::Integer: return v.is_number_integer();
        case Kind::String: return v.is_string();
        case Kind::Bool: return v.is_boolean();
        case Kind::Array: return v.is_array();
        case Kind::Object: return v.is_object();
        case Kind::DomainSpec: return v.is_object() || v.is_string();
        case Kind::Point: return v.is_array();
        case Kind::NumberOrArray: return v.is_number() || v.is_array();
    }
    return false;
}

void validate(const json& cfg, const std::string& target) {
    if (!cfg.is_object()) throw SchemaError("config: top level must be an object");
    for (const auto& item : cfg.items()) {
        const auto it = schema().find(item.key());
        if (it == schema().end()) throw SchemaError("config: unknown key '" + item.key() + "'");
        const auto& spec = it->second;
        if (!spec.commands.empty() &&
            std::find(spec.commands.begin(), spec.commands.end(), target) == spec.commands.end()) {
            throw SchemaError("config: key '" + item.key() + "' does not apply to '" + target + "'");
        }
        if (!kind_ok(item.value(), spec.kind)) throw SchemaError("config: key '" + item.key() + "' has the wrong type");
    }
    if (cfg.contains("seed") && cfg["seed"].get<long long>() < 0) throw SchemaError("config: seed must be >= 0");
    if (cfg.contains("samples") && cfg["samples"].get<long long>() < 1) throw SchemaError("config: samples must be >= 1");
    if (cfg.contains("thresholds")) {
        detail::check_keys(cfg["thresholds"], {"tail_fraction", "tangential_tol", "nontangential_margin"}, "thresholds");
        for (const auto& item : cfg["thresholds"].items()) {
            if (!item.value().is_number()) throw SchemaError("thresholds: '" + item.key() + "' must be a number");
        }
    }
    if (cfg.contains("cloud")) {
        detail::check_keys(cfg["cloud"], {"center", "radius", "count", "seed"}, "cloud");
    }
}

// --- config access -------------------------------------------------------------

struct Context {
    json cfg;
    fs::path base_dir;
    fs::path out_dir;
    std::string target;  ///< command or experiment name
    json seeds = json::object();
    json tolerances = json::object();
    json summary = json::object();
    json outputs = json::array();
    std::vector<std::string> warnings;
};

double num(const Context& c, const char* key, double dflt) { return c.cfg.contains(key) ? c.cfg[key].get<double>() : dflt; }

long long integer(const Context& c, const char* key, long long dflt) {
    return c.cfg.contains(key) ? c.cfg[key].get<long long>() : dflt;
}

std::size_t count_of(const Context& c, const char* key, std::size_t dflt) {
    const long long v = integer(c, key, static_cast<long long>(dflt));
    if (v < 1) throw SchemaError(std::string("config: '") + key + "' must be >= 1");
    return static_cast<std::size_t>(v);
}

std::vector<double> numbers(const Context& c, const char* key, std::vector<double> dflt) {
    if (!c.cfg.contains(key)) return dflt;
    const json& v = c.cfg[key];
    if (v.is_number()) return {v.get<double>()};
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw SchemaError(std::string("config: '") + key + "' entries must be numbers");
        out.push_back(e.get<double>());
    }
    if (out.empty()) throw SchemaError(std::string("config: '") + key + "' is empty");
    return out;
}

std::vector<long long> indices(const Context& c, std::vector<long long> dflt) {
    if (!c.cfg.contains("indices")) return dflt;
    std::vector<long long> out;
    for (const auto& e : c.cfg["indices"]) {
        if (!e.is_number_integer()) throw SchemaError("config: 'indices' entries must be integers");
        out.push_back(e.get<long long>());
    }
    if (out.empty()) throw SchemaError("config: 'indices' is empty");
    return out;
}

json resolve_spec(const Context& c, const char* key) {
    const json& v = c.cfg[key];
    if (v.is_object()) return v;
    fs::path p(v.get<std::string>());
    if (p.is_relative()) p = c.base_dir / p;
    return load_json_file(p.string());
}

Ellipsoid load_domain(Context& c) {
    const json spec = c.cfg.contains("domain") ? resolve_spec(c, "domain") : polynomial_to_json(e12().polynomial());
    Ellipsoid D(polynomial_from_json(spec));
    c.summary["domain"] = spec;
    const auto wb = wb_scan(D, 2000, 99);
    c.summary["wb_scan"] = {{"min_levi", wb.min_levi}, {"pass", wb.pass}, {"samples", wb.used}, {"tube", wb.tube}};
    if (!wb.pass) c.warnings.push_back("domain fails the WB scan; results assume strong pseudoconvexity off the circle");
    return D;
}

void emit(Context& c, const std::string& name, const Table& t) {
    write_csv_file((c.out_dir / name).string(), t);
    c.outputs.push_back(name);
}

SqueezeOptions squeeze_options(Context& c, std::size_t samples, std::uint64_t seed) {
    SqueezeOptions opt;
    opt.samples = count_of(c, "samples", samples);
    opt.seed = static_cast<std::uint64_t>(integer(c, "seed", static_cast<long long>(seed)));
    opt.boundary_samples = count_of(c, "boundary_samples", opt.boundary_samples);
    c.seeds["directions"] = opt.seed;
    c.seeds["boundary"] = opt.boundary_seed;
    c.tolerances["radius_margin"] = opt.radius_margin;
    c.tolerances["saturation"] = opt.saturation;
    c.tolerances["root_bits"] = 44;
    return opt;
}

template <class Real>
ApproachSequence<Real> build_sequence(Context& c, const GeneralEllipsoid<Real>& D, const Real& s,
                                      std::vector<long long> dflt) {
    const std::string kind_name = c.cfg.value("sequence", std::string("example11"));
    const SequenceKind kind = sequence_kind_from_string(kind_name);
    c.summary["sequence"] = kind_name;
    if (kind == SequenceKind::Custom) {
        if (!c.cfg.contains("terms")) throw SchemaError("config: custom sequences need 'terms'");
        std::vector<cvector<Real>> terms;
        for (std::size_t i = 0; i < c.cfg["terms"].size(); ++i) {
            terms.push_back(detail::cast_vector<Real, double>(point_from_json(c.cfg["terms"][i], "terms")));
        }
        return make_custom(D, std::move(terms));
    }
    SequenceOptions<Real> opt;
    opt.s = s;
    opt.cone_ratio = Real(num(c, "cone_ratio", 0.5));
    if (c.cfg.contains("direction")) opt.direction = detail::cast_vector<Real, double>(point_from_json(c.cfg["direction"], "direction"));
    return generate(D, kind, indices(c, std::move(dflt)), opt);
}

// --- commands -------------------------------------------------------------------

void run_profile(Context& c) {
    const Ellipsoid D = load_domain(c);
    const double s = numbers(c, "s", {0.5}).front();
    const auto seq = build_sequence(c, D.cast<quad>(), quad(s), {10, 100, 1000, 10000});
    SqueezeEstimator est(D, squeeze_options(c, 20000, 1));
    std::vector<cvec> terms;
    for (const auto& t : seq.terms) terms.push_back(detail::cast_vector<double, quad>(t));
    const auto res = squeeze_profile(est, terms);
    double floor = std::numeric_limits<double>::quiet_NaN();
    if (c.cfg.contains("floor_r")) {
        const std::size_t grid = count_of(c, "grid_count", 200);
        floor = gamma_floor(est, s, num(c, "floor_r", 0.5), grid, est.options().seed).floor;
        c.summary["floor"] = {{"s", s}, {"r", num(c, "floor_r", 0.5)}, {"grid_count", grid}, {"value", floor}};
    }
    emit(c, "profile.csv", squeeze_table(seq.indices, res, floor));
    bool monotone = true;
    json vals = json::array();
    for (std::size_t i = 0; i < res.size(); ++i) {
        vals.push_back(res[i].value);
        if (i && res[i].value < res[i - 1].value) monotone = false;
        std::cout << "  j=" << seq.indices[i] << "  sigma_hat=" << format_double(res[i].value) << "  "
                  << res[i].descriptor() << "\n";
    }
    c.summary["sigma_hat"] = vals;
    c.summary["non_decreasing"] = monotone;
}

void run_classify(Context& c) {
    const Ellipsoid D = load_domain(c);
    const auto Dq = D.cast<quad>();
    ClassificationThresholds th;
    if (c.cfg.contains("thresholds")) {
        const json& t = c.cfg["thresholds"];
        th.tail_fraction = t.value("tail_fraction", th.tail_fraction);
        th.tangential_tol = t.value("tangential_tol", th.tangential_tol);
        th.nontangential_margin = t.value("nontangential_margin", th.nontangential_margin);
    }
    c.tolerances["tail_fraction"] = th.tail_fraction;
    c.tolerances["tangential_tol"] = th.tangential_tol;
    c.tolerances["nontangential_margin"] = th.nontangential_margin;
    const auto svals = numbers(c, "s", {0.5});
    json verdicts = json::array();
    for (std::size_t k = 0; k < svals.size(); ++k) {
        const quad s(svals[k]);
        const auto seq = build_sequence(c, Dq, s, log_spaced(1, 1000000, 2));
        const auto rec = classify(Dq, s, seq, th);
        const std::string name = svals.size() == 1 ? "classify.csv" : "classify_" + std::to_string(k) + ".csv";
        emit(c, name, classify_table(Dq, s, seq, rec));
        verdicts.push_back({{"s", svals[k]}, {"verdict", to_string(rec.verdict)}, {"tail_min_r", rec.tail_min_r},
                            {"tail_max_r", rec.tail_max_r}, {"file", name}});
        std::cout << "  s=" << format_double(svals[k]) << "  verdict=" << to_string(rec.verdict)
                  << "  tail r* in [" << format_double(rec.tail_min_r) << ", " << format_double(rec.tail_max_r) << "]\n";
    }
    c.summary["verdicts"] = verdicts;
}

void run_floor(Context& c) {
    const Ellipsoid D = load_domain(c);
    const double s = numbers(c, "s", {0.5}).front();
    const auto rs = numbers(c, "r", {0.5});
    const std::size_t grid = count_of(c, "grid_count", 200);
    SqueezeEstimator est(D, squeeze_options(c, 2000, 7));
    const bool analytic = c.cfg.value("analytic", false);
    Table summary;
    summary.columns = {"s", "r", "floor", "points", "seed"};
    const auto ac = coordinate_columns(D.dim(), "argmin");
    summary.columns.insert(summary.columns.end(), ac.begin(), ac.end());
    summary.columns.emplace_back("analytic_floor");
    json floors = json::array();
    for (std::size_t k = 0; k < rs.size(); ++k) {
        const auto rep = gamma_floor(est, s, rs[k], grid, est.options().seed);
        const double af = analytic ? analytic_floor(D, rs[k]).value : std::numeric_limits<double>::quiet_NaN();
        std::vector<Cell> row{s, rs[k], rep.floor, static_cast<long long>(rep.points), static_cast<long long>(rep.seed)};
        push_coordinates(row, rep.argmin);
        row.emplace_back(af);
        summary.add(std::move(row));
        emit(c, "floor_grid_" + std::to_string(k) + ".csv", floor_table(rep));
        floors.push_back({{"r", rs[k]}, {"floor", rep.floor}, {"analytic_floor", af}});
        std::cout << "  s=" << format_double(s) << "  r=" << format_double(rs[k]) << "  floor=" << format_double(rep.floor)
                  << "  (" << rep.points << " points, lower bound at each point)\n";
    }
    emit(c, "floor.csv", summary);
    c.summary["floors"] = floors;
}

void run_scale(Context& c, bool demo) {
    const DefiningFunctionPoly rho =
        c.cfg.contains("function") ? defining_function_from_json(resolve_spec(c, "function")) : graph_model_e12();
    std::optional<DefiningFunctionPoly> ref;
    if (c.cfg.contains("reference")) ref = defining_function_from_json(resolve_spec(c, "reference"));
    else if (demo || !c.cfg.contains("function")) ref = graph_model_limit();
    const cvec xi0 = c.cfg.contains("base") ? point_from_json(c.cfg["base"], "base") : cvec(rho.dim(), cplx(0.0));
    if (xi0.size() != rho.dim()) throw SchemaError("config: 'base' has wrong dimension");
    const auto deltas = numbers(c, "deltas", {1e-1, 1e-2, 1e-3, 1e-4});
    FrameOptions fo;
    fo.seed = static_cast<std::uint64_t>(integer(c, "seed", static_cast<long long>(fo.seed)));
    fo.starts = count_of(c, "starts", fo.starts);
    c.seeds["frame"] = fo.seed;
    c.tolerances["frame_tol"] = fo.tol;
    c.tolerances["tau_rel_tol"] = fo.tau.rel_tol;
    c.tolerances["cauchy_tol"] = 1e-6;
    c.tolerances["psd_tol"] = 1e-8;
    const int m = static_cast<int>(integer(c, "m", 0));
    const auto res = scaling_demo(rho, xi0, deltas, fo, m, ref ? &*ref : nullptr);
    emit(c, "scale_frames.csv", scaling_frames_table(res));
    emit(c, "scale_diagnostics.csv", scaling_diagnostics_table(res.limit));
    {
        std::ofstream out(c.out_dir / "scale_limit.json");
        out << defining_function_to_json(res.limit.limit).dump(2) << "\n";
        c.outputs.push_back("scale_limit.json");
    }
    std::vector<cvec> etas;
    std::vector<double> epss;
    for (const auto& f : res.frames) {
        etas.push_back(f.eta);
        epss.push_back(f.eps);
    }
    const auto band = check_tau_normal(rho, etas, epss, fo.tau);
    c.summary["tau_normal_over_eps"] = {{"min", band.min_ratio}, {"max", band.max_ratio}, {"within_factor_2", band.pass}};
    c.summary["limit"] = {{"converged", res.limit.converged}, {"max_last_delta", res.limit.max_last_delta},
                          {"min_levi", res.limit.min_levi}, {"psd", res.limit.psd}, {"degree", res.limit.degree}};
    if (!res.deviation.empty()) {
        c.summary["max_reference_deviation"] = *std::max_element(res.deviation.begin(), res.deviation.end());
    }
    std::cout << "  frames=" << res.frames.size() << "  converged=" << res.limit.converged
              << "  max Cauchy delta=" << format_double(res.limit.max_last_delta) << "  psd=" << res.limit.psd << "\n";
    if (!res.deviation.empty()) {
        std::cout << "  max deviation from reference=" << format_double(c.summary["max_reference_deviation"].get<double>())
                  << "\n";
    }
}

void run_limits(Context& c) {
    const double b = num(c, "b", 0.5);
    const int kmax = static_cast<int>(integer(c, "kmax", 30));
    const Table t = lemma22_limits(b, kmax);
    emit(c, "limits.csv", t);
    const auto& last = t.rows.back();
    const double d = std::max({std::abs(std::get<double>(last[2])), std::abs(std::get<double>(last[3]) - 1.0),
                               std::abs(std::get<double>(last[4]) - 1.0)});
    c.summary["b"] = b;
    c.summary["kmax"] = kmax;
    c.summary["distance_to_limit_at_kmax"] = d;
    std::cout << "  b=" << format_double(b) << "  k=" << kmax << "  max |(c1,c2,c3) - (0,1,1)|=" << format_double(d) << "\n";
}

void run_wbscan(Context& c) {
    const Ellipsoid D = load_domain(c);
    const std::size_t count = count_of(c, "count", count_of(c, "samples", 10000));
    const auto seed = static_cast<std::uint64_t>(integer(c, "seed", 3));
    const double tube = num(c, "tube", 1e-2);
    c.seeds["boundary"] = seed;
    c.tolerances["tube"] = tube;
    emit(c, "wbscan.csv", wbscan_table(D, count, seed, tube));
    const auto rep = wb_scan(D, count, seed, tube);
    c.summary["scan"] = {{"min_levi", rep.min_levi}, {"used", rep.used}, {"excluded", rep.excluded}, {"pass", rep.pass}};
    std::cout << "  min Levi eigenvalue=" << format_double(rep.min_levi) << " over " << rep.used << " samples ("
              << rep.excluded << " in the tube)  pass=" << rep.pass << "\n";
}

void run_convergence(Context& c) {
    const Ellipsoid D = load_domain(c);
    const double s = numbers(c, "s", {0.5}).front();
    std::vector<long long> idx(63);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<long long>(i) + 2;
    idx = indices(c, idx);
    const json cloud = c.cfg.value("cloud", json::object());
    const cvec center = cloud.contains("center") ? point_from_json(cloud["center"], "cloud.center") : cvec(D.dim(), cplx(0.0));
    const double radius = cloud.value("radius", 0.5);
    const std::size_t count = cloud.contains("count") ? cloud["count"].get<std::size_t>() : count_of(c, "samples", 500);
    const auto seed = static_cast<std::uint64_t>(cloud.value("seed", integer(c, "seed", 5)));
    const double margin = num(c, "margin", 1e-3);
    c.seeds["cloud"] = seed;
    c.tolerances["margin"] = margin;

    const double R = bounding_radius(D, 4000, seed);
    std::vector<DomainOracle> seq;
    std::vector<double> avals;
    for (long long i : idx) {
        if (i < 2) throw SchemaError("config: convergence indices start at 2 (a_i = 1 - 1/i)");
        avals.push_back(1.0 - 1.0 / static_cast<double>(i));
        seq.push_back(pullback_oracle(D, s, avals.back(), R));
    }
    const auto K = ball_cloud(center, radius, count, seed);
    const auto rep = check_convergence(seq, ellipsoid_oracle(D, R), K, margin);

    std::vector<double> grid;
    if (c.cfg.contains("a_grid")) grid = numbers(c, "a_grid", {});
    else for (int k = 1; k <= 20; ++k) grid.push_back(1.0 - std::ldexp(1.0, -k));
    const double eps = num(c, "eps", 0.4), ur = num(c, "u_radius", 0.5);
    const auto ex = lemma22_exhaustion_check(D, s, grid, eps, ur, count_of(c, "exhaustion_count", 2000), seed);
    c.tolerances["exhaustion_eps"] = eps;
    c.tolerances["u_radius"] = ur;
    c.tolerances["boundary_slack"] = 1e-9;
    emit(c, "convergence.csv", convergence_table(idx, avals, seq, K, rep, &ex));
    c.summary["condition_i"] = {{"pass", rep.condition_i.pass}, {"i0", rep.condition_i.pass ? idx[rep.condition_i.i0 - 1] : 0}};
    c.summary["condition_ii"] = {{"pass", rep.condition_ii.pass}, {"vacuous", rep.condition_ii.vacuous}};
    c.summary["exhaustion"] = {{"first_index", ex.first_index ? json(*ex.first_index) : json(nullptr)},
                               {"persists", ex.persists}, {"cloud", ex.cloud}, {"excluded", ex.excluded}};
    std::cout << "  condition (i): " << (rep.condition_i.pass ? "pass from i0=" + std::to_string(idx[rep.condition_i.i0 - 1]) : "fail")
              << "  condition (ii): " << (rep.condition_ii.vacuous ? "vacuous" : rep.condition_ii.pass ? "pass" : "fail")
              << "  (" << K.size() << " cloud points, " << seq.size() << " indices)\n";
    if (ex.first_index) {
        std::cout << "  exhaustion inclusion from a=" << format_double(ex.rows[*ex.first_index].a)
                  << (ex.persists ? " onward" : " (not persistent)") << "\n";
    } else {
        std::cout << "  exhaustion inclusion not reached on the a-grid\n";
    }
}

void run_example11(Context& c) {
    const Ellipsoid D = load_domain(c);
    const double s = numbers(c, "s", {0.5}).front();
    const auto ns = indices(c, {10, 100, 1000, 10000});
    const auto res = example11(D, ns, s, squeeze_options(c, 20000, 1));
    emit(c, "example11.csv", res.table);
    bool monotone = true;
    for (std::size_t i = 1; i < res.estimates.size(); ++i) monotone = monotone && res.estimates[i].value >= res.estimates[i - 1].value;
    c.summary["non_decreasing"] = monotone;
    for (const auto& row : res.table.rows) {
        std::cout << "  n=" << std::get<long long>(row[0]) << "  rho=" << format_double(std::get<double>(row[1]))
                  << "  r*=" << format_double(std::get<double>(row[2])) << "  P(b')=" << format_double(std::get<double>(row[3]))
                  << "  sigma_hat>=" << format_double(std::get<double>(row[4])) << "\n";
    }
}

void write_manifest(const Context& c) {
    json m;
    m["tool"] = "squeezing_cli";
    m["version"] = kVersion;
    m["target"] = c.target;
    m["config"] = c.cfg;
    m["seeds"] = c.seeds;
    m["tolerances"] = c.tolerances;
    m["summary"] = c.summary;
    m["outputs"] = c.outputs;
    m["warnings"] = c.warnings;
    m["libraries"] = {{"boost", BOOST_LIB_VERSION},
                      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                    std::to_string(EIGEN_MINOR_VERSION)},
                      {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                            std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                            std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                      {"cli11", CLI11_VERSION}};
    m["float_format"] = "%.17g";
    std::ofstream out(c.out_dir / "manifest.json");
    out << m.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Squeezing-function experiments on generalized complex ellipsoids"};
    std::string config_path, out_dir, experiment;
    std::optional<long long> seed, samples;
    app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (default: out)");
    app.add_option("--seed", seed, "seed override");
    app.add_option("--samples", samples, "sample-count override");
    app.add_option("--experiment", experiment, "named experiment")->check(CLI::IsMember(kExperiments));
    app.require_subcommand(0, 1);
    for (const auto& name : kCommands) app.add_subcommand(name, "run the " + name + " module");
    CLI11_PARSE(app, argc, argv);

    Context c;
    try {
        c.cfg = config_path.empty() ? json::object() : load_json_file(config_path);
        if (!c.cfg.is_object()) throw SchemaError("config: top level must be an object");
        c.base_dir = config_path.empty() ? fs::current_path() : fs::absolute(config_path).parent_path();

        std::string command = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
        if (command.empty() && c.cfg.contains("command") && c.cfg["command"].is_string()) command = c.cfg["command"];
        if (experiment.empty() && c.cfg.contains("experiment") && c.cfg["experiment"].is_string()) experiment = c.cfg["experiment"];
        if (!experiment.empty() &&
            std::find(kExperiments.begin(), kExperiments.end(), experiment) == kExperiments.end()) {
            throw SchemaError("unknown experiment '" + experiment + "'");
        }
        if (!command.empty() && std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
            throw SchemaError("unknown command '" + command + "'");
        }
        const std::map<std::string, std::string> implied{
            {"example11", "example11"}, {"lemma22-limits", "limits"}, {"scaling-demo", "scale"}};
        std::string target = command;
        if (!experiment.empty()) {
            const std::string want = implied.at(experiment);
            if (!command.empty() && command != want && !(experiment == "example11" && command == "profile")) {
                throw SchemaError("experiment '" + experiment + "' conflicts with command '" + command + "'");
            }
            target = want;
        }
        if (target.empty()) throw SchemaError("nothing to run: give a subcommand or --experiment");
        c.target = experiment.empty() ? target : experiment;

        if (seed) c.cfg["seed"] = *seed;
        if (samples) c.cfg["samples"] = *samples;
        if (!out_dir.empty()) c.cfg["out"] = out_dir;
        validate(c.cfg, target);
        c.out_dir = c.cfg.value("out", std::string("out"));
        if (c.out_dir.is_relative() && !config_path.empty() && out_dir.empty()) c.out_dir = c.base_dir / c.out_dir;
        fs::create_directories(c.out_dir);

        std::cout << c.target << ":\n";
        if (target == "profile") run_profile(c);
        else if (target == "classify") run_classify(c);
        else if (target == "floor") run_floor(c);
        else if (target == "scale") run_scale(c, experiment == "scaling-demo");
        else if (target == "limits") run_limits(c);
        else if (target == "wbscan") run_wbscan(c);
        else if (target == "convergence") run_convergence(c);
        else if (target == "example11") run_example11(c);
        for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";
        write_manifest(c);
        std::cout << "wrote " << c.outputs.size() << " file(s) and manifest.json to " << c.out_dir.string() << "\n";
    } catch (const ValidationError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kSchema;
    } catch (const ParameterError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kSchema;
    } catch (const json::exception& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kSchema;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure in " << c.target << ": " << e.what() << "\n";
        return kNumerical;
    } catch (const DomainError& e) {
        std::cerr << "numerical failure in " << c.target << ": " << e.what() << "\n";
        return kNumerical;
    }
    return kOk;
}
