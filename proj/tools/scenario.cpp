#include "scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

#include "parcav/concavity.hpp"
#include "parcav/energy.hpp"
#include "parcav/exponents.hpp"
#include "parcav/solver.hpp"

namespace parcav::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

json exponent_to_json(Exponent e) {
    if (e.is_pos_inf()) return "inf";
    if (e.is_neg_inf()) return "-inf";
    return e.value();
}

Exponent exponent_from_json(const json& j, const char* what) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return Exponent::pos_inf();
        if (s == "-inf") return Exponent::neg_inf();
        throw std::invalid_argument(std::string(what) + ": unknown exponent string '" + s + "'");
    }
    if (!j.is_number()) throw std::invalid_argument(std::string(what) + ": expected a number");
    return Exponent(j.get<double>());
}

template <typename T>
T field_or(const json& j, const char* key, T def) {
    auto it = j.find(key);
    return it == j.end() ? def : it->get<T>();
}

ConvexDomain domain_from_json(const json& j) {
    const std::string shape = j.at("shape").get<std::string>();
    if (shape == "interval") return ConvexDomain::interval(j.at("a"), j.at("b"));
    if (shape == "disk") {
        const auto c = j.at("center");
        return ConvexDomain::disk(Pt{c.at(0), c.at(1)}, j.at("radius"));
    }
    if (shape == "polygon") {
        std::vector<Pt> vs;
        for (const auto& v : j.at("vertices")) vs.push_back(Pt{v.at(0), v.at(1)});
        return ConvexDomain::polygon(std::move(vs));
    }
    throw std::invalid_argument("domain: unknown shape '" + shape + "'");
}

json domain_to_json(const ConvexDomain& d) {
    json j;
    switch (d.shape()) {
    case ConvexDomain::Shape::interval:
        j["shape"] = "interval";
        j["a"] = d.a();
        j["b"] = d.b();
        break;
    case ConvexDomain::Shape::disk:
        j["shape"] = "disk";
        j["center"] = {d.center().x, d.center().y};
        j["radius"] = d.radius();
        break;
    case ConvexDomain::Shape::polygon: {
        j["shape"] = "polygon";
        json vs = json::array();
        for (const Pt& v : d.vertices()) vs.push_back({v.x, v.y});
        j["vertices"] = vs;
        break;
    }
    }
    return j;
}

SourceSpec source_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return SourceSpec::constant(j.at("c"));
    if (kind == "dist_power")
        return SourceSpec::dist_power(j.at("d"), field_or(j, "gamma", 0.0));
    if (kind == "time_weighted") {
        const json& pj = j.at("profile");
        const std::string pk = pj.at("kind").get<std::string>();
        SpatialProfile prof = SpatialProfile::constant(1.0);
        if (pk == "constant")
            prof = SpatialProfile::constant(pj.at("c"));
        else if (pk == "dist_power")
            prof = SpatialProfile::dist_power(pj.at("d"));
        else
            throw std::invalid_argument("source profile: unknown kind '" + pk + "'");
        return SourceSpec::time_weighted(j.at("gamma"), prof);
    }
    if (kind == "semilinear_power") return SourceSpec::semilinear_power(j.at("gamma"));
    if (kind == "semilinear_regularized")
        return SourceSpec::semilinear_regularized(j.at("gamma"), j.at("eps"));
    throw std::invalid_argument("source: unknown kind '" + kind + "'");
}

json source_to_json(const SourceSpec& s) {
    json j;
    j["kind"] = s.kind_name();
    switch (s.kind()) {
    case SourceSpec::Kind::constant:
        j["c"] = s.c();
        break;
    case SourceSpec::Kind::dist_power:
        j["d"] = s.d();
        j["gamma"] = s.gamma();
        break;
    case SourceSpec::Kind::time_weighted: {
        j["gamma"] = s.gamma();
        json pj;
        const SpatialProfile& p = s.profile();
        if (p.kind == SpatialProfile::Kind::constant) {
            pj["kind"] = "constant";
            pj["c"] = p.c;
        } else if (p.kind == SpatialProfile::Kind::dist_power) {
            pj["kind"] = "dist_power";
            pj["d"] = p.d;
        } else {
            throw std::invalid_argument("tabulated profiles have no config form");
        }
        j["profile"] = pj;
        break;
    }
    case SourceSpec::Kind::semilinear_power:
        j["gamma"] = s.gamma();
        break;
    case SourceSpec::Kind::semilinear_regularized:
        j["gamma"] = s.gamma();
        j["eps"] = s.eps();
        break;
    case SourceSpec::Kind::tabulated:
        throw std::invalid_argument("tabulated sources have no config form");
    }
    return j;
}

CheckSpec check_from_json(const json& j) {
    static const std::set<std::string> known{"parabolic",  "spatial",   "envelope",
                                             "energy",     "structure", "boundary-exponent"};
    CheckSpec c;
    c.kind = j.at("kind").get<std::string>();
    if (!known.count(c.kind)) throw std::invalid_argument("check: unknown kind '" + c.kind + "'");
    c.sharpness = field_or(j, "sharpness", false);
    c.alpha = field_or(j, "alpha", 0.5);
    if (j.contains("p")) c.p = exponent_from_json(j.at("p"), "check p");
    if (j.contains("q")) c.p = exponent_from_json(j.at("q"), "check q");
    c.samples = field_or<std::size_t>(j, "samples", 4096);
    c.tolerance = field_or(j, "tolerance", 0.0);
    c.t_min = field_or(j, "t_min", 0.0);
    c.t = field_or(j, "t", -1.0);
    c.m = field_or(j, "m", 1.0);
    c.max_relative_gap = field_or(j, "max_relative_gap", 0.02);
    c.weights = field_or(j, "weights", std::vector<double>{});
    if (j.contains("x")) {
        const json& x = j.at("x");
        c.x = x.is_array() ? Pt{x.at(0), x.at(1)} : Pt{x.get<double>(), 0.0};
    }
    if (j.contains("toward")) {
        const json& x = j.at("toward");
        c.toward = x.is_array() ? Pt{x.at(0), x.at(1)} : Pt{x.get<double>(), 0.0};
    }
    c.expected = field_or(j, "expected", 0.0);
    c.expected_tol = field_or(j, "expected_tol", 0.0);
    c.has_at_least = j.contains("at_least");
    if (c.has_at_least) c.at_least = j.at("at_least").get<double>();
    return c;
}

json check_to_json(const CheckSpec& c) {
    json j;
    j["kind"] = c.kind;
    j["sharpness"] = c.sharpness;
    if (c.kind == "parabolic" || c.kind == "spatial") {
        j["alpha"] = c.alpha;
        j["p"] = exponent_to_json(c.p);
        j["samples"] = c.samples;
        j["tolerance"] = c.tolerance;
        j["t_min"] = c.t_min;
        if (c.kind == "spatial") j["t"] = c.t;
    } else if (c.kind == "envelope") {
        j["alpha"] = c.alpha;
        j["p"] = exponent_to_json(c.p);
        j["max_relative_gap"] = c.max_relative_gap;
        if (!c.weights.empty()) j["weights"] = c.weights;
    } else if (c.kind == "energy") {
        j["alpha"] = c.alpha;
        j["q"] = exponent_to_json(c.p);
        j["m"] = c.m;
        j["tolerance"] = c.tolerance;
        j["t_min"] = c.t_min;
    } else if (c.kind == "structure") {
        j["alpha"] = c.alpha;
        j["p"] = exponent_to_json(c.p);
        j["samples"] = c.samples;
        j["tolerance"] = c.tolerance;
    } else if (c.kind == "boundary-exponent") {
        j["alpha"] = c.alpha;
        j["x"] = {c.x.x, c.x.y};
        j["toward"] = {c.toward.x, c.toward.y};
        j["expected"] = c.expected;
        j["expected_tol"] = c.expected_tol;
        if (c.has_at_least) j["at_least"] = c.at_least;
    } else {
        throw std::invalid_argument("check: unknown kind '" + c.kind + "'");
    }
    return j;
}

// spatial concavity exponent q of the source profile (dist^d is (1/d)-concave
// and no better; constants are +inf-concave); nullopt when outside the
// theory's q >= 1 range
std::optional<Exponent> source_integrability(const SourceSpec& s) {
    double d = 0.0;
    switch (s.kind()) {
    case SourceSpec::Kind::constant:
        return Exponent::pos_inf();
    case SourceSpec::Kind::dist_power:
        d = s.d();
        break;
    case SourceSpec::Kind::time_weighted:
        if (s.profile().kind == SpatialProfile::Kind::constant) return Exponent::pos_inf();
        if (s.profile().kind == SpatialProfile::Kind::dist_power)
            d = s.profile().d;
        else
            return std::nullopt;
        break;
    default:
        return std::nullopt; // semilinear / tabulated have no spatial q
    }
    if (d == 0.0) return Exponent::pos_inf();
    if (d > 1.0) return std::nullopt; // q = 1/d < 1
    return Exponent(1.0 / d);
}

// certified parabolic exponent of the scenario, when the theory covers it
std::optional<double> certified_exponent(const ScenarioConfig& cfg) {
    if (cfg.source.semilinear())
        return semilinear_exponents(cfg.source.gamma(), cfg.domain.dimension()).first;
    if (auto q = source_integrability(cfg.source)) {
        if (cfg.source.gamma() <= 0.5) return solution_exponent(*q, cfg.source.gamma());
    }
    return std::nullopt;
}

std::optional<double> certified_energy_exponent(const ScenarioConfig& cfg) {
    if (cfg.source.semilinear())
        return semilinear_exponents(cfg.source.gamma(), cfg.domain.dimension()).second;
    if (auto q = source_integrability(cfg.source)) {
        if (cfg.source.gamma() <= 0.5)
            return energy_exponent(*q, cfg.source.gamma(), cfg.domain.dimension());
    }
    return std::nullopt;
}

void validate_exponent_ranges(const ScenarioConfig& cfg) {
    for (const CheckSpec& c : cfg.checks) {
        if (c.sharpness) continue; // out-of-range on purpose
        if (c.kind == "parabolic") {
            if (auto pmax = certified_exponent(cfg)) {
                if (c.p.value() > *pmax + 1e-12)
                    throw std::invalid_argument(
                        "check '" + cfg.name + "/parabolic': p exceeds the certified exponent " +
                        std::to_string(*pmax) + "; flag it as a sharpness check");
            }
        } else if (c.kind == "energy" && c.alpha == 1.0) {
            if (auto qmax = certified_energy_exponent(cfg)) {
                if (c.p.value() > *qmax + 1e-12)
                    throw std::invalid_argument(
                        "check '" + cfg.name + "/energy': q exceeds the certified exponent " +
                        std::to_string(*qmax) + "; flag it as a sharpness check");
            }
        }
    }
}

json report_to_json(const ConcavityReport& r) { return json::parse(r.to_json()); }

} // namespace

ScenarioConfig parse_config(const json& j) {
    ScenarioConfig cfg;
    cfg.name = j.at("name").get<std::string>();
    cfg.domain = domain_from_json(j.at("domain"));
    cfg.source = source_from_json(j.at("source"));
    const json& g = j.at("grid");
    cfg.grid.h = g.at("h");
    cfg.grid.dt = g.at("dt");
    cfg.grid.T = g.at("T");
    if (!(cfg.grid.h > 0) || !(cfg.grid.dt > 0) || !(cfg.grid.T > 0))
        throw std::invalid_argument("grid: h, dt and T must be positive");
    cfg.grid.store_stride = field_or<std::size_t>(g, "store_stride", 1);
    if (cfg.grid.store_stride == 0) throw std::invalid_argument("grid: store_stride must be >= 1");
    cfg.grid.eps_sweep = field_or(g, "eps_sweep", std::vector<double>{});
    cfg.seed = field_or<std::uint64_t>(j, "seed", 0);
    cfg.output = field_or<std::string>(j, "output", "");
    for (const auto& cj : j.value("checks", json::array())) cfg.checks.push_back(check_from_json(cj));
    if (cfg.source.semilinear() && cfg.grid.eps_sweep.empty())
        throw std::invalid_argument("semilinear scenarios need grid.eps_sweep");
    validate_exponent_ranges(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config '" + path + "': " + e.what());
    }
    try {
        return parse_config(j);
    } catch (const json::exception& e) {
        throw std::runtime_error("config '" + path + "': " + e.what());
    }
}

json serialize_config(const ScenarioConfig& cfg) {
    json j;
    j["name"] = cfg.name;
    j["domain"] = domain_to_json(cfg.domain);
    j["source"] = source_to_json(cfg.source);
    json g;
    g["h"] = cfg.grid.h;
    g["dt"] = cfg.grid.dt;
    g["T"] = cfg.grid.T;
    g["store_stride"] = cfg.grid.store_stride;
    if (!cfg.grid.eps_sweep.empty()) g["eps_sweep"] = cfg.grid.eps_sweep;
    j["grid"] = g;
    j["seed"] = cfg.seed;
    j["output"] = cfg.output;
    json cs = json::array();
    for (const CheckSpec& c : cfg.checks) cs.push_back(check_to_json(c));
    j["checks"] = cs;
    return j;
}

json RunRecord::to_json(bool with_wall_time) const {
    json j;
    j["config"] = serialize_config(config);
    j["version"] = version;
    j["solve"] = solve_info;
    json rs = json::array();
    for (const CheckResult& r : results) {
        json e;
        e["check"] = check_to_json(r.spec);
        e["raw_pass"] = r.raw_pass;
        e["as_predicted"] = r.as_predicted;
        e["detail"] = r.detail;
        rs.push_back(e);
    }
    j["results"] = rs;
    j["overall_ok"] = overall_ok;
    if (with_wall_time) j["wall_time_s"] = wall_time_s;
    return j;
}

RunRecord run_scenario(const ScenarioConfig& cfg, double tolerance_scale) {
    if (!(tolerance_scale > 0)) throw std::invalid_argument("tolerance scale must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.config = cfg;
    rec.version = kVersion;

    // one solve per scenario
    std::optional<SpaceTimeField> field;
    json solve_info;
    if (cfg.source.semilinear()) {
        SemilinearResult sr =
            solve_semilinear_maximal(cfg.domain, cfg.source.gamma(), cfg.grid.h, cfg.grid.dt,
                                     cfg.grid.T, cfg.grid.eps_sweep, cfg.grid.store_stride);
        solve_info["eps_sequence"] = sr.eps_sequence;
        solve_info["cauchy_gap"] = sr.cauchy_gap;
        solve_info["worst_ordering_violation"] = sr.worst_ordering_violation;
        field.emplace(std::move(sr.field));
    } else {
        field.emplace(solve_parabolic(cfg.domain, cfg.source, cfg.grid.h, cfg.grid.dt,
                                      cfg.grid.T, cfg.grid.store_stride));
    }
    const SpaceTimeField& u = *field;
    solve_info["levels"] = u.level_count();
    solve_info["nodes"] = u.grid().node_count();
    solve_info["max_value"] = u.max_value();
    const MonotonicityReport mono = time_monotonicity_check(u);
    solve_info["time_nondecreasing"] = mono.pass;
    rec.solve_info = solve_info;

    std::vector<std::pair<std::size_t, std::string>> curves; // check index -> csv

    for (std::size_t ci = 0; ci < cfg.checks.size(); ++ci) {
        const CheckSpec& c = cfg.checks[ci];
        CheckResult res;
        res.spec = c;
        const double tol = (c.tolerance > 0 ? c.tolerance
                                            : certification_tolerance(u, c.alpha)) *
                           tolerance_scale;
        if (c.kind == "parabolic") {
            ConcavityQuery q;
            q.alpha = c.alpha;
            q.p = c.p;
            q.samples = c.samples;
            q.tolerance = tol;
            q.seed = cfg.seed;
            const double t_min = c.t_min > 0 ? c.t_min : 2 * cfg.grid.dt;
            ConcavityReport r = check_parabolic_concavity(u, q, t_min);
            res.raw_pass = r.pass;
            res.detail = report_to_json(r);
        } else if (c.kind == "spatial") {
            const double t = c.t >= 0 ? c.t : u.final_time();
            ConcavityReport r = check_spatial_concavity(u, t, c.p, c.samples, tol, cfg.seed);
            res.raw_pass = r.pass;
            res.detail = report_to_json(r);
        } else if (c.kind == "envelope") {
            EnvelopeResult env =
                c.weights.empty()
                    ? full_envelope(u, c.alpha, c.p.value())
                    : lambda_envelope(u, c.alpha, c.p.value(), WeightVector(c.weights));
            res.raw_pass = env.relative_gap <= c.max_relative_gap;
            res.detail = {{"max_gap", env.max_gap},
                          {"relative_gap", env.relative_gap},
                          {"gap_time", env.gap_time},
                          {"gap_x", env.gap_location.x},
                          {"gap_y", env.gap_location.y},
                          {"degenerate_hull", env.degenerate_hull},
                          {"support_points", env.support_points}};
        } else if (c.kind == "energy") {
            EnergyCurve curve = heat_energy(u, c.m);
            const double t_min = c.t_min > 0 ? c.t_min : 20 * cfg.grid.dt;
            ConcavityReport r = c.alpha == 1.0
                                    ? check_curve_concavity(curve, c.p, t_min, tol)
                                    : check_time_reparametrized(curve, c.alpha, c.p, t_min, tol);
            res.raw_pass = r.pass;
            res.detail = report_to_json(r);
            res.detail["final_value"] = curve.values.back();
            curves.emplace_back(ci, curve_to_csv(curve));
        } else if (c.kind == "structure") {
            StructureRegion region;
            region.dom = cfg.domain;
            const double stol = (c.tolerance > 0 ? c.tolerance : 1e-8) * tolerance_scale;
            ConcavityReport r = check_structure_condition(
                cfg.source, c.alpha, c.p.value(), c.samples, region, c.samples, stol, cfg.seed);
            res.detail = report_to_json(r);
            res.raw_pass = r.pass;
            if (auto q = source_integrability(cfg.source)) {
                const StructureBeta sb = structure_beta(c.p.value(), *q, cfg.source.gamma());
                res.detail["predicted"] = sb.concavity_valid;
                res.detail["inv_beta"] = sb.inv_beta;
                res.as_predicted = r.pass == sb.concavity_valid;
            } else {
                res.as_predicted = res.raw_pass != c.sharpness;
            }
            rec.results.push_back(std::move(res));
            continue;
        } else if (c.kind == "boundary-exponent") {
            const double s = boundary_scaling_exponent(u, c.x, c.toward, c.alpha);
            bool ok = true;
            if (c.expected_tol > 0) ok = std::abs(s - c.expected) <= c.expected_tol;
            if (c.has_at_least) ok = ok && s >= c.at_least;
            res.raw_pass = ok;
            res.detail = {{"fitted", s}, {"expected", c.expected}, {"band", c.expected_tol}};
            if (c.has_at_least) res.detail["at_least"] = c.at_least;
        } else {
            throw std::invalid_argument("check: unknown kind '" + c.kind + "'");
        }
        res.as_predicted = res.raw_pass != c.sharpness;
        rec.results.push_back(std::move(res));
    }

    rec.overall_ok = std::all_of(rec.results.begin(), rec.results.end(),
                                 [](const CheckResult& r) { return r.as_predicted; });
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!cfg.output.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.output);
        std::ofstream(fs::path(cfg.output) / "record.json") << rec.to_json().dump(2) << "\n";
        std::ofstream reports(fs::path(cfg.output) / "reports.jsonl");
        for (const CheckResult& r : rec.results) {
            json line = {{"kind", r.spec.kind},
                         {"as_predicted", r.as_predicted},
                         {"detail", r.detail}};
            reports << line.dump() << "\n";
        }
        for (const auto& [ci, csv] : curves) {
            std::ofstream(fs::path(cfg.output) / ("energy-" + std::to_string(ci) + ".csv"))
                << csv;
        }
    }
    return rec;
}

std::vector<SuiteEntry> run_suite(const std::string& dir, unsigned parallelism,
                                  double tolerance_scale) {
    namespace fs = std::filesystem;
    std::vector<std::string> paths;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw std::runtime_error("no scenario configs under '" + dir + "'");

    std::vector<SuiteEntry> entries(paths.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < paths.size(); i = next.fetch_add(1)) {
            SuiteEntry& e = entries[i];
            e.path = paths[i];
            try {
                const ScenarioConfig cfg = load_config(paths[i]);
                e.name = cfg.name;
                e.ok = run_scenario(cfg, tolerance_scale).overall_ok;
            } catch (const std::exception& ex) {
                e.ok = false;
                e.error = ex.what();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(parallelism, paths.size()));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i + 1 < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return entries;
}

} // namespace parcav::cli
