#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "parcav/domain.hpp"
#include "parcav/exponent.hpp"
#include "parcav/source.hpp"

namespace parcav::cli {

// One certification request inside a scenario.  Fields beyond (kind,
// sharpness) are read per kind; unread ones keep their defaults and are not
// serialized.  sharpness flips the expectation: the check must FAIL.
struct CheckSpec {
    std::string kind;       // parabolic | spatial | envelope | energy | structure | boundary-exponent
    bool sharpness = false;

    double alpha = 0.5;
    Exponent p = Exponent(0.5);      // concavity exponent (q for energy checks)
    std::size_t samples = 4096;
    double tolerance = 0.0;          // 0: derive from the certification formula
    double t_min = 0.0;              // 0: kind default (2dt parabolic, 20dt energy)

    double t = -1.0;                 // spatial slice time, -1: final level
    double m = 1.0;                  // energy integrand order
    double max_relative_gap = 0.02;  // envelope acceptance gap
    std::vector<double> weights;     // nonempty: fixed-weight envelope

    // boundary-exponent: fit point, direction target, acceptance band
    Pt x{}, toward{1.0, 0.0};
    double expected = 0.0;
    double expected_tol = 0.0;       // 0: no band check
    double at_least = 0.0;
    bool has_at_least = false;
};

struct GridSpec {
    double h = 1.0 / 64;
    double dt = 1e-3;
    double T = 1.0;
    std::size_t store_stride = 1;
    std::vector<double> eps_sweep;   // semilinear continuation, largest first
};

struct ScenarioConfig {
    std::string name;
    ConvexDomain domain = ConvexDomain::interval(0, 1);
    SourceSpec source = SourceSpec::constant(1.0);
    GridSpec grid;
    std::uint64_t seed = 0;
    std::string output;              // empty: no files written
    std::vector<CheckSpec> checks;
};

// Result of one check: the underlying report plus the sharpness verdict.
struct CheckResult {
    CheckSpec spec;
    bool raw_pass = false;           // what the check measured
    bool as_predicted = false;       // raw_pass == !sharpness (or match, structure)
    nlohmann::json detail;           // report / curve / fit payload
};

struct RunRecord {
    ScenarioConfig config;
    nlohmann::json solve_info;       // level counts, umax, semilinear diagnostics
    std::vector<CheckResult> results;
    bool overall_ok = false;         // every check as_predicted
    double wall_time_s = 0.0;        // only nondeterministic field
    std::string version;

    nlohmann::json to_json(bool with_wall_time = true) const;
};

// Config (de)serialization; parse . serialize is the identity on configs.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);
nlohmann::json serialize_config(const ScenarioConfig& cfg);

// Solve + run every check.  Writes record.json, reports.jsonl and energy
// CSVs under cfg.output when set.  Deterministic given the seed.
RunRecord run_scenario(const ScenarioConfig& cfg, double tolerance_scale = 1.0);

struct SuiteEntry {
    std::string path;
    std::string name;
    bool ok = false;                 // overall_ok, false on error
    std::string error;               // nonempty if the scenario threw
};

// Runs every *.json under dir (sorted) with scenario-level parallelism;
// per-scenario errors are caught and reported, the suite keeps going.
std::vector<SuiteEntry> run_suite(const std::string& dir, unsigned parallelism,
                                  double tolerance_scale = 1.0);

} // namespace parcav::cli
