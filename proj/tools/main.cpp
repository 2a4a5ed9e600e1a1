#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "parcav/exponents.hpp"
#include "scenario.hpp"

namespace {

parcav::Exponent parse_exponent(const std::string& s) {
    if (s == "inf" || s == "+inf") return parcav::Exponent::pos_inf();
    if (s == "-inf") return parcav::Exponent::neg_inf();
    return parcav::Exponent(std::stod(s));
}

int cmd_run(const std::string& path, bool seed_set, std::uint64_t seed,
            const std::string& out, double tol_scale) {
    parcav::cli::ScenarioConfig cfg = parcav::cli::load_config(path);
    if (seed_set) cfg.seed = seed;
    if (!out.empty()) cfg.output = out;
    const parcav::cli::RunRecord rec = parcav::cli::run_scenario(cfg, tol_scale);
    std::printf("scenario %-24s seed=%llu\n", cfg.name.c_str(),
                static_cast<unsigned long long>(cfg.seed));
    for (const auto& r : rec.results)
        std::printf("  %-18s %-9s %s\n", r.spec.kind.c_str(),
                    r.spec.sharpness ? "sharpness" : "check",
                    r.as_predicted ? (r.raw_pass ? "pass" : "fails as predicted")
                                   : "DEVIATES");
    std::printf("%s (%.2fs)\n", rec.overall_ok ? "OK" : "DEVIATION", rec.wall_time_s);
    return rec.overall_ok ? 0 : 1;
}

int cmd_suite(const std::string& dir, unsigned parallel, double tol_scale) {
    const auto entries = parcav::cli::run_suite(dir, parallel, tol_scale);
    bool all_ok = true;
    for (const auto& e : entries) {
        all_ok = all_ok && e.ok;
        if (!e.error.empty())
            std::printf("%-28s ERROR %s\n", e.path.c_str(), e.error.c_str());
        else
            std::printf("%-28s %s\n", e.name.c_str(), e.ok ? "ok" : "DEVIATION");
    }
    std::printf("%zu scenario(s), %s\n", entries.size(), all_ok ? "all ok" : "deviations");
    return all_ok ? 0 : 1;
}

int cmd_predict(const std::string& qs, double gamma, int n, const std::string& ps) {
    using namespace parcav;
    const Exponent q = parse_exponent(qs);
    std::printf("inputs: q=%s gamma=%g n=%d\n", q.str().c_str(), gamma, n);
    std::printf("  solution exponent p*      %.10g\n", solution_exponent(q, gamma));
    std::printf("  sharpness threshold       %.10g\n", sharpness_threshold(q, gamma));
    std::printf("  energy exponent (H_1)     %.10g\n", energy_exponent(q, gamma, n));
    if (gamma > 0 && gamma < 1) {
        const auto [sp, se] = semilinear_exponents(gamma, n);
        std::printf("  semilinear p / energy     %.10g / %.10g\n", sp, se);
    }
    if (!ps.empty()) {
        const StructureBeta sb = structure_beta(std::stod(ps), q, gamma);
        std::printf("  structure 1/beta at p=%s  %.10g (%s)\n", ps.c_str(), sb.inv_beta,
                    sb.concavity_valid ? "concavity valid" : "not valid");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"parabolic power-concavity laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir, suite_dir;
    std::uint64_t seed = 0;
    double tol_scale = 1.0;
    unsigned parallel = 1;
    std::string q_str = "inf", p_str;
    double gamma = 0.0;
    int dim = 1;

    auto* run = app.add_subcommand("run", "run one scenario config");
    run->add_option("config", config_path, "scenario config (json)")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
    run->add_option("--out", out_dir, "override the output directory");
    run->add_option("--tolerance-scale", tol_scale, "scale all derived tolerances");

    auto* suite = app.add_subcommand("suite", "run every scenario config in a directory");
    suite->add_option("dir", suite_dir, "directory of configs")->required();
    suite->add_option("--parallel", parallel, "scenario-level parallelism")
        ->check(CLI::PositiveNumber);
    suite->add_option("--tolerance-scale", tol_scale, "scale all derived tolerances");

    auto* predict = app.add_subcommand("predict", "print the exponent predictions");
    predict->add_option("--q", q_str, "source concavity exponent (number or inf)");
    predict->add_option("--gamma", gamma, "time weight exponent");
    predict->add_option("--n", dim, "spatial dimension")->check(CLI::PositiveNumber);
    predict->add_option("--p", p_str, "also evaluate the structure exponent at this p");

    auto* version = app.add_subcommand("version", "print the version");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, seed_opt->count() > 0, seed, out_dir, tol_scale);
        if (suite->parsed()) return cmd_suite(suite_dir, parallel, tol_scale);
        if (predict->parsed()) return cmd_predict(q_str, gamma, dim, p_str);
        if (version->parsed()) {
            std::printf("parcav 0.1.0\n");
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
