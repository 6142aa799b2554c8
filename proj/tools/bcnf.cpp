// bcnf: border-collision normal forms from the command line.
#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bcnf/bcnf.h"

namespace {

int report_failure(bcnf_status s) {
    nlohmann::json j;
    j["error"] = bcnf_last_error_kind();
    j["message"] = bcnf_last_error();
    std::fprintf(stderr, "%s\n", j.dump().c_str());
    return bcnf_exit_code(s);
}

int print_owned(bcnf_status s, char* text) {
    if (s != BCNF_OK) return report_failure(s);
    std::printf("%s\n", text);
    bcnf_string_free(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Differentiable normal forms for border-collision bifurcations of 1-D maps"};
    app.set_version_flag("--version", bcnf_version());
    app.require_subcommand(1);

    std::string config, out = ".";
    double mu = 0.0, a_L = 0.0, a_R = 0.0, delta = 0.1;
    std::uint64_t seed = 0;
    int samples = 500;

    auto* classify = app.add_subcommand("classify", "Region, reduction and normal-form family of (a_L, a_R)");
    classify->add_option("--aL", a_L, "Left slope at the border")->required();
    classify->add_option("--aR", a_R, "Right slope at the border")->required();

    auto* sweep = app.add_subcommand("sweep", "Bifurcation diagram, cobwebs and SVG over a mu grid");
    sweep->add_option("--config", config, "Map or sweep config (JSON)")->required();
    sweep->add_option("--out", out, "Output directory");
    auto* sweep_seed = sweep->add_option("--seed", seed, "Seed for initial points");

    auto* match = app.add_subcommand("match", "Matched normal-form coefficients at one mu");
    match->add_option("--config", config, "Map config (JSON)")->required();
    match->add_option("--mu", mu, "Parameter value")->required();

    auto* conjugate = app.add_subcommand("conjugate", "Build and verify the conjugacies at one mu");
    conjugate->add_option("--config", config, "Map config (JSON)")->required();
    conjugate->add_option("--mu", mu, "Parameter value")->required();
    conjugate->add_option("--out", out, "Output directory");
    conjugate->add_option("--seed", seed, "Accepted for symmetry; sampling is on a fixed grid");
    conjugate->add_option("--delta", delta, "Tolerance for the neighborhood ratios")->check(CLI::Range(0.0, 1.0));
    conjugate->add_option("--samples", samples, "CSV samples per interval")->check(CLI::PositiveNumber);

    auto* bounds = app.add_subcommand("verify-bounds", "Appendix and chi bound suites");
    bounds->add_option("--config", config, "Bounds config (JSON)")->required();
    bounds->add_option("--out", out, "Output directory");
    bounds->add_option("--seed", seed, "Unused; the suite is listed in the config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*classify) {
        char* text = nullptr;
        bcnf_status s = bcnf_classify(a_L, a_R, &text);
        return print_owned(s, text);
    }
    if (*match) {
        bcnf_map* map = nullptr;
        bcnf_status s = bcnf_map_load(config.c_str(), &map);
        if (s != BCNF_OK) return report_failure(s);
        char* text = nullptr;
        s = bcnf_match(map, mu, &text);
        bcnf_map_free(map);
        return print_owned(s, text);
    }
    if (*sweep) {
        bcnf_status s = bcnf_run_sweep(config.c_str(), out.c_str(), sweep_seed->count() > 0, seed);
        return s == BCNF_OK ? 0 : report_failure(s);
    }
    if (*conjugate) {
        int pass = 0;
        bcnf_status s = bcnf_run_conjugate(config.c_str(), mu, delta, samples, out.c_str(), &pass);
        if (s != BCNF_OK) return report_failure(s);
        return pass ? 0 : 1;
    }
    int code = 0;
    bcnf_status s = bcnf_run_verify_bounds(config.c_str(), out.c_str(), &code);
    return s == BCNF_OK ? code : report_failure(s);
}
