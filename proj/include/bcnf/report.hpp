#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcnf/error.hpp"
#include "bcnf/map.hpp"
#include "bcnf/verifier.hpp"

namespace bcnf {

inline constexpr const char* generator_version = "bcnf 0.1.0";

enum ExitCode { exit_pass = 0, exit_failure = 1, exit_unsupported = 2, exit_hypothesis = 3 };

int exit_code_for(ErrorKind kind);
std::string error_json(ErrorKind kind, const std::string& message);

struct SweepConfig {
    PiecewiseMap map;
    double mu_min = -0.05;
    double mu_max = 0.05;
    int steps = 101;
    double delta = 0.1;
    int transient = 500;
    int record = 50;
    int starts = 4;  // random initial points per mu
    std::uint64_t seed = 0;
    std::vector<double> cobweb_mu;  // empty: mu_min and mu_max
    int cobweb_steps = 40;
};

// A config file is either a bare map or {"map": <map or path>, "sweep": {...}}.
PiecewiseMap load_map_config(const std::string& path);
SweepConfig load_sweep_config(const std::string& path);

std::string classify_json(double a_L, double a_R);
std::string match_json(const PiecewiseMap& map, double mu);

void run_sweep(const SweepConfig& cfg, const std::string& out_dir);

// Writes normal_form.json, conjugacy_<k>.csv and verification.json.
VerificationReport run_conjugate(const PiecewiseMap& map, double mu, double delta, int samples,
                                 const std::string& out_dir);
std::string verification_json(const VerificationReport& rep);

// Reads the bounds config and writes bounds.json; returns 0 when no bound is
// violated. Hypothesis failures are recorded in bounds.json and rethrown.
int run_verify_bounds(const std::string& config_path, const std::string& out_dir);

}  // namespace bcnf
