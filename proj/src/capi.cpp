#include "bcnf/bcnf.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "bcnf/error.hpp"
#include "bcnf/map.hpp"
#include "bcnf/pipeline.hpp"
#include "bcnf/report.hpp"
#include "bcnf/verifier.hpp"

struct bcnf_map {
    bcnf::PiecewiseMap map;
};

struct bcnf_analysis {
    bcnf::Analysis analysis;
};

namespace {

thread_local std::string last_message;
thread_local std::string last_kind;

bcnf_status status_of(bcnf::ErrorKind kind) {
    using bcnf::ErrorKind;
    switch (kind) {
        case ErrorKind::InvalidArgument: return BCNF_ERR_INVALID_ARGUMENT;
        case ErrorKind::ConfigError: return BCNF_ERR_CONFIG;
        case ErrorKind::IoError: return BCNF_ERR_IO;
        case ErrorKind::ContinuityViolation:
        case ErrorKind::BetaMismatch:
        case ErrorKind::BetaNotPositive:
        case ErrorKind::BorderCollisionViolation: return BCNF_ERR_MAP;
        case ErrorKind::RegionUnsupported: return BCNF_ERR_REGION_UNSUPPORTED;
        case ErrorKind::HypothesisViolation: return BCNF_ERR_HYPOTHESIS;
        default: return BCNF_ERR_NUMERICAL;
    }
}

bcnf_status set_error(bcnf_status s, const char* kind, const std::string& message) {
    last_kind = kind;
    last_message = message;
    return s;
}

template <class Fn>
bcnf_status guarded(Fn&& fn) {
    try {
        fn();
        return BCNF_OK;
    } catch (const bcnf::Error& e) {
        return set_error(status_of(e.kind()), bcnf::to_string(e.kind()), e.what());
    } catch (const std::exception& e) {
        return set_error(BCNF_ERR_INTERNAL, "Internal", e.what());
    } catch (...) {
        return set_error(BCNF_ERR_INTERNAL, "Internal", "unknown failure");
    }
}

bcnf_status null_argument(const char* what) {
    return set_error(BCNF_ERR_INVALID_ARGUMENT, "InvalidArgument", std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* bcnf_version(void) { return bcnf::generator_version; }
const char* bcnf_last_error(void) { return last_message.c_str(); }
const char* bcnf_last_error_kind(void) { return last_kind.c_str(); }

int bcnf_exit_code(bcnf_status status) {
    switch (status) {
        case BCNF_OK: return 0;
        case BCNF_ERR_REGION_UNSUPPORTED: return 2;
        case BCNF_ERR_HYPOTHESIS: return 3;
        default: return 1;
    }
}

void bcnf_string_free(char* s) { std::free(s); }

bcnf_status bcnf_map_load(const char* config_path, bcnf_map** out) {
    if (!config_path) return null_argument("config_path");
    if (!out) return null_argument("out");
    return guarded([&] { *out = new bcnf_map{bcnf::load_map_config(config_path)}; });
}

bcnf_status bcnf_map_from_json(const char* json, bcnf_map** out) {
    if (!json) return null_argument("json");
    if (!out) return null_argument("out");
    return guarded([&] { *out = new bcnf_map{bcnf::map_from_json(json)}; });
}

void bcnf_map_free(bcnf_map* map) { delete map; }

bcnf_status bcnf_map_eval(const bcnf_map* map, double x, double mu, double* out) {
    if (!map) return null_argument("map");
    if (!out) return null_argument("out");
    return guarded([&] { *out = bcnf::evaluate(map->map, x, mu); });
}

bcnf_status bcnf_classify(double a_L, double a_R, char** json_out) {
    if (!json_out) return null_argument("json_out");
    return guarded([&] { *json_out = copy_string(bcnf::classify_json(a_L, a_R)); });
}

bcnf_status bcnf_match(const bcnf_map* map, double mu, char** json_out) {
    if (!map) return null_argument("map");
    if (!json_out) return null_argument("json_out");
    return guarded([&] { *json_out = copy_string(bcnf::match_json(map->map, mu)); });
}

bcnf_status bcnf_analysis_create(const bcnf_map* map, double mu, bcnf_analysis** out) {
    if (!map) return null_argument("map");
    if (!out) return null_argument("out");
    return guarded([&] {
        bcnf::Analysis a = bcnf::analyze(map->map, mu);
        bcnf::build_conjugacies(a);
        *out = new bcnf_analysis{std::move(a)};
    });
}

void bcnf_analysis_free(bcnf_analysis* a) { delete a; }

bcnf_status bcnf_analysis_normal_form(const bcnf_analysis* a, double* nu, double* s_L, double* s_R,
                                      double* t) {
    if (!a) return null_argument("analysis");
    const bcnf::NormalFormParams& q = a->analysis.g.params();
    if (nu) *nu = q.nu;
    if (s_L) *s_L = q.s_L;
    if (s_R) *s_R = q.s_R;
    if (t) *t = q.t;
    return BCNF_OK;
}

size_t bcnf_analysis_conjugacy_count(const bcnf_analysis* a) { return a ? a->analysis.h.size() : 0; }

bcnf_status bcnf_conjugacy_eval(const bcnf_analysis* a, size_t k, double x, double* out) {
    if (!a) return null_argument("analysis");
    if (!out) return null_argument("out");
    if (k >= a->analysis.h.size())
        return set_error(BCNF_ERR_INVALID_ARGUMENT, "InvalidArgument", "conjugacy index out of range");
    return guarded([&] { *out = a->analysis.h[k](x); });
}

bcnf_status bcnf_analysis_verify(const bcnf_analysis* a, double delta, int* pass, char** json_out) {
    if (!a) return null_argument("analysis");
    return guarded([&] {
        bcnf::VerificationReport rep = bcnf::verify(a->analysis, delta);
        if (pass) *pass = rep.pass ? 1 : 0;
        if (json_out) *json_out = copy_string(bcnf::verification_json(rep));
    });
}

bcnf_status bcnf_run_sweep(const char* config_path, const char* out_dir, int has_seed, uint64_t seed) {
    if (!config_path) return null_argument("config_path");
    if (!out_dir) return null_argument("out_dir");
    return guarded([&] {
        bcnf::SweepConfig cfg = bcnf::load_sweep_config(config_path);
        if (has_seed) cfg.seed = seed;
        bcnf::run_sweep(cfg, out_dir);
    });
}

bcnf_status bcnf_run_conjugate(const char* config_path, double mu, double delta, int samples,
                               const char* out_dir, int* pass) {
    if (!config_path) return null_argument("config_path");
    if (!out_dir) return null_argument("out_dir");
    if (samples < 1) return set_error(BCNF_ERR_INVALID_ARGUMENT, "InvalidArgument", "samples must be positive");
    return guarded([&] {
        bcnf::VerificationReport rep =
            bcnf::run_conjugate(bcnf::load_map_config(config_path), mu, delta, samples, out_dir);
        if (pass) *pass = rep.pass ? 1 : 0;
    });
}

bcnf_status bcnf_run_verify_bounds(const char* config_path, const char* out_dir, int* exit_code) {
    if (!config_path) return null_argument("config_path");
    if (!out_dir) return null_argument("out_dir");
    return guarded([&] {
        int code = bcnf::run_verify_bounds(config_path, out_dir);
        if (exit_code) *exit_code = code;
    });
}

}  // extern "C"
