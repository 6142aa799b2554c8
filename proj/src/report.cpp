#include "bcnf/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

#include "bcnf/invariant_sets.hpp"
#include "bcnf/normal_form.hpp"
#include "bcnf/pipeline.hpp"
#include "bcnf/region.hpp"

namespace bcnf {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::IoError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
    out << text;
}

nlohmann::json parse_config(const std::string& text, const std::string& what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ConfigError, what + ": " + e.what());
    }
}

PiecewiseMap map_from_config(const nlohmann::json& j, const fs::path& base) {
    if (!j.contains("map")) return map_from_json(j.dump());
    const auto& m = j["map"];
    if (m.is_string()) {
        fs::path p = m.get<std::string>();
        return load_map((p.is_absolute() ? p : base / p).string());
    }
    if (m.is_object()) return map_from_json(m.dump());
    fail(ErrorKind::ConfigError, "\"map\" must be a path or an object");
}

fs::path prepare_dir(const std::string& out_dir) {
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorKind::IoError, "cannot create " + out_dir + ": " + ec.message());
    return dir;
}

ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson bound_json(const BoundReport& b, bool applicable) {
    ojson j;
    j["applicable"] = applicable;
    j["checks"] = b.checks;
    j["violations"] = b.violations;
    j["K"] = number(b.K);
    j["r"] = number(b.r);
    j["lambda"] = number(b.lambda);
    j["chi"] = number(b.chi);
    ojson w = ojson::array();
    for (const auto& x : b.witnesses)
        w.push_back({{"x", number(x.x)}, {"n", x.n}, {"lhs", number(x.lhs)}, {"rhs", number(x.rhs)}});
    j["witnesses"] = w;
    return j;
}

std::string format_mu(double mu) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", mu);
    return buf;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

struct BranchPoint {
    double mu;
    std::string id;
    double x;
    std::string stability;
};

const char* stability_of(const FixedPointRecord& fp) {
    if (!fp.admissible) return "virtual";
    return std::fabs(fp.multiplier) < 1.0 ? "stable" : "unstable";
}

// Plot box: x in [x0, x0 + w], y in [y0, y0 + h], SVG y axis pointing down.
struct Panel {
    double x0, y0, w, h;
    double u_lo, u_hi, v_lo, v_hi;
    double px(double u) const { return x0 + w * (u - u_lo) / (u_hi - u_lo); }
    double py(double v) const { return y0 + h * (1.0 - (v - v_lo) / (v_hi - v_lo)); }
    bool inside(double v) const { return v >= v_lo && v <= v_hi; }
};

void frame(std::ostringstream& s, const Panel& P, const std::string& xlabel, const std::string& ylabel) {
    s << "<rect x=\"" << fmt(P.x0) << "\" y=\"" << fmt(P.y0) << "\" width=\"" << fmt(P.w)
      << "\" height=\"" << fmt(P.h) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    s << "<text x=\"" << fmt(P.x0 + P.w / 2) << "\" y=\"" << fmt(P.y0 + P.h + 28)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
    s << "<text x=\"" << fmt(P.x0 - 34) << "\" y=\"" << fmt(P.y0 + P.h / 2)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << ylabel << "</text>\n";
    s << "<text x=\"" << fmt(P.x0) << "\" y=\"" << fmt(P.y0 + P.h + 14) << "\" font-size=\"10\">"
      << format_mu(P.u_lo) << "</text>\n";
    s << "<text x=\"" << fmt(P.x0 + P.w) << "\" y=\"" << fmt(P.y0 + P.h + 14)
      << "\" text-anchor=\"end\" font-size=\"10\">" << format_mu(P.u_hi) << "</text>\n";
}

void polyline(std::ostringstream& s, const Panel& P, const std::vector<std::pair<double, double>>& pts,
              const std::string& style) {
    if (pts.size() < 2) return;
    s << "<polyline fill=\"none\" " << style << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        s << (i ? " " : "") << fmt(P.px(pts[i].first)) << "," << fmt(P.py(pts[i].second));
    s << "\"/>\n";
}

std::string branch_style(const std::string& stability) {
    if (stability == "stable") return "stroke=\"#000\" stroke-width=\"2\"";
    if (stability == "unstable") return "stroke=\"#c00\" stroke-width=\"1.5\" stroke-dasharray=\"6,3\"";
    if (stability == "virtual") return "stroke=\"#999\" stroke-width=\"1\" stroke-dasharray=\"2,3\"";
    return "stroke=\"#06c\" stroke-width=\"2\"";
}

std::string render_svg(const SweepConfig& cfg, const std::vector<BranchPoint>& branches,
                       const std::vector<std::pair<double, double>>& attractor,
                       const std::vector<double>& cobweb, double cobweb_mu) {
    const double p = cfg.map.p;
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"440\" viewBox=\"0 0 960 440\">\n";
    s << "<!-- generator: " << generator_version << " -->\n";
    s << "<rect width=\"960\" height=\"440\" fill=\"#fff\"/>\n";

    Panel D{70, 30, 380, 360, cfg.mu_min, cfg.mu_max, -p, p};
    frame(s, D, "mu", "x");
    s << "<line x1=\"" << fmt(D.px(0)) << "\" y1=\"" << fmt(D.y0) << "\" x2=\"" << fmt(D.px(0))
      << "\" y2=\"" << fmt(D.y0 + D.h) << "\" stroke=\"#ddd\"/>\n";
    for (const auto& [mu, x] : attractor)
        if (D.inside(x))
            s << "<circle cx=\"" << fmt(D.px(mu)) << "\" cy=\"" << fmt(D.py(x))
              << "\" r=\"1.2\" fill=\"#6a6\"/>\n";
    // contiguous runs of each branch with one stability label
    std::map<std::string, std::vector<const BranchPoint*>> by_id;
    for (const auto& b : branches) by_id[b.id].push_back(&b);
    for (const auto& [id, pts] : by_id) {
        std::vector<std::pair<double, double>> run;
        std::string label;
        for (const BranchPoint* b : pts) {
            if (b->stability != label || !D.inside(b->x)) {
                polyline(s, D, run, branch_style(label));
                run.clear();
                label = b->stability;
            }
            if (D.inside(b->x)) run.emplace_back(b->mu, b->x);
        }
        polyline(s, D, run, branch_style(label));
    }

    Panel C{540, 30, 360, 360, -p, p, -p, p};
    frame(s, C, "x", "f(x)");
    s << "<text x=\"" << fmt(C.x0 + C.w) << "\" y=\"" << fmt(C.y0 - 10)
      << "\" text-anchor=\"end\" font-size=\"12\">mu = " << format_mu(cobweb_mu) << "</text>\n";
    polyline(s, C, {{-p, -p}, {p, p}}, "stroke=\"#888\" stroke-dasharray=\"5,4\"");
    std::vector<std::pair<double, double>> graph_L, graph_R;
    const int n = 200;
    for (int i = 0; i <= n; ++i) {
        double x = -p + 2.0 * p * i / n;
        double y = evaluate(cfg.map, x, cobweb_mu);
        if (C.inside(y)) (x <= 0.0 ? graph_L : graph_R).emplace_back(x, y);
    }
    polyline(s, C, graph_L, "stroke=\"#000\" stroke-width=\"1.5\"");
    polyline(s, C, graph_R, "stroke=\"#000\" stroke-width=\"1.5\"");
    std::vector<std::pair<double, double>> web;
    for (std::size_t i = 0; i + 1 < cobweb.size(); ++i) {
        double x = cobweb[i], y = cobweb[i + 1];
        if (!C.inside(x) || !C.inside(y)) break;
        web.emplace_back(x, x);
        web.emplace_back(x, y);
        web.emplace_back(y, y);
    }
    polyline(s, C, web, "stroke=\"#06c\" stroke-width=\"1\"");
    s << "</svg>\n";
    return s.str();
}

}  // namespace

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::RegionUnsupported: return exit_unsupported;
        case ErrorKind::HypothesisViolation: return exit_hypothesis;
        default: return exit_failure;
    }
}

std::string error_json(ErrorKind kind, const std::string& message) {
    ojson j;
    j["error"] = to_string(kind);
    j["message"] = message;
    return j.dump();
}

PiecewiseMap load_map_config(const std::string& path) {
    nlohmann::json j = parse_config(read_file(path), "config");
    return map_from_config(j, fs::path(path).parent_path());
}

SweepConfig load_sweep_config(const std::string& path) {
    nlohmann::json j = parse_config(read_file(path), "config");
    SweepConfig cfg;
    cfg.map = map_from_config(j, fs::path(path).parent_path());
    cfg.mu_min = cfg.map.mu_lo;
    cfg.mu_max = cfg.map.mu_hi;
    try {
        nlohmann::json s = j.value("sweep", nlohmann::json::object());
        cfg.mu_min = s.value("mu_min", cfg.mu_min);
        cfg.mu_max = s.value("mu_max", cfg.mu_max);
        cfg.steps = s.value("steps", cfg.steps);
        cfg.delta = s.value("delta", cfg.delta);
        cfg.transient = s.value("transient", cfg.transient);
        cfg.record = s.value("record", cfg.record);
        cfg.starts = s.value("starts", cfg.starts);
        cfg.cobweb_steps = s.value("cobweb_steps", cfg.cobweb_steps);
        cfg.seed = s.value("seed", j.value("seed", cfg.seed));
        if (s.contains("cobweb_mu")) cfg.cobweb_mu = s["cobweb_mu"].get<std::vector<double>>();
        if (s.contains("p")) cfg.map.p = s["p"].get<double>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ConfigError, std::string("sweep config: ") + e.what());
    }
    if (!(cfg.mu_min < 0.0 && 0.0 < cfg.mu_max)) fail(ErrorKind::ConfigError, "need mu_min < 0 < mu_max");
    if (cfg.steps < 2) fail(ErrorKind::ConfigError, "steps must be at least 2");
    if (!(cfg.map.p > 0.0)) fail(ErrorKind::ConfigError, "p must be positive");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) fail(ErrorKind::ConfigError, "delta must lie in (0, 1)");
    if (cfg.transient < 0 || cfg.record < 1 || cfg.starts < 1)
        fail(ErrorKind::ConfigError, "transient, record and starts must be non-negative");
    return cfg;
}

std::string classify_json(double a_L, double a_R) {
    RegionClass rc = classify(a_L, a_R);
    ojson j;
    j["a_L"] = a_L;
    j["a_R"] = a_R;
    j["region"] = to_string(rc.kind);
    j["reduction"] = to_string(rc.reduction);
    j["theorem"] = to_string(rc.theorem);
    if (!rc.warning.empty()) j["warning"] = rc.warning;
    return j.dump(2);
}

std::string match_json(const PiecewiseMap& map, double mu) {
    Analysis a = analyze(map, mu);
    const NormalFormParams& q = a.g.params();
    const BifurcationData& d = a.data;
    ojson j;
    j["mu"] = mu;
    j["region"] = to_string(a.region.kind);
    j["reduction"] = to_string(a.region.reduction);
    j["theorem"] = to_string(a.region.theorem);
    j["reflected"] = a.reflected;
    j["data"] = {{"a_L", d.a_L}, {"a_R", d.a_R}, {"beta", d.beta}, {"c_L", d.c_L},
                 {"c_R", d.c_R}, {"d_L", d.d_L}, {"d_R", d.d_R}, {"e", d.e}};
    j["normal_form"] = {{"nu", q.nu}, {"s_L", q.s_L}, {"s_R", q.s_R}, {"t", q.t},
                        {"case", to_string(q.case_tag)}};
    if (q.case_tag == CaseTag::SaddleNode) j["t_limit"] = t_saddle_node_limit(a.frame_data);
    if (q.case_tag == CaseTag::PeriodDoubling) j["t_limit"] = t_period_doubling_limit(a.frame_data);
    if (!a.region.warning.empty()) j["warning"] = a.region.warning;
    return j.dump(2);
}

void run_sweep(const SweepConfig& cfg, const std::string& out_dir) {
    fs::path dir = prepare_dir(out_dir);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> start(-cfg.map.p, cfg.map.p);

    const BifurcationData d = extract_bifurcation_data(cfg.map);
    const bool doubling = classify(d.a_L, d.a_R).kind == RegionKind::PeriodDoublingLike;
    std::vector<BranchPoint> branches;
    std::vector<std::pair<double, double>> attractor;
    for (int k = 0; k < cfg.steps; ++k) {
        double mu = cfg.mu_min + (cfg.mu_max - cfg.mu_min) * k / (cfg.steps - 1);
        for (Side s : {Side::Left, Side::Right}) {
            try {
                FixedPointRecord fp = find_fixed_point(cfg.map, mu, s);
                branches.push_back({mu, s == Side::Left ? "x_L" : "x_R", fp.location, stability_of(fp)});
            } catch (const Error&) {
            }
        }
        if (doubling && mu > 0.0) {
            try {
                PeriodTwoRecord c = find_period_two(cfg.map, mu);
                branches.push_back({mu, "u_L", c.u_L, "cycle"});
                branches.push_back({mu, "u_R", c.u_R, "cycle"});
            } catch (const Error&) {
            }
        }
        for (int i = 0; i < cfg.starts; ++i) {
            Orbit o = iterate(cfg.map, start(rng), mu, cfg.transient + cfg.record);
            if (o.escaped) continue;
            for (std::size_t n = cfg.transient; n < o.points.size(); ++n) attractor.emplace_back(mu, o.points[n]);
        }
    }

    std::ostringstream csv;
    csv << "mu,branch_id,x,stability\n";
    char line[256];
    for (const auto& b : branches) {
        std::snprintf(line, sizeof line, "%.17g,%s,%.17g,%s\n", b.mu, b.id.c_str(), b.x, b.stability.c_str());
        csv << line;
    }
    write_file(dir / "bifurcation_diagram.csv", csv.str());

    std::ostringstream att;
    att << "mu,x\n";
    for (const auto& [mu, x] : attractor) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", mu, x);
        att << line;
    }
    write_file(dir / "attractor.csv", att.str());

    std::vector<double> cob_mu = cfg.cobweb_mu;
    if (cob_mu.empty()) cob_mu = {cfg.mu_min, cfg.mu_max};
    std::vector<double> first_web;
    for (std::size_t k = 0; k < cob_mu.size(); ++k) {
        double mu = cob_mu[k];
        Orbit o = iterate(cfg.map, 0.5 * start(rng), mu, cfg.cobweb_steps);
        std::ostringstream cw;
        cw << "step,x,f(x)\n";
        for (std::size_t n = 0; n < o.points.size(); ++n) {
            double x = o.points[n];
            std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", n, x, evaluate(cfg.map, x, mu));
            cw << line;
        }
        write_file(dir / ("cobweb_" + format_mu(mu) + ".csv"), cw.str());
        if (k == 0) first_web = o.points;
    }
    write_file(dir / "diagram.svg", render_svg(cfg, branches, attractor, first_web, cob_mu.front()));
}

std::string verification_json(const VerificationReport& rep) {
    ojson j;
    j["residual_sup"] = number(rep.residual_sup);
    j["derivative_gap"] = number(rep.derivative_gap);
    j["h_at_zero"] = number(rep.h_at_zero);
    j["monotone"] = rep.monotone;
    ojson gaps = ojson::array();
    for (double g : rep.multiplier_gaps) gaps.push_back(number(g));
    j["multiplier_gaps"] = gaps;
    j["bound_checks"] = {{"appendix", bound_json(rep.appendix, rep.appendix_applicable)},
                         {"chi", bound_json(rep.chi, rep.chi_applicable)}};
    const NeighborhoodReport& n = rep.neighborhood;
    j["neighborhood"] = {{"applicable", rep.neighborhood_applicable},
                         {"q_minus", number(n.q_minus)},
                         {"q_plus", number(n.q_plus)},
                         {"ratio_minus", number(n.ratio_minus)},
                         {"ratio_plus", number(n.ratio_plus)},
                         {"within_delta", n.pass}};
    j["pass"] = rep.pass;
    j["notes"] = rep.notes;
    return j.dump(2);
}

VerificationReport run_conjugate(const PiecewiseMap& map, double mu, double delta, int samples,
                                 const std::string& out_dir) {
    fs::path dir = prepare_dir(out_dir);
    Analysis a = analyze(map, mu);
    build_conjugacies(a);
    const NormalFormParams& q = a.g.params();
    ojson nf;
    nf["mu"] = mu;
    nf["nu"] = q.nu;
    nf["s_L"] = q.s_L;
    nf["s_R"] = q.s_R;
    nf["t"] = q.t;
    nf["case"] = to_string(q.case_tag);
    nf["region"] = to_string(a.region.kind);
    nf["reduction"] = to_string(a.region.reduction);
    nf["reflected"] = a.reflected;
    ojson cases = ojson::array();
    for (const auto& h : a.h) cases.push_back(h.case_tag());
    nf["conjugacies"] = cases;
    write_file(dir / "normal_form.json", nf.dump(2) + "\n");

    for (std::size_t k = 0; k < a.h.size(); ++k)
        write_conjugacy_csv(a.h[k], (dir / ("conjugacy_" + std::to_string(k) + ".csv")).string(), samples);

    VerificationReport rep = verify(a, delta);
    write_file(dir / "verification.json", verification_json(rep) + "\n");
    return rep;
}

int run_verify_bounds(const std::string& config_path, const std::string& out_dir) {
    nlohmann::json j = parse_config(read_file(config_path), "bounds config");
    fs::path dir = prepare_dir(out_dir);
    ojson out;
    int code = exit_pass;
    try {
        int grid = j.value("grid_points", 501);
        int n_max = j.value("n_max", 60);
        double scale = j.value("radius_scale", 1.0);
        double tightening = j.value("r_tightening", 1.0);
        int chi_samples = j.value("chi_samples", 1000);
        ojson app = ojson::array(), chi = ojson::array();
        int violations = 0;
        for (const auto& m : j.value("maps", nlohmann::json::array())) {
            double lam = m.at("lambda").get<double>(), c = m.value("c", 0.0);
            BoundReport b = appendix_suite_case(lam, c, scale, grid, n_max, tightening);
            ojson e = bound_json(b, true);
            e["c"] = c;
            app.push_back(e);
            violations += b.violations;
        }
        for (const auto& m : j.value("chi", nlohmann::json::array())) {
            double lam = m.at("lambda").get<double>();
            BoundReport b = chi_suite_case(lam, m.value("c_f", 0.0), m.value("c_g", 0.0),
                                           m.value("chi", 1.0), scale, chi_samples);
            ojson e = bound_json(b, true);
            e["c_f"] = m.value("c_f", 0.0);
            e["c_g"] = m.value("c_g", 0.0);
            chi.push_back(e);
            violations += b.violations;
        }
        out["appendix"] = app;
        out["chi"] = chi;
        out["violations"] = violations;
        out["pass"] = violations == 0;
        if (violations) code = exit_failure;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ConfigError, std::string("bounds config: ") + e.what());
    } catch (const Error& e) {
        out = ojson();
        out["error"] = to_string(e.kind());
        out["message"] = e.what();
        out["pass"] = false;
        write_file(dir / "bounds.json", out.dump(2) + "\n");
        throw;
    }
    write_file(dir / "bounds.json", out.dump(2) + "\n");
    return code;
}

}  // namespace bcnf
