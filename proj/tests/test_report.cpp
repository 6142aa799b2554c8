#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "bcnf/error.hpp"
#include "bcnf/report.hpp"
#include "oracles.hpp"

using namespace bcnf;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("bcnf_test_report_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_config(const fs::path& dir, const json& j) {
    fs::path p = dir / "config.json";
    std::ofstream(p) << j.dump(2);
    return p;
}

json map_json(double aL, double aR, double cL, double cR, double p) {
    return {{"left", {{1, 0, aL}, {0, 1, 1.0}, {2, 0, cL}}},
            {"right", {{1, 0, aR}, {0, 1, 1.0}, {2, 0, cR}}},
            {"p", p}};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

// stability labels per branch id, for rows with the given sign of mu
std::map<std::string, std::set<std::string>> labels(const fs::path& csv, int sign) {
    std::map<std::string, std::set<std::string>> out;
    auto rows = read_csv(csv);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double mu = std::stod(rows[i][0]);
        if ((sign > 0 && mu > 1e-12) || (sign < 0 && mu < -1e-12)) out[rows[i][1]].insert(rows[i][3]);
    }
    return out;
}

}  // namespace

TEST_CASE("classify JSON") {
    json a = json::parse(classify_json(0.5, 0.8));
    CHECK(a["region"] == "Trivial");
    CHECK(a["reduction"] == "Identity");
    CHECK(a["theorem"] == "persistence");
    json b = json::parse(classify_json(2.0, 0.5));
    CHECK(b["region"] == "SaddleNodeLike");
    CHECK(b["theorem"] == "saddle_node");
    json c = json::parse(classify_json(-0.4, -2.0));
    CHECK(c["region"] == "PeriodDoublingLike");
    CHECK(c["theorem"] == "period_doubling");
    CHECK(json::parse(classify_json(3.0, -2.0))["region"] == "OutOfScope");
}

TEST_CASE("match JSON") {
    json j = json::parse(match_json(oracle::quadratic_map(2.0, 0.5, 1.0, 1.0, 0.1), 0.0));
    CHECK(j["normal_form"]["t"].get<double>() == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(j["t_limit"].get<double>() == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(j["reduction"] == "Identity");
}

TEST_CASE("sweep branches follow the region") {
    fs::path dir = scratch("sweep1");
    json cfg = map_json(0.5, 0.8, 0.0, 0.0, 0.1);
    cfg["sweep"] = {{"mu_min", -0.05}, {"mu_max", 0.05}, {"steps", 11}, {"seed", 5}};
    run_sweep(load_sweep_config(write_config(dir, cfg).string()), (dir / "out").string());
    fs::path csv = dir / "out" / "bifurcation_diagram.csv";
    REQUIRE(fs::exists(csv));
    CHECK(read_csv(csv)[0] == std::vector<std::string>{"mu", "branch_id", "x", "stability"});
    auto before = labels(csv, -1), after = labels(csv, 1);
    CHECK(before["x_L"] == std::set<std::string>{"stable"});
    CHECK(before["x_R"] == std::set<std::string>{"virtual"});
    CHECK(after["x_R"] == std::set<std::string>{"stable"});
    CHECK(after["x_L"] == std::set<std::string>{"virtual"});
    CHECK(fs::exists(dir / "out" / "cobweb_-0.05.csv"));
    CHECK(fs::exists(dir / "out" / "cobweb_0.05.csv"));
    std::string svg = slurp(dir / "out" / "diagram.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);

    auto cob = read_csv(dir / "out" / "cobweb_0.05.csv");
    CHECK(cob[0] == std::vector<std::string>{"step", "x", "f(x)"});
    REQUIRE(cob.size() > 2);
    CHECK(std::stod(cob[1][2]) == std::stod(cob[2][1]));
}

TEST_CASE("sweep: saddle-node and period-doubling branches") {
    fs::path dir = scratch("sweep2");
    json cfg = map_json(2.0, 0.5, 0.0, 0.0, 0.3);
    cfg["sweep"] = {{"mu_min", -0.05}, {"mu_max", 0.05}, {"steps", 11}};
    run_sweep(load_sweep_config(write_config(dir, cfg).string()), (dir / "out").string());
    auto after = labels(dir / "out" / "bifurcation_diagram.csv", 1);
    CHECK(after["x_R"] == std::set<std::string>{"stable"});
    CHECK(after["x_L"] == std::set<std::string>{"unstable"});

    fs::path dir3 = scratch("sweep3");
    cfg = map_json(-0.4, -2.0, 0.0, 0.0, 0.3);
    cfg["sweep"] = {{"mu_min", -0.05}, {"mu_max", 0.05}, {"steps", 11}};
    run_sweep(load_sweep_config(write_config(dir3, cfg).string()), (dir3 / "out").string());
    auto pd = labels(dir3 / "out" / "bifurcation_diagram.csv", 1);
    CHECK(pd["x_R"] == std::set<std::string>{"unstable"});
    CHECK(pd["u_L"] == std::set<std::string>{"cycle"});
    CHECK(pd["u_R"] == std::set<std::string>{"cycle"});
}

TEST_CASE("sweep config validation") {
    fs::path dir = scratch("sweep_bad");
    json cfg = map_json(0.5, 0.8, 0.0, 0.0, 0.1);
    cfg["sweep"] = {{"mu_min", 0.01}, {"mu_max", 0.05}};
    CHECK_THROWS_AS(load_sweep_config(write_config(dir, cfg).string()), Error);
    cfg["sweep"] = {{"steps", 1}};
    CHECK_THROWS_AS(load_sweep_config(write_config(dir, cfg).string()), Error);
}

TEST_CASE("conjugate writes the report files") {
    fs::path dir = scratch("conj");
    VerificationReport lin = run_conjugate(oracle::quadratic_map(0.5, 0.8, 0.0, 0.0, 0.1), -0.02, 0.1, 50,
                                           (dir / "lin").string());
    CHECK(lin.pass);
    CHECK(lin.residual_sup <= 1e-15);

    VerificationReport sn = run_conjugate(oracle::quadratic_map(2.0, 0.5, 1.0, 1.0, 0.1), 0.02, 0.1, 50,
                                          (dir / "sn").string());
    CHECK(sn.pass);
    CHECK(fs::exists(dir / "sn" / "conjugacy_0.csv"));
    CHECK(fs::exists(dir / "sn" / "conjugacy_1.csv"));
    json v = json::parse(slurp(dir / "sn" / "verification.json"));
    for (const char* key : {"residual_sup", "derivative_gap", "multiplier_gaps", "bound_checks", "neighborhood", "pass"})
        CHECK(v.contains(key));
    CHECK(v["bound_checks"].contains("appendix"));
    CHECK(v["bound_checks"].contains("chi"));
    json nf = json::parse(slurp(dir / "sn" / "normal_form.json"));
    CHECK(nf["case"] == "SaddleNode");

    auto rows = read_csv(dir / "sn" / "conjugacy_0.csv");
    CHECK(rows[0] == std::vector<std::string>{"x", "h", "h_prime", "interval_id"});
    CHECK(rows[1][0].size() >= 17);

    try {
        run_conjugate(oracle::quadratic_map(3.0, -2.0, 0.0, 0.0, 0.1), 0.01, 0.1, 10, (dir / "out").string());
        FAIL("expected RegionUnsupported");
    } catch (const Error& e) {
        CHECK(exit_code_for(e.kind()) == exit_unsupported);
        json err = json::parse(error_json(e.kind(), e.what()));
        CHECK(err["error"] == "RegionUnsupported");
    }
}

TEST_CASE("verify-bounds") {
    fs::path dir = scratch("bounds");
    json cfg = {{"maps", {{{"lambda", 0.5}, {"c", 1.0}}, {{"lambda", 0.3}, {"c", -2.0}}}},
                {"chi", {{{"lambda", 0.5}, {"c_f", 1.0}, {"c_g", -0.5}, {"chi", 1.2}}}},
                {"grid_points", 501},
                {"n_max", 60}};
    CHECK(run_verify_bounds(write_config(dir, cfg).string(), (dir / "out").string()) == exit_pass);
    json b = json::parse(slurp(dir / "out" / "bounds.json"));
    CHECK(b["violations"] == 0);
    CHECK(b["appendix"].size() == 2);
    CHECK(b["pass"] == true);

    cfg["maps"] = {{{"lambda", 1.5}, {"c", 1.0}}};
    try {
        run_verify_bounds(write_config(dir, cfg).string(), (dir / "bad").string());
        FAIL("expected HypothesisViolation");
    } catch (const Error& e) {
        CHECK(exit_code_for(e.kind()) == exit_hypothesis);
    }
    CHECK(json::parse(slurp(dir / "bad" / "bounds.json"))["error"] == "HypothesisViolation");

    cfg["maps"] = {{{"lambda", 0.5}, {"c", 1.0}}};
    cfg["radius_scale"] = 2.0;
    CHECK_THROWS_AS(run_verify_bounds(write_config(dir, cfg).string(), (dir / "wide").string()), Error);
}
