#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path workdir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "bcnf_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Run run(const std::string& args) {
    fs::path o = workdir() / "stdout.txt", e = workdir() / "stderr.txt";
    std::string cmd = std::string(BCNF_CLI_PATH) + " " + args + " >" + o.string() + " 2>" + e.string();
    int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
}

fs::path write_map(const std::string& name, double aL, double aR, double cL, double cR, double p) {
    json j = {{"left", {{1, 0, aL}, {0, 1, 1.0}, {2, 0, cL}}},
              {"right", {{1, 0, aR}, {0, 1, 1.0}, {2, 0, cR}}},
              {"p", p}};
    fs::path path = workdir() / name;
    std::ofstream(path) << j.dump(2);
    return path;
}

}  // namespace

TEST_CASE("classify prints JSON") {
    Run r = run("classify --aL 2 --aR 0.5");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["region"] == "SaddleNodeLike");
    CHECK(json::parse(run("classify --aL=-0.4 --aR=-2").out)["theorem"] == "period_doubling");
}

TEST_CASE("match prints the normal form") {
    fs::path cfg = write_map("sn.json", 2.0, 0.5, 1.0, 1.0, 0.1);
    Run r = run("match --config " + cfg.string() + " --mu 0");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["normal_form"]["t"].get<double>() == doctest::Approx(9.0));
}

TEST_CASE("conjugate exit codes") {
    fs::path ok = write_map("r1.json", 0.5, 0.8, 0.2, -0.1, 0.05);
    Run r = run("conjugate --config " + ok.string() + " --mu 0.01 --samples 20 --out " +
                (workdir() / "r1").string());
    CHECK(r.code == 0);
    CHECK(fs::exists(workdir() / "r1" / "verification.json"));

    fs::path bad = write_map("oos.json", 3.0, -2.0, 0.0, 0.0, 0.1);
    r = run("conjugate --config " + bad.string() + " --mu 0.01 --out " + (workdir() / "oos").string());
    CHECK(r.code == 2);
    json err = json::parse(r.err);
    CHECK(err["error"] == "RegionUnsupported");
    CHECK(err["message"].get<std::string>().size() > 0);

    r = run("conjugate --config " + (workdir() / "missing.json").string() + " --mu 0.01");
    CHECK(r.code == 1);
    CHECK(json::parse(r.err).contains("error"));
}

TEST_CASE("verify-bounds exit codes") {
    json cfg = {{"maps", {{{"lambda", 0.5}, {"c", 1.0}}}}, {"grid_points", 501}, {"n_max", 60}};
    fs::path good = workdir() / "bounds.json";
    std::ofstream(good) << cfg.dump();
    CHECK(run("verify-bounds --config " + good.string() + " --out " + (workdir() / "b1").string()).code == 0);

    cfg["maps"] = {{{"lambda", 1.5}, {"c", 1.0}}};
    fs::path bad = workdir() / "bounds_bad.json";
    std::ofstream(bad) << cfg.dump();
    Run r = run("verify-bounds --config " + bad.string() + " --out " + (workdir() / "b2").string());
    CHECK(r.code == 3);
    CHECK(json::parse(r.err)["error"] == "HypothesisViolation");
}

TEST_CASE("sweep writes its artifacts") {
    fs::path cfg = write_map("sweep.json", -0.4, -2.0, 0.0, 0.0, 0.3);
    fs::path out = workdir() / "sweep";
    CHECK(run("sweep --config " + cfg.string() + " --out " + out.string() + " --seed 3").code == 0);
    CHECK(fs::exists(out / "bifurcation_diagram.csv"));
    CHECK(fs::exists(out / "attractor.csv"));
    CHECK(fs::exists(out / "diagram.svg"));
}

TEST_CASE("usage errors") {
    CHECK(run("").code != 0);
    CHECK(run("classify --aL 2").code != 0);
}
