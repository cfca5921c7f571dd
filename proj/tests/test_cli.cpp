#include "doctest.h"

#include "catgen/scenario.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

std::string binary_path() {
    const char* p = std::getenv("CATGEN_BIN");
    REQUIRE_MESSAGE(p != nullptr, "CATGEN_BIN must point at the cli binary");
    return p;
}

std::string config_dir() {
    const char* p = std::getenv("CATGEN_CONFIG_DIR");
    REQUIRE_MESSAGE(p != nullptr, "CATGEN_CONFIG_DIR must point at configs/");
    return p;
}

int run_cli(const std::string& args) {
    std::string cmd = binary_path() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), ("missing file: " + p.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / "catgen_cli" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

const std::string kSmallPure =
    "input.kind = squeezed_vacuum\n"
    "input.kappa_magnitude = 0.5\n"
    "bs.transmittance_sq = 0.8\n"
    "operation.kind = subtract\n"
    "operation.count = 1\n"
    "grid.function = wigner\n"
    "grid.x_min = -3\ngrid.x_max = 3\n"
    "grid.p_min = -3\ngrid.p_max = 3\n"
    "grid.n_x = 9\ngrid.n_p = 9\n";

} // namespace

TEST_CASE("preset scenarios run start to finish") {
    fs::path d1 = fresh_dir("preset_sub");
    CHECK(run_cli("generate --config " + config_dir() + "/subtract4.cfg --out " +
                  d1.string()) == 0);
    auto summary = nlohmann::json::parse(slurp(d1 / "summary.json"));
    CHECK(summary["command"] == "generate");
    CHECK(summary["exit"]["code"] == 0);
    CHECK(summary["scenario"]["operation.kind"] == "subtract");
    CHECK(summary["scenario"]["detector.channels"] == "20");
    double detect = summary["probabilities"]["detect"];
    CHECK(detect > 0.00065);
    CHECK(detect < 0.00075);
    CHECK(fs::exists(d1 / "weights.csv"));
    CHECK(fs::exists(d1 / "component_04.csv"));

    fs::path d2 = fresh_dir("preset_add");
    CHECK(run_cli("generate --config " + config_dir() + "/add4.cfg --out " +
                  d2.string()) == 0);
    auto s2 = nlohmann::json::parse(slurp(d2 / "summary.json"));
    double avg = s2["probabilities"]["detect"];
    CHECK(avg > 0.015);
    CHECK(avg < 0.025);
    CHECK(fs::exists(d2 / "component_00.csv"));
}

TEST_CASE("pure generate writes a state table") {
    fs::path d = fresh_dir("pure");
    write_file(d / "s.cfg", kSmallPure);
    CHECK(run_cli("generate --config " + (d / "s.cfg").string() + " --out " +
                  (d / "out").string()) == 0);
    std::string csv = slurp(d / "out" / "state.csv");
    CHECK(csv.rfind("n,re,im\n", 0) == 0);
    auto summary = nlohmann::json::parse(slurp(d / "out" / "summary.json"));
    double prob = summary["probabilities"]["event"];
    CHECK(prob > 0.0);
    CHECK(prob < 1.0);
}

TEST_CASE("identical runs produce byte-identical outputs") {
    fs::path d = fresh_dir("det");
    write_file(d / "s.cfg", kSmallPure);
    std::string base = "grid --config " + (d / "s.cfg").string() + " --out ";
    CHECK(run_cli(base + (d / "a").string()) == 0);
    CHECK(run_cli(base + (d / "b").string()) == 0);
    CHECK(slurp(d / "a" / "grid.csv") == slurp(d / "b" / "grid.csv"));
    CHECK(slurp(d / "a" / "summary.json") == slurp(d / "b" / "summary.json"));
}

TEST_CASE("probability command tabulates both routes") {
    fs::path d = fresh_dir("prob");
    CHECK(run_cli("probability --config " + config_dir() +
                  "/subtract4.cfg --out " + d.string()) == 0);
    std::string csv = slurp(d / "probabilities.csv");
    CHECK(csv.rfind("count,closed_form,general_form\n", 0) == 0);
    auto summary = nlohmann::json::parse(slurp(d / "summary.json"));
    auto closed = summary["probabilities"]["closed_form"];
    auto general = summary["probabilities"]["general_form"];
    REQUIRE(closed.size() == general.size());
    REQUIRE(closed.size() >= 9u);
    for (size_t i = 0; i < closed.size(); ++i) {
        double c = closed[i], g = general[i];
        CHECK(std::abs(c - g) <= 1e-8 * std::max(c, 1e-12));
    }
}

TEST_CASE("detector command writes response and posterior tables") {
    fs::path d = fresh_dir("detcmd");
    CHECK(run_cli("detector --config " + config_dir() + "/subtract4.cfg --out " +
                  d.string()) == 0);
    CHECK(slurp(d / "response.csv").rfind("k,m0", 0) == 0);
    CHECK(slurp(d / "posterior.csv").rfind("count,weight\n", 0) == 0);
    auto summary = nlohmann::json::parse(slurp(d / "summary.json"));
    CHECK(double(summary["probabilities"]["evidence"]) > 0.0);
    CHECK(int(summary["probabilities"]["m_cut"]) >= 8);
}

TEST_CASE("compare succeeds at the default tolerance and flags tiny ones") {
    fs::path d = fresh_dir("cmp");
    write_file(d / "s.cfg", kSmallPure);
    std::string cfg = (d / "s.cfg").string();
    CHECK(run_cli("compare --config " + cfg + " --out " +
                  (d / "ok").string()) == 0);
    auto summary = nlohmann::json::parse(slurp(d / "ok" / "summary.json"));
    double sup = summary["deviations"]["grid_sup"];
    CHECK(sup < 1e-8);
    CHECK(fs::exists(d / "ok" / "grid_analytic.csv"));
    CHECK(fs::exists(d / "ok" / "grid_numeric.csv"));

    CHECK(run_cli("compare --config " + cfg + " --tolerance 1e-18 --out " +
                  (d / "bad").string()) == 4);
    auto s2 = nlohmann::json::parse(slurp(d / "bad" / "summary.json"));
    CHECK(s2["exit"]["code"] == 4);
}

TEST_CASE("route overrides pick the evaluation path") {
    fs::path d = fresh_dir("route");
    write_file(d / "s.cfg", kSmallPure);
    std::string cfg = (d / "s.cfg").string();
    CHECK(run_cli("grid --config " + cfg + " --numeric --out " +
                  (d / "n").string()) == 0);
    auto summary = nlohmann::json::parse(slurp(d / "n" / "summary.json"));
    CHECK(summary["deviations"]["route"] == "numeric");
    CHECK(run_cli("grid --config " + cfg + " --numeric --analytic --out " +
                  (d / "x").string()) == 1);
}

TEST_CASE("quadrature rasters use the angle as the second axis") {
    fs::path d = fresh_dir("quad");
    std::string cfg_text = kSmallPure;
    cfg_text.replace(cfg_text.find("grid.function = wigner"),
                     std::string("grid.function = wigner").size(),
                     "grid.function = quadrature");
    write_file(d / "s.cfg", cfg_text);
    CHECK(run_cli("grid --config " + (d / "s.cfg").string() + " --out " +
                  (d / "out").string()) == 0);
    CHECK(fs::exists(d / "out" / "grid.csv"));
}

TEST_CASE("error inputs map to the documented exit codes") {
    fs::path d = fresh_dir("errs");

    write_file(d / "unknown.cfg", "no_such_key = 1\n");
    CHECK(run_cli("generate --config " + (d / "unknown.cfg").string() +
                  " --out " + (d / "o1").string()) == 1);

    write_file(d / "domain.cfg",
               "input.kind = squeezed_vacuum\ninput.kappa_magnitude = 1.2\n");
    CHECK(run_cli("generate --config " + (d / "domain.cfg").string() +
                  " --out " + (d / "o2").string()) == 2);

    write_file(d / "improb.cfg",
               "input.kind = squeezed_vacuum\ninput.kappa_magnitude = 0\n"
               "bs.transmittance_sq = 0.9\noperation.kind = subtract\n"
               "operation.count = 4\n");
    CHECK(run_cli("generate --config " + (d / "improb.cfg").string() +
                  " --out " + (d / "o3").string()) == 3);

    write_file(d / "combo.cfg",
               "input.kind = squeezed_vacuum\ninput.kappa_magnitude = 0.5\n"
               "operation.kind = add\ndetector.kind = chopping\n"
               "detector.channels = 8\n");
    CHECK(run_cli("generate --config " + (d / "combo.cfg").string() +
                  " --out " + (d / "o4").string()) == 1);

    CHECK(run_cli("generate") == 1);              // missing required option
    CHECK(run_cli("bogus --config x.cfg") == 1);  // unknown command
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("detector --config " + config_dir() + "/add4.cfg --out " +
                  (d / "o5").string()) == 1); // detector needs chopping
}

TEST_CASE("config serialization is a fixed point after one pass") {
    catgen::ScenarioConfig cfg =
        catgen::load_config(config_dir() + "/subtract4.cfg");
    std::string once = catgen::serialize_config(cfg);
    std::string twice = catgen::serialize_config(catgen::parse_config(once));
    CHECK(once == twice);

    catgen::ScenarioConfig cfg2 =
        catgen::load_config(config_dir() + "/add4.cfg");
    std::string once2 = catgen::serialize_config(cfg2);
    CHECK(once2 == catgen::serialize_config(catgen::parse_config(once2)));
    CHECK(once2.find("input.n_max = auto") != std::string::npos);
}

TEST_CASE("summary echo reproduces the canonical serialization") {
    fs::path d = fresh_dir("echo");
    write_file(d / "s.cfg", kSmallPure);
    CHECK(run_cli("generate --config " + (d / "s.cfg").string() + " --out " +
                  (d / "out").string()) == 0);
    auto summary = nlohmann::json::parse(slurp(d / "out" / "summary.json"));
    catgen::ScenarioConfig cfg = catgen::parse_config(kSmallPure);
    std::istringstream canon(catgen::serialize_config(cfg));
    std::string line;
    while (std::getline(canon, line)) {
        size_t eq = line.find(" = ");
        REQUIRE(eq != std::string::npos);
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 3);
        CHECK(summary["scenario"][key] == val);
    }
}
