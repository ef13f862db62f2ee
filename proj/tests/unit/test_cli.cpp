#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "pipelines.hpp"
#include "scenario.hpp"

using namespace ccym::cli;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("ccym_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

const char* kModeD5 = R"(name: mode_d5
d: 5
grid: {points: [8, 8]}
group: u1
background: {type: flat}
connection:
  type: fourier
  components:
    - index: 0
      terms: [{amp: 0.3, mode: [0, 1], kind: sin}]
    - index: 1
      terms: [{amp: 0.2, mode: [1, 0], kind: cos}]
)";
}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("missing d is reported by name") {
        try {
            parse_scenario("name: x\ngrid: {points: [4, 4]}\n");
            FAIL("expected a config error");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("'d'") != std::string::npos);
        }
    }

    TEST_CASE("syntax errors carry a line number") {
        try {
            parse_scenario("name: x\nd: 5\ngrid: {points: [4, 4]\n");
            FAIL("expected a config error");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("line") != std::string::npos);
        }
    }

    TEST_CASE("random connections need a seed") {
        const std::string text = "name: x\nd: 5\ngrid: {points: [8, 8]}\ngroup: su2\nconnection: {type: random, cutoff: 1, amplitude: 0.2}\n";
        CHECK_THROWS_AS(build(parse_scenario(text)), ConfigError);
    }

    TEST_CASE("check-all passes on the d = 5 mode and k equals j") {
        const auto out = scratch("check_all");
        const auto rep = run_scenario(parse_scenario(kModeD5), "check-all", out.string());
        CHECK(rep.pass());
        bool found = false;
        for (const auto& c : rep.checks)
            if (c.name.find("closed_form_d5") != std::string::npos) found = c.pass;
        CHECK(found);
        fs::remove_all(out);
    }

    TEST_CASE("d = 6 obstruction is below tolerance") {
        std::string text = kModeD5;
        text.replace(text.find("d: 5"), 4, "d: 6");
        const auto out = scratch("d6");
        const auto rep = run_scenario(parse_scenario(text), "obstruction", out.string());
        CHECK(rep.pass());
        fs::remove_all(out);
    }

    TEST_CASE("identical config and seed give byte-identical outputs") {
        const std::string text = "name: repro\nd: 7\ngrid: {points: [12, 12]}\ngroup: su2\n"
                                 "connection: {type: random, seed: 3, cutoff: 1, amplitude: 0.3}\n";
        const auto a = scratch("repro_a"), b = scratch("repro_b");
        for (const auto& dir : {a, b}) {
            Scenario s = parse_scenario(text);
            const auto rep = run_scenario(s, "expand", dir.string());
            write_report(rep, dir.string());
        }
        CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
        CHECK(slurp(a / "expand.jsonl") == slurp(b / "expand.jsonl"));
        CHECK(slurp(a / "coeffs" / "A_2.field") == slurp(b / "coeffs" / "A_2.field"));

        // a different seed changes the fields
        Scenario s = parse_scenario(text);
        set_seed(s, 4);
        const auto c = scratch("repro_c");
        write_report(run_scenario(s, "expand", c.string()), c.string());
        CHECK(slurp(a / "coeffs" / "A_2.field") != slurp(c / "coeffs" / "A_2.field"));
        for (const auto& dir : {a, b, c}) fs::remove_all(dir);
    }

    TEST_CASE("parameter overrides") {
        Scenario s = parse_scenario(kModeD5);
        set_param(s, "lambda", "3.5");
        CHECK(s.param("lambda", 0.0) == doctest::Approx(3.5));
        CHECK(s.param_int("missing", 7) == 7);
        CHECK(s.with_d(7).d == 7);
    }

    TEST_CASE("every pipeline name is known") {
        const auto& names = pipeline_names();
        for (const char* n : {"expand", "obstruction", "energy", "laurent", "anomaly", "dtn", "boundary-ops", "gradcheck",
                              "geom", "check-all"})
            CHECK(std::find(names.begin(), names.end(), n) != names.end());
        CHECK_THROWS(run_scenario(parse_scenario(kModeD5), "bogus", scratch("bogus").string()));
    }
}
