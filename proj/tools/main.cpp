#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pipelines.hpp"
#include "scenario.hpp"

using namespace ccym::cli;

namespace {

struct Flags {
    std::string config, out;
    std::optional<std::uint64_t> seed;
    std::map<std::string, std::string> params;
};

// Flags that map one-to-one onto params.<key>.
const std::vector<std::pair<std::string, std::string>> kParamFlags{
    {"--orders", "orders"},   {"--eps-min", "eps_min"}, {"--eps-max", "eps_max"}, {"--lambda", "lambda"},
    {"--level", "level"},     {"--variant", "variant"}, {"--dirs", "dirs"},       {"--step", "step"},
    {"--method", "method"},   {"--model", "model"},     {"--k", "k"},             {"--order", "order"},
    {"--samples", "samples"}, {"--r-star", "r_star"},
};

void add_flags(CLI::App* sub, Flags& f, std::optional<int>& d_flag) {
    sub->add_option("--config", f.config, "scenario file");
    sub->add_option("--out", f.out, "output directory (default: the scenario's output entry)");
    sub->add_option("--seed", f.seed, "seed of the random connection");
    sub->add_option("--d", d_flag, "bulk dimension (overrides the scenario)");
    for (const auto& [flag, key] : kParamFlags) {
        const std::string k = key;
        sub->add_option_function<std::string>(flag, [&f, k](const std::string& v) { f.params[k] = v; }, "sets params." + key);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conformally compact Yang-Mills expansions, obstructions and energies"};
    app.require_subcommand(1);
    Flags flags;
    std::optional<int> d_flag;
    std::string geom_action;
    for (const auto& name : pipeline_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " pipeline");
        add_flags(sub, flags, d_flag);
        if (name == "geom") sub->add_option("action", geom_action, "optional 'check'")->check(CLI::IsMember({"check"}));
    }
    CLI11_PARSE(app, argc, argv);
    const std::string pipeline = app.get_subcommands().front()->get_name();

    try {
        Scenario s;
        if (!flags.config.empty()) {
            s = load_scenario(flags.config);
        } else if (pipeline == "dtn") {
            s = parse_scenario("name: dtn\nd: " + std::to_string(d_flag.value_or(5)) + "\ngrid: {points: [2]}\n", "<dtn flags>");
        } else {
            std::cerr << "error: --config is required for " << pipeline << "\n";
            return 2;
        }
        if (d_flag) s = s.with_d(*d_flag);
        for (const auto& [k, v] : flags.params) set_param(s, k, v);
        if (flags.seed) set_seed(s, *flags.seed);
        const std::string out = flags.out.empty() ? s.output : flags.out;

        const RunReport rep = run_scenario(s, pipeline, out);
        write_report(rep, out);
        for (const auto& c : rep.checks)
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << c.value << "  tol=" << c.tolerance << "\n";
        std::cout << (rep.pass() ? "all checks passed" : "some checks failed") << "; report: " << out << "/report.json\n";
        return rep.pass() ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
