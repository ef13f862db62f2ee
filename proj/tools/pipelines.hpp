#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "scenario.hpp"

namespace ccym::cli {

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct RunReport {
    nlohmann::json scenario;
    std::string pipeline;
    std::vector<Check> checks;
    nlohmann::json values = nlohmann::json::object();
    std::vector<std::string> artifacts;  // paths relative to the output directory

    bool pass() const;
    // value <= tol (NaN fails).
    void require_le(const std::string& name, double value, double tol);
    void merge(const RunReport& sub, const std::string& prefix);
    nlohmann::json to_json() const;
};

const std::vector<std::string>& pipeline_names();

// Runs one pipeline (or a sweep over d) and writes artifacts below out_dir.
RunReport run_scenario(const Scenario& s, const std::string& pipeline, const std::string& out_dir);

// report.json plus checks.csv.
void write_report(const RunReport& r, const std::string& out_dir);

}  // namespace ccym::cli
