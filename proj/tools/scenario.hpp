#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include <yaml-cpp/yaml.h>

#include "ccym/collar.hpp"
#include "ccym/field.hpp"
#include "ccym/geometry.hpp"

namespace ccym::cli {

// Raised for malformed scenario files; the message names the offending field and line.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct Scenario {
    std::string name;
    std::string path;  // file the scenario was read from (empty for inline configs)
    YAML::Node root;
    int d = 0;
    std::string pipeline;
    std::string output;
    std::vector<int> sweep_d;  // optional list of d values to run

    // Typed access to params.<key>, falling back to def.
    double param(const std::string& key, double def) const;
    int param_int(const std::string& key, int def) const;
    std::string param_str(const std::string& key, const std::string& def) const;
    bool param_bool(const std::string& key, bool def) const;
    bool has_param(const std::string& key) const;
    double tolerance(const std::string& key, double def) const;

    // Same scenario at another d (grid axes rebuilt from the grid spec).
    Scenario with_d(int new_d) const;
    nlohmann::json echo() const;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin = "<inline>");

// CLI overrides land in params.<key> (or connection.seed for the seed).
void set_param(Scenario& s, const std::string& key, const std::string& value);
void set_seed(Scenario& s, std::uint64_t seed);

struct Built {
    GridPtr grid;
    LieAlgebraSpec lie;
    BoundaryGeometry geo;
    CollarPtr collar;
    GridField A0;
    std::optional<GridField> E;     // Neumann data
    std::optional<MField> U, Uinv;  // pure-gauge frame, when the connection is U^{-1} dU
    std::optional<MField> phi;      // conformal factor of a conformally flat metric
    bool flat = true;
    // Single Fourier mode on a flat background: wave number of the mode, if any.
    std::optional<double> mode_k;
    std::optional<double> electric_mode_k;
};

struct BuildOptions {
    bool riemann = false;
};

Built build(const Scenario& s, BuildOptions opt = {});

// Boundary frame U = (1 - X/2)^{-1} (1 + X/2) for a Lie-algebra valued X; unitary when X is.
MField cayley_frame(const MField& X);
// Random Lie-algebra valued scalar with band-limited coefficients.
MField random_lie_scalar(const GridPtr& g, const LieAlgebraSpec& lie, std::uint64_t seed, int cutoff,
                         double amplitude, const std::vector<int>& axes);

}  // namespace ccym::cli
