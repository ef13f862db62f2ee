#include "scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ccym/expansion.hpp"
#include "ccym/io.hpp"

namespace ccym::cli {

namespace {

// Child lookup that tolerates missing parents; the result is undefined when absent.
YAML::Node at(const YAML::Node& n, const std::string& key) {
    if (!n.IsDefined() || !n.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
    const YAML::Node c = n[key];
    return c.IsDefined() ? c : YAML::Node(YAML::NodeType::Undefined);
}

std::string where(const YAML::Node& n) {
    const YAML::Mark m = n.Mark();
    if (m.line < 0) return "";
    return " (line " + std::to_string(m.line + 1) + ")";
}

[[noreturn]] void fail(const std::string& field, const std::string& msg, const YAML::Node& n = YAML::Node()) {
    throw ConfigError("config field '" + field + "': " + msg + (n.IsDefined() ? where(n) : ""));
}

template <class T>
T as(const YAML::Node& n, const std::string& field) {
    if (!n.IsDefined() || n.IsNull()) fail(field, "missing");
    if (!n.IsScalar()) fail(field, "expected a scalar", n);
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        fail(field, "cannot parse '" + n.Scalar() + "'", n);
    }
}

template <class T>
T as_or(const YAML::Node& n, const std::string& field, T def) {
    if (!n.IsDefined() || n.IsNull()) return def;
    return as<T>(n, field);
}

template <class T>
std::vector<T> list_or(const YAML::Node& n, const std::string& field, std::vector<T> def) {
    if (!n.IsDefined() || n.IsNull()) return def;
    if (n.IsScalar()) return {as<T>(n, field)};
    if (!n.IsSequence()) fail(field, "expected a list", n);
    std::vector<T> r;
    for (std::size_t i = 0; i < n.size(); ++i) r.push_back(as<T>(n[i], field + "[" + std::to_string(i) + "]"));
    return r;
}

nlohmann::json to_json(const YAML::Node& n) {
    switch (n.Type()) {
        case YAML::NodeType::Sequence: {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& x : n) a.push_back(to_json(x));
            return a;
        }
        case YAML::NodeType::Map: {
            nlohmann::json o = nlohmann::json::object();
            for (const auto& kv : n) o[kv.first.Scalar()] = to_json(kv.second);
            return o;
        }
        case YAML::NodeType::Scalar: {
            const std::string& s = n.Scalar();
            if (s == "true") return true;
            if (s == "false") return false;
            try {
                std::size_t pos = 0;
                const long long i = std::stoll(s, &pos);
                if (pos == s.size()) return i;
            } catch (...) {
            }
            try {
                std::size_t pos = 0;
                const double v = std::stod(s, &pos);
                if (pos == s.size()) return v;
            } catch (...) {
            }
            return s;
        }
        default:
            return nullptr;
    }
}

std::vector<FourierTerm> parse_terms(const YAML::Node& n, const std::string& field, int dim) {
    std::vector<FourierTerm> terms;
    if (!n.IsDefined()) fail(field, "missing");
    if (!n.IsSequence()) fail(field, "expected a list of terms", n);
    for (std::size_t i = 0; i < n.size(); ++i) {
        const std::string f = field + "[" + std::to_string(i) + "]";
        FourierTerm t;
        t.amp = as<double>(at(n[i], "amp"), f + ".amp");
        t.mode = list_or<int>(at(n[i], "mode"), f + ".mode", {});
        if (t.mode.empty()) fail(f + ".mode", "missing", n[i]);
        if (static_cast<int>(t.mode.size()) > dim) fail(f + ".mode", "has more entries than boundary dimensions", n[i]);
        t.mode.resize(dim, 0);
        const std::string kind = as_or<std::string>(at(n[i], "kind"), f + ".kind", "sin");
        if (kind != "sin" && kind != "cos") fail(f + ".kind", "must be sin or cos", n[i]);
        t.sine = kind == "sin";
        terms.push_back(t);
    }
    return terms;
}

double wave_number(const Grid& g, const std::vector<int>& mode) {
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
        const double ka = 2.0 * std::numbers::pi * mode[a] / g.length(a);
        k2 += ka * ka;
    }
    return std::sqrt(k2);
}

struct RandomSpec {
    std::uint64_t seed = 0;
    int cutoff = 1;
    double amplitude = 0.1;
    std::vector<int> axes;
};

RandomSpec parse_random(const YAML::Node& n, const std::string& field, const Grid& g) {
    RandomSpec r;
    if (!at(n, "seed").IsDefined()) fail(field + ".seed", "random fields need an explicit seed", n);
    r.seed = as<std::uint64_t>(at(n, "seed"), field + ".seed");
    r.cutoff = as_or<int>(at(n, "cutoff"), field + ".cutoff", 1);
    r.amplitude = as_or<double>(at(n, "amplitude"), field + ".amplitude", 0.1);
    std::vector<int> def;
    for (int a = 0; a < g.dim(); ++a)
        if (g.points(a) > 2) def.push_back(a);
    r.axes = list_or<int>(at(n, "axes"), field + ".axes", def);
    for (int a : r.axes) {
        if (a < 0 || a >= g.dim()) fail(field + ".axes", "axis " + std::to_string(a) + " out of range", n);
        if (4 * r.cutoff >= g.points(a))
            fail(field + ".cutoff", "must stay below a quarter of the points on axis " + std::to_string(a), n);
    }
    return r;
}

// Fourier one-form: components [{index, generator, terms}].
GridField parse_fourier_form(const YAML::Node& n, const std::string& field, const GridPtr& g,
                             const LieAlgebraSpec& lie, std::optional<double>* single_k) {
    const YAML::Node comps = at(n, "components");
    if (!comps.IsDefined()) fail(field + ".components", "missing", n);
    if (!comps.IsSequence()) fail(field + ".components", "expected a list", comps);
    const auto gens = lie.generators();
    GridField a(g, {Slot::Lower}, lie.N, FieldMeta{true, std::nullopt});
    for (auto& c : a.c) c = MField(g, lie.N);
    int nterms = 0;
    std::vector<int> last_mode;
    int last_index = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string f = field + ".components[" + std::to_string(i) + "]";
        const int idx = as<int>(at(comps[i], "index"), f + ".index");
        if (idx < 0 || idx >= g->dim()) fail(f + ".index", "out of range", comps[i]);
        const int gen = as_or<int>(at(comps[i], "generator"), f + ".generator", 0);
        if (gen < 0 || gen >= static_cast<int>(gens.size())) fail(f + ".generator", "out of range", comps[i]);
        const auto terms = parse_terms(at(comps[i], "terms"), f + ".terms", g->dim());
        a.c[idx] += fourier_sum(g, terms) * MField::constant(g, lie.N, gens[gen]);
        nterms += static_cast<int>(terms.size());
        if (!terms.empty()) last_mode = terms.back().mode;
        last_index = idx;
    }
    if (single_k && nterms == 1 && last_mode[last_index] == 0) *single_k = wave_number(*g, last_mode);
    return a;
}

GridField zero_form(const GridPtr& g, int N) {
    GridField a(g, {Slot::Lower}, N, FieldMeta{true, std::nullopt});
    for (auto& c : a.c) c = MField(g, N);
    return a;
}

std::string resolve(const Scenario& s, const std::string& rel) {
    if (s.path.empty() || std::filesystem::path(rel).is_absolute()) return rel;
    return (std::filesystem::path(s.path).parent_path() / rel).string();
}

}  // namespace

double Scenario::param(const std::string& key, double def) const { return as_or<double>(at(at(root, "params"), key), "params." + key, def); }
int Scenario::param_int(const std::string& key, int def) const { return as_or<int>(at(at(root, "params"), key), "params." + key, def); }
std::string Scenario::param_str(const std::string& key, const std::string& def) const {
    return as_or<std::string>(at(at(root, "params"), key), "params." + key, def);
}
bool Scenario::param_bool(const std::string& key, bool def) const { return as_or<bool>(at(at(root, "params"), key), "params." + key, def); }
bool Scenario::has_param(const std::string& key) const { return at(at(root, "params"), key).IsDefined(); }
double Scenario::tolerance(const std::string& key, double def) const {
    return as_or<double>(at(at(root, "tolerances"), key), "tolerances." + key, def);
}

nlohmann::json Scenario::echo() const {
    nlohmann::json j = to_json(root);
    j["d"] = d;
    return j;
}

Scenario Scenario::with_d(int new_d) const {
    Scenario s = *this;
    s.root = YAML::Clone(root);
    s.root["d"] = new_d;
    s.root.remove("sweep");
    s.d = new_d;
    s.sweep_d.clear();
    return s;
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    Scenario s;
    try {
        s.root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(origin + ": line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!s.root.IsMap()) throw ConfigError(origin + ": top level must be a key-value map");
    s.name = as_or<std::string>(at(s.root, "name"), "name", std::filesystem::path(origin).stem().string());
    s.d = as<int>(at(s.root, "d"), "d");
    if (s.d < 3) fail("d", "must be at least 3", at(s.root, "d"));
    s.pipeline = as_or<std::string>(at(s.root, "pipeline"), "pipeline", "check-all");
    s.output = as_or<std::string>(at(s.root, "output"), "output", "out/" + s.name);
    s.sweep_d = list_or<int>(at(at(s.root, "sweep"), "d"), "sweep.d", {});
    for (int v : s.sweep_d)
        if (v < 3) fail("sweep.d", "every d must be at least 3", at(s.root, "sweep"));
    if (!at(s.root, "grid").IsDefined()) fail("grid", "missing");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    Scenario s = parse_scenario(ss.str(), path);
    s.path = path;
    return s;
}

void set_param(Scenario& s, const std::string& key, const std::string& value) { s.root["params"][key] = value; }

void set_seed(Scenario& s, std::uint64_t seed) {
    YAML::Node c = s.root["connection"];
    if (!c.IsMap()) fail("connection", "--seed needs a random connection");
    c["seed"] = seed;
}

MField random_lie_scalar(const GridPtr& g, const LieAlgebraSpec& lie, std::uint64_t seed, int cutoff,
                         double amplitude, const std::vector<int>& axes) {
    Rng rng(seed);
    MField X(g, lie.N);
    for (const auto& t : lie.generators()) X += random_band_limited(g, rng, cutoff, amplitude, axes) * MField::constant(g, lie.N, t);
    return X;
}

MField cayley_frame(const MField& X) {
    const MField one = MField::identity(X.grid(), X.n());
    return pointwise_inverse(one - 0.5 * X) * (one + 0.5 * X);
}

Built build(const Scenario& s, BuildOptions opt) {
    Built b;
    const YAML::Node& r = s.root;
    const int n = s.d - 1;

    // grid
    const YAML::Node gn = at(r, "grid");
    std::vector<int> points = list_or<int>(at(gn, "points"), "grid.points", {});
    if (points.empty()) fail("grid.points", "missing", gn);
    if (static_cast<int>(points.size()) > n) fail("grid.points", "has more entries than d - 1", gn);
    points.resize(n, as_or<int>(at(gn, "inactive_points"), "grid.inactive_points", 2));
    for (int p : points)
        if (p < 2) fail("grid.points", "every axis needs at least 2 points", gn);
    std::vector<double> lengths = list_or<double>(at(gn, "lengths"), "grid.lengths", {});
    if (lengths.size() > points.size()) fail("grid.lengths", "has more entries than d - 1", gn);
    lengths.resize(n, lengths.size() == 1 ? lengths[0] : 2.0 * std::numbers::pi);
    b.grid = Grid::make(points, lengths);

    // group
    try {
        b.lie = LieAlgebraSpec::parse(as_or<std::string>(at(r, "group"), "group", "u1"));
    } catch (const DomainError& e) {
        fail("group", e.what(), at(r, "group"));
    }

    // background
    const YAML::Node bgn = at(r, "background");
    const std::string bg_type = as_or<std::string>(at(bgn, "type"), "background.type", "flat");
    if (bg_type == "flat") {
        b.geo = flat_geometry(b.grid);
        b.collar = CollarBackground::flat(s.d, b.grid);
    } else if (bg_type == "conformally_flat") {
        const YAML::Node pn = at(bgn, "phi");
        if (!pn.IsDefined()) fail("background.phi", "missing", bgn);
        if (at(pn, "terms").IsDefined()) {
            b.phi = fourier_sum(b.grid, parse_terms(at(pn, "terms"), "background.phi.terms", n));
        } else if (at(pn, "random").IsDefined()) {
            const RandomSpec rs = parse_random(at(pn, "random"), "background.phi.random", *b.grid);
            Rng rng(rs.seed);
            b.phi = random_band_limited(b.grid, rng, rs.cutoff, rs.amplitude, rs.axes);
        } else {
            fail("background.phi", "needs terms or random", pn);
        }
        b.geo = curvature_package(conformally_flat_metric(*b.phi), CurvatureOptions{opt.riemann});
        b.collar = CollarBackground::curved(s.d, b.geo);
        b.flat = false;
    } else {
        fail("background.type", "must be flat or conformally_flat", at(bgn, "type"));
    }

    // connection
    const YAML::Node cn = at(r, "connection");
    const std::string c_type = as_or<std::string>(at(cn, "type"), "connection.type", "zero");
    if (c_type == "zero") {
        b.A0 = zero_form(b.grid, b.lie.N);
    } else if (c_type == "fourier") {
        b.A0 = parse_fourier_form(cn, "connection", b.grid, b.lie, b.flat ? &b.mode_k : nullptr);
    } else if (c_type == "random") {
        const RandomSpec rs = parse_random(cn, "connection", *b.grid);
        b.A0 = random_connection(b.grid, b.lie, rs.seed, rs.cutoff, rs.amplitude, rs.axes);
    } else if (c_type == "pure_gauge") {
        const RandomSpec rs = parse_random(cn, "connection", *b.grid);
        b.U = cayley_frame(random_lie_scalar(b.grid, b.lie, rs.seed, rs.cutoff, rs.amplitude, rs.axes));
        b.Uinv = pointwise_inverse(*b.U);
        b.A0 = gauge_transform_connection(zero_form(b.grid, b.lie.N), *b.U, *b.Uinv);
    } else if (c_type == "blob") {
        const std::string p = resolve(s, as<std::string>(at(cn, "path"), "connection.path"));
        b.A0 = load_field(p);
        if (!b.A0.grid->same_as(*b.grid)) fail("connection.path", "blob grid does not match the scenario grid", cn);
        if (b.A0.rank() != 1) fail("connection.path", "blob is not a one-form", cn);
    } else {
        fail("connection.type", "must be zero, fourier, random, pure_gauge or blob", at(cn, "type"));
    }
    b.A0.meta = FieldMeta{true, std::nullopt};

    // electric data
    const YAML::Node en = at(r, "electric");
    if (en.IsDefined()) {
        const std::string e_type = as<std::string>(at(en, "type"), "electric.type");
        GridField E;
        if (e_type == "fourier") {
            E = parse_fourier_form(en, "electric", b.grid, b.lie, b.flat ? &b.electric_mode_k : nullptr);
            if (b.U) E = conjugate(E, *b.U, *b.Uinv);
        } else if (e_type == "current") {
            E = gauge_data(b.A0, b.geo).j;
        } else if (e_type == "blob") {
            E = load_field(resolve(s, as<std::string>(at(en, "path"), "electric.path")));
            if (!E.grid->same_as(*b.grid)) fail("electric.path", "blob grid does not match the scenario grid", en);
        } else {
            fail("electric.type", "must be fourier, current or blob", at(en, "type"));
        }
        E = scale(as_or<double>(at(en, "scale"), "electric.scale", 1.0), E);
        E.meta = FieldMeta{true, 3 - s.d};
        b.E = E;
    }
    return b;
}

}  // namespace ccym::cli
