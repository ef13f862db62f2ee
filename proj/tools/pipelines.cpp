#include "pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "ccym/action.hpp"
#include "ccym/boundary_ops.hpp"
#include "ccym/energy.hpp"
#include "ccym/expansion.hpp"
#include "ccym/io.hpp"
#include "ccym/mode_ode.hpp"

namespace ccym::cli {

namespace fs = std::filesystem;
using nlohmann::json;

bool RunReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void RunReport::require_le(const std::string& name, double value, double tol) {
    checks.push_back({name, value, tol, std::isfinite(value) && value <= tol});
}

void RunReport::merge(const RunReport& sub, const std::string& prefix) {
    for (Check c : sub.checks) {
        c.name = prefix + "/" + c.name;
        checks.push_back(c);
    }
    values[prefix] = sub.values;
    for (const auto& a : sub.artifacts) artifacts.push_back((fs::path(prefix) / a).string());
}

json RunReport::to_json() const {
    json j;
    j["scenario"] = scenario;
    j["pipeline"] = pipeline;
    j["pass"] = pass();
    json cs = json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    j["checks"] = cs;
    j["values"] = values;
    j["artifacts"] = artifacts;
    return j;
}

const std::vector<std::string>& pipeline_names() {
    static const std::vector<std::string> names{"expand", "obstruction", "energy", "laurent", "anomaly",
                                                "dtn", "boundary-ops", "gradcheck", "geom", "check-all"};
    return names;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

GridField scale_field(double s, const GridField& f) { return ccym::scale(s, f); }

double safe_ratio(double num, double den) { return num / std::max(den, std::numeric_limits<double>::min()); }

// Field scale used to turn absolute defects into relative ones.
double field_scale(const GaugeData& gd) {
    const double s = std::max(max_abs(gd.F), max_abs(gd.j));
    return s > 0.0 ? s : 1.0;
}

void save_blob(const Scenario& s, RunReport& rep, const std::string& out, const std::string& rel, const GridField& f) {
    if (!s.param_bool("write_fields", true)) return;
    const fs::path p = fs::path(out) / rel;
    fs::create_directories(p.parent_path());
    save_field(p.string(), f, s.param_str("encoding", "text") == "binary" ? Encoding::Binary : Encoding::Text);
    rep.artifacts.push_back(rel);
}

ConnectionExpansion magnetic(const Built& b, const Scenario& s, int orders) {
    if (s.d < 4) throw DomainError("expansion pipelines need d >= 4");
    return magnetic_expand(b.collar, b.A0, std::clamp(orders, 0, s.d - 4), b.lie);
}

// Full expansion requested by a scenario: magnetic part plus electric continuation when Neumann data is present.
ConnectionExpansion full_expansion(const Built& b, const Scenario& s, int orders) {
    ConnectionExpansion exp = magnetic(b, s, orders);
    if (b.E) {
        if (!b.flat) throw DomainError("electric data needs a flat background");
        exp = electric_continue(exp, *b.E, std::max(orders, s.d - 3), s.tolerance("gauss_law", 1e-8));
    }
    return exp;
}

int default_orders(const Built& b, const Scenario& s) { return b.E ? s.d + 1 : std::max(s.d - 4, 0); }

// Constant unitary frame from a random Lie-algebra element.
MField global_frame(const Built& b, std::uint64_t seed) {
    Rng rng(seed);
    const auto gens = b.lie.generators();
    std::vector<cplx> X(static_cast<std::size_t>(b.lie.N) * b.lie.N, 0.0);
    for (const auto& t : gens) {
        const double c = 0.7 * rng.uniform();
        for (std::size_t i = 0; i < X.size(); ++i) X[i] += c * t[i];
    }
    return cayley_frame(MField::constant(b.grid, b.lie.N, X));
}

std::vector<int> active_axes(const Grid& g) {
    std::vector<int> axes;
    for (int a = 0; a < g.dim(); ++a)
        if (g.points(a) > 2) axes.push_back(a);
    return axes;
}

// ---------------------------------------------------------------- expand

RunReport run_expand(const Scenario& s, const std::string& out) {
    RunReport rep;
    const Built b = build(s);
    const int orders = s.param_int("orders", default_orders(b, s));
    const ConnectionExpansion exp = full_expansion(b, s, orders);
    const int d = s.d, top = exp.max_order();
    const double tol = s.tolerance("residual", 1e-9);

    double scale = std::max(max_abs(b.A0), b.E ? max_abs(*b.E) : 0.0);
    if (scale == 0.0) scale = 1.0;

    fs::create_directories(out);
    std::ofstream jl(fs::path(out) / "expand.jsonl");
    for (int m = 0; m <= top; ++m) {
        const GridField c = exp.coeff(m);
        const std::string rel = "coeffs/A_" + std::to_string(m) + ".field";
        save_blob(s, rep, out, rel, c);
        json line{{"order", m}, {"max_abs", max_abs(c)}, {"rms", rms(c)}, {"antihermitian_defect", antihermitian_defect(c)}};
        if (s.param_bool("write_fields", true)) line["blob"] = rel;
        jl << line.dump() << "\n";
    }
    rep.artifacts.push_back("expand.jsonl");

    // Ampere residuals through top - 1 (the obstruction order is skipped for pure magnetic data).
    double amp = 0.0, gauss = 0.0;
    int checked = 0;
    for (int k = 0; k <= top; ++k) {
        Residual r;
        try {
            r = residual(exp, k);
        } catch (const DomainError&) {
            break;
        }
        ++checked;
        gauss = std::max(gauss, max_abs(r.gauss));
        if (k < top && (b.E || k != d - 4)) amp = std::max(amp, max_abs(r.ampere));
    }
    rep.values["orders_checked"] = checked;
    rep.require_le("ampere_residual", amp / scale, tol);
    rep.require_le("gauss_residual", gauss / scale, tol);

    double odd = 0.0;
    for (int m = 1; m <= std::min(top, d - 4); m += 2) odd = std::max(odd, max_abs(exp.coeff(m)));
    rep.require_le("odd_orders_vanish", odd / scale, tol);

    if (b.mode_k && max_abs(b.A0) > 0.0) {
        const double k = *b.mode_k;
        const RadialODE ode = RadialODE::maxwell(d, k);
        const Branch br = d % 2 == 1 ? Branch::Log : Branch::Dirichlet;
        const int mtop = exp.coeffs.size() > 0 ? std::min(top, d - 4) : 0;
        const ModeSolution sol = frobenius_series(ode, br, std::max(2, mtop));
        double worst = 0.0;
        const double a0 = max_abs(b.A0);
        for (int m = 0; m <= mtop; ++m) {
            const double am = sol.coeffs[m];
            const double diff = max_abs(sub(exp.coeff(m), scale_field(am, b.A0)));
            worst = std::max(worst, diff / (a0 * (am != 0.0 ? std::abs(am) : std::pow(k, m))));
        }
        rep.values["mode_k"] = k;
        rep.require_le("mode_oracle_dirichlet", worst, s.tolerance("mode_oracle", 1e-10));
    }
    if (b.E && b.electric_mode_k && max_abs(b.A0) == 0.0) {
        const double k = *b.electric_mode_k;
        const RadialODE ode = RadialODE::maxwell(d, k);
        const ModeSolution sol = frobenius_series(ode, Branch::Neumann, top);
        const GridField base = scale_field(1.0 / (d - 3), *b.E);
        const double e0 = max_abs(base);
        double worst = 0.0;
        for (int m = d - 3; m <= top; ++m) {
            const double bm = sol.coeffs[m];
            const double diff = max_abs(sub(exp.coeff(m), scale_field(bm, base)));
            worst = std::max(worst, diff / (e0 * (bm != 0.0 ? std::abs(bm) : std::pow(k, m - d + 3))));
        }
        rep.values["electric_mode_k"] = k;
        rep.require_le("mode_oracle_neumann", worst, s.tolerance("mode_oracle", 1e-10));
    }
    rep.values["max_order"] = top;
    rep.values["l_choice"] = exp.l_choice;
    return rep;
}

// ----------------------------------------------------------- obstruction

RunReport run_obstruction(const Scenario& s, const std::string& out) {
    RunReport rep;
    const Built b = build(s);
    const int d = s.d;
    if (d < 4) throw DomainError("obstruction pipeline needs d >= 4");
    const ConnectionExpansion exp = magnetic(b, s, d - 4);
    const ObstructionCurrent ob = obstruction_extract(exp);
    const GaugeData gd = gauge_data(b.A0, b.geo);
    const double scale = field_scale(gd);
    const double kn = max_abs(ob.kbar);
    const double ref = std::max(kn, scale);
    save_blob(s, rep, out, "kbar.field", ob.kbar);

    const double div = max_abs(divergence(ob.kbar, b.geo, &b.A0));
    rep.values["kbar_max_abs"] = kn;
    rep.values["kbar_rms"] = rms(ob.kbar);
    rep.values["divergence_max_abs"] = div;
    rep.values["field_scale"] = scale;
    rep.require_le("divergence_free", div / ref, s.tolerance("divergence", 1e-7));

    if (d == 5) {
        rep.require_le("closed_form_d5", safe_ratio(max_abs(sub(ob.kbar, gd.j)), max_abs(gd.j)), s.tolerance("closed_form", 1e-9));
    } else if (d % 2 == 0) {
        rep.require_le("even_d_vanishes", kn / scale, s.tolerance("even_vanish", 1e-8));
    } else if (d == 7) {
        const ObstructionCurrent cf = obstruction_closed_form(7, gd, b.geo);
        const double rel = safe_ratio(max_abs(sub(ob.kbar, cf.kbar)), max_abs(cf.kbar));
        rep.values["closed_form_max_abs"] = max_abs(cf.kbar);
        rep.require_le("closed_form_d7", rel, s.tolerance("closed_form", 1e-6));
    }

    // Global conjugation A -> U^{-1} A U with constant U.
    {
        const MField U = global_frame(b, s.param_int("gauge_seed", 97));
        const MField Ui = pointwise_inverse(U);
        const GridField Ag = conjugate(b.A0, U, Ui);
        const ObstructionCurrent obg = obstruction_extract(magnetic_expand(b.collar, Ag, d - 4, b.lie));
        const double cov = max_abs(sub(obg.kbar, conjugate(ob.kbar, U, Ui)));
        rep.require_le("conjugation_covariance", cov / ref, s.tolerance("conjugation", 1e-9));
    }
    // Radial gauge jet U = 1 + r X: the obstruction is unchanged.
    if (d >= 5) {
        const MField X = random_lie_scalar(b.grid, b.lie, s.param_int("gauge_seed", 97) + 1, 1, 0.2, active_axes(*b.grid));
        const ConnectionExpansion g = gauge_transform(exp, {MField::identity(b.grid, b.lie.N), X});
        const ObstructionCurrent obg = obstruction_extract(g);
        rep.require_le("radial_gauge_invariance", max_abs(sub(obg.kbar, ob.kbar)) / ref, s.tolerance("conjugation", 1e-9));
    }
    // Log branch: r^(d-3) K log r with K = -kbar/(d-3) removes the order d-4 Ampere residual.
    if (d % 2 == 1 && d >= 5) {
        const GridField K = log_coefficient(ob);
        const Residual r = residual(with_log_term(exp, K), d - 4);
        rep.require_le("log_sector_residual", max_abs(r.ampere_log) / ref, s.tolerance("log_residual", 1e-8));
        rep.require_le("log_branch_residual", max_abs(r.ampere) / ref, s.tolerance("log_residual", 1e-8));
        const Residual flipped = residual(with_log_term(exp, scale_field(-1.0, K)), d - 4);
        rep.values["opposite_sign_residual"] = max_abs(flipped.ampere) / ref;
    }
    return rep;
}

// ---------------------------------------------------------------- energy

struct EnergyValues {
    std::optional<double> q, q_reduced, holographic;
};

EnergyValues energies(const Built& b, const Scenario& s, const std::string& method) {
    EnergyValues v;
    const int d = s.d;
    const bool want_q = method == "q" || method == "both";
    const bool want_h = method == "holographic" || method == "both";
    if (!want_q && !want_h) throw DomainError("unknown energy method '" + method + "' (use q, holographic or both)");
    if (want_q && (d == 5 || d == 7)) {
        const GaugeData gd = gauge_data(b.A0, b.geo);
        v.q = energy(energy_density_Q(d, gd, b.geo), b.geo);
        if (d == 7) v.q_reduced = energy(energy_density_Q_reduced(d, gd, b.geo), b.geo);
    }
    if (want_h && b.flat && d >= 5) v.holographic = holographic_energy(magnetic(b, s, d - 4));
    return v;
}

double action_scale(const Built& b, const Scenario& s) {
    const RegulatedAction S(magnetic(b, s, s.d - 4));
    return std::max(1.0, std::abs(S.moments().at(0)));
}

RunReport run_energy(const Scenario& s, const std::string&) {
    RunReport rep;
    const Built b = build(s);
    const std::string method = s.param_str("method", "both");
    const EnergyValues v = energies(b, s, method);
    if (!v.q && !v.holographic) throw DomainError("energy: no method applies to d = " + std::to_string(s.d) + " on this background");
    if (v.q) rep.values["q"] = *v.q;
    if (v.q_reduced) rep.values["q_reduced"] = *v.q_reduced;
    if (v.holographic) rep.values["holographic"] = *v.holographic;
    const double tol = s.tolerance("energy_agreement", 1e-4);
    if (v.q && v.holographic)
        rep.require_le("q_vs_holographic", safe_ratio(std::abs(*v.q - *v.holographic), std::abs(*v.q)), tol);
    if (v.q && v.q_reduced)
        rep.require_le("q_vs_reduced_form", safe_ratio(std::abs(*v.q - *v.q_reduced), std::abs(*v.q)), s.tolerance("reduced_form", 1e-8));
    if (v.holographic && s.d % 2 == 0)
        rep.require_le("even_d_vanishes", std::abs(*v.holographic) / action_scale(b, s), s.tolerance("even_vanish", 1e-6));
    return rep;
}

// ------------------------------------------------------- laurent/anomaly

struct Window {
    double rstar, eps_min, eps_max;
    int count;
};

Window window(const Scenario& s) {
    Window w;
    w.rstar = s.param("r_star", 0.5);
    w.eps_min = s.param("eps_min", 1e-2 * w.rstar);
    w.eps_max = s.param("eps_max", 1e-1 * w.rstar);
    w.count = s.param_int("samples", 24);
    return w;
}

json fit_json(const ActionAsymptotics& a) {
    return {{"v", a.v}, {"log_fitted", a.log_fitted}, {"En_log", a.En_log}, {"S_ren", a.S_ren},
            {"positive", a.positive}, {"fit_residual", a.fit_residual}, {"condition", a.condition}};
}

void write_samples(const std::string& path, const Samples& samples) {
    std::ofstream os(path);
    os << "eps,S\n";
    for (const auto& [e, v] : samples) os << fmt(e) << "," << fmt(v) << "\n";
}

RunReport run_laurent(const Scenario& s, const std::string& out) {
    RunReport rep;
    const Built b = build(s);
    const int d = s.d;
    if (!b.flat) throw DomainError("laurent: needs a flat background");
    if (d < 5) throw DomainError("laurent: needs d >= 5");
    const RegulatedAction S(magnetic(b, s, d - 4));
    const Window w = window(s);
    const Samples samples = action_samples(S, w.eps_min, w.eps_max, w.count, w.rstar);
    fs::create_directories(out);
    write_samples((fs::path(out) / "laurent.csv").string(), samples);
    rep.artifacts.push_back("laurent.csv");

    const bool with_log = s.param_bool("include_log", true);
    const ActionAsymptotics fit = laurent_fit(samples, d, with_log);
    rep.values["fit"] = fit_json(fit);
    rep.values["moments"] = S.moments();
    double smax = 0.0;
    for (const auto& p : samples) smax = std::max(smax, std::abs(p.second));
    rep.require_le("fit_residual", safe_ratio(fit.fit_residual, smax), s.tolerance("fit_residual", 1e-6));

    if (d % 2 == 1) {
        const EnergyValues v = energies(b, s, "both");
        const double tol = s.tolerance("energy_agreement", 1e-4);
        if (v.holographic) rep.require_le("fit_vs_holographic", safe_ratio(std::abs(fit.En_log - *v.holographic), std::abs(*v.holographic)), tol);
        if (v.q) rep.require_le("fit_vs_q", safe_ratio(std::abs(fit.En_log - *v.q), std::abs(*v.q)), tol);
    } else if (with_log) {
        rep.require_le("even_d_log_vanishes", std::abs(fit.En_log) / std::max(1.0, std::abs(fit.S_ren)), s.tolerance("even_vanish", 1e-6));
    }
    return rep;
}

RunReport run_anomaly(const Scenario& s, const std::string& out) {
    RunReport rep;
    const Built b = build(s);
    const int d = s.d;
    if (!b.flat) throw DomainError("anomaly: needs a flat background");
    if (d < 5) throw DomainError("anomaly: needs d >= 5");
    const RegulatedAction S(magnetic(b, s, d - 4));
    const Window w = window(s);
    std::vector<double> lambdas;
    if (s.has_param("lambda"))
        lambdas = {s.param("lambda", 2.0)};
    else
        lambdas = {0.5, 2.0};
    const bool with_log = d % 2 == 1;
    fs::create_directories(out);
    std::ofstream csv(fs::path(out) / "anomaly.csv");
    csv << "lambda,shift,predicted,rel_error\n";
    json arr = json::array();
    for (double lam : lambdas) {
        const AnomalyReport a = anomaly_check(S, lam, w.eps_min, w.eps_max, w.count, w.rstar, with_log);
        csv << fmt(lam) << "," << fmt(a.shift) << "," << fmt(a.predicted) << "," << fmt(a.rel_error) << "\n";
        arr.push_back({{"lambda", lam}, {"shift", a.shift}, {"predicted", a.predicted}, {"En_log", a.En_log}, {"rel_error", a.rel_error}});
        const std::string tag = "lambda_" + fmt(lam);
        if (d % 2 == 1)
            rep.require_le("shift_matches_" + tag, a.rel_error, s.tolerance("anomaly", 1e-3));
        else
            rep.require_le("shift_vanishes_" + tag, std::abs(a.shift), s.tolerance("even_shift", 1e-6));
    }
    rep.artifacts.push_back("anomaly.csv");
    rep.values["runs"] = arr;
    return rep;
}

// ------------------------------------------------------------------- dtn

RunReport run_dtn(const Scenario& s, const std::string& out) {
    RunReport rep;
    const int d = s.d;
    const std::string model = s.param_str("model", "maxwell");
    const double k = s.param("k", 1.0);
    const int order = s.param_int("order", 30);
    RadialODE ode;
    DtnRecord rec;
    if (model == "maxwell") {
        ode = RadialODE::maxwell(d, k);
        rec = maxwell_dtn(d, k);
    } else if (model == "scalar") {
        ode = RadialODE::scalar(d, k);
        rec = scalar_dtn(d, k);
    } else {
        throw DomainError("dtn: model must be maxwell or scalar");
    }
    const int n = ode.neumann_exponent();
    const ModeSolution lower = frobenius_series(ode, rec.log_case ? Branch::Log : Branch::Dirichlet, order, rec.log_case ? rec.value : 0.0);
    const ModeSolution upper = frobenius_series(ode, Branch::Neumann, order);
    auto decaying = [&](double y, int der) {
        return lower.derivative(y, der) + (rec.log_case ? 0.0 : rec.value * upper.derivative(y, der));
    };
    json rj{{"d", rec.d}, {"model", model}, {"exponent", rec.exponent}, {"k", rec.k}, {"log_case", rec.log_case},
            {"value", rec.value}, {"log_coeff", rec.log_coeff}, {"scheme", rec.scheme}};
    json br{{lower.branch == Branch::Log ? "log" : "dirichlet", {{"coeffs", lower.coeffs}, {"log_coeffs", lower.log_coeffs}}},
            {"neumann", {{"coeffs", upper.coeffs}}}};
    rep.values["record"] = rj;
    rep.values["branches"] = br;
    fs::create_directories(out);
    {
        std::ofstream os(fs::path(out) / "dtn.json");
        os << json{{"record", rj}, {"branches", br}}.dump(2) << "\n";
        rep.artifacts.push_back("dtn.json");
    }
    // Series solution against the Bessel closed form at a few points.
    double worst = 0.0, ode_res = 0.0;
    for (double t : {0.1, 0.3, 0.6}) {
        const double y = t / k;
        const double g0 = global_mode_solution(ode, y, 0), g1 = global_mode_solution(ode, y, 1);
        worst = std::max(worst, std::abs(decaying(y, 0) - g0) / std::max(std::abs(g0), 1e-300));
        worst = std::max(worst, std::abs(decaying(y, 1) - g1) / std::max(std::abs(g1), 1e-3 * k));
        const double a = decaying(y, 0), da = decaying(y, 1), dda = decaying(y, 2);
        ode_res = std::max(ode_res, std::abs(ode.residual(y, a, da, dda)) / std::max({std::abs(a) * k * k * y, std::abs(da), 1e-300}));
    }
    rep.require_le("bessel_agreement", worst, s.tolerance("dtn", 1e-9));
    rep.require_le("series_ode_residual", ode_res, s.tolerance("dtn", 1e-9));
    (void)n;
    if (model == "scalar" && d == 4) {
        ScalarJet jet{lower.coeffs[0], lower.coeffs[1], 2.0 * lower.coeffs[2], 6.0 * (lower.coeffs[3] + rec.value * upper.coeffs[3])};
        const ScalarOps ops = scalar_boundary_ops(jet, d, s.param_int("weight", 0), k);
        rep.values["scalar_ops"] = {{"delta1", ops.delta1}, {"delta2", ops.delta2}, {"delta3", ops.delta3}};
        const double scale = std::pow(k, 3);
        rep.require_le("delta1_vanishes", std::abs(ops.delta1) / scale, 1e-12);
        rep.require_le("delta2_vanishes", std::abs(ops.delta2) / scale, 1e-12);
        rep.require_le("delta3_is_dtn", std::abs(-ops.delta3 / 6.0 - rec.value) / scale, s.tolerance("dtn", 1e-9));
    }
    return rep;
}

// ---------------------------------------------------------- boundary-ops

RunReport run_boundary_ops(const Scenario& s, const std::string& out) {
    RunReport rep;
    const Built b = build(s);
    const int d = s.d;
    const ConnectionExpansion exp = full_expansion(b, s, s.param_int("orders", default_orders(b, s)));
    const int level = std::clamp(s.param_int("level", b.flat ? 4 : 3), 1, 4);
    const std::string variant = s.param_str("variant", "auto");
    const CurvatureJet jet = curvature_jet(exp, level);
    const double scale = field_scale(GaugeData{b.A0, jet.F, jet.j});
    const double tol = s.tolerance("operators", 1e-7);
    json norms = json::object();
    auto record = [&](const std::string& name, const GridField& f, bool expect_zero) {
        norms[name] = max_abs(f);
        save_blob(s, rep, out, "ops/" + name + ".field", f);
        if (expect_zero) rep.require_le(name + "_vanishes", max_abs(f) / scale, tol);
    };

    if (d >= 5) record("E1", op_E1(jet), true);
    if (level >= 2) {
        if (d >= 6) {
            record("E2", op_E2(jet, E2Variant::Check), true);
            const GridField gradF = sub(jet.K[1], scale_field(1.0 / (d - 5), jet.j));
            rep.require_le("gradF_identity", max_abs(gradF) / scale, s.tolerance("gradF", 1e-8));
        } else if (d == 5 && max_abs(jet.F) < 1e-8) {
            record("E2_5", op_E2(jet, E2Variant::E2_5), false);
        }
    }
    if (level >= 3) {
        if (d >= 8 && d != 7)
            record("E3", op_E3(jet, variant == "e3_7" ? E3Variant::E3_7 : E3Variant::Full), true);
        else if (d == 7)
            record("E3_7", op_E3(jet, E3Variant::E3_7), true);
        else if (d == 6 && b.E)
            record("E3", op_E3(jet, E3Variant::Full), false);
    }
    if (level >= 4 && b.flat) {
        if (d >= 8) {
            const E4Variant v = variant != "auto" ? parse_e4_variant(variant) : (d == 9 ? E4Variant::E4_9 : E4Variant::FlatGeneric);
            record("E4", op_E4(jet, v), true);
        } else if (d == 7 && max_abs(jet.F) < 1e-8) {
            record("E4_7", op_E4(jet, E4Variant::E4_7), false);
        }
    }
    rep.values["norms"] = norms;
    rep.values["level"] = level;

    if (b.E && d >= 4 && d <= 7) {
        const NeumannExtract ne = neumann_extract(exp);
        const double escale = std::max(max_abs(ne.direct), std::numeric_limits<double>::min());
        rep.values["neumann"] = {{"agreement", ne.agreement}, {"divergence", ne.divergence}, {"scale", escale}};
        rep.require_le("neumann_extraction", ne.agreement / escale, s.tolerance("neumann", 1e-9));
        rep.require_le("neumann_divergence", ne.divergence / escale, s.tolerance("neumann_divergence", 1e-8));
    }
    return rep;
}

// ------------------------------------------------------------- gradcheck

RunReport run_gradcheck(const Scenario& s, const std::string& out) {
    RunReport rep;
    const Built b = build(s);
    const int d = s.d;
    const int ndirs = s.param_int("dirs", 5);
    const double h = s.param("step", 1e-3);
    const EnergyMethod m = parse_energy_method(s.param_str("method", b.flat ? "holographic" : "q"));
    const int seed = s.param_int("direction_seed", 1000);
    const int cutoff = s.param_int("direction_cutoff", 1);
    std::vector<GridField> dirs;
    for (int i = 0; i < ndirs; ++i) dirs.push_back(random_connection(b.grid, b.lie, seed + i, cutoff, 1.0, active_axes(*b.grid)));
    const GradientReport g = functional_gradient_check(b.collar, b.A0, b.lie, dirs, h, m);
    fs::create_directories(out);
    std::ofstream csv(fs::path(out) / "gradcheck.csv");
    csv << "direction,fd,fd_half,pairing,ratio\n";
    for (std::size_t i = 0; i < g.directions.size(); ++i) {
        const auto& r = g.directions[i];
        csv << i << "," << fmt(r.fd) << "," << fmt(r.fd_half) << "," << fmt(r.pairing) << "," << fmt(r.ratio) << "\n";
    }
    rep.artifacts.push_back("gradcheck.csv");
    rep.values["ratio_mean"] = g.ratio_mean;
    rep.values["ratio_spread"] = g.ratio_spread;
    rep.values["orthogonal_fd"] = g.orthogonal_fd;
    rep.values["linearity"] = g.linearity;
    rep.values["step"] = g.step;
    rep.require_le("ratio_spread", g.ratio_spread, s.tolerance("ratio_spread", 1e-4));
    rep.require_le("orthogonal_direction", g.orthogonal_rel, s.tolerance("orthogonal", 1e-6));
    rep.require_le("linearity", g.linearity, s.tolerance("linearity", 1e-4));
    if (d == 5 || (b.flat && b.lie.N == 1))
        rep.require_le("ratio_is_one", std::abs(g.ratio_mean - 1.0), s.tolerance("ratio_spread", 1e-4));
    return rep;
}

// ------------------------------------------------------------------ geom

GridField tensor_field(const Tensor<MField>& t, const GridPtr& g) { return GridField(t, g, 1); }

double max_abs_t(const Tensor<MField>& t) {
    double m = 0.0;
    for (const auto& c : t.c) m = std::max(m, max_abs(c));
    return m;
}

RunReport run_geom(const Scenario& s, const std::string&) {
    RunReport rep;
    const Built b = build(s, BuildOptions{true});
    const BoundaryGeometry& geo = b.geo;
    const int n = geo.n;
    const double tol = s.tolerance("geometry", 1e-9);
    const GridPtr& g = b.grid;
    if (geo.flat || !geo.riemann) {
        rep.values["flat"] = true;
        rep.require_le("flat_curvature", max_abs_t(geo.ricci), tol);
        return rep;
    }
    const Tensor<MField>& R = *geo.riemann;
    const double rs = std::max(max_abs_t(R), 1e-300);
    rep.values["riemann_scale"] = rs;

    double anti = 0.0, pair = 0.0, bianchi = 0.0;
    for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e) {
                    anti = std::max(anti, max_abs(R(a, bb, c, e) + R(bb, a, c, e)));
                    anti = std::max(anti, max_abs(R(a, bb, c, e) + R(a, bb, e, c)));
                    pair = std::max(pair, max_abs(R(a, bb, c, e) - R(c, e, a, bb)));
                    bianchi = std::max(bianchi, max_abs(R(a, bb, c, e) + R(bb, c, a, e) + R(c, a, bb, e)));
                }
    rep.require_le("riemann_antisymmetry", anti / rs, tol);
    rep.require_le("riemann_pair_symmetry", pair / rs, tol);
    rep.require_le("first_bianchi", bianchi / rs, tol);

    // Second Bianchi identity.
    {
        const GridField DR = covariant_derivative(tensor_field(R, g), geo, nullptr);
        double m = 0.0;
        for (int e = 0; e < n; ++e)
            for (int a = 0; a < n; ++a)
                for (int bb = 0; bb < n; ++bb)
                    for (int c = 0; c < n; ++c)
                        for (int f = 0; f < n; ++f) m = std::max(m, max_abs(DR(e, a, bb, c, f) + DR(a, bb, e, c, f) + DR(bb, e, a, c, f)));
        rep.require_le("second_bianchi", m / rs, tol);
    }
    // Ricci trace, decomposition and Schouten trace.
    {
        const Tensor<MField> ric = metric_contract(R, &geo.ginv, 0, 2);
        double tr = 0.0, dec = 0.0;
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) {
                tr = std::max(tr, max_abs(ric(a, c) - geo.ricci(a, c)));
                dec = std::max(dec, max_abs(geo.ricci(a, c) - ((n - 2.0) * geo.schouten(a, c) + geo.g(a, c) * geo.J)));
            }
        const Tensor<MField> Jt = metric_contract(geo.schouten, &geo.ginv, 0, 1);
        rep.require_le("ricci_trace", tr / rs, tol);
        rep.require_le("ricci_decomposition", dec / rs, tol);
        rep.require_le("schouten_trace", max_abs(Jt.c[0] - geo.J) / rs, tol);
    }
    // Weyl: definition and trace-freeness.
    if (geo.weyl) {
        const Tensor<MField>& W = *geo.weyl;
        const Tensor<MField>& P = geo.schouten;
        const Tensor<MField>& gg = geo.g;
        double def = 0.0;
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb)
                for (int c = 0; c < n; ++c)
                    for (int e = 0; e < n; ++e) {
                        MField rhs = W(a, bb, c, e) + gg(a, c) * P(bb, e) - gg(bb, c) * P(a, e) + gg(bb, e) * P(a, c) - gg(a, e) * P(bb, c);
                        def = std::max(def, max_abs(R(a, bb, c, e) - rhs));
                    }
        rep.require_le("weyl_definition", def / rs, tol);
        rep.require_le("weyl_trace_free", max_abs_t(metric_contract(W, &geo.ginv, 0, 2)) / rs, tol);
        if (n >= 4) {
            // nabla^a W_abcd = (n - 3) C_cdb
            const GridField divW = divergence(tensor_field(W, g), geo, nullptr);
            double m = 0.0;
            for (int bb = 0; bb < n; ++bb)
                for (int c = 0; c < n; ++c)
                    for (int e = 0; e < n; ++e) m = std::max(m, max_abs(divW(bb, c, e) - (n - 3.0) * geo.cotton(c, e, bb)));
            rep.require_le("weyl_divergence_cotton", m / rs, tol);
        }
    }
    // Cotton: definition and trace.
    {
        const GridField DP = covariant_derivative(tensor_field(geo.schouten, g), geo, nullptr);
        double def = 0.0;
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb)
                for (int c = 0; c < n; ++c) def = std::max(def, max_abs(geo.cotton(a, bb, c) - (DP(a, bb, c) - DP(bb, a, c))));
        rep.require_le("cotton_definition", def / rs, tol);
        rep.require_le("cotton_trace", max_abs_t(metric_contract(geo.cotton, &geo.ginv, 1, 2)) / rs, tol);
    }
    // Metric compatibility.
    rep.require_le("metric_compatibility", max_abs(covariant_derivative(tensor_field(geo.g, g), geo, nullptr)), tol);
    // Conformally flat oracle: P = -dd phi + dphi dphi - |dphi|^2 delta / 2.
    if (b.phi) {
        std::vector<MField> dphi(n);
        for (int a = 0; a < n; ++a) dphi[a] = partial(*b.phi, a);
        MField sq;
        for (int a = 0; a < n; ++a) sq += dphi[a] * dphi[a];
        double m = 0.0;
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) {
                MField p = dphi[a] * dphi[c] - partial(dphi[a], c);
                if (a == c) p -= 0.5 * sq;
                m = std::max(m, max_abs(geo.schouten(a, c) - p));
            }
        rep.require_le("conformal_schouten_oracle", m / rs, tol);
    }
    // Gauge sector: Bianchi, Noether and the Ricci identity with gauge curvature.
    {
        const GaugeData gd = gauge_data(b.A0, geo);
        const double fs_ = field_scale(gd);
        const GridField DF = covariant_derivative(gd.F, geo, &b.A0);
        double bi = 0.0;
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb)
                for (int c = 0; c < n; ++c) bi = std::max(bi, max_abs(DF(a, bb, c) + DF(bb, c, a) + DF(c, a, bb)));
        rep.require_le("gauge_bianchi", bi / fs_, tol);
        rep.require_le("noether_divergence", max_abs(divergence(gd.j, geo, &b.A0)) / fs_, s.tolerance("noether", 1e-8));

        const GridField w = random_connection(g, b.lie, 4242, 1, 0.3, active_axes(*g));
        const GridField DDw = covariant_derivative(covariant_derivative(w, geo, &b.A0), geo, &b.A0);
        double ri = 0.0;
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb)
                for (int c = 0; c < n; ++c) {
                    MField rhs = comm(gd.F(a, bb), w(c));
                    for (int e = 0; e < n; ++e)
                        for (int f = 0; f < n; ++f) rhs -= geo.ginv(e, f) * R(a, bb, f, c) * w(e);
                    ri = std::max(ri, max_abs(DDw(a, bb, c) - DDw(bb, a, c) - rhs));
                }
        rep.require_le("ricci_identity", ri / std::max(rs, fs_), tol);
    }
    return rep;
}

// ------------------------------------------------------------- check-all

RunReport run_single(const Scenario& s, const std::string& pipeline, const std::string& out);

RunReport run_check_all(const Scenario& s, const std::string& out) {
    RunReport rep;
    const Built b = build(s);
    const int d = s.d;
    std::vector<std::string> plan;
    if (d >= 4) plan.insert(plan.end(), {"expand", "obstruction"});
    if (d >= 5 || b.E) plan.push_back("boundary-ops");
    if (d == 5 || d == 7 || (b.flat && d >= 5)) plan.push_back("energy");
    if (b.flat && d >= 5) plan.insert(plan.end(), {"laurent", "anomaly"});
    if (d == 5 || d == 7) plan.push_back("gradcheck");
    if (!b.flat) plan.push_back("geom");
    for (const auto& p : plan) rep.merge(run_single(s, p, (fs::path(out) / p).string()), p);
    if (b.mode_k && d >= 5) {
        Scenario t = s;
        t.root = YAML::Clone(s.root);
        t.root["params"]["k"] = *b.mode_k;
        t.root["params"]["model"] = "maxwell";
        rep.merge(run_single(t, "dtn", (fs::path(out) / "dtn").string()), "dtn");
    }
    rep.values["plan"] = plan;
    return rep;
}

RunReport run_single(const Scenario& s, const std::string& pipeline, const std::string& out) {
    RunReport r;
    if (pipeline == "expand") r = run_expand(s, out);
    else if (pipeline == "obstruction") r = run_obstruction(s, out);
    else if (pipeline == "energy") r = run_energy(s, out);
    else if (pipeline == "laurent") r = run_laurent(s, out);
    else if (pipeline == "anomaly") r = run_anomaly(s, out);
    else if (pipeline == "dtn") r = run_dtn(s, out);
    else if (pipeline == "boundary-ops") r = run_boundary_ops(s, out);
    else if (pipeline == "gradcheck") r = run_gradcheck(s, out);
    else if (pipeline == "geom") r = run_geom(s, out);
    else if (pipeline == "check-all") r = run_check_all(s, out);
    else throw ConfigError("config field 'pipeline': unknown pipeline '" + pipeline + "'");
    r.pipeline = pipeline;
    return r;
}

}  // namespace

RunReport run_scenario(const Scenario& s, const std::string& pipeline, const std::string& out_dir) {
    RunReport rep;
    if (s.sweep_d.empty()) {
        rep = run_single(s, pipeline, out_dir);
    } else {
        for (int d : s.sweep_d) {
            const std::string tag = "d" + std::to_string(d);
            rep.merge(run_single(s.with_d(d), pipeline, (fs::path(out_dir) / tag).string()), tag);
        }
    }
    rep.pipeline = pipeline;
    rep.scenario = s.echo();
    return rep;
}

void write_report(const RunReport& r, const std::string& out_dir) {
    fs::create_directories(out_dir);
    {
        std::ofstream os(fs::path(out_dir) / "report.json");
        os << r.to_json().dump(2) << "\n";
    }
    std::ofstream csv(fs::path(out_dir) / "checks.csv");
    csv << "name,value,tolerance,pass\n";
    for (const auto& c : r.checks) csv << c.name << "," << fmt(c.value) << "," << fmt(c.tolerance) << "," << (c.pass ? 1 : 0) << "\n";
}

}  // namespace ccym::cli
