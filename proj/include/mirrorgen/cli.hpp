#pragma once

// Command-line front end: `mirrorgen <subcommand> [options]`.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mirrorgen/identities.hpp"
#include "mirrorgen/periods.hpp"
#include "mirrorgen/pipeline.hpp"

namespace mirrorgen::cli {

struct RunConfig {
    std::string command;
    std::string geometry;
    std::optional<int> order;
    std::optional<int> z_min;
    std::optional<int> z_max;
    std::string format = "pretty";
    bool per_beta = false;
    bool negative_control = false;
    std::uint64_t seed = 1;
    int cases = 25;
    std::string invariants;
    std::string emit_invariants;
};

// One output row. Integer and string fields are optional columns.
struct Record {
    std::string series;
    std::string selector;
    std::optional<Exponent> beta;
    std::map<std::string, int> ints;
    std::map<std::string, std::string> strings;
    Rational value;
};

struct Output {
    nlohmann::json metadata = nlohmann::json::object();
    std::vector<Record> records;
    std::vector<CheckResult> checks;

    bool ok() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.pass; });
    }
};

inline std::string monomial_string(const TruncationPolicy &p, const Exponent &e)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) {
            continue;
        }
        s += (s.empty() ? "" : "*") + p.variables[i];
        if (e[i] != 1) {
            s += "^" + std::to_string(e[i]);
        }
    }
    return s.empty() ? "1" : s;
}

inline std::string join_factors(const std::string &a, const std::string &b)
{
    if (a == "1") {
        return b;
    }
    return b == "1" ? a : a + " " + b;
}

inline std::string power_string(const std::string &var, int k)
{
    if (k == 0) {
        return "1";
    }
    return k == 1 ? var : var + "^" + std::to_string(k);
}

// ---------------------------------------------------------------------------
// Formatting

inline nlohmann::json to_json(const Output &o)
{
    nlohmann::json records = nlohmann::json::array();
    for (const auto &r : o.records) {
        nlohmann::json j;
        j["series"] = r.series;
        j["selector"] = r.selector;
        if (r.beta) {
            j["beta"] = *r.beta;
        }
        for (const auto &[k, v] : r.ints) {
            j[k] = v;
        }
        for (const auto &[k, v] : r.strings) {
            j[k] = v;
        }
        j["value"] = to_string(r.value);
        records.push_back(j);
    }
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : o.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return {{"metadata", o.metadata}, {"records", records}, {"checks", checks}};
}

inline std::string csv_cell(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

inline void write_csv(const Output &o, std::ostream &out)
{
    const std::vector<std::string> int_cols{"x_exp", "t_deg", "z_exp", "contact"};
    out << "series,selector,beta,x_exp,t_deg,z_exp,contact,class,value\n";
    for (const auto &r : o.records) {
        std::string beta;
        if (r.beta) {
            for (std::size_t i = 0; i < r.beta->size(); ++i) {
                beta += (i ? " " : "") + std::to_string((*r.beta)[i]);
            }
        }
        out << csv_cell(r.series) << "," << csv_cell(r.selector) << "," << beta;
        for (const auto &c : int_cols) {
            auto it = r.ints.find(c);
            out << "," << (it == r.ints.end() ? "" : std::to_string(it->second));
        }
        auto cls = r.strings.find("class");
        out << "," << (cls == r.strings.end() ? "" : csv_cell(cls->second)) << "," << to_string(r.value) << "\n";
    }
    for (const auto &c : o.checks) {
        out << "check," << csv_cell(c.name) << ",,,,,,," << (c.pass ? "pass" : "fail") << "\n";
    }
}

inline void write_pretty(const Output &o, std::ostream &out)
{
    if (o.metadata.contains("geometry")) {
        out << "# geometry " << o.metadata["geometry"].get<std::string>();
        if (o.metadata.contains("order")) {
            out << ", order " << o.metadata["order"].get<int>();
        }
        out << "\n";
    }
    if (o.metadata.contains("warnings")) {
        for (const auto &w : o.metadata["warnings"]) {
            out << "# warning: " << w.get<std::string>() << "\n";
        }
    }
    if (o.records.empty() && o.checks.empty()) {
        out << "(all coefficients vanish)\n";
    }
    std::string current;
    for (const auto &r : o.records) {
        if (r.series != current) {
            out << r.series << ":\n";
            current = r.series;
        }
        out << "  " << r.selector << " = " << to_string(r.value) << "\n";
    }
    for (const auto &c : o.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) {
            out << " (" << c.detail << ")";
        }
        out << "\n";
    }
}

inline void write_output(const Output &o, const std::string &format, std::ostream &out)
{
    if (format == "json") {
        out << to_json(o).dump(2) << "\n";
    } else if (format == "csv") {
        write_csv(o, out);
    } else {
        write_pretty(o, out);
    }
}

// ---------------------------------------------------------------------------
// Records

inline nlohmann::json metadata_for(const PairGeometry &g)
{
    nlohmann::json m;
    m["geometry"] = g.name;
    m["order"] = g.policy.max_total_weight;
    m["novikov"] = g.novikov;
    m["weights"] = g.policy.weights;
    m["m"] = g.m;
    m["z_window"] = {g.policy.z_min, g.policy.z_max};
    m["j_source"] = to_string(g.j_source);
    m["tau_d_source"] = to_string(g.tau_source);
    m["conventions"] = {
        {"state_space_product",
         "[a]_i [b]_j = [r(a) r(b)]_{i+j} for i, j >= 0 (ambient product for i = j = 0); one negative index with "
         "s = i + j: [g r(b)]_s if s < 0, iota_*(g r(b)) in sector 0 if s = 0, [g N r(b)]_s if s > 0"},
        {"contact_minus_one", "[.]_{-1} components of the mirror map are excluded from g(y) and reported separately"},
        {"m_signs", "m_i = D.beta_i on the i-th Novikov generator; negative entries are allowed"},
        {"restriction", "classes restrict to the divisor through the configured [restriction] map"},
        {"degree", "t^d collects every q^beta with D.beta = d; x^{1-D.beta} carries q^beta in W"},
        {"rationals", "values are exact strings p/q"}};
    if (!g.warnings.empty()) {
        m["warnings"] = g.warnings;
    }
    return m;
}

inline void add_class_records(Output &o, const std::string &series, const TruncationPolicy &p, const Exponent &beta,
                              int contact, const ZLaurent &v)
{
    const auto &alg = *v.algebra();
    for (const auto &[k, c] : v.terms()) {
        for (std::size_t i = 0; i < alg.dimension(); ++i) {
            if (c[i].is_zero()) {
                continue;
            }
            Record r{series,
                     join_factors("[" + alg.label(i) + "]_" + std::to_string(contact),
                                  join_factors(power_string("z", k), monomial_string(p, beta))),
                     beta,
                     {{"contact", contact}, {"z_exp", k}},
                     {{"class", alg.label(i)}},
                     c[i]};
            o.records.push_back(std::move(r));
        }
    }
}

inline void add_relative_records(Output &o, const std::string &series, const RelativeSeries &s)
{
    for (const auto &[beta, c] : s.terms()) {
        for (const auto &[n, zl] : c.components()) {
            add_class_records(o, series, s.policy(), beta, n, zl);
        }
    }
}

inline void add_scalar_records(Output &o, const std::string &series, const ScalarSeries &s, const std::vector<int> &m)
{
    for (const auto &[beta, c] : s.terms()) {
        o.records.push_back({series, monomial_string(s.policy(), beta), beta, {{"t_deg", pairing(m, beta)}}, {}, c});
    }
}

inline void add_period_records(Output &o, const std::string &series, const PeriodSeries &s, bool per_beta)
{
    if (per_beta) {
        for (const auto &[beta, c] : s.per_beta) {
            o.records.push_back({series, monomial_string(s.policy, beta), beta, {{"t_deg", pairing(s.m, beta)}}, {}, c});
        }
        return;
    }
    for (const auto &[d, c] : s.by_degree()) {
        o.records.push_back({series, power_string("t", d), std::nullopt, {{"t_deg", d}}, {}, c});
    }
}

inline void add_potential_records(Output &o, const ProperPotential &W, bool per_beta)
{
    const auto &p = W.W.policy();
    for (auto it = W.W.terms().rbegin(); it != W.W.terms().rend(); ++it) {
        const int x = it->first;
        if (per_beta) {
            for (const auto &[beta, c] : it->second.terms()) {
                o.records.push_back({"W", join_factors(power_string("x", x), monomial_string(p, beta)), beta,
                                     {{"x_exp", x}, {"t_deg", pairing(W.m, beta)}}, {}, c});
            }
            continue;
        }
        for (const auto &[d, c] : collapse(it->second, W.m)) {
            o.records.push_back(
                {"W", join_factors(power_string("x", x), power_string("t", d)), std::nullopt, {{"x_exp", x}, {"t_deg", d}}, {}, c});
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands

inline PairGeometry load(const RunConfig &cfg)
{
    if (cfg.geometry.empty()) {
        throw ConfigError("--geometry is required for '" + cfg.command + "'");
    }
    auto g = geometry_from_source(cfg.geometry);
    if (cfg.order) {
        if (*cfg.order < 2) {
            throw ConfigError("--order must be at least 2");
        }
        g.set_order(*cfg.order, cfg.z_min);
    } else if (cfg.z_min) {
        g.set_order(g.policy.max_total_weight, cfg.z_min);
    }
    if (cfg.z_max) {
        g.policy.z_max = *cfg.z_max;
        g.policy.validate();
    }
    if (!cfg.invariants.empty()) {
        g.use_invariant_table(parse_invariant_table(read_text_file(cfg.invariants)));
    }
    if (!cfg.emit_invariants.empty()) {
        std::ofstream f(cfg.emit_invariants);
        if (!f) {
            throw ConfigError("cannot write '" + cfg.emit_invariants + "'");
        }
        f << emit_invariant_table(emit_invariants(g));
    }
    return g;
}

inline void add_period_checks(Output &o, const PeriodReport &r, const std::string &name)
{
    for (const auto &row : r.rows) {
        o.records.push_back({"pi_W", power_string("t", row.degree), std::nullopt, {{"t_deg", row.degree}}, {},
                             row.classical});
    }
    for (const auto &row : r.rows) {
        o.records.push_back({"G_hat", power_string("t", row.degree), std::nullopt, {{"t_deg", row.degree}}, {},
                             row.regularized});
    }
    std::string detail;
    if (r.first_mismatch) {
        detail = "first mismatch at t^" + std::to_string(*r.first_mismatch);
    } else if (!r.rows.empty()) {
        detail = "matched through t^" + std::to_string(r.rows.back().degree);
    }
    o.checks.push_back({name, r.pass, detail});
}

inline Output run_verify(const PairGeometry &g, const RunConfig &cfg)
{
    Output o;
    o.metadata = metadata_for(g);
    try {
        add_period_checks(o, verify_period_theorem(g), "period theorem: pi_W = regularized G");
    } catch (const Error &e) {
        o.checks.push_back({"period theorem: pi_W = regularized G", false, e.what()});
    }
    if (cfg.negative_control) {
        try {
            const auto r = verify_period_theorem(g, {true, cfg.seed});
            std::string detail = "perturbed " + exponent_string(r.perturbed->curve) + " (degree " +
                                 std::to_string(g.degree(r.perturbed->curve)) + ")";
            detail += r.first_mismatch ? ", flagged at t^" + std::to_string(*r.first_mismatch) : ", not flagged";
            o.checks.push_back({"negative control flagged at first affected degree", r.pass, detail});
        } catch (const Error &e) {
            o.checks.push_back({"negative control flagged at first affected degree", false, e.what()});
        }
    }
    try {
        const auto W = proper_potential(g);
        for (const auto &c : delta_D_check_from(W).checks) {
            o.checks.push_back({"Delta_D: " + c.name, c.pass, c.detail});
        }
        // Several Novikov variables are collapsed to t^{D.beta} first.
        if (g.novikov.size() == 1 && g.m[0] >= 1) {
            const int order = g.policy.max_total_weight / g.policy.weights[0];
            ScalarSeries g1(TruncationPolicy::single(g.novikov[0], order));
            for (const auto &[e, c] : W.g_used.terms()) {
                if (e[0] <= order) {
                    g1.add_term(e, c);
                }
            }
            const auto r = roundtrip_g_W(g1, g.m[0], order);
            o.checks.push_back({"round trip g -> W -> g", r.pass, "g = " + to_string(r.expected)});
        } else {
            ScalarSeries g1(TruncationPolicy::single("t", g.policy.max_total_weight));
            for (const auto &[d, c] : collapse(W.g_used, g.m)) {
                if (d <= g.policy.max_total_weight) {
                    g1.add_term({d}, c);
                }
            }
            const auto r = roundtrip_g_W(g1, 1, g.policy.max_total_weight);
            o.checks.push_back(
                {"round trip g -> W -> g (collapsed to t^{D.beta})", r.pass, "g = " + to_string(r.expected)});
        }
    } catch (const Error &e) {
        o.checks.push_back({"potential checks", false, e.what()});
    }
    return o;
}

inline Output run_identities(const RunConfig &cfg)
{
    Output o;
    o.metadata = {{"seed", cfg.seed}, {"cases", cfg.cases}};
    auto add = [&](const SuiteReport &r, const std::string &what) {
        std::string detail = std::to_string(r.cases - r.failures) + "/" + std::to_string(r.cases) + " cases";
        if (!r.first_failure.empty()) {
            detail += "; first failure: " + r.first_failure;
        }
        o.checks.push_back({r.name + ": " + what, r.pass(), detail});
    };
    add(lagrange_suite(cfg.seed, cfg.cases), "compose(f, lagrange_invert(f)) = w through w^-10");
    add(bell_suite(cfg.seed, cfg.cases), "Bell identity to order 12");
    add(roundtrip_suite(cfg.seed, cfg.cases), "g -> W -> g to order 8");
    return o;
}

inline Output execute(const RunConfig &cfg)
{
    if (cfg.command == "identities") {
        return run_identities(cfg);
    }
    const auto g = load(cfg);
    Output o;
    o.metadata = metadata_for(g);
    const auto &c = cfg.command;
    if (c == "i-function") {
        const auto I = relative_I(g);
        const auto n = split_and_normalize(I, g.policy.z_max);
        add_relative_records(o, "I", I.series);
        add_relative_records(o, "I1", n.I1);
        o.metadata["I1_is_unit"] = n.unit_I1;
        o.checks.push_back({"J = I / I_1 has the form z + tau + O(z^-1)", n.string_shape, ""});
    } else if (c == "tau-d") {
        const auto t = tau_D(g);
        for (const auto &[beta, v] : t.terms()) {
            add_class_records(o, "tau_D", g.policy, beta, 0, v);
        }
        o.metadata["tau_D_is_zero"] = t.is_zero();
    } else if (c == "mirror-map") {
        const auto md = mirror_data(g);
        add_relative_records(o, "tau", md.normalized.tau.series);
        add_scalar_records(o, "g", md.extraction.g, g.m);
        for (std::size_t i = 0; i < md.change.y_of_q.size(); ++i) {
            auto s = md.change.y_of_q[i];
            for (const auto &[beta, v] : s.terms()) {
                o.records.push_back({"y(q)[" + g.novikov[i] + "]", monomial_string(s.policy(), beta), beta, {}, {}, v});
            }
        }
        for (const auto &cc : md.extraction.contact_minus_one) {
            const auto &alg = *cc.value.algebra();
            for (std::size_t i = 0; i < alg.dimension(); ++i) {
                if (!cc.value[i].is_zero()) {
                    o.records.push_back({"contact_minus_one", "[" + alg.label(i) + "]_-1 " + monomial_string(g.policy, cc.beta),
                                         cc.beta, {{"contact", -1}}, {{"class", alg.label(i)}}, cc.value[i]});
                }
            }
        }
    } else if (c == "quantum-period") {
        const auto G = quantum_period(g);
        if (!G.label.empty()) {
            o.metadata["label"] = G.label;
        }
        add_period_records(o, "G", G, cfg.per_beta);
    } else if (c == "regularized-period") {
        const auto G = regularize(quantum_period(g));
        if (!G.label.empty()) {
            o.metadata["label"] = G.label;
        }
        add_period_records(o, "G_hat", G, cfg.per_beta);
    } else if (c == "proper-potential") {
        add_potential_records(o, proper_potential(g), cfg.per_beta);
    } else if (c == "classical-period") {
        add_period_records(o, "pi_W", classical_period(proper_potential(g)), cfg.per_beta);
    } else if (c == "verify") {
        return run_verify(g, cfg);
    } else {
        throw ConfigError("unknown subcommand '" + c + "'");
    }
    return o;
}

// Exit status: 0 when every requested check passes, 1 on a failed check,
// 2 on invalid input or a computation error.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Relative mirror maps, proper potentials and periods of log Calabi-Yau pairs", "mirrorgen"};
    RunConfig cfg;
    app.require_subcommand(1);
    app.add_option("-g,--geometry", cfg.geometry, "builtin geometry name or path to a geometry config");
    app.add_option("-N,--order", cfg.order, "truncation order (weighted Novikov degree)");
    app.add_option("--z-min", cfg.z_min, "lowest z exponent kept");
    app.add_option("--z-max", cfg.z_max, "highest z exponent allowed in I");
    app.add_option("-f,--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_flag("--per-beta", cfg.per_beta, "report coefficients per curve class instead of per degree");
    app.add_flag("--negative-control", cfg.negative_control, "verify: also run with one perturbed invariant");
    app.add_option("--seed", cfg.seed, "property-test and negative-control seed");
    app.add_option("--cases", cfg.cases, "property-test case count")->check(CLI::PositiveNumber);
    app.add_option("--invariants", cfg.invariants, "invariant table (CSV) replacing the geometry's one-point data");
    app.add_option("--emit-invariants", cfg.emit_invariants, "write the X one-point invariants to this CSV file");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"i-function", "relative I-function and I_1"},
        {"tau-d", "mirror map of the local model in D"},
        {"mirror-map", "relative mirror map, g(y) and y(q)"},
        {"quantum-period", "quantum period G(t)"},
        {"regularized-period", "regularized quantum period"},
        {"proper-potential", "proper Landau-Ginzburg potential W"},
        {"classical-period", "classical period of W"},
        {"verify", "period theorem, Delta_D identity and g <-> W round trip"},
        {"identities", "Lagrange and Bell property suites"}};
    for (const auto &[name, help] : commands) {
        app.add_subcommand(name, help)->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    try {
        const auto o = execute(cfg);
        write_output(o, cfg.format, out);
        return o.ok() ? 0 : 1;
    } catch (const TruncationError &e) {
        err << "truncation error: " << e.what() << "\n";
    } catch (const WindowError &e) {
        err << "window error: " << e.what() << " (lower --z-min)\n";
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

inline int run(int argc, char **argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

} // namespace mirrorgen::cli
