#pragma once

// Pair geometries (X, D): algebras, divisor data, Novikov basis and the
// sources of J-function and tau_D data. Loaded from INI text; three
// geometries are built in.

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <boost/tokenizer.hpp>

#include "mirrorgen/algebra.hpp"
#include "mirrorgen/errors.hpp"
#include "mirrorgen/rational.hpp"
#include "mirrorgen/relative.hpp"
#include "mirrorgen/series.hpp"

namespace mirrorgen {

// ---------------------------------------------------------------------------
// Invariant tables

struct InvariantKey {
    std::string kind; // X, D or X_tau
    Exponent curve;
    int psi_power = 0;
    std::string insertion = "pt";

    friend auto operator<=>(const InvariantKey &, const InvariantKey &) = default;
};

struct InvariantTable {
    std::map<InvariantKey, Rational> entries;

    bool empty() const { return entries.empty(); }
    std::size_t size() const { return entries.size(); }

    void insert(const InvariantKey &key, const Rational &value)
    {
        if (!entries.emplace(key, value).second) {
            throw ParseError("duplicate invariant entry (" + key.kind + ", " + exponent_string(key.curve) + ", psi^" +
                             std::to_string(key.psi_power) + ", " + key.insertion + ")");
        }
    }

    bool has_kind(const std::string &kind) const
    {
        return std::any_of(entries.begin(), entries.end(), [&](const auto &e) { return e.first.kind == kind; });
    }

    std::vector<std::pair<InvariantKey, Rational>> of_kind(const std::string &kind) const
    {
        std::vector<std::pair<InvariantKey, Rational>> out;
        for (const auto &[k, v] : entries) {
            if (k.kind == kind) {
                out.emplace_back(k, v);
            }
        }
        return out;
    }
};

inline std::vector<std::string> split_words(const std::string &s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) {
        out.push_back(w);
    }
    return out;
}

inline std::vector<int> parse_int_list(const std::string &s, const std::string &what)
{
    std::vector<int> out;
    for (const auto &w : split_words(s)) {
        try {
            std::size_t used = 0;
            int v = std::stoi(w, &used);
            if (used != w.size()) {
                throw std::invalid_argument(w);
            }
            out.push_back(v);
        } catch (const std::exception &) {
            throw ParseError(what + ": '" + w + "' is not an integer");
        }
    }
    return out;
}

// CSV with header kind,class,psi_power,insertion,value; class exponents are
// space separated, values exact rationals.
inline InvariantTable parse_invariant_table(const std::string &text)
{
    InvariantTable table;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    using Tok = boost::tokenizer<boost::escaped_list_separator<char>>;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') {
            continue;
        }
        std::vector<std::string> cells;
        try {
            Tok tok(line);
            for (const auto &c : tok) {
                auto b = c.find_first_not_of(" \t");
                auto e = c.find_last_not_of(" \t");
                cells.push_back(b == std::string::npos ? "" : c.substr(b, e - b + 1));
            }
        } catch (const std::exception &ex) {
            throw ParseError("invariant table line " + std::to_string(lineno) + ": " + ex.what());
        }
        if (!header_seen) {
            const std::vector<std::string> expected{"kind", "class", "psi_power", "insertion", "value"};
            if (cells != expected) {
                throw ParseError("invariant table header must be kind,class,psi_power,insertion,value");
            }
            header_seen = true;
            continue;
        }
        if (cells.size() != 5) {
            throw ParseError("invariant table line " + std::to_string(lineno) + ": expected 5 fields");
        }
        InvariantKey key;
        key.kind = cells[0];
        if (key.kind != "X" && key.kind != "D" && key.kind != "X_tau") {
            throw ParseError("invariant table line " + std::to_string(lineno) + ": unknown kind '" + key.kind + "'");
        }
        key.curve = parse_int_list(cells[1], "invariant table line " + std::to_string(lineno));
        auto psi = parse_int_list(cells[2], "invariant table line " + std::to_string(lineno));
        if (psi.size() != 1 || psi[0] < 0) {
            throw ParseError("invariant table line " + std::to_string(lineno) + ": bad psi power");
        }
        key.psi_power = psi[0];
        key.insertion = cells[3];
        if (key.insertion != "pt") {
            throw ParseError("invariant table line " + std::to_string(lineno) + ": only point insertions are supported");
        }
        Rational value;
        try {
            value = parse_rational(cells[4]);
        } catch (const ParseError &e) {
            throw ParseError("invariant table line " + std::to_string(lineno) + ": " + e.what());
        }
        table.insert(key, value);
    }
    return table;
}

inline std::string emit_invariant_table(const InvariantTable &table)
{
    std::ostringstream os;
    os << "kind,class,psi_power,insertion,value\n";
    for (const auto &[k, v] : table.entries) {
        std::string cls;
        for (std::size_t i = 0; i < k.curve.size(); ++i) {
            cls += (i ? " " : "") + std::to_string(k.curve[i]);
        }
        os << k.kind << "," << cls << "," << k.psi_power << "," << k.insertion << "," << to_string(v) << "\n";
    }
    return os.str();
}

inline std::string read_text_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---------------------------------------------------------------------------
// Pair geometry

enum class JSource { closed_form_projective, toric_hypergeometric, invariant_table };
enum class TauSource { zero, closed_form_from_one_point_invariants, table };

inline std::string to_string(JSource s)
{
    switch (s) {
    case JSource::closed_form_projective:
        return "closed_form_projective";
    case JSource::toric_hypergeometric:
        return "toric_hypergeometric";
    case JSource::invariant_table:
        return "invariant_table";
    }
    return "?";
}

inline std::string to_string(TauSource s)
{
    switch (s) {
    case TauSource::zero:
        return "zero";
    case TauSource::closed_form_from_one_point_invariants:
        return "closed_form_from_one_point_invariants";
    case TauSource::table:
        return "table";
    }
    return "?";
}

// A toric divisor or bundle class together with its pairing against the
// Novikov basis.
struct ToricFactor {
    AlgebraElement cls;
    std::vector<int> functional;
};

struct ToricData {
    std::vector<ToricFactor> bundles;
    std::vector<ToricFactor> denominators;
    ToricFactor relative;
};

struct PairGeometry {
    std::string name;
    AlgebraPtr ambient;
    AlgebraPtr divisor;
    RestrictionMap restriction;
    AlgebraElement divisor_class;
    std::vector<std::string> novikov;
    std::vector<int> m;
    std::vector<AlgebraElement> log_classes;
    std::vector<AlgebraElement> curves;
    std::optional<ToricData> toric;
    JSource j_source = JSource::closed_form_projective;
    int projective_dim = 0;
    std::optional<AlgebraElement> hyperplane;
    TauSource tau_source = TauSource::zero;
    std::string justification;
    InvariantTable invariants;
    TruncationPolicy policy;
    std::vector<std::string> warnings;

    int degree(const Exponent &beta) const { return pairing(m, beta); }

    StatePtr state() const { return RelativeStateSpace::make(restriction, divisor_class, policy.z_min); }

    // Order N and the matching default z window.
    // Deep enough for the hypergeometric factors up to the given order.
    int default_z_min(int order) const { return -(order + ambient->top_degree() + 1); }

    void set_order(int order, std::optional<int> z_min = std::nullopt)
    {
        policy.max_total_weight = order;
        policy.z_min = z_min.value_or(default_z_min(order));
        policy.validate();
    }

    // Replaces the J-function source by an invariant table.
    void use_invariant_table(InvariantTable table)
    {
        for (const auto &[k, v] : table.entries) {
            if (k.curve.size() != novikov.size()) {
                throw ConfigError("invariant " + exponent_string(k.curve) + " does not match the Novikov basis of '" +
                                  name + "'");
            }
        }
        invariants = std::move(table);
        if (invariants.has_kind("X")) {
            j_source = JSource::invariant_table;
        }
    }
};

namespace detail {

inline AlgebraElement parse_combination(const std::string &text, const AlgebraPtr &alg)
{
    std::string spaced;
    for (char c : text) {
        if (c == '+' || c == '-' || c == '*') {
            spaced += ' ';
            spaced += c;
            spaced += ' ';
        } else {
            spaced += c;
        }
    }
    auto out = AlgebraElement::zero(alg);
    Rational sign = 1;
    Rational coef = 1;
    bool pending = false;
    bool any = false;
    auto flush_scalar = [&] {
        if (pending) {
            out += AlgebraElement::unit(alg) * (sign * coef);
        }
        sign = 1;
        coef = 1;
        pending = false;
    };
    for (const auto &tok : split_words(spaced)) {
        if (tok == "+" || tok == "-") {
            flush_scalar();
            sign = tok == "-" ? -1 : 1;
        } else if (tok == "*") {
            continue;
        } else if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
            coef *= parse_rational(tok);
            pending = true;
            any = true;
        } else {
            out += AlgebraElement::basis(alg, alg->index_of(tok)) * (sign * coef);
            sign = 1;
            coef = 1;
            pending = false;
            any = true;
        }
    }
    flush_scalar();
    if (!any) {
        throw ParseError("empty class expression '" + text + "' in '" + alg->name() + "'");
    }
    return out;
}

inline std::vector<std::string> split_bar(const std::string &s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '|') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

using ptree = boost::property_tree::ptree;

inline const ptree *find_section(const ptree &root, const std::string &name)
{
    for (const auto &[k, v] : root) {
        if (k == name) {
            return &v;
        }
    }
    return nullptr;
}

inline const ptree &require_section(const ptree &root, const std::string &name)
{
    const auto *s = find_section(root, name);
    if (!s) {
        throw ConfigError("missing section [" + name + "]");
    }
    return *s;
}

inline std::optional<std::string> find_key(const ptree &section, const std::string &key)
{
    for (const auto &[k, v] : section) {
        if (k == key) {
            return v.data();
        }
    }
    return std::nullopt;
}

inline std::string require_key(const ptree &section, const std::string &sname, const std::string &key)
{
    auto v = find_key(section, key);
    if (!v) {
        throw ConfigError("[" + sname + "] is missing '" + key + "'");
    }
    return *v;
}

inline AlgebraPtr load_algebra(const ptree &sec, const std::string &sname)
{
    const auto name = find_key(sec, "name").value_or(sname);
    const auto labels = split_words(require_key(sec, sname, "basis"));
    const auto degrees = parse_int_list(require_key(sec, sname, "degrees"), "[" + sname + "] degrees");
    const auto unit = require_key(sec, sname, "unit");
    const auto point = find_key(sec, "point");
    auto index = [&](const std::string &l) -> std::size_t {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) {
            throw ConfigError("[" + sname + "] unknown basis label '" + l + "'");
        }
        return static_cast<std::size_t>(it - labels.begin());
    };
    // Structure constants are parsed against a provisional algebra so the
    // right-hand sides can use the same expression syntax.
    auto provisional = std::make_shared<GradedAlgebra>(name, labels, degrees,
                                                       std::vector<GradedAlgebra::StructureConstant>{}, index(unit));
    std::vector<GradedAlgebra::StructureConstant> constants;
    for (const auto &[key, val] : sec) {
        auto star = key.find('*');
        if (star == std::string::npos) {
            if (key != "name" && key != "basis" && key != "degrees" && key != "unit" && key != "point") {
                throw ConfigError("[" + sname + "] unknown key '" + key + "'");
            }
            continue;
        }
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        const auto i = index(trim(key.substr(0, star)));
        const auto j = index(trim(key.substr(star + 1)));
        const std::string rhs = val.data();
        const auto prod = trim(rhs) == "0" ? AlgebraElement::zero(provisional) : parse_combination(rhs, provisional);
        bool any = false;
        for (std::size_t k = 0; k < labels.size(); ++k) {
            if (!prod[k].is_zero()) {
                constants.push_back({i, j, k, prod[k]});
                any = true;
            }
        }
        if (!any) {
            constants.push_back({i, j, 0, Rational(0)});
        }
    }
    auto alg = std::make_shared<GradedAlgebra>(name, labels, degrees, constants, index(unit),
                                               point ? std::optional<std::size_t>(index(*point)) : std::nullopt);
    alg->validate();
    return alg;
}

inline ToricFactor parse_toric_factor(const std::string &text, const AlgebraPtr &alg, std::size_t rank,
                                      const std::string &what)
{
    auto parts = split_bar(text);
    if (parts.size() != 2) {
        throw ParseError(what + ": expected 'class | pairing'");
    }
    ToricFactor f{parse_combination(parts[0], alg), parse_int_list(parts[1], what)};
    if (f.functional.size() != rank) {
        throw ConfigError(what + ": pairing needs one entry per Novikov variable");
    }
    return f;
}

} // namespace detail

inline JSource parse_j_source(const std::string &s)
{
    if (s == "closed_form_projective") {
        return JSource::closed_form_projective;
    }
    if (s == "toric_hypergeometric") {
        return JSource::toric_hypergeometric;
    }
    if (s == "invariant_table") {
        return JSource::invariant_table;
    }
    throw ConfigError("unknown j_source '" + s + "'");
}

inline TauSource parse_tau_source(const std::string &s)
{
    if (s == "zero") {
        return TauSource::zero;
    }
    if (s == "closed_form_from_one_point_invariants") {
        return TauSource::closed_form_from_one_point_invariants;
    }
    if (s == "table") {
        return TauSource::table;
    }
    throw ConfigError("unknown tau_d_source '" + s + "'");
}

// Every load-time invariant; returns the names of the ones that fail.
inline std::vector<std::string> check_geometry(const PairGeometry &g)
{
    std::vector<std::string> bad;
    for (const auto &p : g.ambient->check_invariants()) {
        bad.push_back("ambient algebra: " + p);
    }
    for (const auto &p : g.divisor->check_invariants()) {
        bad.push_back("divisor algebra: " + p);
    }
    for (const auto &p : g.restriction.check_invariants()) {
        bad.push_back(p);
    }
    const std::size_t r = g.novikov.size();
    if (g.m.size() != r) {
        bad.push_back("m vector needs one entry per Novikov variable");
    }
    if (!g.log_classes.empty() && g.log_classes.size() != r) {
        bad.push_back("log_classes needs one class per Novikov variable");
    }
    if (!g.curves.empty()) {
        if (g.curves.size() != r) {
            bad.push_back("curves needs one class per Novikov variable");
        } else {
            for (std::size_t i = 0; i < r; ++i) {
                if (integrate(g.divisor_class * g.curves[i]) != g.m[i]) {
                    bad.push_back("D.beta from m does not match the intersection pairing on curve " +
                                  std::to_string(i));
                }
                for (std::size_t j = 0; j < g.log_classes.size() && g.log_classes.size() == r; ++j) {
                    if (integrate(g.log_classes[j] * g.curves[i]) != (i == j ? 1 : 0)) {
                        bad.push_back("log class " + std::to_string(j) + " is not dual to curve " + std::to_string(i));
                    }
                }
                if (g.toric) {
                    auto check = [&](const ToricFactor &f, const std::string &what) {
                        if (integrate(f.cls * g.curves[i]) != f.functional[i]) {
                            bad.push_back("toric " + what + " pairing does not match the intersection pairing");
                        }
                    };
                    for (const auto &f : g.toric->bundles) {
                        check(f, "bundle");
                    }
                    for (const auto &f : g.toric->denominators) {
                        check(f, "denominator");
                    }
                    check(g.toric->relative, "relative");
                }
            }
        }
    }
    if (g.toric && g.toric->relative.functional != g.m) {
        bad.push_back("relative toric divisor pairing differs from m");
    }
    if (g.j_source == JSource::toric_hypergeometric && !g.toric) {
        bad.push_back("toric_hypergeometric J source needs a [toric] section");
    }
    if (g.j_source == JSource::closed_form_projective) {
        if (r != 1 || g.projective_dim < 1 || !g.hyperplane) {
            bad.push_back("closed_form_projective needs one Novikov variable, projective_dim and hyperplane");
        } else if (g.ambient->dimension() != static_cast<std::size_t>(g.projective_dim + 1)) {
            bad.push_back("closed_form_projective: ambient algebra is not a projective space of that dimension");
        }
    }
    if (g.tau_source == TauSource::zero && g.justification.empty()) {
        bad.push_back("tau_d_source = zero requires a justification");
    }
    if (g.divisor_class.algebra() != g.ambient) {
        bad.push_back("divisor class must live in the ambient algebra");
    }
    return bad;
}

inline PairGeometry load_geometry(const std::string &config_text)
{
    using namespace detail;
    ptree root;
    try {
        std::istringstream is(config_text);
        boost::property_tree::read_ini(is, root);
    } catch (const boost::property_tree::ini_parser_error &e) {
        throw ParseError(std::string("geometry config: ") + e.what());
    }
    for (const auto &[k, v] : root) {
        const bool known = k == "algebra.ambient" || k == "algebra.divisor" || k == "restriction" || k == "pair" ||
                           k == "toric" || k == "truncation" || k == "geometry";
        if (!known) {
            throw ConfigError("unknown section [" + k + "]");
        }
        if (!v.data().empty()) {
            throw ConfigError("key '" + k + "' outside of a section");
        }
    }
    PairGeometry g;
    if (const auto *s = find_section(root, "geometry")) {
        g.name = find_key(*s, "name").value_or("");
    }
    g.ambient = load_algebra(require_section(root, "algebra.ambient"), "algebra.ambient");
    g.divisor = load_algebra(require_section(root, "algebra.divisor"), "algebra.divisor");

    RationalMatrix rm(g.divisor->dimension(), RationalVector(g.ambient->dimension(), Rational(0)));
    rm[g.divisor->unit_index()][g.ambient->unit_index()] = 1;
    for (const auto &[k, v] : require_section(root, "restriction")) {
        const auto s = g.ambient->index_of(k);
        const auto image = v.data() == "0" ? AlgebraElement::zero(g.divisor) : parse_combination(v.data(), g.divisor);
        for (std::size_t t = 0; t < g.divisor->dimension(); ++t) {
            rm[t][s] = image[t];
        }
    }
    g.restriction = RestrictionMap(g.ambient, g.divisor, rm);

    const auto &pair = require_section(root, "pair");
    for (const auto &[k, v] : pair) {
        static const std::vector<std::string> keys{"divisor",        "novikov",   "m",
                                                   "curves",         "log_classes", "j_source",
                                                   "projective_dim", "hyperplane", "tau_d_source",
                                                   "justification"};
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
            throw ConfigError("[pair] unknown key '" + k + "'");
        }
    }
    g.divisor_class = parse_combination(require_key(pair, "pair", "divisor"), g.ambient);
    g.novikov = split_words(require_key(pair, "pair", "novikov"));
    if (g.novikov.empty()) {
        throw ConfigError("[pair] novikov must name at least one variable");
    }
    g.m = parse_int_list(require_key(pair, "pair", "m"), "[pair] m");
    if (auto c = find_key(pair, "curves")) {
        for (const auto &part : split_bar(*c)) {
            g.curves.push_back(parse_combination(part, g.ambient));
        }
    }
    if (auto c = find_key(pair, "log_classes")) {
        for (const auto &part : split_bar(*c)) {
            g.log_classes.push_back(parse_combination(part, g.ambient));
        }
    }
    g.j_source = parse_j_source(require_key(pair, "pair", "j_source"));
    if (auto p = find_key(pair, "projective_dim")) {
        auto v = parse_int_list(*p, "[pair] projective_dim");
        if (v.size() != 1) {
            throw ConfigError("[pair] projective_dim must be one integer");
        }
        g.projective_dim = v[0];
    }
    if (auto h = find_key(pair, "hyperplane")) {
        g.hyperplane = parse_combination(*h, g.ambient);
    }
    g.tau_source = parse_tau_source(find_key(pair, "tau_d_source").value_or("zero"));
    g.justification = find_key(pair, "justification").value_or("");

    if (const auto *t = find_section(root, "toric")) {
        ToricData td;
        bool has_relative = false;
        for (const auto &[k, v] : *t) {
            if (k.rfind("bundle", 0) == 0) {
                td.bundles.push_back(parse_toric_factor(v.data(), g.ambient, g.novikov.size(), "[toric] " + k));
            } else if (k.rfind("denominator", 0) == 0) {
                td.denominators.push_back(parse_toric_factor(v.data(), g.ambient, g.novikov.size(), "[toric] " + k));
            } else if (k == "relative") {
                td.relative = parse_toric_factor(v.data(), g.ambient, g.novikov.size(), "[toric] relative");
                has_relative = true;
            } else {
                throw ConfigError("[toric] unknown key '" + k + "'");
            }
        }
        if (!has_relative) {
            throw ConfigError("[toric] needs a relative divisor");
        }
        g.toric = td;
    }

    std::vector<int> weights(g.novikov.size(), 1);
    int order = 8;
    std::optional<int> z_min;
    int z_max = 1;
    if (const auto *t = find_section(root, "truncation")) {
        if (auto w = find_key(*t, "weights")) {
            weights = parse_int_list(*w, "[truncation] weights");
        }
        if (auto o = find_key(*t, "order")) {
            order = parse_int_list(*o, "[truncation] order").at(0);
        }
        if (auto z = find_key(*t, "z_min")) {
            z_min = parse_int_list(*z, "[truncation] z_min").at(0);
        }
        if (auto z = find_key(*t, "z_max")) {
            z_max = parse_int_list(*z, "[truncation] z_max").at(0);
        }
    }
    g.policy = TruncationPolicy::make(g.novikov, weights, order, z_min.value_or(g.default_z_min(order)), z_max);

    for (std::size_t i = 0; i < g.m.size(); ++i) {
        if (g.m[i] < 0) {
            g.warnings.push_back("negative m entry for " + g.novikov[i] + " (D.beta = " + std::to_string(g.m[i]) +
                                 " on that generator)");
        }
    }
    auto bad = check_geometry(g);
    if (!bad.empty()) {
        std::string msg = "geometry '" + g.name + "' rejected: " + bad.front();
        for (std::size_t i = 1; i < bad.size(); ++i) {
            msg += "; " + bad[i];
        }
        throw ConfigError(msg);
    }
    return g;
}

namespace builtin {

inline const char *p2_cubic = R"ini(
[geometry]
name = p2_cubic

[algebra.ambient]
name = P2
basis = 1 H H2
degrees = 0 1 2
unit = 1
point = H2
H*H = H2

[algebra.divisor]
name = E
basis = 1 pt
degrees = 0 1
unit = 1
point = pt

[restriction]
H = 3 pt

[pair]
divisor = 3 H
novikov = y
m = 3
curves = H
log_classes = H
j_source = closed_form_projective
projective_dim = 2
hyperplane = H
tau_d_source = zero
justification = elliptic curve divisor

[truncation]
weights = 3
order = 8
)ini";

inline const char *p3_quartic = R"ini(
[geometry]
name = p3_quartic

[algebra.ambient]
name = P3
basis = 1 H H2 H3
degrees = 0 1 2 3
unit = 1
point = H3
H*H = H2
H*H2 = H3

[algebra.divisor]
name = K3
basis = 1 h pt
degrees = 0 1 2
unit = 1
point = pt
h*h = 4 pt

[restriction]
H = h
H2 = 4 pt

[pair]
divisor = 4 H
novikov = y
m = 4
curves = H2
log_classes = H
j_source = closed_form_projective
projective_dim = 3
hyperplane = H
tau_d_source = zero
justification = K3 surface divisor

[truncation]
weights = 4
order = 8
)ini";

// P = P(O(-1) + O) over P3 with h^2 = H h; the pair is a quartic-type
// hypersurface 4H + h relative to the K3 cut out by the section h - H.
inline const char *blp3_k3 = R"ini(
[geometry]
name = blp3_k3

[algebra.ambient]
name = P(O(-1)+O)
basis = 1 H h H2 Hh H3 H2h H3h
degrees = 0 1 1 2 2 3 3 4
unit = 1
point = H3h
H*H = H2
H*h = Hh
h*h = Hh
H*H2 = H3
H*Hh = H2h
h*H2 = H2h
h*Hh = H2h
H*H2h = H3h
h*H3 = H3h
h*H2h = H3h
H2*Hh = H3h
Hh*Hh = H3h

[algebra.divisor]
name = K3
basis = 1 h pt
degrees = 0 1 2
unit = 1
point = pt
h*h = 4 pt

[restriction]
H = h
H2 = 4 pt

[pair]
divisor = h - H
novikov = q1 q0
m = -1 1
curves = H2h - H3 | H3
log_classes = H | h
j_source = toric_hypergeometric
tau_d_source = zero
justification = K3 surface divisor

[toric]
bundle = 4 H + h | 4 1
denominator.1 = H | 1 0
denominator.2 = H | 1 0
denominator.3 = H | 1 0
denominator.4 = H | 1 0
denominator.5 = h | 0 1
relative = h - H | -1 1

[truncation]
weights = 1 1
order = 8
)ini";

} // namespace builtin

inline std::vector<std::string> builtin_geometry_names() { return {"p2_cubic", "p3_quartic", "blp3_k3"}; }

inline std::string builtin_geometry_text(const std::string &name)
{
    if (name == "p2_cubic") {
        return builtin::p2_cubic;
    }
    if (name == "p3_quartic") {
        return builtin::p3_quartic;
    }
    if (name == "blp3_k3") {
        return builtin::blp3_k3;
    }
    throw ConfigError("unknown builtin geometry '" + name + "'");
}

inline PairGeometry builtin_geometry(const std::string &name) { return load_geometry(builtin_geometry_text(name)); }

// A builtin name or a path to a config file.
inline PairGeometry geometry_from_source(const std::string &source)
{
    const auto names = builtin_geometry_names();
    if (std::find(names.begin(), names.end(), source) != names.end()) {
        return builtin_geometry(source);
    }
    auto g = load_geometry(read_text_file(source));
    if (g.name.empty()) {
        g.name = source;
    }
    return g;
}

} // namespace mirrorgen
