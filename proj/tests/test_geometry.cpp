#include <string>

#include <gtest/gtest.h>

#include "mirrorgen/mirrorgen.hpp"

using namespace mirrorgen;

namespace {

std::string data_path(const std::string &name) { return std::string(MIRRORGEN_SOURCE_DIR) + "/tests/data/" + name; }

std::string replace_once(std::string text, const std::string &from, const std::string &to)
{
    const auto pos = text.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return pos == std::string::npos ? text : text.replace(pos, from.size(), to);
}

} // namespace

TEST(Geometry, BuiltinsLoadCleanly)
{
    for (const auto &name : builtin_geometry_names()) {
        const auto g = builtin_geometry(name);
        EXPECT_EQ(g.name, name);
        EXPECT_TRUE(check_geometry(g).empty()) << name;
    }
    EXPECT_TRUE(builtin_geometry("p2_cubic").warnings.empty());
    EXPECT_TRUE(builtin_geometry("p3_quartic").warnings.empty());
    EXPECT_THROW(builtin_geometry("p5_sextic"), ConfigError);
}

TEST(Geometry, NormalBundleAndPushforward)
{
    struct Case {
        std::string name, normal, push;
    };
    for (const auto &[name, normal, push] : std::vector<Case>{
             {"p2_cubic", "9 pt", "3 H"}, {"p3_quartic", "4 h", "4 H"}, {"blp3_k3", "-h", "-4 H2 + 4 Hh"}}) {
        const auto g = builtin_geometry(name);
        const auto s = g.state();
        EXPECT_EQ(s->normal, detail::parse_combination(normal, g.divisor)) << name;
        EXPECT_EQ(s->push(AlgebraElement::unit(g.divisor)), detail::parse_combination(push, g.ambient)) << name;
        if (g.ambient->top_degree() == g.divisor->top_degree() + 1) {
            EXPECT_EQ(s->push(AlgebraElement::unit(g.divisor)), g.divisor_class) << name;
        }
    }
    // The K3 sits in codimension two: its class is (4H + h)(h - H).
    const auto g = builtin_geometry("blp3_k3");
    const auto X = detail::parse_combination("4 H + h", g.ambient);
    EXPECT_EQ(g.state()->push(AlgebraElement::unit(g.divisor)), X * g.divisor_class);
}

TEST(Geometry, NegativeContactGeneratorWarns)
{
    const auto g = builtin_geometry("blp3_k3");
    ASSERT_EQ(g.warnings.size(), 1u);
    EXPECT_NE(g.warnings.front().find("q1"), std::string::npos);
    EXPECT_EQ(g.degree({2, 3}), 1);
    EXPECT_EQ(g.degree({1, 0}), -1);
}

TEST(Geometry, DegreeMatchesIntersectionPairing)
{
    for (const auto &name : builtin_geometry_names()) {
        const auto g = builtin_geometry(name);
        for (std::size_t i = 0; i < g.curves.size(); ++i) {
            EXPECT_EQ(Rational(g.m[i]), integrate(g.divisor_class * g.curves[i])) << name;
        }
    }
}

TEST(Geometry, InconsistentPairingIsRejected)
{
    try {
        load_geometry(read_text_file(data_path("bad_curve_pairing.ini")));
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find("intersection pairing"), std::string::npos);
    }
}

TEST(Geometry, MalformedConfigs)
{
    const std::string base = builtin_geometry_text("p2_cubic");
    EXPECT_THROW(load_geometry(replace_once(base, "m = 3", "m = 3\nm = 3")), ParseError);
    EXPECT_THROW(load_geometry(base + "\n[extras]\nfoo = 1\n"), ConfigError);
    EXPECT_THROW(load_geometry(replace_once(base, "m = 3", "m = 3\ncolour = red")), ConfigError);
    EXPECT_THROW(load_geometry(replace_once(base, "justification = elliptic curve divisor", "")), ConfigError);
    EXPECT_THROW(load_geometry(replace_once(base, "j_source = closed_form_projective", "j_source = oracle")),
                 ConfigError);
    EXPECT_THROW(load_geometry(replace_once(base, "H = 3 pt", "Q = 3 pt")), ConfigError);
    EXPECT_THROW(load_geometry(replace_once(base, "order = 8", "order = eight")), ParseError);
    EXPECT_THROW(load_geometry(replace_once(base, "[restriction]", "")), ConfigError);
    // A non-associative ambient table.
    EXPECT_THROW(load_geometry(replace_once(base, "H*H = H2", "H*H = H2\nH*H2 = 1")), ConfigError);
}

TEST(Geometry, OrderChangeMovesTheZFloor)
{
    auto g = builtin_geometry("p3_quartic");
    g.set_order(12);
    EXPECT_EQ(g.policy.max_total_weight, 12);
    EXPECT_EQ(g.policy.z_min, -16);
    EXPECT_EQ(g.state()->floor, -16);
}

TEST(InvariantTable, EmitAndParseRoundTrip)
{
    InvariantTable t;
    t.insert({"X", {1}, 1, "pt"}, Rational(-3, 4));
    t.insert({"X", {2}, 6, "pt"}, Rational(25, 7));
    t.insert({"D", {1, 0}, 0, "pt"}, Rational(1));
    const auto text = emit_invariant_table(t);
    const auto back = parse_invariant_table(text);
    EXPECT_EQ(back.entries, t.entries);
    EXPECT_EQ(emit_invariant_table(back), text);
}

TEST(InvariantTable, RejectsBadInput)
{
    const std::string header = "kind,class,psi_power,insertion,value\n";
    EXPECT_THROW(parse_invariant_table("kind,curve,psi,ins,value\nX,1,0,pt,1\n"), ParseError);
    EXPECT_THROW(parse_invariant_table(header + "X,1,0,pt,1\nX,1,0,pt,2\n"), ParseError);
    EXPECT_THROW(parse_invariant_table(header + "X,1,0,H,1\n"), ParseError);
    EXPECT_THROW(parse_invariant_table(header + "Y,1,0,pt,1\n"), ParseError);
    EXPECT_THROW(parse_invariant_table(header + "X,1,-1,pt,1\n"), ParseError);
    EXPECT_THROW(parse_invariant_table(header + "X,1,0,pt,1/0\n"), ParseError);
    EXPECT_THROW(parse_invariant_table(header + "X,1,0,pt\n"), ParseError);
    EXPECT_NO_THROW(parse_invariant_table("# comment\n\n" + header + "X,1,0,pt,1\n"));
}

TEST(InvariantTable, CurveShapeMustMatchNovikovBasis)
{
    auto g = builtin_geometry("p2_cubic");
    InvariantTable t;
    t.insert({"X", {1, 0}, 1, "pt"}, Rational(1));
    EXPECT_THROW(g.use_invariant_table(t), ConfigError);
}

TEST(Geometry, SectionFixtureLoads)
{
    const auto g = load_geometry(read_text_file(data_path("f2_section.ini")));
    EXPECT_EQ(g.warnings.size(), 1u);
    EXPECT_EQ(g.j_source, JSource::invariant_table);
    EXPECT_EQ(g.tau_source, TauSource::closed_form_from_one_point_invariants);
    const auto s = g.state();
    EXPECT_EQ(s->normal, detail::parse_combination("-2 pt", g.divisor));
    EXPECT_EQ(s->push(AlgebraElement::unit(g.divisor)), g.divisor_class);
}
