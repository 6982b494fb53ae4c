#include <gtest/gtest.h>

#include "sgflow.hpp"

using namespace sgflow;

namespace {

SignedGraph triangle(int s1, int s2, int s3) {
    SignedGraph g(3);
    g.add_edge(0, 1, s1);
    g.add_edge(1, 2, s2);
    g.add_edge(2, 0, s3);
    return g;
}

} // namespace

TEST(GraphFormat, RoundTrip) {
    const std::string text = "p 3 4\ne 1 2 +\ne 2 3 -\ne 3 3 -\ne 1 2 +\n";
    SignedGraph g = parse_graph(text);
    EXPECT_EQ(g.num_vertices(), 3);
    EXPECT_EQ(g.num_edges(), 4);
    EXPECT_TRUE(g.edge(2).is_loop());
    EXPECT_EQ(g.num_negative(), 2);
    EXPECT_EQ(serialize_graph(g), text);
}

TEST(GraphFormat, CommentsAndBlankLines) {
    SignedGraph g = parse_graph("# header follows\n\np 2 1\n  # edge\ne 1 2 -\n");
    EXPECT_EQ(g.num_edges(), 1);
    EXPECT_EQ(g.sign(0), -1);
}

TEST(GraphFormat, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) {
        try {
            parse_graph(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    EXPECT_EQ(line_of("p 2 1\ne 1 3 +\n"), 2);          // unknown vertex
    EXPECT_EQ(line_of("p 2 1\ne 1 2 x\n"), 2);          // bad sign token
    EXPECT_EQ(line_of("e 1 2 +\n"), 1);                 // edge before header
    EXPECT_EQ(line_of("p 2 1\ne 1 2 +\ne 1 2 +\n"), 3); // too many edges
    EXPECT_EQ(line_of("p 2 2\ne 1 2 +\n"), 3);          // too few edges: reported at the last line
    EXPECT_EQ(line_of("p 2 1\nq\n"), 2);
    EXPECT_EQ(line_of("p 2 1\np 2 1\n"), 2);
}

TEST(GraphFormat, ContentHashTracksSerialization) {
    SignedGraph a = triangle(1, 1, -1), b = triangle(1, 1, -1), c = triangle(1, -1, 1);
    EXPECT_EQ(content_hash(a), content_hash(b));
    EXPECT_NE(content_hash(a), content_hash(c));
    EXPECT_EQ(content_hash(a).rfind("fnv1a64:", 0), 0u);
}

TEST(Switching, FlipsCutEdgesOnlyAndIsAnInvolution) {
    SignedGraph g(3);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, -1);
    g.add_edge(0, 0, -1);
    std::vector<int> s{0};
    SignedGraph h = switch_vertices(g, s);
    EXPECT_EQ(h.sign(0), -1);
    EXPECT_EQ(h.sign(1), -1);
    EXPECT_EQ(h.sign(2), -1); // loops never change
    EXPECT_EQ(switch_vertices(h, s), g);
    std::vector<int> bad{5};
    EXPECT_THROW(switch_vertices(g, bad), PreconditionError);
}

TEST(Orientation, CanonicalMatchesSignature) {
    SignedGraph g = parse_graph("p 2 3\ne 1 2 +\ne 1 2 -\ne 2 2 -\n");
    Orientation o = Orientation::canonical(g);
    EXPECT_TRUE(o.consistent_with(g));
    EXPECT_EQ(o[0], 1);
    EXPECT_EQ(o[1], -1);
    EXPECT_EQ(o[2], 1);
    EXPECT_EQ(o[3], 1);
    EXPECT_EQ(o.coefficient(g, 2, 1), 2); // negative loop
    EXPECT_TRUE(o.flip_set(g).empty());
    o.reverse_edge(1);
    EXPECT_TRUE(o.consistent_with(g));
    EXPECT_EQ(o.flip_set(g), std::vector<int>{1});
    o.flip_half(0);
    EXPECT_FALSE(o.consistent_with(g));
}

TEST(Orientation, SwitchingKeepsConsistency) {
    SignedGraph g = triangle(1, -1, 1);
    Orientation o = Orientation::from_flip_set(g, std::vector<int>{2});
    std::vector<int> s{1};
    EXPECT_TRUE(switch_orientation(g, o, s).consistent_with(switch_vertices(g, s)));
}

TEST(CheckFlow, IntegerConditions) {
    SignedGraph g = triangle(1, 1, 1);
    IntegerFlow f{Orientation::canonical(g), {1, 1, 1}};
    EXPECT_TRUE(check_flow(g, f, FlowKind::integer(2)));
    f.values = {2, 2, 2};
    EXPECT_FALSE(check_flow(g, f, FlowKind::integer(2)));
    EXPECT_TRUE(check_flow(g, f, FlowKind::integer(3)));
    f.values = {1, 1, 2};
    auto v = check_flow(g, f, FlowKind::integer(3));
    EXPECT_FALSE(v);
    EXPECT_NE(v.violation.find("boundary"), std::string::npos);
    f.values = {0, 0, 0};
    EXPECT_NE(check_flow(g, f, FlowKind::integer(3)).violation.find("support"), std::string::npos);
    f.values = {1, 1};
    EXPECT_FALSE(check_flow(g, f, FlowKind::integer(3)));
}

TEST(CheckFlow, NegativeLoopsAndSignedEdges) {
    // two negative loops joined by a positive edge: 1 on each loop, 2 on the path
    SignedGraph g = parse_graph("p 2 3\ne 1 1 -\ne 1 2 +\ne 2 2 -\n");
    Orientation o = Orientation::from_flip_set(g, std::vector<int>{1, 2});
    IntegerFlow f{o, {1, 2, 1}};
    EXPECT_TRUE(check_flow(g, f, FlowKind::integer(3)));
    EXPECT_FALSE(check_flow(g, f, FlowKind::integer(2)));
    EXPECT_TRUE(parity_law_holds(g, f));
}

TEST(CheckFlow, ModuloAndCircular) {
    SignedGraph g = triangle(1, 1, 1);
    IntegerFlow f{Orientation::canonical(g), {1, 1, 4}};
    EXPECT_TRUE(check_flow(g, f, FlowKind::modulo(3)));
    EXPECT_FALSE(check_flow(g, f, FlowKind::modulo(4)));
    f.values = {3, 3, 3};
    EXPECT_FALSE(check_flow(g, f, FlowKind::modulo(3))); // residue zero
    FlowAssignment c{Orientation::canonical(g), {Rational(3, 2), Rational(3, 2), Rational(3, 2)}};
    EXPECT_TRUE(check_flow(g, c, FlowKind::circular(Rational(5, 2))));
    EXPECT_FALSE(check_flow(g, c, FlowKind::circular(Rational(7, 3))));
    EXPECT_FALSE(check_flow(g, c, FlowKind::integer(3))); // not integral
    EXPECT_THROW(check_flow(g, c, FlowKind::circular(Rational(3, 2))), PreconditionError);
}

TEST(Flow, ReorientAndFold) {
    SignedGraph g = triangle(1, -1, -1);
    IntegerFlow f{Orientation::canonical(g), {-2, 1, 3}};
    Orientation t = Orientation::from_flip_set(g, std::vector<int>{0, 2});
    auto r = reorient(g, f, t);
    EXPECT_EQ(r.values, (std::vector<long long>{2, 1, -3}));
    EXPECT_EQ(boundary(g, r), boundary(g, f));
    auto p = fold_positive(f);
    for (long long v : p.values) EXPECT_GT(v, 0);
    EXPECT_EQ(boundary(g, p), boundary(g, f));
}

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
    EXPECT_EQ(parse_rational("-4/6"), Rational(-2, 3));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
    EXPECT_ANY_THROW(parse_rational("1/0"));
    EXPECT_ANY_THROW(parse_rational("x"));
    EXPECT_EQ(floor_of(Rational(-3, 2)), -2);
    EXPECT_EQ(ceil_of(Rational(-3, 2)), -1);
}

TEST(Rational, SmallRationalOverflowIsReported) {
    SmallRational big(INT64_MAX / 2, 1);
    EXPECT_THROW(big * big, RationalOverflow);
    SmallRational a(1, 3), b(1, 6);
    EXPECT_EQ((a + b).to_rational(), Rational(1, 2));
    EXPECT_TRUE(b < a);
}

TEST(Subgraph, EdgeMapAndRestriction) {
    SignedGraph g = triangle(1, -1, 1);
    auto s = edge_subgraph(g, std::vector<int>{2, 0});
    EXPECT_EQ(s.graph.num_vertices(), 3);
    EXPECT_EQ(s.edge_map, (std::vector<int>{2, 0}));
    auto r = vertex_restricted(g, [](int v) { return v != 2; });
    EXPECT_EQ(r.graph.num_edges(), 1);
    EXPECT_EQ(r.edge_map, std::vector<int>{0});
}
