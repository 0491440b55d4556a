#include <random>

#include "doctest.h"
#include "graphmap.hpp"
#include "helpers.hpp"

using namespace relttk;
using namespace relttk::testutil;

namespace {

GraphMap example_map(const Basis& b) {
  FactorSystem a = make_system(b, {{parse_word("a", b), parse_word("b", b)}});
  return GraphMap::from_automorphism(example_aut(b), {{1, 2}}, a);
}

// unsigned counts of the chosen edges in a path
std::vector<BigInt> edge_counts(const EdgePath& p, const std::vector<int>& edges) {
  std::vector<BigInt> out(edges.size(), 0);
  for (int d : p)
    for (size_t i = 0; i < edges.size(); ++i)
      if (std::abs(d) == edges[i]) out[i] += 1;
  return out;
}

}  // namespace

TEST_CASE("tightening paths") {
  Basis b = basis_f2_a();
  std::vector<GEdge> edges = {{0, 1, "p"}, {0, 1, "q"}, {0, 1, "r"}};
  MarkedGraph g(b, 2, edges, {{1, -2}, {1, -3}}, 0);

  CHECK(g.tighten({1, -1, 2}) == EdgePath{2});
  CHECK(g.tighten({1, -2}) == EdgePath{1, -2});
  CHECK(g.tighten({1, -2, 2, -1}).empty());
  CHECK_THROWS_WITH(g.tighten({1, 2}), "path not composable at position 1");
  CHECK_THROWS_AS(g.tighten({1, 7}), input_error);
}

TEST_CASE("applying the worked map to paths") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);

  CHECK(gm.apply({3}) == EdgePath{3, 1, 4});
  CHECK(gm.apply_pow({3}, 0) == EdgePath{3});
  CHECK(gm.apply_pow({3}, 2) == EdgePath{3, 1, 4, 1, 2, 4, 3, 1, 4});

  // image of a reversed edge is the reversed image
  CHECK(gm.edge_image(-3) == EdgePath{-4, -1, -3});
  CHECK(gm.apply({3, -4}) == EdgePath{-4});

  // capped mode signals overflow instead of building huge paths
  CHECK(gm.apply_capped({3}, 2, 100).has_value());
  CHECK_FALSE(gm.apply_capped({3}, 30, 1000).has_value());
  CHECK(gm.apply_capped({3}, 1, 2) == std::nullopt);

  Aut induced = gm.induced_automorphism();
  for (int x = 1; x <= 4; ++x)
    CHECK(induced.image(x) == example_aut(b).image(x));
}

TEST_CASE("composition law on random paths") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    Word u = random_reduced_word(rng, 4, 6);
    EdgePath p = gm.graph().realize(u);
    int p1 = (int)(rng() % 3), p2 = (int)(rng() % 3);
    CHECK(gm.apply_pow(gm.apply_pow(p, p2), p1) == gm.apply_pow(p, p1 + p2));
  }
}

TEST_CASE("stratum matrices of the worked map") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  REQUIRE(gm.stratum_count() == 2);
  CHECK(gm.stratum_edges(0) == std::vector<int>{1, 2});
  CHECK(gm.stratum_edges(1) == std::vector<int>{3, 4});
  CHECK(gm.stratum_of(2) == 0);
  CHECK(gm.stratum_of(-4) == 1);

  StratumData low = gm.stratum_data(0);
  CHECK(low.matrix == IMatrix{{1, 0}, {1, 1}});
  CHECK(low.cls == MatrixClass::reducible);
  CHECK_FALSE(low.eg);

  StratumData top = gm.stratum_data(1);
  CHECK(top.matrix == IMatrix{{1, 1}, {1, 2}});
  CHECK(top.cls == MatrixClass::primitive);
  CHECK(top.eg);
  REQUIRE(top.pf.has_value());
  // lambda is the larger root of x^2 - 3x + 1
  auto poly = [](const Rational& x) { return x * x - 3 * x + 1; };
  CHECK(poly(top.pf->lambda.lo) <= 0);
  CHECK(poly(top.pf->lambda.hi) >= 0);
  CHECK(top.pf->lambda.lo > 1);

  // eigenvector residual stays tiny at the midpoints
  Rational lam = top.pf->lambda.mid();
  Rational v0 = top.pf->right[0].mid(), v1 = top.pf->right[1].mid();
  Rational r0 = v0 + v1 - lam * v0;  // row (1,1) of the matrix
  Rational r1 = v0 + 2 * v1 - lam * v1;
  Rational bound = Rational(1, BigInt("10000000000"));
  CHECK((r0 < 0 ? -r0 : r0) <= bound);
  CHECK((r1 < 0 ? -r1 : r1) <= bound);
}

TEST_CASE("matrix classifier covers all classes") {
  CHECK(classify_matrix({{0, 0}, {0, 0}}) == MatrixClass::zero);
  CHECK(classify_matrix({{1, 1}, {0, 1}}) == MatrixClass::reducible);
  CHECK(classify_matrix({{0, 1}, {1, 0}}) ==
        MatrixClass::irreducible_non_primitive);
  CHECK(classify_matrix({{1, 1}, {1, 2}}) == MatrixClass::primitive);
  // a fixed single edge is primitive with growth one
  CHECK(classify_matrix({{1}}) == MatrixClass::primitive);
}

TEST_CASE("turn calculus on the worked map") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);

  CHECK(gm.direction_map(3) == 3);
  CHECK(gm.direction_map(-3) == -4);
  CHECK(gm.direction_map(-4) == -4);
  CHECK(gm.direction_map(1) == 1);
  CHECK(gm.direction_map(-1) == -2);

  // the turn {c',d'} degenerates after one application
  CHECK(gm.degeneration_power(Turn::make(-3, -4)) == 1);
  CHECK_FALSE(gm.turn_legal(Turn::make(-3, -4)));

  // {c',a} and the turn inside the loop c stay legal
  CHECK(gm.turn_legal(Turn::make(-3, 1)));
  CHECK(gm.turn_legal(Turn::make(-3, 3)));
  CHECK(gm.turn_legal(Turn::make(-4, 3)));

  CHECK(gm.turns_in_path({3, 1, 4}) ==
        std::vector<Turn>{Turn::make(-3, 1), Turn::make(-1, 4)});
  CHECK(gm.turns_in_loop({3}).size() == 1);
  CHECK(gm.turns_in_loop({3}).front() == Turn::make(-3, 3));
}

TEST_CASE("relative train track checks pass on the worked map") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  RttReport report = gm.verify_rtt(8);
  CHECK(report.ok);
  CHECK(report.lower_path_bound == 8);
  REQUIRE(report.strata.size() == 2);
  CHECK_FALSE(report.strata[0].eg);
  CHECK(report.strata[1].eg);
  CHECK(report.strata[1].boundary_ok);
  CHECK(report.strata[1].lower_paths_ok);
  CHECK(report.strata[1].legality_ok);
}

TEST_CASE("boundary condition failure is witnessed") {
  // top images must start and end inside the top stratum; here the image
  // of g ends with the lower edge f
  Basis b({"e", "g", "f"}, {});
  Aut phi(b, {parse_word("e g", b), parse_word("g e g f", b),
              parse_word("f", b)});
  GraphMap gm = GraphMap::from_automorphism(phi, {{3}});
  StratumData top = gm.stratum_data(1);
  CHECK(top.matrix == IMatrix{{1, 1}, {1, 2}});
  CHECK(top.eg);

  RttReport report = gm.verify_rtt(6);
  CHECK_FALSE(report.ok);
  CHECK_FALSE(report.strata[1].boundary_ok);
  CHECK(report.strata[1].witness.find("g") != std::string::npos);
}

TEST_CASE("maximal invariant subgraph of the worked map") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  CHECK(gm.maximal_invariant_subgraph() == std::vector<int>{1, 2});

  // an expanding irreducible rose map leaves nothing invariant
  Basis f2 = basis_f2_a();
  Aut phi(f2, {parse_word("a b", f2), parse_word("b a b", f2)});
  GraphMap irr = GraphMap::from_automorphism(phi, {});
  CHECK(irr.maximal_invariant_subgraph().empty());

  // a fixed loop is picked up
  Aut fix(f2, {parse_word("a", f2), parse_word("b a", f2)});
  GraphMap gfix = GraphMap::from_automorphism(fix, {{1}});
  CHECK(gfix.maximal_invariant_subgraph() == std::vector<int>{1});
}

TEST_CASE("realized factor systems of subgraphs") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  const MarkedGraph& g = gm.graph();

  FactorSystem ab = realized_ffs(g, {1, 2});
  CHECK(ab.factor_count() == 1);
  CHECK(ffs_equal(ab, make_system(b, {{w("a", b), w("b", b)}})));

  FactorSystem whole = realized_ffs(g, {1, 2, 3, 4});
  CHECK(whole.factor_count() == 1);
  CHECK(whole.factors[0].rank() == 4);

  FactorSystem none = realized_ffs(g, {});
  CHECK(none.factor_count() == 0);

  // two loops in a rose share the vertex and give one rank two factor
  FactorSystem two = realized_ffs(g, {1, 3});
  CHECK(two.factor_count() == 1);
  CHECK(two.factors[0].rank() == 2);
  CHECK(zeta(two) == 3);
  CHECK(ffs_equal(two, make_system(b, {{w("a", b), w("c", b)}})));

  // loops at different vertices give separate factors
  Basis f2({"a", "b"}, {});
  std::vector<GEdge> edges = {{0, 0, "a"}, {1, 1, "b"}, {0, 1, "t"}};
  MarkedGraph bridge(f2, 2, edges, {{1}, {3, 2, -3}}, 0);
  FactorSystem split = realized_ffs(bridge, {1, 2});
  CHECK(split.factor_count() == 2);
  CHECK(zeta(split) == 2);
}

TEST_CASE("rank additivity through a multi vertex subgraph") {
  Basis b = basis_f2_a();
  std::vector<GEdge> edges = {{0, 1, "p"}, {0, 1, "q"}, {0, 1, "r"}};
  MarkedGraph g(b, 2, edges, {{1, -2}, {1, -3}}, 0);

  // the two strand subgraph {p,q} has one non contractible component of
  // rank one; one edge lies outside and the quotient has one vertex
  FactorSystem sys = realized_ffs(g, {1, 2});
  CHECK(sys.factor_count() == 1);
  CHECK(sys.factors[0].rank() == 1);

  // spanning tree alone realizes nothing
  CHECK(realized_ffs(g, {1}).factor_count() == 0);
}

TEST_CASE("collapse of the worked map") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  GraphMap coll = gm.collapse_to_a_traintrack();

  REQUIRE(coll.collapse_info().has_value());
  const CollapseInfo& info = *coll.collapse_info();
  CHECK(info.collapsed_edges == std::vector<int>{1, 2});
  REQUIRE(info.components.size() == 1);
  CHECK(info.components[0] == std::vector<int>{1, 2});
  REQUIRE(info.vertex_groups.size() == 1);
  CHECK(info.vertex_groups[0].rank() == 2);
  CHECK(info.vertex_group_basis[0] ==
        std::vector<Word>{w("a", b), w("b", b)});

  // the restriction to the vertex group is the expected automorphism
  const Aut& action = info.vertex_group_actions[0];
  CHECK(action.image(1) == Word{1, 2});
  CHECK(action.image(2) == Word{2});

  // collapsed rep has the peripheral subgraph as its single lower stratum
  CHECK(coll.stratum_count() == 2);
  CHECK(coll.stratum_edges(1) == std::vector<int>{3, 4});
  StratumData top = coll.stratum_data(1);
  CHECK(top.matrix == IMatrix{{1, 1}, {1, 2}});
  CHECK(top.cls == MatrixClass::primitive);

  // idempotent
  GraphMap again = coll.collapse_to_a_traintrack();
  CHECK(again.collapse_info()->collapsed_edges == info.collapsed_edges);

  CHECK(coll.peripheral_index() == 0);
}

TEST_CASE("collapse rejects a mismatched declared system") {
  Basis b = basis_f4_ab();
  FactorSystem empty = make_system(b, {});
  GraphMap gm = GraphMap::from_automorphism(example_aut(b), {{1, 2}}, empty);
  CHECK_THROWS_AS(gm.collapse_to_a_traintrack(), verify_error);

  GraphMap no_decl = GraphMap::from_automorphism(example_aut(b), {{1, 2}});
  CHECK_THROWS_AS(no_decl.collapse_to_a_traintrack(), input_error);
}

TEST_CASE("collapse with two separate vertex groups") {
  // two invariant loops at different vertices joined by a fixed bridge
  Basis b({"a", "b"}, {{1}, {2}});
  std::vector<GEdge> edges = {{0, 0, "a"}, {1, 1, "b"}, {0, 1, "t"}};
  MarkedGraph g(b, 2, edges, {{1}, {3, 2, -3}}, 0);
  FactorSystem a2 = make_system(b, {{parse_word("a", b)},
                                    {parse_word("b", b)}});
  GraphMap gm(g, {0, 1}, {{1}, {2}, {3}}, {{1}, {1, 2}}, a2);

  CHECK(gm.maximal_invariant_subgraph() == std::vector<int>{1, 2});
  GraphMap coll = gm.collapse_to_a_traintrack();
  const CollapseInfo& info = *coll.collapse_info();
  CHECK(info.collapsed_edges == std::vector<int>{1, 2});
  REQUIRE(info.components.size() == 2);
  CHECK(info.components[0] == std::vector<int>{1});
  CHECK(info.components[1] == std::vector<int>{2});
  CHECK(info.vertex_groups.size() == 2);
  CHECK(info.vertex_groups[0].rank() == 1);
  CHECK(info.vertex_groups[1].rank() == 1);
  CHECK(info.vertex_group_basis[1] == std::vector<Word>{w("b", b)});
}

TEST_CASE("occurrence vectors match explicit images") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b).collapse_to_a_traintrack();

  CHECK(gm.occurrence_vector(3, 0) == std::vector<BigInt>{1, 0});
  CHECK(gm.occurrence_vector(3, 1) == std::vector<BigInt>{1, 1});
  CHECK(gm.occurrence_vector(3, 2) == std::vector<BigInt>{2, 3});
  CHECK(gm.occurrence_vector(4, 1) == std::vector<BigInt>{1, 2});

  for (int e : {3, 4})
    for (int p = 0; p <= 6; ++p)
      CHECK(gm.occurrence_vector(e, p) ==
            edge_counts(gm.apply_pow({e}, p), gm.stratum_edges(1)));

  CHECK_THROWS_AS(gm.occurrence_vector(1, 2), input_error);
}

TEST_CASE("bad graph maps are rejected") {
  Basis b = basis_f2_a();
  MarkedGraph rose = MarkedGraph::rose(b);

  // image collapses an edge
  CHECK_THROWS_AS(GraphMap(rose, {0}, {{1, -1}, {2}}, {}), input_error);
  // not a homotopy equivalence
  CHECK_THROWS_AS(GraphMap(rose, {0}, {{1, 2}, {2, 1}}, {}), input_error);
  // filtration element not invariant
  CHECK_THROWS_AS(GraphMap(rose, {0}, {{1, 2}, {2}}, {{1}}), input_error);
  // filtration not increasing
  CHECK_THROWS_AS(GraphMap(rose, {0}, {{1, 2}, {2}}, {{2}, {2}}), input_error);
}
