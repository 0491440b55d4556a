#include "doctest.h"
#include "helpers.hpp"
#include "whitehead.hpp"

using namespace relttk;
using namespace relttk::testutil;

namespace {

GraphMap example_map(const Basis& b) {
  FactorSystem a = make_system(b, {{parse_word("a", b), parse_word("b", b)}});
  return GraphMap::from_automorphism(example_aut(b), {{1, 2}}, a);
}

// a <-> 1, b <-> 2, c <-> 3, d <-> 4 in the running example
Turn t(int x, int y) { return Turn::make(x, y); }

GraphMap witness_map(const Basis& b) {
  // fixes the loop a and keeps c, d among themselves, so the larger
  // factor containing them is invariant; the relative graph at the
  // vertex leaves the peripheral node isolated
  Aut phi(b, {parse_word("a", b), parse_word("c d", b),
              parse_word("d c d", b)});
  FactorSystem a = make_system(b, {{parse_word("a", b)}});
  return GraphMap::from_automorphism(phi, {{1}}, a);
}

}  // namespace

TEST_CASE("taken turns of the worked map") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  std::set<Turn> turns = taken_turns(gm);

  std::set<Turn> expected = {t(-1, 2), t(-3, 1), t(-1, 4), t(-4, 3),
                             t(-2, 2), t(-4, 1), t(-2, 4)};
  CHECK(turns == expected);

  // seeds named directly from the edge images
  CHECK(turns.count(t(-1, 2)));
  CHECK(turns.count(t(-3, 1)));
  CHECK(turns.count(t(-1, 4)));
  CHECK(turns.count(t(-4, 3)));
  // added only by the closure
  CHECK(turns.count(t(-2, 4)));
  CHECK(turns.count(t(-4, 1)));
}

TEST_CASE("taken turns are a fixed point of the closure") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  std::set<Turn> turns = taken_turns(gm);

  std::set<Turn> again = turns;
  for (const Turn& x : turns) {
    Turn y = gm.image_turn(x);
    if (y.d1 != y.d2) again.insert(y);
  }
  for (int e = 1; e <= 4; ++e)
    for (const Turn& x : gm.turns_in_path(gm.edge_image(e))) again.insert(x);
  CHECK(again == turns);
}

TEST_CASE("turns crossed by iterated images stay inside the closure") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  std::set<Turn> turns = taken_turns(gm);
  for (int e = 1; e <= 4; ++e)
    for (int p = 1; p <= 6; ++p)
      for (const Turn& x : gm.turns_in_path(gm.apply_pow({e}, p)))
        CHECK(turns.count(x));
}

TEST_CASE("identity map takes no turns") {
  Basis b = basis_f2_a();
  Aut id(b, {parse_word("a", b), parse_word("b", b)});
  CHECK(taken_turns(GraphMap::from_automorphism(id, {})).empty());
}

TEST_CASE("whitehead graph of the worked map") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  WhiteheadGraph wh = whitehead_graph(gm, 0);

  CHECK(wh.nodes == std::vector<int>{-4, -3, -2, -1, 1, 2, 3, 4});
  CHECK_FALSE(wh.has_peripheral_node);
  CHECK(wh.edges.size() == 7);

  // the edge set is the taken turns at this vertex
  std::set<Turn> turns = taken_turns(gm);
  CHECK(std::set<Turn>(wh.edges.begin(), wh.edges.end()) == turns);

  ConnectivityReport report = connectivity_report(wh);
  CHECK_FALSE(report.connected);
  REQUIRE(report.components.size() == 2);
  // gates {c, c', a, d'} and {a', b, b', d}
  CHECK(report.components[0] == std::vector<int>{-4, -3, 1, 3});
  CHECK(report.components[1] == std::vector<int>{-2, -1, 2, 4});

  CHECK_THROWS_AS(whitehead_graph(gm, 7), input_error);
}

TEST_CASE("connected whitehead graph of an expanding rose map") {
  Basis b = basis_f2_a();
  Aut phi(b, {parse_word("a b", b), parse_word("b a b", b)});
  GraphMap gm = GraphMap::from_automorphism(phi, {});
  ConnectivityReport report = connectivity_report(whitehead_graph(gm, 0));
  CHECK(report.connected);
  CHECK(leaf_classes_at_vertex(gm, 0).size() == 1);
}

TEST_CASE("relative whitehead graph of the worked map") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  GraphMap coll = gm.collapse_to_a_traintrack();

  WhiteheadGraph rel = relative_whitehead_graph(coll, gm, 0);
  CHECK(rel.has_peripheral_node);
  CHECK(rel.nodes == std::vector<int>{-4, -3, 0, 3, 4});
  CHECK(rel.labels == std::vector<std::string>{"d'", "c'", "v_A", "c", "d"});

  std::set<Turn> edges(rel.edges.begin(), rel.edges.end());
  std::set<Turn> expected = {t(-3, 0), t(0, 4), t(-4, 3), t(-4, 0)};
  CHECK(edges == expected);

  ConnectivityReport report = connectivity_report(rel);
  CHECK(report.connected);
  REQUIRE(report.components.size() == 1);
  // one leaf class through the peripheral node
  CHECK(std::count(report.components[0].begin(), report.components[0].end(),
                   0) == 1);
}

TEST_CASE("relative graph equals the plain graph at untouched vertices") {
  Basis b = basis_f2_a();
  Aut phi(b, {parse_word("a b", b), parse_word("b a b", b)});
  FactorSystem none = make_system(b, {});
  GraphMap gm = GraphMap::from_automorphism(phi, {}, none);
  GraphMap coll = gm.collapse_to_a_traintrack();
  CHECK(coll.collapse_info()->collapsed_edges.empty());

  WhiteheadGraph rel = relative_whitehead_graph(coll, gm, 0);
  WhiteheadGraph plain = whitehead_graph(coll, 0);
  CHECK(rel.nodes == plain.nodes);
  CHECK(rel.edges == plain.edges);
  CHECK_FALSE(rel.has_peripheral_node);
}

TEST_CASE("disconnected relative whitehead graph") {
  Basis b({"a", "c", "d"}, {{1}});
  GraphMap gm = witness_map(b);
  GraphMap coll = gm.collapse_to_a_traintrack();

  // the top matrix alone looks fine
  StratumData top = coll.stratum_data(coll.top_stratum());
  CHECK(top.matrix == IMatrix{{1, 1}, {1, 2}});
  CHECK(top.cls == MatrixClass::primitive);

  WhiteheadGraph rel = relative_whitehead_graph(coll, gm, 0);
  CHECK(rel.nodes == std::vector<int>{-3, -2, 0, 2, 3});
  ConnectivityReport report = connectivity_report(rel);
  CHECK_FALSE(report.connected);
  REQUIRE(report.components.size() == 2);
  // the peripheral node sits alone
  CHECK(report.components[0] == std::vector<int>{-3, -2, 2, 3});
  CHECK(report.components[1] == std::vector<int>{0});
}

TEST_CASE("mismatched pairs of representatives are rejected") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  GraphMap coll = gm.collapse_to_a_traintrack();

  Basis b3({"a", "c", "d"}, {{1}});
  GraphMap other = witness_map(b3);
  GraphMap other_coll = other.collapse_to_a_traintrack();

  CHECK_THROWS_AS(relative_whitehead_graph(coll, other, 0), input_error);
  CHECK_THROWS_AS(relative_whitehead_graph(other_coll, gm, 0), input_error);
  // the uncollapsed map cannot stand in for the collapsed one
  CHECK_THROWS_AS(relative_whitehead_graph(gm, gm, 0), input_error);
}

TEST_CASE("connectivity report on a hand built graph") {
  WhiteheadGraph g;
  g.nodes = {1, 2, 3};
  g.labels = {"a", "b", "c"};
  ConnectivityReport report = connectivity_report(g);
  CHECK_FALSE(report.connected);
  CHECK(report.components.size() == 3);

  g.edges = {Turn::make(1, 3)};
  report = connectivity_report(g);
  CHECK(report.components.size() == 2);
  CHECK(report.components[0] == std::vector<int>{1, 3});

  g.edges = {Turn::make(1, 5)};
  CHECK_THROWS_AS(connectivity_report(g), input_error);
}

TEST_CASE("certificate for the worked map") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  GraphMap coll = gm.collapse_to_a_traintrack();
  FactorSystem a = make_system(b, {{w("a", b), w("b", b)}});

  IrreducibilityCertificate cert = irreducibility_certificate(coll, gm, a);
  CHECK(cert.realized_lower_equals_A);
  CHECK(cert.top_matrix_primitive);
  CHECK(cert.relative_wh_connected_everywhere);
  CHECK(cert.verdict == CertificateVerdict::certified_necessary_conditions);
  CHECK(cert.witness.empty());
  CHECK(to_string(cert.verdict) == "certified_necessary_conditions");

  // the same map measured against the empty system fails the first check
  FactorSystem none = make_system(b, {});
  IrreducibilityCertificate miss = irreducibility_certificate(coll, gm, none);
  CHECK_FALSE(miss.realized_lower_equals_A);
  CHECK(miss.verdict == CertificateVerdict::failed);
  CHECK_FALSE(miss.witness.empty());
}

TEST_CASE("certificate fails on a non growing top stratum") {
  Basis b({"a", "c"}, {{1}});
  Aut id(b, {parse_word("a", b), parse_word("c", b)});
  FactorSystem a = make_system(b, {{parse_word("a", b)}});
  GraphMap gm = GraphMap::from_automorphism(id, {{1}}, a);
  GraphMap coll = gm.collapse_to_a_traintrack();

  IrreducibilityCertificate cert = irreducibility_certificate(coll, gm, a);
  CHECK(cert.realized_lower_equals_A);
  CHECK_FALSE(cert.top_matrix_primitive);
  CHECK(cert.verdict == CertificateVerdict::failed);
  CHECK(cert.witness == "top stratum does not grow");
}

TEST_CASE("certificate fails on a disconnected relative graph") {
  Basis b({"a", "c", "d"}, {{1}});
  GraphMap gm = witness_map(b);
  GraphMap coll = gm.collapse_to_a_traintrack();
  FactorSystem a = make_system(b, {{parse_word("a", b)}});

  IrreducibilityCertificate cert = irreducibility_certificate(coll, gm, a);
  CHECK(cert.realized_lower_equals_A);
  CHECK(cert.top_matrix_primitive);
  CHECK_FALSE(cert.relative_wh_connected_everywhere);
  CHECK(cert.verdict == CertificateVerdict::failed);
  CHECK(cert.witness.find("vertex 0") != std::string::npos);
}

TEST_CASE("certificate certifies a fully expanding rose map") {
  Basis b = basis_f2_a();
  Aut phi(b, {parse_word("a b", b), parse_word("b a b", b)});
  FactorSystem none = make_system(b, {});
  GraphMap gm = GraphMap::from_automorphism(phi, {}, none);
  GraphMap coll = gm.collapse_to_a_traintrack();
  IrreducibilityCertificate cert = irreducibility_certificate(coll, gm, none);
  CHECK(cert.verdict == CertificateVerdict::certified_necessary_conditions);
}

TEST_CASE("eigenray prefixes of the worked map") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);

  CHECK(eigenray_prefix(gm, 3, 9) == EdgePath{3, 1, 4, 1, 2, 4, 3, 1, 4});
  CHECK(eigenray_prefix(gm, 4, 4) == EdgePath{4, 3, 1, 4});
  CHECK(eigenray_prefix(gm, 3, 1) == EdgePath{3});

  EdgePath longer = eigenray_prefix(gm, 3, 64);
  for (int len : {1, 2, 5, 9, 33}) {
    EdgePath shorter = eigenray_prefix(gm, 3, len);
    CHECK(std::equal(shorter.begin(), shorter.end(), longer.begin()));
  }

  // a' maps into the orbit of b' and never comes back
  CHECK_THROWS_WITH(eigenray_prefix(gm, -1, 3),
                    "direction never returns to itself: a' -> b' -> b'");
  CHECK_THROWS_AS(eigenray_prefix(gm, 9, 3), input_error);
  CHECK_THROWS_AS(eigenray_prefix(gm, 3, 0), input_error);
}

TEST_CASE("eigenray through a direction fixed only at a higher power") {
  Basis b = basis_f2_a();
  Aut phi(b, {parse_word("b", b), parse_word("a b", b)});
  GraphMap gm = GraphMap::from_automorphism(phi, {});
  // a -> b -> ab, so a returns to itself at power two
  CHECK(eigenray_prefix(gm, 1, 5) == EdgePath{1, 2, 2, 1, 2});
}

TEST_CASE("fixed edges span finite rays") {
  Basis b = basis_f2_a();
  Aut id(b, {parse_word("a", b), parse_word("b", b)});
  GraphMap gm = GraphMap::from_automorphism(id, {});
  CHECK(eigenray_prefix(gm, 1, 1) == EdgePath{1});
  CHECK_THROWS_AS(eigenray_prefix(gm, 1, 5), input_error);
}

TEST_CASE("leaf classes at the vertex of the worked map") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  std::vector<std::vector<int>> classes = leaf_classes_at_vertex(gm, 0);
  REQUIRE(classes.size() == 2);
  CHECK(classes[0].size() == 4);
  CHECK(classes[1].size() == 4);
}

TEST_CASE("whitehead graphs emit dot") {
  Basis b = basis_f4_ab();
  GraphMap gm = example_map(b);
  GraphMap coll = gm.collapse_to_a_traintrack();
  WhiteheadGraph rel = relative_whitehead_graph(coll, gm, 0);

  std::string dot = rel.to_dot();
  CHECK(dot.find("graph whitehead {") == 0);
  CHECK(dot.find("\"v_A\" [peripheries=2];") != std::string::npos);
  CHECK(dot.find("\"c'\" -- \"v_A\";") != std::string::npos);
  CHECK(dot.find("\"d'\" -- \"c\";") != std::string::npos);
  // deterministic
  CHECK(rel.to_dot() == dot);

  std::string plain = whitehead_graph(gm, 0).to_dot();
  CHECK(plain.find("peripheries") == std::string::npos);
  CHECK(plain.find("\"a'\" -- \"b\";") != std::string::npos);
}
