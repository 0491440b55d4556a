#include <sstream>

#include "doctest.h"
#include "ffs.hpp"
#include "graphmap.hpp"
#include "lamination.hpp"
#include "trees.hpp"
#include "whitehead.hpp"

using namespace relttk;

namespace {

Basis f2_basis() { return Basis({"a", "b"}, {{1}}); }

Basis f4_basis() { return Basis({"a", "b", "c", "d"}, {{1, 2}}); }

Aut example_aut() {
  Basis b = f4_basis();
  return Aut(b, {{1, 2}, {2}, {3, 1, 4}, {4, 3, 1, 4}});
}

GraphMap example_map() {
  FactorSystem a = make_system(f4_basis(), {{{1}, {2}}});
  return GraphMap::from_automorphism(example_aut(), {{1, 2}}, a);
}

// One-edge free splitting with vertex groups <a^k b> and <a>.
GrushkoTreePoint limit_splitting_tree(int k) {
  std::vector<GEdge> edges = {{0, 0, "u"}, {1, 1, "s"}, {0, 1, "t"}};
  EdgePath a_loop = {3, 2, -3};
  EdgePath b_loop;
  for (int i = 0; i < k; ++i) b_loop.insert(b_loop.end(), {3, -2, -3});
  b_loop.push_back(1);
  MarkedGraph g(f2_basis(), 2, edges, {reduce(a_loop), reduce(b_loop)});
  return GrushkoTreePoint(std::move(g), {1, 2}, {{3, 1}});
}

GrushkoTreePoint hnn_tree(const Rational& loop_len) {
  return GrushkoTreePoint(MarkedGraph::rose(f2_basis()), {1},
                          {{2, loop_len}});
}

// Growth one on the top stratum: a maps over b, b is fixed.
GraphMap unit_growth_map() {
  Basis b({"a", "b"}, {});
  Aut phi(b, {{1, 2}, {2}});
  return GraphMap::from_automorphism(phi, {{2}});
}

// Top stratum permutes two edges, so the matrix is irreducible but not
// primitive.
GraphMap permutation_top_map() {
  Basis b3({"a", "c", "d"}, {{1}});
  FactorSystem sys = make_system(b3, {{{1}}});
  Aut swap_like(b3, {{1}, {3}, {2, 1}});
  return GraphMap::from_automorphism(swap_like, {{1}}, sys);
}

std::set<Word> with_inverses(std::vector<Word> ws) {
  std::set<Word> out;
  for (const Word& w : ws) {
    out.insert(inverse(w));
    out.insert(std::move(w));
  }
  return out;
}

std::set<Word> expected_level_two() {
  return with_inverses({{1},
                        {2},
                        {3},
                        {4},
                        {3, 1},
                        {1, 4},
                        {4, 3},
                        {4, 1},
                        {1, 2},
                        {2, 4},
                        {2, 2}});
}

}  // namespace

TEST_CASE("attracting language small depths") {
  GraphMap rep = example_map();

  LeafLanguage l0 = attracting_language(rep, 0);
  CHECK(l0.depth == 0);
  CHECK(l0.words.empty());
  CHECK(l0.generator == "substitution iterates of c d");

  LeafLanguage l1 = attracting_language(rep, 1);
  CHECK(l1.depth == 1);
  CHECK(l1.words == with_inverses({{1}, {2}, {3}, {4}}));
  CHECK(l1.generator ==
        "substitution iterates of c d, stabilized after 2 rounds");
  CHECK(l1.contains({2}));
  CHECK(l1.contains({-3}));
  CHECK_FALSE(l1.contains({1, 4}));

  LeafLanguage l2 = attracting_language(rep, 2);
  CHECK(l2.depth == 2);
  CHECK(l2.words.size() == 22);
  CHECK(l2.words == expected_level_two());
  CHECK(l2.generator ==
        "substitution iterates of c d, stabilized after 3 rounds");
  CHECK(l2.at_depth(1) == l1.words);
}

TEST_CASE("language closure under subwords and inversion") {
  GraphMap rep = example_map();
  LeafLanguage l6 = attracting_language(rep, 6);
  CHECK(l6.words.size() > 22);
  for (const Word& w : l6.words) {
    CHECK(is_reduced(w));
    CHECK(l6.contains(inverse(w)));
    if (w.size() > 1) {
      CHECK(l6.contains(Word(w.begin(), w.end() - 1)));
      CHECK(l6.contains(Word(w.begin() + 1, w.end())));
    }
  }
}

TEST_CASE("substitution invariance of the language") {
  GraphMap rep = example_map();
  for (int m : {1, 2}) {
    LeafLanguage big = attracting_language(rep, m + 4);
    LeafLanguage small = attracting_language(rep, m);
    std::set<Word> image_subwords;
    for (const Word& w : big.words) {
      EdgePath p = rep.apply(w);
      int n = (int)p.size();
      for (int j = 1; j <= m; ++j)
        for (int i = 0; i + j <= n; ++i)
          image_subwords.insert(Word(p.begin() + i, p.begin() + i + j));
    }
    CHECK(image_subwords == small.words);
  }
}

TEST_CASE("stabilization rounds grow monotonically") {
  GraphMap rep = example_map();
  std::vector<std::set<Word>> rounds = attracting_language_rounds(rep, 2, 10);
  REQUIRE(rounds.size() == 11);
  CHECK(rounds[0] == with_inverses({{3}, {4}}));
  for (size_t i = 0; i + 1 < rounds.size(); ++i)
    CHECK(std::includes(rounds[i + 1].begin(), rounds[i + 1].end(),
                        rounds[i].begin(), rounds[i].end()));
  Word bb = {2, 2};
  CHECK_FALSE(rounds[2].count(bb));
  CHECK(rounds[3].count(bb));
  for (size_t i = 3; i < rounds.size(); ++i) CHECK(rounds[i] == rounds[3]);
  CHECK(rounds.back() == attracting_language(rep, 2).words);
}

TEST_CASE("square of the map has the same language") {
  GraphMap rep = example_map();
  Aut phi = example_aut();
  FactorSystem a = make_system(f4_basis(), {{{1}, {2}}});
  GraphMap rep_sq =
      GraphMap::from_automorphism(phi.compose(phi), {{1, 2}}, a);
  for (int m : {2, 3}) {
    LeafLanguage lone = attracting_language(rep, m);
    LeafLanguage ltwo = attracting_language(rep_sq, m);
    CHECK(languages_equal_at_depth(lone, ltwo, m));
  }
}

TEST_CASE("inverse map has a different language") {
  Basis b = f4_basis();
  Aut phi = example_aut();
  Aut inv(b, {{1, -2}, {2}, {3, 3, -4, 2, -1}, {4, -3}});
  for (Letter x = 1; x <= 4; ++x) {
    CHECK(phi.compose(inv).image(x) == Word{x});
    CHECK(inv.compose(phi).image(x) == Word{x});
  }

  FactorSystem a = make_system(b, {{{1}, {2}}});
  GraphMap rep = example_map();
  GraphMap rep_inv = GraphMap::from_automorphism(inv, {{1, 2}}, a);

  LeafLanguage forward = attracting_language(rep, 2);
  LeafLanguage backward = attracting_language(rep_inv, 2);
  CHECK(backward.contains({3, 3}));
  CHECK_FALSE(backward.contains({1, 2}));
  CHECK_FALSE(forward.contains({3, 3}));
  CHECK(languages_equal_at_depth(forward, backward, 1));
  CHECK_FALSE(languages_equal_at_depth(forward, backward, 2));
}

TEST_CASE("language depth guards") {
  GraphMap rep = example_map();
  CHECK_THROWS_WITH_AS(attracting_language(rep, -1),
                       "depth must be non-negative", input_error);
  LeafLanguage l1 = attracting_language(rep, 1);
  LeafLanguage l2 = attracting_language(rep, 2);
  CHECK_THROWS_WITH_AS(languages_equal_at_depth(l1, l2, 2),
                       "comparison depth exceeds a language depth",
                       input_error);
  CHECK_THROWS_WITH_AS(dual_language_simplicial(hnn_tree(1), -1),
                       "depth must be non-negative", input_error);
}

TEST_CASE("language needs an expanding primitive top stratum") {
  CHECK_THROWS_WITH_AS(attracting_language(unit_growth_map(), 2),
                       "top stratum does not grow", input_error);
  CHECK_THROWS_WITH_AS(attracting_language(permutation_top_map(), 2),
                       "top stratum matrix is not primitive", input_error);
}

TEST_CASE("dual language of simplicial trees") {
  GrushkoTreePoint hnn = hnn_tree(1);
  LeafLanguage powers = dual_language_simplicial(hnn, 3);
  CHECK(powers.depth == 3);
  CHECK(powers.words ==
        with_inverses({{1}, {1, 1}, {1, 1, 1}}));
  CHECK(dual_language_simplicial(hnn, 0).words.empty());

  GrushkoTreePoint split = limit_splitting_tree(2);
  LeafLanguage d2 = dual_language_simplicial(split, 2);
  CHECK(d2.words ==
        with_inverses({{1}, {2}, {1, 1}, {1, 2}, {2, 1}}));
  LeafLanguage d3 = dual_language_simplicial(split, 3);
  CHECK(d3.contains({1, 1, 2}));
  CHECK(d3.contains({2, 1, 1}));
  CHECK(d3.contains({1, 1, 1}));
  CHECK_FALSE(d3.contains({2, 2}));
  for (int m = 1; m <= 4; ++m) {
    LeafLanguage wide = dual_language_simplicial(split, m + 1);
    LeafLanguage tight = dual_language_simplicial(split, m);
    CHECK(wide.at_depth(m) == tight.words);
  }

  GrushkoTreePoint free_tree(MarkedGraph::rose(Basis({"a", "b"}, {})), {},
                             {{1, 1}, {2, 1}});
  CHECK(dual_language_simplicial(free_tree, 3).words.empty());
}

TEST_CASE("recurrence gaps along the expanding ray") {
  GraphMap rep = example_map();

  RecurrenceReport one = recurrence_gap(rep, 1, 5000);
  CHECK_FALSE(one.unbounded);
  CHECK(one.max_gap > 0);
  RecurrenceReport one_wide = recurrence_gap(rep, 1, 10000);
  CHECK(one_wide.max_gap >= one.max_gap);

  // direct scan of the same ray prefix reproduces the reported gap
  EdgePath ray = eigenray_prefix(rep, 3, 10000);
  long long rescanned = 0;
  for (Letter x = 1; x <= 4; ++x) {
    long long prev = -1;
    for (size_t i = 0; i < ray.size(); ++i) {
      if (ray[i] != x && ray[i] != -x) continue;
      if (prev >= 0 && (long long)i - prev > rescanned)
        rescanned = (long long)i - prev;
      prev = (long long)i;
    }
  }
  CHECK(one_wide.max_gap == rescanned);

  // the leaf makes longer and longer excursions into the non-growing
  // stratum, so the gap keeps creeping up with the window
  CHECK(recurrence_gap(rep, 1, 40000).max_gap >
        recurrence_gap(rep, 1, 1000).max_gap);

  RecurrenceReport two = recurrence_gap(rep, 2, 5000);
  CHECK_FALSE(two.unbounded);
  CHECK(two.max_gap >= one.max_gap);
  RecurrenceReport two_wide = recurrence_gap(rep, 2, 10000);
  CHECK(two_wide.max_gap >= two.max_gap);

  // a single-stratum primitive substitution is linearly recurrent and the
  // gap saturates
  Basis bf({"a", "b"}, {});
  Aut fib(bf, {{1, 2}, {1}});
  GraphMap fm = GraphMap::from_automorphism(fib, {});
  RecurrenceReport sat = recurrence_gap(fm, 2, 2000);
  CHECK_FALSE(sat.unbounded);
  CHECK(sat.max_gap > 0);
  CHECK(recurrence_gap(fm, 2, 4000).max_gap == sat.max_gap);

  RecurrenceReport tiny = recurrence_gap(rep, 1, 3);
  CHECK(tiny.unbounded);
  CHECK(tiny.note == "word 'a' occurs fewer than twice in the window");

  RecurrenceReport once = recurrence_gap(unit_growth_map(), 1, 1000);
  CHECK(once.unbounded);
  CHECK(once.note == "word 'a' occurs fewer than twice in the window");

  Basis b({"a", "b"}, {});
  Aut swap(b, {{2}, {1}});
  GraphMap sw = GraphMap::from_automorphism(swap, {});
  CHECK_THROWS_WITH_AS(recurrence_gap(sw, 1, 100),
                       "no expanding periodic direction in the top stratum",
                       input_error);

  CHECK_THROWS_WITH_AS(recurrence_gap(rep, 0, 100), "depth must be positive",
                       input_error);
  CHECK_THROWS_WITH_AS(recurrence_gap(rep, 1, 0), "window must be positive",
                       input_error);
}

TEST_CASE("language serialization is sorted and stable") {
  GraphMap rep = example_map();
  LeafLanguage l2 = attracting_language(rep, 2);
  std::string text = l2.to_text(f4_basis());

  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 22);
  CHECK(lines.front() == "a");
  bool has_ca = false, has_inverse_ab = false;
  for (const std::string& s : lines) {
    if (s == "c a") has_ca = true;
    if (s == "b' a'") has_inverse_ab = true;
  }
  CHECK(has_ca);
  CHECK(has_inverse_ab);
  CHECK(text == attracting_language(rep, 2).to_text(f4_basis()));

  LeafLanguage dual = dual_language_simplicial(hnn_tree(1), 2);
  CHECK(dual.to_text(f2_basis()) == "a\na a\na'\na' a'\n");
}
