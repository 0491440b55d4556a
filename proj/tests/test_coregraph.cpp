#include <set>

#include "coregraph.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace relttk;
using namespace relttk::testutil;

namespace {

// Brute-force subgroup elements: reduced products of up to `depth` factors
// drawn from the generators and their inverses.
std::set<Word> enumerate_subgroup(const std::vector<Word>& gens, int depth) {
  std::set<Word> cur{Word{}};
  std::vector<Word> step;
  for (auto& g : gens) {
    step.push_back(reduce(g));
    step.push_back(inverse(reduce(g)));
  }
  std::set<Word> all = cur;
  for (int d = 0; d < depth; ++d) {
    std::set<Word> next;
    for (auto& u : cur)
      for (auto& s : step) next.insert(concat(u, s));
    cur = std::move(next);
    all.insert(cur.begin(), cur.end());
  }
  return all;
}

}  // namespace

TEST_CASE("single-letter subgroup") {
  Basis b = basis_f2_a();
  CoreGraph g = CoreGraph::from_generators(b, {w("a", b)});
  CHECK(g.rank() == 1);
  CHECK(g.vertex_count() == 1);
  CHECK(g.contains(w("a a a", b)));
  CHECK(g.contains(w("a'", b)));
  CHECK_FALSE(g.contains(w("b", b)));
  CHECK(g.contains(Word{}));
}

TEST_CASE("full rose") {
  Basis b = basis_f4_ab();
  CoreGraph g = CoreGraph::rose(b, {1, 2, 3, 4});
  CHECK(g.rank() == 4);
  CHECK(g.contains(w("d c' a b", b)));
}

TEST_CASE("subgroup of even-length words in a and b prefixes") {
  Basis b = basis_f2_a();
  CoreGraph g = CoreGraph::from_generators(b, {w("a a", b), w("a b", b)});
  CHECK(g.rank() == 2);

  // words in <aa, ab> have even length, so aba and a are both outside
  CHECK_FALSE(g.contains(w("a", b)));
  CHECK_FALSE(g.contains(w("a b a", b)));
  CHECK(g.contains(w("a a", b)));
  CHECK(g.contains(w("a b", b)));
  CHECK(g.contains(w("a a a b", b)));
  CHECK(g.contains(w("a b a b", b)));
  CHECK(g.contains(w("a a b' a'", b)));

  // agree with brute-force enumeration on every short word
  std::set<Word> oracle = enumerate_subgroup({w("a a", b), w("a b", b)}, 6);
  std::vector<Word> queue{Word{}};
  for (size_t i = 0; i < queue.size(); ++i) {
    Word u = queue[i];
    if (u.size() >= 4) continue;
    for (Letter x : {1, -1, 2, -2}) {
      if (!u.empty() && u.back() == -x) continue;
      Word v = u;
      v.push_back(x);
      queue.push_back(v);
    }
  }
  for (auto& u : queue) CHECK(g.contains(u) == (oracle.count(u) > 0));
}

TEST_CASE("conjugate membership reads closed loops anywhere") {
  Basis b = basis_f2_a();
  CoreGraph g = CoreGraph::from_generators(b, {w("b a b'", b)});
  CHECK_FALSE(g.contains(w("a", b)));
  CHECK(g.contains_conjugate(CyclicWord(w("a", b))));
  CHECK(g.contains_conjugate(CyclicWord(w("b a b'", b))));
  CHECK(g.contains_conjugate(CyclicWord(w("a a a", b))));
  CHECK_FALSE(g.contains_conjugate(CyclicWord(w("b", b))));
  CHECK_FALSE(g.contains_conjugate(CyclicWord(w("a b", b))));
}

TEST_CASE("cored graph drops the hanging base path") {
  Basis b = basis_f2_a();
  CoreGraph g = CoreGraph::from_generators(b, {w("b a b'", b)});
  CHECK(g.vertex_count() == 2);
  CoreGraph c = g.cored();
  CHECK(c.vertex_count() == 1);
  CHECK(c.rank() == 1);
}

TEST_CASE("immersion test decides conjugate inclusion of subgroups") {
  Basis b = basis_f4_ab();
  CoreGraph ab = CoreGraph::rose(b, {1, 2}).cored();
  CoreGraph a = CoreGraph::rose(b, {1}).cored();
  CoreGraph conj_a = CoreGraph::from_generators(b, {w("c a c'", b)}).cored();
  CoreGraph cd = CoreGraph::rose(b, {3, 4}).cored();

  CHECK(a.immerses_into(ab));
  CHECK(conj_a.immerses_into(ab));
  CHECK_FALSE(ab.immerses_into(a));
  CHECK_FALSE(cd.immerses_into(ab));
  CHECK(ab.immerses_into(ab));

  // <a^2> sits inside <a> but not conversely
  CoreGraph a2 = CoreGraph::from_generators(b, {w("a a", b)}).cored();
  CHECK(a2.immerses_into(a));
  CHECK_FALSE(a.immerses_into(a2));
}

TEST_CASE("generators read off the spanning tree regenerate the subgroup") {
  Basis b = basis_f2_a();
  std::vector<Word> gens = {w("a a", b), w("a b", b)};
  CoreGraph g = CoreGraph::from_generators(b, gens);
  std::vector<Word> regen = g.generators();
  CHECK(regen.size() == 2);
  CoreGraph g2 = CoreGraph::from_generators(b, regen);
  CHECK(g == g2);
  for (auto& u : regen) CHECK(g.contains(u));
}

TEST_CASE("dot output names the graph and lists labeled edges") {
  Basis b = basis_f2_a();
  CoreGraph g = CoreGraph::from_generators(b, {w("a", b)});
  std::string dot = g.to_dot("core");
  CHECK(dot.find("digraph core") != std::string::npos);
  CHECK(dot.find("label=\"a\"") != std::string::npos);
}
