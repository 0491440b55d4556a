#pragma once

#include <map>
#include <string>
#include <vector>

#include "ffs.hpp"
#include "graph.hpp"
#include "graphmap.hpp"
#include "pf.hpp"

namespace relttk {

// Simplicial point of the deformation space: a marked graph, a collapsed
// subgraph whose components carry the vertex groups, and positive rational
// lengths on the surviving edges.  The tree is the universal cover with
// every lift of the collapsed part crushed to a point, so collapsed edges
// carry no length and the vertex groups are exactly the free factors
// realized by the collapsed components.
class GrushkoTreePoint {
 public:
  GrushkoTreePoint(MarkedGraph graph, std::vector<int> collapsed,
                   std::map<int, Rational> lengths);

  const MarkedGraph& graph() const { return graph_; }
  const std::vector<int>& collapsed() const { return collapsed_; }
  const std::map<int, Rational>& lengths() const { return lengths_; }

  bool is_collapsed(int e) const;  // signed edge ids allowed
  Rational length(int e) const;    // zero on collapsed edges
  Rational volume() const;
  FactorSystem vertex_groups() const;

 private:
  MarkedGraph graph_;
  std::vector<int> collapsed_;
  std::map<int, Rational> lengths_;
  std::vector<char> in_k_;  // per positive edge
};

// Translation length of the conjugacy class [g] in the tree.  The marking
// realizes [g] as an immersed loop; collapsing the invariant subgraph maps
// that loop onto the axis without creating backtracking (distinct lifts of a
// surviving edge stay distinct), so the length is the total length of the
// non-collapsed edges the loop crosses, with multiplicity.
Rational translation_length(const GrushkoTreePoint& t, const CyclicWord& g);

// Right action of an automorphism: the same graph, collapse and lengths with
// the marking precomposed by phi.  Satisfies
// translation_length(act(t, phi), g) == translation_length(t, phi(g)).
// Rejects automorphisms that do not preserve the peripheral blocks.
GrushkoTreePoint act(const GrushkoTreePoint& t, const Aut& phi);

// Rescale every edge length by a positive factor.
GrushkoTreePoint scale(const GrushkoTreePoint& t, const Rational& factor);

// True iff [g] is elliptic, i.e. its translation length vanishes; for a
// rational current this decides whether the supporting line is collapsed.
bool rational_dual(const GrushkoTreePoint& t, const CyclicWord& g);

// Certified enclosure of a limit of normalized lengths.
struct LengthEnclosure {
  Rational lower{0};
  Rational upper{0};
  int power_used = 0;
  bool exact = false;  // the iterated loop became legal, value is sharp
  std::string warning;
};

// Enclosure of lim_p l([phi^p g]) / lambda^p where lengths come from the
// growth metric on the collapsed representative: left eigenvector lengths on
// the top edges, zero on the collapsed part.  The upper bound is the value
// at the current power; the lower bound subtracts the largest possible
// future cancellation, 2 C I_p / (lambda^p (lambda - 1)) with I_p the count
// of illegal turns in the current loop and C a cancellation bound for one
// application.  A loop with no illegal turns scales exactly, so the result
// is then sharp up to the eigenvector enclosure width.
LengthEnclosure stable_length(const GraphMap& rep, const CyclicWord& g,
                              const Rational& tol = Rational(1, 1000000),
                              int p_max = 60, size_t cap = 30000000);

// One row per power p: enclosures of l(phi^p g) / lambda^p for each sample
// class, with successive sup differences and a comparison against the
// stable_length enclosures.
struct TreeNsReport {
  std::vector<CyclicWord> sample;
  std::vector<std::vector<Interval>> spectra;  // spectra[p][i]
  std::vector<Rational> sup_differences;       // outer bound per step
  bool cauchy = false;
  std::vector<LengthEnclosure> stable;
  Rational limit_gap{0};
  bool limits_match = false;
  std::string warning;
  std::string to_csv(const Basis& basis) const;
};

TreeNsReport tree_ns_experiment(const GraphMap& rep, const GrushkoTreePoint& t,
                                const std::vector<CyclicWord>& sample,
                                int p_max,
                                const Rational& tol = Rational(1, 1000000),
                                size_t cap = 20000000);

// Step-by-step audit of a duality chain: consecutive factor systems must be
// comparable, each witness must be carried by the smaller system of its
// step, and the witness must then be elliptic in both trees of the step.
struct DualityStep {
  int step = 0;
  int smaller = 0;  // index into the chain
  bool dual_in_first = false;
  bool dual_in_second = false;
  bool ok = false;
};

struct DualityChainReport {
  bool ok = false;
  std::vector<DualityStep> steps;
};

DualityChainReport duality_chain_check(
    const std::vector<FactorSystem>& chain,
    const std::vector<GrushkoTreePoint>& trees,
    const std::vector<CyclicWord>& witnesses);

}  // namespace relttk
