#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graphmap.hpp"
#include "lamination.hpp"
#include "trees.hpp"
#include "words.hpp"

namespace relttk {

// Finite-depth relative current: non-negative rational weights on the
// reduced non-peripheral words of length at most the depth.  Construction
// checks flip invariance and both families of shift consistency equations
// exactly, so every value of this type is a genuine depth-limited cylinder
// table and the checks never depend on floating point.
class RelativeCurrent {
 public:
  RelativeCurrent(Basis basis, int depth, std::map<Word, Rational> weights);

  const Basis& basis() const { return basis_; }
  int depth() const { return depth_; }
  const std::map<Word, Rational>& weights() const { return weights_; }
  Rational weight(const Word& w) const;  // zero when absent

  // Conjugacy class the table was counted from, when there is one.  Only
  // counted currents can be pushed forward.
  const std::optional<Word>& seed() const { return seed_; }

  RelativeCurrent truncated(int m) const;

  // word,weight rows sorted by the canonical word order
  std::string to_csv(int digits = 9) const;

 private:
  Basis basis_;
  int depth_ = 0;
  std::map<Word, Rational> weights_;
  std::optional<Word> seed_;

  friend RelativeCurrent rational_current(const CyclicWord&, int,
                                          const Basis&);
};

// Exact occurrence counts of the non-peripheral length <= m subwords in one
// period of the bi-infinite words built from alpha and from its inverse.
// Rejects peripheral classes and proper powers.
RelativeCurrent rational_current(const CyclicWord& alpha, int m,
                                 const Basis& basis);

// Counted current of the image class at the same depth.  Defined only for
// currents carrying a seed class.
RelativeCurrent pushforward(const Aut& phi, const RelativeCurrent& eta);

// Limiting subword frequencies of the expanding substitution ray, certified
// at a finite power: the table is accepted once its support matches the
// attracting language, the top letter frequencies sit inside the rigorous
// eigenvector enclosure, and one more substitution round moves no weight by
// more than the certification slack.  Normalized so the non-peripheral
// length-one weights sum to one.
RelativeCurrent frequency_current(const GraphMap& rep, int m);

// Sum of the weights at one word length.
Rational norm(const RelativeCurrent& eta, int level);

// Sup distance between the level-one normalizations, over words of length
// <= m.  A surrogate metric on projective classes at finite depth.
Rational projective_distance(const RelativeCurrent& a,
                             const RelativeCurrent& b, int m);

// Words of length <= m with positive weight.
std::set<Word> support_at_depth(const RelativeCurrent& eta, int m);

// True iff every supported word of length <= m is readable inside the
// vertex groups of the tree, i.e. the support lies in the dual language.
bool is_dual_at_depth(const GrushkoTreePoint& t, const RelativeCurrent& eta,
                      int m);

// One row per power n = 1..n_max of the north-south iteration: projective
// distance from the pushed seed current to the frequency current, and the
// level-one mass growth ratio.  Iteration runs on explicit words until the
// length cap, then switches to exact occurrence-vector recursion once every
// turn of the iterate is legal.
struct NsCurrentReport {
  std::vector<Rational> distances;  // distances[n-1] for power n
  std::vector<Rational> ratios;     // mass(n) / mass(n-1)
  bool eventually_decreasing = false;
  int monotone_from = -1;  // first power after which distances stop rising
  Rational ratio_gap{0};   // distance of the last ratio to the lambda enclosure
  bool ratio_converged = false;  // ratio_gap <= 1/1000
  int vector_mode_from = -1;     // first power computed without the word
  std::string warning;

  std::string to_json(int digits = 9) const;
};

NsCurrentReport ns_experiment(const GraphMap& rep, const CyclicWord& alpha,
                              int n_max, int m);

}  // namespace relttk
