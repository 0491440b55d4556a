#pragma once

#include <set>
#include <string>
#include <vector>

#include "graphmap.hpp"
#include "trees.hpp"

namespace relttk {

// Finite-depth window of a lamination: all reduced words of length at most
// depth that occur as subwords of its leaves.  Words live over the graph's
// edge alphabet (which coincides with the group basis on a rose) and the set
// is subword-closed and closed under inversion, since leaves are unoriented
// lines.
struct LeafLanguage {
  int depth = 0;
  std::set<Word> words;
  std::string generator;

  bool contains(const Word& w) const { return words.count(w) > 0; }
  std::set<Word> at_depth(int m) const;
  // sorted word list, one per line, for diffing across runs
  std::string to_text(const Basis& basis) const;
};

// Stabilized set of length <= m subwords of the iterated top-stratum edge
// images.  Stabilization is certified by two consecutive substitution rounds
// that add no new subword; primitivity of the top matrix guarantees the
// criterion is reached and makes the language independent of the seed.
LeafLanguage attracting_language(const GraphMap& rep, int m);

// Cumulative subword sets after 0..rounds substitution rounds, for
// stabilization diagnostics.
std::vector<std::set<Word>> attracting_language_rounds(const GraphMap& rep,
                                                       int m, int rounds);

// Set equality of the length <= m truncations.  Rejects m beyond either
// stored depth.
bool languages_equal_at_depth(const LeafLanguage& a, const LeafLanguage& b,
                              int m);

// Language of the lines with zero translation length: all reduced basis
// words of length <= m readable along immersed paths in the core graphs of
// the tree's vertex groups.
LeafLanguage dual_language_simplicial(const GrushkoTreePoint& t, int m);

struct RecurrenceReport {
  bool unbounded = false;
  long long max_gap = 0;
  std::string note;
};

// Maximum gap between consecutive occurrences (of the word or its inverse)
// of any length-m leaf subword within a length-`window` prefix of the
// periodic ray.  A word seen fewer than twice makes the gap unbounded for
// this window and is reported by name.
RecurrenceReport recurrence_gap(const GraphMap& rep, int m, long long window);

}  // namespace relttk
