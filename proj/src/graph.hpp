#pragma once

#include <string>
#include <vector>

#include "words.hpp"

namespace relttk {

// Oriented graph edge. Stored once per geometric edge; a signed index
// e in 1..E refers to the stored orientation, -e to the reverse.
struct GEdge {
  int from = 0;
  int to = 0;
  std::string name;
};

// A path is a sequence of signed edge indices. Paths share the reduction
// rules of words (e followed by -e cancels), so reduce() and inverse()
// from words.hpp apply to them directly.
using EdgePath = std::vector<int>;

// Invert a free-group isomorphism given by generator images.
// images[i-1] is the image of domain letter i as a word over 1..target_rank.
// Returns inv[j-1], the preimage of target letter j as a word over the
// domain letters. Throws verify_error when the images are not a basis.
std::vector<Word> invert_basis_images(const std::vector<Word>& images,
                                      int target_rank);

// A finite connected graph together with a marking: a homotopy equivalence
// from the rose on the basis, recorded as one closed edge path per basis
// letter, based at the base vertex. Construction checks that the marking
// really is a homotopy equivalence and precomputes the change of
// coordinates between edge paths and basis words.
class MarkedGraph {
 public:
  MarkedGraph(Basis basis, int vertex_count, std::vector<GEdge> edges,
              std::vector<EdgePath> marking, int base_vertex = 0);

  static MarkedGraph rose(const Basis& basis);

  const Basis& basis() const { return basis_; }
  int vertex_count() const { return nvert_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int base_vertex() const { return base_; }
  int rank() const { return edge_count() - nvert_ + 1; }

  int edge_from(int e) const;
  int edge_to(int e) const;
  std::string edge_name(int e) const;  // reversed edges get a ' suffix
  int edge_by_name(const std::string& name) const;  // signed, 0 if absent

  const EdgePath& marking(Letter x) const;

  // directions at a vertex: signed edges leaving v
  const std::vector<int>& directions(int v) const;

  bool is_path(const EdgePath& p) const;
  bool is_closed_path(const EdgePath& p) const;
  // free reduction after a composability check that reports the position
  EdgePath tighten(const EdgePath& p) const;
  int path_from(const EdgePath& p) const;  // empty paths are rejected
  int path_to(const EdgePath& p) const;

  EdgePath parse_path(const std::string& text) const;
  std::string format_path(const EdgePath& p) const;

  // group element coordinates
  Word loop_element(const EdgePath& loop) const;    // loop at the base vertex
  CyclicWord loop_class(const EdgePath& loop) const;  // closed path anywhere
  EdgePath realize(const Word& w) const;  // reduced loop at base

  bool in_spanning_tree(int e) const;
  EdgePath tree_path(int u, int v) const;

  std::string to_dot(const std::string& name) const;

  bool operator==(const MarkedGraph& o) const;

 private:
  void validate_and_index();

  Basis basis_;
  int nvert_ = 0;
  std::vector<GEdge> edges_;
  std::vector<EdgePath> marking_;
  int base_ = 0;

  std::vector<std::vector<int>> dirs_;  // per vertex
  std::vector<int> parent_edge_;  // signed edge from parent, 0 at base
  std::vector<bool> tree_edge_;   // per positive edge
  std::vector<Word> edge_word_;   // basis word per positive edge, empty on tree
};

}  // namespace relttk
