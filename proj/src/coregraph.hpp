#pragma once

#include <map>
#include <vector>

#include "words.hpp"

namespace relttk {

// Folded labeled graph representing a finitely generated subgroup of the
// free group on a basis (Stallings graph).  Vertex 0 is the base point.
// Edges are labeled by positive letters; an edge (u -x-> v) can be traversed
// backwards reading x'.
class CoreGraph {
 public:
  CoreGraph() = default;

  static CoreGraph from_generators(const Basis& basis, const std::vector<Word>& gens);
  // Rose on a subset of the basis letters (subgroup generated by them).
  static CoreGraph rose(const Basis& basis, const std::vector<Letter>& letters);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const;
  int rank() const;  // E - V + 1 for the connected graph
  const Basis& basis() const { return basis_; }

  // Vertex reached from v by reading one letter, or -1.
  int step(int v, Letter x) const;
  // Trace a word from a vertex; returns final vertex or -1 if not readable.
  int trace(int v, const Word& w) const;

  bool contains(const Word& w) const;                  // membership at the base point
  bool contains_conjugate(const CyclicWord& c) const;  // some conjugate lies in the subgroup

  // Basepoint-free core: all valence-1 vertices trimmed (base included).
  CoreGraph cored() const;

  // True if a label-preserving graph map into `other` exists (both graphs
  // folded, so any such map is an immersion).  Empty graphs map anywhere.
  bool immerses_into(const CoreGraph& other) const;

  // Generating words read off a spanning tree (one per non-tree edge).
  std::vector<Word> generators() const;

  std::string to_dot(const std::string& graph_name) const;

  bool operator==(const CoreGraph& o) const { return adj_ == o.adj_; }

 private:
  Basis basis_;
  // adj_[v][x] = target of the x-labeled edge leaving v (x signed).
  std::vector<std::map<Letter, int>> adj_;

  void canonicalize();
  void trim(bool keep_base);
  friend class FoldingGraph;
};

}  // namespace relttk
