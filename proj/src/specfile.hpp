#pragma once

#include <string>

#include "graphmap.hpp"
#include "trees.hpp"

namespace relttk {

// Text format for maps and trees. A map file looks like
//
//   group  rank=4 basis=a,b,c,d
//   factor A1=a,b
//   graph  vertices=v  edges=a(v,v),b(v,v),c(v,v),d(v,v)
//   marking a=a b=b c=c d=d
//   map    a->a b ; b->b ; c->c a d ; d->d c a d
//   filtration G1=a,b
//
// and a tree file replaces the map and filtration lines with
//
//   collapse=s,t
//   lengths=u:1
//
// Marking paths list edges separated by commas, reversed edges carry a
// trailing apostrophe. The graph and marking lines may be omitted
// together, which means the rose on the basis with the identity marking.
// Parse errors name the offending line. Writers emit the exact layout
// above so files round trip byte for byte.

GraphMap parse_map_spec(const std::string& text);
GrushkoTreePoint parse_tree_spec(const std::string& text);

std::string write_map_spec(const GraphMap& rep);
std::string write_tree_spec(const GrushkoTreePoint& t);

}  // namespace relttk
