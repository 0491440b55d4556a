#pragma once

#include <random>
#include <string>
#include <vector>

#include "words.hpp"

namespace relttk::testutil {

// F4 = <a,b,c,d> with peripheral block {a,b}: the running example everywhere.
inline Basis basis_f4_ab() {
  return Basis({"a", "b", "c", "d"}, {{1, 2}});
}

// F2 = <a,b> with peripheral block {a}.
inline Basis basis_f2_a() {
  return Basis({"a", "b"}, {{1}});
}

inline Word w(const std::string& text, const Basis& basis) {
  return parse_word(text, basis);
}

// The map a->ab, b->b, c->cad, d->dcad.
inline Aut example_aut(const Basis& basis) {
  return Aut(basis, {w("a b", basis), w("b", basis), w("c a d", basis), w("d c a d", basis)});
}

// Deterministic random reduced word of the given length.
inline Word random_reduced_word(std::mt19937& rng, int rank, int length) {
  Word out;
  while (static_cast<int>(out.size()) < length) {
    Letter x = static_cast<Letter>(rng() % rank + 1);
    if (rng() % 2) x = -x;
    if (!out.empty() && out.back() == -x) continue;
    out.push_back(x);
  }
  return out;
}

}  // namespace relttk::testutil
