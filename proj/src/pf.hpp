#pragma once

#include <vector>

#include "words.hpp"

namespace relttk {

using IMatrix = std::vector<std::vector<BigInt>>;

IMatrix identity_matrix(int n);
IMatrix mat_mul(const IMatrix& a, const IMatrix& b);
IMatrix mat_pow(const IMatrix& a, unsigned long k);
std::vector<BigInt> mat_vec(const IMatrix& a, const std::vector<BigInt>& v);

// support digraph of the matrix is strongly connected
bool is_irreducible(const IMatrix& m);
// irreducible and aperiodic, so some power is entrywise positive
bool is_primitive(const IMatrix& m);

struct Interval {
  Rational lo, hi;
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

struct PFData {
  Interval lambda;
  std::vector<Interval> vec;  // dominant right eigenvector, sums to 1
};

// Certified enclosure of the dominant eigenvalue and eigenvector of an
// irreducible nonnegative integer matrix. Both enclosures are exact
// rational intervals of width at most tol. The eigenvector intervals use
// column ratio bounds of a high power of m + id, which provably bracket
// the true eigenvector, and the eigenvalue bounds come from evaluating
// min and max of (m v)_i / v_i at an explicit positive rational vector.
PFData pf_enclosure(const IMatrix& m, const Rational& tol);

struct PFTriple {
  Interval lambda;
  std::vector<Interval> left;   // eigenvector of the transpose
  std::vector<Interval> right;
};

// Eigenvalue plus both eigenvectors, each normalized to sum one.
PFTriple pf_data(const IMatrix& m, const Rational& tol);

}  // namespace relttk
