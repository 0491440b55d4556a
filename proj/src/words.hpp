#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace relttk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown on malformed user input (bad words, bad files, bad parameters).
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a structural precondition fails (unverified map, reducible
// matrix, convergence failure).  Distinct from input_error so the CLI can
// map the two onto different exit codes.
struct verify_error : std::runtime_error {
  explicit verify_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A letter is a 1-based index into the basis; its inverse is the negated
// index.  0 is never a letter.
using Letter = int;

// Reduced or unreduced word over a basis.  Kept as a plain vector so the
// path machinery can reuse it for edge sequences.
using Word = std::vector<Letter>;

inline Letter inv(Letter x) { return -x; }

// Basis of a free group together with its peripheral blocks.  Block i is the
// letter set generating the i-th peripheral factor; letters outside every
// block are the cofactor letters.
class Basis {
 public:
  Basis() = default;
  Basis(std::vector<std::string> names, std::vector<std::vector<Letter>> blocks);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::string& name(Letter x) const;
  Letter letter(const std::string& name) const;  // throws input_error
  bool has(const std::string& name) const { return index_.count(name) > 0; }

  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Letter>& block(int b) const { return blocks_[b]; }
  // Block index of a letter, or -1 for cofactor letters.
  int block_of(Letter x) const;
  int peripheral_rank() const;             // sum of block sizes
  int cofactor_rank() const { return rank() - peripheral_rank(); }

  bool same_alphabet(const Basis& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Letter>> blocks_;
  std::vector<int> block_of_;
  std::map<std::string, Letter> index_;
};

// Free reduction.  Stable under repeated application.
Word reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);  // reduces at the seam only if inputs reduced
bool is_reduced(const Word& w);

// Total order on letters used everywhere canonical forms are needed:
// a < a' < b < b' < ...
inline int letter_rank(Letter x) { return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1; }
bool word_less(const Word& a, const Word& b);

// External word syntax: whitespace-separated letter names, "'" suffix for
// inverses ("a b a' c").  parse_word rejects unknown symbols by name.
Word parse_word(const std::string& text, const Basis& basis);
std::string format_word(const Word& w, const Basis& basis);

// Fixed-point rendering of a rational, rounded to nearest with the given
// number of fractional digits.  Reports and CSV output go through this so
// runs are byte identical.
std::string decimal_string(const Rational& x, int digits);

// True if w uses letters from more than one peripheral block or any cofactor
// letter.  The empty word is peripheral.
bool is_nonperipheral(const Word& w, const Basis& basis);

// Conjugacy class of a group element: cyclically reduced and stored in the
// canonical rotation (lexicographically least among all rotations of the
// word and of its inverse).
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(const Word& w);  // reduces, cyclically reduces, canonicalizes

  const Word& letters() const { return letters_; }
  size_t size() const { return letters_.size(); }
  bool trivial() const { return letters_.empty(); }
  bool operator==(const CyclicWord& o) const { return letters_ == o.letters_; }
  bool operator<(const CyclicWord& o) const { return word_less(letters_, o.letters_); }

  // Letter at position i of the periodic bi-infinite extension.
  Letter at(long long i) const;

  // Number of start offsets in one period at which w is read (in the
  // bi-infinite periodic word).  Zero for the trivial class.
  long long count_occurrences(const Word& w) const;

  // Least period; the class is a proper power iff period < size.
  size_t least_period() const;
  Word root() const;  // word of length least_period()

 private:
  Word letters_;
};

struct CyclicReduction {
  CyclicWord core;
  Word conjugator;  // w = conjugator * rep * conjugator^-1
  bool inverted;    // rep = core.letters() if false, its inverse if true
};

CyclicReduction cyclic_reduce(const Word& w);

// Automorphism of the free group, given by images of the basis letters.
class Aut {
 public:
  Aut() = default;
  Aut(Basis basis, std::vector<Word> images);  // images[i] for letter i+1

  const Basis& basis() const { return basis_; }
  const Word& image(Letter x) const;  // positive letters only
  const std::vector<Word>& images() const { return images_; }
  Word apply(const Word& w) const;    // substitute and reduce
  Word apply_iter(const Word& w, int p) const;
  Aut compose(const Aut& inner) const;  // this after inner

  // True if every peripheral block's factor is mapped into a conjugate of
  // itself (checked generator-wise via cyclic alphabets and conjugacy).
  bool preserves_blocks() const;

 private:
  Basis basis_;
  std::vector<Word> images_;
};

}  // namespace relttk
