#include "words.hpp"

#include <algorithm>
#include <sstream>

namespace relttk {

Basis::Basis(std::vector<std::string> names, std::vector<std::vector<Letter>> blocks)
    : names_(std::move(names)), blocks_(std::move(blocks)) {
  if (names_.empty()) throw input_error("basis must have at least one letter");
  block_of_.assign(names_.size() + 1, -1);
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw input_error("empty letter name");
    if (names_[i].find('\'') != std::string::npos)
      throw input_error("letter name may not contain ': " + names_[i]);
    if (!index_.emplace(names_[i], static_cast<Letter>(i + 1)).second)
      throw input_error("duplicate letter name: " + names_[i]);
  }
  for (size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty()) throw input_error("empty peripheral block");
    for (Letter x : blocks_[b]) {
      if (x <= 0 || x > rank()) throw input_error("block letter out of range");
      if (block_of_[x] != -1)
        throw input_error("letter " + names_[x - 1] + " assigned to two blocks");
      block_of_[x] = static_cast<int>(b);
    }
  }
}

const std::string& Basis::name(Letter x) const {
  int i = x > 0 ? x : -x;
  if (i < 1 || i > rank()) throw input_error("letter index out of range");
  return names_[i - 1];
}

Letter Basis::letter(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw input_error("unknown symbol: " + name);
  return it->second;
}

int Basis::block_of(Letter x) const {
  int i = x > 0 ? x : -x;
  if (i < 1 || i > rank()) throw input_error("letter index out of range");
  return block_of_[i];
}

int Basis::peripheral_rank() const {
  int s = 0;
  for (auto& b : blocks_) s += static_cast<int>(b.size());
  return s;
}

Word reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (x == 0) throw input_error("zero is not a letter");
    if (!out.empty() && out.back() == inv(x))
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inv(*it));
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  for (Letter x : b) {
    if (!out.empty() && out.back() == inv(x))
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

bool is_reduced(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == inv(w[i + 1])) return false;
  return true;
}

bool word_less(const Word& a, const Word& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int ra = letter_rank(a[i]), rb = letter_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return a.size() < b.size();
}

Word parse_word(const std::string& text, const Basis& basis) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    bool inverted = false;
    if (tok.size() > 1 && tok.back() == '\'') {
      inverted = true;
      tok.pop_back();
    }
    Letter x = basis.letter(tok);
    w.push_back(inverted ? inv(x) : x);
  }
  return w;
}

std::string format_word(const Word& w, const Basis& basis) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += basis.name(w[i]);
    if (w[i] < 0) out += '\'';
  }
  return out;
}

bool is_nonperipheral(const Word& w, const Basis& basis) {
  if (w.empty()) return false;
  int block = basis.block_of(w[0]);
  if (block == -1) return true;
  for (Letter x : w)
    if (basis.block_of(x) != block) return true;
  return false;
}

std::string decimal_string(const Rational& x, int digits) {
  if (digits < 0) digits = 0;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt num = boost::multiprecision::numerator(x) * scale;
  BigInt den = boost::multiprecision::denominator(x);
  bool neg = num < 0;
  if (neg) num = -num;
  BigInt q = (2 * num + den) / (2 * den);  // round half up in magnitude
  std::string body = q.str();
  if ((int)body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  std::string out;
  if (neg && q != 0) out += '-';
  out += body.substr(0, body.size() - digits);
  if (digits > 0) {
    out += '.';
    out += body.substr(body.size() - digits);
  }
  return out;
}

namespace {

Word rotate(const Word& w, size_t r) {
  Word out;
  out.reserve(w.size());
  out.insert(out.end(), w.begin() + r, w.end());
  out.insert(out.end(), w.begin(), w.begin() + r);
  return out;
}

// Least rotation of w and of its inverse; also reports where it came from.
void canonical_rotation(const Word& w, Word& best, size_t& best_r, bool& from_inverse) {
  best = w;
  best_r = 0;
  from_inverse = false;
  Word wi = inverse(w);
  for (size_t r = 0; r < w.size(); ++r) {
    Word cand = rotate(w, r);
    if (word_less(cand, best)) {
      best = cand;
      best_r = r;
      from_inverse = false;
    }
    cand = rotate(wi, r);
    if (word_less(cand, best)) {
      best = cand;
      best_r = r;
      from_inverse = true;
    }
  }
}

}  // namespace

CyclicWord::CyclicWord(const Word& w) {
  Word u = reduce(w);
  size_t lo = 0, hi = u.size();
  while (hi - lo >= 2 && u[lo] == inv(u[hi - 1])) {
    ++lo;
    --hi;
  }
  Word core(u.begin() + lo, u.begin() + hi);
  if (core.empty()) return;
  size_t r;
  bool from_inv;
  canonical_rotation(core, letters_, r, from_inv);
}

Letter CyclicWord::at(long long i) const {
  if (letters_.empty()) throw input_error("trivial cyclic word has no letters");
  long long n = static_cast<long long>(letters_.size());
  long long m = ((i % n) + n) % n;
  return letters_[static_cast<size_t>(m)];
}

long long CyclicWord::count_occurrences(const Word& w) const {
  if (letters_.empty() || w.empty()) return 0;
  long long n = static_cast<long long>(letters_.size());
  long long count = 0;
  for (long long s = 0; s < n; ++s) {
    bool match = true;
    for (size_t j = 0; j < w.size(); ++j) {
      if (at(s + static_cast<long long>(j)) != w[j]) {
        match = false;
        break;
      }
    }
    if (match) ++count;
  }
  return count;
}

size_t CyclicWord::least_period() const {
  size_t n = letters_.size();
  for (size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) ok = letters_[i] == letters_[(i + d) % n];
    if (ok) return d;
  }
  return n;
}

Word CyclicWord::root() const {
  return Word(letters_.begin(), letters_.begin() + least_period());
}

CyclicReduction cyclic_reduce(const Word& w) {
  Word u = reduce(w);
  Word conj;
  size_t lo = 0, hi = u.size();
  while (hi - lo >= 2 && u[lo] == inv(u[hi - 1])) {
    conj.push_back(u[lo]);
    ++lo;
    --hi;
  }
  Word core(u.begin() + lo, u.begin() + hi);
  CyclicReduction out;
  out.core = CyclicWord(core);
  out.inverted = false;
  if (core.empty()) {
    out.conjugator = reduce(conj);
    return out;
  }
  Word best;
  size_t r;
  canonical_rotation(core, best, r, out.inverted);
  Word source = out.inverted ? inverse(core) : core;
  // source = p q with |p| = r, canonical = q p, so w = (conj p) rep (conj p)^-1
  conj.insert(conj.end(), source.begin(), source.begin() + r);
  out.conjugator = reduce(conj);
  return out;
}

Aut::Aut(Basis basis, std::vector<Word> images)
    : basis_(std::move(basis)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != basis_.rank())
    throw input_error("automorphism needs one image per basis letter");
  for (auto& im : images_) im = reduce(im);
}

const Word& Aut::image(Letter x) const {
  if (x <= 0 || x > basis_.rank()) throw input_error("letter index out of range");
  return images_[x - 1];
}

Word Aut::apply(const Word& w) const {
  Word out;
  for (Letter x : w) {
    const Word& im = image(x > 0 ? x : -x);
    if (x > 0) {
      for (Letter y : im) {
        if (!out.empty() && out.back() == inv(y))
          out.pop_back();
        else
          out.push_back(y);
      }
    } else {
      for (auto it = im.rbegin(); it != im.rend(); ++it) {
        Letter y = inv(*it);
        if (!out.empty() && out.back() == inv(y))
          out.pop_back();
        else
          out.push_back(y);
      }
    }
  }
  return out;
}

Word Aut::apply_iter(const Word& w, int p) const {
  if (p < 0) throw input_error("iteration count must be non-negative");
  Word out = reduce(w);
  for (int i = 0; i < p; ++i) out = apply(out);
  return out;
}

Aut Aut::compose(const Aut& inner) const {
  if (!basis_.same_alphabet(inner.basis_))
    throw input_error("cannot compose automorphisms over different bases");
  std::vector<Word> images;
  images.reserve(basis_.rank());
  for (Letter x = 1; x <= basis_.rank(); ++x) images.push_back(apply(inner.image(x)));
  return Aut(basis_, std::move(images));
}

bool Aut::preserves_blocks() const {
  // For a factor generated by basis letters, conjugacy into the factor is
  // visible on the cyclically reduced alphabet.
  for (int b = 0; b < basis_.block_count(); ++b) {
    for (Letter x : basis_.block(b)) {
      CyclicWord core(image(x));
      for (Letter y : core.letters())
        if (basis_.block_of(y) != b) return false;
    }
  }
  return true;
}

}  // namespace relttk
