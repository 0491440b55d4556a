#include "currents.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "whitehead.hpp"

namespace relttk {

namespace {

std::string word_quote(const Word& w, const Basis& b) {
  return "'" + format_word(w, b) + "'";
}

// Slack shared by the frequency certification and the north-south flags.
Rational certification_slack() { return Rational(1, 1048576); }

// Strip matching ends of a reduced word.  The result represents the same
// conjugacy class, and cyclic window counting does not care which rotation
// survives, so no canonical form is computed here.
Word cyclic_strip(const Word& w) {
  size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == inv(w[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(w.begin() + lo, w.begin() + hi);
}

// Counts of the cyclic windows of length 1..m.  Short loops wrap as often
// as needed, so a one-letter loop still has windows of every length.
std::map<Word, BigInt> cyclic_window_counts(const Word& loop, int m) {
  std::map<Word, BigInt> cnt;
  long long n = static_cast<long long>(loop.size());
  if (n == 0) return cnt;
  for (int j = 1; j <= m; ++j) {
    Word w(static_cast<size_t>(j));
    for (long long s = 0; s < n; ++s) {
      for (int i = 0; i < j; ++i)
        w[static_cast<size_t>(i)] = loop[static_cast<size_t>((s + i) % n)];
      ++cnt[w];
    }
  }
  return cnt;
}

// Non-peripheral entries folded with their inverses: eta(w) is the count of
// w plus the count of its inverse, stored under both keys.
std::map<Word, Rational> fold_counts(const std::map<Word, BigInt>& cnt,
                                     const Basis& basis) {
  std::map<Word, Rational> weights;
  for (const auto& kv : cnt) {
    if (!is_nonperipheral(kv.first, basis)) continue;
    if (weights.count(kv.first)) continue;
    Word w_inv = inverse(kv.first);
    auto it = cnt.find(w_inv);
    BigInt total = kv.second + (it == cnt.end() ? BigInt(0) : it->second);
    Rational wt(total);
    weights[kv.first] = wt;
    weights[w_inv] = wt;
  }
  return weights;
}

// Occurrence recursion on length-m windows.  A window maps to the windows
// of its letterwise image that start inside the image of its first letter;
// summing those images over a cyclic word gives exactly the windows of the
// image word, as long as no cancellation happens.
struct BlockSystem {
  int m = 0;
  const Aut* aut = nullptr;
  std::vector<Word> blocks;
  std::map<Word, int> index;
  std::vector<std::vector<int>> images;

  Word letter_image(Letter x) const {
    return x > 0 ? aut->image(x) : inverse(aut->image(-x));
  }

  int intern(const Word& w, std::deque<int>* fresh) {
    auto it = index.find(w);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(blocks.size());
    index.emplace(w, id);
    blocks.push_back(w);
    images.emplace_back();
    if (fresh) fresh->push_back(id);
    return id;
  }

  void close() {
    std::deque<int> fresh;
    for (int i = 0; i < static_cast<int>(blocks.size()); ++i)
      fresh.push_back(i);
    while (!fresh.empty()) {
      int v = fresh.front();
      fresh.pop_front();
      Word s;
      for (Letter x : blocks[v]) {
        Word ix = letter_image(x);
        s.insert(s.end(), ix.begin(), ix.end());
      }
      size_t k = letter_image(blocks[v][0]).size();
      std::vector<int> img;
      img.reserve(k);
      for (size_t q = 0; q < k; ++q) {
        Word w(s.begin() + q, s.begin() + q + m);
        img.push_back(intern(w, &fresh));
      }
      images[v] = std::move(img);
      if (blocks.size() > 200000)
        throw verify_error("window alphabet did not close");
    }
  }

  std::vector<BigInt> step(const std::vector<BigInt>& cnt) const {
    std::vector<BigInt> out(blocks.size());
    for (size_t v = 0; v < cnt.size(); ++v) {
      if (cnt[v] == 0) continue;
      for (int u : images[v]) out[static_cast<size_t>(u)] += cnt[v];
    }
    return out;
  }

  // window counts at every level derived from the m-window counts by
  // prefix summation
  std::map<Word, BigInt> level_counts(const std::vector<BigInt>& cnt) const {
    std::map<Word, BigInt> out;
    for (size_t v = 0; v < cnt.size(); ++v) {
      if (cnt[v] == 0) continue;
      const Word& b = blocks[v];
      for (int j = 1; j <= m; ++j)
        out[Word(b.begin(), b.begin() + j)] += cnt[v];
    }
    return out;
  }
};

}  // namespace

RelativeCurrent::RelativeCurrent(Basis basis, int depth,
                                 std::map<Word, Rational> weights)
    : basis_(std::move(basis)), depth_(depth), weights_(std::move(weights)) {
  if (depth_ < 0) throw input_error("depth must be non-negative");
  int r = basis_.rank();
  for (auto it = weights_.begin(); it != weights_.end();) {
    const Word& w = it->first;
    for (Letter x : w)
      if (x == 0 || x > r || x < -r)
        throw input_error("current word uses an unknown letter");
    if (w.empty() || !is_reduced(w))
      throw input_error("current word " + word_quote(w, basis_) +
                        " is not reduced");
    if (static_cast<int>(w.size()) > depth_)
      throw input_error("current word " + word_quote(w, basis_) +
                        " is longer than the depth");
    if (!is_nonperipheral(w, basis_))
      throw input_error("current word " + word_quote(w, basis_) +
                        " is peripheral");
    if (it->second < 0)
      throw input_error("current weight for " + word_quote(w, basis_) +
                        " is negative");
    if (it->second == 0)
      it = weights_.erase(it);
    else
      ++it;
  }
  for (const auto& kv : weights_) {
    Word w_inv = inverse(kv.first);
    auto other = weights_.find(w_inv);
    Rational mirror = other == weights_.end() ? Rational(0) : other->second;
    if (mirror != kv.second)
      throw input_error("current is not flip invariant at " +
                        word_quote(kv.first, basis_));
  }
  // every positive word whose extensions could carry weight must satisfy
  // both one-letter extension equations; prefixes and suffixes of stored
  // words are included so an orphan long word cannot hide
  std::set<Word> candidates;
  for (const auto& kv : weights_) {
    const Word& w = kv.first;
    if (static_cast<int>(w.size()) < depth_) candidates.insert(w);
    if (w.size() >= 2) {
      Word prefix(w.begin(), w.end() - 1);
      Word suffix(w.begin() + 1, w.end());
      if (is_nonperipheral(prefix, basis_)) candidates.insert(prefix);
      if (is_nonperipheral(suffix, basis_)) candidates.insert(suffix);
    }
  }
  for (const Word& c : candidates) {
    Rational base = weight(c);
    Rational right_sum = 0, left_sum = 0;
    for (Letter x = -r; x <= r; ++x) {
      if (x == 0) continue;
      if (x != inv(c.back())) {
        Word e = c;
        e.push_back(x);
        right_sum += weight(e);
      }
      if (x != inv(c.front())) {
        Word e;
        e.reserve(c.size() + 1);
        e.push_back(x);
        e.insert(e.end(), c.begin(), c.end());
        left_sum += weight(e);
      }
    }
    if (right_sum != base || left_sum != base)
      throw input_error("current weights are not shift consistent at " +
                        word_quote(c, basis_));
  }
}

Rational RelativeCurrent::weight(const Word& w) const {
  auto it = weights_.find(w);
  return it == weights_.end() ? Rational(0) : it->second;
}

RelativeCurrent RelativeCurrent::truncated(int m) const {
  if (m < 0) throw input_error("depth must be non-negative");
  if (m > depth_)
    throw input_error("truncation depth exceeds the current depth");
  std::map<Word, Rational> kept;
  for (const auto& kv : weights_)
    if (static_cast<int>(kv.first.size()) <= m) kept.insert(kv);
  RelativeCurrent out(basis_, m, std::move(kept));
  out.seed_ = seed_;
  return out;
}

std::string RelativeCurrent::to_csv(int digits) const {
  std::vector<Word> keys;
  keys.reserve(weights_.size());
  for (const auto& kv : weights_) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end(), word_less);
  std::string out = "word,weight\n";
  for (const Word& w : keys)
    out += format_word(w, basis_) + "," +
           decimal_string(weights_.at(w), digits) + "\n";
  return out;
}

RelativeCurrent rational_current(const CyclicWord& alpha, int m,
                                 const Basis& basis) {
  if (m < 0) throw input_error("depth must be non-negative");
  int r = basis.rank();
  for (Letter x : alpha.letters())
    if (x == 0 || x > r || x < -r)
      throw input_error("class uses an unknown letter");
  if (!is_nonperipheral(alpha.letters(), basis))
    throw input_error("class " + word_quote(alpha.letters(), basis) +
                      " is peripheral");
  if (alpha.least_period() < alpha.size())
    throw input_error("class " + word_quote(alpha.letters(), basis) +
                      " is a proper power of " +
                      word_quote(alpha.root(), basis));
  std::map<Word, BigInt> cnt = cyclic_window_counts(alpha.letters(), m);
  RelativeCurrent out(basis, m, fold_counts(cnt, basis));
  out.seed_ = alpha.letters();
  return out;
}

RelativeCurrent pushforward(const Aut& phi, const RelativeCurrent& eta) {
  if (!eta.seed()) throw input_error("pushforward needs a rational current");
  if (!phi.basis().same_alphabet(eta.basis()))
    throw input_error("automorphism acts on a different basis");
  if (!phi.preserves_blocks())
    throw input_error("automorphism does not preserve the peripheral factors");
  return rational_current(CyclicWord(phi.apply(*eta.seed())), eta.depth(),
                          eta.basis());
}

RelativeCurrent frequency_current(const GraphMap& rep, int m) {
  if (m <= 0) throw input_error("depth must be positive");
  const MarkedGraph& g = rep.graph();
  const Basis& basis = g.basis();
  bool rose = g.vertex_count() == 1 && g.edge_count() == basis.rank();
  for (Letter x = 1; rose && x <= basis.rank(); ++x)
    rose = g.realize(Word{x}) == EdgePath{x};
  if (!rose)
    throw input_error("frequency currents need a rose representative");

  StratumData top = rep.stratum_data(rep.top_stratum());
  if (top.cls != MatrixClass::primitive)
    throw input_error("top stratum matrix is not primitive");
  if (!top.eg) throw input_error("top stratum does not grow");
  if (!top.pf) throw verify_error("top stratum has no eigenvector data");
  for (int e : top.edges)
    if (!is_nonperipheral(Word{e}, basis))
      throw input_error("top stratum letter is peripheral");
  for (const Turn& t : taken_turns(rep))
    if (!rep.turn_legal(t))
      throw verify_error("substitution cancels: an image turn is illegal");
  EdgePath path = {top.edges.front()};
  for (const Turn& t : rep.turns_in_loop(path))
    if (!rep.turn_legal(t))
      throw verify_error("substitution cancels: the seed turn is illegal");

  std::set<Word> target;
  for (const Word& w : attracting_language(rep, m).words)
    if (is_nonperipheral(w, basis)) target.insert(w);

  const Rational eps = certification_slack();
  const size_t cap = 30000000;
  std::map<Word, Rational> prev;
  bool have_prev = false;
  for (int p = 1; p <= 64; ++p) {
    path = rep.apply(path);
    if (path.size() > cap)
      throw verify_error("frequencies did not stabilize before the length cap");
    Word loop = cyclic_strip(path);
    std::map<Word, BigInt> cnt = cyclic_window_counts(loop, m);

    // unoriented top letter frequencies against the eigenvector enclosure
    BigInt top_total = 0;
    std::vector<BigInt> tops;
    for (int e : top.edges) {
      BigInt u = 0;
      auto it = cnt.find(Word{e});
      if (it != cnt.end()) u += it->second;
      it = cnt.find(Word{-e});
      if (it != cnt.end()) u += it->second;
      tops.push_back(u);
      top_total += u;
    }
    bool top_ok = top_total > 0;
    for (size_t i = 0; top_ok && i < tops.size(); ++i) {
      Rational f(tops[i], top_total);
      if (f < top.pf->right[i].lo - eps || f > top.pf->right[i].hi + eps)
        top_ok = false;
    }

    std::map<Word, Rational> weights = fold_counts(cnt, basis);
    Rational mass = 0;
    for (const auto& kv : weights)
      if (kv.first.size() == 1) mass += kv.second;
    if (mass == 0)
      throw verify_error("iterate carries no non-peripheral letters");
    std::map<Word, Rational> table;
    for (const auto& kv : weights) table[kv.first] = kv.second / mass;

    bool supp_ok = table.size() == target.size();
    if (supp_ok) {
      auto ti = target.begin();
      for (const auto& kv : table) {
        if (kv.first != *ti) {
          supp_ok = false;
          break;
        }
        ++ti;
      }
    }

    bool stable = have_prev;
    if (stable) {
      std::set<Word> keys;
      for (const auto& kv : prev) keys.insert(kv.first);
      for (const auto& kv : table) keys.insert(kv.first);
      for (const Word& w : keys) {
        auto ia = prev.find(w);
        auto ib = table.find(w);
        Rational a = ia == prev.end() ? Rational(0) : ia->second;
        Rational b = ib == table.end() ? Rational(0) : ib->second;
        Rational d = a - b;
        if (d < 0) d = -d;
        if (d > eps) {
          stable = false;
          break;
        }
      }
    }

    if (supp_ok && top_ok && stable)
      return RelativeCurrent(basis, m, std::move(table));
    prev = std::move(table);
    have_prev = true;
  }
  throw verify_error("frequencies did not stabilize before the power cap");
}

Rational norm(const RelativeCurrent& eta, int level) {
  if (level < 0) throw input_error("level must be non-negative");
  if (level > eta.depth())
    throw input_error("level exceeds the current depth");
  Rational total = 0;
  for (const auto& kv : eta.weights())
    if (static_cast<int>(kv.first.size()) == level) total += kv.second;
  return total;
}

Rational projective_distance(const RelativeCurrent& a,
                             const RelativeCurrent& b, int m) {
  if (m < 0) throw input_error("depth must be non-negative");
  if (m > a.depth() || m > b.depth())
    throw input_error("comparison depth exceeds a current depth");
  Rational na = norm(a, 1);
  Rational nb = norm(b, 1);
  if (na == 0 || nb == 0)
    throw input_error("current has no mass at level one");
  Rational best = 0;
  auto consider = [&](const Word& w) {
    if (static_cast<int>(w.size()) > m) return;
    Rational d = a.weight(w) / na - b.weight(w) / nb;
    if (d < 0) d = -d;
    if (d > best) best = d;
  };
  for (const auto& kv : a.weights()) consider(kv.first);
  for (const auto& kv : b.weights()) consider(kv.first);
  return best;
}

std::set<Word> support_at_depth(const RelativeCurrent& eta, int m) {
  if (m < 0) throw input_error("depth must be non-negative");
  if (m > eta.depth())
    throw input_error("support depth exceeds the current depth");
  std::set<Word> out;
  for (const auto& kv : eta.weights())
    if (static_cast<int>(kv.first.size()) <= m) out.insert(kv.first);
  return out;
}

bool is_dual_at_depth(const GrushkoTreePoint& t, const RelativeCurrent& eta,
                      int m) {
  if (!t.graph().basis().same_alphabet(eta.basis()))
    throw input_error("tree and current live over different bases");
  std::set<Word> supp = support_at_depth(eta, m);
  LeafLanguage dual = dual_language_simplicial(t, m);
  for (const Word& w : supp)
    if (!dual.contains(w)) return false;
  return true;
}

std::string NsCurrentReport::to_json(int digits) const {
  std::ostringstream out;
  out << "{\n  \"distances\": [";
  for (size_t i = 0; i < distances.size(); ++i)
    out << (i ? ", " : "") << decimal_string(distances[i], digits);
  out << "],\n  \"ratios\": [";
  for (size_t i = 0; i < ratios.size(); ++i)
    out << (i ? ", " : "") << decimal_string(ratios[i], digits);
  out << "],\n  \"eventually_decreasing\": "
      << (eventually_decreasing ? "true" : "false")
      << ",\n  \"monotone_from\": " << monotone_from << ",\n  \"ratio_gap\": "
      << decimal_string(ratio_gap, digits)
      << ",\n  \"ratio_converged\": " << (ratio_converged ? "true" : "false")
      << ",\n  \"vector_mode_from\": " << vector_mode_from
      << ",\n  \"metric\": \"finite-depth surrogate on projective classes\"";
  if (!warning.empty()) out << ",\n  \"warning\": \"" << warning << "\"";
  out << "\n}\n";
  return out.str();
}

NsCurrentReport ns_experiment(const GraphMap& rep, const CyclicWord& alpha,
                              int n_max, int m) {
  if (m <= 0) throw input_error("depth must be positive");
  if (n_max < 0) throw input_error("power count must be non-negative");
  if (!rep.collapse_info())
    throw input_error("experiment needs a collapsed representative");
  const Basis& basis = rep.graph().basis();
  for (Letter x : alpha.letters())
    if (x == 0 || x > basis.rank() || x < -basis.rank())
      throw input_error("seed class uses an unknown letter");
  if (!is_nonperipheral(alpha.letters(), basis))
    throw input_error("seed class " + word_quote(alpha.letters(), basis) +
                      " is peripheral");

  NsCurrentReport report;
  if (n_max == 0) return report;

  RelativeCurrent limit = frequency_current(rep, m);
  RelativeCurrent eta0 = rational_current(alpha, m, basis);
  if (norm(eta0, 1) == 0)
    throw input_error("seed class has no mass at level one");
  Aut aut = rep.induced_automorphism();
  StratumData top = rep.stratum_data(rep.top_stratum());

  const Rational eps = certification_slack();
  const size_t word_cap = 100000;
  const size_t hard_cap = 2000000;

  bool taken_legal = true;
  for (const Turn& t : taken_turns(rep))
    if (!rep.turn_legal(t)) taken_legal = false;

  Rational prev_mass = norm(eta0, 1);
  Word cur = alpha.letters();
  bool vector_mode = false;
  BlockSystem bs;
  std::vector<BigInt> cnt;

  for (int n = 1; n <= n_max; ++n) {
    std::map<Word, BigInt> counts;
    if (!vector_mode) {
      cur = cyclic_strip(aut.apply(cur));
      if (cur.empty())
        throw verify_error("iterate of the seed class became trivial");
      if (cur.size() > hard_cap)
        throw verify_error(
            "iterates outgrew the cap before the turns became legal; rerun "
            "with a smaller power limit");
      counts = cyclic_window_counts(cur, m);
      if (cur.size() > word_cap) {
        // leave word mode once every turn of the iterate is legal, so the
        // window recursion is exact from here on
        bool legal = taken_legal;
        if (legal)
          for (const Turn& t : rep.turns_in_loop(cur))
            if (!rep.turn_legal(t)) {
              legal = false;
              break;
            }
        if (legal) {
          bs.m = m;
          bs.aut = &aut;
          for (const auto& kv : counts)
            if (static_cast<int>(kv.first.size()) == m)
              bs.intern(kv.first, nullptr);
          bs.close();
          cnt.assign(bs.blocks.size(), BigInt(0));
          for (const auto& kv : counts)
            if (static_cast<int>(kv.first.size()) == m)
              cnt[static_cast<size_t>(bs.index.at(kv.first))] = kv.second;
          vector_mode = true;
        }
      }
    } else {
      if (report.vector_mode_from < 0) report.vector_mode_from = n;
      cnt = bs.step(cnt);
      counts = bs.level_counts(cnt);
    }

    RelativeCurrent eta_n(basis, m, fold_counts(counts, basis));
    Rational mass = norm(eta_n, 1);
    if (mass == 0)
      throw verify_error("iterate lost all non-peripheral letter mass");
    report.distances.push_back(projective_distance(eta_n, limit, m));
    report.ratios.push_back(mass / prev_mass);
    prev_mass = mass;
  }

  int nm = static_cast<int>(report.distances.size());
  int last_bad = -1;
  for (int i = 0; i + 1 < nm; ++i)
    if (report.distances[static_cast<size_t>(i + 1)] >
        report.distances[static_cast<size_t>(i)] + eps)
      last_bad = i;
  if (nm >= 2 && last_bad + 1 <= nm - 2) {
    report.eventually_decreasing = true;
    report.monotone_from = last_bad + 2;  // first power of the quiet tail
  }

  const Interval& lam = top.pf->lambda;
  const Rational& last = report.ratios.back();
  Rational gap = 0;
  if (last < lam.lo) gap = lam.lo - last;
  if (last > lam.hi) gap = last - lam.hi;
  report.ratio_gap = gap;
  report.ratio_converged = gap <= Rational(1, 1000);
  if (!report.ratio_converged)
    report.warning = "growth ratios have not converged at the final power";
  return report;
}

}  // namespace relttk
