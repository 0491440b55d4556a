#include "lamination.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "whitehead.hpp"

namespace relttk {

std::set<Word> LeafLanguage::at_depth(int m) const {
  std::set<Word> out;
  for (const Word& w : words)
    if ((int)w.size() <= m) out.insert(w);
  return out;
}

std::string LeafLanguage::to_text(const Basis& basis) const {
  std::vector<Word> sorted(words.begin(), words.end());
  std::sort(sorted.begin(), sorted.end(), word_less);
  std::string out;
  for (const Word& w : sorted) {
    out += format_word(w, basis);
    out += '\n';
  }
  return out;
}

namespace {

StratumData checked_top(const GraphMap& rep) {
  StratumData top = rep.stratum_data(rep.top_stratum());
  if (top.cls != MatrixClass::primitive)
    throw input_error("top stratum matrix is not primitive");
  if (!top.eg) throw input_error("top stratum does not grow");
  return top;
}

// Insert every length <= m subword of the path and its inverse; returns
// whether anything new appeared.
bool absorb_subwords(std::set<Word>& into, const EdgePath& p, int m) {
  bool grew = false;
  int n = (int)p.size();
  for (int j = 1; j <= m; ++j)
    for (int i = 0; i + j <= n; ++i) {
      Word w(p.begin() + i, p.begin() + i + j);
      if (into.insert(inverse(w)).second) grew = true;
      if (into.insert(std::move(w)).second) grew = true;
    }
  return grew;
}

}  // namespace

LeafLanguage attracting_language(const GraphMap& rep, int m) {
  if (m < 0) throw input_error("depth must be non-negative");
  StratumData top = checked_top(rep);

  LeafLanguage lang;
  lang.depth = m;
  std::ostringstream gen;
  gen << "substitution iterates of";
  for (int e : top.edges) gen << ' ' << rep.graph().edge_name(e);
  lang.generator = gen.str();
  if (m == 0) return lang;

  std::vector<EdgePath> paths;
  for (int e : top.edges) {
    paths.push_back({e});
    absorb_subwords(lang.words, paths.back(), m);
  }
  const size_t cap = 2000000;
  int quiet = 0, round = 0;
  while (quiet < 2) {
    ++round;
    bool grew = false;
    size_t total = 0;
    for (EdgePath& p : paths) {
      p = rep.apply(p);
      total += p.size();
      if (absorb_subwords(lang.words, p, m)) grew = true;
    }
    if (total > cap)
      throw verify_error("language did not stabilize before the length cap");
    quiet = grew ? 0 : quiet + 1;
  }
  lang.generator += ", stabilized after " + std::to_string(round - 2) +
                    " rounds";
  return lang;
}

std::vector<std::set<Word>> attracting_language_rounds(const GraphMap& rep,
                                                       int m, int rounds) {
  if (m < 0) throw input_error("depth must be non-negative");
  if (rounds < 0) throw input_error("round count must be non-negative");
  StratumData top = checked_top(rep);
  std::set<Word> acc;
  std::vector<std::set<Word>> out;
  std::vector<EdgePath> paths;
  for (int e : top.edges) {
    paths.push_back({e});
    absorb_subwords(acc, paths.back(), m);
  }
  out.push_back(acc);
  for (int r = 0; r < rounds; ++r) {
    for (EdgePath& p : paths) {
      p = rep.apply(p);
      absorb_subwords(acc, p, m);
    }
    out.push_back(acc);
  }
  return out;
}

bool languages_equal_at_depth(const LeafLanguage& a, const LeafLanguage& b,
                              int m) {
  if (m > a.depth || m > b.depth)
    throw input_error("comparison depth exceeds a language depth");
  return a.at_depth(m) == b.at_depth(m);
}

LeafLanguage dual_language_simplicial(const GrushkoTreePoint& t, int m) {
  if (m < 0) throw input_error("depth must be non-negative");
  LeafLanguage lang;
  lang.depth = m;
  lang.generator = "immersed paths in the vertex group cores";
  if (m == 0) return lang;
  int rank = t.graph().basis().rank();
  FactorSystem groups = t.vertex_groups();
  for (const CoreGraph& f : groups.factors) {
    Word w;
    std::function<void(int)> walk = [&](int vert) {
      if ((int)w.size() == m) return;
      for (Letter x = -rank; x <= rank; ++x) {
        if (x == 0) continue;
        if (!w.empty() && x == -w.back()) continue;
        int next = f.step(vert, x);
        if (next < 0) continue;
        w.push_back(x);
        lang.words.insert(w);
        walk(next);
        w.pop_back();
      }
    };
    for (int v = 0; v < f.vertex_count(); ++v) walk(v);
  }
  return lang;
}

RecurrenceReport recurrence_gap(const GraphMap& rep, int m,
                                long long window) {
  if (m <= 0) throw input_error("depth must be positive");
  if (window <= 0) throw input_error("window must be positive");
  if (window > 100000000) throw input_error("window is too large");
  StratumData top = rep.stratum_data(rep.top_stratum());

  // periodic expanding direction in the top stratum seeds the ray
  EdgePath ray;
  bool found = false;
  for (int e : top.edges) {
    for (int d : {e, -e}) {
      try {
        ray = eigenray_prefix(rep, d, (int)window);
        found = true;
      } catch (const input_error&) {
      }
      if (found) break;
    }
    if (found) break;
  }
  if (!found)
    throw input_error("no expanding periodic direction in the top stratum");

  std::set<Word> level;
  if (top.cls == MatrixClass::primitive && top.eg) {
    LeafLanguage lang = attracting_language(rep, m);
    for (const Word& w : lang.words)
      if ((int)w.size() == m) level.insert(w);
  } else {
    // without a generic leaf, measure recurrence of the ray's own subwords
    for (size_t i = 0; i + m <= ray.size(); ++i)
      level.insert(Word(ray.begin() + i, ray.begin() + i + m));
  }
  std::set<Word> classes;
  for (const Word& w : level) {
    Word iw = inverse(w);
    classes.insert(word_less(w, iw) ? w : iw);
  }

  RecurrenceReport out;
  for (const Word& w : classes) {
    Word iw = inverse(w);
    long long prev = -1, count = 0, worst = 0;
    for (size_t i = 0; i + m <= ray.size(); ++i) {
      bool hit = std::equal(w.begin(), w.end(), ray.begin() + i) ||
                 std::equal(iw.begin(), iw.end(), ray.begin() + i);
      if (!hit) continue;
      if (prev >= 0 && (long long)i - prev > worst) worst = (long long)i - prev;
      prev = (long long)i;
      ++count;
    }
    if (count < 2) {
      out.unbounded = true;
      out.note = "word '" + rep.graph().format_path(w) +
                 "' occurs fewer than twice in the window";
      return out;
    }
    if (worst > out.max_gap) out.max_gap = worst;
  }
  return out;
}

}  // namespace relttk
