#pragma once

// Shared helpers for the test binaries: fixture loading, random generators
// and a brute-force probability enumerator that shares no code with the
// library's counting paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "selres/extractor.hpp"
#include "selres/io.hpp"
#include "selres/stats.hpp"
#include "selres/taxonomy.hpp"

#ifndef SELRES_FIXTURE_DIR
#error "SELRES_FIXTURE_DIR must be defined"
#endif

namespace testsupport {

inline std::string fixture(const std::string& rel) { return std::string(SELRES_FIXTURE_DIR) + "/" + rel; }
inline std::string read_fixture(const std::string& rel) { return selres::io::read_file(fixture(rel)); }

inline selres::KnowledgeBase toy_kb() {
  return selres::load_taxonomy(read_fixture("toy/taxonomy.tsv"), read_fixture("toy/lexicon.tsv"));
}

inline std::vector<selres::TripleRecord> toy_triples() {
  return selres::io::parse_triples(read_fixture("toy/triples.tsv"));
}

inline bool rel_close(double a, double b, double tol) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= tol * scale;
}

// ---------------------------------------------------------------------------
// Plain-data descriptions used by the generators and the oracle.

struct TaxSpec {
  std::vector<std::string> ids;
  std::vector<std::vector<std::size_t>> parents;  // indices into ids
  std::string text() const {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      out += ids[i] + "\t";
      if (parents[i].empty()) out += "-";
      for (std::size_t j = 0; j < parents[i].size(); ++j) {
        if (j) out += ",";
        out += ids[parents[i][j]];
      }
      out += "\n";
    }
    return out;
  }
};

struct LexSpec {
  std::map<std::string, std::vector<std::size_t>> senses;  // noun -> class indices (distinct)
  std::string text(const TaxSpec& t) const {
    std::string out;
    for (const auto& [noun, ss] : senses) {
      out += noun + "\t";
      for (std::size_t j = 0; j < ss.size(); ++j) {
        if (j) out += ",";
        out += t.ids[ss[j]];
      }
      out += "\n";
    }
    return out;
  }
};

struct Triple {
  std::string verb, rel, noun;
};

inline std::vector<selres::TripleRecord> to_records(const std::vector<Triple>& ts) {
  std::vector<selres::TripleRecord> out;
  for (const auto& t : ts) {
    selres::TripleRecord r;
    r.verb = t.verb;
    r.rel = selres::SynRel::from_code(t.rel);
    r.noun = t.noun;
    out.push_back(std::move(r));
  }
  return out;
}

// Random DAG: node 0 is a root; each later node gets 1-2 parents among
// earlier nodes (or becomes an extra root with small probability).
inline TaxSpec random_taxonomy(std::mt19937& rng, std::size_t n, bool tree = false) {
  TaxSpec t;
  for (std::size_t i = 0; i < n; ++i) {
    t.ids.push_back("c" + std::to_string(i));
    std::vector<std::size_t> ps;
    if (i > 0) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      bool extra_root = !tree && std::uniform_int_distribution<int>(0, 19)(rng) == 0;
      if (!extra_root) {
        ps.push_back(pick(rng));
        if (!tree && std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
          std::size_t q = pick(rng);
          if (q != ps[0]) ps.push_back(q);
        }
      }
    }
    t.parents.push_back(ps);
  }
  return t;
}

inline LexSpec random_lexicon(std::mt19937& rng, const TaxSpec& t, std::size_t n_nouns,
                              const std::vector<std::size_t>* allowed = nullptr) {
  LexSpec lex;
  std::vector<std::size_t> pool;
  if (allowed) pool = *allowed;
  else
    for (std::size_t i = 0; i < t.ids.size(); ++i) pool.push_back(i);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> nsenses(1, 3);
  for (std::size_t i = 0; i < n_nouns; ++i) {
    std::set<std::size_t> ss;
    int k = nsenses(rng);
    for (int j = 0; j < k; ++j) ss.insert(pool[pick(rng)]);
    lex.senses["n" + std::to_string(i)] = {ss.begin(), ss.end()};
  }
  return lex;
}

// Up to `max_triples` triples over a few verbs and positions. Nouns
// "x<k>" are deliberately absent from the lexicon.
inline std::vector<Triple> random_corpus(std::mt19937& rng, const LexSpec& lex,
                                         std::size_t max_triples, bool with_unknown = true) {
  static const char* kRels[] = {"0", "1", "in"};
  std::vector<std::string> nouns;
  for (const auto& [n, _] : lex.senses) nouns.push_back(n);
  if (with_unknown) {
    nouns.push_back("x0");
    nouns.push_back("x1");
  }
  std::uniform_int_distribution<std::size_t> len(1, max_triples);
  std::uniform_int_distribution<std::size_t> noun(0, nouns.size() - 1);
  std::uniform_int_distribution<int> verb(0, 3), rel(0, 2);
  std::vector<Triple> out;
  std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({"v" + std::to_string(verb(rng)), kRels[rel(rng)], nouns[noun(rng)]});
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracle: enumerates the triple list directly.

class Oracle {
 public:
  Oracle(TaxSpec t, LexSpec l, std::vector<Triple> triples)
      : t_(std::move(t)), l_(std::move(l)), triples_(std::move(triples)) {}

  // Ancestors-or-self by explicit DFS over parent lists.
  std::set<std::size_t> ancestors(std::size_t c) const {
    std::set<std::size_t> seen;
    std::vector<std::size_t> stack{c};
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      if (!seen.insert(x).second) continue;
      for (auto p : t_.parents[x]) stack.push_back(p);
    }
    return seen;
  }

  std::size_t index(const std::string& id) const {
    return static_cast<std::size_t>(std::find(t_.ids.begin(), t_.ids.end(), id) - t_.ids.begin());
  }

  // Fraction of the noun's senses under class c (0 when unknown).
  std::pair<int, int> senses_under(const std::string& noun, std::size_t c) const {
    auto it = l_.senses.find(noun);
    if (it == l_.senses.end()) return {0, 0};
    int in = 0;
    for (auto s : it->second) in += ancestors(s).count(c) ? 1 : 0;
    return {in, static_cast<int>(it->second.size())};
  }

  double weight(const std::string& noun, std::size_t c, bool sense) const {
    auto [in, k] = senses_under(noun, c);
    if (in == 0) return 0.0;
    return sense ? static_cast<double>(in) / k : 1.0;
  }

  // Sums one triple at a time with the given filter.
  template <class Pred>
  double sum_class(std::size_t c, bool sense, Pred keep) const {
    double s = 0;
    for (const auto& t : triples_)
      if (keep(t)) s += weight(t.noun, c, sense);
    return s;
  }
  template <class Pred>
  double count(Pred keep) const {
    double s = 0;
    for (const auto& t : triples_)
      if (keep(t)) s += 1;
    return s;
  }

  struct Probs {
    double p_c_vs, p_v_s, p_c_s, p_vc_s, assoc, pair_mi, g2;
  };

  Probs probs(const std::string& v, const std::string& s, const std::string& cls, bool sense) const {
    std::size_t c = index(cls);
    auto at_vs = [&](const Triple& t) { return t.verb == v && t.rel == s; };
    auto at_s = [&](const Triple& t) { return t.rel == s; };
    auto any = [](const Triple&) { return true; };
    double joint = sum_class(c, sense, at_vs);
    double vs = count(at_vs);
    double cs = sum_class(c, sense, at_s);
    double ts = count(at_s);
    double cg = sum_class(c, sense, any);
    double tg = count(any);
    Probs p{};
    p.p_c_vs = joint / vs;
    p.p_v_s = vs / ts;
    p.p_c_s = cs / ts;
    p.p_vc_s = joint / ts;
    auto mi = [](double pvc, double pv, double pc) {
      if (pvc == 0) return 0.0;
      return std::log2(pvc / (pv * pc));
    };
    p.assoc = p.p_c_vs * mi(p.p_vc_s, p.p_v_s, p.p_c_s);
    p.pair_mi = p.p_c_vs * mi(joint / tg, vs / tg, cg / tg);
    // 2x2 table: class vs verb at the fixed position.
    double k11 = joint, k12 = vs - joint, k21 = cs - joint, k22 = ts - vs - cs + joint;
    p.g2 = g2(k11, k12, k21, k22);
    return p;
  }

  static double g2(double k11, double k12, double k21, double k22) {
    // Cells are differences of fractional sums; rounding may leave -1e-16.
    k11 = std::max(k11, 0.0), k12 = std::max(k12, 0.0), k21 = std::max(k21, 0.0), k22 = std::max(k22, 0.0);
    double n = k11 + k12 + k21 + k22;
    double r1 = k11 + k12, r2 = k21 + k22, c1 = k11 + k21, c2 = k12 + k22;
    if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0) return 0.0;
    auto term = [&](double k, double r, double c) { return k == 0 ? 0.0 : k * std::log(k * n / (r * c)); };
    double g = 2 * (term(k11, r1, c1) + term(k12, r1, c2) + term(k21, r2, c1) + term(k22, r2, c2));
    g = std::max(g, 0.0);
    return k11 > r1 * c1 / n ? g : -g;
  }

  const TaxSpec& tax() const { return t_; }
  const LexSpec& lex() const { return l_; }
  const std::vector<Triple>& triples() const { return triples_; }

 private:
  TaxSpec t_;
  LexSpec l_;
  std::vector<Triple> triples_;
};

}  // namespace testsupport
