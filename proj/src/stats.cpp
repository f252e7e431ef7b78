#include "selres/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "selres/error.hpp"

namespace selres {

std::string_view to_string(EstimatorKind k) {
  return k == EstimatorKind::Raw ? "raw" : "sense";
}

std::string_view to_string(ScoreKind k) {
  switch (k) {
    case ScoreKind::Assoc:
      return "assoc";
    case ScoreKind::AssocPairMI:
      return "pairmi";
    case ScoreKind::LogLikelihoodRatio:
      return "g2";
  }
  return "assoc";
}

std::optional<EstimatorKind> parse_estimator(std::string_view s) {
  if (s == "raw") return EstimatorKind::Raw;
  if (s == "sense") return EstimatorKind::SenseCorrected;
  return std::nullopt;
}

std::optional<ScoreKind> parse_scorer(std::string_view s) {
  if (s == "assoc") return ScoreKind::Assoc;
  if (s == "pairmi") return ScoreKind::AssocPairMI;
  if (s == "g2") return ScoreKind::LogLikelihoodRatio;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// CountsTable

CountsTable CountsTable::accumulate(std::span<const TripleRecord> triples) {
  std::vector<Entry> entries;
  entries.reserve(triples.size());
  for (const auto& t : triples) {
    if (t.discard_reason)
      throw Error("cannot count discarded triple (" + t.verb + ", " + t.rel.code() + ", " +
                  t.noun + ")");
    entries.emplace_back(t.verb, t.rel, t.noun, 1);
  }
  return from_entries(entries);
}

CountsTable CountsTable::from_entries(std::span<const Entry> entries) {
  std::map<std::tuple<std::string, SynRel, std::string>, std::uint64_t> merged;
  std::map<std::string, std::size_t> verbs, nouns;
  std::map<SynRel, std::size_t> positions;
  for (const auto& [v, s, n, k] : entries) {
    if (k == 0) continue;
    merged[{v, s, n}] += k;
    verbs.emplace(v, 0);
    nouns.emplace(n, 0);
    positions.emplace(s, 0);
  }

  CountsTable ct;
  for (auto& [v, idx] : verbs) {
    idx = ct.verbs_.size();
    ct.verbs_.push_back(v);
  }
  for (auto& [n, idx] : nouns) {
    idx = ct.nouns_.size();
    ct.nouns_.push_back(n);
  }
  for (auto& [s, idx] : positions) {
    idx = ct.positions_.size();
    ct.positions_.push_back(s);
  }
  ct.position_totals_.assign(ct.positions_.size(), 0);
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> pos_noun;
  std::vector<std::uint64_t> noun_total(ct.nouns_.size(), 0);

  // `merged` iterates by (verb, position, noun), so groups arrive sorted.
  for (const auto& [key, k] : merged) {
    const auto& [v, s, n] = key;
    std::size_t vi = verbs.at(v), si = positions.at(s), ni = nouns.at(n);
    if (ct.groups_.empty() || ct.groups_.back().verb != vi || ct.groups_.back().position != si)
      ct.groups_.push_back(Group{vi, si, 0, {}});
    Group& g = ct.groups_.back();
    g.total += k;
    g.nouns.push_back({ni, k});
    ct.position_totals_[si] += k;
    pos_noun[{si, ni}] += k;
    noun_total[ni] += k;
    ct.grand_total_ += k;
  }
  ct.position_nouns_.resize(ct.positions_.size());
  for (const auto& [key, k] : pos_noun) ct.position_nouns_[key.first].push_back({key.second, k});
  for (std::size_t ni = 0; ni < ct.nouns_.size(); ++ni) ct.noun_totals_.push_back({ni, noun_total[ni]});
  return ct;
}

namespace {

template <typename T>
std::optional<std::size_t> sorted_find(const std::vector<T>& v, const auto& key) {
  auto it = std::lower_bound(v.begin(), v.end(), key);
  if (it == v.end() || !(*it == key)) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

}  // namespace

std::optional<std::size_t> CountsTable::verb_index(std::string_view v) const {
  return sorted_find(verbs_, v);
}

std::optional<std::size_t> CountsTable::noun_index(std::string_view n) const {
  return sorted_find(nouns_, n);
}

std::optional<std::size_t> CountsTable::position_index(const SynRel& s) const {
  return sorted_find(positions_, s);
}

const CountsTable::Group* CountsTable::group(std::string_view v, const SynRel& s) const {
  auto vi = verb_index(v);
  auto si = position_index(s);
  if (!vi || !si) return nullptr;
  auto it = std::lower_bound(groups_.begin(), groups_.end(), std::pair{*vi, *si},
                             [](const Group& g, const std::pair<std::size_t, std::size_t>& key) {
                               return std::pair{g.verb, g.position} < key;
                             });
  if (it == groups_.end() || it->verb != *vi || it->position != *si) return nullptr;
  return &*it;
}

std::uint64_t CountsTable::count(std::string_view v, const SynRel& s, std::string_view n) const {
  const Group* g = group(v, s);
  auto ni = noun_index(n);
  if (!g || !ni) return 0;
  auto it = std::lower_bound(g->nouns.begin(), g->nouns.end(), *ni,
                             [](const NounCount& nc, std::size_t key) { return nc.noun < key; });
  return (it != g->nouns.end() && it->noun == *ni) ? it->count : 0;
}

std::uint64_t CountsTable::position_total(const SynRel& s) const {
  auto si = position_index(s);
  return si ? position_totals_[*si] : 0;
}

std::uint64_t CountsTable::verb_position_total(std::string_view v, const SynRel& s) const {
  const Group* g = group(v, s);
  return g ? g->total : 0;
}

std::uint64_t CountsTable::noun_position_total(std::string_view n, const SynRel& s) const {
  auto si = position_index(s);
  auto ni = noun_index(n);
  if (!si || !ni) return 0;
  const auto& pn = position_nouns_[*si];
  auto it = std::lower_bound(pn.begin(), pn.end(), *ni,
                             [](const NounCount& nc, std::size_t key) { return nc.noun < key; });
  return (it != pn.end() && it->noun == *ni) ? it->count : 0;
}

std::vector<CountsTable::Entry> CountsTable::entries() const {
  std::vector<Entry> out;
  for (const auto& g : groups_) {
    for (const auto& nc : g.nouns)
      out.emplace_back(verbs_[g.verb], positions_[g.position], nouns_[nc.noun], nc.count);
  }
  return out;
}

std::vector<std::string> coverage_misses(const CountsTable& ct, const SenseLexicon& lex) {
  std::vector<std::string> out;
  for (const auto& n : ct.nouns()) {
    if (!lex.contains(n)) out.push_back(n);
  }
  return out;
}

std::vector<std::optional<std::size_t>> lexicon_indices(const CountsTable& ct,
                                                        const SenseLexicon& lex) {
  std::vector<std::optional<std::size_t>> out;
  out.reserve(ct.nouns().size());
  for (const auto& n : ct.nouns()) out.push_back(lex.find(n));
  return out;
}

// ---------------------------------------------------------------------------
// ClassTally

void ClassTally::add(const SenseLexicon& lex, std::size_t lex_noun, std::uint64_t count) {
  const std::uint32_t k = lex.sense_count(lex_noun);
  for (const Membership& m : lex.memberships(lex_noun)) {
    if (nouns_[m.cls] == 0) touched_.push_back(m.cls);
    raw_[m.cls] += count;
    weighted_[m.cls] += class_evidence(count, m.senses_in, k, EstimatorKind::SenseCorrected);
    nouns_[m.cls] += 1;
  }
}

void ClassTally::clear() {
  for (ClassIndex c : touched_) {
    raw_[c] = 0;
    weighted_[c] = 0.0;
    nouns_[c] = 0;
  }
  touched_.clear();
}

// ---------------------------------------------------------------------------
// Class counts and probabilities

namespace {

double sum_class(const CountsTable& ct, const SenseLexicon& lex,
                 std::span<const CountsTable::NounCount> nouns, ClassIndex c, EstimatorKind est) {
  double total = 0.0;
  for (const auto& nc : nouns) {
    auto li = lex.find(ct.nouns()[nc.noun]);
    if (!li) continue;
    total += class_evidence(nc.count, lex.senses_in(*li, c), lex.sense_count(*li), est);
  }
  return total;
}

std::string describe(std::string_view verb, const SynRel& s, std::string_view cls) {
  return "(" + std::string(verb) + ", " + s.code() + ", " + std::string(cls) + ")";
}

ClassEvidence position_evidence(const CountsTable& ct, const Taxonomy& tax,
                                const SenseLexicon& lex, std::string_view verb,
                                const SynRel& s, std::string_view cls, EstimatorKind est) {
  ClassIndex c = tax.index_of(cls);
  auto si = ct.position_index(s);
  if (!si || ct.position_total(*si) == 0)
    throw ZeroDenominatorError("position " + s.code() + " never observed");
  ClassEvidence ev;
  ev.event_total = static_cast<double>(ct.position_total(*si));
  ev.class_total = sum_class(ct, lex, ct.position_nouns(*si), c, est);
  if (const auto* g = ct.group(verb, s)) {
    ev.verb_total = static_cast<double>(g->total);
    ev.joint = sum_class(ct, lex, g->nouns, c, est);
  }
  return ev;
}

}  // namespace

double class_count(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                   std::string_view verb, const SynRel& s, std::string_view cls,
                   EstimatorKind est) {
  ClassIndex c = tax.index_of(cls);
  const auto* g = ct.group(verb, s);
  return g ? sum_class(ct, lex, g->nouns, c, est) : 0.0;
}

double position_class_count(const CountsTable& ct, const Taxonomy& tax,
                            const SenseLexicon& lex, const SynRel& s, std::string_view cls,
                            EstimatorKind est) {
  ClassIndex c = tax.index_of(cls);
  auto si = ct.position_index(s);
  return si ? sum_class(ct, lex, ct.position_nouns(*si), c, est) : 0.0;
}

double global_class_count(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                          std::string_view cls, EstimatorKind est) {
  return sum_class(ct, lex, ct.noun_totals(), tax.index_of(cls), est);
}

ConditionalProbs cond_probs(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                            std::string_view verb, const SynRel& s, std::string_view cls,
                            EstimatorKind est) {
  ClassEvidence ev = position_evidence(ct, tax, lex, verb, s, cls, est);
  if (ev.verb_total == 0)
    throw ZeroDenominatorError("verb '" + std::string(verb) + "' never observed at position " +
                               s.code());
  ConditionalProbs p;
  p.p_v_given_s = ev.verb_total / ev.event_total;
  p.p_c_given_s = ev.class_total / ev.event_total;
  p.p_vc_given_s = ev.joint / ev.event_total;
  p.p_c_given_vs = ev.joint / ev.verb_total;
  return p;
}

AssocScore assoc_from(const ClassEvidence& ev) {
  if (ev.event_total <= 0 || ev.verb_total <= 0)
    throw ZeroDenominatorError("association over an unobserved event");
  if (ev.joint <= 0) throw UnsupportedClassError("class has no joint occurrence");
  AssocScore out;
  out.p_c_given_vs = ev.joint / ev.verb_total;
  // P(v,c|s) / (P(v|s) P(c|s)) with the common denominator cancelled.
  const double num = ev.joint * ev.event_total;
  const double den = ev.verb_total * ev.class_total;
  out.mi = num == den ? 0.0 : std::log2(num / den);
  out.value = out.p_c_given_vs * out.mi;
  return out;
}

double g2(const Contingency& t) {
  const double r1 = t.k11 + t.k12, r2 = t.k21 + t.k22;
  const double c1 = t.k11 + t.k21, c2 = t.k12 + t.k22;
  const double n = r1 + r2;
  if (r1 <= 0 || r2 <= 0 || c1 <= 0 || c2 <= 0) return 0.0;
  auto term = [n](double k, double row, double col) {
    if (k <= 0) return 0.0;
    return k * std::log(k * n / (row * col));
  };
  double g = 2.0 * (term(t.k11, r1, c1) + term(t.k12, r1, c2) + term(t.k21, r2, c1) +
                    term(t.k22, r2, c2));
  g = std::max(g, 0.0);
  const double e11 = r1 * c1 / n;
  return t.k11 > e11 || g == 0 ? g : -g;
}

Contingency contingency_from(const ClassEvidence& ev) {
  Contingency t;
  t.k11 = ev.joint;
  t.k12 = ev.verb_total - ev.joint;
  t.k21 = ev.class_total - ev.joint;
  t.k22 = ev.event_total - ev.verb_total - t.k21;
  // Sense weighting can leave tiny negative residues in exact-zero cells.
  auto clamp = [](double& k) {
    if (k < 0 && k > -1e-9) k = 0;
  };
  clamp(t.k12);
  clamp(t.k21);
  clamp(t.k22);
  return t;
}

AssocScore assoc(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                 std::string_view verb, const SynRel& s, std::string_view cls,
                 EstimatorKind est) {
  ClassEvidence ev = position_evidence(ct, tax, lex, verb, s, cls, est);
  if (ev.verb_total == 0)
    throw ZeroDenominatorError("verb '" + std::string(verb) + "' never observed at position " +
                               s.code());
  if (ev.joint <= 0) throw UnsupportedClassError("no support for " + describe(verb, s, cls));
  return assoc_from(ev);
}

AssocScore assoc_pair_mi(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                         std::string_view verb, const SynRel& s, std::string_view cls,
                         EstimatorKind est) {
  ClassIndex c = tax.index_of(cls);
  const auto* g = ct.group(verb, s);
  if (!g) throw ZeroDenominatorError(describe(verb, s, cls) + ": pair never observed");
  ClassEvidence ev;
  ev.joint = sum_class(ct, lex, g->nouns, c, est);
  ev.verb_total = static_cast<double>(g->total);
  ev.class_total = sum_class(ct, lex, ct.noun_totals(), c, est);
  ev.event_total = static_cast<double>(ct.grand_total());
  if (ev.joint <= 0) throw UnsupportedClassError("no support for " + describe(verb, s, cls));
  return assoc_from(ev);
}

double g2_score(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                std::string_view verb, const SynRel& s, std::string_view cls,
                EstimatorKind est) {
  return g2(contingency_from(position_evidence(ct, tax, lex, verb, s, cls, est)));
}

}  // namespace selres
