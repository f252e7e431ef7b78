#include "selres/learner.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "selres/error.hpp"

namespace selres {

void LearnerConfig::validate() const {
  if (threshold < 1) throw Error("threshold must be at least 1");
  if (min_verb_support < 1) throw Error("min_verb_support must be at least 1");
}

bool better_candidate(const Taxonomy& tax, const ScoredCandidate& a, const ScoredCandidate& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.support != b.support) return a.support > b.support;
  if (a.n_nouns != b.n_nouns) return a.n_nouns > b.n_nouns;
  const auto depth_a = tax.closure(a.cls).size();
  const auto depth_b = tax.closure(b.cls).size();
  if (depth_a != depth_b) return depth_a > depth_b;
  return tax.id(a.cls) < tax.id(b.cls);
}

std::vector<ScoredCandidate> select_disjoint(std::span<const ScoredCandidate> candidates,
                                             const Taxonomy& tax) {
  std::vector<ScoredCandidate> ordered(candidates.begin(), candidates.end());
  std::sort(ordered.begin(), ordered.end(),
            [&](const ScoredCandidate& a, const ScoredCandidate& b) {
              return better_candidate(tax, a, b);
            });
  // Walking the ranking and keeping each class unrelated to everything kept
  // so far is the same as repeatedly extracting the best survivor and
  // filtering its hypernyms and hyponyms.
  std::vector<ScoredCandidate> chosen;
  for (const auto& cand : ordered) {
    bool clash = std::any_of(chosen.begin(), chosen.end(), [&](const ScoredCandidate& kept) {
      return tax.related(kept.cls, cand.cls);
    });
    if (!clash) chosen.push_back(cand);
  }
  return chosen;
}

namespace {

struct ClassTotal {
  ClassIndex cls;
  std::uint64_t raw;
  double weighted;
};

using TotalsTable = std::vector<ClassTotal>;  // sorted by cls

TotalsTable build_totals(const SenseLexicon& lex, std::size_t n_classes,
                         const std::vector<std::optional<std::size_t>>& lex_index,
                         std::span<const CountsTable::NounCount> nouns) {
  ClassTally tally(n_classes);
  for (const auto& nc : nouns) {
    if (lex_index[nc.noun]) tally.add(lex, *lex_index[nc.noun], nc.count);
  }
  TotalsTable out;
  out.reserve(tally.touched().size());
  for (ClassIndex c : tally.touched()) out.push_back({c, tally.raw(c), tally.weighted(c)});
  std::sort(out.begin(), out.end(),
            [](const ClassTotal& a, const ClassTotal& b) { return a.cls < b.cls; });
  return out;
}

double lookup(const TotalsTable& table, ClassIndex c, EstimatorKind est) {
  auto it = std::lower_bound(table.begin(), table.end(), c,
                             [](const ClassTotal& t, ClassIndex key) { return t.cls < key; });
  if (it == table.end() || it->cls != c) return 0.0;
  return est == EstimatorKind::Raw ? static_cast<double>(it->raw) : it->weighted;
}

// Shared, read-only state for learning any group of one counts table.
class LearningContext {
 public:
  LearningContext(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                  const LearnerConfig& cfg)
      : ct_(ct), tax_(tax), lex_(lex), cfg_(cfg), lex_index_(lexicon_indices(ct, lex)) {
    cfg_.validate();
    for (std::size_t si = 0; si < ct.positions().size(); ++si)
      position_totals_.push_back(build_totals(lex, tax.size(), lex_index_, ct.position_nouns(si)));
    if (cfg.scorer == ScoreKind::AssocPairMI)
      global_totals_ = build_totals(lex, tax.size(), lex_index_, ct.noun_totals());
  }

  const LearnerConfig& config() const { return cfg_; }
  const Taxonomy& taxonomy() const { return tax_; }
  const CountsTable& counts() const { return ct_; }

  // Fills `tally` with the group's class evidence and returns the
  // thresholded, unscored candidates.
  std::vector<ScoredCandidate> candidates(const CountsTable::Group& g, ClassTally& tally) const {
    tally.clear();
    if (g.total < cfg_.min_verb_support) return {};
    for (const auto& nc : g.nouns) {
      if (lex_index_[nc.noun]) tally.add(lex_, *lex_index_[nc.noun], nc.count);
    }
    std::vector<ScoredCandidate> out;
    for (ClassIndex c : tally.touched()) {
      if (tally.raw(c) >= cfg_.threshold) out.push_back({c, 0.0, tally.distinct_nouns(c), tally.raw(c)});
    }
    std::sort(out.begin(), out.end(),
              [](const ScoredCandidate& a, const ScoredCandidate& b) { return a.cls < b.cls; });
    return out;
  }

  double score(const CountsTable::Group& g, const ClassTally& tally, ClassIndex c) const {
    const EstimatorKind est = cfg_.estimator;
    ClassEvidence ev;
    ev.joint = tally.evidence(c, est);
    ev.verb_total = static_cast<double>(g.total);
    switch (cfg_.scorer) {
      case ScoreKind::Assoc:
        ev.class_total = lookup(position_totals_[g.position], c, est);
        ev.event_total = static_cast<double>(ct_.position_total(g.position));
        return assoc_from(ev).value;
      case ScoreKind::AssocPairMI:
        ev.class_total = lookup(global_totals_, c, est);
        ev.event_total = static_cast<double>(ct_.grand_total());
        return assoc_from(ev).value;
      case ScoreKind::LogLikelihoodRatio:
        ev.class_total = lookup(position_totals_[g.position], c, est);
        ev.event_total = static_cast<double>(ct_.position_total(g.position));
        return g2(contingency_from(ev));
    }
    return 0.0;
  }

  // Scores candidates in place, dropping those that cannot be scored or
  // (unless keep_nonpositive) score <= 0. Returns the first scoring error.
  std::string score_all(const CountsTable::Group& g, const ClassTally& tally,
                        std::vector<ScoredCandidate>& cands) const {
    std::string error;
    std::vector<ScoredCandidate> kept;
    kept.reserve(cands.size());
    for (auto& cand : cands) {
      try {
        cand.score = score(g, tally, cand.cls);
      } catch (const Error& e) {
        if (error.empty()) error = tax_.id(cand.cls) + ": " + e.what();
        continue;
      }
      if (!cfg_.keep_nonpositive && cand.score <= 0) continue;
      kept.push_back(cand);
    }
    cands = std::move(kept);
    return error;
  }

  const CountsTable::Group* group(std::string_view verb, const SynRel& s) const {
    return ct_.group(verb, s);
  }

 private:
  const CountsTable& ct_;
  const Taxonomy& tax_;
  const SenseLexicon& lex_;
  LearnerConfig cfg_;
  std::vector<std::optional<std::size_t>> lex_index_;
  std::vector<TotalsTable> position_totals_;
  TotalsTable global_totals_;
};

struct GroupOutcome {
  std::vector<SelectionalRestriction> restrictions;
  std::string error;
};

GroupOutcome learn_group(const LearningContext& ctx, const CountsTable::Group& g,
                         ClassTally& tally) {
  GroupOutcome out;
  auto cands = ctx.candidates(g, tally);
  out.error = ctx.score_all(g, tally, cands);
  const auto& ct = ctx.counts();
  for (const auto& c : select_disjoint(cands, ctx.taxonomy())) {
    out.restrictions.push_back({ct.verbs()[g.verb], ct.positions()[g.position],
                                ctx.taxonomy().id(c.cls), c.score, c.n_nouns, c.support});
  }
  return out;
}

}  // namespace

std::vector<ScoredCandidate> candidate_space(const CountsTable& ct, const Taxonomy& tax,
                                             const SenseLexicon& lex, std::string_view verb,
                                             const SynRel& s, const LearnerConfig& cfg) {
  cfg.validate();
  const auto* g = ct.group(verb, s);
  if (!g) return {};
  LearnerConfig counting = cfg;
  counting.scorer = ScoreKind::Assoc;
  LearningContext ctx(ct, tax, lex, counting);
  ClassTally tally(tax.size());
  return ctx.candidates(*g, tally);
}

double score_candidate(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                       std::string_view verb, const SynRel& s, ClassIndex c,
                       const LearnerConfig& cfg) {
  switch (cfg.scorer) {
    case ScoreKind::Assoc:
      return assoc(ct, tax, lex, verb, s, tax.id(c), cfg.estimator).value;
    case ScoreKind::AssocPairMI:
      return assoc_pair_mi(ct, tax, lex, verb, s, tax.id(c), cfg.estimator).value;
    case ScoreKind::LogLikelihoodRatio:
      return g2_score(ct, tax, lex, verb, s, tax.id(c), cfg.estimator);
  }
  return 0.0;
}

LearnResult learn_all(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                      const LearnerConfig& cfg, unsigned jobs) {
  LearningContext ctx(ct, tax, lex, cfg);
  std::vector<const CountsTable::Group*> work;
  for (const auto& g : ct.groups()) {
    if (g.total >= cfg.min_verb_support) work.push_back(&g);
  }
  std::vector<GroupOutcome> outcomes(work.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    ClassTally tally(tax.size());
    for (std::size_t i = next++; i < work.size(); i = next++)
      outcomes[i] = learn_group(ctx, *work[i], tally);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(work.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
  }

  LearnResult result;
  for (std::size_t i = 0; i < work.size(); ++i) {
    auto& o = outcomes[i];
    for (auto& sr : o.restrictions) result.restrictions.push_back(std::move(sr));
    if (!o.error.empty())
      result.failures.push_back({ct.verbs()[work[i]->verb], ct.positions()[work[i]->position],
                                 std::move(o.error)});
  }
  result.coverage_misses = coverage_misses(ct, lex);
  return result;
}

std::vector<CandidateRow> candidate_report(const CountsTable& ct, const Taxonomy& tax,
                                           const SenseLexicon& lex, std::string_view verb,
                                           const SynRel& s, const LearnerConfig& cfg,
                                           std::size_t max_examples) {
  LearningContext ctx(ct, tax, lex, cfg);
  const auto* g = ct.group(verb, s);
  if (!g) return {};
  ClassTally tally(tax.size());
  auto cands = ctx.candidates(*g, tally);
  ctx.score_all(*g, tally, cands);
  auto chosen = select_disjoint(cands, tax);
  std::sort(cands.begin(), cands.end(), [&](const ScoredCandidate& a, const ScoredCandidate& b) {
    return better_candidate(tax, a, b);
  });

  // Group nouns by descending frequency for the example column.
  std::vector<CountsTable::NounCount> by_freq = g->nouns;
  std::stable_sort(by_freq.begin(), by_freq.end(),
                   [](const auto& a, const auto& b) { return a.count > b.count; });

  std::vector<CandidateRow> rows;
  for (const auto& c : cands) {
    CandidateRow row;
    row.candidate = c;
    row.selected = std::any_of(chosen.begin(), chosen.end(),
                               [&](const ScoredCandidate& k) { return k.cls == c.cls; });
    for (const auto& nc : by_freq) {
      if (row.example_nouns.size() >= max_examples) break;
      auto li = lex.find(ct.nouns()[nc.noun]);
      if (li && lex.senses_in(*li, c.cls) > 0) row.example_nouns.push_back(ct.nouns()[nc.noun]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace selres
