#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "selres/extractor.hpp"
#include "selres/stats.hpp"
#include "selres/taxonomy.hpp"

namespace selres {

struct LearnerConfig {
  std::uint64_t threshold = 3;         // minimum raw supporting occurrences
  ScoreKind scorer = ScoreKind::Assoc;
  EstimatorKind estimator = EstimatorKind::Raw;
  std::uint64_t min_verb_support = 10;  // minimum triples per (verb, position)
  bool keep_nonpositive = true;

  // Throws Error when threshold or min_verb_support is 0.
  void validate() const;
};

struct ScoredCandidate {
  ClassIndex cls = 0;
  double score = 0;
  std::uint32_t n_nouns = 0;  // distinct supporting nouns
  std::uint64_t support = 0;  // raw supporting occurrences
};

struct SelectionalRestriction {
  std::string verb;
  SynRel rel = SynRel::subject();
  std::string cls;
  double score = 0;
  std::uint32_t n_nouns = 0;
  std::uint64_t support = 0;
};

// Strict order used to pick the best candidate: higher score, then higher
// support, more distinct nouns, the more specific class (larger hypernym
// closure), and finally the smaller class id.
bool better_candidate(const Taxonomy& tax, const ScoredCandidate& a, const ScoredCandidate& b);

// Every class in the hypernym closure of a sense of a noun seen with
// (verb, s) whose raw support reaches cfg.threshold; scores are left at 0.
// Empty when (verb, s) has fewer than cfg.min_verb_support triples.
std::vector<ScoredCandidate> candidate_space(const CountsTable& ct, const Taxonomy& tax,
                                             const SenseLexicon& lex, std::string_view verb,
                                             const SynRel& s, const LearnerConfig& cfg);

// Score of one candidate under cfg.scorer / cfg.estimator.
double score_candidate(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                       std::string_view verb, const SynRel& s, ClassIndex c,
                       const LearnerConfig& cfg);

// Repeatedly takes the best remaining candidate and drops every remaining
// candidate related to it by hyperonymy in either direction. Returns the
// chosen candidates in extraction order.
std::vector<ScoredCandidate> select_disjoint(std::span<const ScoredCandidate> candidates,
                                             const Taxonomy& tax);

struct GroupFailure {
  std::string verb;
  SynRel rel = SynRel::subject();
  std::string message;
};

struct LearnResult {
  std::vector<SelectionalRestriction> restrictions;  // by (verb, rel), then extraction order
  std::vector<GroupFailure> failures;
  std::vector<std::string> coverage_misses;
};

// Learns every (verb, position) group meeting cfg.min_verb_support. Groups
// are independent; `jobs` > 1 spreads them over threads without changing
// the output.
LearnResult learn_all(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                      const LearnerConfig& cfg, unsigned jobs = 1);

// Scored candidate listing for one (verb, position), best first, with the
// classes select_disjoint keeps flagged.
struct CandidateRow {
  ScoredCandidate candidate;
  bool selected = false;
  std::vector<std::string> example_nouns;  // supporting nouns, most frequent first
};
std::vector<CandidateRow> candidate_report(const CountsTable& ct, const Taxonomy& tax,
                                           const SenseLexicon& lex, std::string_view verb,
                                           const SynRel& s, const LearnerConfig& cfg,
                                           std::size_t max_examples = 4);

}  // namespace selres
