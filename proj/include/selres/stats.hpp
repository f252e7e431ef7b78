#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "selres/extractor.hpp"
#include "selres/taxonomy.hpp"

namespace selres {

// How a noun occurrence counts as evidence for a class: once per class it
// belongs to (Raw), or weighted by the fraction of its senses under the
// class (SenseCorrected).
enum class EstimatorKind { Raw, SenseCorrected };

enum class ScoreKind { Assoc, AssocPairMI, LogLikelihoodRatio };

std::string_view to_string(EstimatorKind k);
std::string_view to_string(ScoreKind k);
// Accept the CLI spellings: raw|sense, assoc|pairmi|g2.
std::optional<EstimatorKind> parse_estimator(std::string_view s);
std::optional<ScoreKind> parse_scorer(std::string_view s);

// Aggregated count(v, s, n) with marginals. Vocabularies are sorted (verbs
// and nouns lexicographically, positions by SynRel order) and hold exactly
// the observed items. Immutable once built.
class CountsTable {
 public:
  struct NounCount {
    std::size_t noun = 0;
    std::uint64_t count = 0;
  };
  // All observations of one (verb, position), nouns sorted by index.
  struct Group {
    std::size_t verb = 0;
    std::size_t position = 0;
    std::uint64_t total = 0;
    std::vector<NounCount> nouns;
  };
  using Entry = std::tuple<std::string, SynRel, std::string, std::uint64_t>;

  CountsTable() = default;

  // Throws Error if any record carries a discard reason.
  static CountsTable accumulate(std::span<const TripleRecord> triples);
  // Sums duplicate keys; zero counts are dropped.
  static CountsTable from_entries(std::span<const Entry> entries);

  bool empty() const { return grand_total_ == 0; }
  const std::vector<std::string>& verbs() const { return verbs_; }
  const std::vector<std::string>& nouns() const { return nouns_; }
  const std::vector<SynRel>& positions() const { return positions_; }
  std::optional<std::size_t> verb_index(std::string_view v) const;
  std::optional<std::size_t> noun_index(std::string_view n) const;
  std::optional<std::size_t> position_index(const SynRel& s) const;

  std::uint64_t count(std::string_view v, const SynRel& s, std::string_view n) const;
  std::uint64_t position_total(const SynRel& s) const;
  std::uint64_t verb_position_total(std::string_view v, const SynRel& s) const;
  std::uint64_t noun_position_total(std::string_view n, const SynRel& s) const;
  std::uint64_t grand_total() const { return grand_total_; }

  const std::vector<Group>& groups() const { return groups_; }
  const Group* group(std::string_view v, const SynRel& s) const;
  std::uint64_t position_total(std::size_t position) const { return position_totals_[position]; }
  // (n, s) totals, nouns sorted by index.
  std::span<const NounCount> position_nouns(std::size_t position) const {
    return position_nouns_[position];
  }
  // Totals per noun across all positions, nouns sorted by index.
  std::span<const NounCount> noun_totals() const { return noun_totals_; }

  // Every stored (verb, position, noun, count), in sorted order.
  std::vector<Entry> entries() const;

 private:
  std::vector<std::string> verbs_;
  std::vector<std::string> nouns_;
  std::vector<SynRel> positions_;
  std::vector<Group> groups_;  // sorted by (verb, position)
  std::vector<std::uint64_t> position_totals_;
  std::vector<std::vector<NounCount>> position_nouns_;
  std::vector<NounCount> noun_totals_;
  std::uint64_t grand_total_ = 0;
};

// Observed nouns absent from the lexicon, sorted. They stay in position
// totals but contribute to no class.
std::vector<std::string> coverage_misses(const CountsTable& ct, const SenseLexicon& lex);

// Lexicon index of every CountsTable noun.
std::vector<std::optional<std::size_t>> lexicon_indices(const CountsTable& ct,
                                                        const SenseLexicon& lex);

// Evidence `count` occurrences of a noun with `senses_in` of `sense_count`
// senses under a class contribute.
inline double class_evidence(std::uint64_t count, std::uint32_t senses_in,
                             std::uint32_t sense_count, EstimatorKind est) {
  if (senses_in == 0) return 0.0;
  if (est == EstimatorKind::Raw) return static_cast<double>(count);
  return static_cast<double>(count * senses_in) / static_cast<double>(sense_count);
}

// Per-class sums over a stream of (noun, count) observations. Dense over
// the taxonomy; `touched()` lists the classes reached, in first-touch order.
class ClassTally {
 public:
  explicit ClassTally(std::size_t n_classes)
      : raw_(n_classes, 0), weighted_(n_classes, 0.0), nouns_(n_classes, 0) {}

  void add(const SenseLexicon& lex, std::size_t lex_noun, std::uint64_t count);
  void clear();

  const std::vector<ClassIndex>& touched() const { return touched_; }
  std::uint64_t raw(ClassIndex c) const { return raw_[c]; }
  double weighted(ClassIndex c) const { return weighted_[c]; }
  std::uint32_t distinct_nouns(ClassIndex c) const { return nouns_[c]; }
  double evidence(ClassIndex c, EstimatorKind est) const {
    return est == EstimatorKind::Raw ? static_cast<double>(raw_[c]) : weighted_[c];
  }

 private:
  std::vector<std::uint64_t> raw_;
  std::vector<double> weighted_;
  std::vector<std::uint32_t> nouns_;
  std::vector<ClassIndex> touched_;
};

// Σ_{n ∈ c} count(v,s,n), optionally sense-weighted.
double class_count(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                   std::string_view verb, const SynRel& s, std::string_view cls,
                   EstimatorKind est);
// Same sum over every verb at position s.
double position_class_count(const CountsTable& ct, const Taxonomy& tax,
                            const SenseLexicon& lex, const SynRel& s, std::string_view cls,
                            EstimatorKind est);
// Same sum over every verb and position.
double global_class_count(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                          std::string_view cls, EstimatorKind est);

struct ConditionalProbs {
  double p_c_given_vs = 0;
  double p_v_given_s = 0;
  double p_c_given_s = 0;
  double p_vc_given_s = 0;
};

// Throws ZeroDenominatorError when the position or (verb, position) is
// unobserved, UnknownItemError for an unknown class.
ConditionalProbs cond_probs(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                            std::string_view verb, const SynRel& s, std::string_view cls,
                            EstimatorKind est);

// Counts behind one association score. For Assoc the class and event
// totals are taken at the position; for the pair variant over all triples.
struct ClassEvidence {
  double joint = 0;        // class count for (v, s)
  double verb_total = 0;   // occurrences of (v, s)
  double class_total = 0;  // class count over the event space
  double event_total = 0;  // size of the event space
};

struct AssocScore {
  double value = 0;         // p_c_given_vs * mi
  double p_c_given_vs = 0;
  double mi = 0;            // bits
};

// P(c|v,s) · log2[joint·event_total / (verb_total·class_total)]. Throws
// UnsupportedClassError when joint is 0, ZeroDenominatorError when a total is 0.
AssocScore assoc_from(const ClassEvidence& ev);

struct Contingency {
  double k11 = 0, k12 = 0, k21 = 0, k22 = 0;
};

// Signed G²: positive when k11 exceeds its expectation, negative otherwise,
// 0 when a row or column marginal is 0.
double g2(const Contingency& t);
// Verb-vs-class table at one position.
Contingency contingency_from(const ClassEvidence& position_evidence);

AssocScore assoc(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                 std::string_view verb, const SynRel& s, std::string_view cls,
                 EstimatorKind est);
AssocScore assoc_pair_mi(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                         std::string_view verb, const SynRel& s, std::string_view cls,
                         EstimatorKind est);
double g2_score(const CountsTable& ct, const Taxonomy& tax, const SenseLexicon& lex,
                std::string_view verb, const SynRel& s, std::string_view cls,
                EstimatorKind est);

}  // namespace selres
