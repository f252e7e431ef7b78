#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selres/extractor.hpp"
#include "selres/learner.hpp"
#include "selres/taxonomy.hpp"

namespace selres {

enum class ExtractionStatus { Ok, ParserError, LemmaError };

std::string_view to_string(ExtractionStatus s);
std::optional<ExtractionStatus> parse_extraction_status(std::string_view s);

// A held-out triple with optional human annotation.
struct GoldTriple {
  TripleRecord triple;
  bool annotated = false;                  // the optional columns were present
  std::optional<std::string> correct_sense;  // nullopt: "-" or not annotated
  ExtractionStatus status = ExtractionStatus::Ok;

  bool extraction_ok() const { return status == ExtractionStatus::Ok; }
};

// Acquired classes per (verb, position) for membership tests.
class RestrictionIndex {
 public:
  RestrictionIndex(std::span<const SelectionalRestriction> srs, const Taxonomy& tax);

  // nullptr when the position has no acquired restriction.
  const std::vector<ClassIndex>* classes(std::string_view verb, const SynRel& rel) const;

 private:
  std::map<std::pair<std::string, SynRel>, std::vector<ClassIndex>, std::less<>> index_;
};

// True iff some acquired class for (tr.verb, tr.rel) contains tr.noun.
// Nouns outside the lexicon never fulfil.
bool fulfills(const TripleRecord& tr, const RestrictionIndex& srs, const SenseLexicon& lex);
bool fulfills(const TripleRecord& tr, std::span<const SelectionalRestriction> srs,
              const Taxonomy& tax, const SenseLexicon& lex);

// Precision shares its numerator with recall; its denominator only counts
// triples whose position has an acquired restriction. Discarded triples
// are excluded from both and counted separately.
struct PrecisionRecall {
  std::size_t fulfilled = 0;
  std::size_t in_restricted_positions = 0;
  std::size_t total = 0;
  std::size_t excluded = 0;

  std::optional<double> precision() const;
  std::optional<double> recall() const;
};

PrecisionRecall evaluate(std::span<const TripleRecord> triples,
                         std::span<const SelectionalRestriction> srs, const Taxonomy& tax,
                         const SenseLexicon& lex);
std::optional<double> precision(std::span<const TripleRecord> triples,
                                std::span<const SelectionalRestriction> srs, const Taxonomy& tax,
                                const SenseLexicon& lex);
std::optional<double> recall(std::span<const TripleRecord> triples,
                             std::span<const SelectionalRestriction> srs, const Taxonomy& tax,
                             const SenseLexicon& lex);

struct CoverageStats {
  std::size_t gold_total = 0;
  std::size_t extraction_ok = 0;
  std::size_t parser_errors = 0;
  std::size_t lemma_errors = 0;
  std::size_t in_lexicon = 0;          // well-extracted, noun has >= 1 sense
  std::size_t annotated = 0;           // well-extracted with a sense annotation column
  std::size_t correct_sense_known = 0;  // annotated sense is one of the noun's senses
};

CoverageStats coverage(std::span<const GoldTriple> gold, const Taxonomy& tax,
                       const SenseLexicon& lex);

enum class DiagnosticLabel { Ok, UpAbs, DownAbs, Senses, Noise };

std::string_view to_string(DiagnosticLabel l);
// Accepts ok, upabs/up_abs, downabs/down_abs, senses, noise in any case.
std::optional<DiagnosticLabel> parse_diagnostic_label(std::string_view s);

struct LabeledRestriction {
  std::string verb;
  SynRel rel = SynRel::subject();
  std::string cls;
  DiagnosticLabel label = DiagnosticLabel::Ok;
  std::uint64_t noun_occurrences = 0;
};

struct DiagnosticRow {
  std::string label;  // a DiagnosticLabel name or "Total"
  std::size_t classes = 0;
  double class_pct = 0;
  std::uint64_t nouns = 0;
  double noun_pct = 0;
};

// One row per label in declaration order, then Total. Throws Error when a
// (verb, rel, class) is labelled twice.
std::vector<DiagnosticRow> diagnostic_summary(std::span<const LabeledRestriction> labels);

// Well-extracted gold triples at (verb, rel) whose noun belongs to `cls`.
std::uint64_t noun_occurrences(std::span<const GoldTriple> gold, const Taxonomy& tax,
                               const SenseLexicon& lex, std::string_view verb,
                               const SynRel& rel, std::string_view cls);

struct EvalReport {
  PrecisionRecall pr;
  CoverageStats coverage;
  std::vector<DiagnosticRow> diagnostics;  // empty without labels
};

EvalReport evaluate_gold(std::span<const GoldTriple> gold,
                         std::span<const SelectionalRestriction> srs, const Taxonomy& tax,
                         const SenseLexicon& lex);

}  // namespace selres
