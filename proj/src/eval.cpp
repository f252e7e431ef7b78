#include "selres/eval.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <tuple>

#include "selres/error.hpp"
#include "text.hpp"

namespace selres {

std::string_view to_string(ExtractionStatus s) {
  switch (s) {
    case ExtractionStatus::Ok:
      return "ok";
    case ExtractionStatus::ParserError:
      return "parser_err";
    case ExtractionStatus::LemmaError:
      return "lemma_err";
  }
  return "ok";
}

std::optional<ExtractionStatus> parse_extraction_status(std::string_view s) {
  if (s == "ok") return ExtractionStatus::Ok;
  if (s == "parser_err") return ExtractionStatus::ParserError;
  if (s == "lemma_err") return ExtractionStatus::LemmaError;
  return std::nullopt;
}

RestrictionIndex::RestrictionIndex(std::span<const SelectionalRestriction> srs,
                                   const Taxonomy& tax) {
  for (const auto& sr : srs) index_[{sr.verb, sr.rel}].push_back(tax.index_of(sr.cls));
}

const std::vector<ClassIndex>* RestrictionIndex::classes(std::string_view verb,
                                                         const SynRel& rel) const {
  auto it = index_.find(std::pair{std::string(verb), rel});
  return it == index_.end() ? nullptr : &it->second;
}

bool fulfills(const TripleRecord& tr, const RestrictionIndex& srs, const SenseLexicon& lex) {
  const auto* classes = srs.classes(tr.verb, tr.rel);
  if (!classes) return false;
  auto li = lex.find(tr.noun);
  if (!li) return false;
  return std::any_of(classes->begin(), classes->end(),
                     [&](ClassIndex c) { return lex.senses_in(*li, c) > 0; });
}

bool fulfills(const TripleRecord& tr, std::span<const SelectionalRestriction> srs,
              const Taxonomy& tax, const SenseLexicon& lex) {
  return fulfills(tr, RestrictionIndex(srs, tax), lex);
}

std::optional<double> PrecisionRecall::precision() const {
  if (in_restricted_positions == 0) return std::nullopt;
  return static_cast<double>(fulfilled) / static_cast<double>(in_restricted_positions);
}

std::optional<double> PrecisionRecall::recall() const {
  if (total == 0) return std::nullopt;
  return static_cast<double>(fulfilled) / static_cast<double>(total);
}

PrecisionRecall evaluate(std::span<const TripleRecord> triples,
                         std::span<const SelectionalRestriction> srs, const Taxonomy& tax,
                         const SenseLexicon& lex) {
  RestrictionIndex index(srs, tax);
  PrecisionRecall pr;
  for (const auto& t : triples) {
    if (t.discard_reason) {
      ++pr.excluded;
      continue;
    }
    ++pr.total;
    if (index.classes(t.verb, t.rel)) ++pr.in_restricted_positions;
    if (fulfills(t, index, lex)) ++pr.fulfilled;
  }
  return pr;
}

std::optional<double> precision(std::span<const TripleRecord> triples,
                                std::span<const SelectionalRestriction> srs, const Taxonomy& tax,
                                const SenseLexicon& lex) {
  return evaluate(triples, srs, tax, lex).precision();
}

std::optional<double> recall(std::span<const TripleRecord> triples,
                             std::span<const SelectionalRestriction> srs, const Taxonomy& tax,
                             const SenseLexicon& lex) {
  return evaluate(triples, srs, tax, lex).recall();
}

CoverageStats coverage(std::span<const GoldTriple> gold, const Taxonomy& tax,
                       const SenseLexicon& lex) {
  CoverageStats c;
  for (const auto& g : gold) {
    ++c.gold_total;
    if (g.status == ExtractionStatus::ParserError) ++c.parser_errors;
    if (g.status == ExtractionStatus::LemmaError) ++c.lemma_errors;
    if (!g.extraction_ok()) continue;
    ++c.extraction_ok;
    auto li = lex.find(g.triple.noun);
    if (li) ++c.in_lexicon;
    if (!g.annotated) continue;
    ++c.annotated;
    if (!li || !g.correct_sense) continue;
    auto cls = tax.find(*g.correct_sense);
    if (!cls) continue;
    auto senses = lex.senses(*li);
    if (std::find(senses.begin(), senses.end(), *cls) != senses.end()) ++c.correct_sense_known;
  }
  return c;
}

namespace {

constexpr std::array<DiagnosticLabel, 5> kLabels{DiagnosticLabel::Ok, DiagnosticLabel::UpAbs,
                                                 DiagnosticLabel::DownAbs,
                                                 DiagnosticLabel::Senses, DiagnosticLabel::Noise};

double percent(double part, double whole) { return whole > 0 ? 100.0 * part / whole : 0.0; }

}  // namespace

std::string_view to_string(DiagnosticLabel l) {
  switch (l) {
    case DiagnosticLabel::Ok:
      return "Ok";
    case DiagnosticLabel::UpAbs:
      return "UpAbs";
    case DiagnosticLabel::DownAbs:
      return "DownAbs";
    case DiagnosticLabel::Senses:
      return "Senses";
    case DiagnosticLabel::Noise:
      return "Noise";
  }
  return "Ok";
}

std::optional<DiagnosticLabel> parse_diagnostic_label(std::string_view s) {
  std::string l = text::lower(s);
  if (l == "ok") return DiagnosticLabel::Ok;
  if (l == "upabs" || l == "up_abs") return DiagnosticLabel::UpAbs;
  if (l == "downabs" || l == "down_abs") return DiagnosticLabel::DownAbs;
  if (l == "senses") return DiagnosticLabel::Senses;
  if (l == "noise") return DiagnosticLabel::Noise;
  return std::nullopt;
}

std::vector<DiagnosticRow> diagnostic_summary(std::span<const LabeledRestriction> labels) {
  std::set<std::tuple<std::string, SynRel, std::string>> seen;
  std::array<std::size_t, kLabels.size()> classes{};
  std::array<std::uint64_t, kLabels.size()> nouns{};
  std::size_t total_classes = 0;
  std::uint64_t total_nouns = 0;
  for (const auto& l : labels) {
    if (!seen.emplace(l.verb, l.rel, l.cls).second)
      throw Error("duplicate diagnostic label for (" + l.verb + ", " + l.rel.code() + ", " +
                  l.cls + ")");
    auto i = static_cast<std::size_t>(l.label);
    ++classes[i];
    nouns[i] += l.noun_occurrences;
    ++total_classes;
    total_nouns += l.noun_occurrences;
  }
  std::vector<DiagnosticRow> rows;
  for (std::size_t i = 0; i < kLabels.size(); ++i) {
    rows.push_back({std::string(to_string(kLabels[i])), classes[i],
                    percent(static_cast<double>(classes[i]), static_cast<double>(total_classes)),
                    nouns[i],
                    percent(static_cast<double>(nouns[i]), static_cast<double>(total_nouns))});
  }
  rows.push_back({"Total", total_classes, total_classes ? 100.0 : 0.0, total_nouns,
                  total_nouns ? 100.0 : 0.0});
  return rows;
}

std::uint64_t noun_occurrences(std::span<const GoldTriple> gold, const Taxonomy& tax,
                               const SenseLexicon& lex, std::string_view verb,
                               const SynRel& rel, std::string_view cls) {
  ClassIndex c = tax.index_of(cls);
  std::uint64_t n = 0;
  for (const auto& g : gold) {
    if (!g.extraction_ok() || g.triple.verb != verb || !(g.triple.rel == rel)) continue;
    auto li = lex.find(g.triple.noun);
    if (li && lex.senses_in(*li, c) > 0) ++n;
  }
  return n;
}

EvalReport evaluate_gold(std::span<const GoldTriple> gold,
                         std::span<const SelectionalRestriction> srs, const Taxonomy& tax,
                         const SenseLexicon& lex) {
  std::vector<TripleRecord> triples;
  triples.reserve(gold.size());
  for (const auto& g : gold) {
    TripleRecord t = g.triple;
    if (!g.extraction_ok()) {
      t.discard_reason = g.status == ExtractionStatus::LemmaError ? DiscardReason::LemmaFailure
                                                                  : DiscardReason::NonNounHead;
    }
    triples.push_back(std::move(t));
  }
  EvalReport report;
  report.pr = evaluate(triples, srs, tax, lex);
  report.coverage = coverage(gold, tax, lex);
  return report;
}

}  // namespace selres
