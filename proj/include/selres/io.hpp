#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selres/eval.hpp"
#include "selres/extractor.hpp"
#include "selres/learner.hpp"
#include "selres/stats.hpp"

// Readers and writers for the on-disk formats. All formats are UTF-8,
// tab-separated, one record per line; readers skip blank lines and lines
// starting with '#'.
namespace selres::io {

// Throw IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

std::string sha256_hex(std::string_view data);

// 6 decimal places, never "-0.000000".
std::string format_score(double value);

// `<verb>\t<rel>\t<noun>` for kept records only.
std::string format_triples(std::span<const TripleRecord> records);
// `<sentence_id>\t<verb>\t<rel>\t<noun>\t<reason>` for discarded records only.
std::string format_discards(std::span<const TripleRecord> records);
std::vector<TripleRecord> parse_triples(std::string_view text,
                                        const std::string& source = "triples");
std::vector<TripleRecord> parse_discards(std::string_view text,
                                         const std::string& source = "discards");

// `<verb>\t<rel>\t<noun>\t<count>`.
std::string format_counts(const CountsTable& ct);
std::vector<CountsTable::Entry> parse_counts(std::string_view text,
                                             const std::string& source = "counts");

std::string format_extraction_stats(const ExtractionStats& stats);

// Provenance written as `#` lines above a restriction file.
struct RunHeader {
  LearnerConfig config;
  std::vector<std::pair<std::string, std::string>> digests;  // (input name, sha256)
};

// `<verb>\t<rel>\t<class_id>\t<score:6dp>\t<n_nouns>\t<support>`.
std::string format_restrictions(std::span<const SelectionalRestriction> srs,
                                const RunHeader* header = nullptr);
// One JSON object per line with the same fields.
std::string format_restrictions_jsonl(std::span<const SelectionalRestriction> srs);
std::vector<SelectionalRestriction> parse_restrictions(std::string_view text,
                                                       const std::string& source = "restrictions");

// Triples format plus optional `<correct_sense|->\t<ok|parser_err|lemma_err>`.
std::vector<GoldTriple> parse_gold(std::string_view text, const std::string& source = "gold");

// `<verb>\t<rel>\t<class_id>\t<label>[\t<noun_occurrences>]`.
struct LabelLine {
  std::string verb;
  SynRel rel = SynRel::subject();
  std::string cls;
  DiagnosticLabel label = DiagnosticLabel::Ok;
  std::optional<std::uint64_t> noun_occurrences;
};
std::vector<LabelLine> parse_labels(std::string_view text, const std::string& source = "labels");

std::string format_eval_report(const EvalReport& report);
std::string format_eval_report_json(const EvalReport& report);
std::string format_diagnostic_table(std::span<const DiagnosticRow> rows);

std::string format_candidate_report(std::span<const CandidateRow> rows, const Taxonomy& tax,
                                    std::string_view verb, const SynRel& rel);

}  // namespace selres::io
