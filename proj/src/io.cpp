#include "selres/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "selres/error.hpp"
#include "text.hpp"

namespace selres::io {

namespace {

std::uint64_t parse_uint(std::string_view s, const std::string& source, std::size_t line,
                         const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(source, line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  return v;
}

double parse_double(std::string_view s, const std::string& source, std::size_t line) {
  std::string buf(s);
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size())
    throw ParseError(source, line, "invalid score '" + buf + "'");
  return v;
}

SynRel parse_rel(std::string_view s, const std::string& source, std::size_t line) {
  try {
    return SynRel::from_code(s);
  } catch (const Error& e) {
    throw ParseError(source, line, e.what());
  }
}

void check_word(std::string_view w, const std::string& source, std::size_t line,
                const char* what) {
  if (w.empty() || text::has_space(w))
    throw ParseError(source, line, std::string("empty or malformed ") + what);
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string ratio(std::optional<double> v) {
  if (!v) return "N/A";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *v);
  return buf;
}

std::string share(std::size_t part, std::size_t whole) {
  std::string s = std::to_string(part) + "/" + std::to_string(whole);
  if (whole > 0) s += " (" + percent(100.0 * static_cast<double>(part) / whole) + "%)";
  return s;
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string format_score(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string format_triples(std::span<const TripleRecord> records) {
  std::string out;
  for (const auto& r : records) {
    if (r.discard_reason) continue;
    out += r.verb + '\t' + r.rel.code() + '\t' + r.noun + '\n';
  }
  return out;
}

std::string format_discards(std::span<const TripleRecord> records) {
  std::string out;
  for (const auto& r : records) {
    if (!r.discard_reason) continue;
    out += std::to_string(r.sentence_id) + '\t' + r.verb + '\t' + r.rel.code() + '\t' + r.noun +
           '\t' + std::string(to_string(*r.discard_reason)) + '\n';
  }
  return out;
}

std::vector<TripleRecord> parse_triples(std::string_view input, const std::string& source) {
  std::vector<TripleRecord> out;
  text::for_each_line(input, [&](std::size_t line_no, std::string_view line) {
    if (text::skippable(line)) return;
    auto f = text::split(line, '\t');
    if (f.size() != 3) throw ParseError(source, line_no, "expected <verb>\\t<rel>\\t<noun>");
    check_word(f[0], source, line_no, "verb");
    check_word(f[2], source, line_no, "noun");
    TripleRecord r;
    r.verb = std::string(f[0]);
    r.rel = parse_rel(f[1], source, line_no);
    r.noun = std::string(f[2]);
    r.sentence_id = line_no;
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<TripleRecord> parse_discards(std::string_view input, const std::string& source) {
  std::vector<TripleRecord> out;
  text::for_each_line(input, [&](std::size_t line_no, std::string_view line) {
    if (text::skippable(line)) return;
    auto f = text::split(line, '\t');
    if (f.size() != 5)
      throw ParseError(source, line_no, "expected <sentence>\\t<verb>\\t<rel>\\t<noun>\\t<reason>");
    TripleRecord r;
    r.sentence_id = parse_uint(f[0], source, line_no, "sentence id");
    r.verb = std::string(f[1]);
    r.rel = parse_rel(f[2], source, line_no);
    r.noun = std::string(f[3]);
    r.discard_reason = parse_discard_reason(f[4]);
    if (!r.discard_reason) throw ParseError(source, line_no, "unknown discard reason");
    out.push_back(std::move(r));
  });
  return out;
}

std::string format_counts(const CountsTable& ct) {
  std::string out;
  for (const auto& [v, s, n, k] : ct.entries())
    out += v + '\t' + s.code() + '\t' + n + '\t' + std::to_string(k) + '\n';
  return out;
}

std::vector<CountsTable::Entry> parse_counts(std::string_view input, const std::string& source) {
  std::vector<CountsTable::Entry> out;
  text::for_each_line(input, [&](std::size_t line_no, std::string_view line) {
    if (text::skippable(line)) return;
    auto f = text::split(line, '\t');
    if (f.size() != 4)
      throw ParseError(source, line_no, "expected <verb>\\t<rel>\\t<noun>\\t<count>");
    check_word(f[0], source, line_no, "verb");
    check_word(f[2], source, line_no, "noun");
    out.emplace_back(std::string(f[0]), parse_rel(f[1], source, line_no), std::string(f[2]),
                     parse_uint(f[3], source, line_no, "count"));
  });
  return out;
}

std::string format_extraction_stats(const ExtractionStats& s) {
  auto row = [&](const char* name, std::size_t n) {
    std::string pct =
        s.raw ? percent(100.0 * static_cast<double>(n) / static_cast<double>(s.raw)) : "0.0";
    return pad_right(name, 16) + pad_left(std::to_string(n), 10) + pad_left(pct, 8) + "%\n";
  };
  return row("raw", s.raw) + row("non_noun_head", s.non_noun_head) +
         row("lemma_failure", s.lemma_failure) + row("kept", s.kept);
}

std::string format_restrictions(std::span<const SelectionalRestriction> srs,
                                const RunHeader* header) {
  std::string out;
  if (header) {
    const auto& c = header->config;
    out += "# selres learn\n";
    out += "# scorer=" + std::string(to_string(c.scorer)) +
           " estimator=" + std::string(to_string(c.estimator)) +
           " threshold=" + std::to_string(c.threshold) +
           " min_verb_support=" + std::to_string(c.min_verb_support) +
           " keep_nonpositive=" + (c.keep_nonpositive ? "true" : "false") + "\n";
    for (const auto& [name, digest] : header->digests) out += "# sha256 " + name + "=" + digest + "\n";
  }
  for (const auto& sr : srs) {
    out += sr.verb + '\t' + sr.rel.code() + '\t' + sr.cls + '\t' + format_score(sr.score) + '\t' +
           std::to_string(sr.n_nouns) + '\t' + std::to_string(sr.support) + '\n';
  }
  return out;
}

std::string format_restrictions_jsonl(std::span<const SelectionalRestriction> srs) {
  std::string out;
  for (const auto& sr : srs) {
    nlohmann::ordered_json j;
    j["verb"] = sr.verb;
    j["rel"] = sr.rel.code();
    j["class"] = sr.cls;
    j["score"] = sr.score;
    j["n_nouns"] = sr.n_nouns;
    j["support"] = sr.support;
    out += j.dump() + '\n';
  }
  return out;
}

std::vector<SelectionalRestriction> parse_restrictions(std::string_view input,
                                                       const std::string& source) {
  std::vector<SelectionalRestriction> out;
  text::for_each_line(input, [&](std::size_t line_no, std::string_view line) {
    if (text::skippable(line)) return;
    auto f = text::split(line, '\t');
    if (f.size() != 6)
      throw ParseError(source, line_no,
                       "expected <verb>\\t<rel>\\t<class>\\t<score>\\t<n_nouns>\\t<support>");
    check_word(f[0], source, line_no, "verb");
    check_word(f[2], source, line_no, "class id");
    SelectionalRestriction sr;
    sr.verb = std::string(f[0]);
    sr.rel = parse_rel(f[1], source, line_no);
    sr.cls = std::string(f[2]);
    sr.score = parse_double(f[3], source, line_no);
    sr.n_nouns = static_cast<std::uint32_t>(parse_uint(f[4], source, line_no, "n_nouns"));
    sr.support = parse_uint(f[5], source, line_no, "support");
    out.push_back(std::move(sr));
  });
  return out;
}

std::vector<GoldTriple> parse_gold(std::string_view input, const std::string& source) {
  std::vector<GoldTriple> out;
  text::for_each_line(input, [&](std::size_t line_no, std::string_view line) {
    if (text::skippable(line)) return;
    auto f = text::split(line, '\t');
    if (f.size() != 3 && f.size() != 5)
      throw ParseError(source, line_no,
                       "expected <verb>\\t<rel>\\t<noun>[\\t<sense|->\\t<ok|parser_err|lemma_err>]");
    check_word(f[0], source, line_no, "verb");
    check_word(f[2], source, line_no, "noun");
    GoldTriple g;
    g.triple.verb = std::string(f[0]);
    g.triple.rel = parse_rel(f[1], source, line_no);
    g.triple.noun = std::string(f[2]);
    g.triple.sentence_id = line_no;
    if (f.size() == 5) {
      g.annotated = true;
      if (f[3] != "-") {
        check_word(f[3], source, line_no, "sense class");
        g.correct_sense = std::string(f[3]);
      }
      auto status = parse_extraction_status(f[4]);
      if (!status) throw ParseError(source, line_no, "status must be ok, parser_err or lemma_err");
      g.status = *status;
    }
    out.push_back(std::move(g));
  });
  return out;
}

std::vector<LabelLine> parse_labels(std::string_view input, const std::string& source) {
  std::vector<LabelLine> out;
  text::for_each_line(input, [&](std::size_t line_no, std::string_view line) {
    if (text::skippable(line)) return;
    auto f = text::split(line, '\t');
    if (f.size() != 4 && f.size() != 5)
      throw ParseError(source, line_no,
                       "expected <verb>\\t<rel>\\t<class_id>\\t<label>[\\t<noun_occurrences>]");
    check_word(f[0], source, line_no, "verb");
    check_word(f[2], source, line_no, "class id");
    LabelLine l;
    l.verb = std::string(f[0]);
    l.rel = parse_rel(f[1], source, line_no);
    l.cls = std::string(f[2]);
    auto label = parse_diagnostic_label(f[3]);
    if (!label)
      throw ParseError(source, line_no, "unknown diagnostic label '" + std::string(f[3]) + "'");
    l.label = *label;
    if (f.size() == 5) l.noun_occurrences = parse_uint(f[4], source, line_no, "noun count");
    out.push_back(std::move(l));
  });
  return out;
}

std::string format_diagnostic_table(std::span<const DiagnosticRow> rows) {
  std::string out = pad_right("Diagnostic", 12) + pad_left("#Classes", 10) + pad_left("%", 8) +
                    pad_left("#n", 10) + pad_left("%", 8) + "\n";
  for (const auto& r : rows) {
    out += pad_right(r.label, 12) + pad_left(std::to_string(r.classes), 10) +
           pad_left(percent(r.class_pct), 8) + pad_left(std::to_string(r.nouns), 10) +
           pad_left(percent(r.noun_pct), 8) + "\n";
  }
  return out;
}

std::string format_eval_report(const EvalReport& report) {
  const auto& pr = report.pr;
  const auto& c = report.coverage;
  std::string out;
  out += pad_right("precision", 28) + ratio(pr.precision()) + "  (" +
         std::to_string(pr.fulfilled) + "/" + std::to_string(pr.in_restricted_positions) + ")\n";
  out += pad_right("recall", 28) + ratio(pr.recall()) + "  (" + std::to_string(pr.fulfilled) +
         "/" + std::to_string(pr.total) + ")\n";
  out += pad_right("excluded", 28) + std::to_string(pr.excluded) + "\n";
  out += pad_right("gold triples", 28) + std::to_string(c.gold_total) + "\n";
  out += pad_right("well extracted", 28) + share(c.extraction_ok, c.gold_total) + "\n";
  out += pad_right("parser errors", 28) + share(c.parser_errors, c.gold_total) + "\n";
  out += pad_right("lemmatizer errors", 28) + share(c.lemma_errors, c.gold_total) + "\n";
  out += pad_right("noun in lexicon", 28) + share(c.in_lexicon, c.extraction_ok) + "\n";
  if (c.annotated > 0)
    out += pad_right("correct sense in taxonomy", 28) + share(c.correct_sense_known, c.annotated) +
           "\n";
  if (!report.diagnostics.empty()) out += "\n" + format_diagnostic_table(report.diagnostics);
  return out;
}

std::string format_eval_report_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  const auto& pr = report.pr;
  j["precision"] = pr.precision() ? nlohmann::ordered_json(*pr.precision()) : nullptr;
  j["recall"] = pr.recall() ? nlohmann::ordered_json(*pr.recall()) : nullptr;
  j["fulfilled"] = pr.fulfilled;
  j["in_restricted_positions"] = pr.in_restricted_positions;
  j["total"] = pr.total;
  j["excluded"] = pr.excluded;
  const auto& c = report.coverage;
  j["coverage"] = {{"gold_total", c.gold_total},       {"extraction_ok", c.extraction_ok},
                   {"parser_errors", c.parser_errors}, {"lemma_errors", c.lemma_errors},
                   {"in_lexicon", c.in_lexicon},       {"annotated", c.annotated},
                   {"correct_sense_known", c.correct_sense_known}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.diagnostics) {
    rows.push_back({{"label", r.label},
                    {"classes", r.classes},
                    {"class_pct", r.class_pct},
                    {"nouns", r.nouns},
                    {"noun_pct", r.noun_pct}});
  }
  j["diagnostics"] = rows;
  return j.dump(2) + "\n";
}

std::string format_candidate_report(std::span<const CandidateRow> rows, const Taxonomy& tax,
                                    std::string_view verb, const SynRel& rel) {
  std::size_t width = 14;
  for (const auto& r : rows) width = std::max(width, tax.id(r.candidate.cls).size() + 2);
  std::string out = "# candidates for (" + std::string(verb) + ", " + rel.code() + ")\n";
  out += pad_right("class", width) + pad_left("score", 12) + pad_left("#n", 6) +
         pad_left("support", 9) + "  sel  examples\n";
  for (const auto& r : rows) {
    std::string examples;
    for (const auto& n : r.example_nouns) examples += (examples.empty() ? "" : ", ") + n;
    out += pad_right(tax.id(r.candidate.cls), width) + pad_left(format_score(r.candidate.score), 12) +
           pad_left(std::to_string(r.candidate.n_nouns), 6) +
           pad_left(std::to_string(r.candidate.support), 9) + (r.selected ? "   *   " : "       ") +
           examples + "\n";
  }
  return out;
}

}  // namespace selres::io
