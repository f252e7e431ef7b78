#include "selres/cli.hpp"

#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "selres/error.hpp"
#include "selres/eval.hpp"
#include "selres/extractor.hpp"
#include "selres/io.hpp"
#include "selres/learner.hpp"
#include "selres/stats.hpp"
#include "selres/taxonomy.hpp"
#include "selres/tree.hpp"

namespace selres::cli {

namespace {

struct Options {
  std::string corpus, lemmas, tagset, out, discards;
  std::string triples, counts, taxonomy, lexicon, jsonl;
  std::string srs, gold, labels, format = "text";
  std::string verb, rel;
  std::string scorer = "assoc", estimator = "raw";
  LearnerConfig learner;
  unsigned jobs = 1;
};

void add_knowledge_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--taxonomy", o.taxonomy, "Taxonomy file")->required();
  cmd->add_option("--lexicon", o.lexicon, "Noun sense lexicon file")->required();
}

void add_learner_options(CLI::App* cmd, Options& o) {
  auto* in = cmd->add_option_group("input");
  in->add_option("--triples", o.triples, "Triples file from `extract`");
  in->add_option("--counts", o.counts, "Pre-aggregated counts file");
  in->require_option(1);
  add_knowledge_options(cmd, o);
  cmd->add_option("--threshold", o.learner.threshold, "Minimum raw support per class")
      ->capture_default_str();
  cmd->add_option("--scorer", o.scorer, "assoc|pairmi|g2")
      ->check(CLI::IsMember({"assoc", "pairmi", "g2"}))
      ->capture_default_str();
  cmd->add_option("--estimator", o.estimator, "raw|sense")
      ->check(CLI::IsMember({"raw", "sense"}))
      ->capture_default_str();
  cmd->add_option("--min-verb-support", o.learner.min_verb_support,
                  "Minimum triples per (verb, position)")
      ->capture_default_str();
  cmd->add_flag("--keep-nonpositive,!--drop-nonpositive", o.learner.keep_nonpositive,
                "Keep candidates scoring <= 0")
      ->capture_default_str();
}

void finish_learner(Options& o) {
  o.learner.scorer = *parse_scorer(o.scorer);
  o.learner.estimator = *parse_estimator(o.estimator);
  o.learner.validate();
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    io::write_file(path, contents);
  }
}

struct LoadedCounts {
  CountsTable table;
  std::string name;
  std::string text;
};

LoadedCounts load_counts(const Options& o) {
  LoadedCounts lc;
  if (!o.triples.empty()) {
    lc.name = "triples";
    lc.text = io::read_file(o.triples);
    auto triples = io::parse_triples(lc.text, o.triples);
    lc.table = CountsTable::accumulate(triples);
  } else {
    lc.name = "counts";
    lc.text = io::read_file(o.counts);
    auto entries = io::parse_counts(lc.text, o.counts);
    lc.table = CountsTable::from_entries(entries);
  }
  return lc;
}

KnowledgeBase load_knowledge(const Options& o, std::string& tax_text, std::string& lex_text) {
  tax_text = io::read_file(o.taxonomy);
  lex_text = io::read_file(o.lexicon);
  Taxonomy t = Taxonomy::parse(tax_text, o.taxonomy);
  SenseLexicon lex = SenseLexicon::parse(lex_text, t, o.lexicon);
  return {std::move(t), std::move(lex)};
}

int cmd_extract(const Options& o, std::ostream& out, std::ostream& err) {
  TagSet tags = o.tagset.empty() ? TagSet{} : TagSet::parse(io::read_file(o.tagset), o.tagset);
  LemmaTable lemmas = LemmaTable::parse(io::read_file(o.lemmas), o.lemmas);
  std::string corpus = io::read_file(o.corpus);
  std::vector<ParseTree> trees;
  try {
    trees = parse_bracketed(corpus);
  } catch (const BracketError& e) {
    throw Error(o.corpus + ": " + e.what());
  }
  auto result = extract_corpus(trees, lemmas, tags);
  emit(o.out, io::format_triples(result.records), out);
  std::string discards = o.discards;
  if (discards.empty() && !o.out.empty() && o.out != "-") discards = o.out + ".discards";
  if (!discards.empty()) io::write_file(discards, io::format_discards(result.records));
  std::ostream& stats_out = (o.out.empty() || o.out == "-") ? err : out;
  stats_out << "sentences       " << trees.size() << "\n" << io::format_extraction_stats(result.stats);
  return kOk;
}

int cmd_learn(Options& o, std::ostream& out, std::ostream& err) {
  finish_learner(o);
  std::string tax_text, lex_text;
  KnowledgeBase kb = load_knowledge(o, tax_text, lex_text);
  LoadedCounts counts = load_counts(o);

  LearnResult result = learn_all(counts.table, kb.taxonomy, kb.lexicon, o.learner, o.jobs);
  io::RunHeader header{o.learner,
                       {{"taxonomy", io::sha256_hex(tax_text)},
                        {"lexicon", io::sha256_hex(lex_text)},
                        {counts.name, io::sha256_hex(counts.text)}}};
  emit(o.out, io::format_restrictions(result.restrictions, &header), out);
  if (!o.jsonl.empty()) io::write_file(o.jsonl, io::format_restrictions_jsonl(result.restrictions));
  if (!result.coverage_misses.empty())
    err << "note: " << result.coverage_misses.size() << " noun type(s) not in the lexicon\n";
  for (const auto& f : result.failures)
    err << "warning: (" << f.verb << ", " << f.rel.code() << "): " << f.message << "\n";
  return kOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  std::string tax_text, lex_text;
  KnowledgeBase kb = load_knowledge(o, tax_text, lex_text);
  auto srs = io::parse_restrictions(io::read_file(o.srs), o.srs);
  for (const auto& sr : srs) {
    if (!kb.taxonomy.contains(sr.cls))
      throw Error(o.srs + ": unknown class '" + sr.cls + "'");
  }
  auto gold = io::parse_gold(io::read_file(o.gold), o.gold);
  EvalReport report = evaluate_gold(gold, srs, kb.taxonomy, kb.lexicon);
  if (!o.labels.empty()) {
    std::vector<LabeledRestriction> labeled;
    for (auto& l : io::parse_labels(io::read_file(o.labels), o.labels)) {
      std::uint64_t n = l.noun_occurrences
                            ? *l.noun_occurrences
                            : noun_occurrences(gold, kb.taxonomy, kb.lexicon, l.verb, l.rel, l.cls);
      labeled.push_back({l.verb, l.rel, l.cls, l.label, n});
    }
    report.diagnostics = diagnostic_summary(labeled);
  }
  out << (o.format == "json" ? io::format_eval_report_json(report) : io::format_eval_report(report));
  return kOk;
}

int cmd_report(Options& o, std::ostream& out) {
  finish_learner(o);
  std::string tax_text, lex_text;
  KnowledgeBase kb = load_knowledge(o, tax_text, lex_text);
  LoadedCounts counts = load_counts(o);
  SynRel rel = SynRel::from_code(o.rel);
  auto rows = candidate_report(counts.table, kb.taxonomy, kb.lexicon, o.verb, rel, o.learner);
  out << io::format_candidate_report(rows, kb.taxonomy, o.verb, rel);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Learns class-based selectional restrictions of verbs from parsed text"};
  app.name(args.empty() ? "selres" : args.front());
  app.set_config("--config", "", "Read options from a TOML/INI file; flags override it");
  app.require_subcommand(1);

  auto* extract = app.add_subcommand("extract", "Extract (verb, relation, noun) triples");
  extract->add_option("--corpus", o.corpus, "Bracketed parse file")->required();
  extract->add_option("--lemmas", o.lemmas, "Lemma table")->required();
  extract->add_option("--tagset", o.tagset, "Tag/label set overrides");
  extract->add_option("--out", o.out, "Triples output (default stdout)");
  extract->add_option("--discards", o.discards, "Discard sidecar (default <out>.discards)");

  auto* learn = app.add_subcommand("learn", "Learn selectional restrictions");
  add_learner_options(learn, o);
  learn->add_option("--out", o.out, "Restriction output (default stdout)");
  learn->add_option("--jsonl", o.jsonl, "Also write JSON lines here");
  learn->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Precision, recall and diagnostics");
  eval->add_option("--srs", o.srs, "Restriction file from `learn`")->required();
  eval->add_option("--gold", o.gold, "Gold triples")->required();
  add_knowledge_options(eval, o);
  eval->add_option("--labels", o.labels, "Diagnostic label file");
  eval->add_option("--format", o.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto* report = app.add_subcommand("report", "Scored candidate listing for one verb position");
  add_learner_options(report, o);
  report->add_option("--verb", o.verb, "Verb lemma")->required();
  report->add_option("--rel", o.rel, "0, 1 or a preposition")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << sub->help();
    return kValidationError;
  }

  try {
    if (extract->parsed()) return cmd_extract(o, out, err);
    if (learn->parsed()) return cmd_learn(o, out, err);
    if (eval->parsed()) return cmd_eval(o, out);
    if (report->parsed()) return cmd_report(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kValidationError;
}

}  // namespace selres::cli
