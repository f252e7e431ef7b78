#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "selres/cli.hpp"
#include "selres/error.hpp"
#include "selres/io.hpp"
#include "support.hpp"

using namespace selres;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "selres");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("selres_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string body(const std::string& restrictions) {
  std::string out;
  std::istringstream in(restrictions);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out += line + "\n";
  return out;
}

}  // namespace

TEST_CASE("score formatting") {
  CHECK(io::format_score(0.41503749927884376) == "0.415037");
  CHECK(io::format_score(-0.0) == "0.000000");
  CHECK(io::format_score(-1e-9) == "0.000000");
  CHECK(io::format_score(-0.5) == "-0.500000");
}

TEST_CASE("sha256 digests") {
  CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("triples and discards round-trip") {
  auto text = read_fixture("minitb/expected.discards");
  CHECK(io::format_discards(io::parse_discards(text)) == text);
  auto triples = read_fixture("minitb/expected.triples");
  CHECK(io::format_triples(io::parse_triples(triples)) == triples);
  CHECK_THROWS_AS(io::parse_triples("a\tb\n"), ParseError);
}

TEST_CASE("counts and restrictions round-trip") {
  auto ct = CountsTable::accumulate(toy_triples());
  auto counts = io::format_counts(ct);
  CHECK(io::format_counts(CountsTable::from_entries(io::parse_counts(counts))) == counts);
  CHECK_THROWS_AS(io::parse_counts("a\t0\tb\t-1\n"), ParseError);
  auto srs_text = read_fixture("toy/srs.tsv");
  auto srs = io::parse_restrictions(srs_text);
  REQUIRE(srs.size() == 2);
  CHECK(body(io::format_restrictions(srs)) == body(srs_text));
  auto jsonl = io::format_restrictions_jsonl(srs);
  auto first = nlohmann::json::parse(jsonl.substr(0, jsonl.find('\n')));
  CHECK(first["verb"] == "drink");
  CHECK(first["class"] == "ANIMAL");
}

TEST_CASE("gold and label parsing") {
  auto gold = io::parse_gold(read_fixture("toy/gold.tsv"));
  REQUIRE(gold.size() == 4);
  CHECK(gold[3].status == ExtractionStatus::ParserError);
  CHECK_FALSE(gold[3].correct_sense);
  CHECK(io::parse_gold("eat\t1\tapple\n")[0].annotated == false);
  CHECK_THROWS_AS(io::parse_gold("eat\t1\tapple\tX\tbroken\n"), ParseError);
  auto labels = io::parse_labels("seek\t1\tlegal_instrument\tup_abs\n");
  CHECK(labels[0].label == DiagnosticLabel::UpAbs);
  CHECK_FALSE(labels[0].noun_occurrences);
  CHECK_THROWS_AS(io::parse_labels("seek\t1\tx\tfine\n"), ParseError);
}

TEST_CASE("missing files are i/o errors") {
  CHECK_THROWS_AS(io::read_file("/nonexistent/file"), IoError);
}

TEST_CASE("cli pipeline: extract then learn then eval") {
  auto triples = scratch("fig1.triples");
  auto r = run({"extract", "--corpus", fixture("fig1/trees.mrg"), "--lemmas", fixture("fig1/lemmas.tsv"),
                "--out", triples.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(triples.string() + ".discards"));
  CHECK(r.out.find("kept                     8") != std::string::npos);

  auto srs = scratch("fig1.srs");
  r = run({"learn", "--triples", triples.string(), "--taxonomy", fixture("fig1/taxonomy.tsv"), "--lexicon",
           fixture("fig1/lexicon.tsv"), "--min-verb-support", "1", "--out", srs.string()});
  REQUIRE(r.code == 0);
  auto text = io::read_file(srs);
  CHECK(text.rfind("# selres learn\n", 0) == 0);
  CHECK(text.find("# sha256 taxonomy=") != std::string::npos);
  CHECK(body(text) == "seek\t0\tperson_individual\t0.000000\t3\t3\nseek\t1\tlegal_instrument\t0.415037\t3\t3\n");

  // Learning from the counts form of the same data gives the same body.
  auto counts = scratch("fig1.counts");
  io::write_file(counts, io::format_counts(CountsTable::accumulate(io::parse_triples(io::read_file(triples)))));
  r = run({"learn", "--counts", counts.string(), "--taxonomy", fixture("fig1/taxonomy.tsv"), "--lexicon",
           fixture("fig1/lexicon.tsv"), "--min-verb-support", "1"});
  REQUIRE(r.code == 0);
  CHECK(body(r.out) == body(text));
}

TEST_CASE("cli eval reports") {
  std::vector<std::string> base{"eval", "--srs", fixture("toy/srs.tsv"), "--gold", fixture("toy/gold.tsv"),
                                "--taxonomy", fixture("toy/taxonomy.tsv"), "--lexicon", fixture("toy/lexicon.tsv")};
  auto r = run(base);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("precision                   0.500") != std::string::npos);
  CHECK(r.out.find("recall                      0.333") != std::string::npos);
  CHECK(r.out.find("Diagnostic") == std::string::npos);

  auto with_labels = base;
  with_labels.insert(with_labels.end(), {"--labels", fixture("table2/labels.tsv"), "--format", "json"});
  r = run(with_labels);
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["precision"] == 0.5);
  CHECK(j["diagnostics"].size() == 6);
}

TEST_CASE("cli report lists candidates") {
  auto r = run({"report", "--triples", fixture("toy/triples.tsv"), "--taxonomy", fixture("toy/taxonomy.tsv"),
                "--lexicon", fixture("toy/lexicon.tsv"), "--threshold", "1", "--min-verb-support", "1", "--verb",
                "drink", "--rel", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("ANIMAL") != std::string::npos);
  CHECK(r.out.find("0.415037") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == cli::kValidationError);
  CHECK(run({"learn", "--taxonomy", fixture("toy/taxonomy.tsv"), "--lexicon", fixture("toy/lexicon.tsv")}).code ==
        cli::kValidationError);  // neither --triples nor --counts
  CHECK(run({"learn", "--triples", fixture("toy/triples.tsv"), "--taxonomy", fixture("toy/taxonomy.tsv"),
             "--lexicon", fixture("toy/lexicon.tsv"), "--threshold", "0"})
            .code == cli::kValidationError);
  CHECK(run({"learn", "--triples", fixture("toy/triples.tsv"), "--taxonomy", fixture("toy/taxonomy.tsv"),
             "--lexicon", fixture("toy/lexicon.tsv"), "--scorer", "chi2"})
            .code == cli::kValidationError);
  auto missing = run({"learn", "--triples", "/nonexistent/triples", "--taxonomy", fixture("toy/taxonomy.tsv"),
                      "--lexicon", fixture("toy/lexicon.tsv")});
  CHECK(missing.code == cli::kIoError);
  CHECK(missing.err.find("/nonexistent/triples") != std::string::npos);
  auto bad_tax = scratch("cyclic.tsv");
  io::write_file(bad_tax, "a\tb\nb\ta\n");
  CHECK(run({"learn", "--triples", fixture("toy/triples.tsv"), "--taxonomy", bad_tax.string(), "--lexicon",
             fixture("toy/lexicon.tsv")})
            .code == cli::kValidationError);
  auto bad_corpus = scratch("bad.mrg");
  io::write_file(bad_corpus, "(S (NP (NN a))");
  CHECK(run({"extract", "--corpus", bad_corpus.string(), "--lemmas", fixture("fig1/lemmas.tsv")}).code ==
        cli::kValidationError);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("config file supplies defaults and flags override it") {
  auto cfg = scratch("learn.toml");
  io::write_file(cfg, "[learn]\nthreshold = 1\nmin-verb-support = 1\nkeep-nonpositive = false\n");
  std::vector<std::string> args{"--config", cfg.string(), "learn", "--triples", fixture("toy/triples.tsv"),
                                "--taxonomy", fixture("toy/taxonomy.tsv"), "--lexicon", fixture("toy/lexicon.tsv")};
  auto r = run(args);
  REQUIRE(r.code == 0);
  CHECK(body(r.out) == "drink\t0\tANIMAL\t0.415037\t2\t3\nsleep\t0\tMAN\t2.000000\t1\t1\n");
  args.push_back("--keep-nonpositive");
  r = run(args);
  REQUIRE(r.code == 0);
  CHECK(body(r.out).find("drink\t1\tWATER") != std::string::npos);
}
