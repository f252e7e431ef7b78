#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selres/error.hpp"
#include "selres/eval.hpp"
#include "selres/io.hpp"
#include "support.hpp"

using namespace selres;
using namespace testsupport;

namespace {

std::vector<SelectionalRestriction> toy_srs() {
  return io::parse_restrictions(read_fixture("toy/srs.tsv"));
}

// Independent count of the toy gold file: a triple fulfils a restriction
// when its noun has a sense under the restricted class.
struct Tally {
  int fulfilled = 0, restricted = 0, total = 0;
};

Tally brute_force(const std::vector<GoldTriple>& gold, const std::vector<SelectionalRestriction>& srs) {
  std::map<std::string, std::set<std::string>> closure{{"dog", {"DOG", "ANIMAL", "ENTITY"}},
                                                      {"cat", {"CAT", "ANIMAL", "ENTITY"}},
                                                      {"man", {"MAN", "PERSON", "ENTITY"}},
                                                      {"water", {"WATER", "LIQUID", "ENTITY"}}};
  Tally t;
  for (const auto& g : gold) {
    if (g.status != ExtractionStatus::Ok) continue;
    ++t.total;
    bool restricted = false, ok = false;
    for (const auto& s : srs) {
      if (s.verb != g.triple.verb || s.rel != g.triple.rel) continue;
      restricted = true;
      if (closure[g.triple.noun].count(s.cls)) ok = true;
    }
    t.restricted += restricted;
    t.fulfilled += ok;
  }
  return t;
}

}  // namespace

TEST_CASE("toy gold precision and recall") {
  auto kb = toy_kb();
  auto gold = io::parse_gold(read_fixture("toy/gold.tsv"));
  auto srs = toy_srs();
  auto oracle = brute_force(gold, srs);
  auto report = evaluate_gold(gold, srs, kb.taxonomy, kb.lexicon);
  CHECK(report.pr.fulfilled == static_cast<std::size_t>(oracle.fulfilled));
  CHECK(report.pr.in_restricted_positions == static_cast<std::size_t>(oracle.restricted));
  CHECK(report.pr.total == static_cast<std::size_t>(oracle.total));
  CHECK(*report.pr.precision() == 0.5);
  CHECK(*report.pr.recall() == doctest::Approx(1.0 / 3.0));
  CHECK(report.pr.excluded == 1);
  CHECK(report.coverage.parser_errors == 1);
  CHECK(report.coverage.correct_sense_known == 3);
}

TEST_CASE("precision is undefined without restricted positions") {
  auto kb = toy_kb();
  auto tr = to_records({{"fly", "0", "dog"}});
  CHECK_FALSE(precision(tr, toy_srs(), kb.taxonomy, kb.lexicon));
  CHECK(*recall(tr, toy_srs(), kb.taxonomy, kb.lexicon) == 0.0);
  CHECK_FALSE(recall({}, toy_srs(), kb.taxonomy, kb.lexicon));
}

TEST_CASE("fulfils is monotone in the restriction set") {
  auto kb = toy_kb();
  auto tr = to_records({{"drink", "0", "dog"}, {"drink", "0", "man"}, {"sleep", "0", "cat"}});
  std::vector<SelectionalRestriction> srs;
  const char* classes[] = {"CAT", "ANIMAL", "PERSON", "ENTITY"};
  std::vector<bool> before(tr.size(), false);
  for (const char* c : classes) {
    srs.push_back({"drink", SynRel::subject(), c, 0, 0, 0});
    srs.push_back({"sleep", SynRel::subject(), c, 0, 0, 0});
    for (std::size_t i = 0; i < tr.size(); ++i) {
      bool now = fulfills(tr[i], srs, kb.taxonomy, kb.lexicon);
      CHECK((!before[i] || now));
      before[i] = now;
    }
  }
  CHECK(std::all_of(before.begin(), before.end(), [](bool b) { return b; }));
}

TEST_CASE("recall never exceeds precision") {
  std::mt19937 rng(21);
  for (int round = 0; round < 200; ++round) {
    auto ts = random_taxonomy(rng, 2 + rng() % 20);
    auto ls = random_lexicon(rng, ts, 6);
    auto kb = load_taxonomy(ts.text(), ls.text(ts));
    auto tr = to_records(random_corpus(rng, ls, 40));
    std::vector<SelectionalRestriction> srs;
    for (int i = 0; i < 3; ++i)
      srs.push_back({"v" + std::to_string(rng() % 4), SynRel::from_code(rng() % 2 ? "0" : "1"),
                     ts.ids[rng() % ts.ids.size()], 0, 0, 0});
    auto pr = evaluate(tr, srs, kb.taxonomy, kb.lexicon);
    if (pr.precision()) CHECK(*pr.recall() <= *pr.precision());
  }
}

TEST_CASE("diagnostic table") {
  SUBCASE("table two fixture") {
    std::vector<LabeledRestriction> labeled;
    for (const auto& l : io::parse_labels(read_fixture("table2/labels.tsv")))
      labeled.push_back({l.verb, l.rel, l.cls, l.label, *l.noun_occurrences});
    auto rows = diagnostic_summary(labeled);
    CHECK(io::format_diagnostic_table(rows) ==
          "Diagnostic    #Classes       %        #n       %\n"
          "Ok                  45    18.8      2099    39.4\n"
          "UpAbs                7     2.9       362     6.8\n"
          "DownAbs              0     0.0         0     0.0\n"
          "Senses             176    73.3      2740    51.4\n"
          "Noise               12     5.0       130     2.4\n"
          "Total              240   100.0      5331   100.0\n");
  }
  SUBCASE("single label") {
    std::vector<LabeledRestriction> one{{"seek", SynRel::object(), "x", DiagnosticLabel::Ok, 7}};
    auto rows = diagnostic_summary(one);
    CHECK(rows[0].classes == 1);
    CHECK(rows[0].class_pct == 100.0);
    CHECK(rows[0].noun_pct == 100.0);
    CHECK(rows.back().nouns == 7);
  }
  SUBCASE("empty") {
    auto rows = diagnostic_summary({});
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) CHECK(r.classes == 0);
  }
  SUBCASE("duplicate labels are rejected") {
    std::vector<LabeledRestriction> dup{{"a", SynRel::object(), "x", DiagnosticLabel::Ok, 1},
                                        {"a", SynRel::object(), "x", DiagnosticLabel::Noise, 1}};
    CHECK_THROWS_AS(diagnostic_summary(dup), Error);
  }
}

TEST_CASE("class percentages sum to 100 after rounding") {
  std::mt19937 rng(31);
  for (int round = 0; round < 500; ++round) {
    std::vector<LabeledRestriction> labels;
    int n = 1 + static_cast<int>(rng() % 300);
    for (int i = 0; i < n; ++i)
      labels.push_back({"v", SynRel::object(), "c" + std::to_string(i), static_cast<DiagnosticLabel>(rng() % 5),
                        rng() % 50});
    auto rows = diagnostic_summary(labels);
    double sum = 0;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) sum += std::round(rows[i].class_pct * 10) / 10;
    CHECK(std::fabs(sum - 100.0) <= 0.2 + 1e-9);
  }
}

TEST_CASE("noun occurrences per class come from the gold file") {
  auto kb = toy_kb();
  auto gold = io::parse_gold(read_fixture("toy/gold.tsv"));
  CHECK(noun_occurrences(gold, kb.taxonomy, kb.lexicon, "drink", SynRel::subject(), "ANIMAL") == 1);
  CHECK(noun_occurrences(gold, kb.taxonomy, kb.lexicon, "drink", SynRel::subject(), "ENTITY") == 2);
}
