#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selres/error.hpp"
#include "selres/extractor.hpp"
#include "selres/learner.hpp"
#include "selres/tree.hpp"
#include "support.hpp"

using namespace selres;
using namespace testsupport;

namespace {

std::vector<std::string> render(const std::vector<SelectionalRestriction>& srs) {
  std::vector<std::string> out;
  for (const auto& s : srs) out.push_back(s.verb + " " + s.rel.code() + " " + s.cls + " " + io::format_score(s.score));
  return out;
}

LearnerConfig toy_config(bool keep) {
  LearnerConfig cfg;
  cfg.threshold = 1;
  cfg.min_verb_support = 1;
  cfg.keep_nonpositive = keep;
  return cfg;
}

}  // namespace

TEST_CASE("toy corpus restrictions") {
  auto kb = toy_kb();
  auto ct = CountsTable::accumulate(toy_triples());
  SUBCASE("nonpositive candidates dropped") {
    auto r = learn_all(ct, kb.taxonomy, kb.lexicon, toy_config(false));
    CHECK(render(r.restrictions) ==
          std::vector<std::string>{"drink 0 ANIMAL 0.415037", "sleep 0 MAN 2.000000"});
  }
  SUBCASE("nonpositive candidates kept") {
    auto r = learn_all(ct, kb.taxonomy, kb.lexicon, toy_config(true));
    CHECK(render(r.restrictions) == std::vector<std::string>{"drink 0 ANIMAL 0.415037",
                                                             "drink 1 WATER 0.000000",
                                                             "sleep 0 MAN 2.000000"});
  }
}

TEST_CASE("candidate space and selection for (drink, subject)") {
  auto kb = toy_kb();
  auto ct = CountsTable::accumulate(toy_triples());
  auto cands = candidate_space(ct, kb.taxonomy, kb.lexicon, "drink", SynRel::subject(), toy_config(true));
  std::vector<std::string> ids;
  for (const auto& c : cands) ids.push_back(kb.taxonomy.id(c.cls));
  std::sort(ids.begin(), ids.end());
  CHECK(ids == std::vector<std::string>{"ANIMAL", "CAT", "DOG", "ENTITY"});
  auto sel = select_disjoint(cands, kb.taxonomy);
  REQUIRE(sel.size() == 1);
  CHECK(kb.taxonomy.id(sel[0].cls) == "ANIMAL");
  CHECK(sel[0].support == 3);
  CHECK(sel[0].n_nouns == 2);

  auto cfg = toy_config(true);
  cfg.threshold = 2;
  auto pruned = candidate_space(ct, kb.taxonomy, kb.lexicon, "drink", SynRel::subject(), cfg);
  for (const auto& c : pruned) CHECK(c.support >= 2);
  CHECK(pruned.size() == 3);  // CAT has a single occurrence
}

TEST_CASE("tie-break order") {
  auto t = Taxonomy::parse("root\t-\na\troot\nb\troot\nleaf\ta\n");
  auto c = [&](const char* id, double score, std::uint64_t support, std::uint32_t n) {
    return ScoredCandidate{t.index_of(id), score, n, support};
  };
  CHECK(better_candidate(t, c("a", 1.0, 1, 1), c("b", 0.5, 9, 9)));
  CHECK(better_candidate(t, c("b", 1.0, 5, 1), c("a", 1.0, 4, 9)));
  CHECK(better_candidate(t, c("b", 1.0, 5, 3), c("a", 1.0, 5, 2)));
  CHECK(better_candidate(t, c("leaf", 0.0, 5, 3), c("a", 0.0, 5, 3)));  // more specific first
  CHECK(better_candidate(t, c("a", 0.0, 5, 3), c("b", 0.0, 5, 3)));     // then by id
  CHECK_FALSE(better_candidate(t, c("a", 0.0, 5, 3), c("a", 0.0, 5, 3)));
}

TEST_CASE("figure example restrictions") {
  auto kb = load_taxonomy(read_fixture("fig1/taxonomy.tsv"), read_fixture("fig1/lexicon.tsv"));
  auto lt = LemmaTable::parse(read_fixture("fig1/lemmas.tsv"));
  auto ex = extract_corpus(parse_bracketed(read_fixture("fig1/trees.mrg")), lt);
  std::vector<TripleRecord> kept;
  for (const auto& r : ex.records)
    if (r.kept()) kept.push_back(r);
  auto ct = CountsTable::accumulate(kept);
  LearnerConfig cfg;
  cfg.min_verb_support = 1;
  auto r = learn_all(ct, kb.taxonomy, kb.lexicon, cfg);
  CHECK(render(r.restrictions) ==
        std::vector<std::string>{"seek 0 person_individual 0.000000", "seek 1 legal_instrument 0.415037"});
}

TEST_CASE("empty corpus and support floor") {
  auto kb = toy_kb();
  CHECK(learn_all(CountsTable{}, kb.taxonomy, kb.lexicon, LearnerConfig{}).restrictions.empty());
  auto ct = CountsTable::accumulate(toy_triples());
  CHECK(learn_all(ct, kb.taxonomy, kb.lexicon, LearnerConfig{}).restrictions.empty());  // min_verb_support 10
}

TEST_CASE("configuration validation") {
  LearnerConfig cfg;
  cfg.threshold = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.threshold = 1;
  cfg.min_verb_support = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("every scorer and estimator yields disjoint output") {
  auto kb = toy_kb();
  auto ct = CountsTable::accumulate(toy_triples());
  for (auto sc : {ScoreKind::Assoc, ScoreKind::AssocPairMI, ScoreKind::LogLikelihoodRatio})
    for (auto est : {EstimatorKind::Raw, EstimatorKind::SenseCorrected}) {
      auto cfg = toy_config(true);
      cfg.scorer = sc;
      cfg.estimator = est;
      auto r = learn_all(ct, kb.taxonomy, kb.lexicon, cfg);
      CHECK(r.failures.empty());
      CHECK(r.restrictions.size() == 3);
    }
}

TEST_CASE("candidate report marks the selection") {
  auto kb = toy_kb();
  auto ct = CountsTable::accumulate(toy_triples());
  auto rows = candidate_report(ct, kb.taxonomy, kb.lexicon, "drink", SynRel::subject(), toy_config(true));
  REQUIRE(rows.size() == 4);
  CHECK(kb.taxonomy.id(rows[0].candidate.cls) == "ANIMAL");
  CHECK(rows[0].selected);
  CHECK(rows[0].example_nouns == std::vector<std::string>{"dog", "cat"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK_FALSE(rows[i].selected);
}

TEST_CASE("parallel learning is deterministic") {
  std::mt19937 rng(5);
  auto ts = random_taxonomy(rng, 40);
  auto ls = random_lexicon(rng, ts, 25);
  auto kb = load_taxonomy(ts.text(), ls.text(ts));
  std::vector<Triple> corpus;
  for (int i = 0; i < 20; ++i) {
    auto part = random_corpus(rng, ls, 100);
    corpus.insert(corpus.end(), part.begin(), part.end());
  }
  auto ct = CountsTable::accumulate(to_records(corpus));
  auto cfg = toy_config(true);
  cfg.threshold = 2;
  auto one = io::format_restrictions(learn_all(ct, kb.taxonomy, kb.lexicon, cfg, 1).restrictions);
  for (unsigned jobs : {2u, 3u, 8u})
    CHECK(io::format_restrictions(learn_all(ct, kb.taxonomy, kb.lexicon, cfg, jobs).restrictions) == one);
}
