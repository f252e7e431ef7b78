#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selres/tree.hpp"

namespace selres {

// Syntactic position of a complement: subject, direct object, or the
// preposition heading a PP. Coded on disk as "0", "1" or the preposition.
class SynRel {
 public:
  enum class Kind { Subject, Object, Prep };

  static SynRel subject() { return SynRel(Kind::Subject, {}); }
  static SynRel object() { return SynRel(Kind::Object, {}); }
  // Lowercases `preposition`; throws Error if it is empty or "0"/"1".
  static SynRel prep(std::string_view preposition);
  static SynRel from_code(std::string_view code);

  Kind kind() const { return kind_; }
  const std::string& preposition() const { return prep_; }
  std::string code() const;

  friend auto operator<=>(const SynRel&, const SynRel&) = default;
  friend bool operator==(const SynRel&, const SynRel&) = default;

 private:
  SynRel(Kind kind, std::string prep) : kind_(kind), prep_(std::move(prep)) {}

  Kind kind_;
  std::string prep_;
};

enum class DiscardReason { NonNounHead, LemmaFailure };

std::string_view to_string(DiscardReason r);
std::optional<DiscardReason> parse_discard_reason(std::string_view s);

struct TripleRecord {
  std::string verb;
  SynRel rel = SynRel::subject();
  std::string noun;
  std::size_t sentence_id = 0;
  std::optional<DiscardReason> discard_reason;

  bool kept() const { return !discard_reason.has_value(); }
};

enum class CoarsePos { Noun, Verb };

// Surface form to lemma lookup, case-folded on both sides. A lemma may not
// itself be listed as a form of a different lemma, which keeps lookups
// idempotent.
class LemmaTable {
 public:
  // Parses `<form>\t<noun|verb>\t<lemma>` lines; `#` starts a comment.
  static LemmaTable parse(std::string_view text, const std::string& source = "lemmas");

  std::optional<std::string_view> lookup(std::string_view form, CoarsePos pos) const;
  bool is_lemma(std::string_view word, CoarsePos pos) const;
  std::size_t size() const { return forms_[0].size() + forms_[1].size(); }

 private:
  static std::size_t slot(CoarsePos pos) { return pos == CoarsePos::Noun ? 0 : 1; }

  std::map<std::string, std::string, std::less<>> forms_[2];
  std::set<std::string, std::less<>> lemmas_[2];
};

struct LemmaResult {
  std::string lemma;
  bool failure = false;
};

// Table lookup, then suffix stripping (-s/-es/-ies for nouns;
// -s/-es/-ies/-ied/-ed/-ing for verbs). Forms with non-alphabetic
// characters that the table does not list come back as failures.
LemmaResult lemmatize(std::string_view form, CoarsePos pos, const LemmaTable& table);

// Label and tag inventories. Defaults follow the Penn Treebank.
struct TagSet {
  std::set<std::string, std::less<>> noun_tags{"NN", "NNS", "NNP", "NNPS"};
  std::set<std::string, std::less<>> verb_tags{"VB", "VBD", "VBG", "VBN", "VBP", "VBZ"};
  std::set<std::string, std::less<>> clause_labels{"S", "SINV", "SQ"};
  std::set<std::string, std::less<>> np_labels{"NP"};
  std::set<std::string, std::less<>> vp_labels{"VP"};
  std::set<std::string, std::less<>> pp_labels{"PP"};

  // Overrides sets from `<noun|verb|clause|np|vp|pp>\t<label,...>` lines.
  static TagSet parse(std::string_view text, const std::string& source = "tagset");
};

// Category of a treebank label with function tags and indices removed:
// "NP-SBJ-1" -> "NP", "PP=2" -> "PP". Labels such as "-NONE-" are kept.
std::string_view label_category(std::string_view label);

struct NounHead {
  std::string form;
  std::string tag;
};

// Rightmost noun-tagged preterminal among the NP's immediate children;
// nullopt stands for a non-noun head.
std::optional<NounHead> np_head(const ParseTree& np, const TagSet& tags = {});

// Verb-complement triples for every clause in `tree`, in pre-order. Triples
// whose head is not a noun or whose lemma fails are kept with a reason set.
std::vector<TripleRecord> extract_triples(const ParseTree& tree, const LemmaTable& lemmas,
                                          const TagSet& tags = {},
                                          std::size_t sentence_id = 1);

struct ExtractionStats {
  std::size_t raw = 0;
  std::size_t non_noun_head = 0;
  std::size_t lemma_failure = 0;
  std::size_t kept = 0;
};

struct ExtractionResult {
  std::vector<TripleRecord> records;  // kept and discarded, corpus order
  ExtractionStats stats;
};

// Sentence ids are 1-based positions in `trees`.
ExtractionResult extract_corpus(const std::vector<ParseTree>& trees, const LemmaTable& lemmas,
                                const TagSet& tags = {});

}  // namespace selres
