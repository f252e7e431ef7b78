#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace selres {

// Dense index of a class inside one Taxonomy, assigned in file order.
using ClassIndex = std::uint32_t;

// Exact ratio of two small counts.
struct Fraction {
  std::uint32_t num = 0;
  std::uint32_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Immutable is-a hierarchy over semantic classes. Multiple parents and
// multiple roots are allowed; cycles are rejected at load time. The
// reflexive-transitive closure of every class is computed once during load.
class Taxonomy {
 public:
  // Parses `<class_id>\t<parents|->[\t<gloss>]` lines; `#` starts a comment.
  static Taxonomy parse(std::string_view text, const std::string& source = "taxonomy");

  std::size_t size() const { return ids_.size(); }
  bool contains(std::string_view id) const { return find(id).has_value(); }
  std::optional<ClassIndex> find(std::string_view id) const;
  // Throws UnknownItemError.
  ClassIndex index_of(std::string_view id) const;

  const std::string& id(ClassIndex c) const { return ids_[c]; }
  const std::string& gloss(ClassIndex c) const { return gloss_[c]; }
  std::span<const ClassIndex> parents(ClassIndex c) const { return parents_[c]; }

  // {c} and all its ancestors, sorted by index.
  std::span<const ClassIndex> closure(ClassIndex c) const { return closure_[c]; }
  // Same set as ids, sorted lexicographically.
  std::vector<std::string> hypernym_closure(std::string_view id) const;

  // True iff `ancestor` is in the closure of `descendant`.
  bool is_ancestor_or_equal(ClassIndex ancestor, ClassIndex descendant) const;
  bool is_ancestor_or_equal(std::string_view ancestor, std::string_view descendant) const;
  bool related(ClassIndex a, ClassIndex b) const {
    return is_ancestor_or_equal(a, b) || is_ancestor_or_equal(b, a);
  }

  // Parents before children.
  const std::vector<ClassIndex>& topological_order() const { return topo_; }

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> gloss_;
  std::map<std::string, ClassIndex, std::less<>> index_;
  std::vector<std::vector<ClassIndex>> parents_;
  std::vector<std::vector<ClassIndex>> closure_;
  std::vector<ClassIndex> topo_;
};

// A class reached by some sense of a noun, with how many of the noun's
// senses reach it.
struct Membership {
  ClassIndex cls = 0;
  std::uint32_t senses_in = 0;
};

// Maps noun lemmas to their sense classes. Built against one Taxonomy and
// holds indices into it; membership in every hypernym is precomputed.
class SenseLexicon {
 public:
  // Parses `<noun_lemma>\t<class_id,...>` lines; `#` starts a comment.
  static SenseLexicon parse(std::string_view text, const Taxonomy& taxonomy,
                            const std::string& source = "lexicon");

  std::size_t size() const { return nouns_.size(); }
  bool contains(std::string_view noun) const { return find(noun).has_value(); }
  std::optional<std::size_t> find(std::string_view noun) const;
  const std::string& noun(std::size_t i) const { return nouns_[i]; }

  // Throws UnknownItemError for an unknown noun.
  std::span<const ClassIndex> senses(std::string_view noun) const;
  std::span<const ClassIndex> senses(std::size_t i) const { return senses_[i]; }
  std::span<const Membership> memberships(std::size_t i) const { return memberships_[i]; }
  std::uint32_t sense_count(std::size_t i) const {
    return static_cast<std::uint32_t>(senses_[i].size());
  }

  // Number of senses of noun i under class c (0 when none).
  std::uint32_t senses_in(std::size_t i, ClassIndex c) const;
  bool noun_in_class(std::string_view noun, ClassIndex c) const;
  Fraction sense_fraction(std::string_view noun, ClassIndex c) const;

 private:
  std::size_t require(std::string_view noun) const;

  std::vector<std::string> nouns_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<ClassIndex>> senses_;
  std::vector<std::vector<Membership>> memberships_;  // sorted by cls
};

struct KnowledgeBase {
  Taxonomy taxonomy;
  SenseLexicon lexicon;
};

KnowledgeBase load_taxonomy(std::string_view taxonomy_text, std::string_view lexicon_text);

// Free-function forms of the queries, taking class ids as strings. Unknown
// ids or nouns raise UnknownItemError.
std::vector<std::string> hypernym_closure(const Taxonomy& t, std::string_view c);
bool is_ancestor_or_equal(const Taxonomy& t, std::string_view a, std::string_view b);
bool noun_in_class(const Taxonomy& t, const SenseLexicon& lex, std::string_view noun,
                   std::string_view c);
Fraction sense_fraction(const Taxonomy& t, const SenseLexicon& lex, std::string_view noun,
                        std::string_view c);

}  // namespace selres
