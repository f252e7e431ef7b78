#include "selres/extractor.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "selres/error.hpp"
#include "text.hpp"

namespace selres {

SynRel SynRel::prep(std::string_view preposition) {
  std::string p = text::lower(preposition);
  if (p.empty() || p == "0" || p == "1" || text::has_space(p))
    throw Error("invalid preposition '" + std::string(preposition) + "'");
  return SynRel(Kind::Prep, std::move(p));
}

SynRel SynRel::from_code(std::string_view code) {
  if (code == "0") return subject();
  if (code == "1") return object();
  return prep(code);
}

std::string SynRel::code() const {
  switch (kind_) {
    case Kind::Subject:
      return "0";
    case Kind::Object:
      return "1";
    case Kind::Prep:
      break;
  }
  return prep_;
}

std::string_view to_string(DiscardReason r) {
  return r == DiscardReason::NonNounHead ? "non_noun_head" : "lemma_failure";
}

std::optional<DiscardReason> parse_discard_reason(std::string_view s) {
  if (s == "non_noun_head") return DiscardReason::NonNounHead;
  if (s == "lemma_failure") return DiscardReason::LemmaFailure;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lemmatizer

namespace {

std::optional<CoarsePos> parse_pos(std::string_view s) {
  if (s == "noun" || s == "n") return CoarsePos::Noun;
  if (s == "verb" || s == "v") return CoarsePos::Verb;
  return std::nullopt;
}

bool is_alpha(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalpha(static_cast<unsigned char>(ch)) != 0;
  });
}

bool is_vowel(char ch) { return std::string_view("aeiou").find(ch) != std::string_view::npos; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

struct SuffixRule {
  std::string_view suffix;
  std::string_view replacement;
  std::size_t min_stem;
  enum Guard { None, Sibilant, NotSibilantS, Undouble } guard;
};

constexpr std::array<SuffixRule, 3> kNounRules{{
    {"ies", "y", 2, SuffixRule::None},
    {"es", "", 2, SuffixRule::Sibilant},
    {"s", "", 2, SuffixRule::NotSibilantS},
}};

constexpr std::array<SuffixRule, 6> kVerbRules{{
    {"ies", "y", 2, SuffixRule::None},
    {"ied", "y", 2, SuffixRule::None},
    {"es", "", 2, SuffixRule::Sibilant},
    {"s", "", 2, SuffixRule::NotSibilantS},
    {"ing", "", 3, SuffixRule::Undouble},
    {"ed", "", 3, SuffixRule::Undouble},
}};

std::optional<std::string> apply(const SuffixRule& rule, std::string_view word) {
  if (!ends_with(word, rule.suffix)) return std::nullopt;
  std::string_view stem = word.substr(0, word.size() - rule.suffix.size());
  if (stem.size() < rule.min_stem) return std::nullopt;
  switch (rule.guard) {
    case SuffixRule::None:
      break;
    case SuffixRule::Sibilant:
      if (!(ends_with(stem, "ss") || ends_with(stem, "x") || ends_with(stem, "z") ||
            ends_with(stem, "ch") || ends_with(stem, "sh")))
        return std::nullopt;
      break;
    case SuffixRule::NotSibilantS:
      if (ends_with(word, "ss") || ends_with(word, "us") || ends_with(word, "is"))
        return std::nullopt;
      break;
    case SuffixRule::Undouble: {
      std::string out(stem);
      std::size_t n = out.size();
      if (n >= 2 && out[n - 1] == out[n - 2] && !is_vowel(out[n - 1]) &&
          std::string_view("lsz").find(out[n - 1]) == std::string_view::npos)
        out.pop_back();
      return out + std::string(rule.replacement);
    }
  }
  return std::string(stem) + std::string(rule.replacement);
}

template <std::size_t N>
bool any_rule_applies(const std::array<SuffixRule, N>& rules, std::string_view word) {
  return std::any_of(rules.begin(), rules.end(),
                     [&](const SuffixRule& r) { return apply(r, word).has_value(); });
}

template <std::size_t N>
std::optional<std::string> strip_suffix(const std::array<SuffixRule, N>& rules,
                                        std::string_view word, CoarsePos pos,
                                        const LemmaTable& table) {
  // A candidate is accepted only if it is a fixed point: listed in the
  // table, a known lemma, or a word no rule would strip further.
  for (const auto& rule : rules) {
    auto candidate = apply(rule, word);
    if (!candidate) continue;
    // "approved" -> "approve" rather than "approv" when the table knows the lemma.
    if (rule.guard == SuffixRule::Undouble && table.is_lemma(*candidate + "e", pos))
      return *candidate + "e";
    if (auto hit = table.lookup(*candidate, pos)) return std::string(*hit);
    if (table.is_lemma(*candidate, pos)) return candidate;
    if (!any_rule_applies(rules, *candidate)) return candidate;
  }
  return std::nullopt;
}

}  // namespace

LemmaTable LemmaTable::parse(std::string_view input, const std::string& source) {
  LemmaTable t;
  struct Entry {
    std::string form;
    CoarsePos pos;
    std::string lemma;
    std::size_t line;
  };
  std::vector<Entry> entries;
  text::for_each_line(input, [&](std::size_t line_no, std::string_view line) {
    if (text::skippable(line)) return;
    auto fields = text::split(line, '\t');
    if (fields.size() != 3) throw ParseError(source, line_no, "expected <form>\\t<pos>\\t<lemma>");
    auto pos = parse_pos(fields[1]);
    if (!pos) throw ParseError(source, line_no, "pos must be noun or verb");
    std::string form = text::lower(fields[0]);
    std::string lemma = text::lower(fields[2]);
    if (form.empty() || lemma.empty() || text::has_space(form) || text::has_space(lemma))
      throw ParseError(source, line_no, "empty or malformed form/lemma");
    auto [it, inserted] = t.forms_[slot(*pos)].emplace(form, lemma);
    if (!inserted && it->second != lemma)
      throw ParseError(source, line_no, "form '" + form + "' already maps to '" + it->second + "'");
    t.lemmas_[slot(*pos)].insert(lemma);
    entries.push_back({std::move(form), *pos, std::move(lemma), line_no});
  });
  for (const auto& e : entries) {
    auto hit = t.lookup(e.lemma, e.pos);
    if (hit && *hit != e.lemma)
      throw ParseError(source, e.line,
                       "lemma '" + e.lemma + "' is itself listed as a form of '" +
                           std::string(*hit) + "'");
  }
  return t;
}

std::optional<std::string_view> LemmaTable::lookup(std::string_view form, CoarsePos pos) const {
  const auto& m = forms_[slot(pos)];
  auto it = m.find(form);
  if (it == m.end()) return std::nullopt;
  return std::string_view(it->second);
}

bool LemmaTable::is_lemma(std::string_view word, CoarsePos pos) const {
  return lemmas_[slot(pos)].contains(word);
}

LemmaResult lemmatize(std::string_view form, CoarsePos pos, const LemmaTable& table) {
  std::string folded = text::lower(form);
  if (auto hit = table.lookup(folded, pos)) return {std::string(*hit), false};
  if (table.is_lemma(folded, pos)) return {folded, false};
  if (!is_alpha(folded)) return {folded, true};
  std::optional<std::string> stripped = pos == CoarsePos::Noun
                                            ? strip_suffix(kNounRules, folded, pos, table)
                                            : strip_suffix(kVerbRules, folded, pos, table);
  if (stripped) return {std::move(*stripped), false};
  return {folded, false};
}

// ---------------------------------------------------------------------------
// Tag sets and head finding

TagSet TagSet::parse(std::string_view input, const std::string& source) {
  TagSet tags;
  text::for_each_line(input, [&](std::size_t line_no, std::string_view line) {
    if (text::skippable(line)) return;
    auto fields = text::split(line, '\t');
    if (fields.size() != 2) throw ParseError(source, line_no, "expected <set>\\t<label,...>");
    std::set<std::string, std::less<>>* target = nullptr;
    if (fields[0] == "noun") target = &tags.noun_tags;
    else if (fields[0] == "verb") target = &tags.verb_tags;
    else if (fields[0] == "clause") target = &tags.clause_labels;
    else if (fields[0] == "np") target = &tags.np_labels;
    else if (fields[0] == "vp") target = &tags.vp_labels;
    else if (fields[0] == "pp") target = &tags.pp_labels;
    else throw ParseError(source, line_no, "unknown set '" + std::string(fields[0]) + "'");
    target->clear();
    for (auto label : text::split(fields[1], ',')) {
      if (!label.empty()) target->emplace(label);
    }
    if (target->empty()) throw ParseError(source, line_no, "empty label set");
  });
  return tags;
}

std::string_view label_category(std::string_view label) {
  if (label.empty() || label.front() == '-') return label;
  std::size_t cut = label.find_first_of("-=");
  return cut == std::string_view::npos ? label : label.substr(0, cut);
}

namespace {

bool in(const std::set<std::string, std::less<>>& set, std::string_view label) {
  return set.contains(label_category(label));
}

const ParseTree* rightmost_leaf(const ParseTree& t) {
  const ParseTree* cur = &t;
  while (!cur->is_leaf()) cur = &cur->children.back();
  return cur;
}

const ParseTree* first_child(const ParseTree& t, const std::set<std::string, std::less<>>& labels) {
  for (const auto& c : t.children) {
    if (!c.is_leaf() && in(labels, c.label)) return &c;
  }
  return nullptr;
}

class ClauseExtractor {
 public:
  ClauseExtractor(const LemmaTable& lemmas, const TagSet& tags, std::size_t sentence_id,
                  std::vector<TripleRecord>& out)
      : lemmas_(lemmas), tags_(tags), sentence_id_(sentence_id), out_(out) {}

  void visit(const ParseTree& node) {
    if (node.is_leaf()) return;
    if (in(tags_.clause_labels, node.label)) clause(node);
    for (const auto& c : node.children) visit(c);
  }

 private:
  void clause(const ParseTree& s) {
    const ParseTree* vp = nullptr;
    const ParseTree* subject = nullptr;
    for (const auto& c : s.children) {
      if (c.is_leaf()) continue;
      if (in(tags_.vp_labels, c.label)) {
        vp = &c;
        break;
      }
      if (in(tags_.np_labels, c.label)) subject = &c;
    }
    if (!vp) return;

    const ParseTree* inner = vp;
    while (const ParseTree* nested = first_child(*inner, tags_.vp_labels)) inner = nested;

    const ParseTree* verb_leaf = nullptr;
    for (const auto& c : inner->children) {
      if (c.is_leaf() && tags_.verb_tags.contains(c.label)) verb_leaf = &c;
    }
    if (!verb_leaf) return;
    LemmaResult verb = lemmatize(verb_leaf->token, CoarsePos::Verb, lemmas_);

    if (subject) emit(verb, SynRel::subject(), *subject);
    if (const ParseTree* object = first_child(*inner, tags_.np_labels))
      emit(verb, SynRel::object(), *object);
    for (const auto& c : inner->children) {
      if (c.is_leaf() || !in(tags_.pp_labels, c.label)) continue;
      const ParseTree* prep = nullptr;
      const ParseTree* np = nullptr;
      for (const auto& pc : c.children) {
        if (pc.is_leaf()) {
          if (!prep && !np) prep = &pc;
        } else if (in(tags_.np_labels, pc.label)) {
          np = &pc;
          break;
        }
      }
      if (!prep || !np) continue;
      std::string p = text::lower(prep->token);
      if (p.empty() || p == "0" || p == "1" || text::has_space(p)) continue;
      emit(verb, SynRel::prep(p), *np);
    }
  }

  void emit(const LemmaResult& verb, SynRel rel, const ParseTree& np) {
    TripleRecord rec;
    rec.verb = verb.lemma;
    rec.rel = std::move(rel);
    rec.sentence_id = sentence_id_;
    auto head = np_head(np, tags_);
    if (!head) {
      rec.noun = text::lower(rightmost_leaf(np)->token);
      rec.discard_reason = DiscardReason::NonNounHead;
    } else {
      LemmaResult noun = lemmatize(head->form, CoarsePos::Noun, lemmas_);
      rec.noun = std::move(noun.lemma);
      if (verb.failure || noun.failure) rec.discard_reason = DiscardReason::LemmaFailure;
    }
    out_.push_back(std::move(rec));
  }

  const LemmaTable& lemmas_;
  const TagSet& tags_;
  std::size_t sentence_id_;
  std::vector<TripleRecord>& out_;
};

}  // namespace

std::optional<NounHead> np_head(const ParseTree& np, const TagSet& tags) {
  for (auto it = np.children.rbegin(); it != np.children.rend(); ++it) {
    if (it->is_leaf() && tags.noun_tags.contains(it->label)) return NounHead{it->token, it->label};
  }
  return std::nullopt;
}

std::vector<TripleRecord> extract_triples(const ParseTree& tree, const LemmaTable& lemmas,
                                          const TagSet& tags, std::size_t sentence_id) {
  std::vector<TripleRecord> out;
  ClauseExtractor(lemmas, tags, sentence_id, out).visit(tree);
  return out;
}

ExtractionResult extract_corpus(const std::vector<ParseTree>& trees, const LemmaTable& lemmas,
                                const TagSet& tags) {
  ExtractionResult result;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    auto records = extract_triples(trees[i], lemmas, tags, i + 1);
    for (auto& r : records) {
      ++result.stats.raw;
      if (!r.discard_reason) ++result.stats.kept;
      else if (*r.discard_reason == DiscardReason::NonNounHead) ++result.stats.non_noun_head;
      else ++result.stats.lemma_failure;
      result.records.push_back(std::move(r));
    }
  }
  return result;
}

}  // namespace selres
