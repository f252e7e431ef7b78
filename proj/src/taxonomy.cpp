#include "selres/taxonomy.hpp"

#include <algorithm>
#include <iterator>

#include "selres/error.hpp"
#include "text.hpp"

namespace selres {

namespace {

struct PendingNode {
  std::string id;
  std::vector<std::string> parents;
  std::string gloss;
  std::size_t line = 0;
};

void check_id(std::string_view id, const std::string& source, std::size_t line,
              const char* what) {
  if (id.empty()) throw ParseError(source, line, std::string("empty ") + what);
  if (text::has_space(id))
    throw ParseError(source, line, std::string(what) + " '" + std::string(id) +
                                       "' contains whitespace");
}

// Returns one cycle among the nodes Kahn's algorithm could not order.
std::vector<ClassIndex> find_cycle(const std::vector<std::vector<ClassIndex>>& parents,
                                   const std::vector<bool>& unresolved) {
  const std::size_t n = parents.size();
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<ClassIndex> stack;
  std::vector<ClassIndex> cycle;

  std::function<bool(ClassIndex)> dfs = [&](ClassIndex c) {
    state[c] = 1;
    stack.push_back(c);
    for (ClassIndex p : parents[c]) {
      if (!unresolved[p]) continue;
      if (state[p] == 1) {
        auto it = std::find(stack.begin(), stack.end(), p);
        cycle.assign(it, stack.end());
        return true;
      }
      if (state[p] == 0 && dfs(p)) return true;
    }
    stack.pop_back();
    state[c] = 2;
    return false;
  };
  for (ClassIndex c = 0; c < n; ++c) {
    if (unresolved[c] && state[c] == 0 && dfs(c)) break;
  }
  return cycle;
}

}  // namespace

Taxonomy Taxonomy::parse(std::string_view input, const std::string& source) {
  std::vector<PendingNode> pending;
  Taxonomy t;

  text::for_each_line(input, [&](std::size_t line_no, std::string_view line) {
    if (text::skippable(line)) return;
    auto fields = text::split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3)
      throw ParseError(source, line_no, "expected <class_id>\\t<parents|->[\\t<gloss>]");
    PendingNode node;
    node.id = std::string(fields[0]);
    node.line = line_no;
    check_id(node.id, source, line_no, "class id");
    if (fields.size() == 3) node.gloss = std::string(fields[2]);
    if (fields[1] != "-") {
      for (auto p : text::split(fields[1], ',')) {
        check_id(p, source, line_no, "parent id");
        std::string parent(p);
        if (std::find(node.parents.begin(), node.parents.end(), parent) == node.parents.end())
          node.parents.push_back(std::move(parent));
      }
    }
    auto idx = static_cast<ClassIndex>(t.ids_.size());
    if (!t.index_.emplace(node.id, idx).second)
      throw ParseError(source, line_no, "duplicate class id '" + node.id + "'");
    t.ids_.push_back(node.id);
    t.gloss_.push_back(node.gloss);
    pending.push_back(std::move(node));
  });

  const std::size_t n = pending.size();
  t.parents_.resize(n);
  std::vector<std::vector<ClassIndex>> children(n);
  std::vector<std::size_t> missing(n, 0);
  for (ClassIndex c = 0; c < n; ++c) {
    for (const auto& p : pending[c].parents) {
      auto it = t.index_.find(p);
      if (it == t.index_.end())
        throw ParseError(source, pending[c].line,
                         "class '" + pending[c].id + "' references unknown parent '" + p + "'");
      t.parents_[c].push_back(it->second);
      children[it->second].push_back(c);
    }
    missing[c] = t.parents_[c].size();
  }

  // Kahn's algorithm, seeded in file order so the result is deterministic.
  std::vector<ClassIndex> ready;
  for (ClassIndex c = 0; c < n; ++c) {
    if (missing[c] == 0) ready.push_back(c);
  }
  std::reverse(ready.begin(), ready.end());
  while (!ready.empty()) {
    ClassIndex c = ready.back();
    ready.pop_back();
    t.topo_.push_back(c);
    for (auto it = children[c].rbegin(); it != children[c].rend(); ++it) {
      if (--missing[*it] == 0) ready.push_back(*it);
    }
  }
  if (t.topo_.size() != n) {
    std::vector<bool> unresolved(n, false);
    for (ClassIndex c = 0; c < n; ++c) unresolved[c] = missing[c] > 0;
    auto cycle = find_cycle(t.parents_, unresolved);
    std::string names;
    std::size_t first_line = pending[cycle.front()].line;
    for (ClassIndex c : cycle) {
      names += t.ids_[c] + " -> ";
      first_line = std::min(first_line, pending[c].line);
    }
    names += t.ids_[cycle.front()];
    throw ParseError(source, first_line, "cycle detected: " + names);
  }

  t.closure_.resize(n);
  for (ClassIndex c : t.topo_) {
    auto& cl = t.closure_[c];
    cl.push_back(c);
    for (ClassIndex p : t.parents_[c]) {
      const auto& pc = t.closure_[p];
      cl.insert(cl.end(), pc.begin(), pc.end());
    }
    std::sort(cl.begin(), cl.end());
    cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
  }
  return t;
}

std::optional<ClassIndex> Taxonomy::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ClassIndex Taxonomy::index_of(std::string_view id) const {
  auto found = find(id);
  if (!found) throw UnknownItemError("unknown class id '" + std::string(id) + "'");
  return *found;
}

std::vector<std::string> Taxonomy::hypernym_closure(std::string_view id) const {
  std::vector<std::string> out;
  for (ClassIndex c : closure(index_of(id))) out.push_back(ids_[c]);
  std::sort(out.begin(), out.end());
  return out;
}

bool Taxonomy::is_ancestor_or_equal(ClassIndex ancestor, ClassIndex descendant) const {
  const auto& cl = closure_[descendant];
  return std::binary_search(cl.begin(), cl.end(), ancestor);
}

bool Taxonomy::is_ancestor_or_equal(std::string_view ancestor,
                                    std::string_view descendant) const {
  return is_ancestor_or_equal(index_of(ancestor), index_of(descendant));
}

SenseLexicon SenseLexicon::parse(std::string_view input, const Taxonomy& taxonomy,
                                 const std::string& source) {
  SenseLexicon lex;
  text::for_each_line(input, [&](std::size_t line_no, std::string_view line) {
    if (text::skippable(line)) return;
    auto fields = text::split(line, '\t');
    if (fields.size() != 2)
      throw ParseError(source, line_no, "expected <noun_lemma>\\t<class_id,...>");
    std::string noun(fields[0]);
    check_id(noun, source, line_no, "noun lemma");
    std::vector<ClassIndex> senses;
    for (auto id : text::split(fields[1], ',')) {
      if (id.empty()) continue;
      auto c = taxonomy.find(id);
      if (!c)
        throw ParseError(source, line_no,
                         "noun '" + noun + "' references unknown class '" + std::string(id) + "'");
      senses.push_back(*c);
    }
    if (senses.empty())
      throw ParseError(source, line_no, "noun '" + noun + "' has no senses");
    std::sort(senses.begin(), senses.end());
    senses.erase(std::unique(senses.begin(), senses.end()), senses.end());

    if (!lex.index_.emplace(noun, lex.nouns_.size()).second)
      throw ParseError(source, line_no, "duplicate noun '" + noun + "'");

    std::map<ClassIndex, std::uint32_t> reach;
    for (ClassIndex s : senses) {
      for (ClassIndex a : taxonomy.closure(s)) ++reach[a];
    }
    std::vector<Membership> memberships;
    memberships.reserve(reach.size());
    for (auto [cls, k] : reach) memberships.push_back({cls, k});

    lex.nouns_.push_back(std::move(noun));
    lex.senses_.push_back(std::move(senses));
    lex.memberships_.push_back(std::move(memberships));
  });
  return lex;
}

std::optional<std::size_t> SenseLexicon::find(std::string_view noun) const {
  auto it = index_.find(noun);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SenseLexicon::require(std::string_view noun) const {
  auto i = find(noun);
  if (!i) throw UnknownItemError("unknown noun '" + std::string(noun) + "'");
  return *i;
}

std::span<const ClassIndex> SenseLexicon::senses(std::string_view noun) const {
  return senses_[require(noun)];
}

std::uint32_t SenseLexicon::senses_in(std::size_t i, ClassIndex c) const {
  const auto& ms = memberships_[i];
  auto it = std::lower_bound(ms.begin(), ms.end(), c,
                             [](const Membership& m, ClassIndex v) { return m.cls < v; });
  return (it != ms.end() && it->cls == c) ? it->senses_in : 0;
}

bool SenseLexicon::noun_in_class(std::string_view noun, ClassIndex c) const {
  return senses_in(require(noun), c) > 0;
}

Fraction SenseLexicon::sense_fraction(std::string_view noun, ClassIndex c) const {
  std::size_t i = require(noun);
  return {senses_in(i, c), sense_count(i)};
}

KnowledgeBase load_taxonomy(std::string_view taxonomy_text, std::string_view lexicon_text) {
  Taxonomy t = Taxonomy::parse(taxonomy_text);
  SenseLexicon lex = SenseLexicon::parse(lexicon_text, t);
  return {std::move(t), std::move(lex)};
}

std::vector<std::string> hypernym_closure(const Taxonomy& t, std::string_view c) {
  return t.hypernym_closure(c);
}

bool is_ancestor_or_equal(const Taxonomy& t, std::string_view a, std::string_view b) {
  return t.is_ancestor_or_equal(a, b);
}

bool noun_in_class(const Taxonomy& t, const SenseLexicon& lex, std::string_view noun,
                   std::string_view c) {
  return lex.noun_in_class(noun, t.index_of(c));
}

Fraction sense_fraction(const Taxonomy& t, const SenseLexicon& lex, std::string_view noun,
                        std::string_view c) {
  return lex.sense_fraction(noun, t.index_of(c));
}

}  // namespace selres
