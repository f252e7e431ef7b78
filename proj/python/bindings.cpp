#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "selres/error.hpp"
#include "selres/eval.hpp"
#include "selres/extractor.hpp"
#include "selres/learner.hpp"
#include "selres/stats.hpp"
#include "selres/taxonomy.hpp"
#include "selres/tree.hpp"

namespace py = pybind11;
using namespace selres;

namespace {

EstimatorKind estimator_arg(const std::string& s) {
  auto e = parse_estimator(s);
  if (!e) throw py::value_error("estimator must be 'raw' or 'sense'");
  return *e;
}

CoarsePos pos_arg(const std::string& s) {
  if (s == "noun") return CoarsePos::Noun;
  if (s == "verb") return CoarsePos::Verb;
  throw py::value_error("pos must be 'noun' or 'verb'");
}

TripleRecord triple_from(const py::handle& h) {
  auto t = h.cast<py::tuple>();
  if (t.size() != 3) throw py::value_error("triples are (verb, rel, noun) tuples");
  TripleRecord r;
  r.verb = t[0].cast<std::string>();
  r.rel = SynRel::from_code(t[1].cast<std::string>());
  r.noun = t[2].cast<std::string>();
  return r;
}

std::vector<TripleRecord> triples_from(const py::iterable& items) {
  std::vector<TripleRecord> out;
  for (auto h : items) {
    if (py::isinstance<TripleRecord>(h)) out.push_back(h.cast<TripleRecord>());
    else out.push_back(triple_from(h));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_selres, m) {
  m.doc() = "Class-based selectional restriction learning";

  static py::exception<Error> base_error(m, "SelresError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const UnknownItemError& e) {
      PyErr_SetString(PyExc_KeyError, e.what());
    } catch (const Error& e) {
      py::set_error(base_error, e.what());
    }
  });

  py::class_<Taxonomy>(m, "Taxonomy")
      .def_static("parse", &Taxonomy::parse, py::arg("text"), py::arg("source") = "taxonomy")
      .def("__len__", &Taxonomy::size)
      .def("__contains__", [](const Taxonomy& t, const std::string& id) { return t.contains(id); })
      .def("hypernym_closure", &Taxonomy::hypernym_closure)
      .def("is_ancestor_or_equal",
           py::overload_cast<std::string_view, std::string_view>(&Taxonomy::is_ancestor_or_equal,
                                                                 py::const_),
           py::arg("ancestor"), py::arg("descendant"));

  py::class_<SenseLexicon>(m, "SenseLexicon")
      .def_static("parse", &SenseLexicon::parse, py::arg("text"), py::arg("taxonomy"),
                  py::arg("source") = "lexicon")
      .def("__len__", &SenseLexicon::size)
      .def("__contains__",
           [](const SenseLexicon& l, const std::string& n) { return l.contains(n); });

  m.def("load_taxonomy", [](const std::string& tax, const std::string& lex) {
    auto kb = load_taxonomy(tax, lex);
    return py::make_tuple(std::move(kb.taxonomy), std::move(kb.lexicon));
  });
  m.def("noun_in_class", &noun_in_class, py::arg("taxonomy"), py::arg("lexicon"), py::arg("noun"),
        py::arg("cls"));
  m.def(
      "sense_fraction",
      [](const Taxonomy& t, const SenseLexicon& l, const std::string& n, const std::string& c) {
        auto f = sense_fraction(t, l, n, c);
        return py::make_tuple(f.num, f.den);
      },
      "Returns (senses under the class, total senses)");

  py::class_<ParseTree>(m, "ParseTree")
      .def_readonly("label", &ParseTree::label)
      .def_readonly("token", &ParseTree::token)
      .def_readonly("children", &ParseTree::children)
      .def("__str__", &to_bracketed);
  m.def("parse_bracketed", &parse_bracketed);

  py::class_<TripleRecord>(m, "TripleRecord")
      .def_readonly("verb", &TripleRecord::verb)
      .def_property_readonly("rel", [](const TripleRecord& r) { return r.rel.code(); })
      .def_readonly("noun", &TripleRecord::noun)
      .def_readonly("sentence_id", &TripleRecord::sentence_id)
      .def_property_readonly("discard_reason",
                             [](const TripleRecord& r) -> py::object {
                               if (!r.discard_reason) return py::none();
                               return py::str(std::string(to_string(*r.discard_reason)));
                             })
      .def("as_tuple",
           [](const TripleRecord& r) { return py::make_tuple(r.verb, r.rel.code(), r.noun); })
      .def("__repr__", [](const TripleRecord& r) {
        return "TripleRecord(" + r.verb + ", " + r.rel.code() + ", " + r.noun + ")";
      });

  py::class_<LemmaTable>(m, "LemmaTable")
      .def(py::init<>())
      .def_static("parse", &LemmaTable::parse, py::arg("text"), py::arg("source") = "lemmas");
  m.def(
      "lemmatize",
      [](const std::string& form, const std::string& pos, const LemmaTable& t) {
        auto r = lemmatize(form, pos_arg(pos), t);
        return py::make_tuple(r.lemma, r.failure);
      },
      py::arg("form"), py::arg("pos"), py::arg("table"), "Returns (lemma, failed)");
  m.def(
      "extract_triples",
      [](const ParseTree& t, const LemmaTable& lt) { return extract_triples(t, lt); },
      py::arg("tree"), py::arg("lemmas"));
  m.def(
      "extract_corpus",
      [](const std::string& text, const LemmaTable& lt) {
        auto r = extract_corpus(parse_bracketed(text), lt);
        py::dict stats;
        stats["raw"] = r.stats.raw;
        stats["non_noun_head"] = r.stats.non_noun_head;
        stats["lemma_failure"] = r.stats.lemma_failure;
        stats["kept"] = r.stats.kept;
        return py::make_tuple(r.records, stats);
      },
      py::arg("text"), py::arg("lemmas"), "Returns (records, stats)");

  py::class_<CountsTable>(m, "CountsTable")
      .def_static(
          "accumulate",
          [](const py::iterable& items) {
            auto triples = triples_from(items);
            return CountsTable::accumulate(triples);
          },
          "Counts (verb, rel, noun) tuples or kept TripleRecords")
      .def("count",
           [](const CountsTable& ct, const std::string& v, const std::string& s,
              const std::string& n) { return ct.count(v, SynRel::from_code(s), n); })
      .def("position_total", [](const CountsTable& ct,
                                const std::string& s) { return ct.position_total(SynRel::from_code(s)); })
      .def("verb_position_total",
           [](const CountsTable& ct, const std::string& v, const std::string& s) {
             return ct.verb_position_total(v, SynRel::from_code(s));
           })
      .def_property_readonly("grand_total", &CountsTable::grand_total);

  auto rel_query = [](auto fn) {
    return [fn](const CountsTable& ct, const Taxonomy& t, const SenseLexicon& l,
                const std::string& v, const std::string& s, const std::string& c,
                const std::string& est) {
      return fn(ct, t, l, v, SynRel::from_code(s), c, estimator_arg(est));
    };
  };
  auto args = std::make_tuple(py::arg("counts"), py::arg("taxonomy"), py::arg("lexicon"),
                              py::arg("verb"), py::arg("rel"), py::arg("cls"),
                              py::arg("estimator") = "raw");
  auto def_query = [&](const char* name, auto fn, const char* doc) {
    std::apply([&](auto... a) { m.def(name, rel_query(fn), a..., doc); }, args);
  };

  def_query("class_count", &class_count, "Class count for (verb, rel)");
  def_query(
      "cond_probs",
      [](auto&&... a) {
        auto p = cond_probs(a...);
        py::dict d;
        d["p_c_given_vs"] = p.p_c_given_vs;
        d["p_v_given_s"] = p.p_v_given_s;
        d["p_c_given_s"] = p.p_c_given_s;
        d["p_vc_given_s"] = p.p_vc_given_s;
        return d;
      },
      "Conditional probabilities behind Assoc");
  def_query(
      "assoc", [](auto&&... a) { return assoc(a...).value; }, "Association score in bits");
  def_query(
      "assoc_pair_mi", [](auto&&... a) { return assoc_pair_mi(a...).value; },
      "Association with pair-wise mutual information");
  def_query("g2_score", &g2_score, "Signed log-likelihood ratio");
  m.def(
      "g2",
      [](double k11, double k12, double k21, double k22) { return g2({k11, k12, k21, k22}); },
      py::arg("k11"), py::arg("k12"), py::arg("k21"), py::arg("k22"));

  py::class_<LearnerConfig>(m, "LearnerConfig")
      .def(py::init([](std::uint64_t threshold, const std::string& scorer,
                       const std::string& estimator, std::uint64_t min_verb_support,
                       bool keep_nonpositive) {
             LearnerConfig c;
             c.threshold = threshold;
             auto sk = parse_scorer(scorer);
             if (!sk) throw py::value_error("scorer must be assoc, pairmi or g2");
             c.scorer = *sk;
             c.estimator = estimator_arg(estimator);
             c.min_verb_support = min_verb_support;
             c.keep_nonpositive = keep_nonpositive;
             c.validate();
             return c;
           }),
           py::arg("threshold") = 3, py::arg("scorer") = "assoc", py::arg("estimator") = "raw",
           py::arg("min_verb_support") = 10, py::arg("keep_nonpositive") = true)
      .def_readonly("threshold", &LearnerConfig::threshold)
      .def_readonly("min_verb_support", &LearnerConfig::min_verb_support)
      .def_readonly("keep_nonpositive", &LearnerConfig::keep_nonpositive);

  py::class_<SelectionalRestriction>(m, "SelectionalRestriction")
      .def_readonly("verb", &SelectionalRestriction::verb)
      .def_property_readonly("rel", [](const SelectionalRestriction& r) { return r.rel.code(); })
      .def_readonly("cls", &SelectionalRestriction::cls)
      .def_readonly("score", &SelectionalRestriction::score)
      .def_readonly("n_nouns", &SelectionalRestriction::n_nouns)
      .def_readonly("support", &SelectionalRestriction::support)
      .def("__repr__", [](const SelectionalRestriction& r) {
        return "SelectionalRestriction(" + r.verb + ", " + r.rel.code() + ", " + r.cls + ")";
      });

  m.def(
      "learn_all",
      [](const CountsTable& ct, const Taxonomy& t, const SenseLexicon& l, const LearnerConfig& c,
         unsigned jobs) {
        py::gil_scoped_release release;
        return learn_all(ct, t, l, c, jobs).restrictions;
      },
      py::arg("counts"), py::arg("taxonomy"), py::arg("lexicon"), py::arg("config"),
      py::arg("jobs") = 1);
  m.def(
      "candidate_space",
      [](const CountsTable& ct, const Taxonomy& t, const SenseLexicon& l, const std::string& v,
         const std::string& s, const LearnerConfig& c) {
        std::vector<std::pair<std::string, std::uint64_t>> out;
        for (const auto& cand : candidate_space(ct, t, l, v, SynRel::from_code(s), c))
          out.emplace_back(t.id(cand.cls), cand.support);
        return out;
      },
      "Returns [(class id, support)]");

  auto eval_args = [](const py::iterable& triples, const py::iterable& srs, const Taxonomy& t,
                      const SenseLexicon& l, bool want_precision) -> py::object {
    auto tr = triples_from(triples);
    std::vector<SelectionalRestriction> rs;
    for (auto h : srs) rs.push_back(h.cast<SelectionalRestriction>());
    auto pr = evaluate(tr, rs, t, l);
    auto v = want_precision ? pr.precision() : pr.recall();
    if (!v) return py::none();
    return py::float_(*v);
  };
  m.def(
      "precision",
      [eval_args](const py::iterable& tr, const py::iterable& srs, const Taxonomy& t,
                  const SenseLexicon& l) { return eval_args(tr, srs, t, l, true); },
      "None when no triple falls in a position with acquired restrictions");
  m.def(
      "recall",
      [eval_args](const py::iterable& tr, const py::iterable& srs, const Taxonomy& t,
                  const SenseLexicon& l) { return eval_args(tr, srs, t, l, false); });
}
