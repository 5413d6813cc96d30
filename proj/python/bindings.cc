// Copyright 2026 The ramseyqf Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "ramseyqf/arrows.h"
#include "ramseyqf/builders.h"
#include "ramseyqf/canonical.h"
#include "ramseyqf/classes.h"
#include "ramseyqf/embedding.h"
#include "ramseyqf/error.h"
#include "ramseyqf/expansions.h"
#include "ramseyqf/formula.h"
#include "ramseyqf/indiscernibles.h"
#include "ramseyqf/qftype.h"
#include "ramseyqf/text_format.h"

#ifdef RAMSEYQF_WITH_CLI
#include "cli.h"
#endif

namespace py = pybind11;

namespace ramseyqf {
namespace {

ArrowConfig MakeConfig(int64_t budget, uint64_t seed, int samples,
                       int64_t max_flips) {
  ArrowConfig config;
  if (budget > 0) config.node_budget = budget;
  config.seed = seed;
  config.samples = samples;
  config.max_flips = max_flips;
  return config;
}

py::dict ArrowDict(const ArrowResult& r) {
  py::dict d;
  d["verdict"] = std::string(VerdictName(r.verdict));
  d["mode"] = std::string(ArrowModeName(r.mode));
  d["coloring"] = r.coloring;
  d["proof"] = r.proof;
  d["nodes"] = r.stats.nodes;
  d["flips"] = r.stats.flips;
  d["sample_witnesses"] = r.sample_witnesses;
  d["samples_witnessed"] = r.samples_witnessed;
  return d;
}

py::dict ReportDict(const PropertyReport& report, const FiniteClass& f) {
  py::dict d;
  d["property"] = report.property;
  d["verdict"] = std::string(PropertyVerdictName(report.verdict));
  d["evidence"] = report.evidence.size();
  d["search_nodes"] = report.search_nodes;
  py::list kinds;
  for (const Evidence& e : report.evidence) kinds.append(e.kind);
  d["evidence_kinds"] = kinds;
  d["verified"] = VerifyPropertyReport(f, report).empty();
  return d;
}

}  // namespace
}  // namespace ramseyqf

PYBIND11_MODULE(_core, m) {
  using namespace ramseyqf;
  m.doc() = "Finite structural Ramsey theory and indiscernibles";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError",
                                            PyExc_RuntimeError);

  py::class_<Structure>(m, "Structure")
      .def_static(
          "from_text", [](const std::string& text) { return ParseStructure(text); },
          py::arg("text"))
      .def_static(
          "read", [](const std::string& path) { return ReadStructureFile(path); },
          py::arg("path"))
      .def("to_text", &SerializeStructure)
      .def_property_readonly("size", &Structure::size)
      .def_property_readonly("name", &Structure::name)
      .def_property_readonly("signature_name",
                             [](const Structure& s) {
                               return s.signature().name();
                             })
      .def("canonical_key", &CanonicalKey)
      .def("is_rigid", &IsRigid)
      .def("__len__", &Structure::size)
      .def("__eq__", [](const Structure& a, const Structure& b) { return a == b; })
      .def("__repr__", [](const Structure& s) {
        return "<Structure " + s.name() + " : " + s.signature().name() +
               ", domain " + std::to_string(s.size()) + ">";
      });

  m.def("linear_order", &LinearOrder, py::arg("n"));
  m.def("pure_set", &PureSet, py::arg("n"));
  m.def("graph", &Graph, py::arg("n"), py::arg("edges"));
  m.def("complete_graph", &CompleteGraph, py::arg("n"));
  m.def("successor_chain", &SuccessorChain, py::arg("n"));
  m.def("embeds", &Embeds, py::arg("host"), py::arg("pattern"));
  m.def(
      "embeddings",
      [](const Structure& host, const Structure& pattern) {
        std::vector<std::vector<Element>> out;
        for (const Embedding& e : EnumerateEmbeddings(host, pattern)) {
          out.push_back(e.map);
        }
        return out;
      },
      py::arg("host"), py::arg("pattern"));
  m.def(
      "qf_type_digest",
      [](const Structure& s, const Tuple& t) {
        return ComputeQfType(s, t).ShortDigest();
      },
      py::arg("structure"), py::arg("tuple"));

  // Arrows.
  m.def(
      "arrow_check",
      [](const Structure& c, const Structure& b, const Structure& a, int r,
         const std::string& mode, int64_t budget, uint64_t seed, int samples,
         int64_t max_flips) {
        return ArrowDict(ArrowCheck(c, b, a, r, ParseArrowMode(mode),
                                    MakeConfig(budget, seed, samples,
                                               max_flips)));
      },
      py::arg("c"), py::arg("b"), py::arg("a"), py::arg("r") = 2,
      py::arg("mode") = "decide", py::arg("budget") = 0, py::arg("seed") = 0,
      py::arg("samples") = 1000, py::arg("max_flips") = 200000);
  m.def(
      "joint_arrow_check",
      [](const Structure& c, const Structure& b,
         const std::vector<Structure>& as, const std::vector<int>& rs,
         const std::vector<int>& ds, const std::string& mode, int64_t budget,
         uint64_t seed, int samples) {
        return ArrowDict(JointArrowCheck(c, b, as, rs, ds, ParseArrowMode(mode),
                                         MakeConfig(budget, seed, samples,
                                                    200000)));
      },
      py::arg("c"), py::arg("b"), py::arg("as_"), py::arg("rs"), py::arg("ds"),
      py::arg("mode") = "decide", py::arg("budget") = 0, py::arg("seed") = 0,
      py::arg("samples") = 1000);
  m.def(
      "verify_bad_coloring",
      [](const Structure& c, const Structure& b, const Structure& a, int r,
         const std::vector<int>& coloring) {
        ArrowInstance instance = BuildArrowInstance(c, b, {a}, {r}, {1});
        return IsValidColoring(instance.problem, coloring) &&
               VerifyBadColoring(instance, coloring);
      },
      py::arg("c"), py::arg("b"), py::arg("a"), py::arg("r"),
      py::arg("coloring"));
  m.def(
      "check_exhaustion_proof",
      [](const Structure& c, const Structure& b, const Structure& a, int r,
         const std::string& proof) {
        ArrowInstance instance = BuildArrowInstance(c, b, {a}, {r}, {1});
        return CheckExhaustionProof(instance.problem, proof);
      },
      py::arg("c"), py::arg("b"), py::arg("a"), py::arg("r"), py::arg("proof"));
  m.def(
      "arrow_to_dimacs",
      [](const Structure& c, const Structure& b, const Structure& a, int r) {
        return ArrowToDimacs(BuildArrowInstance(c, b, {a}, {r}, {1}));
      },
      py::arg("c"), py::arg("b"), py::arg("a"), py::arg("r") = 2);
  m.def(
      "build_joint_witness",
      [](const std::vector<Structure>& candidates, const Structure& b,
         const std::vector<Structure>& as, const std::vector<int>& rs,
         int64_t budget) {
        JointWitnessResult w = BuildJointWitness(candidates, b, as, rs,
                                                 MakeConfig(budget, 0, 1000,
                                                            200000));
        py::dict d;
        d["verdict"] = std::string(VerdictName(w.verdict));
        d["witness"] = w.witness ? py::cast(*w.witness) : py::none();
        d["stages"] = w.stages;
        d["order"] = w.order;
        d["note"] = w.note;
        return d;
      },
      py::arg("candidates"), py::arg("b"), py::arg("as_"), py::arg("rs"),
      py::arg("budget") = 0);
  m.def("ramsey_degree_lower", &RamseyDegreeLower, py::arg("a"));
  m.def(
      "ramsey_degree_upper_probe",
      [](const Structure& a, const Structure& b,
         const std::vector<Structure>& candidates, int d, int max_colors) {
        DegreeBounds bounds =
            RamseyDegreeUpperProbe(a, b, candidates, d, max_colors);
        py::dict out;
        out["lower"] = bounds.lower;
        out["upper_status"] = std::string(VerdictName(bounds.upper_status));
        out["d"] = bounds.d;
        out["witness"] = bounds.witness ? py::cast(*bounds.witness) : py::none();
        out["checked_colors"] = bounds.checked_colors;
        out["note"] = bounds.note;
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("candidates"), py::arg("d"),
      py::arg("max_colors"));
  m.def(
      "term_iteration_coloring",
      [](const Structure& s, const Tuple& b, const std::string& terms) {
        Coloring c = TermIterationColoring(
            s, b,
            ParseTermTuple(s.signature(), terms, static_cast<int>(b.size())));
        py::dict d;
        d["copies"] = c.copies;
        d["colors"] = c.colors;
        d["r"] = c.r;
        return d;
      },
      py::arg("structure"), py::arg("b"), py::arg("terms"));

  // Expansions.
  m.def(
      "morleyise",
      [](const Structure& s, int k) { return QfTypeMorleyisation(s, k); },
      py::arg("structure"), py::arg("k"));
  m.def(
      "isolator", [](const Structure& s, int k) { return Isolator(s, k); },
      py::arg("structure"), py::arg("k"));
  m.def("same_qf_type_partition", &SameQfTypePartition, py::arg("a"),
        py::arg("b"), py::arg("k"));

  // Classes.
  py::class_<FiniteClass>(m, "FiniteClass")
      .def_static(
          "from_text",
          [](const std::string& text) { return ParseClassText(text); },
          py::arg("text"))
      .def_static(
          "read", [](const std::string& path) { return ReadClassFile(path); },
          py::arg("path"))
      .def_static(
          "generate",
          [](const std::string& generator, int upto) {
            return GenerateClass(ParseClassGenerator(generator), upto);
          },
          py::arg("generator"), py::arg("upto"))
      .def("to_text", &SerializeClass)
      .def_readonly("name", &FiniteClass::name)
      .def_readonly("bound", &FiniteClass::bound)
      .def_readonly("members", &FiniteClass::members)
      .def("__len__", &FiniteClass::size);
  m.def(
      "check_property",
      [](const FiniteClass& f, const std::string& property, int max_a,
         int max_b, int witness) {
        ErpBounds bounds{max_a, max_b, witness};
        if (property == "HP") return ReportDict(HpCheck(f), f);
        if (property == "JEP") return ReportDict(JepCheck(f), f);
        if (property == "AP") return ReportDict(ApCheck(f), f);
        if (property == "ERP") return ReportDict(ErpCheck(f, bounds), f);
        if (property == "f-ERP") return ReportDict(FErpCheck(f, bounds), f);
        throw InputError("unknown property '" + property + "'");
      },
      py::arg("cls"), py::arg("property"), py::arg("max_a") = 3,
      py::arg("max_b") = 3, py::arg("witness") = 6);
  m.def(
      "orderability",
      [](const FiniteClass& f) {
        OrderabilityResult r = OrderabilitySearch(f);
        py::dict d;
        d["verdict"] = std::string(OrderVerdictName(r.verdict));
        d["types"] = r.types.size();
        d["phi"] = r.phi;
        d["symmetric_type"] =
            r.symmetric_type ? py::cast(*r.symmetric_type) : py::none();
        d["leaves"] = r.leaves.size();
        d["nodes"] = r.nodes;
        d["verified"] = VerifyOrderability(f, r).empty();
        return d;
      },
      py::arg("cls"));
  m.def(
      "elf_minimize",
      [](const Structure& b, const Tuple& a) { return ElfMinimize(b, a); },
      py::arg("b"), py::arg("a"));

  // Indiscernibles.
  py::class_<IndexedSequence>(m, "IndexedSequence")
      .def_static(
          "from_text",
          [](const std::string& text) { return ParseSequenceText(text); },
          py::arg("text"))
      .def_static(
          "read", [](const std::string& path) { return ReadSequenceFile(path); },
          py::arg("path"))
      .def(py::init([](const Structure& index, const Structure& target,
                       int width, const std::vector<Tuple>& tuples) {
             IndexedSequence seq{index, target, width, tuples};
             seq.Validate();
             return seq;
           }),
           py::arg("index"), py::arg("target"), py::arg("width"),
           py::arg("tuples"))
      .def("to_text", &SerializeSequence, py::arg("name") = "I")
      .def_readonly("index", &IndexedSequence::index)
      .def_readonly("target", &IndexedSequence::target)
      .def_readonly("width", &IndexedSequence::width)
      .def_readonly("tuples", &IndexedSequence::tuples);
  m.def(
      "is_indiscernible",
      [](const IndexedSequence& seq, const std::string& delta, int cap) {
        IndiscernibilityReport r = IsIndiscernible(
            seq, ParseFormulaSet(seq.target.signature(), delta), cap);
        py::dict d;
        d["indiscernible"] = r.indiscernible;
        d["cap"] = r.cap;
        d["index_tuples"] = r.index_tuples;
        d["violation_count"] = r.violation_count;
        py::list violations;
        for (const IndViolation& v : r.violations) {
          violations.append(py::make_tuple(v.i, v.j, v.formula));
        }
        d["violations"] = violations;
        return d;
      },
      py::arg("seq"), py::arg("delta"), py::arg("cap") = kDefaultIndexArityCap);
  m.def(
      "check_locally_based",
      [](const IndexedSequence& j, const IndexedSequence& i,
         const std::string& delta, int cap) {
        LocalBasisReport r = CheckLocallyBased(
            j, i, ParseFormulaSet(j.target.signature(), delta), cap);
        py::dict d;
        d["based"] = r.based;
        d["witnesses"] = r.witnesses;
        d["unmatched"] = r.unmatched ? py::cast(*r.unmatched) : py::none();
        return d;
      },
      py::arg("j"), py::arg("i"), py::arg("delta"),
      py::arg("cap") = kDefaultIndexArityCap);
  m.def(
      "finite_satisfiability",
      [](const IndexedSequence& seq, const std::string& delta, const Tuple& a,
         int cap) {
        FormulaSet set = ParseFormulaSet(seq.target.signature(), delta);
        IndConstraintSet gamma = IndConstraints(seq.index, set, cap, seq.width);
        FiniteSatResult r =
            FiniteSatisfiabilityCheck(gamma.constraints, set, a, seq);
        py::dict d;
        d["satisfiable"] = r.satisfiable;
        d["a"] = r.a;
        d["b"] = r.b;
        d["relocations"] = r.relocations;
        d["constraints"] = gamma.constraints.size();
        return d;
      },
      py::arg("seq"), py::arg("delta"), py::arg("a"),
      py::arg("cap") = kDefaultIndexArityCap);
  m.def(
      "extract_pattern",
      [](const IndexedSequence& seq, const Structure& target,
         const std::string& delta, int cap) {
        ExtractionResult r = ExtractIndiscerniblePattern(
            seq, target, ParseFormulaSet(seq.target.signature(), delta), cap);
        py::dict d;
        d["found"] = r.found;
        d["map"] = r.g.map;
        d["pattern"] = r.found ? py::cast(r.pattern) : py::none();
        d["cap"] = r.cap;
        d["candidates"] = r.candidates;
        d["refutations"] = r.refutations;
        return d;
      },
      py::arg("seq"), py::arg("target"), py::arg("delta"), py::arg("cap") = -1);
  m.def(
      "induced_type_union",
      [](const IndexedSequence& seq, const std::string& phi) {
        std::vector<std::string> digests;
        for (const QfType& t : InducedTypeUnionRelation(
                 seq, Formula::Parse(seq.target.signature(), phi))) {
          digests.push_back(t.ShortDigest());
        }
        return digests;
      },
      py::arg("seq"), py::arg("phi"));

#ifdef RAMSEYQF_WITH_CLI
  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = RunCommand(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"),
      "Runs one CLI subcommand; returns (exit code, stdout, stderr).");
#endif
}
