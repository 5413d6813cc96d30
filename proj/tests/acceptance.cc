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

// Acceptance gate: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "ramseyqf/arrows.h"
#include "ramseyqf/builders.h"
#include "ramseyqf/canonical.h"
#include "ramseyqf/classes.h"
#include "ramseyqf/coloring_search.h"
#include "ramseyqf/embedding.h"
#include "ramseyqf/expansions.h"
#include "ramseyqf/formula.h"
#include "ramseyqf/indiscernibles.h"
#include "ramseyqf/qftype.h"
#include "ramseyqf/text_format.h"

namespace ramseyqf {
namespace {

namespace fs = std::filesystem;

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string Fixed(double x, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// CLI invocations collected by the criteria and replayed for criterion 9.
struct CommandLog {
  fs::path dir;
  std::vector<std::vector<std::string>> commands;

  std::string Write(const std::string& name, const std::string& text) const {
    fs::path path = dir / name;
    WriteFileAtomically(path, text);
    return path.string();
  }
  void Add(std::vector<std::string> args) { commands.push_back(std::move(args)); }
};

// Bad colouring check written against the colouring alone: for n points of
// a linear order, pairs coloured by `coloring` in lexicographic order, no
// triple has all three pairs the same colour.
bool NoMonochromaticTriple(int n, const std::vector<int>& coloring) {
  std::map<std::pair<int, int>, int> color;
  int v = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) color[{i, j}] = coloring[v++];
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        int c = color[{i, j}];
        if (color[{i, k}] == c && color[{j, k}] == c) return false;
      }
    }
  }
  return true;
}

// 1. R(3,3) = 6.
Outcome ClassicalRamsey(CommandLog& log) {
  Outcome o;
  Structure lo6 = LinearOrder(6), lo5 = LinearOrder(5), lo3 = LinearOrder(3),
            lo2 = LinearOrder(2);
  auto t6 = std::chrono::steady_clock::now();
  ArrowResult holds = ArrowCheck(lo6, lo3, lo2, 2, ArrowMode::kDecide);
  double s6 = Seconds(t6);
  auto t5 = std::chrono::steady_clock::now();
  ArrowResult fails = ArrowCheck(lo5, lo3, lo2, 2, ArrowMode::kDecide);
  double s5 = Seconds(t5);
  if (holds.verdict != Verdict::kHolds) o.Fail("LO6 did not HOLD");
  if (fails.verdict != Verdict::kFails) o.Fail("LO5 did not FAIL");
  ArrowInstance i6 = BuildArrowInstance(lo6, lo3, {lo2}, {2}, {1});
  ArrowInstance i5 = BuildArrowInstance(lo5, lo3, {lo2}, {2}, {1});
  if (!CheckExhaustionProof(i6.problem, holds.proof)) {
    o.Fail("LO6 exhaustion proof rejected");
  }
  if (!VerifyBadColoring(i5, fails.coloring) ||
      fails.coloring.size() != 10 || !NoMonochromaticTriple(5, fails.coloring)) {
    o.Fail("LO5 colouring not re-verified");
  }
  if (s6 >= 1.0 || s5 >= 1.0) o.Fail("over 1 s");
  std::string f6 = log.Write("LO6.st", SerializeStructure(lo6));
  std::string f5 = log.Write("LO5.st", SerializeStructure(lo5));
  std::string f3 = log.Write("LO3.st", SerializeStructure(lo3));
  std::string f2 = log.Write("LO2.st", SerializeStructure(lo2));
  log.Add({"arrow", f6, f3, f2, "--colors", "2", "--mode", "decide"});
  log.Add({"arrow", f5, f3, f2, "--colors", "2", "--mode", "decide"});
  if (o.pass) {
    o.detail = "LO6 HOLDS (" + Fixed(s6) + " s), LO5 FAILS (" + Fixed(s5) +
               " s), proof and colouring re-verified";
  }
  return o;
}

// 2. Pure 2-set copies inside pure 3-sets cannot be made monochromatic.
Outcome RigidityObstruction(CommandLog& log) {
  Outcome o;
  Structure a = PureSet(2), b = PureSet(3);
  std::string fa = log.Write("set2.st", SerializeStructure(a));
  std::string fb = log.Write("set3.st", SerializeStructure(b));
  auto start = std::chrono::steady_clock::now();
  for (int n = 0; n <= 8; ++n) {
    Structure c = PureSet(n);
    ArrowResult r = ArrowCheck(c, b, a, 2, ArrowMode::kDecide);
    ArrowInstance instance = BuildArrowInstance(c, b, {a}, {2}, {1});
    if (r.verdict != Verdict::kFails) {
      o.Fail("|C| = " + std::to_string(n) + " did not FAIL");
    } else if (!VerifyBadColoring(instance, r.coloring)) {
      o.Fail("|C| = " + std::to_string(n) + " colouring not re-verified");
    }
    std::string fc =
        log.Write("set" + std::to_string(n) + "c.st", SerializeStructure(c));
    log.Add({"arrow", fc, fb, fa, "--colors", "2"});
  }
  double s = Seconds(start);
  if (s >= 10.0) o.Fail("over 10 s");
  if (o.pass) {
    o.detail = "FAILS for |C| = 0..8 with re-verified colourings (" +
               Fixed(s) + " s)";
  }
  return o;
}

// 3. Expansions keep the qf type partition of tuples of length <= 3.
Outcome ExpansionInvariants(CommandLog& log) {
  Outcome o;
  std::mt19937_64 rng(3);
  auto start = std::chrono::steady_clock::now();
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Signature sig("rand" + std::to_string(trial % 3));
    int relations = static_cast<int>(rng() % 3);
    for (int r = 0; r < relations; ++r) {
      sig.AddRelation("R" + std::to_string(r), 2);
    }
    Structure m = RandomStructure(sig, 1 + static_cast<int>(rng() % 5),
                                  0.2 + 0.6 * (rng() % 100) / 100.0, rng);
    Structure morley = QfTypeMorleyisation(m, 3);
    Structure iso = Isolator(m, 3);
    if (!SameQfTypePartition(m, morley, 3) || !SameQfTypePartition(m, iso, 3)) {
      o.Fail("partition differs on trial " + std::to_string(trial));
      continue;
    }
    for (const Tuple& t : IndexTuples(m.size(), 1, 3)) {
      if (!IsInjective(t)) continue;
      if (EnumerateQfCopies(m, t) != EnumerateQfCopies(iso, t)) {
        o.Fail("qf copies differ on trial " + std::to_string(trial));
        break;
      }
    }
    ++checked;
    if (trial < 10) {
      std::string f = log.Write("rand" + std::to_string(trial) + ".st",
                                SerializeStructure(m));
      log.Add({"expand", f, "--k", "3"});
      log.Add({"isolate", f, "--k", "3"});
    }
  }
  double s = Seconds(start);
  if (s >= 30.0) o.Fail("over 30 s");
  if (o.pass) {
    o.detail = std::to_string(checked) +
               " random structures, Morleyisation and isolator keep the "
               "partition and the qf copy sets (" +
               Fixed(s) + " s)";
  }
  return o;
}

// 4. Linear orders are orderable by the increasing pair type; pure sets
// and graphs are not.
Outcome Orderability(CommandLog& log) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  FiniteClass orders = GenerateClass(ClassGenerator::kLinearOrders, 5);
  OrderabilityResult lo = OrderabilitySearch(orders);
  if (lo.verdict != OrderVerdict::kOrderable) {
    o.Fail("linear orders not ORDERABLE");
  } else {
    std::set<QfType> phi = PhiTypes(lo);
    std::set<QfType> increasing = {ComputeQfType(LinearOrder(2), Tuple{0, 1})};
    if (phi != increasing) o.Fail("phi is not the increasing pair type");
    if (!VerifyOrderability(orders, lo).empty()) o.Fail("LO replay failed");
  }
  for (auto [gen, upto] : {std::pair{ClassGenerator::kPureSets, 4},
                           std::pair{ClassGenerator::kGraphs, 3}}) {
    FiniteClass f = GenerateClass(gen, upto);
    OrderabilityResult r = OrderabilitySearch(f);
    if (r.verdict != OrderVerdict::kNotOrderable) {
      o.Fail(std::string(ClassGeneratorName(gen)) + " not NOT-ORDERABLE");
    } else if (!VerifyOrderability(f, r).empty()) {
      o.Fail(std::string(ClassGeneratorName(gen)) + " certificate rejected");
    }
    std::string file = log.Write(std::string(ClassGeneratorName(gen)) + ".cls",
                                 SerializeClass(f));
    log.Add({"orderable", file});
  }
  log.Add({"orderable", log.Write("orders5.cls", SerializeClass(orders))});
  double s = Seconds(start);
  if (s >= 5.0) o.Fail("over 5 s");
  if (o.pass) {
    o.detail = "LO ORDERABLE by the increasing pair type; pure sets <= 4 and "
               "graphs <= 3 NOT-ORDERABLE, certificates replayed (" +
               Fixed(s) + " s)";
  }
  return o;
}

IndexedSequence RandomSequence(std::mt19937_64& rng, int index_size) {
  int n = 1 + static_cast<int>(rng() % 8);
  IndexedSequence seq;
  seq.index = LinearOrder(index_size);
  seq.target = RandomGraph(n, 0.2 + 0.6 * (rng() % 100) / 100.0, rng);
  seq.width = 1;
  for (int i = 0; i < index_size; ++i) {
    seq.tuples.push_back({static_cast<Element>(rng() % n)});
  }
  return seq;
}

// 5. Every sequence indexed by LO20 has an LO3-indiscernible extraction.
Outcome Extraction(CommandLog& log) {
  Outcome o;
  std::mt19937_64 rng(5);
  Structure lo3 = LinearOrder(3);
  std::string pattern = log.Write("LO3.st", SerializeStructure(lo3));
  const char* kDelta = "E(x,y); x = y";
  auto start = std::chrono::steady_clock::now();
  int found = 0;
  for (int trial = 0; trial < 100; ++trial) {
    IndexedSequence seq = RandomSequence(rng, 20);
    FormulaSet delta = ParseFormulaSet(seq.target.signature(), kDelta);
    ExtractionResult r = ExtractIndiscerniblePattern(seq, lo3, delta);
    if (!r.found) {
      o.Fail("no extraction on trial " + std::to_string(trial));
      continue;
    }
    if (!IsEmbedding(lo3, seq.index, r.g.map) ||
        !IsIndiscernible(r.pattern, delta, r.cap).indiscernible ||
        !CheckLocallyBased(r.pattern, seq, delta, r.cap).based) {
      o.Fail("extraction on trial " + std::to_string(trial) +
             " does not re-check");
      continue;
    }
    ++found;
    if (trial < 5) {
      std::string f = log.Write("seq" + std::to_string(trial) + ".seq",
                                SerializeSequence(seq, "I"));
      log.Add({"extract", f, "--pattern", pattern, "--delta", kDelta});
    }
  }
  double s = Seconds(start);
  if (s >= 60.0) o.Fail("over 60 s");
  if (o.pass) {
    o.detail = std::to_string(found) +
               "/100 sequences over LO20 yield an indiscernible, locally "
               "based LO3 pattern (" +
               Fixed(s) + " s)";
  }
  return o;
}

// Total unary functions on at most two points, up to isomorphism.
FiniteClass UnaryFunctionClass() {
  Signature sig("unary");
  sig.AddFunction("f", 1);
  std::vector<Structure> members;
  for (int n = 1; n <= 2; ++n) {
    int maps = n == 1 ? 1 : 4;
    for (int code = 0; code < maps; ++code) {
      Structure m(sig, n, "u" + std::to_string(n) + "_" + std::to_string(code));
      for (int x = 0; x < n; ++x) {
        m.SetFunctionValue(0, Tuple{x}, (code >> x) & (n - 1));
      }
      members.push_back(std::move(m));
    }
  }
  return MakeClass("unary", sig, members);
}

// 6. Finite coherence between the class checks.
Outcome Coherence(CommandLog& log) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  struct Corpus {
    std::string name;
    FiniteClass f;
  };
  std::vector<Corpus> corpora;
  for (int n = 1; n <= 5; ++n) {
    corpora.push_back({"LO<=" + std::to_string(n),
                       GenerateClass(ClassGenerator::kLinearOrders, n)});
  }
  corpora.push_back({"sets<=4", GenerateClass(ClassGenerator::kPureSets, 4)});
  corpora.push_back({"graphs<=3", GenerateClass(ClassGenerator::kGraphs, 3)});
  corpora.push_back(
      {"ordered-graphs<=3", GenerateClass(ClassGenerator::kOrderedGraphs, 3)});
  corpora.push_back({"unary<=2", UnaryFunctionClass()});
  corpora.push_back({"ap_broken", ReadClassFile(fs::path(RAMSEYQF_TEST_DATA) /
                                                "ap_broken.cls")});
  const std::vector<ErpBounds> bounds_list = {
      {2, 2, 3}, {2, 2, 5}, {2, 3, 5}, {3, 3, 5}, {1, 2, 4}};

  int erp_pass = 0, erp_runs = 0;
  for (const Corpus& corpus : corpora) {
    const FiniteClass& f = corpus.f;
    PropertyVerdict ap = ApCheck(f).verdict;
    std::vector<RigidityEntry> nonrigid = RigidityScan(f);
    OrderVerdict order = OrderabilitySearch(f).verdict;
    for (const ErpBounds& bounds : bounds_list) {
      PropertyReport erp = ErpCheck(f, bounds);
      PropertyReport ferp = FErpCheck(f, bounds);
      ++erp_runs;
      std::string where = corpus.name + " bounds (" +
                          std::to_string(bounds.max_a) + "," +
                          std::to_string(bounds.max_b) + "," +
                          std::to_string(bounds.witness) + ")";
      if (!VerifyPropertyReport(f, erp).empty() ||
          !VerifyPropertyReport(f, ferp).empty()) {
        o.Fail("(replay) report rejected on " + where);
      }
      // (e) relational and total functional corpora.
      if (erp.verdict != ferp.verdict) o.Fail("(e) ERP != f-ERP on " + where);
      if (erp.verdict != PropertyVerdict::kPass) continue;
      ++erp_pass;
      // (a)
      if (ap != PropertyVerdict::kPass) o.Fail("(a) on " + where);
      // (b) the A structures of the check are rigid.
      for (const RigidityEntry& e : nonrigid) {
        if (f.members[e.member].size() <= bounds.max_a) {
          o.Fail("(b) non-rigid A on " + where);
        }
      }
      // (c) needs pairs among the A structures.
      if (bounds.max_a >= 2 && order == OrderVerdict::kNotOrderable) {
        o.Fail("(c) on " + where);
      }
    }
  }
  std::string lo5 = log.Write("coh_lo5.cls", SerializeClass(corpora[4].f));
  std::string sets = log.Write("coh_sets.cls", SerializeClass(corpora[5].f));
  log.Add({"class-check", lo5, "--property", "ERP", "--max-a", "2", "--max-b",
           "2", "--witness", "5"});
  log.Add({"class-check", lo5, "--property", "f-ERP", "--max-a", "2",
           "--max-b", "2", "--witness", "5"});
  log.Add({"class-check", lo5, "--property", "AP"});
  log.Add({"class-check", sets, "--property", "ERP", "--max-a", "2",
           "--max-b", "3", "--witness", "4"});
  log.Add({"class-check", sets, "--property", "rigidity"});

  // (d) a joint witness is a witness for every single arrow.
  std::mt19937_64 rng(6);
  int joint_holds = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Structure c, b;
    std::vector<Structure> as;
    if (trial % 2 == 0) {
      c = LinearOrder(2 + static_cast<int>(rng() % 8));
      b = LinearOrder(2 + static_cast<int>(rng() % 2));
      as.push_back(LinearOrder(1));
      as.push_back(LinearOrder(1 + static_cast<int>(rng() % 2)));
    } else {
      c = RandomGraph(2 + static_cast<int>(rng() % 5), 0.7, rng);
      b = CompleteGraph(2 + static_cast<int>(rng() % 2));
      as.push_back(CompleteGraph(1));
      if (rng() % 2) as.push_back(CompleteGraph(2));
    }
    std::vector<int> rs, ds;
    for (size_t i = 0; i < as.size(); ++i) {
      rs.push_back(2);
      ds.push_back(1);
    }
    ArrowResult joint = JointArrowCheck(c, b, as, rs, ds, ArrowMode::kDecide);
    if (joint.verdict != Verdict::kHolds) continue;
    ++joint_holds;
    for (size_t i = 0; i < as.size(); ++i) {
      if (ArrowCheck(c, b, as[i], rs[i], ArrowMode::kDecide).verdict !=
          Verdict::kHolds) {
        o.Fail("(d) single arrow fails under a joint witness, trial " +
               std::to_string(trial));
      }
    }
  }
  double s = Seconds(start);
  if (o.pass) {
    o.detail = "(a)-(c),(e) on " + std::to_string(erp_runs) + " ERP runs (" +
               std::to_string(erp_pass) + " PASS), (d) on 500 instances (" +
               std::to_string(joint_holds) + " joint witnesses); " + Fixed(s) +
               " s";
  }
  return o;
}

// 7. Staged joint witness for LO3 under colourings of points and pairs.
Outcome JointComposition(CommandLog& log) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  FiniteClass orders = GenerateClass(ClassGenerator::kLinearOrders, 11);
  Structure lo3 = LinearOrder(3), lo1 = LinearOrder(1), lo2 = LinearOrder(2);
  JointWitnessResult built =
      BuildJointWitness(orders.members, lo3, {lo1, lo2}, {2, 2});
  if (built.verdict != Verdict::kHolds || !built.witness) {
    o.Fail("no joint witness among LO<=11");
    return o;
  }
  const Structure& w = *built.witness;
  int m = w.size();
  if (m > 11 || !IsIsomorphic(w, LinearOrder(m))) {
    o.Fail("witness is not LO_m with m <= 11");
  }
  // 1000 sampled colouring pairs, each checked directly on the triples.
  ArrowInstance instance =
      BuildArrowInstance(w, lo3, {lo1, lo2}, {2, 2}, {1, 1});
  std::vector<std::vector<int>> samples =
      SampleColorings(instance.problem, 7, 1000);
  int witnessed = 0;
  for (const std::vector<int>& chi : samples) {
    std::vector<int> point(m);
    std::map<std::pair<int, int>, int> pair;
    for (size_t i = 0; i < instance.copies[0].size(); ++i) {
      point[instance.copies[0][i][0]] = chi[instance.offset[0] + i];
    }
    for (size_t i = 0; i < instance.copies[1].size(); ++i) {
      const Tuple& t = instance.copies[1][i];
      pair[{std::min(t[0], t[1]), std::max(t[0], t[1])}] =
          chi[instance.offset[1] + i];
    }
    bool found = false;
    for (int x = 0; x < m && !found; ++x) {
      for (int y = x + 1; y < m && !found; ++y) {
        for (int z = y + 1; z < m && !found; ++z) {
          found = point[x] == point[y] && point[y] == point[z] &&
                  pair[{x, y}] == pair[{x, z}] && pair[{x, z}] == pair[{y, z}];
        }
      }
    }
    witnessed += found;
  }
  if (witnessed != 1000) {
    o.Fail(std::to_string(1000 - witnessed) +
           " sampled pairs lack a jointly monochromatic copy");
  }
  std::string cls = log.Write("orders11.cls", SerializeClass(orders));
  std::string f3 = log.Write("LO3.st", SerializeStructure(lo3));
  std::string f1 = log.Write("LO1.st", SerializeStructure(lo1));
  std::string f2 = log.Write("LO2.st", SerializeStructure(lo2));
  std::string fw = log.Write("witness.st", SerializeStructure(w));
  log.Add({"joint-arrow", f3, f1, f2, "--candidates", cls});
  log.Add({"joint-arrow", fw, f3, f1, f2, "--mode", "sample", "--samples",
           "1000", "--seed", "7"});
  double s = Seconds(start);
  if (s >= 30.0) o.Fail("over 30 s");
  if (o.pass) {
    o.detail = "witness LO" + std::to_string(m) +
               ", 1000/1000 sampled colouring pairs have a jointly "
               "monochromatic LO3 (" +
               Fixed(s) + " s)";
  }
  return o;
}

// 8. Parity colouring along the successor chain.
Outcome TermIteration() {
  Outcome o;
  Structure chain = SuccessorChain(10);
  std::vector<Term> t = ParseTermTuple(chain.signature(), "s(x1)", 1);
  Coloring first = TermIterationColoring(chain, Tuple{0}, t);
  Coloring again = TermIterationColoring(chain, Tuple{0}, t);
  if (first.copies != again.copies || first.colors != again.colors) {
    o.Fail("colouring is not deterministic");
  }
  std::map<Element, int> color;
  for (size_t i = 0; i < first.copies.size(); ++i) {
    if (first.copies[i].size() != 1) o.Fail("copy of the wrong width");
    color[first.copies[i][0]] = first.colors[i];
  }
  if (color.size() != 10) o.Fail("not every point is coloured");
  int pairs = 0;
  for (Element x = 0; x < chain.size(); ++x) {
    Element y = chain.Apply(0, Tuple{x});
    if (y == kUndefined) continue;
    ++pairs;
    if (color[x] == color[y]) {
      o.Fail("monochromatic pair (" + std::to_string(x) + ", s(" +
             std::to_string(x) + "))");
    }
  }
  if (o.pass) {
    o.detail = "10 points coloured, " + std::to_string(pairs) +
               " pairs (x, s(x)) all bichromatic";
  }
  return o;
}

std::string RunToString(const std::vector<std::string>& args, int* code) {
  std::ostringstream out, err;
  *code = RunCommand(args, out, err);
  return out.str();
}

// 9. Every logged command gives byte-identical certificates twice, and each
// certificate replays.
Outcome Replay(const CommandLog& log) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  int count = 0;
  for (size_t i = 0; i < log.commands.size(); ++i) {
    const std::vector<std::string>& args = log.commands[i];
    int code1 = 0, code2 = 0;
    std::string first = RunToString(args, &code1);
    std::string second = RunToString(args, &code2);
    std::string where = args[0] + " #" + std::to_string(i);
    if (code1 > 2) {
      o.Fail(where + " exited " + std::to_string(code1));
      continue;
    }
    if (first != second || code1 != code2) o.Fail(where + " is not deterministic");
    std::string path = log.Write("cert" + std::to_string(i) + ".txt", first);
    int verify = 0;
    std::string out = RunToString({"verify", path}, &verify);
    if (verify != 0 || out.find("0 search nodes") == std::string::npos) {
      o.Fail(where + " certificate did not replay");
    }
    ++count;
  }
  double s = Seconds(start);
  if (o.pass) {
    o.detail = std::to_string(count) +
               " certificates byte-identical on re-run and replayed with 0 "
               "search nodes (" +
               Fixed(s) + " s)";
  }
  return o;
}

}  // namespace
}  // namespace ramseyqf

int main() {
  using namespace ramseyqf;
  CommandLog log;
  log.dir = fs::temp_directory_path() /
            ("ramseyqf_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(log.dir);

  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "classical Ramsey regression", [&] { return ClassicalRamsey(log); }},
      {2, "rigidity obstruction", [&] { return RigidityObstruction(log); }},
      {3, "expansion invariants", [&] { return ExpansionInvariants(log); }},
      {4, "orderability", [&] { return Orderability(log); }},
      {5, "extraction guarantee", [&] { return Extraction(log); }},
      {6, "coherence suite", [&] { return Coherence(log); }},
      {7, "joint arrow composition", [&] { return JointComposition(log); }},
      {8, "term-iteration colouring", [] { return TermIteration(); }},
      {9, "determinism and replay", [&] { return Replay(log); }},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.Fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number
              << " (" << c.name << "): " << o.detail << std::endl;
  }
  fs::remove_all(log.dir);
  return failures == 0 ? 0 : 1;
}
