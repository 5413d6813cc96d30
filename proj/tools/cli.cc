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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ramseyqf/arrows.h"
#include "ramseyqf/classes.h"
#include "ramseyqf/digest.h"
#include "ramseyqf/embedding.h"
#include "ramseyqf/error.h"
#include "ramseyqf/expansions.h"
#include "ramseyqf/formula.h"
#include "ramseyqf/indiscernibles.h"
#include "ramseyqf/qftype.h"
#include "ramseyqf/text_format.h"

namespace ramseyqf {

namespace {

// ---------------------------------------------------------------------------
// Small text helpers shared by the writers and the replay code.

std::string JoinInts(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

// "0,1,2"; "-" for the empty tuple.
std::string TupleText(const Tuple& t) {
  if (t.empty()) return "-";
  std::string out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(t[i]);
  }
  return out;
}

std::vector<int> ParseInts(std::string_view text, char sep) {
  std::vector<int> out;
  if (text == "-") return out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find(sep, pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) {
      int value = 0;
      auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw InputError("bad integer '" + std::string(token) + "'");
      }
      out.push_back(value);
    } else if (sep != ' ') {
      throw InputError("empty entry in list '" + std::string(text) + "'");
    }
    pos = end + 1;
  }
  return out;
}

Tuple ParseTupleText(std::string_view text) { return ParseInts(text, ','); }

// Field values are stored on one line.
std::string Flatten(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    if (end > pos) out.emplace_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

int ParseOneInt(std::string_view text) {
  std::vector<int> v = ParseInts(text, ' ');
  if (v.size() != 1) throw InputError("expected one integer, got '" +
                                      std::string(text) + "'");
  return v[0];
}

uint64_t ParseUint64(std::string_view text) {
  uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError("bad integer '" + std::string(text) + "'");
  }
  return value;
}

int IntField(const Certificate& cert, std::string_view key) {
  return ParseOneInt(cert.Get(key));
}

std::vector<int> IntsField(const Certificate& cert, std::string_view key) {
  return ParseInts(cert.Get(key), ' ');
}

// Blocks in certificate order.
std::vector<std::string> AllBlocks(const Certificate& cert,
                                   std::string_view key) {
  std::vector<std::string> out;
  for (const Certificate::Item& item : cert.items) {
    if (item.block && item.key == key) out.push_back(item.value);
  }
  return out;
}

std::pair<std::string, std::string> SplitFirst(std::string_view line) {
  size_t space = line.find(' ');
  if (space == std::string_view::npos) return {std::string(line), ""};
  return {std::string(line.substr(0, space)),
          std::string(line.substr(space + 1))};
}

std::vector<std::string> Lines(std::string_view text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

std::string FormulaSetText(const FormulaSet& delta) {
  if (delta.all_types) return "ALL";
  std::string out;
  for (size_t i = 0; i < delta.formulas.size(); ++i) {
    if (i > 0) out += "; ";
    out += delta.formulas[i].text();
  }
  return out;
}

int ExitFor(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return kExitHolds;
    case Verdict::kFails:
      return kExitRefuted;
    case Verdict::kInconclusive:
      break;
  }
  return kExitInconclusive;
}

int ExitFor(PropertyVerdict v) {
  switch (v) {
    case PropertyVerdict::kPass:
      return kExitHolds;
    case PropertyVerdict::kFail:
      return kExitRefuted;
    case PropertyVerdict::kInconclusive:
      break;
  }
  return kExitInconclusive;
}

int ExitFor(OrderVerdict v) {
  switch (v) {
    case OrderVerdict::kOrderable:
      return kExitHolds;
    case OrderVerdict::kNotOrderable:
      return kExitRefuted;
    case OrderVerdict::kInconclusive:
      break;
  }
  return kExitInconclusive;
}

OrderVerdict ParseOrderVerdict(std::string_view name) {
  for (OrderVerdict v : {OrderVerdict::kOrderable, OrderVerdict::kNotOrderable,
                         OrderVerdict::kInconclusive}) {
    if (name == OrderVerdictName(v)) return v;
  }
  throw InputError("unknown orderability verdict '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Options and output.

struct Common {
  int64_t budget = DefaultNodeBudget();
  uint64_t seed = 0;
  std::string output;
};

void AddCommon(CLI::App* app, Common* common) {
  app->add_option("--budget", common->budget, "search node budget")
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", common->seed, "random seed");
  app->add_option("-o,--output", common->output,
                  "write the certificate to this file");
}

ArrowConfig MakeArrowConfig(const Common& common) {
  ArrowConfig config;
  config.node_budget = common.budget;
  config.seed = common.seed;
  return config;
}

// The output path is left out of the echo so that moving a certificate
// does not change it.
std::vector<std::string> EchoArgs(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "-o" || args[i] == "--output") {
      ++i;
      continue;
    }
    if (args[i].rfind("--output=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  return out;
}

Certificate Begin(std::string command, const std::vector<std::string>& args,
                  const Common& common) {
  Certificate cert;
  cert.command = std::move(command);
  cert.argv = EchoArgs(args);
  cert.config = {{"budget", std::to_string(common.budget)},
                 {"seed", std::to_string(common.seed)}};
  return cert;
}

int Emit(const Certificate& cert, const Common& common,
         const std::string& summary, std::ostream& out, std::ostream& err) {
  std::string text = cert.Render();
  if (common.output.empty()) {
    out << text;
    err << summary << "\n";
  } else {
    WriteFileAtomically(common.output, text);
    out << summary << "\n";
  }
  return cert.exit_code;
}

std::string Summary(const Certificate& cert) {
  return cert.command + ": " + cert.verdict + " (" +
         std::to_string(cert.search_nodes) + " search nodes)";
}

FormulaSet ReadDelta(const Signature& signature, const std::string& text,
                     const std::string& file) {
  if (!text.empty() && !file.empty()) {
    throw InputError("--delta and --delta-file are exclusive");
  }
  if (!file.empty()) return ParseFormulaSet(signature, ReadTextFile(file));
  if (text.empty()) throw InputError("--delta or --delta-file is required");
  return ParseFormulaSet(signature, text);
}

// ---------------------------------------------------------------------------
// arrow and joint-arrow

void AddArrowPayload(Certificate& cert, const Structure& c, const Structure& b,
                     const std::vector<Structure>& as,
                     const std::vector<int>& rs, const std::vector<int>& ds,
                     const ArrowResult& result) {
  cert.AddBlock("C", SerializeStructure(c));
  cert.AddBlock("B", SerializeStructure(b));
  cert.Add("as", std::to_string(as.size()));
  for (size_t i = 0; i < as.size(); ++i) {
    cert.AddBlock("A" + std::to_string(i), SerializeStructure(as[i]));
  }
  cert.Add("colors", JoinInts(rs));
  cert.Add("caps", JoinInts(ds));
  cert.verdict = std::string(VerdictName(result.verdict));
  cert.exit_code = ExitFor(result.verdict);
  cert.search_nodes = result.stats.nodes;
  cert.Add("flips", std::to_string(result.stats.flips));
  switch (result.verdict) {
    case Verdict::kHolds:
      cert.Add("proof", result.proof);
      break;
    case Verdict::kFails:
      cert.Add("coloring", JoinInts(result.coloring));
      break;
    case Verdict::kInconclusive:
      if (result.mode == ArrowMode::kSample) {
        cert.Add("samples-witnessed", std::to_string(result.samples_witnessed));
        cert.Add("sample-witnesses", JoinInts(result.sample_witnesses));
      }
      break;
  }
}

std::string ReplayArrow(const Certificate& cert) {
  Structure c = ParseStructure(cert.GetBlock("C"));
  Structure b = ParseStructure(cert.GetBlock("B"));
  int n = IntField(cert, "as");
  if (n < 1) return "no A structures";
  std::vector<Structure> as;
  for (int i = 0; i < n; ++i) {
    as.push_back(ParseStructure(cert.GetBlock("A" + std::to_string(i))));
  }
  ArrowInstance instance = BuildArrowInstance(c, b, as, IntsField(cert, "colors"),
                                              IntsField(cert, "caps"));
  const ColoringProblem& problem = instance.problem;
  Verdict verdict = ParseVerdict(cert.verdict);
  ArrowMode mode = ParseArrowMode(cert.Config("mode"));
  switch (verdict) {
    case Verdict::kHolds: {
      if (mode != ArrowMode::kDecide) return "HOLDS outside decide mode";
      std::string error;
      if (!CheckExhaustionProof(problem, cert.Get("proof"), &error)) {
        return "exhaustion proof rejected: " + error;
      }
      return "";
    }
    case Verdict::kFails: {
      std::vector<int> coloring = IntsField(cert, "coloring");
      if (!IsValidColoring(problem, coloring)) return "coloring out of range";
      if (!VerifyBadColoring(instance, coloring)) {
        return "coloring has a monochromatic copy";
      }
      return "";
    }
    case Verdict::kInconclusive:
      break;
  }
  if (mode != ArrowMode::kSample) return "";
  int samples = ParseOneInt(cert.Config("samples"));
  uint64_t seed = ParseUint64(cert.Config("seed"));
  std::vector<int> witnesses = IntsField(cert, "sample-witnesses");
  if (static_cast<int>(witnesses.size()) != samples ||
      IntField(cert, "samples-witnessed") != samples) {
    return "sample witness count differs";
  }
  std::vector<std::vector<int>> drawn =
      SampleColorings(problem, seed, samples);
  const int edges = static_cast<int>(problem.edges.size());
  for (int k = 0; k < samples; ++k) {
    int w = witnesses[k];
    if (w < 0 || w >= edges || EdgeRefuted(problem, w, drawn[k])) {
      return "sample " + std::to_string(k) + " witness is not monochromatic";
    }
  }
  return "";
}

struct ArrowOptions {
  std::vector<std::string> files;
  int colors = 2;
  std::string mode = "decide";
  int samples = 1000;
  int64_t max_flips = 200000;
  std::string format = "cert";
};

void AddModeOptions(CLI::App* app, std::string* mode, int* samples,
                    int64_t* max_flips) {
  app->add_option("--mode", *mode, "decide, refute or sample")
      ->check(CLI::IsMember({"decide", "refute", "sample"}));
  app->add_option("--samples", *samples, "colourings drawn in sample mode")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-flips", *max_flips, "local search flips in refute mode")
      ->check(CLI::PositiveNumber);
}

int RunArrow(const ArrowOptions& o, const Common& common,
             const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  Structure c = ReadStructureFile(o.files[0]);
  Structure b = ReadStructureFile(o.files[1]);
  Structure a = ReadStructureFile(o.files[2]);
  ArrowMode mode = ParseArrowMode(o.mode);
  if (o.format == "cnf") {
    if (mode != ArrowMode::kDecide) {
      throw InputError("--format cnf applies to --mode decide");
    }
    ArrowInstance instance = BuildArrowInstance(c, b, {a}, {o.colors}, {1});
    std::string cnf = ArrowToDimacs(instance);
    std::string summary = "arrow: CNF with " +
                          std::to_string(instance.problem.num_variables()) +
                          " copies";
    if (common.output.empty()) {
      out << cnf;
      err << summary << "\n";
    } else {
      WriteFileAtomically(common.output, cnf);
      out << summary << "\n";
    }
    return kExitHolds;
  }
  ArrowConfig config = MakeArrowConfig(common);
  config.samples = o.samples;
  config.max_flips = o.max_flips;
  ArrowResult result = ArrowCheck(c, b, a, o.colors, mode, config);
  Certificate cert = Begin("arrow", args, common);
  cert.config.push_back({"mode", o.mode});
  cert.config.push_back({"samples", std::to_string(o.samples)});
  cert.config.push_back({"max-flips", std::to_string(o.max_flips)});
  AddArrowPayload(cert, c, b, {a}, {o.colors}, {1}, result);
  return Emit(cert, common, Summary(cert), out, err);
}

struct JointOptions {
  std::vector<std::string> files;
  std::string colors;
  std::string caps;
  std::string candidates;
  std::string mode = "decide";
  int samples = 1000;
  int64_t max_flips = 200000;
};

std::vector<int> ListOrDefault(const std::string& text, size_t n, int value,
                               const char* name) {
  if (text.empty()) return std::vector<int>(n, value);
  std::vector<int> out = ParseInts(text, ',');
  if (out.size() != n) {
    throw InputError(std::string(name) + " needs one entry per A (" +
                     std::to_string(n) + ")");
  }
  return out;
}

int RunJointArrow(const JointOptions& o, const Common& common,
                  const std::vector<std::string>& args, std::ostream& out,
                  std::ostream& err) {
  ArrowConfig config = MakeArrowConfig(common);
  config.samples = o.samples;
  config.max_flips = o.max_flips;
  Certificate cert = Begin("joint-arrow", args, common);
  cert.config.push_back({"mode", o.mode});
  cert.config.push_back({"samples", std::to_string(o.samples)});
  cert.config.push_back({"max-flips", std::to_string(o.max_flips)});

  if (o.candidates.empty()) {
    if (o.files.size() < 3) {
      throw InputError("joint-arrow needs C, B and at least one A");
    }
    Structure c = ReadStructureFile(o.files[0]);
    Structure b = ReadStructureFile(o.files[1]);
    std::vector<Structure> as;
    for (size_t i = 2; i < o.files.size(); ++i) {
      as.push_back(ReadStructureFile(o.files[i]));
    }
    std::vector<int> rs = ListOrDefault(o.colors, as.size(), 2, "--colors");
    std::vector<int> ds = ListOrDefault(o.caps, as.size(), 1, "--caps");
    ArrowResult result = JointArrowCheck(c, b, as, rs, ds,
                                         ParseArrowMode(o.mode), config);
    AddArrowPayload(cert, c, b, as, rs, ds, result);
    return Emit(cert, common, Summary(cert), out, err);
  }

  // Staged construction of a witness from the candidate class.
  if (o.files.size() < 2) {
    throw InputError("joint-arrow --candidates needs B and at least one A");
  }
  if (o.mode != "decide") throw InputError("--candidates needs --mode decide");
  FiniteClass candidates = ReadClassFile(o.candidates);
  Structure b = ReadStructureFile(o.files[0]);
  std::vector<Structure> as;
  for (size_t i = 1; i < o.files.size(); ++i) {
    as.push_back(ReadStructureFile(o.files[i]));
  }
  std::vector<int> rs = ListOrDefault(o.colors, as.size(), 2, "--colors");
  std::vector<int> ds = ListOrDefault(o.caps, as.size(), 1, "--caps");
  if (std::any_of(ds.begin(), ds.end(), [](int d) { return d != 1; })) {
    throw InputError("--candidates builds witnesses for cap 1 only");
  }
  JointWitnessResult built =
      BuildJointWitness(candidates.members, b, as, rs, config);

  cert.config.push_back({"construction", "staged"});
  cert.AddBlock("B", SerializeStructure(b));
  cert.Add("as", std::to_string(as.size()));
  for (size_t i = 0; i < as.size(); ++i) {
    cert.AddBlock("A" + std::to_string(i), SerializeStructure(as[i]));
  }
  cert.Add("colors", JoinInts(rs));
  cert.Add("order", JoinInts(built.order));
  int64_t nodes = 0;
  for (size_t k = 0; k < built.stages.size(); ++k) {
    const Structure& inner = k == 0 ? b : built.stages[k - 1];
    int which = built.order[k];
    ArrowResult stage = ArrowCheck(built.stages[k], inner, as[which],
                                   rs[which], ArrowMode::kDecide, config);
    if (stage.verdict != Verdict::kHolds) {
      throw std::logic_error("stage " + std::to_string(k) +
                             " does not re-decide HOLDS");
    }
    nodes += stage.stats.nodes;
    cert.AddBlock("S" + std::to_string(k), SerializeStructure(built.stages[k]));
    cert.Add("stage-proof", stage.proof);
  }
  if (!built.note.empty()) cert.Add("note", built.note);
  cert.verdict = std::string(VerdictName(built.verdict));
  cert.exit_code = ExitFor(built.verdict);
  cert.search_nodes = nodes;
  std::string summary = Summary(cert);
  if (built.witness) {
    summary += ", witness of size " + std::to_string(built.witness->size());
  }
  return Emit(cert, common, summary, out, err);
}

std::string ReplayStagedJoint(const Certificate& cert) {
  Structure b = ParseStructure(cert.GetBlock("B"));
  int n = IntField(cert, "as");
  std::vector<Structure> as;
  for (int i = 0; i < n; ++i) {
    as.push_back(ParseStructure(cert.GetBlock("A" + std::to_string(i))));
  }
  std::vector<int> rs = IntsField(cert, "colors");
  if (static_cast<int>(rs.size()) != n) return "colour list length differs";
  std::vector<int> order = IntsField(cert, "order");
  std::vector<std::string> proofs = cert.GetAll("stage-proof");
  if (proofs.size() > order.size()) return "more stages than the order lists";
  std::vector<Structure> stages;
  for (size_t k = 0; k < proofs.size(); ++k) {
    stages.push_back(ParseStructure(cert.GetBlock("S" + std::to_string(k))));
  }
  Verdict verdict = ParseVerdict(cert.verdict);
  if (verdict == Verdict::kFails) return "staged construction cannot refute";
  if (verdict == Verdict::kHolds) {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(sorted.size()) != n || sorted[i] != i) {
        return "order is not a permutation of the A structures";
      }
    }
    if (static_cast<int>(stages.size()) != n) return "missing stages";
  }
  for (size_t k = 0; k < stages.size(); ++k) {
    int which = order[k];
    if (which < 0 || which >= n) return "order entry out of range";
    const Structure& inner = k == 0 ? b : stages[k - 1];
    ArrowInstance instance =
        BuildArrowInstance(stages[k], inner, {as[which]}, {rs[which]}, {1});
    std::string error;
    if (!CheckExhaustionProof(instance.problem, proofs[k], &error)) {
      return "stage " + std::to_string(k) + " proof rejected: " + error;
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// degree

struct DegreeOptions {
  std::string a, b, candidates;
  int d = 1;
  int max_colors = 3;
};

int RunDegree(const DegreeOptions& o, const Common& common,
              const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  Structure a = ReadStructureFile(o.a);
  Structure b = ReadStructureFile(o.b);
  FiniteClass candidates = ReadClassFile(o.candidates);
  ArrowConfig config = MakeArrowConfig(common);
  DegreeBounds bounds =
      RamseyDegreeUpperProbe(a, b, candidates.members, o.d, o.max_colors, config);
  Certificate cert = Begin("degree", args, common);
  cert.AddBlock("A", SerializeStructure(a));
  cert.AddBlock("B", SerializeStructure(b));
  cert.Add("lower", std::to_string(bounds.lower));
  cert.Add("d", std::to_string(bounds.d));
  cert.Add("max-colors", std::to_string(o.max_colors));
  int64_t nodes = 0;
  if (bounds.upper_status == Verdict::kHolds) {
    const Structure& w = *bounds.witness;
    cert.AddBlock("W", SerializeStructure(w));
    cert.Add("checked-colors", JoinInts(bounds.checked_colors));
    for (int r : bounds.checked_colors) {
      ArrowResult check = JointArrowCheck(w, b, {a}, {r}, {bounds.d},
                                          ArrowMode::kDecide, config);
      if (check.verdict != Verdict::kHolds) {
        throw std::logic_error("degree witness does not re-decide HOLDS");
      }
      nodes += check.stats.nodes;
      cert.Add("color-proof", std::to_string(r) + " " + check.proof);
    }
  }
  if (!bounds.note.empty()) cert.Add("note", bounds.note);
  cert.verdict = std::string(VerdictName(bounds.upper_status));
  cert.exit_code = ExitFor(bounds.upper_status);
  cert.search_nodes = nodes;
  std::string summary =
      Summary(cert) + ", lower bound " + std::to_string(bounds.lower);
  return Emit(cert, common, summary, out, err);
}

std::string ReplayDegree(const Certificate& cert) {
  Structure a = ParseStructure(cert.GetBlock("A"));
  Structure b = ParseStructure(cert.GetBlock("B"));
  int lower = IntField(cert, "lower");
  int d = IntField(cert, "d");
  if (lower != RamseyDegreeLower(a)) return "lower bound differs";
  Verdict verdict = ParseVerdict(cert.verdict);
  if (verdict == Verdict::kFails) {
    return d < lower ? "" : "FAILS although d reaches the lower bound";
  }
  if (verdict == Verdict::kInconclusive) return "";
  Structure w = ParseStructure(cert.GetBlock("W"));
  std::vector<int> colors = IntsField(cert, "checked-colors");
  std::vector<std::string> proofs = cert.GetAll("color-proof");
  if (colors.empty() || proofs.size() != colors.size()) {
    return "one proof per checked colour count is required";
  }
  for (size_t i = 0; i < colors.size(); ++i) {
    auto [r_text, proof] = SplitFirst(proofs[i]);
    if (ParseOneInt(r_text) != colors[i]) return "proof order differs";
    ArrowInstance instance = BuildArrowInstance(w, b, {a}, {colors[i]}, {d});
    std::string error;
    if (!CheckExhaustionProof(instance.problem, proof, &error)) {
      return "proof for r = " + r_text + " rejected: " + error;
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// class-check

std::string EvidenceText(const Evidence& e) {
  std::string out = "kind " + e.kind + "\n";
  out += "members " + JoinInts(e.members) + "\n";
  for (const Tuple& map : e.maps) out += "map " + TupleText(map) + "\n";
  if (!e.candidates.empty()) {
    out += "candidates " + JoinInts(e.candidates) + "\n";
  }
  for (const std::vector<int>& c : e.colorings) {
    out += "coloring " + JoinInts(c) + "\n";
  }
  if (!e.proof.empty()) out += "proof " + e.proof + "\n";
  out += std::string("definite ") + (e.definite ? "1" : "0") + "\n";
  if (!e.note.empty()) out += "note " + e.note + "\n";
  return out;
}

Evidence ParseEvidence(std::string_view text) {
  Evidence e;
  for (const std::string& line : Lines(text)) {
    auto [key, value] = SplitFirst(line);
    if (key == "kind") {
      e.kind = value;
    } else if (key == "members") {
      e.members = ParseInts(value, ' ');
    } else if (key == "map") {
      e.maps.push_back(ParseTupleText(value));
    } else if (key == "candidates") {
      e.candidates = ParseInts(value, ' ');
    } else if (key == "coloring") {
      e.colorings.push_back(ParseInts(value, ' '));
    } else if (key == "proof") {
      e.proof = value;
    } else if (key == "definite") {
      e.definite = value == "1";
    } else if (key == "note") {
      e.note = value;
    } else {
      throw InputError("unknown evidence line '" + key + "'");
    }
  }
  return e;
}

struct ClassCheckOptions {
  std::string file;
  std::string property;
  ErpBounds bounds;
};

int RunClassCheck(const ClassCheckOptions& o, const Common& common,
                  const std::vector<std::string>& args, std::ostream& out,
                  std::ostream& err) {
  FiniteClass f = ReadClassFile(o.file);
  Certificate cert = Begin("class-check", args, common);
  cert.AddBlock("class", SerializeClass(f));
  cert.Add("property", o.property);
  if (o.property == "rigidity") {
    bool rigid = true;
    for (const RigidityEntry& entry : RigidityScan(f)) {
      cert.Add("automorphisms", std::to_string(entry.member) + " " +
                                    std::to_string(entry.automorphisms));
      rigid = rigid && entry.automorphisms == 1;
    }
    PropertyVerdict v = rigid ? PropertyVerdict::kPass : PropertyVerdict::kFail;
    cert.verdict = std::string(PropertyVerdictName(v));
    cert.exit_code = ExitFor(v);
    return Emit(cert, common, Summary(cert), out, err);
  }
  PropertyReport report;
  ArrowConfig config = MakeArrowConfig(common);
  if (o.property == "HP") {
    report = HpCheck(f);
  } else if (o.property == "JEP") {
    report = JepCheck(f);
  } else if (o.property == "AP") {
    report = ApCheck(f);
  } else if (o.property == "ERP") {
    report = ErpCheck(f, o.bounds, config);
  } else {
    report = FErpCheck(f, o.bounds, config);
  }
  cert.Add("class-bound", std::to_string(report.class_bound));
  if (report.erp_bounds) {
    cert.Add("max-a", std::to_string(report.erp_bounds->max_a));
    cert.Add("max-b", std::to_string(report.erp_bounds->max_b));
    cert.Add("witness", std::to_string(report.erp_bounds->witness));
  }
  for (const Evidence& e : report.evidence) {
    cert.AddBlock("evidence", EvidenceText(e));
  }
  cert.verdict = std::string(PropertyVerdictName(report.verdict));
  cert.exit_code = ExitFor(report.verdict);
  cert.search_nodes = report.search_nodes;
  std::string summary = Summary(cert) + ", " +
                        std::to_string(report.evidence.size()) +
                        " evidence items";
  return Emit(cert, common, summary, out, err);
}

std::string ReplayClassCheck(const Certificate& cert) {
  FiniteClass f = ParseClassText(cert.GetBlock("class"));
  const std::string& property = cert.Get("property");
  PropertyVerdict verdict = ParsePropertyVerdict(cert.verdict);
  if (cert.exit_code != ExitFor(verdict)) return "exit code differs";
  if (property == "rigidity") {
    std::vector<std::string> lines = cert.GetAll("automorphisms");
    std::vector<RigidityEntry> scan = RigidityScan(f);
    if (lines.size() != scan.size()) return "automorphism count list differs";
    bool rigid = true;
    for (size_t i = 0; i < scan.size(); ++i) {
      std::vector<int> v = ParseInts(lines[i], ' ');
      if (v.size() != 2 || v[0] != scan[i].member ||
          v[1] != scan[i].automorphisms) {
        return "automorphism count of member " +
               std::to_string(scan[i].member) + " differs";
      }
      rigid = rigid && scan[i].automorphisms == 1;
    }
    if ((verdict == PropertyVerdict::kPass) != rigid) return "verdict differs";
    return "";
  }
  PropertyReport report;
  report.property = property;
  report.verdict = verdict;
  report.class_bound = IntField(cert, "class-bound");
  if (cert.Has("max-a")) {
    report.erp_bounds = ErpBounds{IntField(cert, "max-a"),
                                  IntField(cert, "max-b"),
                                  IntField(cert, "witness")};
  }
  for (const std::string& block : AllBlocks(cert, "evidence")) {
    report.evidence.push_back(ParseEvidence(block));
  }
  return VerifyPropertyReport(f, report);
}

// ---------------------------------------------------------------------------
// orderable

int RunOrderable(const std::string& file, const Common& common,
                 const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  FiniteClass f = ReadClassFile(file);
  OrderabilityResult result = OrderabilitySearch(f);
  Certificate cert = Begin("orderable", args, common);
  cert.AddBlock("class", SerializeClass(f));
  for (const BinaryType& t : result.types) {
    cert.Add("type", std::to_string(t.member) + " " + std::to_string(t.x) +
                         " " + std::to_string(t.y) + " " +
                         std::to_string(t.transpose));
  }
  if (result.verdict == OrderVerdict::kOrderable) {
    cert.Add("phi", JoinInts(result.phi));
  }
  if (result.symmetric_type) {
    cert.Add("symmetric", std::to_string(*result.symmetric_type));
  }
  for (const OrderabilityResult::Leaf& leaf : result.leaves) {
    std::string decisions;
    for (bool d : leaf.decisions) decisions += d ? '1' : '0';
    if (decisions.empty()) decisions = "-";
    cert.Add("leaf", decisions + " " + std::to_string(leaf.member) + " " +
                         std::to_string(leaf.x) + " " + std::to_string(leaf.y) +
                         " " + std::to_string(leaf.z));
  }
  cert.verdict = std::string(OrderVerdictName(result.verdict));
  cert.exit_code = ExitFor(result.verdict);
  cert.search_nodes = result.nodes;
  std::string summary = Summary(cert) + ", " +
                        std::to_string(result.types.size()) + " binary types";
  return Emit(cert, common, summary, out, err);
}

std::string ReplayOrderable(const Certificate& cert) {
  FiniteClass f = ParseClassText(cert.GetBlock("class"));
  OrderabilityResult result;
  result.verdict = ParseOrderVerdict(cert.verdict);
  if (cert.exit_code != ExitFor(result.verdict)) return "exit code differs";
  if (result.verdict == OrderVerdict::kInconclusive) return "";
  for (const std::string& line : cert.GetAll("type")) {
    std::vector<int> v = ParseInts(line, ' ');
    if (v.size() != 4) return "malformed type line";
    BinaryType t;
    t.member = v[0];
    t.x = v[1];
    t.y = v[2];
    t.transpose = v[3];
    if (t.member < 0 || t.member >= f.size()) return "type member out of range";
    const Structure& m = f.members[t.member];
    if (t.x < 0 || t.y < 0 || t.x >= m.size() || t.y >= m.size() ||
        t.x == t.y) {
      return "type realizer out of range";
    }
    t.type = ComputeQfType(m, Tuple{t.x, t.y});
    result.types.push_back(std::move(t));
  }
  if (cert.Has("phi")) result.phi = IntsField(cert, "phi");
  for (int p : result.phi) {
    if (p < 0 || p >= static_cast<int>(result.types.size())) {
      return "phi entry out of range";
    }
  }
  if (cert.Has("symmetric")) result.symmetric_type = IntField(cert, "symmetric");
  for (const std::string& line : cert.GetAll("leaf")) {
    std::vector<std::string> words = Words(line);
    if (words.size() != 5) return "malformed leaf line";
    OrderabilityResult::Leaf leaf;
    if (words[0] != "-") {
      for (char ch : words[0]) {
        if (ch != '0' && ch != '1') return "malformed leaf decisions";
        leaf.decisions.push_back(ch == '1');
      }
    }
    leaf.member = ParseOneInt(words[1]);
    leaf.x = ParseOneInt(words[2]);
    leaf.y = ParseOneInt(words[3]);
    leaf.z = ParseOneInt(words[4]);
    result.leaves.push_back(std::move(leaf));
  }
  return VerifyOrderability(f, result);
}

// ---------------------------------------------------------------------------
// expand and isolate

struct ExpandOptions {
  std::string file;
  int k = 0;  // 0: the domain size
  std::string write;
};

Structure Expand(const std::string& command, const Structure& m, int k,
                 TypePredicateTable* table) {
  return command == "expand" ? QfTypeMorleyisation(m, k, table)
                             : Isolator(m, k, table);
}

int RunExpand(const std::string& command, const ExpandOptions& o,
              const Common& common, const std::vector<std::string>& args,
              std::ostream& out, std::ostream& err) {
  Structure m = ReadStructureFile(o.file);
  int k = o.k > 0 ? o.k : std::max(1, m.size());
  TypePredicateTable table;
  Structure expanded = Expand(command, m, k, &table);
  std::string text = SerializeStructure(expanded);
  if (!o.write.empty()) WriteFileAtomically(o.write, text);
  Certificate cert = Begin(command, args, common);
  cert.config.push_back({"k", std::to_string(k)});
  cert.AddBlock("M", SerializeStructure(m));
  cert.Add("predicates", std::to_string(table.predicates.size()));
  cert.AddBlock("expanded", text);
  cert.verdict = "COMPUTED";
  cert.exit_code = kExitHolds;
  std::string summary = Summary(cert) + ", " +
                        std::to_string(table.predicates.size()) +
                        " type predicates up to arity " + std::to_string(k);
  return Emit(cert, common, summary, out, err);
}

std::string ReplayExpand(const Certificate& cert) {
  Structure m = ParseStructure(cert.GetBlock("M"));
  Structure claimed = ParseStructure(cert.GetBlock("expanded"));
  int k = ParseOneInt(cert.Config("k"));
  TypePredicateTable table;
  Structure expanded = Expand(cert.command, m, k, &table);
  if (!(expanded == claimed)) return "expansion differs";
  if (IntField(cert, "predicates") !=
      static_cast<int>(table.predicates.size())) {
    return "predicate count differs";
  }
  if (!SameQfTypePartition(m, claimed, k)) {
    return "expansion changes the qf type partition";
  }
  return "";
}

// ---------------------------------------------------------------------------
// indiscernible

struct IndOptions {
  std::string file;
  std::string delta, delta_file;
  int cap = kDefaultIndexArityCap;
  std::string based_on;
  std::string type_union;
};

std::string ViolationText(const IndViolation& v) {
  return TupleText(v.i) + " " + TupleText(v.j) + " " +
         std::to_string(v.formula) + " " + TupleText(v.positions);
}

std::string TypeDigests(const std::set<QfType>& types) {
  std::string out;
  for (const QfType& t : types) {
    if (!out.empty()) out += ' ';
    out += t.ShortDigest();
  }
  return out.empty() ? "-" : out;
}

int RunIndiscernible(const IndOptions& o, const Common& common,
                     const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err) {
  if (!o.based_on.empty() && !o.type_union.empty()) {
    throw InputError("--based-on and --type-union are exclusive");
  }
  IndexedSequence seq = ReadSequenceFile(o.file);
  Certificate cert = Begin("indiscernible", args, common);
  cert.AddBlock("sequence", SerializeSequence(seq, "I"));

  if (!o.type_union.empty()) {
    Formula phi = Formula::Parse(seq.target.signature(), o.type_union);
    cert.config.push_back({"check", "type-union"});
    cert.Add("phi", phi.text());
    try {
      std::set<QfType> psi = InducedTypeUnionRelation(seq, phi);
      cert.Add("psi", TypeDigests(psi));
      cert.verdict = "INDISCERNIBLE";
      cert.exit_code = kExitHolds;
    } catch (const PreconditionError& e) {
      cert.Add("note", e.what());
      cert.verdict = "NOT-INDISCERNIBLE";
      cert.exit_code = kExitRefuted;
    }
    return Emit(cert, common, Summary(cert), out, err);
  }

  FormulaSet delta = ReadDelta(seq.target.signature(), o.delta, o.delta_file);
  cert.config.push_back({"cap", std::to_string(o.cap)});
  cert.Add("delta", FormulaSetText(delta));
  if (!o.based_on.empty()) {
    IndexedSequence base = ReadSequenceFile(o.based_on);
    cert.config.push_back({"check", "based-on"});
    cert.AddBlock("base", SerializeSequence(base, "I"));
    LocalBasisReport report = CheckLocallyBased(seq, base, delta, o.cap);
    for (const auto& [t, s] : report.witnesses) {
      cert.Add("witness", TupleText(t) + " " + TupleText(s));
    }
    if (report.unmatched) cert.Add("unmatched", TupleText(*report.unmatched));
    cert.verdict = report.based ? "BASED" : "NOT-BASED";
    cert.exit_code = report.based ? kExitHolds : kExitRefuted;
    return Emit(cert, common, Summary(cert), out, err);
  }

  cert.config.push_back({"check", "indiscernible"});
  IndiscernibilityReport report = IsIndiscernible(seq, delta, o.cap);
  cert.Add("index-tuples", std::to_string(report.index_tuples));
  cert.Add("violation-count", std::to_string(report.violation_count));
  for (const IndViolation& v : report.violations) {
    cert.Add("violation", ViolationText(v));
  }
  cert.verdict = report.indiscernible ? "INDISCERNIBLE" : "NOT-INDISCERNIBLE";
  cert.exit_code = report.indiscernible ? kExitHolds : kExitRefuted;
  std::string summary = Summary(cert) + ", " +
                        std::to_string(report.violation_count) + " violations";
  return Emit(cert, common, summary, out, err);
}

std::string ReplayIndiscernible(const Certificate& cert) {
  IndexedSequence seq = ParseSequenceText(cert.GetBlock("sequence"));
  const std::string& check = cert.Config("check");
  if (check == "type-union") {
    Formula phi = Formula::Parse(seq.target.signature(), cert.Get("phi"));
    std::string verdict;
    std::string psi;
    try {
      psi = TypeDigests(InducedTypeUnionRelation(seq, phi));
      verdict = "INDISCERNIBLE";
    } catch (const PreconditionError& e) {
      verdict = "NOT-INDISCERNIBLE";
      if (cert.Get("note") != Flatten(e.what())) {
        return "violation differs";
      }
    }
    if (verdict != cert.verdict) return "verdict differs";
    if (verdict == "INDISCERNIBLE" && psi != cert.Get("psi")) {
      return "type union differs";
    }
    return cert.exit_code == (verdict == "INDISCERNIBLE" ? 0 : 1)
               ? ""
               : "exit code differs";
  }
  FormulaSet delta = ParseFormulaSet(seq.target.signature(), cert.Get("delta"));
  int cap = ParseOneInt(cert.Config("cap"));
  if (check == "based-on") {
    IndexedSequence base = ParseSequenceText(cert.GetBlock("base"));
    LocalBasisReport report = CheckLocallyBased(seq, base, delta, cap);
    std::vector<std::string> witnesses = cert.GetAll("witness");
    if (witnesses.size() != report.witnesses.size()) {
      return "witness list differs";
    }
    for (size_t i = 0; i < witnesses.size(); ++i) {
      const auto& [t, s] = report.witnesses[i];
      if (witnesses[i] != TupleText(t) + " " + TupleText(s)) {
        return "witness " + std::to_string(i) + " differs";
      }
    }
    if (cert.verdict != (report.based ? "BASED" : "NOT-BASED")) {
      return "verdict differs";
    }
    return cert.exit_code == (report.based ? 0 : 1) ? "" : "exit code differs";
  }
  if (check != "indiscernible") return "unknown check '" + check + "'";
  IndiscernibilityReport report = IsIndiscernible(seq, delta, cap);
  std::vector<std::string> violations = cert.GetAll("violation");
  if (violations.size() != report.violations.size() ||
      IntField(cert, "violation-count") != report.violation_count) {
    return "violation list differs";
  }
  for (size_t i = 0; i < violations.size(); ++i) {
    if (violations[i] != ViolationText(report.violations[i])) {
      return "violation " + std::to_string(i) + " differs";
    }
  }
  if (cert.verdict !=
      (report.indiscernible ? "INDISCERNIBLE" : "NOT-INDISCERNIBLE")) {
    return "verdict differs";
  }
  return cert.exit_code == (report.indiscernible ? 0 : 1) ? ""
                                                          : "exit code differs";
}

// ---------------------------------------------------------------------------
// extract

struct ExtractOptions {
  std::string file, pattern;
  std::string delta, delta_file;
  int cap = -1;
};

int RunExtract(const ExtractOptions& o, const Common& common,
               const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  IndexedSequence seq = ReadSequenceFile(o.file);
  Structure pattern = ReadStructureFile(o.pattern);
  FormulaSet delta = ReadDelta(seq.target.signature(), o.delta, o.delta_file);
  ExtractionResult result =
      ExtractIndiscerniblePattern(seq, pattern, delta, o.cap);
  Certificate cert = Begin("extract", args, common);
  cert.config.push_back({"cap", std::to_string(result.cap)});
  cert.AddBlock("sequence", SerializeSequence(seq, "I"));
  cert.AddBlock("pattern", SerializeStructure(pattern));
  cert.Add("delta", FormulaSetText(delta));
  cert.Add("candidates", std::to_string(result.candidates));
  cert.Add("classes", std::to_string(result.classes));
  if (result.found) {
    cert.Add("map", TupleText(result.g.map));
  } else {
    for (const auto& [s, t] : result.refutations) {
      cert.Add("refutation", TupleText(s) + " " + TupleText(t));
    }
  }
  cert.verdict = result.found ? "FOUND" : "NONE";
  cert.exit_code = result.found ? kExitHolds : kExitRefuted;
  cert.search_nodes = result.candidates;
  std::string summary = Summary(cert);
  if (result.found) summary += ", map " + TupleText(result.g.map);
  return Emit(cert, common, summary, out, err);
}

Tuple Image(const Embedding& g, const Tuple& t) {
  Tuple out;
  out.reserve(t.size());
  for (Element x : t) out.push_back(g(x));
  return out;
}

std::string ReplayExtract(const Certificate& cert) {
  IndexedSequence seq = ParseSequenceText(cert.GetBlock("sequence"));
  Structure pattern = ParseStructure(cert.GetBlock("pattern"));
  FormulaSet delta = ParseFormulaSet(seq.target.signature(), cert.Get("delta"));
  int cap = ParseOneInt(cert.Config("cap"));
  if (cert.verdict == "FOUND") {
    if (cert.exit_code != kExitHolds) return "exit code differs";
    Embedding g{ParseTupleText(cert.Get("map"))};
    if (g.size() != pattern.size() || !IsEmbedding(pattern, seq.index, g.map)) {
      return "map is not an embedding of the pattern";
    }
    IndexedSequence found = Reindex(seq, pattern, g);
    if (!IsIndiscernible(found, delta, cap).indiscernible) {
      return "pattern is not indiscernible";
    }
    if (!CheckLocallyBased(found, seq, delta, cap).based) {
      return "pattern is not locally based on the source";
    }
    return "";
  }
  if (cert.verdict != "NONE") return "unknown verdict";
  if (cert.exit_code != kExitRefuted) return "exit code differs";
  std::vector<Embedding> all = EnumerateEmbeddings(seq.index, pattern);
  std::vector<std::string> lines = cert.GetAll("refutation");
  if (lines.size() != all.size() ||
      IntField(cert, "candidates") != static_cast<int>(all.size())) {
    return "refutations do not cover every candidate";
  }
  for (size_t k = 0; k < all.size(); ++k) {
    std::vector<std::string> words = Words(lines[k]);
    if (words.size() != 2) return "malformed refutation";
    Tuple s = ParseTupleText(words[0]);
    Tuple t = ParseTupleText(words[1]);
    if (s.empty() || s.size() != t.size() ||
        static_cast<int>(s.size()) > cap) {
      return "refutation " + std::to_string(k) + " has bad tuple lengths";
    }
    for (Element x : s) {
      if (x < 0 || x >= pattern.size()) return "refutation out of range";
    }
    for (Element x : t) {
      if (x < 0 || x >= pattern.size()) return "refutation out of range";
    }
    if (ComputeQfType(pattern, s) != ComputeQfType(pattern, t)) {
      return "refutation " + std::to_string(k) + " mixes qf types";
    }
    if (DeltaTypeKey(seq.target, delta, seq.Concat(Image(all[k], s))) ==
        DeltaTypeKey(seq.target, delta, seq.Concat(Image(all[k], t)))) {
      return "refutation " + std::to_string(k) + " has equal delta-types";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// elf and generate

int RunElf(const std::string& file, const std::string& tuple,
           const Common& common, const std::vector<std::string>& args,
           std::ostream& out, std::ostream& err) {
  Structure b = ReadStructureFile(file);
  Tuple a = ParseTupleText(tuple);
  std::vector<Element> least = ElfMinimize(b, a);
  Certificate cert = Begin("elf", args, common);
  cert.AddBlock("B", SerializeStructure(b));
  cert.Add("tuple", TupleText(a));
  cert.Add("elf", TupleText(least));
  cert.verdict = "COMPUTED";
  cert.exit_code = kExitHolds;
  return Emit(cert, common, Summary(cert) + ", B' = {" + TupleText(least) + "}",
              out, err);
}

std::string ReplayElf(const Certificate& cert) {
  Structure b = ParseStructure(cert.GetBlock("B"));
  Tuple a = ParseTupleText(cert.Get("tuple"));
  return TupleText(ElfMinimize(b, a)) == cert.Get("elf") ? ""
                                                         : "least set differs";
}

std::string KeysDigest(const FiniteClass& f) {
  std::string joined;
  for (const std::string& key : f.keys) joined += key + "\n";
  return Sha256Hex(joined);
}

int RunGenerate(const std::string& generator, int upto,
                const std::string& write, const Common& common,
                const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  FiniteClass f = GenerateClass(ParseClassGenerator(generator), upto);
  std::string text = SerializeClass(f);
  if (!write.empty()) WriteFileAtomically(write, text);
  Certificate cert = Begin("generate", args, common);
  cert.AddBlock("class", text);
  cert.Add("members", std::to_string(f.size()));
  cert.Add("keys-digest", KeysDigest(f));
  cert.verdict = "COMPUTED";
  cert.exit_code = kExitHolds;
  return Emit(cert, common,
              Summary(cert) + ", " + std::to_string(f.size()) + " members",
              out, err);
}

std::string ReplayGenerate(const Certificate& cert) {
  FiniteClass f = ParseClassText(cert.GetBlock("class"));
  if (IntField(cert, "members") != f.size()) return "member count differs";
  return KeysDigest(f) == cert.Get("keys-digest") ? "" : "member keys differ";
}

// ---------------------------------------------------------------------------
// verify

int RunVerify(const std::string& file, std::ostream& out, std::ostream& err) {
  std::string text = ReadTextFile(file);
  Certificate cert;
  try {
    cert = Certificate::Parse(text);
  } catch (const CertificateRejected& e) {
    err << "rejected: " << e.what() << "\n";
    return kExitRefuted;
  }
  std::string problem = ReplayCertificate(cert);
  if (!problem.empty()) {
    err << "rejected: " << problem << "\n";
    return kExitRefuted;
  }
  out << "verified: " << cert.command << " " << cert.verdict
      << " (replayed, 0 search nodes)\n";
  return kExitHolds;
}

}  // namespace

std::string ReplayCertificate(const Certificate& cert) {
  static const std::map<std::string, std::function<std::string(
                                         const Certificate&)>>
      kReplay = {
          {"arrow", ReplayArrow},
          {"joint-arrow",
           [](const Certificate& c) {
             for (const auto& [k, v] : c.config) {
               if (k == "construction" && v == "staged") {
                 return ReplayStagedJoint(c);
               }
             }
             return ReplayArrow(c);
           }},
          {"degree", ReplayDegree},
          {"class-check", ReplayClassCheck},
          {"orderable", ReplayOrderable},
          {"expand", ReplayExpand},
          {"isolate", ReplayExpand},
          {"indiscernible", ReplayIndiscernible},
          {"extract", ReplayExtract},
          {"elf", ReplayElf},
          {"generate", ReplayGenerate},
      };
  auto it = kReplay.find(cert.command);
  if (it == kReplay.end()) return "unknown command '" + cert.command + "'";
  try {
    if (cert.command == "arrow" || cert.command == "joint-arrow" ||
        cert.command == "degree") {
      // Arrow-style verdicts share one exit-code table.
      if (cert.exit_code != ExitFor(ParseVerdict(cert.verdict))) {
        return "exit code does not match the verdict";
      }
    }
    return it->second(cert);
  } catch (const std::exception& e) {
    return std::string("malformed payload: ") + e.what();
  }
}

int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Finite structural Ramsey theory and indiscernibles",
               "ramseyqf"};
  app.require_subcommand(1);

  Common common;
  std::function<int()> run;

  ArrowOptions arrow;
  CLI::App* arrow_cmd = app.add_subcommand(
      "arrow", "decide C -> (B)^A_r for embedding copies");
  arrow_cmd->add_option("C", arrow.files, "structure files C B A")
      ->required()
      ->expected(3);
  arrow_cmd->add_option("--colors,-r", arrow.colors, "number of colours")
      ->check(CLI::PositiveNumber);
  AddModeOptions(arrow_cmd, &arrow.mode, &arrow.samples, &arrow.max_flips);
  arrow_cmd->add_option("--format", arrow.format, "cert or cnf")
      ->check(CLI::IsMember({"cert", "cnf"}));
  AddCommon(arrow_cmd, &common);
  arrow_cmd->callback(
      [&] { run = [&] { return RunArrow(arrow, common, args, out, err); }; });

  JointOptions joint;
  CLI::App* joint_cmd = app.add_subcommand(
      "joint-arrow",
      "decide C -> (B)^{A1..An}_{r1..rn} with caps, or build a witness");
  joint_cmd->add_option("files", joint.files,
                        "C B A1 .. An, or B A1 .. An with --candidates")
      ->required();
  joint_cmd->add_option("--colors", joint.colors, "comma list, default 2 each");
  joint_cmd->add_option("--caps", joint.caps, "comma list, default 1 each");
  joint_cmd->add_option("--candidates", joint.candidates,
                        "class file of candidate witnesses");
  AddModeOptions(joint_cmd, &joint.mode, &joint.samples, &joint.max_flips);
  AddCommon(joint_cmd, &common);
  joint_cmd->callback([&] {
    run = [&] { return RunJointArrow(joint, common, args, out, err); };
  });

  DegreeOptions degree;
  CLI::App* degree_cmd =
      app.add_subcommand("degree", "bound the Ramsey degree of A under B");
  degree_cmd->add_option("A", degree.a, "structure file")->required();
  degree_cmd->add_option("B", degree.b, "structure file")->required();
  degree_cmd->add_option("--candidates", degree.candidates,
                         "class file of candidate witnesses")
      ->required();
  degree_cmd->add_option("--d", degree.d, "claimed degree")
      ->check(CLI::PositiveNumber);
  degree_cmd->add_option("--max-colors", degree.max_colors,
                         "check r = d+1 .. max-colors")
      ->check(CLI::PositiveNumber);
  AddCommon(degree_cmd, &common);
  degree_cmd->callback(
      [&] { run = [&] { return RunDegree(degree, common, args, out, err); }; });

  ClassCheckOptions cls;
  CLI::App* class_cmd =
      app.add_subcommand("class-check", "check a property of a finite class");
  class_cmd->add_option("class", cls.file, "class file")->required();
  class_cmd->add_option("--property", cls.property, "property to check")
      ->required()
      ->check(CLI::IsMember({"HP", "JEP", "AP", "ERP", "f-ERP", "rigidity"}));
  class_cmd->add_option("--max-a", cls.bounds.max_a, "ERP: largest A")
      ->check(CLI::PositiveNumber);
  class_cmd->add_option("--max-b", cls.bounds.max_b, "ERP: largest B")
      ->check(CLI::PositiveNumber);
  class_cmd->add_option("--witness", cls.bounds.witness, "ERP: largest C")
      ->check(CLI::PositiveNumber);
  AddCommon(class_cmd, &common);
  class_cmd->callback(
      [&] { run = [&] { return RunClassCheck(cls, common, args, out, err); }; });

  std::string orderable_file;
  CLI::App* orderable_cmd = app.add_subcommand(
      "orderable", "search for a qf-type-definable linear order");
  orderable_cmd->add_option("class", orderable_file, "class file")->required();
  AddCommon(orderable_cmd, &common);
  orderable_cmd->callback([&] {
    run = [&] {
      return RunOrderable(orderable_file, common, args, out, err);
    };
  });

  ExpandOptions expand;
  for (const char* name : {"expand", "isolate"}) {
    CLI::App* cmd = app.add_subcommand(
        name, std::string(name) == "expand"
                  ? "add a predicate for every realised qf type"
                  : "the qf type predicates alone");
    cmd->add_option("structure", expand.file, "structure file")->required();
    cmd->add_option("--k", expand.k, "arity bound, default the domain size")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--write", expand.write, "also write the expansion here");
    AddCommon(cmd, &common);
    std::string command = name;
    cmd->callback([&, command] {
      run = [&, command] {
        return RunExpand(command, expand, common, args, out, err);
      };
    });
  }

  IndOptions ind;
  CLI::App* ind_cmd = app.add_subcommand(
      "indiscernible", "check an indexed sequence for indiscernibility");
  ind_cmd->add_option("sequence", ind.file, "sequence file")->required();
  ind_cmd->add_option("--delta", ind.delta, "formulas separated by ';' or ALL");
  ind_cmd->add_option("--delta-file", ind.delta_file,
                      "formulas, one per line");
  ind_cmd->add_option("--cap", ind.cap, "longest index tuple")
      ->check(CLI::PositiveNumber);
  ind_cmd->add_option("--based-on", ind.based_on,
                      "check local basedness on this sequence");
  ind_cmd->add_option("--type-union", ind.type_union,
                      "derive the qf type union defining this formula");
  AddCommon(ind_cmd, &common);
  ind_cmd->callback([&] {
    run = [&] { return RunIndiscernible(ind, common, args, out, err); };
  });

  ExtractOptions extract;
  CLI::App* extract_cmd = app.add_subcommand(
      "extract", "find an indiscernible copy of a pattern index");
  extract_cmd->add_option("sequence", extract.file, "sequence file")
      ->required();
  extract_cmd->add_option("--pattern", extract.pattern,
                          "index structure to embed")
      ->required();
  extract_cmd->add_option("--delta", extract.delta,
                          "formulas separated by ';' or ALL");
  extract_cmd->add_option("--delta-file", extract.delta_file,
                          "formulas, one per line");
  extract_cmd->add_option("--cap", extract.cap,
                          "longest index tuple, default the pattern size");
  AddCommon(extract_cmd, &common);
  extract_cmd->callback([&] {
    run = [&] { return RunExtract(extract, common, args, out, err); };
  });

  std::string elf_file, elf_tuple;
  CLI::App* elf_cmd = app.add_subcommand(
      "elf", "least subset carrying every qf copy of a tuple");
  elf_cmd->add_option("B", elf_file, "structure file")->required();
  elf_cmd->add_option("--tuple", elf_tuple, "comma-separated points")
      ->required();
  AddCommon(elf_cmd, &common);
  elf_cmd->callback([&] {
    run = [&] {
      return RunElf(elf_file, elf_tuple, common, args, out, err);
    };
  });

  std::string verify_file;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "replay a certificate without search");
  verify_cmd->add_option("certificate", verify_file, "certificate file")
      ->required();
  verify_cmd->callback(
      [&] { run = [&] { return RunVerify(verify_file, out, err); }; });

  std::string generator, generate_write;
  int upto = 0;
  CLI::App* generate_cmd =
      app.add_subcommand("generate", "enumerate a class up to isomorphism");
  generate_cmd->add_option("generator", generator,
                           "linear-orders, pure-sets, graphs, ordered-graphs "
                           "or successor-chains")
      ->required();
  generate_cmd->add_option("--upto", upto, "largest member size")->required();
  generate_cmd->add_option("--write", generate_write,
                           "also write the class file here");
  AddCommon(generate_cmd, &common);
  generate_cmd->callback([&] {
    run = [&] {
      return RunGenerate(generator, upto, generate_write, common, args, out,
                         err);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitHolds : kExitInputError;
  }

  try {
    return run();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace ramseyqf
