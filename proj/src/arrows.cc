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

#include "ramseyqf/arrows.h"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>

#include "ramseyqf/error.h"
#include "ramseyqf/qftype.h"

namespace ramseyqf {

namespace {

constexpr int kMaxSymmetries = 64;

void CheckLists(size_t n, const std::vector<int>& rs,
                const std::vector<int>& ds) {
  if (rs.size() != n || ds.size() != n) {
    throw InputError("colour and cap lists must match the list of As");
  }
  for (int r : rs) {
    if (r < 1) throw InputError("number of colours must be at least 1");
    if (r > 64) throw InputError("at most 64 colours are supported");
  }
  for (int d : ds) {
    if (d < 1) throw InputError("degree cap must be at least 1");
  }
}

void CheckConfig(const ArrowConfig& config) {
  if (config.node_budget <= 0) throw InputError("node budget must be > 0");
  if (config.samples < 1) throw InputError("sample count must be >= 1");
}

std::map<Tuple, int> IndexOf(const std::vector<Tuple>& copies) {
  std::map<Tuple, int> index;
  for (int i = 0; i < static_cast<int>(copies.size()); ++i) {
    index.emplace(copies[i], i);
  }
  return index;
}

void SetGroups(ArrowInstance& inst, const std::vector<int>& rs,
               const std::vector<int>& ds) {
  int total = 0;
  for (size_t g = 0; g < inst.copies.size(); ++g) {
    inst.offset.push_back(total);
    total += static_cast<int>(inst.copies[g].size());
    inst.problem.groups.push_back({rs[g], ds[g]});
    inst.problem.group_of.insert(inst.problem.group_of.end(),
                                 inst.copies[g].size(), static_cast<int>(g));
  }
}

// Permutations of the single group's copies induced by automorphisms of
// the host.
void AddSymmetries(ArrowInstance& inst, const Structure& host) {
  if (inst.copies.size() != 1) return;
  std::map<Tuple, int> index = IndexOf(inst.copies[0]);
  for (const Embedding& g : SomeAutomorphisms(host, kMaxSymmetries)) {
    std::vector<int> perm;
    perm.reserve(inst.copies[0].size());
    for (const Tuple& copy : inst.copies[0]) {
      Tuple image;
      for (Element e : copy) image.push_back(g(e));
      auto it = index.find(image);
      if (it == index.end()) {
        perm.clear();
        break;
      }
      perm.push_back(it->second);
    }
    if (perm.size() == inst.copies[0].size()) {
      inst.problem.symmetries.push_back(std::move(perm));
    }
  }
}

}  // namespace

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "HOLDS";
    case Verdict::kFails:
      return "FAILS";
    case Verdict::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

Verdict ParseVerdict(std::string_view name) {
  if (name == "HOLDS") return Verdict::kHolds;
  if (name == "FAILS") return Verdict::kFails;
  if (name == "INCONCLUSIVE") return Verdict::kInconclusive;
  throw InputError("unknown verdict '" + std::string(name) + "'");
}

std::string_view ArrowModeName(ArrowMode m) {
  switch (m) {
    case ArrowMode::kDecide:
      return "decide";
    case ArrowMode::kRefute:
      return "refute";
    case ArrowMode::kSample:
      return "sample";
  }
  return "?";
}

ArrowMode ParseArrowMode(std::string_view name) {
  if (name == "decide") return ArrowMode::kDecide;
  if (name == "refute") return ArrowMode::kRefute;
  if (name == "sample") return ArrowMode::kSample;
  throw InputError("unknown mode '" + std::string(name) +
                   "' (decide, refute or sample)");
}

int64_t DefaultNodeBudget() {
  if (const char* env = std::getenv("RAMSEYQF_BUDGET")) {
    char* end = nullptr;
    long long value = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return 10'000'000;
}

ArrowInstance BuildArrowInstance(const Structure& c, const Structure& b,
                                 const std::vector<Structure>& as,
                                 const std::vector<int>& rs,
                                 const std::vector<int>& ds) {
  CheckLists(as.size(), rs, ds);
  RequireSameSymbols(c.signature(), b.signature(), "arrow C and B");
  for (const Structure& a : as) {
    RequireSameSymbols(b.signature(), a.signature(), "arrow B and A");
  }
  ArrowInstance inst;
  std::vector<std::map<Tuple, int>> index;
  std::vector<std::vector<Embedding>> patterns;
  for (const Structure& a : as) {
    std::vector<Tuple> copies;
    for (Embedding& e : EnumerateEmbeddings(c, a)) {
      copies.push_back(std::move(e.map));
    }
    index.push_back(IndexOf(copies));
    inst.copies.push_back(std::move(copies));
    patterns.push_back(EnumerateEmbeddings(b, a));
  }
  SetGroups(inst, rs, ds);
  for (Embedding& e : EnumerateEmbeddings(c, b)) {
    std::vector<std::vector<int>> edge(as.size());
    for (size_t g = 0; g < as.size(); ++g) {
      for (const Embedding& f : patterns[g]) {
        edge[g].push_back(inst.offset[g] + index[g].at(Compose(e, f).map));
      }
    }
    inst.problem.edges.push_back(std::move(edge));
    inst.b_copies.push_back(std::move(e.map));
  }
  AddSymmetries(inst, c);
  return inst;
}

ArrowInstance BuildTupleArrowInstance(const Structure& host,
                                      std::span<const Element> allowed,
                                      const Structure& ref,
                                      std::span<const Element> b_tuple,
                                      const std::vector<Tuple>& a_tuples,
                                      const std::vector<int>& rs,
                                      const std::vector<int>& ds) {
  CheckLists(a_tuples.size(), rs, ds);
  if (!IsInjective(b_tuple)) {
    throw PreconditionError("the B tuple repeats a point");
  }
  ArrowInstance inst;
  std::vector<std::map<Tuple, int>> index;
  std::vector<std::vector<std::vector<int>>> patterns;
  for (const Tuple& a : a_tuples) {
    for (Element e : a) {
      if (std::find(b_tuple.begin(), b_tuple.end(), e) == b_tuple.end()) {
        throw PreconditionError("A tuple is not inside the B tuple");
      }
    }
    std::vector<Tuple> copies = EnumerateQfCopiesOf(host, ref, a, allowed);
    index.push_back(IndexOf(copies));
    inst.copies.push_back(std::move(copies));
    std::vector<std::vector<int>> positions;
    for (const Tuple& inside : EnumerateQfCopiesOf(ref, ref, a, b_tuple)) {
      std::vector<int> pi;
      for (Element e : inside) {
        pi.push_back(static_cast<int>(
            std::find(b_tuple.begin(), b_tuple.end(), e) - b_tuple.begin()));
      }
      positions.push_back(std::move(pi));
    }
    patterns.push_back(std::move(positions));
  }
  SetGroups(inst, rs, ds);
  for (Tuple& y : EnumerateQfCopiesOf(host, ref, b_tuple, allowed)) {
    std::vector<std::vector<int>> edge(a_tuples.size());
    for (size_t g = 0; g < a_tuples.size(); ++g) {
      for (const std::vector<int>& pi : patterns[g]) {
        Tuple member;
        for (int p : pi) member.push_back(y[p]);
        auto it = index[g].find(member);
        if (it == index[g].end()) {
          throw PreconditionError("copy of B contains an untyped A copy");
        }
        edge[g].push_back(inst.offset[g] + it->second);
      }
    }
    inst.problem.edges.push_back(std::move(edge));
    inst.b_copies.push_back(std::move(y));
  }
  if (allowed.empty()) AddSymmetries(inst, host);
  return inst;
}

std::vector<std::vector<int>> SampleColorings(const ColoringProblem& problem,
                                              uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> out(samples);
  for (auto& coloring : out) {
    coloring.resize(problem.num_variables());
    for (int v = 0; v < problem.num_variables(); ++v) {
      coloring[v] = static_cast<int>(
          rng() % static_cast<uint64_t>(
                      problem.groups[problem.group_of[v]].colors));
    }
  }
  return out;
}

ArrowResult SolveArrowInstance(const ArrowInstance& instance, ArrowMode mode,
                               const ArrowConfig& config) {
  CheckConfig(config);
  ArrowResult result;
  result.mode = mode;
  result.config = config;
  switch (mode) {
    case ArrowMode::kDecide: {
      DecideOutcome out = DecideColoring(instance.problem, config.node_budget);
      result.stats = out.stats;
      if (out.status == SearchStatus::kBadColoringFound) {
        result.verdict = Verdict::kFails;
        result.coloring = std::move(out.coloring);
      } else if (out.status == SearchStatus::kExhausted) {
        result.verdict = Verdict::kHolds;
        result.proof = std::move(out.proof);
      }
      break;
    }
    case ArrowMode::kRefute: {
      LocalSearchOutcome out =
          LocalSearchColoring(instance.problem, config.seed, config.max_flips);
      result.stats = out.stats;
      if (out.found) {
        result.verdict = Verdict::kFails;
        result.coloring = std::move(out.coloring);
      }
      break;
    }
    case ArrowMode::kSample: {
      for (auto& coloring :
           SampleColorings(instance.problem, config.seed, config.samples)) {
        ++result.stats.nodes;
        int w = FirstUnrefutedEdge(instance.problem, coloring);
        if (w < 0) {
          result.verdict = Verdict::kFails;
          result.coloring = std::move(coloring);
          result.sample_witnesses.clear();
          return result;
        }
        result.sample_witnesses.push_back(w);
        ++result.samples_witnessed;
      }
      break;
    }
  }
  if (result.verdict == Verdict::kFails &&
      !VerifyBadColoring(instance, result.coloring)) {
    throw std::logic_error("search returned an invalid certificate");
  }
  return result;
}

ArrowResult ArrowCheck(const Structure& c, const Structure& b,
                       const Structure& a, int r, ArrowMode mode,
                       const ArrowConfig& config) {
  return SolveArrowInstance(BuildArrowInstance(c, b, {a}, {r}, {1}), mode,
                            config);
}

ArrowResult JointArrowCheck(const Structure& c, const Structure& b,
                            const std::vector<Structure>& as,
                            const std::vector<int>& rs,
                            const std::vector<int>& ds, ArrowMode mode,
                            const ArrowConfig& config) {
  return SolveArrowInstance(BuildArrowInstance(c, b, as, rs, ds), mode,
                            config);
}

bool VerifyBadColoring(const ArrowInstance& instance,
                       std::span<const int> coloring) {
  return IsValidColoring(instance.problem, coloring) &&
         FirstUnrefutedEdge(instance.problem, coloring) < 0;
}

std::optional<Embedding> FindMonochromaticCopy(const Structure& c,
                                               const Structure& b,
                                               const Structure& a,
                                               std::span<const int> chi) {
  std::vector<Embedding> copies = EnumerateEmbeddings(c, a);
  if (chi.size() != copies.size()) {
    throw InputError("colouring does not match the copies of A in C");
  }
  std::map<Tuple, int> color;
  for (size_t i = 0; i < copies.size(); ++i) color[copies[i].map] = chi[i];
  std::vector<Embedding> inner = EnumerateEmbeddings(b, a);
  std::optional<Embedding> found;
  ForEachEmbedding(c, b, [&](const std::vector<Element>& e) {
    Embedding outer{e};
    int first = -1;
    for (const Embedding& f : inner) {
      int col = color.at(Compose(outer, f).map);
      if (first < 0) first = col;
      if (col != first) return true;
    }
    found = outer;
    return false;
  });
  return found;
}

std::string ArrowToDimacs(const ArrowInstance& instance) {
  return ToDimacs(instance.problem);
}

JointWitnessResult BuildJointWitness(const std::vector<Structure>& candidates,
                                     const Structure& b,
                                     const std::vector<Structure>& as,
                                     const std::vector<int>& rs,
                                     const ArrowConfig& config) {
  CheckLists(as.size(), rs, std::vector<int>(as.size(), 1));
  JointWitnessResult result;
  result.order.resize(as.size());
  std::iota(result.order.begin(), result.order.end(), 0);
  std::stable_sort(result.order.begin(), result.order.end(),
                   [&](int x, int y) { return as[x].size() > as[y].size(); });
  Structure current = b;
  for (int k : result.order) {
    bool found = false;
    for (const Structure& c : candidates) {
      if (c.size() < current.size() || !Embeds(c, current)) continue;
      ArrowResult r = ArrowCheck(c, current, as[k], rs[k], ArrowMode::kDecide,
                                 config);
      if (r.verdict == Verdict::kHolds) {
        current = c;
        result.stages.push_back(c);
        found = true;
        break;
      }
      if (r.verdict == Verdict::kInconclusive) {
        result.note += "budget exhausted on a candidate of size " +
                       std::to_string(c.size()) + "; ";
      }
    }
    if (!found) {
      result.note += "no candidate handles A #" + std::to_string(k) +
                     " against a structure of size " +
                     std::to_string(current.size());
      return result;
    }
  }
  result.verdict = Verdict::kHolds;
  result.witness = current;
  return result;
}

int RamseyDegreeLower(const Structure& a) {
  return ComputeAutomorphismGroup(a).size();
}

DegreeBounds RamseyDegreeUpperProbe(const Structure& a, const Structure& b,
                                    const std::vector<Structure>& candidates,
                                    int d, int max_colors,
                                    const ArrowConfig& config) {
  if (d < 1) throw InputError("degree bound must be at least 1");
  if (max_colors < 1 || max_colors > 64) {
    throw InputError("colour cap must lie in 1..64");
  }
  if (!Embeds(b, a)) throw PreconditionError("A does not embed in B");
  DegreeBounds out;
  out.d = d;
  out.lower = RamseyDegreeLower(a);
  for (int r = d + 1; r <= max_colors; ++r) out.checked_colors.push_back(r);
  if (d < out.lower) {
    out.upper_status = Verdict::kFails;
    out.note = "d is below |Aut(A)| = " + std::to_string(out.lower);
    return out;
  }
  for (const Structure& c : candidates) {
    if (!Embeds(c, b)) continue;
    bool all = true;
    for (int r : out.checked_colors) {
      ArrowResult res =
          JointArrowCheck(c, b, {a}, {r}, {d}, ArrowMode::kDecide, config);
      if (res.verdict != Verdict::kHolds) {
        all = false;
        break;
      }
    }
    if (all) {
      out.upper_status = Verdict::kHolds;
      out.witness = c;
      return out;
    }
  }
  out.note = "no candidate within the class bound";
  return out;
}

std::vector<Term> ParseTermTuple(const Signature& signature,
                                 std::string_view text, int width) {
  std::vector<std::string> vars;
  for (int i = 1; i <= width; ++i) vars.push_back("x" + std::to_string(i));
  std::vector<Term> out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.push_back(ParseTerm(signature, text.substr(start, i - start), vars));
      start = i + 1;
    }
  }
  if (static_cast<int>(out.size()) != width) {
    throw InputError("term tuple needs " + std::to_string(width) + " terms");
  }
  return out;
}

Coloring TermIterationColoring(const Structure& m, std::span<const Element> b,
                               const std::vector<Term>& t) {
  const int w = static_cast<int>(b.size());
  if (static_cast<int>(t.size()) != w) {
    throw PreconditionError("term tuple width differs from the tuple");
  }
  if (!IsInjective(b)) throw PreconditionError("tuple repeats a point");
  auto apply = [&](std::span<const Element> x) {
    Tuple out;
    for (const Term& term : t) out.push_back(EvaluateTerm(m, term, x));
    return out;
  };
  Tuple tb = apply(b);
  if (std::find(tb.begin(), tb.end(), kUndefined) != tb.end()) {
    throw PreconditionError("t(b) is undefined");
  }
  if (std::equal(tb.begin(), tb.end(), b.begin(), b.end())) {
    throw PreconditionError("t(b) = b");
  }
  const std::string key = AtomicDiagramKey(m, b);
  if (AtomicDiagramKey(m, tb) != key) {
    throw PreconditionError("type mismatch between b and t(b)");
  }

  Coloring coloring;
  Tuple x(w, 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == w) {
      if (AtomicDiagramKey(m, x) == key) coloring.copies.push_back(x);
      return;
    }
    for (Element e = 0; e < m.size(); ++e) {
      if (std::find(x.begin(), x.begin() + pos, e) != x.begin() + pos) {
        continue;
      }
      x[pos] = e;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  std::map<Tuple, int> index = IndexOf(coloring.copies);
  const int n = static_cast<int>(coloring.copies.size());
  std::vector<int> next(n, -1), preds(n, 0);
  for (int i = 0; i < n; ++i) {
    Tuple image = apply(coloring.copies[i]);
    auto it = index.find(image);
    if (it == index.end()) continue;
    next[i] = it->second;
    if (++preds[it->second] > 1) {
      throw PreconditionError("t is not injective on the copies of b");
    }
  }
  coloring.colors.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (preds[i] != 0) continue;
    int parity = 0;
    for (int j = i; j >= 0; j = next[j]) {
      coloring.colors[j] = parity;
      parity ^= 1;
    }
  }
  if (std::find(coloring.colors.begin(), coloring.colors.end(), -1) !=
      coloring.colors.end()) {
    throw PreconditionError("periodic orbit under t");
  }
  return coloring;
}

PromotionResult PromoteArrowWitness(const Structure& host,
                                    std::span<const Element> c_points,
                                    const Structure& b,
                                    std::span<const Element> b_prime,
                                    std::span<const Element> a,
                                    const ArrowConfig& config) {
  RequireSameSymbols(host.signature(), b.signature(), "promotion");
  Tuple bp(b_prime.begin(), b_prime.end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  for (Element e : bp) {
    if (!b.InDomain(e)) throw PreconditionError("B' is not inside B");
  }
  if (static_cast<int>(Closure(b, bp).size()) != b.size()) {
    throw PreconditionError("B' does not generate B");
  }
  for (Element e : a) {
    if (!std::binary_search(bp.begin(), bp.end(), e)) {
      throw PreconditionError("A is not inside B'");
    }
  }
  if (EnumerateQfCopiesOf(b, b, a, bp) != EnumerateQfCopies(b, a)) {
    throw PreconditionError("copies of A in B' differ from those in B");
  }
  Tuple a_tuple(a.begin(), a.end());
  PromotionResult out;
  out.subset_arrow = SolveArrowInstance(
      BuildTupleArrowInstance(host, c_points, b, bp, {a_tuple}, {2}, {1}),
      ArrowMode::kDecide, config);
  if (out.subset_arrow.verdict != Verdict::kHolds) {
    throw PreconditionError("C -> (B')^A_2 does not hold");
  }
  Substructure gen = GeneratedSubstructure(host, c_points);
  out.promoted = std::move(gen.structure);
  out.inclusion = std::move(gen.inclusion);
  out.promoted_check = SolveArrowInstance(
      BuildTupleArrowInstance(out.promoted, {}, b, bp, {a_tuple}, {2}, {1}),
      ArrowMode::kRefute, config);
  return out;
}

}  // namespace ramseyqf
