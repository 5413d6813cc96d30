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

// Partition arrows C -> (B)^A_r, their joint and degree variants, and the
// colourings used to refute them.
//
// Two copy semantics are supported. With embeddings, the coloured objects
// are binom(C, A) in lexicographic order and each e in binom(C, B)
// contributes {e o f : f in binom(B, A)}. With tuples, the coloured objects
// are the quantifier-free copies of a tuple a of B inside C, and each copy y
// of the generating tuple b contributes y o pi for every position pattern pi
// with qftp(b o pi) = qftp(a).

#ifndef RAMSEYQF_ARROWS_H_
#define RAMSEYQF_ARROWS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramseyqf/coloring_search.h"
#include "ramseyqf/embedding.h"
#include "ramseyqf/formula.h"
#include "ramseyqf/structure.h"

namespace ramseyqf {

enum class Verdict { kHolds, kFails, kInconclusive };
std::string_view VerdictName(Verdict v);
Verdict ParseVerdict(std::string_view name);

enum class ArrowMode { kDecide, kRefute, kSample };
std::string_view ArrowModeName(ArrowMode m);
ArrowMode ParseArrowMode(std::string_view name);

// RAMSEYQF_BUDGET from the environment, else 10^7.
int64_t DefaultNodeBudget();

struct ArrowConfig {
  int64_t node_budget = DefaultNodeBudget();
  uint64_t seed = 0;
  int samples = 1000;          // sample mode
  int64_t max_flips = 200000;  // refute mode
};

// The copies of one arrow instance and the colouring problem over them.
struct ArrowInstance {
  // copies[g] lists the coloured objects of group g as points of C (the map
  // of an embedding, or a tuple).
  std::vector<std::vector<Tuple>> copies;
  std::vector<Tuple> b_copies;
  std::vector<int> offset;  // variable of copies[g][i] is offset[g] + i
  ColoringProblem problem;
};

// Embedding semantics; one group per A_i with colours rs[i] and cap ds[i].
// Throws InputError when the lists disagree in length or r < 1.
ArrowInstance BuildArrowInstance(const Structure& c, const Structure& b,
                                 const std::vector<Structure>& as,
                                 const std::vector<int>& rs,
                                 const std::vector<int>& ds);

// Tuple semantics inside `host`, restricted to the points `allowed` (all
// points when empty). `b_tuple` lists points of `ref`; each a_i lists
// points among them.
ArrowInstance BuildTupleArrowInstance(const Structure& host,
                                      std::span<const Element> allowed,
                                      const Structure& ref,
                                      std::span<const Element> b_tuple,
                                      const std::vector<Tuple>& a_tuples,
                                      const std::vector<int>& rs,
                                      const std::vector<int>& ds);

struct ArrowResult {
  Verdict verdict = Verdict::kInconclusive;
  ArrowMode mode = ArrowMode::kDecide;
  ArrowConfig config;
  std::vector<int> coloring;  // FAILS: a bad colouring, per variable
  std::string proof;          // decide-mode HOLDS: exhaustion proof
  SearchStats stats;
  // Sample mode: the first witnessing B-copy of each sampled colouring.
  std::vector<int> sample_witnesses;
  int samples_witnessed = 0;
};

// Decide: complete search, HOLDS or FAILS unless the budget runs out.
// Refute: local search for a bad colouring, FAILS or INCONCLUSIVE.
// Sample: seeded uniform colourings; FAILS if one is bad, otherwise
// INCONCLUSIVE with every sample's witness recorded.
ArrowResult SolveArrowInstance(const ArrowInstance& instance, ArrowMode mode,
                               const ArrowConfig& config);

ArrowResult ArrowCheck(const Structure& c, const Structure& b,
                       const Structure& a, int r, ArrowMode mode,
                       const ArrowConfig& config = {});

ArrowResult JointArrowCheck(const Structure& c, const Structure& b,
                            const std::vector<Structure>& as,
                            const std::vector<int>& rs,
                            const std::vector<int>& ds, ArrowMode mode,
                            const ArrowConfig& config = {});

// The colourings sample mode draws, in order: sample k colours variable v
// with rng() % colors after the previous samples, rng = mt19937_64(seed).
std::vector<std::vector<int>> SampleColorings(const ColoringProblem& problem,
                                              uint64_t seed, int samples);

// Independent re-check of a FAILS certificate.
bool VerifyBadColoring(const ArrowInstance& instance,
                       std::span<const int> coloring);

// chi colours binom(C, A) in lexicographic order. Returns a B-copy on which
// chi is constant, the lexicographically first one.
std::optional<Embedding> FindMonochromaticCopy(const Structure& c,
                                               const Structure& b,
                                               const Structure& a,
                                               std::span<const int> chi);

// Bad-colouring instance in DIMACS CNF (single A).
std::string ArrowToDimacs(const ArrowInstance& instance);

struct JointWitnessResult {
  Verdict verdict = Verdict::kInconclusive;  // HOLDS when a witness is built
  std::optional<Structure> witness;
  // stage k: the structure handling the k-th A in processing order.
  std::vector<Structure> stages;
  std::vector<int> order;  // indices into As, innermost first
  std::string note;
};

// Composes single-arrow witnesses from `candidates` (increasing size). The
// innermost stage handles the largest A: C_0 -> (B)^{A}, then
// C_{k+1} -> (C_k)^{A'}. Each stage takes the first candidate that decides
// HOLDS.
JointWitnessResult BuildJointWitness(const std::vector<Structure>& candidates,
                                     const Structure& b,
                                     const std::vector<Structure>& as,
                                     const std::vector<int>& rs,
                                     const ArrowConfig& config = {});

int RamseyDegreeLower(const Structure& a);

struct DegreeBounds {
  int lower = 1;
  // HOLDS: `witness` satisfies the d-bounded arrow for every r in
  // checked_colors. FAILS: d is below the lower bound. INCONCLUSIVE: no
  // candidate worked.
  Verdict upper_status = Verdict::kInconclusive;
  int d = 1;
  std::optional<Structure> witness;
  std::vector<int> checked_colors;
  std::string note;
};

DegreeBounds RamseyDegreeUpperProbe(const Structure& a, const Structure& b,
                                    const std::vector<Structure>& candidates,
                                    int d, int max_colors,
                                    const ArrowConfig& config = {});

struct Coloring {
  std::vector<Tuple> copies;
  std::vector<int> colors;
  int r = 2;
};

// Colours the copies of b (same atomic diagram, injective) by the parity
// of their distance from the start of their t-chain. `t` has one term per
// entry of b, over variables x1..xw. Throws PreconditionError when t(b) is
// undefined, equals b or has a different atomic diagram, when two copies
// share a t-image, or when some copy lies on a periodic orbit.
Coloring TermIterationColoring(const Structure& m, std::span<const Element> b,
                               const std::vector<Term>& t);

// Parses "t1, ..., tw" over variables x1..xw.
std::vector<Term> ParseTermTuple(const Signature& signature,
                                 std::string_view text, int width);

struct PromotionResult {
  Structure promoted;   // <C> inside the host
  Embedding inclusion;  // promoted -> host
  ArrowResult subset_arrow;    // C -> (B')^A_2, decide mode
  ArrowResult promoted_check;  // <C> -> (B)^A_2, refute mode
};

// `c_points` is a finite subset C of `host`; `b_prime` is a subset of the
// domain of `b` generating b; `a` lists points of b_prime. Verifies the
// preconditions (b_prime generates b, the copies of a in b lie in b_prime,
// C -> (B')^A_2 holds) and throws PreconditionError if one fails.
PromotionResult PromoteArrowWitness(const Structure& host,
                                    std::span<const Element> c_points,
                                    const Structure& b,
                                    std::span<const Element> b_prime,
                                    std::span<const Element> a,
                                    const ArrowConfig& config = {});

}  // namespace ramseyqf

#endif  // RAMSEYQF_ARROWS_H_
