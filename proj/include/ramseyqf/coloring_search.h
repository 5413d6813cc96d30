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

// Search for "bad" colourings of a hypergraph with grouped variables.
//
// Variables are partitioned into groups; group g is coloured with
// `colors` colours and has a cap d_g. Each edge lists, per group, the
// variables it contains. An edge is *refuted* by a colouring when some
// group uses more than d_g colours on it, and a colouring is bad when it
// refutes every edge. With one group and d = 1 this is the complement of a
// partition arrow: a bad colouring has no monochromatic edge.
//
// The exhaustive search branches on the first unfixed variable in index
// order. After every assignment it propagates two rules per edge: an edge
// with no group able to exceed its cap is a conflict, and an edge whose only
// hope is one group already at its cap with one free variable forces that
// variable off the colours used. Colours inside a group are interchangeable,
// so a variable may only take a colour at most one above the largest colour
// on earlier variables of its group. With a single group, permutations of
// the variables that map edges to edges (automorphisms of the host) prune
// partial colourings that are not lexicographic leaders.
//
// An exhaustion is recorded as a preorder string: 'C' for a node closed by
// propagation, 'L<i>' for a node closed by symmetry i, and 'B' followed by
// one subtree per admissible colour of the branching variable.
// CheckExhaustionProof replays it without making any search decision.

#ifndef RAMSEYQF_COLORING_SEARCH_H_
#define RAMSEYQF_COLORING_SEARCH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ramseyqf {

struct ColoringProblem {
  struct Group {
    int colors = 2;
    int cap = 1;
  };
  std::vector<Group> groups;
  std::vector<int> group_of;  // per variable
  // edges[e][g] are the variables of group g on edge e.
  std::vector<std::vector<std::vector<int>>> edges;
  // Variable permutations preserving the edge set; used with one group only.
  std::vector<std::vector<int>> symmetries;

  int num_variables() const { return static_cast<int>(group_of.size()); }
  // Throws InputError on out-of-range data (colours must be in 1..64).
  void Validate() const;
};

bool EdgeRefuted(const ColoringProblem& problem, int edge,
                 std::span<const int> coloring);

// First edge not refuted by `coloring`, or -1 when the colouring is bad.
int FirstUnrefutedEdge(const ColoringProblem& problem,
                       std::span<const int> coloring);

bool IsValidColoring(const ColoringProblem& problem,
                     std::span<const int> coloring);

struct SearchStats {
  int64_t nodes = 0;
  int64_t conflicts = 0;
  int64_t symmetry_prunes = 0;
  int64_t flips = 0;
};

enum class SearchStatus { kBadColoringFound, kExhausted, kBudgetExceeded };

struct DecideOutcome {
  SearchStatus status = SearchStatus::kExhausted;
  std::vector<int> coloring;  // when found
  std::string proof;          // when exhausted
  SearchStats stats;
};

DecideOutcome DecideColoring(const ColoringProblem& problem,
                             int64_t node_budget);

// True iff `proof` is a valid exhaustion for `problem`. On failure `error`
// (if given) says where the replay diverged.
bool CheckExhaustionProof(const ColoringProblem& problem,
                          std::string_view proof, std::string* error = nullptr);

struct LocalSearchOutcome {
  bool found = false;
  std::vector<int> coloring;
  SearchStats stats;
};

// Min-conflicts walk with random restarts, seeded.
LocalSearchOutcome LocalSearchColoring(const ColoringProblem& problem,
                                       uint64_t seed, int64_t max_flips);

// One group with cap 1: variable (x, c) is x * colors + c + 1. Satisfiable
// iff a bad colouring exists.
std::string ToDimacs(const ColoringProblem& problem);

}  // namespace ramseyqf

#endif  // RAMSEYQF_COLORING_SEARCH_H_
