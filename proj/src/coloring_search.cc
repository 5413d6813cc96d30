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

#include "ramseyqf/coloring_search.h"

#include <algorithm>
#include <bit>
#include <random>

#include "ramseyqf/error.h"

namespace ramseyqf {

namespace {

using Mask = uint64_t;

bool Fixed(Mask m) { return std::has_single_bit(m); }
int ColorOf(Mask m) { return std::countr_zero(m); }
Mask FullMask(int colors) {
  return colors >= 64 ? ~Mask{0} : (Mask{1} << colors) - 1;
}

class Engine {
 public:
  explicit Engine(const ColoringProblem& p)
      : p_(p), var_edges_(p.num_variables()) {
    for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
      for (const auto& vars : p.edges[e]) {
        for (int v : vars) var_edges_[v].push_back(e);
      }
    }
    for (auto& list : var_edges_) {
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    use_symmetry_ = p.groups.size() == 1;
  }

  std::vector<Mask> InitialDomains() const {
    std::vector<Mask> dom(p_.num_variables());
    for (int v = 0; v < p_.num_variables(); ++v) {
      dom[v] = FullMask(p_.groups[p_.group_of[v]].colors);
    }
    return dom;
  }

  std::vector<int> AllEdges() const {
    std::vector<int> all(p_.edges.size());
    for (int e = 0; e < static_cast<int>(all.size()); ++e) all[e] = e;
    return all;
  }

  const std::vector<int>& EdgesOf(int v) const { return var_edges_[v]; }

  // False on conflict.
  bool Propagate(std::vector<Mask>& dom, std::vector<int> queue) const {
    std::vector<char> queued(p_.edges.size(), 0);
    for (int e : queue) queued[e] = 1;
    while (!queue.empty()) {
      int e = queue.back();
      queue.pop_back();
      queued[e] = 0;
      int refutable = 0;
      int force_var = -1;
      Mask force_used = 0;
      bool refuted = false;
      for (int g = 0; g < static_cast<int>(p_.edges[e].size()); ++g) {
        const int cap = p_.groups[g].cap;
        Mask used = 0, open = 0;
        int free_count = 0, free_var = -1;
        for (int v : p_.edges[e][g]) {
          if (Fixed(dom[v])) {
            used |= dom[v];
          } else {
            open |= dom[v];
            ++free_count;
            free_var = v;
          }
        }
        const int u = std::popcount(used);
        if (u > cap) {
          refuted = true;
          break;
        }
        const int ub = std::min(u + free_count, std::popcount(used | open));
        if (ub > cap) {
          ++refutable;
          if (free_count == 1 && u == cap) {
            force_var = free_var;
            force_used = used;
          } else {
            force_var = -1;
          }
        }
      }
      if (refuted) continue;
      if (refutable == 0) return false;
      if (refutable == 1 && force_var >= 0) {
        Mask next = dom[force_var] & ~force_used;
        if (next == 0) return false;
        if (next != dom[force_var]) {
          dom[force_var] = next;
          for (int f : var_edges_[force_var]) {
            if (!queued[f]) {
              queued[f] = 1;
              queue.push_back(f);
            }
          }
        }
      }
    }
    return true;
  }

  bool AllRefuted(const std::vector<Mask>& dom) const {
    for (int e = 0; e < static_cast<int>(p_.edges.size()); ++e) {
      bool refuted = false;
      for (int g = 0; g < static_cast<int>(p_.edges[e].size()) && !refuted;
           ++g) {
        Mask used = 0;
        for (int v : p_.edges[e][g]) {
          if (Fixed(dom[v])) used |= dom[v];
        }
        refuted = std::popcount(used) > p_.groups[g].cap;
      }
      if (!refuted) return false;
    }
    return true;
  }

  // Does symmetry s show that the determined prefix is not a leader?
  bool SymmetryPrunes(const std::vector<Mask>& dom, int s) const {
    const std::vector<int>& perm = p_.symmetries[s];
    std::vector<int> relabel(64, -1);
    int next_label = 0;
    for (int x = 0; x < p_.num_variables(); ++x) {
      if (!Fixed(dom[x]) || !Fixed(dom[perm[x]])) return false;
      int raw = ColorOf(dom[perm[x]]);
      if (relabel[raw] < 0) relabel[raw] = next_label++;
      int mine = ColorOf(dom[x]);
      if (relabel[raw] < mine) return true;
      if (relabel[raw] > mine) return false;
    }
    return false;
  }

  int FirstPruningSymmetry(const std::vector<Mask>& dom) const {
    if (!use_symmetry_) return -1;
    for (int s = 0; s < static_cast<int>(p_.symmetries.size()); ++s) {
      if (SymmetryPrunes(dom, s)) return s;
    }
    return -1;
  }

  int BranchVariable(const std::vector<Mask>& dom) const {
    for (int v = 0; v < p_.num_variables(); ++v) {
      if (!Fixed(dom[v])) return v;
    }
    return -1;
  }

  // Colours of v allowed by value symmetry.
  Mask Admissible(const std::vector<Mask>& dom, int v) const {
    const int g = p_.group_of[v];
    int top = -1;
    for (int x = 0; x < v; ++x) {
      if (p_.group_of[x] == g) top = std::max(top, ColorOf(dom[x]));
    }
    return dom[v] & FullMask(top + 2);
  }

  std::vector<int> Complete(const std::vector<Mask>& dom) const {
    std::vector<int> out(dom.size());
    for (size_t v = 0; v < dom.size(); ++v) out[v] = ColorOf(dom[v]);
    return out;
  }

 private:
  const ColoringProblem& p_;
  std::vector<std::vector<int>> var_edges_;
  bool use_symmetry_ = false;
};

struct BudgetExceeded {};

class Searcher {
 public:
  Searcher(const ColoringProblem& p, int64_t budget)
      : engine_(p), budget_(budget) {}

  DecideOutcome Run() {
    DecideOutcome out;
    try {
      std::vector<Mask> dom = engine_.InitialDomains();
      if (Search(dom, engine_.AllEdges())) {
        out.status = SearchStatus::kBadColoringFound;
        out.coloring = std::move(found_);
      } else {
        out.status = SearchStatus::kExhausted;
        out.proof = std::move(proof_);
      }
    } catch (const BudgetExceeded&) {
      out.status = SearchStatus::kBudgetExceeded;
    }
    out.stats = stats_;
    return out;
  }

 private:
  bool Search(std::vector<Mask>& dom, std::vector<int> touched) {
    if (++stats_.nodes > budget_) throw BudgetExceeded{};
    if (!engine_.Propagate(dom, std::move(touched))) {
      ++stats_.conflicts;
      proof_ += 'C';
      return false;
    }
    if (engine_.AllRefuted(dom)) {
      for (Mask& m : dom) m &= ~(m - 1);  // lowest colour left
      found_ = engine_.Complete(dom);
      return true;
    }
    int s = engine_.FirstPruningSymmetry(dom);
    if (s >= 0) {
      ++stats_.symmetry_prunes;
      proof_ += 'L';
      proof_ += std::to_string(s);
      return false;
    }
    int v = engine_.BranchVariable(dom);
    Mask allowed = engine_.Admissible(dom, v);
    proof_ += 'B';
    for (Mask rest = allowed; rest != 0; rest &= rest - 1) {
      std::vector<Mask> child = dom;
      child[v] = rest & ~(rest - 1);
      if (Search(child, engine_.EdgesOf(v))) return true;
    }
    return false;
  }

  Engine engine_;
  int64_t budget_;
  SearchStats stats_;
  std::string proof_;
  std::vector<int> found_;
};

class ProofChecker {
 public:
  ProofChecker(const ColoringProblem& p, std::string_view proof)
      : p_(p), engine_(p), proof_(proof) {}

  bool Run(std::string* error) {
    std::vector<Mask> dom = engine_.InitialDomains();
    bool ok = Check(dom, engine_.AllEdges());
    if (ok && pos_ != proof_.size()) {
      ok = false;
      error_ = "trailing proof data";
    }
    if (!ok && error != nullptr) {
      *error = error_ + " at proof offset " + std::to_string(pos_);
    }
    return ok;
  }

 private:
  bool Fail(const char* what) {
    error_ = what;
    return false;
  }

  bool Check(std::vector<Mask>& dom, std::vector<int> touched) {
    if (pos_ >= proof_.size()) return Fail("proof ends early");
    const char token = proof_[pos_++];
    const bool consistent = engine_.Propagate(dom, std::move(touched));
    if (token == 'C') return consistent ? Fail("claimed conflict is not one")
                                        : true;
    if (!consistent) return Fail("unrecorded conflict");
    if (engine_.AllRefuted(dom)) return Fail("node admits a bad colouring");
    if (token == 'L') {
      size_t end = pos_;
      while (end < proof_.size() && proof_[end] >= '0' && proof_[end] <= '9') {
        ++end;
      }
      if (end == pos_) return Fail("symmetry index missing");
      size_t s = std::stoul(std::string(proof_.substr(pos_, end - pos_)));
      pos_ = end;
      if (p_.groups.size() != 1 || s >= p_.symmetries.size()) {
        return Fail("symmetry index out of range");
      }
      return engine_.SymmetryPrunes(dom, static_cast<int>(s))
                 ? true
                 : Fail("symmetry does not prune");
    }
    if (token != 'B') return Fail("unknown proof token");
    int v = engine_.BranchVariable(dom);
    if (v < 0) return Fail("branch on a complete colouring");
    Mask allowed = engine_.Admissible(dom, v);
    for (Mask rest = allowed; rest != 0; rest &= rest - 1) {
      std::vector<Mask> child = dom;
      child[v] = rest & ~(rest - 1);
      if (!Check(child, engine_.EdgesOf(v))) return false;
    }
    return true;
  }

  const ColoringProblem& p_;
  Engine engine_;
  std::string_view proof_;
  size_t pos_ = 0;
  std::string error_;
};

}  // namespace

void ColoringProblem::Validate() const {
  for (const Group& g : groups) {
    if (g.colors < 1 || g.colors > 64) {
      throw InputError("colour count must lie in 1..64");
    }
    if (g.cap < 1) throw InputError("degree cap must be at least 1");
  }
  for (int g : group_of) {
    if (g < 0 || g >= static_cast<int>(groups.size())) {
      throw InputError("variable group out of range");
    }
  }
  for (const auto& edge : edges) {
    if (edge.size() != groups.size()) {
      throw InputError("edge does not list every group");
    }
    for (size_t g = 0; g < edge.size(); ++g) {
      for (int v : edge[g]) {
        if (v < 0 || v >= num_variables() ||
            group_of[v] != static_cast<int>(g)) {
          throw InputError("edge variable out of range");
        }
      }
    }
  }
  for (const auto& perm : symmetries) {
    if (static_cast<int>(perm.size()) != num_variables()) {
      throw InputError("symmetry has the wrong length");
    }
  }
}

bool EdgeRefuted(const ColoringProblem& problem, int edge,
                 std::span<const int> coloring) {
  for (size_t g = 0; g < problem.edges[edge].size(); ++g) {
    Mask used = 0;
    for (int v : problem.edges[edge][g]) used |= Mask{1} << coloring[v];
    if (std::popcount(used) > problem.groups[g].cap) return true;
  }
  return false;
}

int FirstUnrefutedEdge(const ColoringProblem& problem,
                       std::span<const int> coloring) {
  for (int e = 0; e < static_cast<int>(problem.edges.size()); ++e) {
    if (!EdgeRefuted(problem, e, coloring)) return e;
  }
  return -1;
}

bool IsValidColoring(const ColoringProblem& problem,
                     std::span<const int> coloring) {
  if (static_cast<int>(coloring.size()) != problem.num_variables()) {
    return false;
  }
  for (int v = 0; v < problem.num_variables(); ++v) {
    if (coloring[v] < 0 ||
        coloring[v] >= problem.groups[problem.group_of[v]].colors) {
      return false;
    }
  }
  return true;
}

DecideOutcome DecideColoring(const ColoringProblem& problem,
                             int64_t node_budget) {
  problem.Validate();
  return Searcher(problem, node_budget).Run();
}

bool CheckExhaustionProof(const ColoringProblem& problem,
                          std::string_view proof, std::string* error) {
  problem.Validate();
  return ProofChecker(problem, proof).Run(error);
}

LocalSearchOutcome LocalSearchColoring(const ColoringProblem& problem,
                                       uint64_t seed, int64_t max_flips) {
  problem.Validate();
  LocalSearchOutcome out;
  const int n = problem.num_variables();
  const int num_edges = static_cast<int>(problem.edges.size());
  std::mt19937_64 rng(seed);
  std::vector<int> coloring(n);
  for (int v = 0; v < n; ++v) {
    coloring[v] = static_cast<int>(
        rng() % problem.groups[problem.group_of[v]].colors);
  }
  std::vector<std::vector<int>> var_edges(n);
  for (int e = 0; e < num_edges; ++e) {
    for (const auto& vars : problem.edges[e]) {
      for (int v : vars) var_edges[v].push_back(e);
    }
  }
  std::vector<int> open;                // unrefuted edges
  std::vector<int> where(num_edges, -1);  // position in `open`
  auto update = [&](int e) {
    bool refuted = EdgeRefuted(problem, e, coloring);
    if (refuted && where[e] >= 0) {
      int last = open.back();
      open[where[e]] = last;
      where[last] = where[e];
      open.pop_back();
      where[e] = -1;
    } else if (!refuted && where[e] < 0) {
      where[e] = static_cast<int>(open.size());
      open.push_back(e);
    }
  };
  for (int e = 0; e < num_edges; ++e) update(e);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> members;
  while (true) {
    if (open.empty()) {
      out.found = true;
      out.coloring = coloring;
      break;
    }
    if (out.stats.flips >= max_flips) break;
    ++out.stats.flips;
    const int e = open[rng() % open.size()];
    members.clear();
    for (const auto& vars : problem.edges[e]) {
      members.insert(members.end(), vars.begin(), vars.end());
    }
    if (members.empty()) break;  // an edge nothing can refute
    const int v = members[rng() % members.size()];
    const int colors = problem.groups[problem.group_of[v]].colors;
    if (colors == 1) continue;
    const int old = coloring[v];
    int best = old;
    if (unit(rng) < 0.2) {
      best = static_cast<int>(rng() % (colors - 1));
      if (best >= old) ++best;
    } else {
      int best_score = -1;
      int ties = 0;
      for (int c = 0; c < colors; ++c) {
        if (c == old) continue;
        coloring[v] = c;
        int score = 0;
        for (int f : var_edges[v]) {
          if (!EdgeRefuted(problem, f, coloring)) ++score;
        }
        if (best_score < 0 || score < best_score) {
          best_score = score;
          best = c;
          ties = 1;
        } else if (score == best_score && rng() % ++ties == 0) {
          best = c;
        }
      }
    }
    coloring[v] = best;
    for (int f : var_edges[v]) update(f);
  }
  return out;
}

std::string ToDimacs(const ColoringProblem& problem) {
  problem.Validate();
  if (problem.groups.size() != 1 || problem.groups[0].cap != 1) {
    throw InputError("DIMACS export needs one colour group with cap 1");
  }
  const int r = problem.groups[0].colors;
  const int n = problem.num_variables();
  auto var = [&](int x, int c) { return x * r + c + 1; };
  std::vector<std::string> clauses;
  for (int x = 0; x < n; ++x) {
    std::string alo;
    for (int c = 0; c < r; ++c) alo += std::to_string(var(x, c)) + " ";
    clauses.push_back(alo + "0");
    for (int c = 0; c < r; ++c) {
      for (int d = c + 1; d < r; ++d) {
        clauses.push_back("-" + std::to_string(var(x, c)) + " -" +
                          std::to_string(var(x, d)) + " 0");
      }
    }
  }
  for (const auto& edge : problem.edges) {
    for (int c = 0; c < r; ++c) {
      std::string clause;
      for (int x : edge[0]) clause += "-" + std::to_string(var(x, c)) + " ";
      clauses.push_back(clause + "0");
    }
  }
  std::string out = "c ramseyqf bad-colouring instance: satisfiable iff the "
                    "arrow fails\n";
  out += "p cnf " + std::to_string(n * r) + " " +
         std::to_string(clauses.size()) + "\n";
  for (const std::string& c : clauses) out += c + "\n";
  return out;
}

}  // namespace ramseyqf
