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

#include "ramseyqf/indiscernibles.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "ramseyqf/canonical.h"
#include "ramseyqf/error.h"

namespace ramseyqf {

namespace {

constexpr int64_t kMaxIndexTuples = 5'000'000;

std::string Show(std::span<const Element> t) {
  std::string s = "(";
  for (size_t k = 0; k < t.size(); ++k) {
    if (k > 0) s += ',';
    s += std::to_string(t[k]);
  }
  return s + ")";
}

// Calls visit(positions) for every tuple in [0, p)^k, lexicographically.
template <typename Visit>
void ForEachAssignment(int p, int k, Visit visit) {
  if (k > 0 && p == 0) return;
  Tuple pos(k, 0);
  while (true) {
    visit(pos);
    int d = k - 1;
    while (d >= 0 && ++pos[d] == p) pos[d--] = 0;
    if (d < 0) return;
  }
}

bool EvaluateAt(const Formula& f, const Structure& m,
                std::span<const Element> tuple, const Tuple& positions,
                Tuple& args) {
  args.resize(positions.size());
  for (size_t k = 0; k < positions.size(); ++k) args[k] = tuple[positions[k]];
  return f.Evaluate(m, args);
}

// The first formula instance on which the two tuples differ.
std::pair<int, Tuple> FirstDifference(const Structure& m,
                                      const FormulaSet& delta,
                                      std::span<const Element> x,
                                      std::span<const Element> y) {
  if (delta.all_types) return {-1, {}};
  Tuple args;
  for (int f = 0; f < static_cast<int>(delta.formulas.size()); ++f) {
    const Formula& phi = delta.formulas[f];
    std::optional<Tuple> found;
    ForEachAssignment(static_cast<int>(x.size()), phi.arity(),
                      [&](const Tuple& pos) {
                        if (found) return;
                        if (EvaluateAt(phi, m, x, pos, args) !=
                            EvaluateAt(phi, m, y, pos, args)) {
                          found = pos;
                        }
                      });
    if (found) return {f, *found};
  }
  return {-1, {}};
}

void RequireSameTarget(const IndexedSequence& j, const IndexedSequence& i) {
  if (j.width != i.width) throw PreconditionError("sequence widths differ");
  if (!(j.target == i.target)) {
    throw PreconditionError("sequences have different target structures");
  }
  RequireSameSymbols(j.index.signature(), i.index.signature(),
                     "local basis check");
}

}  // namespace

void IndexedSequence::Validate() const {
  if (width < 1) throw InputError("sequence width must be at least 1");
  if (static_cast<int>(tuples.size()) != index.size()) {
    throw InputError("sequence has " + std::to_string(tuples.size()) +
                     " tuples for an index of size " +
                     std::to_string(index.size()));
  }
  for (size_t i = 0; i < tuples.size(); ++i) {
    if (static_cast<int>(tuples[i].size()) != width) {
      throw InputError("tuple at index " + std::to_string(i) +
                       " does not have width " + std::to_string(width));
    }
    for (Element e : tuples[i]) {
      if (!target.InDomain(e)) {
        throw InputError("tuple at index " + std::to_string(i) +
                         " leaves the target domain");
      }
    }
  }
}

Tuple IndexedSequence::Concat(std::span<const Element> index_tuple) const {
  Tuple out;
  out.reserve(index_tuple.size() * width);
  for (Element i : index_tuple) {
    if (!index.InDomain(i)) {
      throw PreconditionError("index " + std::to_string(i) +
                              " outside the index domain");
    }
    out.insert(out.end(), tuples[i].begin(), tuples[i].end());
  }
  return out;
}

IndexedSequence Reindex(const IndexedSequence& seq, const Structure& sub,
                        const Embedding& g) {
  if (g.size() != sub.size()) {
    throw PreconditionError("embedding does not match the sub-index");
  }
  IndexedSequence out{sub, seq.target, seq.width, {}};
  out.tuples.reserve(g.size());
  for (Element x : g.map) {
    if (!seq.index.InDomain(x)) {
      throw PreconditionError("embedding leaves the index domain");
    }
    out.tuples.push_back(seq.tuples[x]);
  }
  return out;
}

std::vector<Tuple> IndexTuples(int n, int min_len, int max_len) {
  std::vector<Tuple> out;
  int64_t total = 0;
  for (int len = std::max(min_len, 0); len <= max_len; ++len) {
    int64_t count = 1;
    for (int k = 0; k < len && count <= kMaxIndexTuples; ++k) count *= n;
    total += count;
    if (total > kMaxIndexTuples) {
      throw InputError("too many index tuples; lower the arity cap");
    }
  }
  out.reserve(total);
  for (int len = std::max(min_len, 0); len <= max_len; ++len) {
    ForEachAssignment(n, len, [&](const Tuple& t) { out.push_back(t); });
  }
  return out;
}

std::string DeltaTypeKey(const Structure& m, const FormulaSet& delta,
                         std::span<const Element> tuple) {
  if (delta.all_types) return PointedCanonicalKey(m, tuple);
  std::string key;
  Tuple args;
  for (const Formula& phi : delta.formulas) {
    ForEachAssignment(static_cast<int>(tuple.size()), phi.arity(),
                      [&](const Tuple& pos) {
                        key += EvaluateAt(phi, m, tuple, pos, args) ? '1'
                                                                    : '0';
                      });
    key += ';';
  }
  return key;
}

IndiscernibilityReport IsIndiscernible(const IndexedSequence& seq,
                                       const FormulaSet& delta, int cap,
                                       int max_violations) {
  seq.Validate();
  IndiscernibilityReport report;
  report.cap = cap;
  struct Rep {
    Tuple tuple;
    std::string delta_key;
  };
  std::unordered_map<std::string, Rep> reps;
  for (const Tuple& t : IndexTuples(seq.index.size(), 1, cap)) {
    ++report.index_tuples;
    std::string q = ComputeQfType(seq.index, t).key();
    std::string d = DeltaTypeKey(seq.target, delta, seq.Concat(t));
    auto [it, inserted] = reps.try_emplace(std::move(q), Rep{t, d});
    if (inserted || it->second.delta_key == d) continue;
    report.indiscernible = false;
    ++report.violation_count;
    if (static_cast<int>(report.violations.size()) < max_violations) {
      auto [f, pos] = FirstDifference(seq.target, delta,
                                      seq.Concat(it->second.tuple),
                                      seq.Concat(t));
      report.violations.push_back({it->second.tuple, t, f, pos});
    }
  }
  return report;
}

LocalBasisReport CheckLocallyBased(const IndexedSequence& j,
                                   const IndexedSequence& i,
                                   const FormulaSet& delta, int cap) {
  j.Validate();
  i.Validate();
  RequireSameTarget(j, i);
  LocalBasisReport report;
  report.cap = cap;
  std::vector<Tuple> j_tuples = IndexTuples(j.index.size(), 1, cap);
  std::vector<std::string> j_q, j_d;
  for (const Tuple& t : j_tuples) {
    j_q.push_back(ComputeQfType(j.index, t).key());
    j_d.push_back(DeltaTypeKey(j.target, delta, j.Concat(t)));
  }

  std::map<std::pair<std::string, std::string>, Tuple> table;
  bool table_built = false;
  auto build_table = [&] {
    std::set<std::string> needed(j_q.begin(), j_q.end());
    for (const Tuple& s : IndexTuples(i.index.size(), 1, cap)) {
      std::string q = ComputeQfType(i.index, s).key();
      if (!needed.contains(q)) continue;
      std::string d = DeltaTypeKey(i.target, delta, i.Concat(s));
      table.try_emplace({std::move(q), std::move(d)}, s);
    }
    table_built = true;
  };

  for (size_t k = 0; k < j_tuples.size(); ++k) {
    const Tuple& t = j_tuples[k];
    bool self = std::all_of(t.begin(), t.end(),
                            [&](Element x) { return i.index.InDomain(x); }) &&
                ComputeQfType(i.index, t).key() == j_q[k] &&
                DeltaTypeKey(i.target, delta, i.Concat(t)) == j_d[k];
    if (self) {
      report.witnesses.push_back({t, t});
      continue;
    }
    if (!table_built) build_table();
    auto it = table.find({j_q[k], j_d[k]});
    if (it == table.end()) {
      report.based = false;
      report.unmatched = t;
      return report;
    }
    report.witnesses.push_back({t, it->second});
  }
  return report;
}

IndConstraintSet IndConstraints(const Structure& index,
                                const FormulaSet& delta, int cap, int width) {
  if (delta.all_types) {
    throw PreconditionError("constraints need an explicit formula list");
  }
  if (width < 1) throw PreconditionError("width must be at least 1");
  IndConstraintSet out;
  out.cap = cap;
  out.width = width;
  std::map<int, std::vector<std::vector<Tuple>>> groups_by_len;
  auto groups_of_length = [&](int len) -> const std::vector<std::vector<Tuple>>& {
    auto it = groups_by_len.find(len);
    if (it != groups_by_len.end()) return it->second;
    std::vector<std::vector<Tuple>> groups;
    std::unordered_map<std::string, int> id;
    std::vector<Tuple> tuples = IndexTuples(index.size(), len, len);
    for (const Tuple& t : tuples) {
      auto [g, inserted] = id.try_emplace(ComputeQfType(index, t).key(),
                                          static_cast<int>(groups.size()));
      if (inserted) groups.emplace_back();
      groups[g->second].push_back(t);
    }
    return groups_by_len.emplace(len, std::move(groups)).first->second;
  };

  for (int f = 0; f < static_cast<int>(delta.formulas.size()); ++f) {
    int arity = delta.formulas[f].arity();
    if (arity % width != 0) {
      throw PreconditionError("formula " + std::to_string(f) + " has arity " +
                              std::to_string(arity) +
                              ", not a multiple of the width");
    }
    int len = arity / width;
    if (len > cap) {
      out.skipped_formulas.push_back(f);
      continue;
    }
    // Emit in order of the first tuple, which is the order of IndexTuples.
    std::vector<std::pair<Tuple, const std::vector<Tuple>*>> firsts;
    for (const std::vector<Tuple>& g : groups_of_length(len)) {
      for (const Tuple& t : g) firsts.push_back({t, &g});
    }
    std::sort(firsts.begin(), firsts.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [s, group] : firsts) {
      for (const Tuple& t : *group) out.constraints.push_back({s, t, f});
    }
  }
  return out;
}

FiniteSatResult FiniteSatisfiabilityCheck(std::span<const IndConstraint> gamma,
                                          const FormulaSet& delta,
                                          std::span<const Element> a,
                                          const IndexedSequence& seq) {
  seq.Validate();
  FiniteSatResult result;
  result.a.assign(a.begin(), a.end());
  std::sort(result.a.begin(), result.a.end());
  result.a.erase(std::unique(result.a.begin(), result.a.end()),
                 result.a.end());
  std::vector<int> position(seq.index.size(), -1);
  for (size_t k = 0; k < result.a.size(); ++k) {
    if (!seq.index.InDomain(result.a[k])) {
      throw PreconditionError("A is not a subset of the index domain");
    }
    position[result.a[k]] = static_cast<int>(k);
  }

  std::vector<int> relevant;
  for (int c = 0; c < static_cast<int>(gamma.size()); ++c) {
    const IndConstraint& con = gamma[c];
    if (con.formula < 0 ||
        con.formula >= static_cast<int>(delta.formulas.size())) {
      throw PreconditionError("constraint names an unknown formula");
    }
    int arity = delta.formulas[con.formula].arity();
    if (static_cast<int>(con.i.size()) * seq.width != arity ||
        con.i.size() != con.j.size()) {
      throw PreconditionError("constraint length does not match its formula");
    }
    auto inside = [&](const Tuple& t) {
      return std::all_of(t.begin(), t.end(), [&](Element x) {
        return seq.index.InDomain(x) && position[x] >= 0;
      });
    };
    if (inside(con.i) && inside(con.j)) relevant.push_back(c);
  }

  std::vector<Tuple> relocations{result.a};
  if (!result.a.empty()) {
    for (Tuple& b : EnumerateQfCopiesOf(seq.index, seq.index, result.a)) {
      if (b != result.a) relocations.push_back(std::move(b));
    }
  }
  auto image = [&](const Tuple& b, const Tuple& t) {
    Tuple out;
    for (Element x : t) out.push_back(b[position[x]]);
    return seq.Concat(out);
  };
  for (const Tuple& b : relocations) {
    ++result.relocations;
    int violated = -1;
    for (int c : relevant) {
      const IndConstraint& con = gamma[c];
      const Formula& phi = delta.formulas[con.formula];
      if (phi.Evaluate(seq.target, image(b, con.i)) &&
          !phi.Evaluate(seq.target, image(b, con.j))) {
        violated = c;
        break;
      }
    }
    if (violated < 0) {
      result.satisfiable = true;
      result.b = b;
      result.refutations.clear();
      return result;
    }
    result.refutations.push_back({b, violated});
  }
  return result;
}

ExtractionResult ExtractIndiscerniblePattern(const IndexedSequence& seq,
                                             const Structure& target,
                                             const FormulaSet& delta,
                                             int cap) {
  seq.Validate();
  RequireSameSymbols(seq.index.signature(), target.signature(),
                     "pattern extraction");
  if (!Embeds(seq.index, target)) {
    throw PreconditionError("the pattern index does not embed in the index");
  }
  ExtractionResult result;
  result.cap = cap < 0 ? target.size() : cap;

  std::vector<Tuple> tuples = IndexTuples(target.size(), 1, result.cap);
  std::vector<std::vector<int>> classes;
  {
    std::unordered_map<std::string, int> id;
    for (int k = 0; k < static_cast<int>(tuples.size()); ++k) {
      auto [it, inserted] = id.try_emplace(
          ComputeQfType(target, tuples[k]).key(),
          static_cast<int>(classes.size()));
      if (inserted) classes.emplace_back();
      classes[it->second].push_back(k);
    }
  }
  result.classes = static_cast<int>(classes.size());

  std::map<Tuple, std::string> colour;
  auto colour_of = [&](const Tuple& t) -> const std::string& {
    auto it = colour.find(t);
    if (it == colour.end()) {
      it = colour
               .emplace(t, DeltaTypeKey(seq.target, delta, seq.Concat(t)))
               .first;
    }
    return it->second;
  };

  Tuple mapped;
  ForEachEmbedding(seq.index, target, [&](const std::vector<Element>& g) {
    ++result.candidates;
    auto image = [&](const Tuple& t) {
      mapped.resize(t.size());
      for (size_t k = 0; k < t.size(); ++k) mapped[k] = g[t[k]];
      return mapped;
    };
    for (const std::vector<int>& cls : classes) {
      std::string first = colour_of(image(tuples[cls[0]]));
      for (size_t k = 1; k < cls.size(); ++k) {
        if (colour_of(image(tuples[cls[k]])) != first) {
          result.refutations.push_back({tuples[cls[0]], tuples[cls[k]]});
          return true;
        }
      }
    }
    result.found = true;
    result.g.map = g;
    return false;
  });
  if (!result.found) return result;

  result.refutations.clear();
  result.pattern = Reindex(seq, target, result.g);
  if (!IsIndiscernible(result.pattern, delta, result.cap).indiscernible ||
      !CheckLocallyBased(result.pattern, seq, delta, result.cap).based) {
    throw std::logic_error("extracted pattern failed its own check");
  }
  return result;
}

std::set<QfType> InducedTypeUnionRelation(const IndexedSequence& seq,
                                          const Formula& phi) {
  seq.Validate();
  if (phi.arity() % seq.width != 0) {
    throw PreconditionError("formula arity is not a multiple of the width");
  }
  int len = phi.arity() / seq.width;
  struct Seen {
    bool truth;
    Tuple first;
  };
  std::map<QfType, Seen> seen;
  std::vector<std::pair<QfType, bool>> values;
  for (const Tuple& t : IndexTuples(seq.index.size(), len, len)) {
    QfType q = ComputeQfType(seq.index, t);
    bool truth = phi.Evaluate(seq.target, seq.Concat(t));
    auto [it, inserted] = seen.try_emplace(q, Seen{truth, t});
    if (!inserted && it->second.truth != truth) {
      throw PreconditionError(
          "sequence is not indiscernible for the formula: index tuples " +
          Show(it->second.first) + " and " + Show(t) +
          " have the same qf type");
    }
    values.push_back({std::move(q), truth});
  }
  std::set<QfType> psi;
  for (const auto& [q, s] : seen) {
    if (s.truth) psi.insert(q);
  }
  for (const auto& [q, truth] : values) {
    if (truth != psi.contains(q)) {
      throw std::logic_error("type union relation is inconsistent");
    }
  }
  return psi;
}

}  // namespace ramseyqf
