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

#include "ramseyqf/expansions.h"

#include <map>

#include "ramseyqf/digest.h"
#include "ramseyqf/error.h"

namespace ramseyqf {

namespace {

template <typename Fn>
void ForEachTuple(int n, int arity, Fn&& fn) {
  if (n == 0) return;
  Tuple t(arity, 0);
  while (true) {
    fn(static_cast<const Tuple&>(t));
    int pos = arity - 1;
    while (pos >= 0 && ++t[pos] == n) t[pos--] = 0;
    if (pos < 0) return;
  }
}

void CheckArityBound(int k) {
  if (k < 1) throw InputError("arity bound k must be at least 1");
}

// Appends R_p to `out` for every predicate, with tables computed from m.
void AddTypeRelations(const Structure& m, const TypePredicateTable& table,
                      int first_relation, Structure& out) {
  std::map<std::string, int> index_of;
  for (size_t i = 0; i < table.predicates.size(); ++i) {
    index_of[table.predicates[i].type.key()] =
        first_relation + static_cast<int>(i);
  }
  for (int arity = 1; arity <= table.k; ++arity) {
    ForEachTuple(m.size(), arity, [&](const Tuple& t) {
      out.AddTuple(index_of.at(ComputeQfType(m, t).key()), t);
    });
  }
}

std::string FreshName(const Signature& sig, std::string name) {
  while (sig.Lookup(name)) name += "_";
  return name;
}

}  // namespace

TypePredicateTable RealizedTypes(const Structure& m, int k) {
  CheckArityBound(k);
  TypePredicateTable table;
  table.k = k;
  std::set<std::string> seen;
  for (int arity = 1; arity <= k; ++arity) {
    ForEachTuple(m.size(), arity, [&](const Tuple& t) {
      QfType type = ComputeQfType(m, t);
      if (seen.insert(type.key()).second) {
        table.predicates.push_back({"", std::move(type)});
      }
    });
  }
  // Names from the key digest, lengthened until unique.
  for (int digits = 8; digits <= 64; digits += 4) {
    std::set<std::string> names;
    bool clash = false;
    for (TypePredicate& p : table.predicates) {
      p.symbol = "qf" + std::to_string(p.type.arity()) + "_" +
                 Sha256Hex(p.type.key()).substr(0, digits);
      if (!names.insert(p.symbol).second) clash = true;
    }
    if (!clash) return table;
  }
  throw PreconditionError("type digest collision");
}

Structure QfTypeMorleyisation(const Structure& m, int k,
                              TypePredicateTable* table) {
  TypePredicateTable types = RealizedTypes(m, k);
  Signature sig = m.signature();
  sig.set_name(m.signature().name() + "+qf" + std::to_string(k));
  const int first = sig.num_relations();
  for (TypePredicate& p : types.predicates) {
    p.symbol = FreshName(m.signature(), p.symbol);
    sig.AddRelation(p.symbol, p.type.arity());
  }
  Structure out(sig, m.size(), m.name());
  for (int r = 0; r < first; ++r) {
    for (const Tuple& t : m.relation(r).tuples()) out.AddTuple(r, t);
  }
  for (int f = 0; f < sig.num_functions(); ++f) {
    for (const auto& [args, value] : m.function(f).entries()) {
      out.SetFunctionValue(f, args, value);
    }
  }
  for (int c = 0; c < sig.num_constants(); ++c) {
    out.SetConstant(c, m.Constant(c));
  }
  AddTypeRelations(m, types, first, out);
  if (table != nullptr) *table = std::move(types);
  return out;
}

Structure Isolator(const Structure& m, int k, TypePredicateTable* table) {
  TypePredicateTable types = RealizedTypes(m, k);
  Signature sig(m.signature().name() + "-iso" + std::to_string(k));
  for (const TypePredicate& p : types.predicates) {
    sig.AddRelation(p.symbol, p.type.arity());
  }
  Structure out(sig, m.size(), m.name());
  AddTypeRelations(m, types, 0, out);
  if (table != nullptr) *table = std::move(types);
  return out;
}

bool SameQfTypePartition(const Structure& a, const Structure& b, int k) {
  CheckArityBound(k);
  if (a.size() != b.size()) {
    throw InputError("type partitions compared over different domains");
  }
  for (int arity = 1; arity <= k; ++arity) {
    std::map<std::string, std::string> forward, backward;
    bool same = true;
    ForEachTuple(a.size(), arity, [&](const Tuple& t) {
      if (!same) return;
      std::string ka = ComputeQfType(a, t).key();
      std::string kb = ComputeQfType(b, t).key();
      auto [fa, new_a] = forward.emplace(ka, kb);
      auto [fb, new_b] = backward.emplace(kb, ka);
      if (fa->second != kb || fb->second != ka) same = false;
    });
    if (!same) return false;
  }
  return true;
}

TypeUnionRelation DefineByTypeUnion(const Structure& m,
                                    const std::set<QfType>& phi) {
  for (const QfType& p : phi) {
    if (p.arity() != 2) {
      throw PreconditionError("type unions take binary types only");
    }
  }
  TypeUnionRelation rel;
  rel.phi = phi;
  const int n = m.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      Element pair[] = {a, b};
      if (phi.count(ComputeQfType(m, pair))) rel.pairs.emplace(a, b);
    }
  }
  rel.irreflexive = rel.antisymmetric = rel.transitive = rel.total = true;
  for (Element a = 0; a < n; ++a) {
    if (rel.Contains(a, a)) rel.irreflexive = false;
    for (Element b = 0; b < n; ++b) {
      if (a == b) continue;
      bool ab = rel.Contains(a, b), ba = rel.Contains(b, a);
      if (ab && ba) rel.antisymmetric = false;
      if (!ab && !ba) rel.total = false;
    }
  }
  for (const auto& [a, b] : rel.pairs) {
    for (Element c = 0; c < n && rel.transitive; ++c) {
      if (rel.Contains(b, c) && !rel.Contains(a, c)) rel.transitive = false;
    }
  }
  return rel;
}

}  // namespace ramseyqf
