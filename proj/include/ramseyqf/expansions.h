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

// Expansions of a structure by one predicate per realised quantifier-free
// type, and relations defined by unions of binary types.

#ifndef RAMSEYQF_EXPANSIONS_H_
#define RAMSEYQF_EXPANSIONS_H_

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ramseyqf/qftype.h"
#include "ramseyqf/structure.h"

namespace ramseyqf {

struct TypePredicate {
  std::string symbol;  // qf<m>_<digest>
  QfType type;
};

// Realised types of every m-tuple (repeats allowed), m = 1..k. Within an
// arity, types appear in order of their first realiser.
struct TypePredicateTable {
  int k = 0;
  std::vector<TypePredicate> predicates;
};

TypePredicateTable RealizedTypes(const Structure& m, int k);

// M with R_p added for every realised p of arity <= k. Throws InputError
// when k < 1.
Structure QfTypeMorleyisation(const Structure& m, int k,
                              TypePredicateTable* table = nullptr);

// The reduct of the Morleyisation to the R_p symbols alone.
Structure Isolator(const Structure& m, int k,
                   TypePredicateTable* table = nullptr);

// For every m <= k the two structures induce the same partition of the
// m-tuples by quantifier-free type. Throws InputError if the domain sizes
// differ.
bool SameQfTypePartition(const Structure& a, const Structure& b, int k);

struct TypeUnionRelation {
  std::set<QfType> phi;
  std::set<std::pair<Element, Element>> pairs;
  bool irreflexive = false;
  bool antisymmetric = false;
  bool transitive = false;
  bool total = false;  // comparable on distinct elements

  bool IsStrictLinearOrder() const {
    return irreflexive && antisymmetric && transitive && total;
  }
  bool Contains(Element a, Element b) const { return pairs.count({a, b}); }
};

// {(a, b) : qftp(a, b) in phi}. Throws PreconditionError on a non-binary
// member of phi.
TypeUnionRelation DefineByTypeUnion(const Structure& m,
                                    const std::set<QfType>& phi);

}  // namespace ramseyqf

#endif  // RAMSEYQF_EXPANSIONS_H_
