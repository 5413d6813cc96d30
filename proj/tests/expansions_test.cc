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

#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "ramseyqf/builders.h"
#include "ramseyqf/embedding.h"
#include "ramseyqf/error.h"

namespace ramseyqf {
namespace {

// Number of pointed-isomorphism classes of m-tuples, by pairwise oracle
// comparison.
int OracleTypeCount(const Structure& m, int arity) {
  std::vector<Tuple> tuples, reps;
  oracle::AllTuples(m.size(), arity, tuples);
  for (const Tuple& t : tuples) {
    bool fresh = true;
    for (const Tuple& r : reps) {
      if (oracle::SameQfType(m, t, m, r)) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(t);
  }
  return static_cast<int>(reps.size());
}

int PredicatesOfArity(const TypePredicateTable& table, int arity) {
  int count = 0;
  for (const TypePredicate& p : table.predicates) {
    if (p.type.arity() == arity) ++count;
  }
  return count;
}

Signature TwoBinary() {
  Signature sig("two-binary");
  sig.AddRelation("R", 2);
  sig.AddRelation("S", 2);
  return sig;
}

Signature WithFunction() {
  Signature sig("unary-f");
  sig.AddRelation("P", 1);
  sig.AddFunction("f", 1);
  return sig;
}

TEST(MorleyisationTest, PureSetOfThree) {
  TypePredicateTable table;
  Structure mor = QfTypeMorleyisation(PureSet(3), 2, &table);
  EXPECT_EQ(PredicatesOfArity(table, 1), OracleTypeCount(PureSet(3), 1));
  EXPECT_EQ(PredicatesOfArity(table, 2), OracleTypeCount(PureSet(3), 2));
  EXPECT_EQ(PredicatesOfArity(table, 1), 1);
  EXPECT_EQ(PredicatesOfArity(table, 2), 2);
  EXPECT_EQ(mor.signature().num_relations(), 3);
  // The unary predicate is full.
  EXPECT_EQ(mor.relation(0).size(), 3);
  EXPECT_TRUE(SameQfTypePartition(PureSet(3), mor, 2));
}

TEST(MorleyisationTest, LinearOrderOneTypes) {
  TypePredicateTable table;
  QfTypeMorleyisation(LinearOrder(3), 1, &table);
  EXPECT_EQ(PredicatesOfArity(table, 1), OracleTypeCount(LinearOrder(3), 1));
  EXPECT_EQ(PredicatesOfArity(table, 1), 1);
}

TEST(MorleyisationTest, KeepsOriginalTables) {
  Structure chain = SuccessorChain(5);
  Structure mor = QfTypeMorleyisation(chain, 2);
  ASSERT_EQ(mor.signature().num_functions(), 1);
  EXPECT_EQ(mor.function(0).entries(), chain.function(0).entries());
  EXPECT_THROW(QfTypeMorleyisation(chain, 0), InputError);
}

TEST(MorleyisationTest, IdempotentPartition) {
  Structure lo = LinearOrder(4);
  Structure once = QfTypeMorleyisation(lo, 2);
  Structure twice = QfTypeMorleyisation(once, 2);
  EXPECT_TRUE(SameQfTypePartition(once, twice, 2));
}

TEST(IsolatorTest, PureSetOfThree) {
  TypePredicateTable table;
  Structure iso = Isolator(PureSet(3), 2, &table);
  EXPECT_TRUE(iso.signature().IsRelational());
  EXPECT_EQ(iso.signature().num_relations(), 3);
  for (int r = 0; r < 3; ++r) {
    EXPECT_EQ(iso.signature().relations()[r].name, table.predicates[r].symbol);
  }
}

TEST(IsolatorTest, ChainSeparatesByForwardLength) {
  Structure chain = SuccessorChain(10);
  TypePredicateTable table;
  Structure iso = Isolator(chain, 1, &table);
  EXPECT_EQ(static_cast<int>(table.predicates.size()), 10);
  EXPECT_EQ(OracleTypeCount(chain, 1), 10);
  for (int r = 0; r < 10; ++r) EXPECT_EQ(iso.relation(r).size(), 1);
}

TEST(IsolatorTest, IsolatorOfIsolator) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Structure m = RandomStructure(TwoBinary(), 4, 0.4, rng);
    Structure iso = Isolator(m, 2);
    EXPECT_TRUE(SameQfTypePartition(iso, Isolator(iso, 2), 2));
  }
}

TEST(IsolatorTest, SymbolNamesAreStable) {
  TypePredicateTable a, b;
  Isolator(LinearOrder(4), 2, &a);
  Isolator(LinearOrder(4), 2, &b);
  ASSERT_EQ(a.predicates.size(), b.predicates.size());
  for (size_t i = 0; i < a.predicates.size(); ++i) {
    EXPECT_EQ(a.predicates[i].symbol, b.predicates[i].symbol);
    EXPECT_EQ(a.predicates[i].symbol.substr(0, 2), "qf");
  }
}

TEST(PartitionTest, OrderVersusPureSet) {
  EXPECT_FALSE(SameQfTypePartition(LinearOrder(3), PureSet(3), 2));
  EXPECT_TRUE(SameQfTypePartition(LinearOrder(3), PureSet(3), 1));
  EXPECT_THROW(SameQfTypePartition(LinearOrder(3), PureSet(4), 2), InputError);
}

TEST(PartitionTest, ExpansionsPreservePartitionOnRandomStructures) {
  std::mt19937_64 rng(101);
  const Signature sigs[] = {TwoBinary(), WithFunction()};
  for (int trial = 0; trial < 120; ++trial) {
    Structure m = RandomStructure(sigs[trial % 2],
                                  1 + static_cast<int>(rng() % 5), 0.4, rng);
    EXPECT_TRUE(SameQfTypePartition(m, QfTypeMorleyisation(m, 3), 3));
    EXPECT_TRUE(SameQfTypePartition(m, Isolator(m, 3), 3));
  }
}

TEST(PartitionTest, CopiesAgreeBetweenStructureAndIsolator) {
  std::mt19937_64 rng(103);
  const Signature sigs[] = {TwoBinary(), WithFunction()};
  for (int trial = 0; trial < 60; ++trial) {
    Structure m = RandomStructure(sigs[trial % 2],
                                  2 + static_cast<int>(rng() % 4), 0.4, rng);
    Structure iso = Isolator(m, 3);
    for (int w = 1; w <= 3 && w <= m.size(); ++w) {
      Tuple a;
      for (Element e = 0; e < w; ++e) a.push_back(e);
      EXPECT_EQ(EnumerateQfCopies(m, a), EnumerateQfCopies(iso, a));
    }
  }
}

TEST(TypeUnionTest, LinearOrderIncreasingPairs) {
  Structure lo = LinearOrder(5);
  Tuple up{0, 1};
  TypeUnionRelation rel = DefineByTypeUnion(lo, {ComputeQfType(lo, up)});
  EXPECT_TRUE(rel.IsStrictLinearOrder());
  EXPECT_EQ(rel.pairs.size(), 10u);
  for (const auto& [a, b] : rel.pairs) EXPECT_LT(a, b);
}

TEST(TypeUnionTest, PureSetInequality) {
  Structure set = PureSet(4);
  Tuple off{0, 1};
  TypeUnionRelation rel = DefineByTypeUnion(set, {ComputeQfType(set, off)});
  EXPECT_TRUE(rel.total);
  EXPECT_TRUE(rel.irreflexive);
  EXPECT_FALSE(rel.antisymmetric);
  EXPECT_FALSE(rel.IsStrictLinearOrder());
}

TEST(TypeUnionTest, EdgeIsSymmetric) {
  Structure k2 = CompleteGraph(2);
  Tuple edge{0, 1};
  TypeUnionRelation rel = DefineByTypeUnion(k2, {ComputeQfType(k2, edge)});
  EXPECT_EQ(rel.pairs, (std::set<std::pair<Element, Element>>{{0, 1},
                                                             {1, 0}}));
  EXPECT_FALSE(rel.antisymmetric);
  EXPECT_TRUE(rel.total);
}

TEST(TypeUnionTest, RejectsNonBinaryTypes) {
  Structure lo = LinearOrder(2);
  Tuple one{0};
  EXPECT_THROW(DefineByTypeUnion(lo, {ComputeQfType(lo, one)}),
               PreconditionError);
}

TEST(TypeUnionTest, InvariantUnderAutomorphisms) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 40; ++trial) {
    Structure m = RandomStructure(TwoBinary(), 5, 0.3, rng);
    TypePredicateTable table = RealizedTypes(m, 2);
    std::set<QfType> phi;
    for (const TypePredicate& p : table.predicates) {
      if (p.type.arity() == 2 && rng() % 2) phi.insert(p.type);
    }
    TypeUnionRelation rel = DefineByTypeUnion(m, phi);
    AutomorphismGroup aut = ComputeAutomorphismGroup(m);
    for (const Embedding& g : aut.elements()) {
      for (const auto& [a, b] : rel.pairs) {
        EXPECT_TRUE(rel.Contains(g(a), g(b)));
      }
    }
  }
}

}  // namespace
}  // namespace ramseyqf
