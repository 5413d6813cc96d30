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

#include "ramseyqf/classes.h"

#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "ramseyqf/builders.h"
#include "ramseyqf/error.h"
#include "ramseyqf/expansions.h"

namespace ramseyqf {
namespace {

// Isomorphism classes of labelled graphs on n vertices, by pairwise oracle
// comparison.
int OracleGraphCount(int n) {
  std::vector<std::pair<Element, Element>> all;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) all.push_back({i, j});
  }
  std::vector<Structure> reps;
  for (uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
    std::vector<std::pair<Element, Element>> edges;
    for (size_t e = 0; e < all.size(); ++e) {
      if (mask >> e & 1) edges.push_back(all[e]);
    }
    Structure g = Graph(n, edges);
    bool fresh = true;
    for (const Structure& r : reps) {
      if (oracle::Isomorphic(g, r)) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(g);
  }
  return static_cast<int>(reps.size());
}

int CountOfSize(const FiniteClass& f, int n) {
  int count = 0;
  for (const Structure& m : f.members) count += m.size() == n;
  return count;
}

const Evidence* Find(const PropertyReport& r, const std::string& kind) {
  for (const Evidence& e : r.evidence) {
    if (e.kind == kind) return &e;
  }
  return nullptr;
}

FiniteClass BrokenApClass() {
  Signature sig = GraphSignature();
  return MakeClass("broken", sig,
                   {CompleteGraph(1), CompleteGraph(2), Graph(2, {})}, 3);
}

TEST(ClassesTest, GeneratorCounts) {
  EXPECT_EQ(GenerateClass(ClassGenerator::kLinearOrders, 5).size(), 6);
  EXPECT_EQ(GenerateClass(ClassGenerator::kPureSets, 4).size(), 5);
  EXPECT_EQ(GenerateClass(ClassGenerator::kSuccessorChains, 3).size(), 4);
  FiniteClass graphs = GenerateClass(ClassGenerator::kGraphs, 5);
  for (int n = 0; n <= 4; ++n) {
    EXPECT_EQ(CountOfSize(graphs, n), OracleGraphCount(n)) << n;
  }
  EXPECT_EQ(CountOfSize(graphs, 5), 34);
  FiniteClass ordered = GenerateClass(ClassGenerator::kOrderedGraphs, 4);
  for (int n = 0; n <= 4; ++n) {
    EXPECT_EQ(CountOfSize(ordered, n), 1 << (n * (n - 1) / 2)) << n;
  }
  EXPECT_THROW(ParseClassGenerator("trees"), InputError);
  EXPECT_EQ(ParseClassGenerator("ordered-graphs"),
            ClassGenerator::kOrderedGraphs);
}

TEST(ClassesTest, MakeClassDeduplicatesAndValidates) {
  Signature sig = GraphSignature();
  FiniteClass f = MakeClass("c", sig,
                            {Graph(3, {{0, 1}}), Graph(3, {{1, 2}}),
                             CompleteGraph(2)});
  EXPECT_EQ(f.size(), 2);
  EXPECT_EQ(f.bound, 3);
  EXPECT_EQ(f.members[0].size(), 2);
  ASSERT_TRUE(f.IndexOf(Graph(3, {{0, 2}})).has_value());
  EXPECT_FALSE(f.IndexOf(CompleteGraph(3)).has_value());
  EXPECT_THROW(MakeClass("mixed", sig, {LinearOrder(2), CompleteGraph(2)}),
               SignatureMismatchError);
  EXPECT_THROW(MakeClass("small", sig, {CompleteGraph(3)}, 2), InputError);
}

TEST(HpTest, Examples) {
  PropertyReport lo = HpCheck(GenerateClass(ClassGenerator::kLinearOrders, 5));
  EXPECT_EQ(lo.verdict, PropertyVerdict::kPass);
  PropertyReport graphs = HpCheck(GenerateClass(ClassGenerator::kGraphs, 4));
  EXPECT_EQ(graphs.verdict, PropertyVerdict::kPass);

  FiniteClass k3 = MakeClass("k3", GraphSignature(), {CompleteGraph(3)});
  PropertyReport r = HpCheck(k3);
  EXPECT_EQ(r.verdict, PropertyVerdict::kFail);
  const Evidence* missing = Find(r, "missing");
  ASSERT_NE(missing, nullptr);
  EXPECT_EQ(missing->maps[0].size(), 1u);
  bool saw_pair = false;
  for (const Evidence& e : r.evidence) {
    if (e.kind == "missing" && e.maps[0].size() == 2) saw_pair = true;
  }
  EXPECT_TRUE(saw_pair);
  for (const PropertyReport* rep : {&lo, &graphs}) {
    EXPECT_EQ(rep->evidence.empty(), false);
  }
  EXPECT_EQ(VerifyPropertyReport(k3, r), "");
}

TEST(HpTest, ChainsAreClosedUnderGeneratedSubstructures) {
  FiniteClass chains = GenerateClass(ClassGenerator::kSuccessorChains, 5);
  PropertyReport r = HpCheck(chains);
  EXPECT_EQ(r.verdict, PropertyVerdict::kPass);
  EXPECT_EQ(VerifyPropertyReport(chains, r), "");
}

TEST(JepTest, Examples) {
  FiniteClass lo = GenerateClass(ClassGenerator::kLinearOrders, 6);
  PropertyReport r = JepCheck(lo);
  EXPECT_EQ(r.verdict, PropertyVerdict::kPass);
  int lo2 = *lo.IndexOf(LinearOrder(2)), lo3 = *lo.IndexOf(LinearOrder(3));
  for (const Evidence& e : r.evidence) {
    if (e.members[0] == lo2 && e.members[1] == lo3) {
      EXPECT_EQ(lo.members[e.members[2]].size(), 3);
    }
  }
  EXPECT_EQ(VerifyPropertyReport(lo, r), "");

  FiniteClass single = MakeClass("one", GraphSignature(), {CompleteGraph(3)});
  EXPECT_EQ(JepCheck(single).verdict, PropertyVerdict::kPass);

  // K1 and K2 jointly embed in K2; two edges would need four points.
  FiniteClass small = MakeClass("small", GraphSignature(),
                                {CompleteGraph(1), CompleteGraph(2)}, 3);
  PropertyReport jep = JepCheck(small);
  EXPECT_EQ(jep.verdict, PropertyVerdict::kPass);
  EXPECT_EQ(jep.evidence.size(), 2u);
  EXPECT_EQ(VerifyPropertyReport(small, jep), "");

  // K2 and E2 fit in four points, but no member embeds both.
  FiniteClass broken = MakeClass(
      "broken", GraphSignature(),
      {CompleteGraph(1), CompleteGraph(2), Graph(2, {})}, 4);
  PropertyReport b = JepCheck(broken);
  EXPECT_EQ(b.verdict, PropertyVerdict::kFail);
  EXPECT_EQ(VerifyPropertyReport(broken, b), "");
}

TEST(ApTest, LinearOrders) {
  FiniteClass lo = GenerateClass(ClassGenerator::kLinearOrders, 5);
  PropertyReport r = ApCheck(lo);
  EXPECT_EQ(r.verdict, PropertyVerdict::kPass);
  int lo1 = *lo.IndexOf(LinearOrder(1)), lo2 = *lo.IndexOf(LinearOrder(2));
  int seen = 0;
  for (const Evidence& e : r.evidence) {
    if (e.members[0] == lo1 && e.members[1] == lo2 && e.members[2] == lo2) {
      ++seen;
      int d = lo.members[e.members[3]].size();
      EXPECT_TRUE(d == 2 || d == 3);
    }
  }
  EXPECT_EQ(seen, 3);  // the point goes to the bottom or top of each side
  EXPECT_EQ(VerifyPropertyReport(lo, r), "");
}

TEST(ApTest, EmptyBaseGivesJointEmbeddings) {
  FiniteClass lo = GenerateClass(ClassGenerator::kLinearOrders, 4);
  PropertyReport r = ApCheck(lo);
  int empty = *lo.IndexOf(LinearOrder(0));
  for (const Evidence& e : r.evidence) {
    if (e.members[0] != empty) continue;
    ASSERT_EQ(e.kind, "amalgam");
    int expected = std::max(lo.members[e.members[1]].size(),
                            lo.members[e.members[2]].size());
    EXPECT_EQ(lo.members[e.members[3]].size(), expected);
  }
}

TEST(ApTest, BrokenClassFails) {
  FiniteClass f = BrokenApClass();
  EXPECT_EQ(HpCheck(f).verdict, PropertyVerdict::kPass);
  PropertyReport r = ApCheck(f);
  EXPECT_EQ(r.verdict, PropertyVerdict::kFail);
  const Evidence* bad = Find(r, "no-amalgam");
  ASSERT_NE(bad, nullptr);
  EXPECT_TRUE(bad->definite);
  EXPECT_EQ(VerifyPropertyReport(f, r), "");
}

TEST(ErpTest, LinearOrdersPass) {
  FiniteClass lo = GenerateClass(ClassGenerator::kLinearOrders, 6);
  PropertyReport r = ErpCheck(lo, {3, 3, 6});
  EXPECT_EQ(r.verdict, PropertyVerdict::kPass);
  int lo2 = *lo.IndexOf(LinearOrder(2)), lo3 = *lo.IndexOf(LinearOrder(3));
  bool checked = false;
  for (const Evidence& e : r.evidence) {
    ASSERT_EQ(e.kind, "arrow");
    if (e.members[0] == lo2 && e.members[1] == lo3) {
      EXPECT_EQ(lo.members[e.candidates[0]].size(), 6);
      checked = true;
    }
    if (e.members[0] == e.members[1]) {
      EXPECT_EQ(e.candidates[0], e.members[1]);
    }
  }
  EXPECT_TRUE(checked);
  EXPECT_EQ(VerifyPropertyReport(lo, r), "");
  // A witness bound below 6 cannot handle (LO2, LO3).
  PropertyReport low = ErpCheck(lo, {3, 3, 5});
  EXPECT_EQ(low.verdict, PropertyVerdict::kFail);
}

TEST(ErpTest, PureSetsFail) {
  FiniteClass sets = GenerateClass(ClassGenerator::kPureSets, 8);
  PropertyReport r = ErpCheck(sets, {2, 3, 8});
  EXPECT_EQ(r.verdict, PropertyVerdict::kFail);
  EXPECT_EQ(VerifyPropertyReport(sets, r), "");
}

TEST(ErpTest, TamperedReportsAreRejected) {
  FiniteClass lo = GenerateClass(ClassGenerator::kLinearOrders, 6);
  PropertyReport r = ErpCheck(lo, {2, 3, 6});
  ASSERT_EQ(VerifyPropertyReport(lo, r), "");
  PropertyReport truncated = r;
  truncated.evidence.pop_back();
  EXPECT_NE(VerifyPropertyReport(lo, truncated), "");
  PropertyReport wrong_verdict = r;
  wrong_verdict.verdict = PropertyVerdict::kFail;
  EXPECT_NE(VerifyPropertyReport(lo, wrong_verdict), "");
  PropertyReport bad_proof = r;
  for (Evidence& e : bad_proof.evidence) {
    if (e.proof.size() > 1) e.proof = "C";
  }
  EXPECT_NE(VerifyPropertyReport(lo, bad_proof), "");
}

TEST(FErpTest, AgreesWithErpOnFiniteRelationalClasses) {
  struct Case {
    FiniteClass f;
    ErpBounds bounds;
  };
  std::vector<Case> cases = {
      {GenerateClass(ClassGenerator::kLinearOrders, 6), {3, 3, 6}},
      {GenerateClass(ClassGenerator::kLinearOrders, 5), {2, 3, 5}},
      {GenerateClass(ClassGenerator::kPureSets, 5), {2, 3, 5}},
      {GenerateClass(ClassGenerator::kGraphs, 4), {1, 2, 4}},
      {GenerateClass(ClassGenerator::kOrderedGraphs, 4), {1, 2, 4}},
  };
  for (const Case& c : cases) {
    PropertyReport erp = ErpCheck(c.f, c.bounds);
    PropertyReport ferp = FErpCheck(c.f, c.bounds);
    EXPECT_EQ(erp.verdict, ferp.verdict) << c.f.name;
    EXPECT_EQ(VerifyPropertyReport(c.f, ferp), "") << c.f.name;
  }
}

TEST(FErpTest, ChainsAndEmptyA) {
  FiniteClass chains = GenerateClass(ClassGenerator::kSuccessorChains, 6);
  PropertyReport r = FErpCheck(chains, {1, 2, 6});
  EXPECT_EQ(r.verdict, PropertyVerdict::kPass);
  EXPECT_EQ(VerifyPropertyReport(chains, r), "");
  FiniteClass sets = GenerateClass(ClassGenerator::kPureSets, 4);
  EXPECT_EQ(FErpCheck(sets, {0, 3, 4}).verdict, PropertyVerdict::kPass);
}

TEST(RigidityTest, Examples) {
  EXPECT_TRUE(RigidityScan(GenerateClass(ClassGenerator::kLinearOrders, 5))
                  .empty());
  FiniteClass graphs = GenerateClass(ClassGenerator::kGraphs, 3);
  std::vector<RigidityEntry> scan = RigidityScan(graphs);
  size_t next = 0;
  for (int i = 0; i < graphs.size(); ++i) {
    const Structure& g = graphs.members[i];
    int autos = static_cast<int>(oracle::Embeddings(g, g).size());
    if (autos > 1) {
      ASSERT_LT(next, scan.size());
      EXPECT_EQ(scan[next].member, i);
      EXPECT_EQ(scan[next].automorphisms, autos);
      ++next;
    }
  }
  EXPECT_EQ(next, scan.size());
  EXPECT_EQ(scan.size(), 6u);  // all but the empty graph and K1
  std::vector<RigidityEntry> sets =
      RigidityScan(GenerateClass(ClassGenerator::kPureSets, 5));
  ASSERT_EQ(sets.size(), 4u);
  EXPECT_EQ(sets.back().automorphisms, 120);
}

TEST(OrderabilityTest, LinearOrders) {
  FiniteClass lo = GenerateClass(ClassGenerator::kLinearOrders, 5);
  OrderabilityResult r = OrderabilitySearch(lo);
  ASSERT_EQ(r.verdict, OrderVerdict::kOrderable);
  ASSERT_EQ(r.phi.size(), 1u);
  EXPECT_EQ(r.types[r.phi[0]].type,
            ComputeQfType(LinearOrder(2), Tuple{0, 1}));
  for (const Structure& m : lo.members) {
    TypeUnionRelation rel = DefineByTypeUnion(m, PhiTypes(r));
    EXPECT_TRUE(rel.irreflexive && rel.antisymmetric && rel.transitive &&
                rel.total);
  }
  EXPECT_EQ(VerifyOrderability(lo, r), "");
}

TEST(OrderabilityTest, SymmetricTypesBlockOrders) {
  for (const FiniteClass& f :
       {GenerateClass(ClassGenerator::kPureSets, 4),
        GenerateClass(ClassGenerator::kGraphs, 3)}) {
    OrderabilityResult r = OrderabilitySearch(f);
    EXPECT_EQ(r.verdict, OrderVerdict::kNotOrderable) << f.name;
    EXPECT_TRUE(r.symmetric_type.has_value());
    EXPECT_EQ(VerifyOrderability(f, r), "");
  }
}

TEST(OrderabilityTest, OrderedGraphs) {
  FiniteClass f = GenerateClass(ClassGenerator::kOrderedGraphs, 3);
  OrderabilityResult r = OrderabilitySearch(f);
  ASSERT_EQ(r.verdict, OrderVerdict::kOrderable);
  EXPECT_EQ(VerifyOrderability(f, r), "");
  for (int i : r.phi) {
    const BinaryType& t = r.types[i];
    EXPECT_TRUE(f.members[t.member].Holds(0, Tuple{t.x, t.y}));
  }
}

// A directed 3-cycle has no symmetric pair type, but neither orientation
// is transitive.
TEST(OrderabilityTest, CyclicTournamentIsExhausted) {
  Signature sig;
  sig.AddRelation("R", 2);
  Structure cyc(sig, 3, "cycle");
  cyc.AddTuple(0, {0, 1});
  cyc.AddTuple(0, {1, 2});
  cyc.AddTuple(0, {2, 0});
  FiniteClass f = MakeClass("cycle", sig, {cyc});
  OrderabilityResult r = OrderabilitySearch(f);
  ASSERT_EQ(r.verdict, OrderVerdict::kNotOrderable);
  EXPECT_FALSE(r.symmetric_type.has_value());
  EXPECT_EQ(r.leaves.size(), 2u);
  EXPECT_EQ(VerifyOrderability(f, r), "");
  OrderabilityResult dropped = r;
  dropped.leaves.pop_back();
  EXPECT_NE(VerifyOrderability(f, dropped), "");
  OrderabilityResult moved = r;
  std::swap(moved.leaves[0].x, moved.leaves[0].z);
  EXPECT_NE(VerifyOrderability(f, moved), "");
}

TEST(ElfTest, Examples) {
  EXPECT_EQ(ElfMinimize(LinearOrder(4), Tuple{0, 2}),
            (std::vector<Element>{0, 1, 2, 3}));
  EXPECT_EQ(ElfMinimize(SuccessorChain(5), Tuple{4}),
            (std::vector<Element>{4}));
  // Relational: the union of the supports of the copies.
  Structure g = Graph(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(ElfMinimize(g, Tuple{0}), (std::vector<Element>{0, 1, 2, 3}));
  Structure star = Graph(4, {{0, 1}, {0, 2}});
  EXPECT_EQ(ElfMinimize(star, Tuple{0, 1}), (std::vector<Element>{0, 1, 2}));
  // The result carries every copy.
  Structure chain = SuccessorChain(6);
  std::vector<Element> bp = ElfMinimize(chain, Tuple{2});
  EXPECT_EQ(EnumerateQfCopiesOf(chain, chain, Tuple{2}, bp),
            EnumerateQfCopies(chain, Tuple{2}));
}

}  // namespace
}  // namespace ramseyqf
