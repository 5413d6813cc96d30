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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "ramseyqf/builders.h"
#include "ramseyqf/canonical.h"
#include "ramseyqf/embedding.h"
#include "ramseyqf/error.h"
#include "ramseyqf/qftype.h"
#include "ramseyqf/structure.h"

namespace ramseyqf {
namespace {

Signature MixedSignature() {
  Signature sig("mixed");
  sig.AddRelation("R", 2);
  sig.AddRelation("P", 1);
  sig.AddFunction("f", 1);
  return sig;
}

Signature ConstantSignature() {
  Signature sig("const");
  sig.AddRelation("R", 2);
  sig.AddFunction("g", 2);
  sig.AddConstant("c");
  return sig;
}

Structure Permuted(const Structure& m, std::mt19937_64& rng) {
  std::vector<Element> perm(m.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return m.Relabel(perm);
}

std::vector<Tuple> AllInjective(int n, int w) {
  std::vector<Tuple> all, out;
  oracle::AllTuples(n, w, all);
  for (const Tuple& t : all) {
    if (IsInjective(t)) out.push_back(t);
  }
  return out;
}

TEST(SignatureTest, RejectsDuplicatesAndBadArity) {
  Signature sig;
  sig.AddRelation("R", 2);
  EXPECT_THROW(sig.AddFunction("R", 1), InputError);
  EXPECT_THROW(sig.AddConstant("R"), InputError);
  EXPECT_THROW(sig.AddRelation("Q", 0), InputError);
  EXPECT_THROW(sig.AddFunction("g", 0), InputError);
}

TEST(StructureTest, RejectsOutOfRangeAndDoubledValues) {
  Structure m = SuccessorChain(3);
  EXPECT_THROW(m.SetFunctionValue(0, {0}, 2), InputError);
  EXPECT_THROW(m.SetFunctionValue(0, {2}, 5), InputError);
  Structure g = PureSet(2);
  Structure lo = LinearOrder(3);
  EXPECT_THROW(lo.AddTuple(0, {0, 3}), InputError);
  EXPECT_THROW(lo.AddTuple(0, {0}), InputError);
}

TEST(StructureTest, UnassignedConstantFailsValidation) {
  Structure m(ConstantSignature(), 2);
  EXPECT_THROW(m.Validate(), InputError);
  m.SetConstant(0, 1);
  EXPECT_NO_THROW(m.Validate());
}

TEST(GeneratedSubstructureTest, ChainClosure) {
  Structure chain = SuccessorChain(10);
  Element seed[] = {7};
  Substructure sub = GeneratedSubstructure(chain, seed);
  EXPECT_EQ(sub.inclusion.map, (std::vector<Element>{7, 8, 9}));
  EXPECT_EQ(sub.structure.size(), 3);
  EXPECT_TRUE(IsEmbedding(sub.structure, chain, sub.inclusion.map));
}

TEST(GeneratedSubstructureTest, RelationalIsIdentityOnSet) {
  Structure lo = LinearOrder(6);
  Element seed[] = {4, 1, 3};
  Substructure sub = GeneratedSubstructure(lo, seed);
  EXPECT_EQ(sub.inclusion.map, (std::vector<Element>{1, 3, 4}));
  EXPECT_EQ(sub.structure, LinearOrder(3));
}

TEST(GeneratedSubstructureTest, EmptySeedNoConstants) {
  Substructure sub = GeneratedSubstructure(LinearOrder(4), {});
  EXPECT_EQ(sub.structure.size(), 0);
}

TEST(GeneratedSubstructureTest, ConstantsAlwaysIncluded) {
  Structure m(ConstantSignature(), 4);
  m.SetConstant(0, 2);
  m.SetFunctionValue(0, {2, 0}, 3);
  Element seed[] = {0};
  Substructure sub = GeneratedSubstructure(m, seed);
  EXPECT_EQ(sub.inclusion.map, (std::vector<Element>{0, 2, 3}));
}

TEST(EmbeddingTest, FrozenCounts) {
  EXPECT_EQ(EnumerateEmbeddings(LinearOrder(5), LinearOrder(3)).size(), 10u);
  EXPECT_EQ(EnumerateEmbeddings(CompleteGraph(3), CompleteGraph(2)).size(),
            6u);
  for (int n = 0; n <= 6; ++n) {
    auto self = EnumerateEmbeddings(LinearOrder(n), LinearOrder(n));
    ASSERT_EQ(self.size(), 1u);
    std::vector<Element> id(n);
    std::iota(id.begin(), id.end(), 0);
    EXPECT_EQ(self[0].map, id);
  }
}

TEST(EmbeddingTest, PartialFunctionsForwardOnly) {
  // Any window of 3 consecutive points; extra definedness in the target is
  // irrelevant.
  auto embs = EnumerateEmbeddings(SuccessorChain(6), SuccessorChain(3));
  EXPECT_EQ(embs.size(), 4u);
  // The top of a chain has no forward value, so it maps anywhere.
  EXPECT_EQ(EnumerateEmbeddings(SuccessorChain(6), SuccessorChain(1)).size(),
            6u);
}

TEST(EmbeddingTest, MatchesBruteForceOnRandomStructures) {
  std::mt19937_64 rng(11);
  const Signature sigs[] = {GraphSignature(), MixedSignature(),
                            ConstantSignature()};
  for (int trial = 0; trial < 120; ++trial) {
    const Signature& sig = sigs[trial % 3];
    int hn = 2 + static_cast<int>(rng() % 4);
    int pn = 1 + static_cast<int>(rng() % 3);
    Structure host = RandomStructure(sig, hn, 0.4, rng);
    Structure pattern = RandomStructure(sig, pn, 0.4, rng);
    if (trial % 5 == 0) {
      // Guarantee at least one embedding by using an induced piece.
      std::vector<Element> pts;
      for (Element e = 0; e < std::min(pn, hn); ++e) pts.push_back(e);
      pattern = GeneratedSubstructure(host, pts).structure;
    }
    auto got = EnumerateEmbeddings(host, pattern);
    auto want = oracle::Embeddings(host, pattern);
    ASSERT_EQ(got.size(), want.size()) << "trial " << trial;
    for (size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].map, want[i]);
      EXPECT_TRUE(oracle::IsEmbedding(pattern, host, got[i].map));
      EXPECT_TRUE(IsEmbedding(pattern, host, got[i].map));
    }
  }
}

TEST(EmbeddingTest, AutomorphismsPermuteEmbeddings) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Structure host = RandomGraph(5, 0.5, rng);
    Structure pattern = RandomGraph(3, 0.5, rng);
    auto embs = EnumerateEmbeddings(host, pattern);
    std::set<Embedding> set(embs.begin(), embs.end());
    AutomorphismGroup aut = ComputeAutomorphismGroup(host);
    for (const Embedding& g : aut.elements()) {
      std::set<Embedding> moved;
      for (const Embedding& e : embs) moved.insert(Compose(g, e));
      EXPECT_EQ(moved, set);
    }
  }
}

TEST(AutomorphismTest, FrozenGroupSizes) {
  EXPECT_EQ(ComputeAutomorphismGroup(LinearOrder(4)).size(), 1);
  EXPECT_TRUE(IsRigid(LinearOrder(4)));
  EXPECT_EQ(ComputeAutomorphismGroup(PureSet(3)).size(), 6);
  EXPECT_FALSE(IsRigid(PureSet(3)));
  Structure path = Graph(3, {{0, 1}, {1, 2}});
  AutomorphismGroup aut = ComputeAutomorphismGroup(path);
  EXPECT_EQ(aut.size(), 2);
  EXPECT_EQ(aut.elements()[0].map, (std::vector<Element>{0, 1, 2}));
  EXPECT_EQ(aut.elements()[1].map, (std::vector<Element>{2, 1, 0}));
  EXPECT_EQ(ComputeAutomorphismGroup(PureSet(0)).size(), 1);
}

TEST(AutomorphismTest, MatchesPermutationCount) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    Structure m = RandomStructure(MixedSignature(), 1 + trial % 5, 0.35, rng);
    AutomorphismGroup aut = ComputeAutomorphismGroup(m);
    EXPECT_EQ(aut.size(), static_cast<int>(oracle::Embeddings(m, m).size()));
    EXPECT_EQ(IsRigid(m), aut.size() == 1);
    // Closed under composition.
    std::set<Embedding> set(aut.elements().begin(), aut.elements().end());
    for (const Embedding& g : aut.elements()) {
      for (const Embedding& h : aut.elements()) {
        EXPECT_TRUE(set.count(Compose(g, h)));
      }
    }
  }
}

TEST(QfTypeTest, FrozenExamples) {
  Structure lo = LinearOrder(5);
  Tuple a{1, 3}, b{0, 4}, c{3, 1};
  EXPECT_EQ(ComputeQfType(lo, a), ComputeQfType(lo, b));
  EXPECT_NE(ComputeQfType(lo, a), ComputeQfType(lo, c));

  Structure g = Graph(3, {{0, 1}});
  Tuple ab{0, 1}, ac{0, 2};
  EXPECT_NE(ComputeQfType(g, ab), ComputeQfType(g, ac));

  Structure chain = SuccessorChain(10);
  Tuple zero{0}, nine{9};
  EXPECT_NE(ComputeQfType(chain, zero), ComputeQfType(chain, nine));
}

TEST(QfTypeTest, RepeatedEntriesAreDistinguished) {
  Structure set = PureSet(3);
  Tuple diag{1, 1}, off{0, 1};
  EXPECT_NE(ComputeQfType(set, diag), ComputeQfType(set, off));
}

TEST(QfTypeTest, AgreesWithPointedIsomorphismOracle) {
  std::mt19937_64 rng(23);
  const Signature sigs[] = {GraphSignature(), MixedSignature(),
                            ConstantSignature()};
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Signature& sig = sigs[trial % 3];
    Structure m = RandomStructure(sig, 1 + static_cast<int>(rng() % 5), 0.3,
                                  rng);
    Structure n = rng() % 2 ? Permuted(m, rng)
                            : RandomStructure(sig, m.size(), 0.3, rng);
    for (int w = 1; w <= 2; ++w) {
      std::vector<Tuple> ta, tb;
      oracle::AllTuples(m.size(), w, ta);
      oracle::AllTuples(n.size(), w, tb);
      for (const Tuple& x : ta) {
        for (const Tuple& y : tb) {
          bool want = oracle::SameQfType(m, x, n, y);
          bool got = ComputeQfType(m, x) == ComputeQfType(n, y);
          ASSERT_EQ(got, want) << "trial " << trial;
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(QfCopiesTest, FrozenExamples) {
  Tuple a{0, 1};
  EXPECT_EQ(EnumerateQfCopies(PureSet(4), a).size(), 12u);
  Tuple b{0, 2};
  auto copies = EnumerateQfCopies(LinearOrder(4), b);
  EXPECT_EQ(copies, (std::vector<Tuple>{
                        {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  Tuple single{2};
  EXPECT_EQ(EnumerateQfCopies(CompleteGraph(5), single).size(), 5u);
}

TEST(QfCopiesTest, RejectsRepeatedEntries) {
  Tuple bad{1, 1};
  EXPECT_THROW(EnumerateQfCopies(PureSet(3), bad), PreconditionError);
}

TEST(QfCopiesTest, MatchesTypeFilter) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    Structure m = RandomStructure(trial % 2 ? MixedSignature()
                                            : ConstantSignature(),
                                  1 + static_cast<int>(rng() % 5), 0.3, rng);
    int w = 1 + static_cast<int>(rng() % std::min(3, m.size()));
    auto cand = AllInjective(m.size(), w);
    const Tuple& a = cand[rng() % cand.size()];
    std::vector<Tuple> want;
    for (const Tuple& b : cand) {
      if (oracle::SameQfType(m, a, m, b)) want.push_back(b);
    }
    EXPECT_EQ(EnumerateQfCopies(m, a), want);
  }
}

TEST(CanonicalTest, InvariantUnderRelabelling) {
  std::mt19937_64 rng(31);
  const Signature sigs[] = {GraphSignature(), MixedSignature(),
                            ConstantSignature(), OrderedGraphSignature()};
  for (int trial = 0; trial < 200; ++trial) {
    Structure m = RandomStructure(sigs[trial % 4],
                                  1 + static_cast<int>(rng() % 6), 0.35, rng);
    Structure p = Permuted(m, rng);
    Structure cm = CanonicalForm(m);
    EXPECT_EQ(cm, CanonicalForm(p));
    EXPECT_EQ(CanonicalForm(cm), cm);
    EXPECT_TRUE(IsIsomorphic(m, p));
  }
}

TEST(CanonicalTest, FrozenExamples) {
  Structure lo = LinearOrder(3);
  Structure reversed(LinearOrderSignature(), 3);
  reversed.AddTuple(0, {2, 1});
  reversed.AddTuple(0, {2, 0});
  reversed.AddTuple(0, {1, 0});
  EXPECT_EQ(CanonicalForm(lo), CanonicalForm(reversed));
  EXPECT_FALSE(IsIsomorphic(CompleteGraph(2), Graph(2, {})));
  EXPECT_THROW(IsIsomorphic(LinearOrder(2), CompleteGraph(2)),
               SignatureMismatchError);
}

TEST(CanonicalTest, IsomorphismIsAnEquivalenceOnSmallCorpus) {
  std::mt19937_64 rng(37);
  std::vector<Structure> corpus;
  for (int i = 0; i < 40; ++i) {
    corpus.push_back(RandomStructure(MixedSignature(),
                                     2 + static_cast<int>(rng() % 3), 0.3,
                                     rng));
    if (i % 3 == 0) corpus.push_back(Permuted(corpus.back(), rng));
  }
  const int n = static_cast<int>(corpus.size());
  std::vector<std::vector<bool>> iso(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      iso[i][j] = IsIsomorphic(corpus[i], corpus[j]);
      ASSERT_EQ(iso[i][j], oracle::Isomorphic(corpus[i], corpus[j]));
    }
  }
  for (int i = 0; i < n; ++i) {
    EXPECT_TRUE(iso[i][i]);
    for (int j = 0; j < n; ++j) {
      EXPECT_EQ(iso[i][j], iso[j][i]);
      for (int k = 0; k < n; ++k) {
        if (iso[i][j] && iso[j][k]) EXPECT_TRUE(iso[i][k]);
      }
    }
  }
}

TEST(CanonicalTest, GraphIsomorphismClassCounts) {
  // Non-isomorphic graphs on 4 vertices: 11; on 5 vertices: 34.
  for (auto [n, want] : {std::pair{4, 11}, std::pair{5, 34}}) {
    std::vector<std::pair<Element, Element>> pairs;
    for (Element i = 0; i < n; ++i) {
      for (Element j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    std::set<std::string> keys;
    for (uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      std::vector<std::pair<Element, Element>> edges;
      for (size_t b = 0; b < pairs.size(); ++b) {
        if (mask >> b & 1) edges.push_back(pairs[b]);
      }
      keys.insert(CanonicalKey(Graph(n, edges)));
    }
    EXPECT_EQ(static_cast<int>(keys.size()), want);
  }
}

TEST(CanonicalTest, PointedKeyMatchesOrbits) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    Structure m = RandomStructure(MixedSignature(), 4, 0.35, rng);
    AutomorphismGroup aut = ComputeAutomorphismGroup(m);
    for (const Tuple& a : AllInjective(4, 2)) {
      for (const Tuple& b : AllInjective(4, 2)) {
        bool same_orbit = false;
        for (const Embedding& g : aut.elements()) {
          if (g(a[0]) == b[0] && g(a[1]) == b[1]) same_orbit = true;
        }
        EXPECT_EQ(PointedCanonicalKey(m, a) == PointedCanonicalKey(m, b),
                  same_orbit);
      }
    }
  }
}

}  // namespace
}  // namespace ramseyqf
