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

// Explicit finite classes of structures and bounded checks of their
// amalgamation and Ramsey properties.
//
// A FiniteClass lists the class up to a size bound: a structure of size at
// most `bound` is in the class iff it is isomorphic to a member. Verdicts
// are claims about this finite slice. A property FAILs only when the slice
// itself rules it out; a missing witness that could lie above the bound
// gives INCONCLUSIVE.

#ifndef RAMSEYQF_CLASSES_H_
#define RAMSEYQF_CLASSES_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ramseyqf/arrows.h"
#include "ramseyqf/qftype.h"
#include "ramseyqf/structure.h"

namespace ramseyqf {

enum class ClassGenerator {
  kLinearOrders,
  kPureSets,
  kGraphs,
  kOrderedGraphs,
  kSuccessorChains,
  kFromFile,
};
std::string_view ClassGeneratorName(ClassGenerator g);
// Accepts the names printed by ClassGeneratorName except "from-file".
ClassGenerator ParseClassGenerator(std::string_view name);

struct FiniteClass {
  std::string name;
  Signature signature;
  // Canonical forms, pairwise non-isomorphic, sorted by size then key.
  std::vector<Structure> members;
  std::vector<std::string> keys;  // CanonicalKey per member
  int bound = 0;
  ClassGenerator generator = ClassGenerator::kFromFile;

  int size() const { return static_cast<int>(members.size()); }
  // Index of the member isomorphic to m, if any.
  std::optional<int> IndexOf(const Structure& m) const;
  // Members of size <= max_size, in class order.
  std::vector<Structure> MembersUpTo(int max_size) const;
};

// Canonicalizes, deduplicates and sorts. bound < 0 means the largest member
// size. Throws SignatureMismatchError on mixed languages and InputError
// when a member exceeds the bound.
FiniteClass MakeClass(std::string name, const Signature& signature,
                      const std::vector<Structure>& members, int bound = -1,
                      ClassGenerator generator = ClassGenerator::kFromFile);

// Every structure of the generator's kind with at most `upto` points, the
// empty structure included. Successor chains are the finite chains
// 0 -> 1 -> ... -> n-1 with s undefined at the top.
FiniteClass GenerateClass(ClassGenerator generator, int upto);

enum class PropertyVerdict { kPass, kFail, kInconclusive };
std::string_view PropertyVerdictName(PropertyVerdict v);
PropertyVerdict ParsePropertyVerdict(std::string_view name);

// One witness or counterexample. Member indices refer to the class; `maps`
// are embeddings or point subsets, depending on `kind`:
//   sub       members {m, k}, maps {S}: <S> in member m is isomorphic to k.
//   missing   members {m}, maps {S}: <S> in member m matches no member.
//   joint     members {i, j, k}, maps {g, h}: g: i -> k and h: j -> k.
//   amalgam   members {a, b, c, d}, maps {e, f, g, h}: g o e = h o f.
//   no-joint, no-amalgam: the configuration without the last member/maps.
//   arrow     members {a, b}, candidates {c}: C -> (B)^A_2 with `proof`.
//   no-arrow  members {a, b}: `colorings` holds one bad colouring per
//             candidate listed in `candidates`.
//   subset-arrow / no-subset-arrow: as arrow, with members {m} and maps
//             {b_tuple, a_tuple} over member m.
struct Evidence {
  std::string kind;
  std::vector<int> members;
  std::vector<Tuple> maps;
  std::string proof;
  std::vector<int> candidates;
  std::vector<std::vector<int>> colorings;
  // no-* items: true when the finite slice refutes the property, false when
  // the bound or the node budget is the only obstruction.
  bool definite = false;
  std::string note;
};

struct ErpBounds {
  int max_a = 3;
  int max_b = 3;
  int witness = 6;
};

struct PropertyReport {
  std::string property;  // HP, JEP, AP, ERP, f-ERP
  PropertyVerdict verdict = PropertyVerdict::kInconclusive;
  int class_bound = 0;
  std::optional<ErpBounds> erp_bounds;  // ERP and f-ERP
  // One item per required check, in enumeration order.
  std::vector<Evidence> evidence;
  int64_t search_nodes = 0;
};

PropertyReport HpCheck(const FiniteClass& f);
PropertyReport JepCheck(const FiniteClass& f);
PropertyReport ApCheck(const FiniteClass& f);

PropertyReport ErpCheck(const FiniteClass& f, const ErpBounds& bounds,
                        const ArrowConfig& config = {});
PropertyReport FErpCheck(const FiniteClass& f, const ErpBounds& bounds,
                         const ArrowConfig& config = {});

// Re-checks every evidence item of a report against the class without
// colouring search. Returns an empty string when the report is consistent,
// otherwise the first problem found.
std::string VerifyPropertyReport(const FiniteClass& f,
                                 const PropertyReport& report);

struct RigidityEntry {
  int member = 0;
  int automorphisms = 1;
};
std::vector<RigidityEntry> RigidityScan(const FiniteClass& f);

enum class OrderVerdict { kOrderable, kNotOrderable, kInconclusive };
std::string_view OrderVerdictName(OrderVerdict v);

// A realized binary type of distinct points with one realizer.
struct BinaryType {
  QfType type;
  int member = 0;
  Element x = 0, y = 0;
  int transpose = 0;  // index of the transposed type
};

struct OrderabilityResult {
  OrderVerdict verdict = OrderVerdict::kInconclusive;
  std::vector<BinaryType> types;  // in order of first realization
  std::vector<int> phi;           // ORDERABLE: indices into `types`
  // NOT-ORDERABLE. Either a symmetric type (index into `types`), or the
  // leaves of the exhausted decision tree: decisions[i] is a choice per
  // transpose pair (in order of the pair's first type) and the violating
  // triple (member, x, y, z) of the transitivity axiom.
  std::optional<int> symmetric_type;
  struct Leaf {
    std::vector<bool> decisions;
    int member = 0;
    Element x = 0, y = 0, z = 0;
  };
  std::vector<Leaf> leaves;
  int64_t nodes = 0;
};

OrderabilityResult OrderabilitySearch(const FiniteClass& f);

// Replays a result: success is re-checked on every member, an exhaustion
// must cover every assignment. Empty string when valid.
std::string VerifyOrderability(const FiniteClass& f,
                               const OrderabilityResult& result);

// Phi as a set of types, for DefineByTypeUnion.
std::set<QfType> PhiTypes(const OrderabilityResult& result);

// The least B' inside b carrying every qf copy of `a`: the union of the
// points of all copies. Sorted.
std::vector<Element> ElfMinimize(const Structure& b,
                                 std::span<const Element> a);

}  // namespace ramseyqf

#endif  // RAMSEYQF_CLASSES_H_
