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

// Sequences of tuples indexed by a finite structure, and their
// indiscernibility relative to a set of formulas.
//
// Index tuples are all tuples over the index domain (repetitions allowed) of
// length 1..cap, in order of length and then lexicographically. Two index
// tuples are compared only when they have the same qf type in the index
// structure.

#ifndef RAMSEYQF_INDISCERNIBLES_H_
#define RAMSEYQF_INDISCERNIBLES_H_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ramseyqf/embedding.h"
#include "ramseyqf/formula.h"
#include "ramseyqf/qftype.h"
#include "ramseyqf/structure.h"

namespace ramseyqf {

inline constexpr int kDefaultIndexArityCap = 4;

struct IndexedSequence {
  Structure index;
  Structure target;
  int width = 1;
  std::vector<Tuple> tuples;  // tuples[i] is the tuple at index point i

  // Throws InputError unless there is one tuple of length `width` over the
  // target per index point.
  void Validate() const;

  // The tuples at the entries of `index_tuple`, concatenated.
  Tuple Concat(std::span<const Element> index_tuple) const;
};

// The sequence (a_{g(i)} : i in sub), for an embedding g: sub -> index.
IndexedSequence Reindex(const IndexedSequence& seq, const Structure& sub,
                        const Embedding& g);

// Key of the delta-type of a target tuple: the truth value of every formula
// under every assignment of its free variables to positions of the tuple.
// With all_types, the automorphism orbit of the tuple.
std::string DeltaTypeKey(const Structure& m, const FormulaSet& delta,
                         std::span<const Element> tuple);

// The index tuples i, j have the same qf type but different delta-types.
// `formula` and `positions` name one separating formula instance (formula
// is -1 in all_types mode).
struct IndViolation {
  Tuple i;
  Tuple j;
  int formula = -1;
  Tuple positions;
};

struct IndiscernibilityReport {
  bool indiscernible = true;
  int cap = 0;
  int64_t index_tuples = 0;
  int64_t violation_count = 0;
  // The first max_violations violations. Each pairs the first index tuple
  // of its qf class with a later tuple of a different delta-type.
  std::vector<IndViolation> violations;
};

IndiscernibilityReport IsIndiscernible(const IndexedSequence& seq,
                                       const FormulaSet& delta,
                                       int cap = kDefaultIndexArityCap,
                                       int max_violations = 100);

struct LocalBasisReport {
  bool based = true;
  int cap = 0;
  // For each index tuple of J in order, the matching index tuple of I.
  // Stops at the first tuple without a match.
  std::vector<std::pair<Tuple, Tuple>> witnesses;
  std::optional<Tuple> unmatched;
};

// J is locally based on I: every index tuple of J has an index tuple of I of
// the same qf type whose delta-type is the same. The two index structures
// must share a signature; the targets and widths must be equal
// (PreconditionError otherwise). The index tuple itself is preferred as the
// witness when it qualifies.
LocalBasisReport CheckLocallyBased(const IndexedSequence& j,
                                   const IndexedSequence& i,
                                   const FormulaSet& delta,
                                   int cap = kDefaultIndexArityCap);

// phi(a_i) -> phi(a_j) for the formula delta.formulas[formula]; i and j have
// the same qf type in the index structure.
struct IndConstraint {
  Tuple i;
  Tuple j;
  int formula = 0;
};

struct IndConstraintSet {
  int cap = 0;
  int width = 1;
  std::vector<IndConstraint> constraints;
  // Formulas whose index length (arity / width) exceeds the cap.
  std::vector<int> skipped_formulas;
};

// Every constraint with index tuples of length <= cap, reflexive pairs
// included, grouped by formula and then by first tuple. Each formula needs
// an arity divisible by `width`; all_types sets are rejected
// (PreconditionError).
IndConstraintSet IndConstraints(const Structure& index,
                                const FormulaSet& delta,
                                int cap = kDefaultIndexArityCap,
                                int width = 1);

struct FiniteSatResult {
  bool satisfiable = false;
  Tuple a;  // A, sorted
  Tuple b;  // f(a[k]) = b[k]
  int64_t relocations = 0;
  // Unsatisfiable: each relocation tried with the index of a violated
  // constraint.
  std::vector<std::pair<Tuple, int>> refutations;
};

// Looks for f: A -> N preserving the qf type of A (as a sorted tuple) such
// that x_i := a_{f(i)} satisfies every constraint whose index entries lie in
// A. The identity is tried first, then the other copies lexicographically.
FiniteSatResult FiniteSatisfiabilityCheck(
    std::span<const IndConstraint> gamma, const FormulaSet& delta,
    std::span<const Element> a, const IndexedSequence& seq);

struct ExtractionResult {
  bool found = false;
  Embedding g;                // pattern index -> source index
  IndexedSequence pattern;    // the source re-indexed along g
  int cap = 0;
  int64_t candidates = 0;     // embeddings examined
  int classes = 0;            // qf classes of pattern index tuples
  // Not found: per candidate in order, two pattern index tuples of the same
  // qf type whose images have different delta-types.
  std::vector<std::pair<Tuple, Tuple>> refutations;
};

// Searches binom(index, target) for a copy on which every qf class of index
// tuples of length <= cap has a single delta-type. cap < 0 means the size
// of `target`. Throws PreconditionError when target does not embed. A found
// pattern is re-checked with IsIndiscernible and CheckLocallyBased.
ExtractionResult ExtractIndiscerniblePattern(const IndexedSequence& seq,
                                             const Structure& target,
                                             const FormulaSet& delta,
                                             int cap = -1);

// Psi = { qftp(i) : M |= phi(a_i) } over index tuples of length
// arity / width, with phi(a_i) <=> qftp(i) in Psi checked for every tuple.
// Throws PreconditionError naming two tuples when the sequence is not
// {phi}-indiscernible.
std::set<QfType> InducedTypeUnionRelation(const IndexedSequence& seq,
                                          const Formula& phi);

// Index tuples of lengths min_len..max_len over a domain of size n.
std::vector<Tuple> IndexTuples(int n, int min_len, int max_len);

}  // namespace ramseyqf

#endif  // RAMSEYQF_INDISCERNIBLES_H_
