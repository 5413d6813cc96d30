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

// Canonical labelling of whole finite structures.
//
// Individualisation-refinement: colours are refined by the multiset of
// coloured tuples each element occurs in until stable, then the search
// individualises each member of the first non-singleton cell in turn. Leaves
// are compared by their relabelled tables and the lexicographically least
// one wins. Elements whose transposition is an automorphism ("twins") give
// isomorphic subtrees, so only one twin per cell is expanded.

#ifndef RAMSEYQF_CANONICAL_H_
#define RAMSEYQF_CANONICAL_H_

#include <span>
#include <string>
#include <vector>

#include "ramseyqf/structure.h"

namespace ramseyqf {

struct CanonicalLabeling {
  // new_label_of[x] is the canonical name of element x.
  std::vector<Element> new_label_of;
  std::string key;
};

CanonicalLabeling ComputeCanonicalLabeling(const Structure& m);

// Canonical labelling with the entries of `tuple` individualised in order.
// Equal keys <=> an isomorphism carries one tuple onto the other; inside a
// single structure, <=> the tuples share an automorphism orbit.
std::string PointedCanonicalKey(const Structure& m,
                                std::span<const Element> tuple);

std::string CanonicalKey(const Structure& m);

// Relabelled copy; idempotent and isomorphism invariant.
Structure CanonicalForm(const Structure& m);

// Throws SignatureMismatchError when the languages differ.
bool IsIsomorphic(const Structure& a, const Structure& b);

}  // namespace ramseyqf

#endif  // RAMSEYQF_CANONICAL_H_
