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

#ifndef RAMSEYQF_EMBEDDING_H_
#define RAMSEYQF_EMBEDDING_H_

#include <functional>
#include <span>
#include <vector>

#include "ramseyqf/structure.h"

namespace ramseyqf {

// An injective map from the domain of a source structure into the domain of
// a target. The structures themselves are not owned; every operation that
// needs them takes them explicitly.
struct Embedding {
  std::vector<Element> map;

  Element operator()(Element x) const { return map[x]; }
  int size() const { return static_cast<int>(map.size()); }

  friend bool operator==(const Embedding&, const Embedding&) = default;
  friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

// outer o inner.
Embedding Compose(const Embedding& outer, const Embedding& inner);

// Atom-by-atom check, independent of the enumeration code: injective, in
// range, relations preserved and reflected, defined function values carried
// to equal defined values, constants preserved.
bool IsEmbedding(const Structure& source, const Structure& target,
                 std::span<const Element> map);

// Calls visit(map) for every embedding of pattern into host in
// lexicographic order of the map; stops early when visit returns false.
void ForEachEmbedding(const Structure& host, const Structure& pattern,
                      const std::function<bool(const std::vector<Element>&)>&
                          visit);

// binom(host, pattern) in lexicographic order.
std::vector<Embedding> EnumerateEmbeddings(const Structure& host,
                                           const Structure& pattern);

bool Embeds(const Structure& host, const Structure& pattern);

// Closure of `elements` together with the constants under every defined
// function value; sorted.
std::vector<Element> Closure(const Structure& m,
                             std::span<const Element> elements);

struct Substructure {
  Structure structure;
  Embedding inclusion;  // sorted, so order-preserving on indices
};

Substructure GeneratedSubstructure(const Structure& m,
                                   std::span<const Element> elements);

// Induced substructure on exactly `elements` (sorted, duplicate free). The
// caller is responsible for `elements` being closed; function values leaving
// the set are dropped.
Substructure InducedSubstructure(const Structure& m,
                                 std::span<const Element> elements);

class AutomorphismGroup {
 public:
  explicit AutomorphismGroup(std::vector<Embedding> elements)
      : elements_(std::move(elements)) {}

  // Identity first, the rest in lexicographic order.
  const std::vector<Embedding>& elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }

 private:
  std::vector<Embedding> elements_;
};

AutomorphismGroup ComputeAutomorphismGroup(const Structure& a);

bool IsRigid(const Structure& a);

// Up to `limit` non-identity automorphisms in lexicographic order.
std::vector<Embedding> SomeAutomorphisms(const Structure& a, int limit);

}  // namespace ramseyqf

#endif  // RAMSEYQF_EMBEDDING_H_
