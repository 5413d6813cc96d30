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

// Quantifier-free types of tuples.
//
// The quantifier-free type of a tuple a in M is determined by the pointed
// structure (<a>, a): the substructure generated by a, with the positions of
// a marked. Every element of <a> is the value of a term in a, so a pointed
// isomorphism <a> -> <b> is forced term by term and the pointed structure has
// a canonical labelling obtained by naming elements in order of discovery:
// tuple entries first, then constants, then new function values in a fixed
// symbol and argument order. The textual encoding of the relabelled
// structure is the type's key.

#ifndef RAMSEYQF_QFTYPE_H_
#define RAMSEYQF_QFTYPE_H_

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ramseyqf/structure.h"

namespace ramseyqf {

class QfType {
 public:
  QfType() = default;
  QfType(int arity, std::string key) : arity_(arity), key_(std::move(key)) {}

  int arity() const { return arity_; }
  // Canonical encoding; equal keys <=> pointed-isomorphic generated
  // substructures.
  const std::string& key() const { return key_; }
  // First 8 hex digits of the SHA-256 of the key.
  std::string ShortDigest() const;

  friend bool operator==(const QfType& a, const QfType& b) {
    return a.key_ == b.key_;
  }
  friend std::strong_ordering operator<=>(const QfType& a, const QfType& b) {
    return a.key_ <=> b.key_;
  }

 private:
  int arity_ = 0;
  std::string key_;
};

QfType ComputeQfType(const Structure& m, std::span<const Element> tuple);

// Every injective tuple b of `host` with qftp_host(b) = qftp_ref(a), in
// lexicographic order. `allowed`, when non-empty, restricts the entries of b
// to a point set; types are still computed in the whole host. Throws
// PreconditionError when a repeats an element and SignatureMismatchError when
// the languages differ.
std::vector<Tuple> EnumerateQfCopiesOf(const Structure& host,
                                       const Structure& ref,
                                       std::span<const Element> a,
                                       std::span<const Element> allowed = {});

// Copies of a tuple of m inside m itself.
std::vector<Tuple> EnumerateQfCopies(const Structure& m,
                                     std::span<const Element> tuple);

// Atomic diagram of the tuple entries alone: equalities, relation atoms among
// the entries, function atoms f(entries) = entry, and constant equalities.
// Unlike the full type this ignores elements outside the tuple.
std::string AtomicDiagramKey(const Structure& m,
                             std::span<const Element> tuple);

bool IsInjective(std::span<const Element> tuple);

}  // namespace ramseyqf

#endif  // RAMSEYQF_QFTYPE_H_
