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

// Finite first-order structures over the domain {0, ..., n-1}.
//
// A Structure carries relation tables, *partial* function tables and total
// constant assignments. Partial functions let finite fragments of finitely
// generated infinite structures (successor chains and the like) be
// represented; embeddings have to preserve definedness forward only.

#ifndef RAMSEYQF_STRUCTURE_H_
#define RAMSEYQF_STRUCTURE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ramseyqf {

using Element = int;
using Tuple = std::vector<Element>;

inline constexpr Element kUndefined = -1;

struct SymbolInfo {
  std::string name;
  int arity = 0;

  friend bool operator==(const SymbolInfo&, const SymbolInfo&) = default;
};

enum class SymbolKind { kRelation, kFunction, kConstant };

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::string name) : name_(std::move(name)) {}

  // Each Add* throws InputError on a duplicate name or an arity < 1.
  int AddRelation(std::string name, int arity);
  int AddFunction(std::string name, int arity);
  int AddConstant(std::string name);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<SymbolInfo>& relations() const { return relations_; }
  const std::vector<SymbolInfo>& functions() const { return functions_; }
  const std::vector<std::string>& constants() const { return constants_; }

  int num_relations() const { return static_cast<int>(relations_.size()); }
  int num_functions() const { return static_cast<int>(functions_.size()); }
  int num_constants() const { return static_cast<int>(constants_.size()); }

  bool IsRelational() const { return functions_.empty() && constants_.empty(); }

  struct Symbol {
    SymbolKind kind;
    int index;
  };
  std::optional<Symbol> Lookup(std::string_view name) const;

  // Same symbols with the same arities in the same order; the name is
  // ignored.
  bool SameSymbols(const Signature& other) const;

 private:
  void CheckFresh(std::string_view name) const;

  std::string name_;
  std::vector<SymbolInfo> relations_;
  std::vector<SymbolInfo> functions_;
  std::vector<std::string> constants_;
};

// Throws SignatureMismatchError unless a and b have the same symbols.
void RequireSameSymbols(const Signature& a, const Signature& b,
                        std::string_view context);

// Mixed-radix index of a tuple over a domain of size n, or -1 when the
// dense space n^arity is too large to be worth materialising.
int64_t DenseIndex(std::span<const Element> tuple, int domain_size);
bool DenseSpaceFits(int arity, int domain_size);

class RelationTable {
 public:
  RelationTable(int arity, int domain_size);

  int arity() const { return arity_; }
  bool Contains(std::span<const Element> tuple) const;
  void Insert(std::span<const Element> tuple);
  const std::set<Tuple>& tuples() const { return tuples_; }
  int size() const { return static_cast<int>(tuples_.size()); }

 private:
  int arity_;
  int domain_size_;
  std::set<Tuple> tuples_;
  std::vector<bool> dense_;  // empty when the dense space is too large
};

class FunctionTable {
 public:
  FunctionTable(int arity, int domain_size);

  int arity() const { return arity_; }
  // kUndefined when f(args) has no value.
  Element Apply(std::span<const Element> args) const;
  // Returns false if args already had a (possibly equal) value.
  bool Define(std::span<const Element> args, Element value);
  const std::map<Tuple, Element>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }

 private:
  int arity_;
  int domain_size_;
  std::map<Tuple, Element> entries_;
  std::vector<Element> dense_;
};

class Structure {
 public:
  Structure() : Structure(Signature(), 0) {}
  Structure(Signature signature, int domain_size, std::string name = "");

  const Signature& signature() const { return signature_; }
  int size() const { return domain_size_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Mutators used while building; all validate ranges and throw InputError.
  void AddTuple(int relation, std::span<const Element> tuple);
  void AddTuple(int relation, std::initializer_list<Element> tuple) {
    AddTuple(relation, std::span<const Element>(tuple.begin(), tuple.size()));
  }
  void SetFunctionValue(int function, std::span<const Element> args,
                        Element value);
  void SetFunctionValue(int function, std::initializer_list<Element> args,
                        Element value) {
    SetFunctionValue(function,
                     std::span<const Element>(args.begin(), args.size()),
                     value);
  }
  void SetConstant(int constant, Element value);

  bool Holds(int relation, std::span<const Element> tuple) const {
    return relations_[relation].Contains(tuple);
  }
  Element Apply(int function, std::span<const Element> args) const {
    return functions_[function].Apply(args);
  }
  Element Constant(int constant) const { return constants_[constant]; }

  const RelationTable& relation(int index) const { return relations_[index]; }
  const FunctionTable& function(int index) const { return functions_[index]; }
  const std::vector<Element>& constant_values() const { return constants_; }

  bool InDomain(Element e) const { return e >= 0 && e < domain_size_; }

  // Throws InputError if a constant is unassigned.
  void Validate() const;

  // Structural equality: same symbols, same domain size, same tables.
  // Names are ignored.
  friend bool operator==(const Structure& a, const Structure& b);

  // Isomorphic copy in which element x is renamed new_label_of[x]; the
  // argument must be a permutation of the domain.
  Structure Relabel(std::span<const Element> new_label_of) const;

 private:
  Signature signature_;
  int domain_size_;
  std::string name_;
  std::vector<RelationTable> relations_;
  std::vector<FunctionTable> functions_;
  std::vector<Element> constants_;
};

}  // namespace ramseyqf

#endif  // RAMSEYQF_STRUCTURE_H_
