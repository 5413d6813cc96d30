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

#include "ramseyqf/structure.h"

#include <algorithm>

#include "ramseyqf/error.h"

namespace ramseyqf {

namespace {
// Above this many cells the dense lookup tables are skipped.
constexpr int64_t kMaxDenseCells = int64_t{1} << 22;
}  // namespace

void Signature::CheckFresh(std::string_view name) const {
  if (name.empty()) throw InputError("empty symbol name");
  if (Lookup(name).has_value()) {
    throw InputError("duplicate symbol '" + std::string(name) + "'");
  }
}

int Signature::AddRelation(std::string name, int arity) {
  CheckFresh(name);
  if (arity < 1) {
    throw InputError("relation '" + name + "' must have arity >= 1");
  }
  relations_.push_back({std::move(name), arity});
  return num_relations() - 1;
}

int Signature::AddFunction(std::string name, int arity) {
  CheckFresh(name);
  if (arity < 1) {
    throw InputError("function '" + name + "' must have arity >= 1");
  }
  functions_.push_back({std::move(name), arity});
  return num_functions() - 1;
}

int Signature::AddConstant(std::string name) {
  CheckFresh(name);
  constants_.push_back(std::move(name));
  return num_constants() - 1;
}

std::optional<Signature::Symbol> Signature::Lookup(
    std::string_view name) const {
  for (int i = 0; i < num_relations(); ++i) {
    if (relations_[i].name == name) return Symbol{SymbolKind::kRelation, i};
  }
  for (int i = 0; i < num_functions(); ++i) {
    if (functions_[i].name == name) return Symbol{SymbolKind::kFunction, i};
  }
  for (int i = 0; i < num_constants(); ++i) {
    if (constants_[i] == name) return Symbol{SymbolKind::kConstant, i};
  }
  return std::nullopt;
}

bool Signature::SameSymbols(const Signature& other) const {
  return relations_ == other.relations_ && functions_ == other.functions_ &&
         constants_ == other.constants_;
}

void RequireSameSymbols(const Signature& a, const Signature& b,
                        std::string_view context) {
  if (!a.SameSymbols(b)) {
    throw SignatureMismatchError(std::string(context) + ": '" + a.name() +
                                 "' vs '" + b.name() + "'");
  }
}

bool DenseSpaceFits(int arity, int domain_size) {
  int64_t cells = 1;
  for (int i = 0; i < arity; ++i) {
    cells *= std::max(domain_size, 1);
    if (cells > kMaxDenseCells) return false;
  }
  return true;
}

int64_t DenseIndex(std::span<const Element> tuple, int domain_size) {
  int64_t index = 0;
  for (auto it = tuple.rbegin(); it != tuple.rend(); ++it) {
    index = index * domain_size + *it;
  }
  return index;
}

RelationTable::RelationTable(int arity, int domain_size)
    : arity_(arity), domain_size_(domain_size) {
  if (DenseSpaceFits(arity, domain_size)) {
    int64_t cells = 1;
    for (int i = 0; i < arity; ++i) cells *= domain_size;
    dense_.assign(static_cast<size_t>(cells), false);
  }
}

bool RelationTable::Contains(std::span<const Element> tuple) const {
  if (domain_size_ == 0) return false;
  if (!dense_.empty()) return dense_[DenseIndex(tuple, domain_size_)];
  return tuples_.count(Tuple(tuple.begin(), tuple.end())) > 0;
}

void RelationTable::Insert(std::span<const Element> tuple) {
  tuples_.insert(Tuple(tuple.begin(), tuple.end()));
  if (!dense_.empty()) dense_[DenseIndex(tuple, domain_size_)] = true;
}

FunctionTable::FunctionTable(int arity, int domain_size)
    : arity_(arity), domain_size_(domain_size) {
  if (DenseSpaceFits(arity, domain_size)) {
    int64_t cells = 1;
    for (int i = 0; i < arity; ++i) cells *= domain_size;
    dense_.assign(static_cast<size_t>(cells), kUndefined);
  }
}

Element FunctionTable::Apply(std::span<const Element> args) const {
  if (domain_size_ == 0) return kUndefined;
  if (!dense_.empty()) return dense_[DenseIndex(args, domain_size_)];
  auto it = entries_.find(Tuple(args.begin(), args.end()));
  return it == entries_.end() ? kUndefined : it->second;
}

bool FunctionTable::Define(std::span<const Element> args, Element value) {
  auto [it, inserted] =
      entries_.emplace(Tuple(args.begin(), args.end()), value);
  if (!inserted) return false;
  if (!dense_.empty()) dense_[DenseIndex(args, domain_size_)] = value;
  return true;
}

Structure::Structure(Signature signature, int domain_size, std::string name)
    : signature_(std::move(signature)),
      domain_size_(domain_size),
      name_(std::move(name)) {
  if (domain_size < 0) throw InputError("negative domain size");
  for (const SymbolInfo& r : signature_.relations()) {
    relations_.emplace_back(r.arity, domain_size_);
  }
  for (const SymbolInfo& f : signature_.functions()) {
    functions_.emplace_back(f.arity, domain_size_);
  }
  constants_.assign(signature_.num_constants(), kUndefined);
}

void Structure::AddTuple(int relation, std::span<const Element> tuple) {
  if (relation < 0 || relation >= signature_.num_relations()) {
    throw InputError("unknown relation index");
  }
  const SymbolInfo& info = signature_.relations()[relation];
  if (static_cast<int>(tuple.size()) != info.arity) {
    throw InputError("arity mismatch for relation '" + info.name + "'");
  }
  for (Element e : tuple) {
    if (!InDomain(e)) {
      throw InputError("element " + std::to_string(e) +
                       " out of range in relation '" + info.name + "'");
    }
  }
  relations_[relation].Insert(tuple);
}

void Structure::SetFunctionValue(int function, std::span<const Element> args,
                                 Element value) {
  if (function < 0 || function >= signature_.num_functions()) {
    throw InputError("unknown function index");
  }
  const SymbolInfo& info = signature_.functions()[function];
  if (static_cast<int>(args.size()) != info.arity) {
    throw InputError("arity mismatch for function '" + info.name + "'");
  }
  for (Element e : args) {
    if (!InDomain(e)) {
      throw InputError("element " + std::to_string(e) +
                       " out of range in function '" + info.name + "'");
    }
  }
  if (!InDomain(value)) {
    throw InputError("value " + std::to_string(value) +
                     " out of range in function '" + info.name + "'");
  }
  if (!functions_[function].Define(args, value)) {
    throw InputError("doubled value for function '" + info.name + "'");
  }
}

void Structure::SetConstant(int constant, Element value) {
  if (constant < 0 || constant >= signature_.num_constants()) {
    throw InputError("unknown constant index");
  }
  if (!InDomain(value)) {
    throw InputError("constant '" + signature_.constants()[constant] +
                     "' out of range");
  }
  constants_[constant] = value;
}

void Structure::Validate() const {
  for (int c = 0; c < signature_.num_constants(); ++c) {
    if (constants_[c] == kUndefined) {
      throw InputError("constant '" + signature_.constants()[c] +
                       "' has no value");
    }
  }
}

bool operator==(const Structure& a, const Structure& b) {
  if (!a.signature_.SameSymbols(b.signature_)) return false;
  if (a.domain_size_ != b.domain_size_) return false;
  for (int r = 0; r < a.signature_.num_relations(); ++r) {
    if (a.relations_[r].tuples() != b.relations_[r].tuples()) return false;
  }
  for (int f = 0; f < a.signature_.num_functions(); ++f) {
    if (a.functions_[f].entries() != b.functions_[f].entries()) return false;
  }
  return a.constants_ == b.constants_;
}

Structure Structure::Relabel(std::span<const Element> new_label_of) const {
  Structure out(signature_, domain_size_, name_);
  Tuple buffer;
  for (int r = 0; r < signature_.num_relations(); ++r) {
    for (const Tuple& t : relations_[r].tuples()) {
      buffer.clear();
      for (Element e : t) buffer.push_back(new_label_of[e]);
      out.relations_[r].Insert(buffer);
    }
  }
  for (int f = 0; f < signature_.num_functions(); ++f) {
    for (const auto& [args, value] : functions_[f].entries()) {
      buffer.clear();
      for (Element e : args) buffer.push_back(new_label_of[e]);
      out.functions_[f].Define(buffer, new_label_of[value]);
    }
  }
  for (int c = 0; c < signature_.num_constants(); ++c) {
    out.constants_[c] =
        constants_[c] == kUndefined ? kUndefined : new_label_of[constants_[c]];
  }
  return out;
}

}  // namespace ramseyqf
