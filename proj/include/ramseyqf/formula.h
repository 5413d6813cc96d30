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

// Terms and first-order formulas evaluated by model checking on finite
// structures.
//
// Grammar (loosest binding first):
//   formula := [ '[' var, ... ']' ] or
//   or      := and ( '|' and )*
//   and     := unary ( '&' unary )*
//   unary   := '!' unary | ('exists' | 'forall') var '.' or | '(' or ')'
//            | 'true' | 'false' | R '(' term, ... ')' | term ('=' | '!=') term
//   term    := var | c | f '(' term, ... ')'
// Identifiers that are not symbols of the signature are variables. Free
// variables are taken in order of first appearance unless listed in the
// optional bracket prefix. An atom containing an undefined function value is
// false; t != u abbreviates !(t = u).

#ifndef RAMSEYQF_FORMULA_H_
#define RAMSEYQF_FORMULA_H_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramseyqf/structure.h"

namespace ramseyqf {

struct Term {
  enum class Kind { kVariable, kConstant, kApply };
  Kind kind = Kind::kVariable;
  int index = 0;  // variable slot, constant or function index
  std::vector<Term> args;
};

// kUndefined when some function application on the way is undefined.
Element EvaluateTerm(const Structure& m, const Term& term,
                     std::span<const Element> env);

// Parses a term whose variables must come from `variables`; throws
// InputError otherwise.
Term ParseTerm(const Signature& signature, std::string_view text,
               const std::vector<std::string>& variables);

struct FormulaNode {
  enum class Kind {
    kTrue, kFalse, kRelation, kEquals, kNot, kAnd, kOr, kExists, kForall
  };
  Kind kind = Kind::kTrue;
  int index = 0;  // relation index or bound variable slot
  std::vector<Term> terms;
  std::vector<std::unique_ptr<FormulaNode>> children;
};

class Formula {
 public:
  // Throws InputError with a column number on malformed input.
  static Formula Parse(const Signature& signature, std::string_view text);

  int arity() const { return static_cast<int>(free_variables_.size()); }
  const std::vector<std::string>& free_variables() const {
    return free_variables_;
  }
  const std::string& text() const { return text_; }

  // `args` assigns the free variables in order. Throws PreconditionError on
  // an arity mismatch.
  bool Evaluate(const Structure& m, std::span<const Element> args) const;

 private:
  std::string text_;
  std::vector<std::string> free_variables_;
  int num_slots_ = 0;
  std::shared_ptr<const FormulaNode> root_;
};

// The formula set used for indiscernibility checks. `all_types` selects the
// full-type comparison (automorphism orbits of the finite target) instead of
// a finite list of formulas.
struct FormulaSet {
  std::vector<Formula> formulas;
  bool all_types = false;
};

// One formula per line or separated by ';'. The literal "ALL" selects
// all_types.
FormulaSet ParseFormulaSet(const Signature& signature, std::string_view text);

}  // namespace ramseyqf

#endif  // RAMSEYQF_FORMULA_H_
