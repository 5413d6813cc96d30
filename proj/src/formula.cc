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

#include "ramseyqf/formula.h"

#include <algorithm>
#include <cctype>

#include "ramseyqf/error.h"

namespace ramseyqf {

namespace {

constexpr int kBoundBase = 1 << 20;

struct Token {
  enum class Kind { kIdent, kPunct, kEnd };
  Kind kind;
  std::string text;
  int column;
};

std::vector<Token> Lex(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    unsigned char ch = text[i];
    if (std::isspace(ch)) {
      ++i;
      continue;
    }
    int column = static_cast<int>(i) + 1;
    if (std::isalnum(ch) || ch == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_')) {
        ++j;
      }
      out.push_back({Token::Kind::kIdent, std::string(text.substr(i, j - i)),
                     column});
      i = j;
      continue;
    }
    if (ch == '!' && i + 1 < text.size() && text[i + 1] == '=') {
      out.push_back({Token::Kind::kPunct, "!=", column});
      i += 2;
      continue;
    }
    if (std::string_view("()[],|&!=.").find(static_cast<char>(ch)) !=
        std::string_view::npos) {
      out.push_back({Token::Kind::kPunct, std::string(1, ch), column});
      ++i;
      continue;
    }
    throw InputError("formula column " + std::to_string(column) +
                     ": unexpected character '" + std::string(1, ch) + "'");
  }
  out.push_back({Token::Kind::kEnd, "", static_cast<int>(text.size()) + 1});
  return out;
}

class Parser {
 public:
  Parser(const Signature& sig, std::string_view text)
      : sig_(sig), tokens_(Lex(text)) {}

  // Variables are fixed in advance; no quantifiers or new names allowed.
  void FixVariables(const std::vector<std::string>& names) {
    free_ = names;
    declared_ = true;
  }

  Term ParseTermOnly() {
    Term t = ParseTermRule();
    Expect("");
    return t;
  }

  std::unique_ptr<FormulaNode> ParseFormula() {
    if (Peek("[")) {
      Next();
      declared_ = true;
      if (!Peek("]")) {
        while (true) {
          const Token& tok = NextIdent("variable name");
          if (std::find(free_.begin(), free_.end(), tok.text) != free_.end()) {
            Fail(tok, "variable listed twice");
          }
          free_.push_back(tok.text);
          if (Peek("]")) break;
          Expect(",");
        }
      }
      Expect("]");
    }
    auto root = ParseOr();
    Expect("");
    return root;
  }

  const std::vector<std::string>& free_variables() const { return free_; }
  int bound_count() const { return bound_count_; }

 private:
  const Token& Cur() const { return tokens_[pos_]; }
  bool Peek(std::string_view text) const {
    return Cur().kind != Token::Kind::kIdent && Cur().text == text;
  }
  bool PeekIdent(std::string_view text) const {
    return Cur().kind == Token::Kind::kIdent && Cur().text == text;
  }
  const Token& Next() { return tokens_[pos_++]; }

  [[noreturn]] void Fail(const Token& tok, const std::string& what) const {
    throw InputError("formula column " + std::to_string(tok.column) + ": " +
                     what + (tok.text.empty() ? "" : " near '" + tok.text + "'"));
  }

  void Expect(std::string_view text) {
    if (text.empty()) {
      if (Cur().kind != Token::Kind::kEnd) Fail(Cur(), "trailing input");
      return;
    }
    if (!Peek(text)) Fail(Cur(), "expected '" + std::string(text) + "'");
    Next();
  }

  const Token& NextIdent(const char* what) {
    if (Cur().kind != Token::Kind::kIdent) {
      Fail(Cur(), std::string("expected ") + what);
    }
    return Next();
  }

  std::unique_ptr<FormulaNode> Node(FormulaNode::Kind kind) {
    auto node = std::make_unique<FormulaNode>();
    node->kind = kind;
    return node;
  }

  std::unique_ptr<FormulaNode> ParseOr() {
    auto left = ParseAnd();
    if (!Peek("|")) return left;
    auto node = Node(FormulaNode::Kind::kOr);
    node->children.push_back(std::move(left));
    while (Peek("|")) {
      Next();
      node->children.push_back(ParseAnd());
    }
    return node;
  }

  std::unique_ptr<FormulaNode> ParseAnd() {
    auto left = ParseUnary();
    if (!Peek("&")) return left;
    auto node = Node(FormulaNode::Kind::kAnd);
    node->children.push_back(std::move(left));
    while (Peek("&")) {
      Next();
      node->children.push_back(ParseUnary());
    }
    return node;
  }

  std::unique_ptr<FormulaNode> ParseUnary() {
    if (Peek("!")) {
      Next();
      auto node = Node(FormulaNode::Kind::kNot);
      node->children.push_back(ParseUnary());
      return node;
    }
    if (Peek("(")) {
      Next();
      auto inner = ParseOr();
      Expect(")");
      return inner;
    }
    if (PeekIdent("exists") || PeekIdent("forall")) {
      bool exists = Cur().text == "exists";
      Next();
      const Token& var = NextIdent("bound variable");
      if (sig_.Lookup(var.text)) Fail(var, "symbol used as a variable");
      Expect(".");
      int slot = kBoundBase + bound_count_++;
      scopes_.emplace_back(var.text, slot);
      auto node = Node(exists ? FormulaNode::Kind::kExists
                              : FormulaNode::Kind::kForall);
      node->index = slot;
      node->children.push_back(ParseOr());
      scopes_.pop_back();
      return node;
    }
    if (PeekIdent("true") || PeekIdent("false")) {
      bool value = Next().text == "true";
      return Node(value ? FormulaNode::Kind::kTrue : FormulaNode::Kind::kFalse);
    }
    if (Cur().kind == Token::Kind::kIdent) {
      auto symbol = sig_.Lookup(Cur().text);
      if (symbol && symbol->kind == SymbolKind::kRelation) {
        const Token& name = Next();
        auto node = Node(FormulaNode::Kind::kRelation);
        node->index = symbol->index;
        node->terms = ParseArgs();
        if (static_cast<int>(node->terms.size()) !=
            sig_.relations()[symbol->index].arity) {
          Fail(name, "arity mismatch for relation");
        }
        return node;
      }
    }
    Term left = ParseTermRule();
    bool equal;
    if (Peek("=")) {
      equal = true;
    } else if (Peek("!=")) {
      equal = false;
    } else {
      Fail(Cur(), "expected '=' or '!=' after term");
    }
    Next();
    auto eq = Node(FormulaNode::Kind::kEquals);
    eq->terms.push_back(std::move(left));
    eq->terms.push_back(ParseTermRule());
    if (equal) return eq;
    auto node = Node(FormulaNode::Kind::kNot);
    node->children.push_back(std::move(eq));
    return node;
  }

  std::vector<Term> ParseArgs() {
    Expect("(");
    std::vector<Term> args;
    if (!Peek(")")) {
      while (true) {
        args.push_back(ParseTermRule());
        if (Peek(")")) break;
        Expect(",");
      }
    }
    Expect(")");
    return args;
  }

  Term ParseTermRule() {
    const Token& tok = NextIdent("term");
    Term term;
    auto symbol = sig_.Lookup(tok.text);
    if (symbol) {
      switch (symbol->kind) {
        case SymbolKind::kConstant:
          term.kind = Term::Kind::kConstant;
          term.index = symbol->index;
          return term;
        case SymbolKind::kFunction:
          term.kind = Term::Kind::kApply;
          term.index = symbol->index;
          term.args = ParseArgs();
          if (static_cast<int>(term.args.size()) !=
              sig_.functions()[symbol->index].arity) {
            Fail(tok, "arity mismatch for function");
          }
          return term;
        case SymbolKind::kRelation:
          Fail(tok, "relation symbol used as a term");
      }
    }
    term.kind = Term::Kind::kVariable;
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (it->first == tok.text) {
        term.index = it->second;
        return term;
      }
    }
    auto found = std::find(free_.begin(), free_.end(), tok.text);
    if (found == free_.end()) {
      if (declared_) Fail(tok, "undeclared variable");
      free_.push_back(tok.text);
      found = free_.end() - 1;
    }
    term.index = static_cast<int>(found - free_.begin());
    return term;
  }

  const Signature& sig_;
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  bool declared_ = false;
  std::vector<std::string> free_;
  std::vector<std::pair<std::string, int>> scopes_;
  int bound_count_ = 0;
};

void RenumberTerm(Term& term, int arity) {
  if (term.kind == Term::Kind::kVariable && term.index >= kBoundBase) {
    term.index = arity + term.index - kBoundBase;
  }
  for (Term& arg : term.args) RenumberTerm(arg, arity);
}

void Renumber(FormulaNode& node, int arity) {
  if (node.kind == FormulaNode::Kind::kExists ||
      node.kind == FormulaNode::Kind::kForall) {
    node.index = arity + node.index - kBoundBase;
  }
  for (Term& t : node.terms) RenumberTerm(t, arity);
  for (auto& child : node.children) Renumber(*child, arity);
}

bool Eval(const Structure& m, const FormulaNode& node,
          std::vector<Element>& env) {
  using Kind = FormulaNode::Kind;
  switch (node.kind) {
    case Kind::kTrue:
      return true;
    case Kind::kFalse:
      return false;
    case Kind::kRelation: {
      Tuple args;
      for (const Term& t : node.terms) {
        Element v = EvaluateTerm(m, t, env);
        if (v == kUndefined) return false;
        args.push_back(v);
      }
      return m.Holds(node.index, args);
    }
    case Kind::kEquals: {
      Element a = EvaluateTerm(m, node.terms[0], env);
      Element b = EvaluateTerm(m, node.terms[1], env);
      return a != kUndefined && a == b;
    }
    case Kind::kNot:
      return !Eval(m, *node.children[0], env);
    case Kind::kAnd:
      for (const auto& c : node.children) {
        if (!Eval(m, *c, env)) return false;
      }
      return true;
    case Kind::kOr:
      for (const auto& c : node.children) {
        if (Eval(m, *c, env)) return true;
      }
      return false;
    case Kind::kExists:
    case Kind::kForall: {
      const bool exists = node.kind == Kind::kExists;
      for (Element e = 0; e < m.size(); ++e) {
        env[node.index] = e;
        if (Eval(m, *node.children[0], env) == exists) return exists;
      }
      return !exists;
    }
  }
  return false;
}

}  // namespace

Element EvaluateTerm(const Structure& m, const Term& term,
                     std::span<const Element> env) {
  switch (term.kind) {
    case Term::Kind::kVariable:
      return env[term.index];
    case Term::Kind::kConstant:
      return m.Constant(term.index);
    case Term::Kind::kApply: {
      Tuple args;
      for (const Term& a : term.args) {
        Element v = EvaluateTerm(m, a, env);
        if (v == kUndefined) return kUndefined;
        args.push_back(v);
      }
      return m.Apply(term.index, args);
    }
  }
  return kUndefined;
}

Term ParseTerm(const Signature& signature, std::string_view text,
               const std::vector<std::string>& variables) {
  Parser parser(signature, text);
  parser.FixVariables(variables);
  return parser.ParseTermOnly();
}

Formula Formula::Parse(const Signature& signature, std::string_view text) {
  Parser parser(signature, text);
  std::unique_ptr<FormulaNode> root = parser.ParseFormula();
  Formula f;
  f.text_ = std::string(text);
  f.free_variables_ = parser.free_variables();
  f.num_slots_ = f.arity() + parser.bound_count();
  Renumber(*root, f.arity());
  f.root_ = std::move(root);
  return f;
}

bool Formula::Evaluate(const Structure& m,
                       std::span<const Element> args) const {
  if (static_cast<int>(args.size()) != arity()) {
    throw PreconditionError("formula '" + text_ + "' takes " +
                            std::to_string(arity()) + " arguments");
  }
  std::vector<Element> env(num_slots_, 0);
  std::copy(args.begin(), args.end(), env.begin());
  return Eval(m, *root_, env);
}

FormulaSet ParseFormulaSet(const Signature& signature, std::string_view text) {
  FormulaSet set;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find_first_of(";\n", start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    size_t hash = piece.find('#');
    if (hash != std::string_view::npos) piece = piece.substr(0, hash);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front()))) {
      piece.remove_prefix(1);
    }
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back()))) {
      piece.remove_suffix(1);
    }
    if (piece == "ALL") {
      set.all_types = true;
    } else if (!piece.empty()) {
      set.formulas.push_back(Formula::Parse(signature, piece));
    }
    start = end + 1;
  }
  return set;
}

}  // namespace ramseyqf
