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

#include "ramseyqf/text_format.h"

#include <unistd.h>

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "ramseyqf/builders.h"
#include "ramseyqf/error.h"

namespace ramseyqf {

namespace {

struct Line {
  int number = 0;
  std::string text;  // comment stripped, trimmed
  std::vector<std::string> tokens;
};

[[noreturn]] void Fail(int line, const std::string& message) {
  throw InputError("line " + std::to_string(line) + ": " + message);
}

// Runs f, prefixing InputErrors that lack a line number.
template <typename F>
auto AtLine(int line, F f) {
  try {
    return f();
  } catch (const SignatureMismatchError& e) {
    throw SignatureMismatchError("line " + std::to_string(line) + ": " +
                                 e.what());
  } catch (const InputError& e) {
    std::string what = e.what();
    if (what.rfind("line ", 0) == 0) throw;
    Fail(line, what);
  }
}

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Line> SplitLines(std::string_view text, int first_number = 1) {
  std::vector<Line> out;
  int number = first_number;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string trimmed = Trim(raw);
    if (!trimmed.empty()) {
      Line line{number, trimmed, {}};
      std::istringstream in(trimmed);
      for (std::string tok; in >> tok;) line.tokens.push_back(tok);
      out.push_back(std::move(line));
    }
    ++number;
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

int ParseInt(int line, std::string_view s, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    Fail(line, "expected " + std::string(what) + ", got '" + std::string(s) +
                   "'");
  }
  return value;
}

std::optional<Signature> BuiltinSignature(std::string_view name) {
  if (name == "linear-order") return LinearOrderSignature();
  if (name == "pure-set") return PureSetSignature();
  if (name == "graph") return GraphSignature();
  if (name == "ordered-graph") return OrderedGraphSignature();
  if (name == "successor") return SuccessorChainSignature();
  return std::nullopt;
}

std::string AfterColon(const Line& line) {
  size_t colon = line.text.find(':');
  return line.text.substr(colon + 1);
}

void ParseRelationBody(const Line& line, Structure& m, int relation) {
  const SymbolInfo& info = m.signature().relations()[relation];
  std::string body = AfterColon(line);
  size_t pos = 0;
  while (true) {
    pos = body.find_first_not_of(" \t", pos);
    if (pos == std::string::npos) break;
    if (body[pos] != '(') Fail(line.number, "expected '(' in tuple list");
    size_t close = body.find(')', pos);
    if (close == std::string::npos) Fail(line.number, "unclosed tuple");
    Tuple t;
    std::string inner = body.substr(pos + 1, close - pos - 1);
    std::stringstream in(inner);
    for (std::string item; std::getline(in, item, ',');) {
      t.push_back(ParseInt(line.number, Trim(item), "an element"));
    }
    if (inner.find_first_not_of(" \t") == std::string::npos) t.clear();
    if (static_cast<int>(t.size()) != info.arity) {
      Fail(line.number, "arity mismatch: '" + info.name + "' has arity " +
                            std::to_string(info.arity));
    }
    AtLine(line.number, [&] {
      m.AddTuple(relation, t);
      return 0;
    });
    pos = close + 1;
  }
}

void ParseFunctionBody(const Line& line, Structure& m, int function) {
  const SymbolInfo& info = m.signature().functions()[function];
  std::istringstream in(AfterColon(line));
  for (std::string entry; in >> entry;) {
    size_t arrow = entry.find("->");
    if (arrow == std::string::npos) {
      Fail(line.number, "expected 'args->value', got '" + entry + "'");
    }
    Tuple args;
    std::stringstream parts(entry.substr(0, arrow));
    for (std::string item; std::getline(parts, item, ',');) {
      args.push_back(ParseInt(line.number, item, "an element"));
    }
    if (static_cast<int>(args.size()) != info.arity) {
      Fail(line.number, "arity mismatch: '" + info.name + "' has arity " +
                            std::to_string(info.arity));
    }
    Element value =
        ParseInt(line.number, entry.substr(arrow + 2), "an element");
    AtLine(line.number, [&] {
      m.SetFunctionValue(function, args, value);
      return 0;
    });
  }
}

// A body line of a structure block: "<sym> : ..." or "<const> = e".
void ParseBodyLine(const Line& line, Structure& m) {
  std::string sym = line.tokens[0];
  size_t colon = sym.find(':');
  size_t eq = sym.find('=');
  bool is_const = false;
  if (colon != std::string::npos) {
    sym = sym.substr(0, colon);
  } else if (eq != std::string::npos) {
    sym = sym.substr(0, eq);
    is_const = true;
  } else if (line.tokens.size() > 1 && line.tokens[1][0] == '=') {
    is_const = true;
  } else if (line.tokens.size() < 2 || line.tokens[1][0] != ':') {
    Fail(line.number, "expected '<symbol> :' or '<constant> = <element>'");
  }
  auto symbol = m.signature().Lookup(sym);
  if (!symbol) Fail(line.number, "unknown symbol '" + sym + "'");
  if (is_const != (symbol->kind == SymbolKind::kConstant)) {
    Fail(line.number, "wrong form for symbol '" + sym + "'");
  }
  switch (symbol->kind) {
    case SymbolKind::kRelation:
      ParseRelationBody(line, m, symbol->index);
      break;
    case SymbolKind::kFunction:
      ParseFunctionBody(line, m, symbol->index);
      break;
    case SymbolKind::kConstant: {
      std::string value = Trim(line.text.substr(line.text.find('=') + 1));
      Element e = ParseInt(line.number, value, "an element");
      if (m.Constant(symbol->index) != kUndefined) {
        Fail(line.number, "constant '" + sym + "' assigned twice");
      }
      AtLine(line.number, [&] {
        m.SetConstant(symbol->index, e);
        return 0;
      });
      break;
    }
  }
}

bool IsKeyword(const Line& line, std::string_view word) {
  return line.tokens[0] == word;
}

// "<keyword> <name> : <sig>"
std::pair<std::string, std::string> ParseHeader(const Line& line) {
  const auto& t = line.tokens;
  if (t.size() == 4 && t[2] == ":") return {t[1], t[3]};
  Fail(line.number, "expected '" + t[0] + " <name> : <signature>'");
}

class StructureParser {
 public:
  explicit StructureParser(const Signature* context = nullptr)
      : context_(context) {}

  StructureFile Parse(std::span<const Line> lines) {
    StructureFile out;
    std::optional<Signature> sig;
    std::optional<Structure> current;
    int current_line = 0;
    bool have_domain = false;
    std::string pending_name, pending_sig;

    auto finish_signature = [&] {
      if (sig) {
        declared_[sig->name()] = *sig;
        out.signatures.push_back(*sig);
        sig.reset();
      }
    };
    auto finish_structure = [&] {
      if (current) {
        if (!have_domain) Fail(current_line, "structure without a domain");
        AtLine(current_line, [&] {
          current->Validate();
          return 0;
        });
        out.structures.push_back(std::move(*current));
        current.reset();
      }
    };

    for (const Line& line : lines) {
      if (IsKeyword(line, "signature")) {
        finish_signature();
        finish_structure();
        if (line.tokens.size() != 2) {
          Fail(line.number, "expected 'signature <name>'");
        }
        if (declared_.contains(line.tokens[1])) {
          Fail(line.number, "signature '" + line.tokens[1] +
                                "' declared twice");
        }
        sig = Signature(line.tokens[1]);
      } else if (IsKeyword(line, "relation") || IsKeyword(line, "function")) {
        if (!sig) Fail(line.number, "declaration outside a signature block");
        if (line.tokens.size() != 3) {
          Fail(line.number, "expected '" + line.tokens[0] +
                                " <symbol> <arity>'");
        }
        int arity = ParseInt(line.number, line.tokens[2], "an arity");
        AtLine(line.number, [&] {
          return IsKeyword(line, "relation")
                     ? sig->AddRelation(line.tokens[1], arity)
                     : sig->AddFunction(line.tokens[1], arity);
        });
      } else if (IsKeyword(line, "constant")) {
        if (!sig) Fail(line.number, "declaration outside a signature block");
        if (line.tokens.size() != 2) {
          Fail(line.number, "expected 'constant <symbol>'");
        }
        AtLine(line.number, [&] { return sig->AddConstant(line.tokens[1]); });
      } else if (IsKeyword(line, "structure")) {
        finish_signature();
        finish_structure();
        auto [name, sig_name] = ParseHeader(line);
        current = Structure(Lookup(line.number, sig_name), 0, name);
        current_line = line.number;
        have_domain = false;
      } else if (IsKeyword(line, "domain")) {
        finish_signature();
        if (!current && context_ && out.structures.empty()) {
          current = Structure(*context_, 0);
          current_line = line.number;
          have_domain = false;
        }
        if (!current) Fail(line.number, "domain outside a structure block");
        if (have_domain) Fail(line.number, "domain given twice");
        if (line.tokens.size() != 2) Fail(line.number, "expected 'domain <n>'");
        int n = ParseInt(line.number, line.tokens[1], "a domain size");
        if (n < 0) Fail(line.number, "negative domain size");
        current = Structure(current->signature(), n, current->name());
        have_domain = true;
      } else {
        if (!current) Fail(line.number, "unexpected '" + line.tokens[0] + "'");
        if (!have_domain) Fail(line.number, "domain must come first");
        ParseBodyLine(line, *current);
      }
    }
    finish_signature();
    finish_structure();
    return out;
  }

  Signature Lookup(int line, const std::string& name) const {
    auto it = declared_.find(name);
    if (it != declared_.end()) return it->second;
    if (auto builtin = BuiltinSignature(name)) return *builtin;
    Fail(line, "unknown signature '" + name + "'");
  }

  const std::map<std::string, Signature>& declared() const {
    return declared_;
  }

 private:
  const Signature* context_;
  std::map<std::string, Signature> declared_;
};

// The lines after lines[start] up to the matching "end"; advances start past
// it.
std::span<const Line> InlineBlock(std::span<const Line> lines, size_t& pos) {
  int opener = lines[pos].number;
  size_t begin = ++pos;
  while (pos < lines.size() &&
         !(lines[pos].tokens.size() == 1 && lines[pos].tokens[0] == "end")) {
    ++pos;
  }
  if (pos == lines.size()) Fail(opener, "inline block without 'end'");
  return lines.subspan(begin, pos - begin);
}

Structure OneStructure(int line, const StructureFile& file) {
  if (file.structures.size() != 1) {
    Fail(line, "expected exactly one structure, found " +
                   std::to_string(file.structures.size()));
  }
  return file.structures[0];
}

std::string NameOr(const std::string& name, const char* fallback) {
  return name.empty() ? fallback : name;
}

std::string SerializeBody(const Structure& m) {
  std::string out = "domain " + std::to_string(m.size()) + "\n";
  const Signature& sig = m.signature();
  for (int r = 0; r < sig.num_relations(); ++r) {
    if (m.relation(r).size() == 0) continue;
    out += sig.relations()[r].name + " :";
    for (const Tuple& t : m.relation(r).tuples()) {
      out += " (";
      for (size_t k = 0; k < t.size(); ++k) {
        if (k > 0) out += ',';
        out += std::to_string(t[k]);
      }
      out += ')';
    }
    out += '\n';
  }
  for (int f = 0; f < sig.num_functions(); ++f) {
    if (m.function(f).size() == 0) continue;
    out += sig.functions()[f].name + " :";
    for (const auto& [args, value] : m.function(f).entries()) {
      out += ' ';
      for (size_t k = 0; k < args.size(); ++k) {
        if (k > 0) out += ',';
        out += std::to_string(args[k]);
      }
      out += "->" + std::to_string(value);
    }
    out += '\n';
  }
  for (int c = 0; c < sig.num_constants(); ++c) {
    out += sig.constants()[c] + " = " + std::to_string(m.Constant(c)) + "\n";
  }
  return out;
}

}  // namespace

StructureFile ParseStructureText(std::string_view text) {
  std::vector<Line> lines = SplitLines(text);
  return StructureParser().Parse(lines);
}

Structure ParseStructure(std::string_view text) {
  std::vector<Line> lines = SplitLines(text);
  StructureFile file = StructureParser().Parse(lines);
  return OneStructure(lines.empty() ? 1 : lines.back().number, file);
}

std::string SerializeSignature(const Signature& signature) {
  std::string out = "signature " + NameOr(signature.name(), "sig") + "\n";
  for (const SymbolInfo& r : signature.relations()) {
    out += "relation " + r.name + " " + std::to_string(r.arity) + "\n";
  }
  for (const SymbolInfo& f : signature.functions()) {
    out += "function " + f.name + " " + std::to_string(f.arity) + "\n";
  }
  for (const std::string& c : signature.constants()) {
    out += "constant " + c + "\n";
  }
  return out;
}

std::string SerializeStructure(const Structure& m) {
  return SerializeSignature(m.signature()) + "\nstructure " +
         NameOr(m.name(), "M") + " : " + NameOr(m.signature().name(), "sig") +
         "\n" + SerializeBody(m);
}

FiniteClass ParseClassText(std::string_view text,
                           const std::filesystem::path& base) {
  std::vector<Line> lines = SplitLines(text);
  size_t header = 0;
  while (header < lines.size() && !IsKeyword(lines[header], "class")) {
    ++header;
  }
  if (header == lines.size()) {
    Fail(lines.empty() ? 1 : lines.back().number, "missing 'class' line");
  }
  StructureParser signatures;
  StructureFile declared = signatures.Parse(
      std::span<const Line>(lines).subspan(0, header));
  if (!declared.structures.empty()) {
    Fail(lines[header].number, "structures must appear as members");
  }
  auto [name, sig_name] = ParseHeader(lines[header]);
  Signature sig = signatures.Lookup(lines[header].number, sig_name);

  std::vector<Structure> members;
  int bound = -1;
  int generated = 0, listed = 0;
  std::optional<ClassGenerator> generator;
  for (size_t pos = header + 1; pos < lines.size(); ++pos) {
    const Line& line = lines[pos];
    if (IsKeyword(line, "bound")) {
      if (line.tokens.size() != 2) Fail(line.number, "expected 'bound <n>'");
      bound = ParseInt(line.number, line.tokens[1], "a bound");
    } else if (IsKeyword(line, "generate")) {
      if (line.tokens.size() != 4 || line.tokens[2] != "upto") {
        Fail(line.number, "expected 'generate <generator> upto <n>'");
      }
      ClassGenerator g = AtLine(
          line.number, [&] { return ParseClassGenerator(line.tokens[1]); });
      int upto = ParseInt(line.number, line.tokens[3], "a size");
      FiniteClass gen = AtLine(line.number, [&] {
        return GenerateClass(g, upto);
      });
      if (!gen.signature.SameSymbols(sig)) {
        Fail(line.number, "generator language differs from '" + sig_name +
                              "'");
      }
      members.insert(members.end(), gen.members.begin(), gen.members.end());
      generator = g;
      ++generated;
    } else if (IsKeyword(line, "member")) {
      if (line.tokens.size() != 2) {
        Fail(line.number, "expected 'member <path>' or 'member inline'");
      }
      Structure m;
      if (line.tokens[1] == "inline") {
        std::span<const Line> block = InlineBlock(lines, pos);
        StructureParser inner(&sig);
        m = OneStructure(line.number, inner.Parse(block));
      } else {
        m = AtLine(line.number,
                   [&] { return ReadStructureFile(base / line.tokens[1]); });
      }
      if (!m.signature().SameSymbols(sig)) {
        throw SignatureMismatchError("line " + std::to_string(line.number) +
                                     ": member language differs from '" +
                                     sig_name + "'");
      }
      members.push_back(std::move(m));
      ++listed;
    } else {
      Fail(line.number, "unexpected '" + line.tokens[0] + "' in class file");
    }
  }
  ClassGenerator kind = generated == 1 && listed == 0
                            ? *generator
                            : ClassGenerator::kFromFile;
  FiniteClass f = AtLine(lines[header].number, [&] {
    return MakeClass(name, sig, members, bound, kind);
  });
  f.signature.set_name(sig.name());
  return f;
}

std::string SerializeClass(const FiniteClass& f) {
  std::string sig_name = NameOr(f.signature.name(), "sig");
  std::string out = SerializeSignature(f.signature);
  out += "\nclass " + NameOr(f.name, "C") + " : " + sig_name + "\n";
  out += "bound " + std::to_string(f.bound) + "\n";
  if (f.generator != ClassGenerator::kFromFile) {
    out += "generate " + std::string(ClassGeneratorName(f.generator)) +
           " upto " + std::to_string(f.bound) + "\n";
    return out;
  }
  for (const Structure& m : f.members) {
    out += "member inline\n" + SerializeBody(m) + "end\n";
  }
  return out;
}

IndexedSequence ParseSequenceText(std::string_view text,
                                  const std::filesystem::path& base) {
  std::vector<Line> lines = SplitLines(text);
  std::optional<Structure> index, target;
  std::optional<int> width;
  std::map<int, std::pair<int, Tuple>> rows;  // index -> (line, tuple)
  bool named = false;
  auto structure_at = [&](size_t& pos) {
    const Line& line = lines[pos];
    if (line.tokens.size() != 2) {
      Fail(line.number, "expected '" + line.tokens[0] +
                            " <path>' or '" + line.tokens[0] + " inline'");
    }
    if (line.tokens[1] == "inline") {
      std::span<const Line> block = InlineBlock(lines, pos);
      return OneStructure(line.number, StructureParser().Parse(block));
    }
    return AtLine(line.number,
                  [&] { return ReadStructureFile(base / line.tokens[1]); });
  };
  for (size_t pos = 0; pos < lines.size(); ++pos) {
    const Line& line = lines[pos];
    if (IsKeyword(line, "sequence")) {
      if (named) Fail(line.number, "sequence declared twice");
      named = true;
    } else if (IsKeyword(line, "index")) {
      if (index) Fail(line.number, "index given twice");
      index = structure_at(pos);
    } else if (IsKeyword(line, "target")) {
      if (target) Fail(line.number, "target given twice");
      target = structure_at(pos);
    } else if (IsKeyword(line, "width")) {
      if (line.tokens.size() != 2) Fail(line.number, "expected 'width <w>'");
      width = ParseInt(line.number, line.tokens[1], "a width");
      if (*width < 1) Fail(line.number, "width must be at least 1");
    } else {
      if (line.tokens.size() < 2 || line.tokens[1] != ":") {
        Fail(line.number, "expected '<index> : <elements>'");
      }
      if (!index || !target || !width) {
        Fail(line.number, "index, target and width must come first");
      }
      int i = ParseInt(line.number, line.tokens[0], "an index point");
      if (!index->InDomain(i)) {
        Fail(line.number, "index point " + std::to_string(i) +
                              " out of range");
      }
      if (rows.contains(i)) {
        Fail(line.number, "index point " + std::to_string(i) + " given twice");
      }
      Tuple t;
      for (size_t k = 2; k < line.tokens.size(); ++k) {
        Element e = ParseInt(line.number, line.tokens[k], "an element");
        if (!target->InDomain(e)) {
          Fail(line.number, "element " + std::to_string(e) +
                                " out of range in the target");
        }
        t.push_back(e);
      }
      if (static_cast<int>(t.size()) != *width) {
        Fail(line.number, "tuple does not have width " +
                              std::to_string(*width));
      }
      rows[i] = {line.number, t};
    }
  }
  int last = lines.empty() ? 1 : lines.back().number;
  if (!index || !target || !width) {
    Fail(last, "sequence needs index, target and width");
  }
  IndexedSequence seq{*index, *target, *width, {}};
  for (int i = 0; i < index->size(); ++i) {
    auto it = rows.find(i);
    if (it == rows.end()) {
      Fail(last, "missing tuple for index point " + std::to_string(i));
    }
    seq.tuples.push_back(it->second.second);
  }
  return seq;
}

std::string SerializeSequence(const IndexedSequence& seq,
                              std::string_view name) {
  std::string out = "sequence " + std::string(name) + "\n";
  out += "index inline\n" + SerializeStructure(seq.index) + "end\n";
  out += "target inline\n" + SerializeStructure(seq.target) + "end\n";
  out += "width " + std::to_string(seq.width) + "\n";
  for (size_t i = 0; i < seq.tuples.size(); ++i) {
    out += std::to_string(i) + " :";
    for (Element e : seq.tuples[i]) out += " " + std::to_string(e);
    out += "\n";
  }
  return out;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

template <typename F>
auto WithPath(const std::filesystem::path& path, F f) {
  try {
    return f();
  } catch (const SignatureMismatchError& e) {
    throw SignatureMismatchError(path.string() + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace

Structure ReadStructureFile(const std::filesystem::path& path) {
  std::string text = ReadTextFile(path);
  return WithPath(path, [&] { return ParseStructure(text); });
}

FiniteClass ReadClassFile(const std::filesystem::path& path) {
  std::string text = ReadTextFile(path);
  return WithPath(path,
                  [&] { return ParseClassText(text, path.parent_path()); });
}

IndexedSequence ReadSequenceFile(const std::filesystem::path& path) {
  std::string text = ReadTextFile(path);
  return WithPath(path,
                  [&] { return ParseSequenceText(text, path.parent_path()); });
}

void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw InputError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot write " + path.string());
  }
}

}  // namespace ramseyqf
