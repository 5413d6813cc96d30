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

// Line-oriented text formats for structures, classes and indexed sequences.
//
// Structure files:
//
//   # comment
//   signature successor
//   relation E 2
//   function s 1
//   constant c
//
//   structure S : successor
//   domain 4
//   E : (0,1) (1,2)
//   s : 0->1 1->2 2->3
//   c = 0
//
// The signatures linear-order, pure-set, graph, ordered-graph and successor
// are predefined. A file may declare several signatures and structures.
//
// Class files declare signatures as above, then
//
//   class <name> : <signature>
//   bound <n>                        (optional)
//   generate <generator> upto <n>
//   member <path>                    (relative to the class file)
//   member inline
//   domain 2
//   lt : (0,1)
//   end
//
// Sequence files:
//
//   sequence <name>
//   index <path> | index inline ... end
//   target <path> | target inline ... end
//   width <w>
//   <i> : <e_1> ... <e_w>            (one line per index point)
//
// Inline blocks in sequence files hold a complete structure text. Every
// parse error is an InputError whose message starts with "line <n>:".

#ifndef RAMSEYQF_TEXT_FORMAT_H_
#define RAMSEYQF_TEXT_FORMAT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ramseyqf/classes.h"
#include "ramseyqf/indiscernibles.h"
#include "ramseyqf/structure.h"

namespace ramseyqf {

struct StructureFile {
  std::vector<Signature> signatures;  // declared in the file
  std::vector<Structure> structures;
};

StructureFile ParseStructureText(std::string_view text);

// Exactly one structure; validated.
Structure ParseStructure(std::string_view text);

// Signature block, a blank line, then the structure block. Tuples and
// function entries are sorted and empty relations are omitted, so
// serialize(parse(serialize(m))) == serialize(m).
std::string SerializeStructure(const Structure& m);
std::string SerializeSignature(const Signature& signature);

// `base` resolves member paths.
FiniteClass ParseClassText(std::string_view text,
                           const std::filesystem::path& base = {});
// Generated classes keep their generate line; other members are written
// inline.
std::string SerializeClass(const FiniteClass& f);

IndexedSequence ParseSequenceText(std::string_view text,
                                  const std::filesystem::path& base = {});
// Index and target are written inline.
std::string SerializeSequence(const IndexedSequence& seq,
                              std::string_view name = "I");

// Throws InputError if the file cannot be read.
std::string ReadTextFile(const std::filesystem::path& path);
Structure ReadStructureFile(const std::filesystem::path& path);
FiniteClass ReadClassFile(const std::filesystem::path& path);
IndexedSequence ReadSequenceFile(const std::filesystem::path& path);

// Writes to a temporary file next to `path` and renames it into place.
void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view contents);

}  // namespace ramseyqf

#endif  // RAMSEYQF_TEXT_FORMAT_H_
