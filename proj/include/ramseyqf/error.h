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

#ifndef RAMSEYQF_ERROR_H_
#define RAMSEYQF_ERROR_H_

#include <stdexcept>
#include <string>

namespace ramseyqf {

// Malformed input: bad files, out-of-range elements, unknown symbols.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Two structures (or a structure and a type) live over different languages.
class SignatureMismatchError : public InputError {
 public:
  explicit SignatureMismatchError(const std::string& what)
      : InputError("signature mismatch: " + what) {}
};

// An operation was called outside its documented precondition.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what)
      : std::logic_error(what) {}
};

}  // namespace ramseyqf

#endif  // RAMSEYQF_ERROR_H_
