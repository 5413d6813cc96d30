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

// Plain-text certificates:
//
//   ramseyqf-certificate v1
//   command arrow
//   argv LO5.st LO3.st LO2.st --colors 2
//   config budget 10000000
//   verdict FAILS
//   exit 1
//   search-nodes 17
//   <payload: "key value" lines and "begin key" ... "end key" blocks>
//   digest sha256 <hex of everything above this line>

#ifndef RAMSEYQF_TOOLS_CERTIFICATE_H_
#define RAMSEYQF_TOOLS_CERTIFICATE_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ramseyqf {

// A certificate that parses but does not check out.
class CertificateRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Certificate {
 public:
  struct Item {
    std::string key;
    std::string value;
    bool block = false;
  };

  std::string command;
  std::vector<std::string> argv;
  std::vector<std::pair<std::string, std::string>> config;
  std::string verdict;
  int exit_code = 0;
  int64_t search_nodes = 0;
  std::vector<Item> items;

  // Newlines in field values become spaces.
  void Add(std::string key, std::string value);
  void AddBlock(std::string key, std::string text);

  // Throw CertificateRejected when the key is missing.
  const std::string& Get(std::string_view key) const;
  const std::string& GetBlock(std::string_view key) const;
  bool Has(std::string_view key) const;
  std::vector<std::string> GetAll(std::string_view key) const;
  const std::string& Config(std::string_view key) const;

  std::string Render() const;

  // InputError on malformed text; CertificateRejected on a digest mismatch.
  static Certificate Parse(std::string_view text);
};

}  // namespace ramseyqf

#endif  // RAMSEYQF_TOOLS_CERTIFICATE_H_
