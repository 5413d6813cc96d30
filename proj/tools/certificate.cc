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

#include "certificate.h"

#include <algorithm>

#include "ramseyqf/digest.h"
#include "ramseyqf/error.h"

namespace ramseyqf {

namespace {

constexpr std::string_view kHeader = "ramseyqf-certificate v1";
constexpr std::string_view kDigestPrefix = "digest sha256 ";

std::string OneLine(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

std::pair<std::string, std::string> SplitKey(std::string_view line) {
  size_t space = line.find(' ');
  if (space == std::string_view::npos) return {std::string(line), ""};
  return {std::string(line.substr(0, space)),
          std::string(line.substr(space + 1))};
}

}  // namespace

void Certificate::Add(std::string key, std::string value) {
  items.push_back({std::move(key), OneLine(std::move(value)), false});
}

void Certificate::AddBlock(std::string key, std::string text) {
  if (!text.empty() && text.back() != '\n') text += '\n';
  items.push_back({std::move(key), std::move(text), true});
}

const std::string& Certificate::Get(std::string_view key) const {
  for (const Item& item : items) {
    if (!item.block && item.key == key) return item.value;
  }
  throw CertificateRejected("missing field '" + std::string(key) + "'");
}

const std::string& Certificate::GetBlock(std::string_view key) const {
  for (const Item& item : items) {
    if (item.block && item.key == key) return item.value;
  }
  throw CertificateRejected("missing block '" + std::string(key) + "'");
}

bool Certificate::Has(std::string_view key) const {
  return std::any_of(items.begin(), items.end(),
                     [&](const Item& item) { return item.key == key; });
}

std::vector<std::string> Certificate::GetAll(std::string_view key) const {
  std::vector<std::string> out;
  for (const Item& item : items) {
    if (!item.block && item.key == key) out.push_back(item.value);
  }
  return out;
}

const std::string& Certificate::Config(std::string_view key) const {
  for (const auto& [k, v] : config) {
    if (k == key) return v;
  }
  throw CertificateRejected("missing config '" + std::string(key) + "'");
}

std::string Certificate::Render() const {
  std::string out(kHeader);
  out += "\ncommand " + command + "\nargv";
  for (const std::string& a : argv) out += " " + OneLine(a);
  out += "\n";
  for (const auto& [k, v] : config) out += "config " + k + " " + OneLine(v) + "\n";
  out += "verdict " + verdict + "\n";
  out += "exit " + std::to_string(exit_code) + "\n";
  out += "search-nodes " + std::to_string(search_nodes) + "\n";
  for (const Item& item : items) {
    if (item.block) {
      out += "begin " + item.key + "\n" + item.value + "end " + item.key + "\n";
    } else {
      out += item.key + (item.value.empty() ? "" : " " + item.value) + "\n";
    }
  }
  out += std::string(kDigestPrefix) + Sha256Hex(out) + "\n";
  return out;
}

Certificate Certificate::Parse(std::string_view text) {
  size_t digest_at = text.rfind(kDigestPrefix);
  if (text.substr(0, kHeader.size()) != kHeader ||
      digest_at == std::string_view::npos ||
      (digest_at > 0 && text[digest_at - 1] != '\n')) {
    throw InputError("not a ramseyqf certificate");
  }
  std::string_view body = text.substr(0, digest_at);
  std::string_view digest = text.substr(digest_at + kDigestPrefix.size());
  while (!digest.empty() && (digest.back() == '\n' || digest.back() == '\r')) {
    digest.remove_suffix(1);
  }
  if (digest != Sha256Hex(body)) {
    throw CertificateRejected("digest does not match the contents");
  }

  std::vector<std::string_view> lines;
  for (size_t start = 0; start < body.size();) {
    size_t end = body.find('\n', start);
    if (end == std::string_view::npos) end = body.size();
    lines.push_back(body.substr(start, end - start));
    start = end + 1;
  }

  Certificate cert;
  bool have_command = false, have_verdict = false, have_exit = false;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto [key, value] = SplitKey(lines[i]);
    if (key == "command") {
      cert.command = value;
      have_command = true;
    } else if (key == "argv") {
      for (size_t pos = 0; pos < value.size();) {
        size_t space = value.find(' ', pos);
        if (space == std::string::npos) space = value.size();
        if (space > pos) cert.argv.push_back(value.substr(pos, space - pos));
        pos = space + 1;
      }
    } else if (key == "config") {
      cert.config.push_back(SplitKey(value));
    } else if (key == "verdict") {
      cert.verdict = value;
      have_verdict = true;
    } else if (key == "exit") {
      try {
        cert.exit_code = std::stoi(value);
      } catch (const std::exception&) {
        throw InputError("bad exit line in certificate");
      }
      have_exit = true;
    } else if (key == "search-nodes") {
      try {
        cert.search_nodes = std::stoll(value);
      } catch (const std::exception&) {
        throw InputError("bad search-nodes line in certificate");
      }
    } else if (key == "begin") {
      std::string closing = "end " + value;
      std::string text_block;
      size_t j = i + 1;
      while (j < lines.size() && lines[j] != closing) {
        text_block += std::string(lines[j]) + "\n";
        ++j;
      }
      if (j == lines.size()) {
        throw InputError("unterminated block '" + value + "' in certificate");
      }
      cert.items.push_back({value, std::move(text_block), true});
      i = j;
    } else {
      cert.items.push_back({key, value, false});
    }
  }
  if (!have_command || !have_verdict || !have_exit) {
    throw InputError("certificate lacks command, verdict or exit");
  }
  return cert;
}

}  // namespace ramseyqf
