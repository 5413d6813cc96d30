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

#include "ramseyqf/qftype.h"

#include <algorithm>

#include "ramseyqf/digest.h"
#include "ramseyqf/error.h"

namespace ramseyqf {

namespace {

template <typename Fn>
void ForEachLabelTuple(int base, int arity, Fn&& fn) {
  if (base == 0) return;
  Tuple t(arity, 0);
  while (true) {
    fn(static_cast<const Tuple&>(t));
    int pos = arity - 1;
    while (pos >= 0 && ++t[pos] == base) t[pos--] = 0;
    if (pos < 0) return;
  }
}

int64_t Power(int base, int exp) {
  int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    out *= base;
    if (out > (int64_t{1} << 40)) return out;
  }
  return out;
}

void AppendTuple(std::string& out, const Tuple& t) {
  out += '(';
  for (size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(t[i]);
  }
  out += ')';
}

// Relation and function tables of m restricted to the labelled elements,
// written in label coordinates.
void AppendDiagram(const Structure& m, const std::vector<Element>& elems,
                   const std::vector<int>& label, bool functions_inside_only,
                   std::string& out) {
  const Signature& sig = m.signature();
  const int n = static_cast<int>(elems.size());
  Tuple image;
  std::vector<Tuple> rows;
  for (int r = 0; r < sig.num_relations(); ++r) {
    const int arity = sig.relations()[r].arity;
    rows.clear();
    if (Power(n, arity) <= m.relation(r).size()) {
      ForEachLabelTuple(n, arity, [&](const Tuple& t) {
        image.clear();
        for (int l : t) image.push_back(elems[l]);
        if (m.Holds(r, image)) rows.push_back(t);
      });
    } else {
      for (const Tuple& t : m.relation(r).tuples()) {
        image.clear();
        bool inside = true;
        for (Element e : t) {
          if (label[e] < 0) {
            inside = false;
            break;
          }
          image.push_back(label[e]);
        }
        if (inside) rows.push_back(image);
      }
      std::sort(rows.begin(), rows.end());
    }
    out += ";r";
    out += std::to_string(r);
    out += ':';
    for (const Tuple& t : rows) AppendTuple(out, t);
  }
  for (int f = 0; f < sig.num_functions(); ++f) {
    const int arity = sig.functions()[f].arity;
    out += ";f";
    out += std::to_string(f);
    out += ':';
    ForEachLabelTuple(n, arity, [&](const Tuple& t) {
      image.clear();
      for (int l : t) image.push_back(elems[l]);
      Element v = m.Apply(f, image);
      if (v == kUndefined) return;
      if (label[v] < 0) {
        if (functions_inside_only) return;
        // Closed sets never get here.
        throw PreconditionError("function value escapes generated set");
      }
      AppendTuple(out, t);
      out += '>';
      out += std::to_string(label[v]);
    });
  }
}

}  // namespace

bool IsInjective(std::span<const Element> tuple) {
  for (size_t i = 0; i < tuple.size(); ++i) {
    for (size_t j = i + 1; j < tuple.size(); ++j) {
      if (tuple[i] == tuple[j]) return false;
    }
  }
  return true;
}

std::string QfType::ShortDigest() const { return Sha256Hex(key_).substr(0, 8); }

QfType ComputeQfType(const Structure& m, std::span<const Element> tuple) {
  const Signature& sig = m.signature();
  std::vector<int> label(m.size(), -1);
  std::vector<Element> elems;
  auto name = [&](Element e) {
    if (label[e] < 0) {
      label[e] = static_cast<int>(elems.size());
      elems.push_back(e);
    }
  };
  for (Element e : tuple) {
    if (!m.InDomain(e)) throw PreconditionError("tuple entry outside domain");
    name(e);
  }
  for (Element c : m.constant_values()) name(c);
  // Discovery order of new function values; each pass scans argument tuples
  // over the labels known at its start.
  bool grew = sig.num_functions() > 0;
  Tuple image;
  while (grew) {
    grew = false;
    for (int f = 0; f < sig.num_functions(); ++f) {
      const int known = static_cast<int>(elems.size());
      ForEachLabelTuple(known, sig.functions()[f].arity, [&](const Tuple& t) {
        image.clear();
        for (int l : t) image.push_back(elems[l]);
        Element v = m.Apply(f, image);
        if (v != kUndefined && label[v] < 0) {
          name(v);
          grew = true;
        }
      });
    }
  }

  std::string key = "w" + std::to_string(tuple.size()) + ";t";
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) key += ',';
    key += std::to_string(label[tuple[i]]);
  }
  key += ";n" + std::to_string(elems.size()) + ";c";
  for (int c = 0; c < sig.num_constants(); ++c) {
    if (c > 0) key += ',';
    key += std::to_string(label[m.Constant(c)]);
  }
  AppendDiagram(m, elems, label, /*functions_inside_only=*/false, key);
  return QfType(static_cast<int>(tuple.size()), std::move(key));
}

std::string AtomicDiagramKey(const Structure& m,
                             std::span<const Element> tuple) {
  const Signature& sig = m.signature();
  std::vector<int> label(m.size(), -1);
  std::vector<Element> elems;
  for (Element e : tuple) {
    if (!m.InDomain(e)) throw PreconditionError("tuple entry outside domain");
    if (label[e] < 0) {
      label[e] = static_cast<int>(elems.size());
      elems.push_back(e);
    }
  }
  std::string key = "w" + std::to_string(tuple.size()) + ";t";
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) key += ',';
    key += std::to_string(label[tuple[i]]);
  }
  key += ";c";
  for (int c = 0; c < sig.num_constants(); ++c) {
    if (c > 0) key += ',';
    key += std::to_string(label[m.Constant(c)]);
  }
  AppendDiagram(m, elems, label, /*functions_inside_only=*/true, key);
  return key;
}

std::vector<Tuple> EnumerateQfCopiesOf(const Structure& host,
                                       const Structure& ref,
                                       std::span<const Element> a,
                                       std::span<const Element> allowed) {
  RequireSameSymbols(host.signature(), ref.signature(), "qf copies");
  if (!IsInjective(a)) {
    throw PreconditionError("qf copies need a tuple of distinct elements");
  }
  const int w = static_cast<int>(a.size());
  std::vector<Element> candidates;
  if (allowed.empty()) {
    for (Element e = 0; e < host.size(); ++e) candidates.push_back(e);
  } else {
    candidates.assign(allowed.begin(), allowed.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
  }
  std::vector<QfType> prefix_types;
  for (int i = 1; i <= w; ++i) {
    prefix_types.push_back(ComputeQfType(ref, a.subspan(0, i)));
  }
  std::vector<std::vector<Element>> per_position(w);
  for (int i = 0; i < w; ++i) {
    QfType one = ComputeQfType(ref, a.subspan(i, 1));
    for (Element e : candidates) {
      Element single[1] = {e};
      if (ComputeQfType(host, single) == one) per_position[i].push_back(e);
    }
  }

  std::vector<Tuple> out;
  Tuple current;
  std::vector<bool> used(host.size(), false);
  auto extend = [&](auto&& self, int pos) -> void {
    if (pos == w) {
      out.push_back(current);
      return;
    }
    for (Element e : per_position[pos]) {
      if (used[e]) continue;
      current.push_back(e);
      if (pos == 0 || ComputeQfType(host, current) == prefix_types[pos]) {
        used[e] = true;
        self(self, pos + 1);
        used[e] = false;
      }
      current.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

std::vector<Tuple> EnumerateQfCopies(const Structure& m,
                                     std::span<const Element> tuple) {
  return EnumerateQfCopiesOf(m, m, tuple);
}

}  // namespace ramseyqf
