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

#include "ramseyqf/canonical.h"

#include <algorithm>
#include <numeric>

#include "ramseyqf/error.h"

namespace ramseyqf {

namespace {

// One occurrence of an element inside a table row.
struct Occurrence {
  int code;          // relation r -> r, function f argument -> 1e6 + f,
                     // function f value -> 2e6 + f
  int position;      // argument position, -1 for a value occurrence
  const Tuple* row;  // relation tuple or function arguments
  Element value;     // function value, kUndefined for relations
};

// Ranks `keys` (one per element) and returns the number of classes.
template <typename Key>
int RankInPlace(const std::vector<Key>& keys, std::vector<int>& colors) {
  const int n = static_cast<int>(keys.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return keys[a] < keys[b]; });
  int rank = -1;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || keys[order[i - 1]] < keys[order[i]]) ++rank;
    colors[order[i]] = rank;
  }
  return rank + 1;
}

class Canonizer {
 public:
  Canonizer(const Structure& m, const std::vector<int>& initial)
      : m_(m), n_(m.size()), occurrences_(m.size()) {
    const Signature& sig = m.signature();
    for (int r = 0; r < sig.num_relations(); ++r) {
      for (const Tuple& t : m.relation(r).tuples()) {
        for (int p = 0; p < static_cast<int>(t.size()); ++p) {
          occurrences_[t[p]].push_back({r, p, &t, kUndefined});
        }
      }
    }
    for (int f = 0; f < sig.num_functions(); ++f) {
      for (const auto& [args, value] : m.function(f).entries()) {
        for (int p = 0; p < static_cast<int>(args.size()); ++p) {
          occurrences_[args[p]].push_back({1000000 + f, p, &args, value});
        }
        occurrences_[value].push_back({2000000 + f, -1, &args, value});
      }
    }
    std::vector<std::vector<int>> start(n_);
    for (Element v = 0; v < n_; ++v) start[v].push_back(initial[v]);
    for (int c = 0; c < sig.num_constants(); ++c) {
      start[m.Constant(c)].push_back(c);
    }
    initial_.assign(n_, 0);
    RankInPlace(start, initial_);
    ComputeTwins();
  }

  CanonicalLabeling Run() {
    Search(initial_);
    CanonicalLabeling out;
    out.new_label_of = best_labels_;
    out.key = EncodingToKey(best_);
    return out;
  }

 private:
  int Refine(std::vector<int>& colors) const {
    const std::vector<int> start = colors;
    int classes = RankInPlace(start, colors);
    std::vector<std::vector<int>> keys(n_);
    std::vector<std::vector<int>> descriptors;
    while (true) {
      for (Element v = 0; v < n_; ++v) {
        descriptors.clear();
        for (const Occurrence& occ : occurrences_[v]) {
          std::vector<int> d{occ.code, occ.position};
          for (Element e : *occ.row) d.push_back(colors[e]);
          if (occ.value != kUndefined) d.push_back(colors[occ.value]);
          descriptors.push_back(std::move(d));
        }
        std::sort(descriptors.begin(), descriptors.end());
        std::vector<int>& key = keys[v];
        key.clear();
        key.push_back(colors[v]);
        for (const auto& d : descriptors) {
          key.push_back(static_cast<int>(d.size()));
          key.insert(key.end(), d.begin(), d.end());
        }
      }
      std::vector<int> next(n_);
      int next_classes = RankInPlace(keys, next);
      colors.swap(next);
      if (next_classes == classes) return classes;
      classes = next_classes;
    }
  }

  bool SwapIsAutomorphism(Element u, Element w) const {
    auto swap = [&](Element e) { return e == u ? w : (e == w ? u : e); };
    const Signature& sig = m_.signature();
    Tuple image;
    for (int r = 0; r < sig.num_relations(); ++r) {
      for (const Tuple& t : m_.relation(r).tuples()) {
        image.clear();
        for (Element e : t) image.push_back(swap(e));
        if (!m_.Holds(r, image)) return false;
      }
    }
    for (int f = 0; f < sig.num_functions(); ++f) {
      for (const auto& [args, value] : m_.function(f).entries()) {
        image.clear();
        for (Element e : args) image.push_back(swap(e));
        if (m_.Apply(f, image) != swap(value)) return false;
      }
    }
    return true;
  }

  void ComputeTwins() {
    twin_rep_.resize(n_);
    std::iota(twin_rep_.begin(), twin_rep_.end(), 0);
    for (Element w = 0; w < n_; ++w) {
      for (Element u = 0; u < w; ++u) {
        if (twin_rep_[u] != u || initial_[u] != initial_[w]) continue;
        if (SwapIsAutomorphism(u, w)) {
          twin_rep_[w] = u;
          break;
        }
      }
    }
  }

  std::vector<int> Encode(const std::vector<int>& label) const {
    const Signature& sig = m_.signature();
    std::vector<int> code{n_};
    for (int c = 0; c < sig.num_constants(); ++c) {
      code.push_back(label[m_.Constant(c)]);
    }
    std::vector<Tuple> rows;
    Tuple image;
    for (int r = 0; r < sig.num_relations(); ++r) {
      rows.clear();
      for (const Tuple& t : m_.relation(r).tuples()) {
        image.clear();
        for (Element e : t) image.push_back(label[e]);
        rows.push_back(image);
      }
      std::sort(rows.begin(), rows.end());
      code.push_back(static_cast<int>(rows.size()));
      for (const Tuple& t : rows) code.insert(code.end(), t.begin(), t.end());
    }
    for (int f = 0; f < sig.num_functions(); ++f) {
      rows.clear();
      for (const auto& [args, value] : m_.function(f).entries()) {
        image.clear();
        for (Element e : args) image.push_back(label[e]);
        image.push_back(label[value]);
        rows.push_back(image);
      }
      std::sort(rows.begin(), rows.end());
      code.push_back(static_cast<int>(rows.size()));
      for (const Tuple& t : rows) code.insert(code.end(), t.begin(), t.end());
    }
    return code;
  }

  void Search(std::vector<int> colors) {
    int classes = Refine(colors);
    if (classes == n_) {
      std::vector<int> code = Encode(colors);
      if (!have_best_ || code < best_) {
        best_ = std::move(code);
        best_labels_ = colors;
        have_best_ = true;
      }
      return;
    }
    std::vector<int> count(classes, 0);
    for (int c : colors) ++count[c];
    int cell = 0;
    while (count[cell] == 1) ++cell;
    std::vector<bool> tried(n_, false);
    for (Element v = 0; v < n_; ++v) {
      if (colors[v] != cell || tried[twin_rep_[v]]) continue;
      tried[twin_rep_[v]] = true;
      std::vector<int> next(n_);
      for (Element u = 0; u < n_; ++u) {
        next[u] = 2 * colors[u] + ((colors[u] == cell && u != v) ? 1 : 0);
      }
      Search(std::move(next));
    }
  }

  static std::string EncodingToKey(const std::vector<int>& code) {
    std::string key;
    for (size_t i = 0; i < code.size(); ++i) {
      if (i > 0) key += ',';
      key += std::to_string(code[i]);
    }
    return key;
  }

  const Structure& m_;
  int n_;
  std::vector<std::vector<Occurrence>> occurrences_;
  std::vector<int> initial_;
  std::vector<Element> twin_rep_;
  bool have_best_ = false;
  std::vector<int> best_;
  std::vector<int> best_labels_;
};

}  // namespace

CanonicalLabeling ComputeCanonicalLabeling(const Structure& m) {
  return Canonizer(m, std::vector<int>(m.size(), 0)).Run();
}

std::string PointedCanonicalKey(const Structure& m,
                                std::span<const Element> tuple) {
  std::vector<int> initial(m.size(), 0);
  int next = 1;
  for (Element e : tuple) {
    if (!m.InDomain(e)) throw PreconditionError("tuple entry outside domain");
    if (initial[e] == 0) initial[e] = next++;
  }
  CanonicalLabeling labeling = Canonizer(m, initial).Run();
  std::string key = labeling.key + ";t";
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) key += ',';
    key += std::to_string(labeling.new_label_of[tuple[i]]);
  }
  return key;
}

std::string CanonicalKey(const Structure& m) {
  return ComputeCanonicalLabeling(m).key;
}

Structure CanonicalForm(const Structure& m) {
  CanonicalLabeling labeling = ComputeCanonicalLabeling(m);
  return m.Relabel(labeling.new_label_of);
}

bool IsIsomorphic(const Structure& a, const Structure& b) {
  RequireSameSymbols(a.signature(), b.signature(), "isomorphism test");
  if (a.size() != b.size()) return false;
  return CanonicalKey(a) == CanonicalKey(b);
}

}  // namespace ramseyqf
