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

#include "ramseyqf/embedding.h"

#include <algorithm>

#include "ramseyqf/error.h"

namespace ramseyqf {

namespace {

// Calls fn(tuple) for every tuple in {0..base-1}^arity in lexicographic
// order.
template <typename Fn>
void ForEachTuple(int base, int arity, Fn&& fn) {
  if (base == 0) return;
  Tuple t(arity, 0);
  while (true) {
    fn(static_cast<const Tuple&>(t));
    int pos = arity - 1;
    while (pos >= 0 && ++t[pos] == base) t[pos--] = 0;
    if (pos < 0) return;
  }
}

struct RelationCheck {
  int relation;
  Tuple positions;
  bool expected;
};

struct FunctionCheck {
  int function;
  Tuple args;
  Element value;
};

// Precomputed per-position work for the backtracking enumerator.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const Structure& host, const Structure& pattern)
      : host_(host), pattern_(pattern), m_(pattern.size()) {
    relation_checks_.resize(m_);
    function_checks_.resize(m_);
    forced_.assign(m_, kUndefined);
    const Signature& sig = pattern.signature();
    for (int r = 0; r < sig.num_relations(); ++r) {
      int arity = sig.relations()[r].arity;
      ForEachTuple(m_, arity, [&](const Tuple& t) {
        int last = *std::max_element(t.begin(), t.end());
        relation_checks_[last].push_back({r, t, pattern.Holds(r, t)});
      });
    }
    for (int f = 0; f < sig.num_functions(); ++f) {
      for (const auto& [args, value] : pattern.function(f).entries()) {
        int last = value;
        for (Element e : args) last = std::max(last, e);
        function_checks_[last].push_back({f, args, value});
      }
    }
    for (int c = 0; c < sig.num_constants(); ++c) {
      Element p = pattern.Constant(c);
      Element h = host.Constant(c);
      if (forced_[p] != kUndefined && forced_[p] != h) infeasible_ = true;
      forced_[p] = h;
    }
  }

  void Run(const std::function<bool(const std::vector<Element>&)>& visit) {
    if (infeasible_ || m_ > host_.size()) return;
    map_.assign(m_, kUndefined);
    used_.assign(host_.size(), false);
    visit_ = &visit;
    stopped_ = false;
    Extend(0);
  }

 private:
  bool Consistent(int pos) {
    Tuple image;
    for (const RelationCheck& check : relation_checks_[pos]) {
      image.clear();
      for (Element e : check.positions) image.push_back(map_[e]);
      if (host_.Holds(check.relation, image) != check.expected) return false;
    }
    for (const FunctionCheck& check : function_checks_[pos]) {
      image.clear();
      for (Element e : check.args) image.push_back(map_[e]);
      if (host_.Apply(check.function, image) != map_[check.value]) {
        return false;
      }
    }
    return true;
  }

  void Extend(int pos) {
    if (pos == m_) {
      if (!(*visit_)(map_)) stopped_ = true;
      return;
    }
    int lo = 0;
    int hi = host_.size();
    if (forced_[pos] != kUndefined) {
      lo = forced_[pos];
      hi = lo + 1;
    }
    for (Element v = lo; v < hi && !stopped_; ++v) {
      if (used_[v]) continue;
      map_[pos] = v;
      used_[v] = true;
      if (Consistent(pos)) Extend(pos + 1);
      used_[v] = false;
    }
    map_[pos] = kUndefined;
  }

  const Structure& host_;
  const Structure& pattern_;
  int m_;
  bool infeasible_ = false;
  std::vector<std::vector<RelationCheck>> relation_checks_;
  std::vector<std::vector<FunctionCheck>> function_checks_;
  std::vector<Element> forced_;
  std::vector<Element> map_;
  std::vector<bool> used_;
  const std::function<bool(const std::vector<Element>&)>* visit_ = nullptr;
  bool stopped_ = false;
};

}  // namespace

Embedding Compose(const Embedding& outer, const Embedding& inner) {
  Embedding out;
  out.map.reserve(inner.map.size());
  for (Element e : inner.map) out.map.push_back(outer.map[e]);
  return out;
}

bool IsEmbedding(const Structure& source, const Structure& target,
                 std::span<const Element> map) {
  if (!source.signature().SameSymbols(target.signature())) return false;
  if (static_cast<int>(map.size()) != source.size()) return false;
  std::vector<bool> hit(target.size(), false);
  for (Element e : map) {
    if (!target.InDomain(e) || hit[e]) return false;
    hit[e] = true;
  }
  const Signature& sig = source.signature();
  bool ok = true;
  Tuple image;
  for (int r = 0; r < sig.num_relations() && ok; ++r) {
    ForEachTuple(source.size(), sig.relations()[r].arity,
                 [&](const Tuple& t) {
                   image.clear();
                   for (Element e : t) image.push_back(map[e]);
                   if (source.Holds(r, t) != target.Holds(r, image)) {
                     ok = false;
                   }
                 });
  }
  for (int f = 0; f < sig.num_functions() && ok; ++f) {
    for (const auto& [args, value] : source.function(f).entries()) {
      image.clear();
      for (Element e : args) image.push_back(map[e]);
      if (target.Apply(f, image) != map[value]) return false;
    }
  }
  for (int c = 0; c < sig.num_constants() && ok; ++c) {
    if (map[source.Constant(c)] != target.Constant(c)) return false;
  }
  return ok;
}

void ForEachEmbedding(const Structure& host, const Structure& pattern,
                      const std::function<bool(const std::vector<Element>&)>&
                          visit) {
  RequireSameSymbols(host.signature(), pattern.signature(),
                     "embedding enumeration");
  EmbeddingSearch search(host, pattern);
  search.Run(visit);
}

std::vector<Embedding> EnumerateEmbeddings(const Structure& host,
                                           const Structure& pattern) {
  std::vector<Embedding> out;
  ForEachEmbedding(host, pattern, [&](const std::vector<Element>& map) {
    out.push_back(Embedding{map});
    return true;
  });
  return out;
}

bool Embeds(const Structure& host, const Structure& pattern) {
  bool found = false;
  ForEachEmbedding(host, pattern, [&](const std::vector<Element>&) {
    found = true;
    return false;
  });
  return found;
}

std::vector<Element> Closure(const Structure& m,
                             std::span<const Element> elements) {
  std::vector<bool> in(m.size(), false);
  std::vector<Element> members;
  auto add = [&](Element e) {
    if (!in[e]) {
      in[e] = true;
      members.push_back(e);
    }
  };
  for (Element e : elements) {
    if (!m.InDomain(e)) throw PreconditionError("element outside domain");
    add(e);
  }
  for (Element c : m.constant_values()) add(c);
  const Signature& sig = m.signature();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int f = 0; f < sig.num_functions(); ++f) {
      for (const auto& [args, value] : m.function(f).entries()) {
        if (in[value]) continue;
        bool all_in = std::all_of(args.begin(), args.end(),
                                  [&](Element e) { return in[e]; });
        if (all_in) {
          add(value);
          changed = true;
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

Substructure InducedSubstructure(const Structure& m,
                                 std::span<const Element> elements) {
  std::vector<Element> index_of(m.size(), kUndefined);
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
    index_of[elements[i]] = i;
  }
  Structure sub(m.signature(), static_cast<int>(elements.size()), m.name());
  const Signature& sig = m.signature();
  Tuple image;
  auto translate = [&](const Tuple& t) {
    image.clear();
    for (Element e : t) {
      if (index_of[e] == kUndefined) return false;
      image.push_back(index_of[e]);
    }
    return true;
  };
  for (int r = 0; r < sig.num_relations(); ++r) {
    for (const Tuple& t : m.relation(r).tuples()) {
      if (translate(t)) sub.AddTuple(r, image);
    }
  }
  for (int f = 0; f < sig.num_functions(); ++f) {
    for (const auto& [args, value] : m.function(f).entries()) {
      if (translate(args) && index_of[value] != kUndefined) {
        sub.SetFunctionValue(f, image, index_of[value]);
      }
    }
  }
  for (int c = 0; c < sig.num_constants(); ++c) {
    if (index_of[m.Constant(c)] == kUndefined) {
      throw PreconditionError("induced substructure must contain constants");
    }
    sub.SetConstant(c, index_of[m.Constant(c)]);
  }
  return {std::move(sub),
          Embedding{std::vector<Element>(elements.begin(), elements.end())}};
}

Substructure GeneratedSubstructure(const Structure& m,
                                   std::span<const Element> elements) {
  std::vector<Element> closed = Closure(m, elements);
  return InducedSubstructure(m, closed);
}

AutomorphismGroup ComputeAutomorphismGroup(const Structure& a) {
  return AutomorphismGroup(EnumerateEmbeddings(a, a));
}

bool IsRigid(const Structure& a) {
  int count = 0;
  ForEachEmbedding(a, a, [&](const std::vector<Element>&) {
    return ++count < 2;
  });
  return count == 1;
}

std::vector<Embedding> SomeAutomorphisms(const Structure& a, int limit) {
  std::vector<Embedding> out;
  if (limit <= 0) return out;
  bool first = true;
  ForEachEmbedding(a, a, [&](const std::vector<Element>& map) {
    if (first) {
      first = false;  // identity
      return true;
    }
    out.push_back(Embedding{map});
    return static_cast<int>(out.size()) < limit;
  });
  return out;
}

}  // namespace ramseyqf
