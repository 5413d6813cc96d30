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

#include "ramseyqf/builders.h"

#include <functional>
#include <string>

namespace ramseyqf {

namespace {

void ForEachTuple(int n, int arity, const std::function<void(const Tuple&)>& fn) {
  if (n == 0) return;
  Tuple t(arity, 0);
  while (true) {
    fn(t);
    int pos = arity - 1;
    while (pos >= 0 && ++t[pos] == n) t[pos--] = 0;
    if (pos < 0) return;
  }
}

}  // namespace

Signature LinearOrderSignature() {
  Signature sig("linear-order");
  sig.AddRelation("lt", 2);
  return sig;
}

Signature PureSetSignature() { return Signature("pure-set"); }

Signature GraphSignature() {
  Signature sig("graph");
  sig.AddRelation("E", 2);
  return sig;
}

Signature OrderedGraphSignature() {
  Signature sig("ordered-graph");
  sig.AddRelation("lt", 2);
  sig.AddRelation("E", 2);
  return sig;
}

Signature SuccessorChainSignature() {
  Signature sig("successor");
  sig.AddFunction("s", 1);
  return sig;
}

Structure LinearOrder(int n) {
  Structure m(LinearOrderSignature(), n, "LO" + std::to_string(n));
  for (Element i = 0; i < n; ++i) {
    for (Element j = i + 1; j < n; ++j) m.AddTuple(0, {i, j});
  }
  return m;
}

Structure PureSet(int n) {
  return Structure(PureSetSignature(), n, "set" + std::to_string(n));
}

Structure Graph(int n, const std::vector<std::pair<Element, Element>>& edges) {
  Structure m(GraphSignature(), n);
  for (const auto& [u, v] : edges) {
    m.AddTuple(0, {u, v});
    m.AddTuple(0, {v, u});
  }
  return m;
}

Structure CompleteGraph(int n) {
  std::vector<std::pair<Element, Element>> edges;
  for (Element i = 0; i < n; ++i) {
    for (Element j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  Structure m = Graph(n, edges);
  m.set_name("K" + std::to_string(n));
  return m;
}

Structure OrderedGraph(int n,
                       const std::vector<std::pair<Element, Element>>& edges) {
  Structure m(OrderedGraphSignature(), n);
  for (Element i = 0; i < n; ++i) {
    for (Element j = i + 1; j < n; ++j) m.AddTuple(0, {i, j});
  }
  for (const auto& [u, v] : edges) {
    m.AddTuple(1, {u, v});
    m.AddTuple(1, {v, u});
  }
  return m;
}

Structure SuccessorChain(int n) {
  Structure m(SuccessorChainSignature(), n, "chain" + std::to_string(n));
  for (Element i = 0; i + 1 < n; ++i) m.SetFunctionValue(0, {i}, i + 1);
  return m;
}

Structure RandomStructure(const Signature& signature, int n, double density,
                          std::mt19937_64& rng) {
  Structure m(signature, n);
  std::bernoulli_distribution coin(density);
  for (int r = 0; r < signature.num_relations(); ++r) {
    ForEachTuple(n, signature.relations()[r].arity, [&](const Tuple& t) {
      if (coin(rng)) m.AddTuple(r, t);
    });
  }
  if (n == 0) return m;
  std::uniform_int_distribution<Element> pick(0, n - 1);
  for (int f = 0; f < signature.num_functions(); ++f) {
    ForEachTuple(n, signature.functions()[f].arity, [&](const Tuple& t) {
      if (coin(rng)) m.SetFunctionValue(f, t, pick(rng));
    });
  }
  for (int c = 0; c < signature.num_constants(); ++c) {
    m.SetConstant(c, pick(rng));
  }
  return m;
}

Structure RandomGraph(int n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<Element, Element>> edges;
  for (Element i = 0; i < n; ++i) {
    for (Element j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

}  // namespace ramseyqf
