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

// Stock structures: linear orders, pure sets, graphs, ordered graphs,
// partial successor chains and random structures.

#ifndef RAMSEYQF_BUILDERS_H_
#define RAMSEYQF_BUILDERS_H_

#include <random>
#include <utility>
#include <vector>

#include "ramseyqf/structure.h"

namespace ramseyqf {

Signature LinearOrderSignature();     // lt/2
Signature PureSetSignature();         // no symbols
Signature GraphSignature();           // E/2
Signature OrderedGraphSignature();    // lt/2, E/2
Signature SuccessorChainSignature();  // s/1

// 0 < 1 < ... < n-1.
Structure LinearOrder(int n);
Structure PureSet(int n);
// Undirected loopless graph; each edge is stored in both directions.
Structure Graph(int n, const std::vector<std::pair<Element, Element>>& edges);
Structure CompleteGraph(int n);
Structure OrderedGraph(int n,
                       const std::vector<std::pair<Element, Element>>& edges);
// s(i) = i + 1 for i < n - 1; s(n - 1) undefined.
Structure SuccessorChain(int n);

// Each relation tuple present with probability `density`; each function
// value defined with probability `density`, uniform when defined. Constants
// are uniform.
Structure RandomStructure(const Signature& signature, int n, double density,
                          std::mt19937_64& rng);
Structure RandomGraph(int n, double density, std::mt19937_64& rng);

}  // namespace ramseyqf

#endif  // RAMSEYQF_BUILDERS_H_
