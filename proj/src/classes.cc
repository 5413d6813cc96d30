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

#include "ramseyqf/classes.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <tuple>
#include <utility>

#include "ramseyqf/builders.h"
#include "ramseyqf/canonical.h"
#include "ramseyqf/embedding.h"
#include "ramseyqf/error.h"
#include "ramseyqf/expansions.h"

namespace ramseyqf {

namespace {

constexpr int kMaxSubsetDomain = 20;

std::string Str(int x) { return std::to_string(x); }

std::vector<Tuple> SubsetsOf(int n, int max_size) {
  if (n > kMaxSubsetDomain) {
    throw InputError("member of size " + Str(n) + " is too large to scan");
  }
  std::vector<Tuple> out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > max_size) continue;
    Tuple s;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

PropertyVerdict Aggregate(const std::vector<Evidence>& evidence) {
  bool open = false;
  for (const Evidence& e : evidence) {
    if (e.kind.starts_with("no-") || e.kind == "missing") {
      if (e.definite) return PropertyVerdict::kFail;
      open = true;
    }
  }
  return open ? PropertyVerdict::kInconclusive : PropertyVerdict::kPass;
}

// --- HP ---

struct HpItem {
  int member;
  Tuple closure;
};

std::vector<HpItem> HpItems(const FiniteClass& f) {
  std::vector<HpItem> out;
  for (int i = 0; i < f.size(); ++i) {
    const Structure& m = f.members[i];
    std::set<Tuple> seen;
    for (const Tuple& s : SubsetsOf(m.size(), m.size())) {
      Tuple closure = Closure(m, s);
      if (closure.empty() || !seen.insert(closure).second) continue;
      out.push_back({i, std::move(closure)});
    }
  }
  return out;
}

// --- JEP / AP ---

bool Hereditary(const FiniteClass& f) {
  for (const HpItem& item : HpItems(f)) {
    if (!f.IndexOf(GeneratedSubstructure(f.members[item.member], item.closure)
                       .structure)) {
      return false;
    }
  }
  return true;
}

std::optional<Embedding> FirstEmbedding(const Structure& host,
                                        const Structure& pattern) {
  std::optional<Embedding> out;
  ForEachEmbedding(host, pattern, [&](const std::vector<Element>& map) {
    out = Embedding{map};
    return false;
  });
  return out;
}

// Pairs whose disjoint union fits within the bound.
std::vector<std::pair<int, int>> JepPairs(const FiniteClass& f) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < f.size(); ++i) {
    for (int j = i; j < f.size(); ++j) {
      if (f.members[i].size() + f.members[j].size() <= f.bound) {
        out.push_back({i, j});
      }
    }
  }
  return out;
}

struct ApConfig {
  int a, b, c;
  Tuple e, f;
};

// Embeddings pattern -> host that are lexicographically least in their
// orbit under Aut(host).
std::vector<Tuple> OrbitRepresentatives(const Structure& host,
                                        const AutomorphismGroup& aut,
                                        const Structure& pattern) {
  std::vector<Tuple> out;
  for (const Embedding& e : EnumerateEmbeddings(host, pattern)) {
    bool least = true;
    for (const Embedding& s : aut.elements()) {
      if (Compose(s, e).map < e.map) {
        least = false;
        break;
      }
    }
    if (least) out.push_back(e.map);
  }
  return out;
}

std::vector<ApConfig> ApConfigs(const FiniteClass& f) {
  std::vector<AutomorphismGroup> auts;
  for (const Structure& m : f.members) {
    auts.push_back(ComputeAutomorphismGroup(m));
  }
  std::vector<ApConfig> out;
  for (int a = 0; a < f.size(); ++a) {
    for (int b = 0; b < f.size(); ++b) {
      std::vector<Tuple> es =
          OrbitRepresentatives(f.members[b], auts[b], f.members[a]);
      if (es.empty()) continue;
      for (int c = b; c < f.size(); ++c) {
        if (f.members[b].size() + f.members[c].size() - f.members[a].size() >
            f.bound) {
          continue;
        }
        std::vector<Tuple> fs =
            OrbitRepresentatives(f.members[c], auts[c], f.members[a]);
        for (const Tuple& e : es) {
          for (const Tuple& g : fs) {
            if (b == c && g < e) continue;
            out.push_back({a, b, c, e, g});
          }
        }
      }
    }
  }
  return out;
}

struct Amalgam {
  int d;
  Tuple g, h;
};

std::optional<Amalgam> FindAmalgam(const FiniteClass& f,
                                   const ApConfig& cfg) {
  const Structure& b = f.members[cfg.b];
  const Structure& c = f.members[cfg.c];
  for (int d = 0; d < f.size(); ++d) {
    const Structure& dm = f.members[d];
    if (dm.size() < std::max(b.size(), c.size())) continue;
    std::vector<Embedding> hs = EnumerateEmbeddings(dm, c);
    if (hs.empty()) continue;
    std::optional<Amalgam> found;
    ForEachEmbedding(dm, b, [&](const std::vector<Element>& g) {
      for (const Embedding& h : hs) {
        bool agree = true;
        for (size_t x = 0; x < cfg.e.size() && agree; ++x) {
          agree = g[cfg.e[x]] == h.map[cfg.f[x]];
        }
        if (agree) {
          found = Amalgam{d, g, h.map};
          return false;
        }
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

// --- ERP / f-ERP ---

struct ErpPair {
  int a, b;
  std::vector<int> candidates;
};

std::vector<ErpPair> ErpPairs(const FiniteClass& f, const ErpBounds& bounds) {
  std::vector<ErpPair> out;
  for (int b = 0; b < f.size(); ++b) {
    const Structure& bm = f.members[b];
    if (bm.size() > bounds.max_b) continue;
    for (int a = 0; a < f.size(); ++a) {
      const Structure& am = f.members[a];
      if (am.size() > bounds.max_a || am.size() > bm.size() ||
          !Embeds(bm, am)) {
        continue;
      }
      ErpPair pair{a, b, {}};
      for (int c = 0; c < f.size(); ++c) {
        const Structure& cm = f.members[c];
        if (cm.size() >= bm.size() && cm.size() <= bounds.witness &&
            Embeds(cm, bm)) {
          pair.candidates.push_back(c);
        }
      }
      out.push_back(std::move(pair));
    }
  }
  return out;
}

struct FErpPair {
  int member;
  Tuple b, a;
  std::vector<int> candidates;
};

ArrowInstance SubsetInstance(const FiniteClass& f, const FErpPair& p,
                             int host) {
  return BuildTupleArrowInstance(f.members[host], {}, f.members[p.member],
                                 p.b, {p.a}, {2}, {1});
}

std::vector<FErpPair> FErpPairs(const FiniteClass& f,
                                const ErpBounds& bounds) {
  std::vector<FErpPair> out;
  std::set<std::pair<std::string, Tuple>> seen;
  for (int m = 0; m < f.size(); ++m) {
    const Structure& mm = f.members[m];
    for (const Tuple& b : SubsetsOf(mm.size(), bounds.max_b)) {
      std::string key = ComputeQfType(mm, b).key();
      for (const Tuple& pos :
           SubsetsOf(static_cast<int>(b.size()), bounds.max_a)) {
        if (!seen.insert({key, pos}).second) continue;
        FErpPair p{m, b, {}, {}};
        for (int x : pos) p.a.push_back(b[x]);
        for (int h = 0; h < f.size(); ++h) {
          if (f.members[h].size() > bounds.witness) continue;
          if (!EnumerateQfCopiesOf(f.members[h], mm, b).empty()) {
            p.candidates.push_back(h);
          }
        }
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

// Decides each candidate in turn; fills an arrow or a no-arrow item.
Evidence DecideCandidates(
    const std::vector<int>& candidates,
    const std::function<ArrowInstance(int)>& instance_for,
    const ArrowConfig& config, int64_t& nodes) {
  Evidence ev;
  bool all_failed = !candidates.empty();
  for (int c : candidates) {
    ArrowResult r =
        SolveArrowInstance(instance_for(c), ArrowMode::kDecide, config);
    nodes += r.stats.nodes;
    if (r.verdict == Verdict::kHolds) {
      ev.candidates = {c};
      ev.proof = std::move(r.proof);
      ev.colorings.clear();
      return ev;
    }
    if (r.verdict == Verdict::kFails) {
      ev.candidates.push_back(c);
      ev.colorings.push_back(std::move(r.coloring));
    } else {
      all_failed = false;
    }
  }
  ev.kind = "no";
  ev.definite = all_failed;
  ev.note = candidates.empty()      ? "no candidate within the witness bound"
            : all_failed            ? "every candidate fails"
                                    : "node budget exhausted on a candidate";
  return ev;
}

std::string CheckSubstructure(const FiniteClass& f, int m, const Tuple& s,
                              std::optional<int> expected) {
  const Structure& mm = f.members[m];
  for (Element x : s) {
    if (!mm.InDomain(x)) return "subset leaves member " + Str(m);
  }
  if (Closure(mm, s) != s) return "subset of member " + Str(m) + " not closed";
  std::optional<int> k = f.IndexOf(GeneratedSubstructure(mm, s).structure);
  if (k != expected) return "substructure of member " + Str(m) + " misfiled";
  return "";
}

bool IsEmbeddingBetween(const FiniteClass& f, int from, int to,
                        const Tuple& map) {
  if (from < 0 || to < 0 || from >= f.size() || to >= f.size()) return false;
  return IsEmbedding(f.members[from], f.members[to], map);
}

std::string CheckCandidates(const Evidence& ev,
                            const std::vector<int>& candidates,
                            const std::function<ArrowInstance(int)>& inst) {
  if (ev.kind.starts_with("no-")) {
    if (ev.colorings.size() != ev.candidates.size()) {
      return "colourings do not match candidates";
    }
    for (size_t i = 0; i < ev.candidates.size(); ++i) {
      if (std::find(candidates.begin(), candidates.end(), ev.candidates[i]) ==
          candidates.end()) {
        return "unknown candidate " + Str(ev.candidates[i]);
      }
      if (!VerifyBadColoring(inst(ev.candidates[i]), ev.colorings[i])) {
        return "colouring for candidate " + Str(ev.candidates[i]) +
               " is not bad";
      }
    }
    bool covers = ev.candidates == candidates && !candidates.empty();
    if (ev.definite != covers) return "definite flag disagrees";
    return "";
  }
  if (ev.candidates.size() != 1 ||
      std::find(candidates.begin(), candidates.end(), ev.candidates[0]) ==
          candidates.end()) {
    return "arrow witness is not a candidate";
  }
  std::string error;
  if (!CheckExhaustionProof(inst(ev.candidates[0]).problem, ev.proof,
                            &error)) {
    return "exhaustion proof rejected: " + error;
  }
  return "";
}

}  // namespace

std::string_view ClassGeneratorName(ClassGenerator g) {
  switch (g) {
    case ClassGenerator::kLinearOrders:
      return "linear-orders";
    case ClassGenerator::kPureSets:
      return "pure-sets";
    case ClassGenerator::kGraphs:
      return "graphs";
    case ClassGenerator::kOrderedGraphs:
      return "ordered-graphs";
    case ClassGenerator::kSuccessorChains:
      return "successor-chains";
    case ClassGenerator::kFromFile:
      return "from-file";
  }
  return "?";
}

ClassGenerator ParseClassGenerator(std::string_view name) {
  for (ClassGenerator g :
       {ClassGenerator::kLinearOrders, ClassGenerator::kPureSets,
        ClassGenerator::kGraphs, ClassGenerator::kOrderedGraphs,
        ClassGenerator::kSuccessorChains}) {
    if (name == ClassGeneratorName(g)) return g;
  }
  throw InputError("unknown generator '" + std::string(name) + "'");
}

std::optional<int> FiniteClass::IndexOf(const Structure& m) const {
  const std::string key = CanonicalKey(m);
  for (int i = 0; i < size(); ++i) {
    if (members[i].size() == m.size() && keys[i] == key) return i;
  }
  return std::nullopt;
}

std::vector<Structure> FiniteClass::MembersUpTo(int max_size) const {
  std::vector<Structure> out;
  for (const Structure& m : members) {
    if (m.size() <= max_size) out.push_back(m);
  }
  return out;
}

FiniteClass MakeClass(std::string name, const Signature& signature,
                      const std::vector<Structure>& members, int bound,
                      ClassGenerator generator) {
  std::map<std::pair<int, std::string>, Structure> unique;
  int largest = 0;
  for (const Structure& m : members) {
    RequireSameSymbols(signature, m.signature(), "class member");
    m.Validate();
    largest = std::max(largest, m.size());
    Structure canon = CanonicalForm(m);
    canon.set_name(m.name());
    unique.emplace(std::make_pair(m.size(), CanonicalKey(m)),
                   std::move(canon));
  }
  FiniteClass f;
  f.name = std::move(name);
  f.signature = signature;
  f.bound = bound < 0 ? largest : bound;
  f.generator = generator;
  if (largest > f.bound) {
    throw InputError("member of size " + Str(largest) +
                     " exceeds the class bound " + Str(f.bound));
  }
  for (auto& [key, m] : unique) {
    f.keys.push_back(key.second);
    f.members.push_back(std::move(m));
  }
  return f;
}

FiniteClass GenerateClass(ClassGenerator generator, int upto) {
  if (upto < 0) throw InputError("generator bound must be >= 0");
  std::vector<Structure> members;
  Signature sig;
  switch (generator) {
    case ClassGenerator::kLinearOrders:
      sig = LinearOrderSignature();
      for (int n = 0; n <= upto; ++n) members.push_back(LinearOrder(n));
      break;
    case ClassGenerator::kPureSets:
      sig = PureSetSignature();
      for (int n = 0; n <= upto; ++n) members.push_back(PureSet(n));
      break;
    case ClassGenerator::kSuccessorChains:
      sig = SuccessorChainSignature();
      for (int n = 0; n <= upto; ++n) members.push_back(SuccessorChain(n));
      break;
    case ClassGenerator::kGraphs:
    case ClassGenerator::kOrderedGraphs: {
      const bool ordered = generator == ClassGenerator::kOrderedGraphs;
      sig = ordered ? OrderedGraphSignature() : GraphSignature();
      const int e_rel = ordered ? 1 : 0;
      // Each graph on n points extends one on n - 1 points by a top vertex.
      std::vector<Structure> level = {ordered ? OrderedGraph(0, {})
                                              : Graph(0, {})};
      members = level;
      for (int n = 1; n <= upto; ++n) {
        std::vector<Structure> next;
        for (const Structure& g : level) {
          std::vector<std::pair<Element, Element>> base;
          for (const Tuple& t : g.relation(e_rel).tuples()) {
            if (t[0] < t[1]) base.push_back({t[0], t[1]});
          }
          for (uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
            auto edges = base;
            for (int v = 0; v < n - 1; ++v) {
              if (mask >> v & 1) edges.push_back({v, n - 1});
            }
            next.push_back(ordered ? OrderedGraph(n, edges) : Graph(n, edges));
          }
        }
        if (!ordered) {
          next = MakeClass("", sig, next, n).members;
        }
        members.insert(members.end(), next.begin(), next.end());
        level = std::move(next);
      }
      break;
    }
    case ClassGenerator::kFromFile:
      throw InputError("from-file is not a generator");
  }
  return MakeClass(std::string(ClassGeneratorName(generator)) + "-upto-" +
                       Str(upto),
                   sig, members, upto, generator);
}

std::string_view PropertyVerdictName(PropertyVerdict v) {
  switch (v) {
    case PropertyVerdict::kPass:
      return "PASS";
    case PropertyVerdict::kFail:
      return "FAIL";
    case PropertyVerdict::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

PropertyVerdict ParsePropertyVerdict(std::string_view name) {
  if (name == "PASS") return PropertyVerdict::kPass;
  if (name == "FAIL") return PropertyVerdict::kFail;
  if (name == "INCONCLUSIVE") return PropertyVerdict::kInconclusive;
  throw InputError("unknown property verdict '" + std::string(name) + "'");
}

PropertyReport HpCheck(const FiniteClass& f) {
  PropertyReport report;
  report.property = "HP";
  report.class_bound = f.bound;
  for (HpItem& item : HpItems(f)) {
    std::optional<int> k = f.IndexOf(
        GeneratedSubstructure(f.members[item.member], item.closure).structure);
    Evidence ev;
    ev.maps = {std::move(item.closure)};
    if (k) {
      ev.kind = "sub";
      ev.members = {item.member, *k};
    } else {
      ev.kind = "missing";
      ev.members = {item.member};
      ev.definite = true;
    }
    report.evidence.push_back(std::move(ev));
  }
  report.verdict = Aggregate(report.evidence);
  return report;
}

PropertyReport JepCheck(const FiniteClass& f) {
  PropertyReport report;
  report.property = "JEP";
  report.class_bound = f.bound;
  const bool hereditary = Hereditary(f);
  for (auto [i, j] : JepPairs(f)) {
    {
      Evidence ev;
      for (int k = 0; k < f.size() && ev.kind.empty(); ++k) {
        std::optional<Embedding> g = FirstEmbedding(f.members[k], f.members[i]);
        if (!g) continue;
        std::optional<Embedding> h = FirstEmbedding(f.members[k], f.members[j]);
        if (!h) continue;
        ev.kind = "joint";
        ev.members = {i, j, k};
        ev.maps = {g->map, h->map};
      }
      if (ev.kind.empty()) {
        ev.kind = "no-joint";
        ev.members = {i, j};
        ev.definite = hereditary;
        ev.note = ev.definite ? "no member embeds both"
                              : "the class is not hereditary";
      }
      report.evidence.push_back(std::move(ev));
    }
  }
  report.verdict = Aggregate(report.evidence);
  return report;
}

PropertyReport ApCheck(const FiniteClass& f) {
  PropertyReport report;
  report.property = "AP";
  report.class_bound = f.bound;
  const bool hereditary = Hereditary(f);
  for (ApConfig& cfg : ApConfigs(f)) {
    Evidence ev;
    if (std::optional<Amalgam> am = FindAmalgam(f, cfg)) {
      ev.kind = "amalgam";
      ev.members = {cfg.a, cfg.b, cfg.c, am->d};
      ev.maps = {cfg.e, cfg.f, am->g, am->h};
    } else {
      ev.kind = "no-amalgam";
      ev.members = {cfg.a, cfg.b, cfg.c};
      ev.maps = {cfg.e, cfg.f};
      ev.definite = hereditary;
      ev.note = ev.definite ? "no member amalgamates"
                            : "the class is not hereditary";
    }
    report.evidence.push_back(std::move(ev));
  }
  report.verdict = Aggregate(report.evidence);
  return report;
}

PropertyReport ErpCheck(const FiniteClass& f, const ErpBounds& bounds,
                        const ArrowConfig& config) {
  PropertyReport report;
  report.property = "ERP";
  report.class_bound = f.bound;
  report.erp_bounds = bounds;
  for (const ErpPair& p : ErpPairs(f, bounds)) {
    auto inst = [&](int c) {
      return BuildArrowInstance(f.members[c], f.members[p.b],
                                {f.members[p.a]}, {2}, {1});
    };
    Evidence ev = DecideCandidates(p.candidates, inst, config,
                                   report.search_nodes);
    ev.kind = ev.kind == "no" ? "no-arrow" : "arrow";
    ev.members = {p.a, p.b};
    report.evidence.push_back(std::move(ev));
  }
  report.verdict = Aggregate(report.evidence);
  return report;
}

PropertyReport FErpCheck(const FiniteClass& f, const ErpBounds& bounds,
                         const ArrowConfig& config) {
  PropertyReport report;
  report.property = "f-ERP";
  report.class_bound = f.bound;
  report.erp_bounds = bounds;
  for (const FErpPair& p : FErpPairs(f, bounds)) {
    auto inst = [&](int h) { return SubsetInstance(f, p, h); };
    Evidence ev = DecideCandidates(p.candidates, inst, config,
                                   report.search_nodes);
    ev.kind = ev.kind == "no" ? "no-subset-arrow" : "subset-arrow";
    ev.members = {p.member};
    ev.maps = {p.b, p.a};
    report.evidence.push_back(std::move(ev));
  }
  report.verdict = Aggregate(report.evidence);
  return report;
}

std::string VerifyPropertyReport(const FiniteClass& f,
                                 const PropertyReport& report) {
  const auto& ev = report.evidence;
  auto count_error = [&](size_t expected) {
    return "expected " + Str(static_cast<int>(expected)) +
           " evidence items, found " + Str(static_cast<int>(ev.size()));
  };
  auto item = [](size_t i, const std::string& what) {
    return what.empty() ? what : "item " + Str(static_cast<int>(i)) + ": " +
                                     what;
  };
  if (report.class_bound != f.bound) return "class bound differs";
  if (report.property == "HP") {
    std::vector<HpItem> items = HpItems(f);
    if (items.size() != ev.size()) return count_error(items.size());
    for (size_t i = 0; i < ev.size(); ++i) {
      if (ev[i].members.empty() || ev[i].members[0] != items[i].member ||
          ev[i].maps != std::vector<Tuple>{items[i].closure}) {
        return item(i, "does not match the enumeration");
      }
      std::optional<int> expected;
      if (ev[i].kind == "sub" && ev[i].members.size() == 2) {
        expected = ev[i].members[1];
      } else if (ev[i].kind != "missing" || !ev[i].definite) {
        return item(i, "unexpected kind " + ev[i].kind);
      }
      std::string err =
          CheckSubstructure(f, items[i].member, items[i].closure, expected);
      if (!err.empty()) return item(i, err);
    }
  } else if (report.property == "JEP") {
    const bool hereditary = Hereditary(f);
    std::vector<std::pair<int, int>> pairs = JepPairs(f);
    if (pairs.size() != ev.size()) return count_error(pairs.size());
    for (size_t i = 0; i < ev.size(); ++i) {
      const auto [a, b] = pairs[i];
      {
        const Evidence& e = ev[i];
        if (e.members.size() < 2 || e.members[0] != a || e.members[1] != b) {
          return item(i, "does not match the enumeration");
        }
        if (e.kind == "joint") {
          if (e.members.size() != 3 || e.maps.size() != 2 ||
              !IsEmbeddingBetween(f, a, e.members[2], e.maps[0]) ||
              !IsEmbeddingBetween(f, b, e.members[2], e.maps[1])) {
            return item(i, "joint embedding does not check");
          }
        } else if (e.kind == "no-joint") {
          for (int k = 0; k < f.size(); ++k) {
            if (Embeds(f.members[k], f.members[a]) &&
                Embeds(f.members[k], f.members[b])) {
              return item(i, "member " + Str(k) + " embeds both");
            }
          }
          if (e.definite != hereditary) return item(i, "definite flag");
        } else {
          return item(i, "unexpected kind " + e.kind);
        }
      }
    }
  } else if (report.property == "AP") {
    const bool hereditary = Hereditary(f);
    std::vector<ApConfig> configs = ApConfigs(f);
    if (configs.size() != ev.size()) return count_error(configs.size());
    for (size_t i = 0; i < ev.size(); ++i) {
      const ApConfig& c = configs[i];
      const Evidence& e = ev[i];
      if (e.members.size() < 3 || e.maps.size() < 2 || e.members[0] != c.a ||
          e.members[1] != c.b || e.members[2] != c.c || e.maps[0] != c.e ||
          e.maps[1] != c.f) {
        return item(i, "does not match the enumeration");
      }
      if (e.kind == "amalgam") {
        if (e.members.size() != 4 || e.maps.size() != 4 ||
            !IsEmbeddingBetween(f, c.b, e.members[3], e.maps[2]) ||
            !IsEmbeddingBetween(f, c.c, e.members[3], e.maps[3])) {
          return item(i, "amalgam embeddings do not check");
        }
        for (size_t x = 0; x < c.e.size(); ++x) {
          if (e.maps[2][c.e[x]] != e.maps[3][c.f[x]]) {
            return item(i, "amalgam does not commute");
          }
        }
      } else if (e.kind == "no-amalgam") {
        if (FindAmalgam(f, c)) return item(i, "an amalgam exists");
        if (e.definite != hereditary) return item(i, "definite flag");
      } else {
        return item(i, "unexpected kind " + e.kind);
      }
    }
  } else if (report.property == "ERP") {
    if (!report.erp_bounds) return "missing bounds";
    std::vector<ErpPair> pairs = ErpPairs(f, *report.erp_bounds);
    if (pairs.size() != ev.size()) return count_error(pairs.size());
    for (size_t i = 0; i < ev.size(); ++i) {
      const ErpPair& p = pairs[i];
      if (ev[i].members != std::vector<int>{p.a, p.b} ||
          (ev[i].kind != "arrow" && ev[i].kind != "no-arrow")) {
        return item(i, "does not match the enumeration");
      }
      auto inst = [&](int c) {
        return BuildArrowInstance(f.members[c], f.members[p.b],
                                  {f.members[p.a]}, {2}, {1});
      };
      std::string err = CheckCandidates(ev[i], p.candidates, inst);
      if (!err.empty()) return item(i, err);
    }
  } else if (report.property == "f-ERP") {
    if (!report.erp_bounds) return "missing bounds";
    std::vector<FErpPair> pairs = FErpPairs(f, *report.erp_bounds);
    if (pairs.size() != ev.size()) return count_error(pairs.size());
    for (size_t i = 0; i < ev.size(); ++i) {
      const FErpPair& p = pairs[i];
      if (ev[i].members != std::vector<int>{p.member} ||
          ev[i].maps != std::vector<Tuple>{p.b, p.a} ||
          (ev[i].kind != "subset-arrow" && ev[i].kind != "no-subset-arrow")) {
        return item(i, "does not match the enumeration");
      }
      auto inst = [&](int h) { return SubsetInstance(f, p, h); };
      std::string err = CheckCandidates(ev[i], p.candidates, inst);
      if (!err.empty()) return item(i, err);
    }
  } else {
    return "unknown property " + report.property;
  }
  if (Aggregate(ev) != report.verdict) return "verdict does not follow";
  return "";
}

std::vector<RigidityEntry> RigidityScan(const FiniteClass& f) {
  std::vector<RigidityEntry> out;
  for (int i = 0; i < f.size(); ++i) {
    int n = ComputeAutomorphismGroup(f.members[i]).size();
    if (n > 1) out.push_back({i, n});
  }
  return out;
}

std::string_view OrderVerdictName(OrderVerdict v) {
  switch (v) {
    case OrderVerdict::kOrderable:
      return "ORDERABLE";
    case OrderVerdict::kNotOrderable:
      return "NOT-ORDERABLE";
    case OrderVerdict::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

// Binary types of distinct pairs, per member a matrix of type indices.
struct TypeTable {
  std::vector<BinaryType> types;
  std::vector<std::vector<std::vector<int>>> of;  // of[m][x][y], -1 on x == y
};

TypeTable BuildTypeTable(const FiniteClass& f) {
  TypeTable t;
  std::map<QfType, int> index;
  for (int m = 0; m < f.size(); ++m) {
    const int n = f.members[m].size();
    t.of.emplace_back(n, std::vector<int>(n, -1));
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        if (x == y) continue;
        QfType q = ComputeQfType(f.members[m], Tuple{x, y});
        auto [it, fresh] = index.emplace(q, static_cast<int>(t.types.size()));
        if (fresh) t.types.push_back({q, m, x, y, -1});
        t.of[m][x][y] = it->second;
      }
    }
  }
  for (BinaryType& bt : t.types) {
    bt.transpose = t.of[bt.member][bt.y][bt.x];
  }
  return t;
}

struct Triple {
  int u, v, w;  // types of (x,y), (y,z), (x,z)
  int member;
  Element x, y, z;
};

// in(type) under a (partial) decision vector; -1 when undecided.
int Membership(const std::vector<int>& pair_of, const std::vector<int>& first,
               const std::vector<bool>& decisions, int type) {
  const int p = pair_of[type];
  if (p >= static_cast<int>(decisions.size())) return -1;
  return (type == first[p]) == decisions[p] ? 1 : 0;
}

bool Violated(const std::vector<int>& pair_of, const std::vector<int>& first,
              const std::vector<bool>& decisions, const Triple& t) {
  return Membership(pair_of, first, decisions, t.u) == 1 &&
         Membership(pair_of, first, decisions, t.v) == 1 &&
         Membership(pair_of, first, decisions, t.w) == 0;
}

struct PairLayout {
  std::vector<int> first;    // first type of each transpose pair
  std::vector<int> pair_of;  // per type
};

PairLayout Layout(const std::vector<BinaryType>& types) {
  PairLayout l;
  l.pair_of.assign(types.size(), -1);
  for (int i = 0; i < static_cast<int>(types.size()); ++i) {
    if (l.pair_of[i] >= 0) continue;
    l.pair_of[i] = l.pair_of[types[i].transpose] =
        static_cast<int>(l.first.size());
    l.first.push_back(i);
  }
  return l;
}

}  // namespace

OrderabilityResult OrderabilitySearch(const FiniteClass& f) {
  OrderabilityResult result;
  TypeTable table = BuildTypeTable(f);
  result.types = table.types;
  for (int i = 0; i < static_cast<int>(result.types.size()); ++i) {
    if (result.types[i].transpose == i) {
      result.verdict = OrderVerdict::kNotOrderable;
      result.symmetric_type = i;
      return result;
    }
  }
  PairLayout layout = Layout(result.types);
  const int pairs = static_cast<int>(layout.first.size());
  // Triples bucketed by the last pair they mention; one realizer each.
  std::vector<std::vector<Triple>> bucket(pairs);
  std::set<std::tuple<int, int, int>> seen;
  for (int m = 0; m < f.size(); ++m) {
    const int n = f.members[m].size();
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        for (Element z = 0; z < n; ++z) {
          if (x == y || y == z || x == z) continue;
          Triple t{table.of[m][x][y], table.of[m][y][z], table.of[m][x][z],
                   m, x, y, z};
          if (!seen.insert({t.u, t.v, t.w}).second) continue;
          int last = std::max({layout.pair_of[t.u], layout.pair_of[t.v],
                               layout.pair_of[t.w]});
          bucket[last].push_back(t);
        }
      }
    }
  }
  std::vector<bool> decisions;
  std::vector<OrderabilityResult::Leaf> leaves;
  bool found = false;
  auto dfs = [&](auto&& self) -> void {
    ++result.nodes;
    const int depth = static_cast<int>(decisions.size());
    if (depth > 0) {
      for (const Triple& t : bucket[depth - 1]) {
        if (Violated(layout.pair_of, layout.first, decisions, t)) {
          leaves.push_back({decisions, t.member, t.x, t.y, t.z});
          return;
        }
      }
    }
    if (depth == pairs) {
      found = true;
      return;
    }
    for (bool choice : {true, false}) {
      decisions.push_back(choice);
      self(self);
      if (found) return;
      decisions.pop_back();
    }
  };
  dfs(dfs);
  if (found) {
    result.verdict = OrderVerdict::kOrderable;
    for (int p = 0; p < pairs; ++p) {
      const int t = layout.first[p];
      result.phi.push_back(decisions[p] ? t : result.types[t].transpose);
    }
    std::sort(result.phi.begin(), result.phi.end());
  } else {
    result.verdict = OrderVerdict::kNotOrderable;
    result.leaves = std::move(leaves);
  }
  return result;
}

std::set<QfType> PhiTypes(const OrderabilityResult& result) {
  std::set<QfType> out;
  for (int i : result.phi) out.insert(result.types.at(i).type);
  return out;
}

std::string VerifyOrderability(const FiniteClass& f,
                               const OrderabilityResult& result) {
  TypeTable table = BuildTypeTable(f);
  if (table.types.size() != result.types.size()) return "type list differs";
  for (size_t i = 0; i < table.types.size(); ++i) {
    if (table.types[i].type != result.types[i].type ||
        table.types[i].transpose != result.types[i].transpose) {
      return "type " + Str(static_cast<int>(i)) + " differs";
    }
  }
  switch (result.verdict) {
    case OrderVerdict::kOrderable: {
      std::set<QfType> phi = PhiTypes(result);
      for (int m = 0; m < f.size(); ++m) {
        if (!DefineByTypeUnion(f.members[m], phi).IsStrictLinearOrder()) {
          return "phi is not a strict linear order on member " + Str(m);
        }
      }
      return "";
    }
    case OrderVerdict::kNotOrderable: {
      if (result.symmetric_type) {
        int s = *result.symmetric_type;
        if (s < 0 || s >= static_cast<int>(table.types.size()) ||
            table.types[s].transpose != s) {
          return "claimed symmetric type is not symmetric";
        }
        return "";
      }
      PairLayout layout = Layout(table.types);
      const int pairs = static_cast<int>(layout.first.size());
      size_t next = 0;
      std::vector<bool> path;
      std::string error;
      auto cover = [&](auto&& self) -> bool {
        if (next < result.leaves.size() &&
            result.leaves[next].decisions == path) {
          const auto& leaf = result.leaves[next++];
          if (leaf.member < 0 || leaf.member >= f.size()) {
            error = "leaf member out of range";
            return false;
          }
          const auto& of = table.of[leaf.member];
          const int n = f.members[leaf.member].size();
          for (Element e : {leaf.x, leaf.y, leaf.z}) {
            if (e < 0 || e >= n) {
              error = "leaf point out of range";
              return false;
            }
          }
          if (leaf.x == leaf.y || leaf.y == leaf.z || leaf.x == leaf.z) {
            error = "leaf triple repeats a point";
            return false;
          }
          Triple t{of[leaf.x][leaf.y], of[leaf.y][leaf.z], of[leaf.x][leaf.z],
                   leaf.member, leaf.x, leaf.y, leaf.z};
          if (!Violated(layout.pair_of, layout.first, path, t)) {
            error = "leaf triple is not violated";
            return false;
          }
          return true;
        }
        if (static_cast<int>(path.size()) == pairs) {
          error = "assignment not refuted";
          return false;
        }
        for (bool choice : {true, false}) {
          path.push_back(choice);
          bool ok = self(self);
          path.pop_back();
          if (!ok) return false;
        }
        return true;
      };
      if (!cover(cover)) return error;
      if (next != result.leaves.size()) return "extra leaves";
      return "";
    }
    case OrderVerdict::kInconclusive:
      return "";
  }
  return "";
}

std::vector<Element> ElfMinimize(const Structure& b,
                                 std::span<const Element> a) {
  std::set<Element> points;
  for (const Tuple& copy : EnumerateQfCopies(b, a)) {
    points.insert(copy.begin(), copy.end());
  }
  return {points.begin(), points.end()};
}

}  // namespace ramseyqf
