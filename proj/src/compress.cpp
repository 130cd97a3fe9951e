// Copyright 2026 The csumm Authors
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

#include "csumm/compress.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace csumm {

void RequirementGraph::add(int from, int to) {
  if (from == to) return;
  requires_arcs.emplace_back(from, to);
}

void RequirementGraph::finalize() {
  std::sort(requires_arcs.begin(), requires_arcs.end());
  requires_arcs.erase(
      std::unique(requires_arcs.begin(), requires_arcs.end()),
      requires_arcs.end());
}

bool RequirementGraph::closed(const std::vector<bool>& selected) const {
  for (auto [from, to] : requires_arcs) {
    if (from >= 0 && from < static_cast<int>(selected.size()) &&
        to >= 0 && to < static_cast<int>(selected.size())) {
      if (selected[from] && !selected[to]) return false;
    }
  }
  return true;
}

namespace {

// Strips PTB function tags: "NP-SBJ=1" -> "NP".
std::string base_label(const std::string& label) {
  size_t cut = label.find_first_of("-=");
  if (cut == std::string::npos || cut == 0) return label;
  return label.substr(0, cut);
}

// Union-find over EDU indices for Same-Unit clusters.
struct Clusters {
  std::vector<int> parent;
  explicit Clusters(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

UnitDerivation derive_rst_units(const Sentence& sentence) {
  UnitDerivation out;
  const int edu_count = static_cast<int>(sentence.edus.size());
  for (int i = 0; i < edu_count; ++i) {
    TextualUnit u;
    u.id = i;
    u.sentence = sentence.index;
    u.begin = sentence.edus[i].first;
    u.end = sentence.edus[i].second;
    u.kind = UnitKind::kEdu;
    out.units.push_back(u);
  }

  Clusters clusters(edu_count);
  for (const DiscourseDep& d : sentence.deps) {
    if (d.same_unit >= 0) clusters.merge(d.edu, d.same_unit);
  }

  // Cycle check on the head arcs with Same-Unit clusters contracted.
  {
    std::vector<std::vector<int>> adj(edu_count);
    for (const DiscourseDep& d : sentence.deps) {
      if (d.head < 0) continue;
      int a = clusters.find(d.edu);
      int b = clusters.find(d.head);
      if (a != b) adj[a].push_back(b);
    }
    std::vector<int> state(edu_count, 0);  // 0 new, 1 open, 2 done
    std::function<void(int)> visit = [&](int v) {
      state[v] = 1;
      for (int w : adj[v]) {
        if (state[w] == 1) {
          throw ValidationError(
              "discourse dependency cycle in sentence " +
              std::to_string(sentence.index));
        }
        if (state[w] == 0) visit(w);
      }
      state[v] = 2;
    };
    for (int v = 0; v < edu_count; ++v) {
      if (state[v] == 0 && clusters.find(v) == v) visit(v);
    }
  }

  for (const DiscourseDep& d : sentence.deps) {
    if (d.head >= 0) out.graph.add(d.edu, d.head);
    if (d.same_unit >= 0) {
      out.graph.add(d.edu, d.same_unit);
      out.graph.add(d.same_unit, d.edu);
    }
  }
  out.graph.finalize();
  return out;
}

std::vector<SyntacticCompression> find_syntactic_compressions(
    const Sentence& sentence) {
  std::vector<SyntacticCompression> found;
  const int n = static_cast<int>(sentence.tokens.size());

  std::function<void(const ParseNode&)> walk = [&](const ParseNode& node) {
    if (node.is_word) return;
    if (base_label(node.label) == "NP" && node.children.size() >= 2) {
      const auto& kids = node.children;
      bool np_seen = false;
      for (size_t i = 0; i < kids.size(); ++i) {
        const std::string label =
            kids[i].is_word ? std::string() : base_label(kids[i].label);
        if (label == "CC" && np_seen && i + 1 < kids.size() &&
            !kids[i + 1].is_word && base_label(kids[i + 1].label) == "NP") {
          found.push_back({sentence.index, kids[i].begin, kids[i + 1].end,
                           CompressionPattern::kCoordinationSecondConjunct});
        }
        if (label == "PP" && np_seen) {
          found.push_back({sentence.index, kids[i].begin, kids[i].end,
                           CompressionPattern::kPpModifierOfNp});
        }
        if (label == "NP") np_seen = true;
      }
    }
    for (const ParseNode& child : node.children) walk(child);
  };
  walk(sentence.parse);

  // Keep spans strictly inside the sentence and drop duplicates.
  std::vector<SyntacticCompression> out;
  for (const SyntacticCompression& c : found) {
    if (c.begin >= c.end) continue;
    if (c.begin == 0 && c.end == n) continue;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(),
            [](const SyntacticCompression& a, const SyntacticCompression& b) {
              return std::tie(a.begin, a.end, a.pattern) <
                     std::tie(b.begin, b.end, b.pattern);
            });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct Fragment {
  int begin;
  int end;
  UnitKind kind;
};

}  // namespace

UnitDerivation augment(const UnitDerivation& rst,
                       const std::vector<SyntacticCompression>& compressions) {
  // Work on fragments keyed by index; arcs re-point as fragments split.
  std::vector<Fragment> fragments;
  fragments.reserve(rst.units.size());
  int sentence = rst.units.empty() ? 0 : rst.units.front().sentence;
  for (const TextualUnit& u : rst.units) {
    fragments.push_back({u.begin, u.end, u.kind});
  }
  std::vector<std::pair<int, int>> arcs = rst.graph.requires_arcs;

  for (size_t host = 0; host < rst.units.size(); ++host) {
    const int i = rst.units[host].begin;
    const int j = rst.units[host].end;

    // Compressions wholly inside this EDU, maximal ones only.
    std::vector<std::pair<int, int>> inside;
    for (const SyntacticCompression& c : compressions) {
      if (c.begin >= i && c.end <= j && !(c.begin == i && c.end == j)) {
        inside.emplace_back(c.begin, c.end);
      }
    }
    std::vector<std::pair<int, int>> maximal;
    for (auto span : inside) {
      bool nested = false;
      for (auto other : inside) {
        if (other == span) continue;
        if (other.first <= span.first && span.second <= other.second) {
          nested = true;
          break;
        }
      }
      if (!nested) maximal.push_back(span);
    }
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());

    // Resolve overlaps left to right, keeping the earlier span.
    std::vector<std::pair<int, int>> kept;
    for (auto span : maximal) {
      if (!kept.empty() && span.first < kept.back().second) continue;
      kept.push_back(span);
    }

    int target = static_cast<int>(host);  // fragment currently ending at j
    for (auto [k, l] : kept) {
      const int a = fragments[target].begin;
      const int b = fragments[target].end;
      // kept spans are in order, so each lies inside the rightmost fragment
      if (k < a || l > b) continue;

      if (k == a && l == b) continue;  // would delete the whole fragment

      if (k > a && l < b) {
        // Interior: target becomes (a,k); middle and right are appended.
        fragments[target] = {a, k, UnitKind::kEduRemainder};
        int middle = static_cast<int>(fragments.size());
        fragments.push_back({k, l, UnitKind::kSyntacticDeletion});
        int right = static_cast<int>(fragments.size());
        fragments.push_back({l, b, UnitKind::kEduRemainder});
        // Former arcs stay on `target` == the left outer fragment.
        arcs.emplace_back(target, right);
        arcs.emplace_back(right, target);
        arcs.emplace_back(middle, target);
        target = right;
      } else if (k == a) {
        // Deletable prefix: remainder keeps the arcs.
        fragments[target] = {l, b, UnitKind::kEduRemainder};
        int middle = static_cast<int>(fragments.size());
        fragments.push_back({a, l, UnitKind::kSyntacticDeletion});
        arcs.emplace_back(middle, target);
      } else {
        // Deletable suffix; nothing to the right can host another span.
        fragments[target] = {a, k, UnitKind::kEduRemainder};
        int middle = static_cast<int>(fragments.size());
        fragments.push_back({k, b, UnitKind::kSyntacticDeletion});
        arcs.emplace_back(middle, target);
      }
    }
  }

  // Renumber by span order and remap the arcs.
  std::vector<int> order(fragments.size());
  for (size_t x = 0; x < order.size(); ++x) order[x] = static_cast<int>(x);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return fragments[a].begin < fragments[b].begin;
  });
  std::vector<int> rank(fragments.size());
  for (size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = static_cast<int>(pos);

  UnitDerivation out;
  for (size_t pos = 0; pos < order.size(); ++pos) {
    const Fragment& f = fragments[order[pos]];
    TextualUnit u;
    u.id = static_cast<int>(pos);
    u.sentence = sentence;
    u.begin = f.begin;
    u.end = f.end;
    u.kind = f.kind;
    out.units.push_back(u);
  }
  for (auto [from, to] : arcs) out.graph.add(rank[from], rank[to]);
  out.graph.finalize();
  return out;
}

UnitDerivation build_textual_units(const Document& doc, UnitMode mode) {
  UnitDerivation out;
  for (const Sentence& s : doc.sentences) {
    if (mode == UnitMode::kSentence) {
      TextualUnit u;
      u.id = static_cast<int>(out.units.size());
      u.sentence = s.index;
      u.begin = 0;
      u.end = static_cast<int>(s.tokens.size());
      u.kind = UnitKind::kEdu;
      out.units.push_back(u);
      continue;
    }
    UnitDerivation local = derive_rst_units(s);
    if (mode == UnitMode::kFull) {
      local = augment(local, find_syntactic_compressions(s));
    }
    const int base = static_cast<int>(out.units.size());
    for (TextualUnit u : local.units) {
      u.id += base;
      out.units.push_back(u);
    }
    for (auto [from, to] : local.graph.requires_arcs) {
      out.graph.add(from + base, to + base);
    }
  }
  out.graph.finalize();
  return out;
}

int unit_containing(const std::vector<TextualUnit>& units, int sentence,
                    int token) {
  for (const TextualUnit& u : units) {
    if (u.sentence == sentence && u.begin <= token && token < u.end) {
      return u.id;
    }
  }
  return -1;
}

std::string to_dot(const Document& doc, const UnitDerivation& derivation) {
  std::ostringstream os;
  os << "digraph units {\n  rankdir=LR;\n  node [shape=box];\n";
  for (const TextualUnit& u : derivation.units) {
    std::string text;
    const Sentence& s = doc.sentences[u.sentence];
    for (int t = u.begin; t < u.end; ++t) {
      if (!text.empty()) text += ' ';
      text += s.tokens[t].text;
    }
    std::string escaped;
    for (char c : text) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    os << "  u" << u.id << " [label=\"u" << u.id << ": " << escaped << "\"];\n";
  }
  for (auto [from, to] : derivation.graph.requires_arcs) {
    os << "  u" << from << " -> u" << to << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace csumm
