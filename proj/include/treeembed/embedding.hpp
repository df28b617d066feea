#pragma once

#include <string>
#include <utility>
#include <vector>

#include "treeembed/graph.hpp"
#include "treeembed/tree.hpp"

namespace treeembed {

/// Partial map tree vertex -> host vertex (kUnset when not placed).
using Embedding = std::vector<Vertex>;

inline Embedding empty_embedding(const Tree& t) { return Embedding(t.order(), kUnset); }

struct ValidationReport {
  bool size_mismatch = false;
  std::vector<Vertex> unset;                            // tree vertices without an image
  std::vector<Vertex> out_of_range;                     // tree vertices mapped outside the host
  std::vector<std::pair<Vertex, Vertex>> collisions;    // tree vertex pairs sharing an image
  std::vector<Edge> non_edges;                          // tree edges whose images are not adjacent

  /// Partial map is injective and edge-preserving on its set entries.
  bool consistent() const {
    return !size_mismatch && out_of_range.empty() && collisions.empty() && non_edges.empty();
  }
  bool complete_and_valid() const { return consistent() && unset.empty(); }
};

inline ValidationReport validate_embedding(const Tree& t, const Graph& g, const Embedding& f) {
  ValidationReport r;
  if (f.size() != t.order()) {
    r.size_mismatch = true;
    return r;
  }
  std::vector<Vertex> owner(g.order(), kUnset);
  for (Vertex a = 0; a < static_cast<Vertex>(t.order()); ++a) {
    Vertex x = f[a];
    if (x == kUnset) {
      r.unset.push_back(a);
      continue;
    }
    if (!g.contains(x)) {
      r.out_of_range.push_back(a);
      continue;
    }
    if (owner[x] != kUnset) {
      r.collisions.emplace_back(owner[x], a);
    } else {
      owner[x] = a;
    }
  }
  for (auto [a, b] : t.edges()) {
    Vertex x = f[a], y = f[b];
    if (x == kUnset || y == kUnset || !g.contains(x) || !g.contains(y)) continue;
    if (x == y || !g.adjacent(x, y)) r.non_edges.emplace_back(a, b);
  }
  return r;
}

inline std::string describe(const ValidationReport& r) {
  if (r.size_mismatch) return "map length differs from tree order";
  if (r.complete_and_valid()) return "complete and valid";
  std::string s;
  auto add = [&](const std::string& part) { s += (s.empty() ? "" : "; ") + part; };
  if (!r.unset.empty()) add(std::to_string(r.unset.size()) + " unset");
  if (!r.out_of_range.empty()) add(std::to_string(r.out_of_range.size()) + " out of range");
  if (!r.collisions.empty()) add(std::to_string(r.collisions.size()) + " injectivity violations");
  if (!r.non_edges.empty()) add(std::to_string(r.non_edges.size()) + " non-edges");
  return s;
}

}  // namespace treeembed
