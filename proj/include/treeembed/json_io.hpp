#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "treeembed/dense_detect.hpp"
#include "treeembed/dense_fill.hpp"
#include "treeembed/embed_core.hpp"
#include "treeembed/embedding.hpp"
#include "treeembed/generators.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/harness.hpp"
#include "treeembed/pipelines.hpp"
#include "treeembed/sparse_path.hpp"
#include "treeembed/tree.hpp"
#include "treeembed/tree_tools.hpp"

// Deterministic JSON views of results. Keys keep insertion order and no wall-clock
// values are written, so equal inputs give byte-identical text.

namespace treeembed {

using Json = nlohmann::ordered_json;

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json vertex_json(Vertex v) { return v == kUnset ? Json(nullptr) : Json(v); }

inline Json ids_json(const VertexSet& s) { return Json(s.ids()); }

inline Json pair_json(const BipartitePair& p) { return Json{{"a", p.a.ids()}, {"b", p.b.ids()}}; }

inline Json map_json(const Embedding& f) {
  Json arr = Json::array();
  for (Vertex x : f) arr.push_back(vertex_json(x));
  return arr;
}

inline Json embedding_json(const Embedding& f, const std::string& status, Vertex stuck_at) {
  return Json{{"tree_n", f.size()}, {"map", map_json(f)}, {"status", status}, {"stuck_at", vertex_json(stuck_at)}};
}

inline Json embedding_json(const EmbedOutcome& o) {
  Json j = embedding_json(o.embedding, to_string(o.status), o.success() ? kUnset : o.stuck_at);
  if (!o.success()) {
    j["stuck_parent"] = vertex_json(o.stuck_parent);
    if (o.hall_violator) {
      j["hall_violator"] = {{"tree_vertices", o.hall_violator->tree_vertices},
                            {"neighborhood", o.hall_violator->neighborhood}};
    }
  }
  if (!o.notes.empty()) j["notes"] = o.notes;
  return j;
}

/// Reads {"tree_n": n, "map": [...]} back into an embedding; null entries are unset.
inline Embedding parse_embedding_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad embedding JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("map") || !j["map"].is_array()) throw InputError("embedding JSON needs a \"map\" array");
  Embedding f;
  for (const auto& x : j["map"]) {
    if (x.is_null()) f.push_back(kUnset);
    else if (x.is_number_integer()) f.push_back(x.get<Vertex>());
    else throw InputError("embedding map entries must be integers or null");
  }
  if (j.contains("tree_n") && j["tree_n"].get<std::size_t>() != f.size()) throw InputError("tree_n does not match map length");
  return f;
}

inline Json to_json(const ValidationReport& r) {
  Json j{{"valid", r.complete_and_valid()}, {"consistent", r.consistent()}, {"size_mismatch", r.size_mismatch},
         {"unset", r.unset}, {"out_of_range", r.out_of_range}};
  Json col = Json::array();
  for (auto [a, b] : r.collisions) col.push_back({a, b});
  Json ne = Json::array();
  for (auto [a, b] : r.non_edges) ne.push_back({a, b});
  j["collisions"] = col;
  j["non_edges"] = ne;
  return j;
}

inline Json to_json(const SearchResult& r) {
  Json j = embedding_json(r.embedding.empty() ? Embedding{} : r.embedding,
                          r.verdict == SearchVerdict::Found ? "SUCCESS" : "STUCK", kUnset);
  j["verdict"] = to_string(r.verdict);
  j["nodes"] = r.nodes;
  return j;
}

inline Json to_json(const DenseSubgraph& d) {
  return Json{{"vertices", d.vertices.ids()}, {"edges", d.edges}, {"avg_degree", to_string(d.avg_degree)},
              {"min_degree", d.min_degree}};
}

inline Json to_json(const SparsityReport& r) {
  Json j{{"verdict", to_string(r.verdict)}, {"mode", to_string(r.mode)}, {"m", r.m}, {"threshold", to_string(r.threshold)}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

inline Json to_json(const DenseWitness& w) {
  Json j{{"kind", to_string(w.kind)}, {"m", w.m}, {"alpha", to_string(w.alpha)}, {"core", ids_json(w.core)}};
  if (w.kind == DenseKind::Bipartite) j["core_sides"] = pair_json(w.core_sides);
  j["core_min_degree"] = w.core_min_degree;
  j["expanded"] = w.expanded;
  j["expansion"] = ids_json(w.expansion);
  if (w.kind == DenseKind::Bipartite) j["expansion_sides"] = pair_json(w.expansion_sides);
  return j;
}

inline Json to_json(const SeedSearch& s) {
  Json j{{"found", s.witness.has_value()}};
  j["witness"] = s.witness ? to_json(*s.witness) : Json(nullptr);
  j["candidates"] = s.candidates;
  j["rejected"] = s.rejected;
  return j;
}

inline Json to_json(const DecompositionResult& r) {
  Json pieces = Json::array();
  for (const auto& p : r.pieces) pieces.push_back({{"witness", to_json(p.witness)}, {"max_into", p.max_into}, {"max_out", p.max_out}});
  return Json{{"pieces", pieces},
              {"residual", ids_json(r.residual)},
              {"max_into_union", r.max_into_union},
              {"gamma", to_string(r.gamma)},
              {"condition_a", r.condition_a},
              {"condition_b", r.condition_b},
              {"condition_c", r.condition_c}};
}

inline Json to_json(const FillDiagnostics& d) {
  return Json{{"branch", d.branch},
              {"stable_size", d.stable_size},
              {"s_prime_size", d.s_prime_size},
              {"s_prime_bound_ok", d.s_prime_bound_ok},
              {"bad_size", d.bad_size},
              {"bad_bound", to_string(d.bad_bound)},
              {"bad_bound_ok", d.bad_bound_ok},
              {"unused_bad_at_hall", d.unused_bad_at_hall},
              {"happy_parents", d.happy_parents},
              {"unhappy_parents", d.unhappy_parents},
              {"overloads", d.overloads},
              {"padding", d.padding},
              {"spill", d.spill},
              {"pairs_holding", d.pairs_holding},
              {"pairs_total", d.pairs_total},
              {"warnings", d.warnings}};
}

inline Json to_json(const FillReport& r) {
  Json j = embedding_json(r.outcome);
  j["diagnostics"] = to_json(r.diag);
  return j;
}

inline Json to_json(const NoDenseReport& r) {
  Json j = embedding_json(r.outcome);
  j["branch"] = r.branch;
  j["seed"] = r.seed;
  j["attempts"] = r.attempts;
  j["condition_ii"] = r.condition_ii;
  j["densest"] = to_json(r.densest);
  j["forest_size"] = r.forest_size;
  j["u"] = r.u ? Json(*r.u) : Json(nullptr);
  j["u_prime"] = r.u_prime ? Json(*r.u_prime) : Json(nullptr);
  j["a"] = ids_json(r.a);
  j["b"] = ids_json(r.b);
  j["h_prime"] = ids_json(r.h_prime);
  j["h_star"] = ids_json(r.h_star);
  j["warnings"] = r.warnings;
  j["trace"] = r.trace;
  return j;
}

inline Json to_json(const Theorem1Report& r) {
  Json j = embedding_json(r.outcome);
  j["method"] = "theorem1";
  j["branch"] = r.branch;
  j["m"] = r.m;
  j["t"] = r.t;
  j["t_prime"] = r.t_prime;
  j["hub"] = vertex_json(r.hub);
  j["biclique"] = r.biclique ? pair_json(*r.biclique) : Json(nullptr);
  j["b_prime"] = ids_json(r.b_prime);
  j["split"] = vertex_json(r.split);
  j["escape_sizes"] = r.escape_sizes;
  j["warnings"] = r.warnings;
  j["trace"] = r.trace;
  return j;
}

inline Json to_json(const Theorem2Report& r) {
  Json j = embedding_json(r.outcome);
  j["method"] = "theorem2";
  j["branch"] = r.branch;
  j["m"] = r.m;
  Json at = Json::array();
  for (const auto& a : r.attempts) at.push_back({{"name", a.name}, {"result", a.result}, {"detail", a.detail}});
  j["attempts"] = at;
  j["pieces"] = r.pieces;
  j["condition_a"] = r.condition_a;
  j["condition_b"] = r.condition_b;
  j["condition_c"] = r.condition_c;
  j["warnings"] = r.warnings;
  return j;
}

/// Scan summary; the wall-clock field is deliberately left out.
inline Json to_json(const ScanReport& r) {
  Json trees = Json::array();
  for (const auto& t : r.trees) trees.push_back(format_tree(t));
  Json cex = Json::array();
  for (const auto& c : r.counterexamples) {
    cex.push_back({{"tree", c.tree_index}, {"host", c.host_index}, {"host_edges", format_edge_list(r.hosts[c.host_index])}});
  }
  return Json{{"m", r.m},
              {"seed", r.seed},
              {"trees", r.trees.size()},
              {"hosts", r.hosts.size()},
              {"pairs", r.verdicts.size()},
              {"found", r.found},
              {"none", r.none},
              {"budget_exceeded", r.budget_exceeded},
              {"total_nodes", r.total_nodes},
              {"tree_list", trees},
              {"counterexamples", cex}};
}

inline Json to_json(const ExtremalInstance& e) {
  auto prof = degree_profile(e.host);
  return Json{{"k", e.k},
              {"which", e.kind == ExtremalKind::TwinCliques ? "TWIN_CLIQUES" : "BIPARTITE"},
              {"m", e.tree.edge_count()},
              {"host_n", e.host.order()},
              {"host_min_degree", prof.min_degree},
              {"host_max_degree", prof.max_degree},
              {"expected_embeddable", e.expected_embeddable},
              {"tree", format_tree(e.tree)},
              {"host", format_edge_list(e.host)}};
}

/// Separator, stable set, leaf profile and colour classes of a tree.
inline Json analyze_tree_json(const Tree& t) {
  Json j{{"n", t.order()}, {"edges", t.edge_count()}};
  auto sep = separator(t);
  Json comps = Json::array();
  for (const auto& c : sep.components) comps.push_back(c.size());
  j["separator"] = {{"z", sep.z}, {"component_sizes", comps}};
  auto lp = leaf_profile(t);
  j["leaf_profile"] = {{"total_leaves", lp.total_leaves},
                       {"max_leaf_children", lp.max_leaf_children},
                       {"argmax", lp.argmax},
                       {"leaf_children", lp.leaf_children}};
  if (t.order() >= 2) {
    Vertex root = t.root().value_or(sep.z);
    auto s = stable_set_s(t, root);
    Json tags = Json::array();
    for (auto tag : s.tags) tags.push_back(tag == StableTag::Leaf ? "leaf" : "degree2");
    j["stable_set"] = {{"root", root}, {"vertices", s.vertices}, {"tags", tags}, {"from_leaves", s.from_leaves}};
  } else {
    j["stable_set"] = nullptr;
  }
  auto bp = bipartition(t);
  j["bipartition"] = {{"c", bp.c}, {"d", bp.d}};
  if (t.order() >= 4) {
    auto split = component_split(t, sep.z);
    j["component_split"] = {{"size1", split.size1}, {"size2", split.size2}};
  }
  return j;
}

}  // namespace treeembed
