#pragma once

// Cartesian products of hypergraphs, graphs and L2-sections.
//
// Product vertices are named by flat tuples "(a,b,c)". Components that are
// themselves tuples are spliced in, so the n-ary product and the iterated
// binary product give identical names.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypercart/core.hpp"
#include "hypercart/sections.hpp"

namespace hypercart {

/// A product vertex: one component per factor, in factor order.
struct TupleVertex {
  std::vector<VertexId> parts;

  VertexId render() const { return render_tuple(parts); }
  friend auto operator<=>(const TupleVertex&, const TupleVertex&) = default;
};

namespace detail {

/// Product in unrendered form: tuple components per vertex and hyperedges as
/// sorted lists of tuple indices.
struct TupleProduct {
  std::vector<std::vector<VertexId>> tuples;
  std::vector<std::vector<std::uint32_t>> hyperedges;
};

inline TupleProduct as_tuple_product(const Hypergraph& h) {
  TupleProduct p;
  for (const auto& v : h.vertices()) p.tuples.push_back({v});
  for (std::size_t i = 0; i < h.num_hyperedges(); ++i) p.hyperedges.push_back(h.edge_members(i));
  return p;
}

/// One binary step: left × right with A1 = {x}×e (e ∈ E(right)) and
/// A2 = e×{u} (e ∈ E(left)). Tuple index of (x,u) is x*|V(right)| + u.
inline TupleProduct binary_product(const TupleProduct& left, const Hypergraph& right) {
  const auto n2 = static_cast<std::uint32_t>(right.num_vertices());
  TupleProduct p;
  p.tuples.reserve(left.tuples.size() * n2);
  for (const auto& t : left.tuples) {
    for (const auto& u : right.vertices()) {
      auto tuple = t;
      tuple.push_back(u);
      p.tuples.push_back(std::move(tuple));
    }
  }
  for (std::uint32_t x = 0; x < left.tuples.size(); ++x) {
    for (std::size_t e = 0; e < right.num_hyperedges(); ++e) {
      std::vector<std::uint32_t> lifted;
      for (auto u : right.edge_members(e)) lifted.push_back(x * n2 + u);
      p.hyperedges.push_back(std::move(lifted));
    }
  }
  for (const auto& e : left.hyperedges) {
    for (std::uint32_t u = 0; u < n2; ++u) {
      std::vector<std::uint32_t> lifted;
      for (auto x : e) lifted.push_back(x * n2 + u);
      p.hyperedges.push_back(std::move(lifted));
    }
  }
  return p;
}

/// Left fold of the binary product over `factors`.
inline TupleProduct tuple_product(std::span<const Hypergraph> factors) {
  if (factors.empty()) throw ValidationError("product needs at least one factor");
  auto p = as_tuple_product(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) p = binary_product(p, factors[i]);
  return p;
}

/// Hyperedges of the product as sorted sets of component tuples.
inline std::set<std::vector<std::vector<VertexId>>> tuple_hyperedges(const TupleProduct& p) {
  std::set<std::vector<std::vector<VertexId>>> out;
  for (const auto& e : p.hyperedges) {
    std::vector<std::vector<VertexId>> tuples;
    for (auto i : e) tuples.push_back(p.tuples[i]);
    std::sort(tuples.begin(), tuples.end());
    out.insert(std::move(tuples));
  }
  return out;
}

inline std::vector<VertexId> rendered_names(const TupleProduct& p) {
  std::vector<VertexId> names;
  names.reserve(p.tuples.size());
  for (const auto& t : p.tuples) names.push_back(render_tuple(t));
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw ValidationError("product vertex name " + *dup +
                          " is ambiguous: a factor mixes tuple-named vertices of different lengths");
  }
  return names;
}

inline VertexId render_pair(const VertexId& a, const VertexId& b) {
  std::vector<VertexId> parts{a, b};
  return render_tuple(parts);
}

}  // namespace detail

/// Cartesian product of two or more hypergraphs, folded left to right.
inline Hypergraph hyper_product(std::span<const Hypergraph> factors) {
  if (factors.size() < 2) throw ValidationError("product needs at least two factors");
  auto p = detail::tuple_product(factors);
  auto names = detail::rendered_names(p);
  std::vector<std::vector<VertexId>> edges;
  edges.reserve(p.hyperedges.size());
  for (const auto& e : p.hyperedges) {
    std::vector<VertexId> named;
    for (auto i : e) named.push_back(names[i]);
    edges.push_back(std::move(named));
  }
  return Hypergraph::from_edges(std::move(edges));
}

inline Hypergraph hyper_product(const Hypergraph& a, const Hypergraph& b) {
  const Hypergraph factors[] = {a, b};
  return hyper_product(factors);
}

inline Graph graph_product(std::span<const Graph> factors) {
  std::vector<Hypergraph> hs;
  hs.reserve(factors.size());
  for (const auto& g : factors) hs.push_back(g.hypergraph());
  return Graph::from_hypergraph(hyper_product(hs));
}

inline Graph graph_product(const Graph& a, const Graph& b) {
  const Graph factors[] = {a, b};
  return graph_product(factors);
}

/// Product of L2-sections: an edge inside a copy of the second factor carries
/// {x}×e for each label e of the second factor, and symmetrically.
inline L2Section l2_product(const L2Section& first, const L2Section& second) {
  const auto& v1 = first.skeleton().vertices();
  const auto& v2 = second.skeleton().vertices();
  std::map<std::pair<VertexId, VertexId>, VertexId> name;
  std::set<VertexId> seen;
  for (const auto& x : v1) {
    for (const auto& u : v2) {
      auto n = detail::render_pair(x, u);
      if (!seen.insert(n).second) {
        throw ValidationError("product vertex name " + n + " is ambiguous");
      }
      name.emplace(std::pair{x, u}, std::move(n));
    }
  }
  auto lift = [&](const Hyperedge& e, auto&& rename) {
    Hyperedge out;
    for (const auto& w : e) out.push_back(rename(w));
    std::sort(out.begin(), out.end());
    return out;
  };

  LabelMap labels;
  for (const auto& x : v1) {
    auto rename = [&](const VertexId& w) { return name.at({x, w}); };
    for (const auto& [edge, set] : second.labels()) {
      auto& target = labels[make_edge(rename(edge.first), rename(edge.second))];
      for (const auto& e : set) target.push_back(lift(e, rename));
    }
  }
  for (const auto& u : v2) {
    auto rename = [&](const VertexId& w) { return name.at({w, u}); };
    for (const auto& [edge, set] : first.labels()) {
      auto& target = labels[make_edge(rename(edge.first), rename(edge.second))];
      for (const auto& e : set) target.push_back(lift(e, rename));
    }
  }
  return L2Section::from_labels(std::move(labels));
}

}  // namespace hypercart
