#pragma once

// Prime factorization of connected graphs with respect to the Cartesian
// product.
//
// Edges are grouped into product-relation classes: the closure of the
// distance relation (uv ~ xy when d(u,x)+d(v,y) != d(u,y)+d(v,x)) together
// with the square relation on adjacent edges (merge unless the two edges span
// exactly one induced square and no triangle). Each class gives one prime
// factor, represented by its layer through a base vertex. The result is
// always re-verified against the input before it is returned.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypercart/core.hpp"
#include "hypercart/disjoint_set.hpp"
#include "hypercart/product.hpp"

namespace hypercart {

/// Hop distances between all vertex pairs of a connected graph.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Graph& g) : g_(&g), n_(g.num_vertices()), d_(n_ * n_, kUnreached) {
    std::vector<std::uint32_t> queue(n_);
    for (std::size_t s = 0; s < n_; ++s) {
      int* row = &d_[s * n_];
      row[s] = 0;
      std::size_t head = 0, tail = 0;
      queue[tail++] = static_cast<std::uint32_t>(s);
      while (head < tail) {
        auto v = queue[head++];
        for (auto w : g.neighbors(v)) {
          if (row[w] == kUnreached) {
            row[w] = row[v] + 1;
            queue[tail++] = w;
          }
        }
      }
      if (tail != n_) {
        throw PreconditionError("connected", "graph is disconnected: " + g.vertices()[s] + " does not reach " +
                                                 g.vertices()[first_unreached(row)]);
      }
    }
  }

  std::size_t size() const noexcept { return n_; }
  int at(std::size_t a, std::size_t b) const { return d_[a * n_ + b]; }

  int operator()(const VertexId& a, const VertexId& b) const {
    auto ia = g_->index_of(a), ib = g_->index_of(b);
    if (!ia || !ib) throw ValidationError("distance query for unknown vertex");
    return at(*ia, *ib);
  }

  const Graph& graph() const noexcept { return *g_; }

 private:
  static constexpr int kUnreached = -1;

  std::size_t first_unreached(const int* row) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (row[i] == kUnreached) return i;
    }
    return 0;
  }

  const Graph* g_;
  std::size_t n_;
  std::vector<int> d_;
};

/// Breadth-first distances from every vertex. Throws PreconditionError on a
/// disconnected graph. The result refers to `g`, which must outlive it.
inline DistanceMatrix all_pairs_distances(const Graph& g) { return DistanceMatrix(g); }

namespace detail {

inline bool theta_related(std::size_t u, std::size_t v, std::size_t x, std::size_t y, const DistanceMatrix& d) {
  return d.at(u, x) + d.at(v, y) != d.at(u, y) + d.at(v, x);
}

struct IndexedEdge {
  std::uint32_t a, b;
};

inline std::vector<IndexedEdge> indexed_edges(const Graph& g) {
  std::vector<IndexedEdge> out;
  out.reserve(g.num_edges());
  const auto& h = g.hypergraph();
  for (std::size_t i = 0; i < h.num_hyperedges(); ++i) {
    const auto& m = h.edge_members(i);
    out.push_back({m[0], m[1]});
  }
  return out;
}

}  // namespace detail

/// Distance relation between edges e = uv and f = xy. The test is symmetric in
/// the endpoint order of either edge.
inline bool theta_related(const Edge& e, const Edge& f, const DistanceMatrix& dist) {
  const auto& g = dist.graph();
  auto u = g.index_of(e.first), v = g.index_of(e.second), x = g.index_of(f.first), y = g.index_of(f.second);
  if (!u || !v || !x || !y) throw ValidationError("theta_related: unknown vertex");
  return detail::theta_related(*u, *v, *x, *y, dist);
}

struct SquareCount {
  std::size_t count = 0;
  bool common_triangle = false;
};

namespace detail {

/// e = uv, f = uw share u.
inline SquareCount count_induced_squares(const Graph& g, std::size_t u, std::size_t v, std::size_t w) {
  SquareCount out;
  out.common_triangle = g.adjacent(v, w);
  if (out.common_triangle) return out;
  const auto& nv = g.neighbors(v);
  const auto& nw = g.neighbors(w);
  std::size_t i = 0, j = 0;
  while (i < nv.size() && j < nw.size()) {
    if (nv[i] < nw[j]) {
      ++i;
    } else if (nw[j] < nv[i]) {
      ++j;
    } else {
      auto z = nv[i];
      if (z != u && !g.adjacent(u, z)) ++out.count;
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Induced squares spanned by two edges sharing exactly one vertex.
inline SquareCount count_induced_squares(const Graph& g, const Edge& e, const Edge& f) {
  auto idx = [&](const VertexId& v) {
    auto i = g.index_of(v);
    if (!i) throw ValidationError("count_induced_squares: unknown vertex " + v);
    return *i;
  };
  if (!g.has_edge(e.first, e.second) || !g.has_edge(f.first, f.second)) {
    throw ValidationError("count_induced_squares: argument is not an edge of the graph");
  }
  std::optional<VertexId> shared;
  for (const auto& a : {e.first, e.second}) {
    for (const auto& b : {f.first, f.second}) {
      if (a == b) shared = a;
    }
  }
  if (!shared || make_edge(e.first, e.second) == make_edge(f.first, f.second)) {
    throw ValidationError("count_induced_squares: edges must share exactly one vertex");
  }
  const auto& v = e.first == *shared ? e.second : e.first;
  const auto& w = f.first == *shared ? f.second : f.first;
  return detail::count_induced_squares(g, idx(*shared), idx(v), idx(w));
}

/// Partition of a graph's edges into product-relation classes.
struct EdgeClassPartition {
  std::vector<Edge> edges;             ///< sorted edge list of the graph
  std::vector<std::size_t> class_of;   ///< class index per entry of `edges`
  std::size_t k = 0;                   ///< number of classes

  std::vector<Edge> class_edges(std::size_t c) const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (class_of[i] == c) out.push_back(edges[i]);
    }
    return out;
  }

  std::size_t class_of_edge(const Edge& e) const {
    auto key = make_edge(e.first, e.second);
    auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it == edges.end() || *it != key) throw ValidationError("not an edge of the partitioned graph");
    return class_of[static_cast<std::size_t>(it - edges.begin())];
  }
};

namespace detail {

inline EdgeClassPartition sigma_classes(const Graph& g, const DistanceMatrix& dist) {
  auto edges = indexed_edges(g);
  const std::size_t m = edges.size();
  DisjointSet dsu(m);

  // Square/triangle rule on pairs of edges at a common vertex.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> edge_index;
  for (std::size_t i = 0; i < m; ++i) edge_index.emplace(std::pair{edges[i].a, edges[i].b}, i);
  auto index_of = [&](std::uint32_t a, std::uint32_t b) {
    return edge_index.at(a < b ? std::pair{a, b} : std::pair{b, a});
  };
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    const auto& nb = g.neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        auto sq = count_induced_squares(g, u, nb[i], nb[j]);
        if (sq.common_triangle || sq.count != 1) {
          dsu.unite(index_of(static_cast<std::uint32_t>(u), nb[i]), index_of(static_cast<std::uint32_t>(u), nb[j]));
        }
      }
    }
  }

  // Distance relation, skipping pairs that are already merged.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (dsu.same(i, j)) continue;
      if (theta_related(edges[i].a, edges[i].b, edges[j].a, edges[j].b, dist)) dsu.unite(i, j);
    }
  }

  // Classes numbered by their smallest edge; edges are already sorted.
  EdgeClassPartition p;
  p.edges = g.edges();
  p.class_of.resize(m);
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t i = 0; i < m; ++i) {
    auto [it, inserted] = renumber.emplace(dsu.find(i), renumber.size());
    p.class_of[i] = it->second;
  }
  p.k = renumber.size();
  return p;
}

}  // namespace detail

/// Product-relation classes of a connected graph; k = 1 means prime.
inline EdgeClassPartition sigma_classes(const Graph& g) {
  auto dist = all_pairs_distances(g);
  return detail::sigma_classes(g, dist);
}

namespace detail {

/// Index of the unique layer vertex closest to `v`.
inline std::size_t project(const DistanceMatrix& dist, const std::vector<std::uint32_t>& layer_vertices,
                           std::size_t v, const std::vector<VertexId>& names) {
  int best = std::numeric_limits<int>::max();
  std::size_t arg = 0, ties = 0;
  for (auto x : layer_vertices) {
    int d = dist.at(v, x);
    if (d < best) {
      best = d;
      arg = x;
      ties = 1;
    } else if (d == best) {
      ++ties;
    }
  }
  if (ties != 1) {
    throw InternalInconsistencyError("projection of " + names[v] + " onto layer is not unique (" +
                                     std::to_string(ties) + " vertices at distance " + std::to_string(best) + ")");
  }
  return arg;
}

}  // namespace detail

/// The vertex of `layer` closest to `v` in the graph measured by `dist`.
/// Throws InternalInconsistencyError if the closest vertex is not unique.
inline VertexId project(const DistanceMatrix& dist, const Graph& layer, const VertexId& v) {
  const auto& g = dist.graph();
  auto vi = g.index_of(v);
  if (!vi) throw ValidationError("project: unknown vertex " + v);
  std::vector<std::uint32_t> members;
  for (const auto& x : layer.vertices()) {
    auto xi = g.index_of(x);
    if (!xi) throw ValidationError("project: layer vertex " + x + " is not in the graph");
    members.push_back(static_cast<std::uint32_t>(*xi));
  }
  return g.vertices()[detail::project(dist, members, *vi, g.vertices())];
}

/// Prime factors of a graph as layers through `base`, with the coordinate map
/// witnessing G ≅ factor_1 □ ... □ factor_k.
struct GraphFactorization {
  std::vector<Graph> factors;
  VertexId base;
  std::map<VertexId, TupleVertex> coords;

  bool prime() const noexcept { return factors.size() == 1; }
};

namespace detail {

/// Checks that `coords` is a bijection onto the product of the factor vertex
/// sets and carries `edges` exactly onto the product's hyperedges.
inline void verify_coordinates(const std::vector<Hypergraph>& factors,
                               const std::map<VertexId, TupleVertex>& coords,
                               const std::vector<Hyperedge>& edges, const std::string& diagnostics) {
  auto fail = [&](const std::string& why) {
    throw InternalInconsistencyError("factorization verification failed: " + why + " [" + diagnostics + "]");
  };
  auto product = tuple_product(factors);
  if (product.tuples.size() != coords.size()) {
    fail("vertex count " + std::to_string(coords.size()) + " != product order " +
         std::to_string(product.tuples.size()));
  }
  std::set<std::vector<VertexId>> image;
  for (const auto& [v, t] : coords) {
    if (t.parts.size() != factors.size()) fail("coordinate arity mismatch at " + v);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (!factors[i].has_vertex(t.parts[i])) fail("coordinate of " + v + " leaves factor " + std::to_string(i));
    }
    if (!image.insert(t.parts).second) fail("coordinates are not injective at " + v);
  }
  auto expected = tuple_hyperedges(product);
  std::set<std::vector<std::vector<VertexId>>> actual;
  for (const auto& e : edges) {
    std::vector<std::vector<VertexId>> mapped;
    for (const auto& v : e) mapped.push_back(coords.at(v).parts);
    std::sort(mapped.begin(), mapped.end());
    if (!expected.contains(mapped)) fail("edge {" + join_tokens(e, ",") + "} has no counterpart in the product");
    actual.insert(std::move(mapped));
  }
  if (actual.size() != expected.size()) {
    fail("edge count " + std::to_string(actual.size()) + " != product edge count " + std::to_string(expected.size()));
  }
}

}  // namespace detail

/// Prime factorization of a connected graph. Throws PreconditionError when
/// disconnected and InternalInconsistencyError if the result fails to verify.
inline GraphFactorization factor_graph(const Graph& g) {
  auto dist = all_pairs_distances(g);
  auto classes = detail::sigma_classes(g, dist);
  const auto& names = g.vertices();

  GraphFactorization out;
  out.base = names.front();
  if (classes.k == 1) {
    out.factors.push_back(g);
    for (const auto& v : names) out.coords.emplace(v, TupleVertex{{v}});
    return out;
  }

  std::string diagnostics = "class sizes:";
  {
    std::vector<std::size_t> sizes(classes.k, 0);
    for (auto c : classes.class_of) ++sizes[c];
    for (auto s : sizes) diagnostics += " " + std::to_string(s);
  }

  // Edge class lookup by vertex index pair.
  const auto iedges = detail::indexed_edges(g);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> class_at;
  for (std::size_t i = 0; i < iedges.size(); ++i) class_at.emplace(std::pair{iedges[i].a, iedges[i].b}, classes.class_of[i]);
  auto edge_class = [&](std::uint32_t a, std::uint32_t b) { return class_at.at(a < b ? std::pair{a, b} : std::pair{b, a}); };

  std::vector<std::vector<std::uint32_t>> layer_vertices(classes.k);
  for (std::size_t c = 0; c < classes.k; ++c) {
    std::vector<char> seen(names.size(), 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::vector<Edge> layer_edges;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      layer_vertices[c].push_back(v);
      for (auto w : g.neighbors(v)) {
        if (edge_class(v, w) != c) continue;
        if (v < w) layer_edges.emplace_back(names[v], names[w]);
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (layer_edges.empty()) {
      throw InternalInconsistencyError("base vertex " + out.base + " has no edge in class " + std::to_string(c) +
                                       " [" + diagnostics + "]");
    }
    std::sort(layer_vertices[c].begin(), layer_vertices[c].end());
    out.factors.push_back(Graph::from_edges(layer_edges));
  }

  for (std::size_t v = 0; v < names.size(); ++v) {
    TupleVertex t;
    for (std::size_t c = 0; c < classes.k; ++c) {
      t.parts.push_back(names[detail::project(dist, layer_vertices[c], v, names)]);
    }
    out.coords.emplace(names[v], std::move(t));
  }

  std::vector<Hypergraph> hs;
  for (const auto& f : out.factors) hs.push_back(f.hypergraph());
  detail::verify_coordinates(hs, out.coords, g.hypergraph().hyperedges(), diagnostics);
  return out;
}

inline nlohmann::json coords_to_json(const std::map<VertexId, TupleVertex>& coords) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [v, t] : coords) j[v] = t.parts;
  return j;
}

inline nlohmann::json to_json(const GraphFactorization& f) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& g : f.factors) factors.push_back(to_json(g));
  return nlohmann::json{{"factors", factors}, {"coords", coords_to_json(f.coords)}};
}

}  // namespace hypercart
