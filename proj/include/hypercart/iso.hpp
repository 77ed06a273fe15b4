#pragma once

// Exact isomorphism search for hypergraphs and L2-sections, and seeded random
// instance generators.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hypercart/core.hpp"
#include "hypercart/disjoint_set.hpp"
#include "hypercart/sections.hpp"

namespace hypercart {

inline constexpr std::size_t kDefaultMaxIsoVertices = 64;

/// Vertex bijection from the first structure onto the second.
struct IsoWitness {
  std::map<VertexId, VertexId> mapping;
};

inline nlohmann::json to_json(const IsoWitness& w) { return nlohmann::json{{"mapping", w.mapping}}; }

namespace detail {

/// One side of an isomorphism problem in index form.
struct IsoSide {
  std::vector<std::vector<std::uint32_t>> adj;       ///< 2-section / skeleton adjacency
  std::vector<std::vector<std::uint32_t>> blocks;    ///< hyperedges (or labelled hyperedges)
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> pair_weight;  ///< labels per edge (L2 only)
  std::vector<std::uint64_t> initial;                ///< initial vertex invariant
};

/// Backtracking over the vertices of `a` with colour-refinement pruning.
/// A mapping is accepted when adjacency is preserved, per-edge weights agree,
/// and every block of `a` maps onto a block of `b`.
class IsoSearch {
 public:
  IsoSearch(const IsoSide& a, const IsoSide& b) : a_(a), b_(b), n_(a.adj.size()) {}

  std::optional<std::vector<std::uint32_t>> run() {
    if (b_.adj.size() != n_ || a_.blocks.size() != b_.blocks.size() || a_.pair_weight.size() != b_.pair_weight.size()) {
      return std::nullopt;
    }
    for (const auto& blk : b_.blocks) b_block_set_.insert(blk);
    if (!refine()) return std::nullopt;
    plan();
    map_.assign(n_, kUnmapped);
    used_.assign(n_, 0);
    if (!search(0)) return std::nullopt;
    return map_;
  }

 private:
  static constexpr std::uint32_t kUnmapped = UINT32_MAX;

  // Joint colour refinement over both sides so colour ids are comparable.
  bool refine() {
    std::vector<std::uint64_t> ca = a_.initial, cb = b_.initial;
    std::size_t classes = 0;
    for (std::size_t round = 0; round <= n_; ++round) {
      std::map<std::vector<std::uint64_t>, std::uint64_t> palette;
      auto signatures = [&](const IsoSide& s, const std::vector<std::uint64_t>& c) {
        std::vector<std::vector<std::uint64_t>> sig(c.size());
        std::vector<std::vector<std::uint64_t>> member_of(c.size());
        for (const auto& blk : s.blocks) {
          std::vector<std::uint64_t> bc;
          for (auto v : blk) bc.push_back(c[v]);
          std::sort(bc.begin(), bc.end());
          std::uint64_t h = bc.size();
          for (auto x : bc) h = h * 1000003u + x;
          for (auto v : blk) member_of[v].push_back(h);
        }
        for (std::size_t v = 0; v < c.size(); ++v) {
          std::vector<std::uint64_t> nb;
          for (auto w : s.adj[v]) {
            auto key = v < w ? std::pair<std::uint32_t, std::uint32_t>(v, w) : std::pair<std::uint32_t, std::uint32_t>(w, v);
            auto it = s.pair_weight.find(key);
            std::uint64_t weight = it == s.pair_weight.end() ? 0 : it->second;
            nb.push_back(c[w] * 131u + weight);
          }
          std::sort(nb.begin(), nb.end());
          std::sort(member_of[v].begin(), member_of[v].end());
          sig[v].push_back(c[v]);
          sig[v].push_back(nb.size());
          sig[v].insert(sig[v].end(), nb.begin(), nb.end());
          sig[v].push_back(UINT64_MAX);
          sig[v].insert(sig[v].end(), member_of[v].begin(), member_of[v].end());
        }
        return sig;
      };
      auto sa = signatures(a_, ca);
      auto sb = signatures(b_, cb);
      for (const auto& s : sa) palette.emplace(s, 0);
      for (const auto& s : sb) palette.emplace(s, 0);
      std::uint64_t next = 0;
      for (auto& [s, id] : palette) id = next++;
      for (std::size_t v = 0; v < n_; ++v) {
        ca[v] = palette[sa[v]];
        cb[v] = palette[sb[v]];
      }
      auto hist_a = ca, hist_b = cb;
      std::sort(hist_a.begin(), hist_a.end());
      std::sort(hist_b.begin(), hist_b.end());
      if (hist_a != hist_b) return false;
      if (palette.size() == classes) break;
      classes = palette.size();
    }
    color_a_ = std::move(ca);
    color_b_ = std::move(cb);
    return true;
  }

  // Vertex order: rarest colour first, then most already-placed neighbours.
  void plan() {
    std::map<std::uint64_t, std::size_t> freq;
    for (auto c : color_a_) ++freq[c];
    std::vector<char> placed(n_, 0);
    std::vector<std::size_t> placed_nb(n_, 0);
    for (std::size_t step = 0; step < n_; ++step) {
      std::size_t best = n_;
      for (std::size_t v = 0; v < n_; ++v) {
        if (placed[v]) continue;
        if (best == n_ || placed_nb[v] > placed_nb[best] ||
            (placed_nb[v] == placed_nb[best] && freq[color_a_[v]] < freq[color_a_[best]])) {
          best = v;
        }
      }
      placed[best] = 1;
      order_.push_back(static_cast<std::uint32_t>(best));
      for (auto w : a_.adj[best]) ++placed_nb[w];
    }
    std::vector<std::size_t> pos(n_);
    for (std::size_t i = 0; i < n_; ++i) pos[order_[i]] = i;
    closing_.resize(n_);
    for (std::size_t i = 0; i < a_.blocks.size(); ++i) {
      const auto& blk = a_.blocks[i];
      auto last = *std::max_element(blk.begin(), blk.end(), [&](auto x, auto y) { return pos[x] < pos[y]; });
      closing_[last].push_back(i);
    }
  }

  std::size_t weight(const IsoSide& s, std::uint32_t x, std::uint32_t y) const {
    auto it = s.pair_weight.find(x < y ? std::pair{x, y} : std::pair{y, x});
    return it == s.pair_weight.end() ? 0 : it->second;
  }

  bool consistent(std::uint32_t v, std::uint32_t img) const {
    std::size_t placed = 0;
    for (auto w : a_.adj[v]) {
      if (map_[w] == kUnmapped) continue;
      ++placed;
      if (!std::binary_search(b_.adj[img].begin(), b_.adj[img].end(), map_[w])) return false;
      if (weight(a_, v, w) != weight(b_, img, map_[w])) return false;
    }
    std::size_t image_placed = 0;
    for (auto w : b_.adj[img]) image_placed += used_[w];
    if (image_placed != placed) return false;
    for (auto bi : closing_[v]) {
      std::vector<std::uint32_t> image;
      for (auto x : a_.blocks[bi]) image.push_back(x == v ? img : map_[x]);
      std::sort(image.begin(), image.end());
      if (!b_block_set_.contains(image)) return false;
    }
    return true;
  }

  bool search(std::size_t step) {
    if (step == n_) return true;
    const auto v = order_[step];
    for (std::uint32_t img = 0; img < n_; ++img) {
      if (used_[img] || color_b_[img] != color_a_[v]) continue;
      if (!consistent(v, img)) continue;
      map_[v] = img;
      used_[img] = 1;
      if (search(step + 1)) return true;
      map_[v] = kUnmapped;
      used_[img] = 0;
    }
    return false;
  }

  const IsoSide& a_;
  const IsoSide& b_;
  std::size_t n_;
  std::set<std::vector<std::uint32_t>> b_block_set_;
  std::vector<std::uint64_t> color_a_, color_b_;
  std::vector<std::uint32_t> order_;
  std::vector<std::vector<std::size_t>> closing_;
  std::vector<std::uint32_t> map_;
  std::vector<char> used_;
};

inline IsoSide iso_side(const Hypergraph& h) {
  IsoSide s;
  s.adj = section_adjacency(h);
  for (std::size_t i = 0; i < h.num_hyperedges(); ++i) s.blocks.push_back(h.edge_members(i));
  for (std::size_t v = 0; v < h.num_vertices(); ++v) s.initial.push_back(h.incident_edges(v).size());
  return s;
}

inline IsoSide iso_side(const L2Section& g) {
  const auto& sk = g.skeleton();
  IsoSide s;
  s.adj.resize(sk.num_vertices());
  for (std::size_t v = 0; v < sk.num_vertices(); ++v) s.adj[v] = sk.neighbors(v);
  std::set<Hyperedge> labelled;
  for (const auto& [edge, set] : g.labels()) {
    auto a = static_cast<std::uint32_t>(*sk.index_of(edge.first));
    auto b = static_cast<std::uint32_t>(*sk.index_of(edge.second));
    s.pair_weight.emplace(std::pair{a, b}, set.size());
    labelled.insert(set.begin(), set.end());
  }
  for (const auto& e : labelled) {
    std::vector<std::uint32_t> blk;
    for (const auto& v : e) blk.push_back(static_cast<std::uint32_t>(*sk.index_of(v)));
    s.blocks.push_back(std::move(blk));
  }
  for (std::size_t v = 0; v < sk.num_vertices(); ++v) s.initial.push_back(s.adj[v].size());
  return s;
}

inline std::optional<IsoWitness> named_witness(const std::vector<VertexId>& from, const std::vector<VertexId>& to,
                                               const std::optional<std::vector<std::uint32_t>>& map) {
  if (!map) return std::nullopt;
  IsoWitness w;
  for (std::size_t i = 0; i < from.size(); ++i) w.mapping.emplace(from[i], to[(*map)[i]]);
  return w;
}

inline void check_iso_limit(std::size_t n, std::size_t limit) {
  if (n > limit) {
    throw LimitExceededError("isomorphism search limited to " + std::to_string(limit) + " vertices, got " +
                             std::to_string(n));
  }
}

}  // namespace detail

/// A vertex bijection carrying the hyperedges of `a` exactly onto those of `b`,
/// or nullopt if none exists.
inline std::optional<IsoWitness> are_isomorphic(const Hypergraph& a, const Hypergraph& b,
                                                std::size_t max_vertices = kDefaultMaxIsoVertices) {
  detail::check_iso_limit(std::max(a.num_vertices(), b.num_vertices()), max_vertices);
  if (a.num_vertices() != b.num_vertices() || a.num_hyperedges() != b.num_hyperedges()) return std::nullopt;
  auto sa = detail::iso_side(a);
  auto sb = detail::iso_side(b);
  return detail::named_witness(a.vertices(), b.vertices(), detail::IsoSearch(sa, sb).run());
}

inline std::optional<IsoWitness> are_isomorphic(const Graph& a, const Graph& b,
                                                std::size_t max_vertices = kDefaultMaxIsoVertices) {
  return are_isomorphic(a.hypergraph(), b.hypergraph(), max_vertices);
}

/// Isomorphism of labelled 2-sections: skeleton edges correspond and every
/// label set maps onto the label set of the image edge.
inline std::optional<IsoWitness> l2_isomorphic(const L2Section& a, const L2Section& b,
                                               std::size_t max_vertices = kDefaultMaxIsoVertices) {
  detail::check_iso_limit(std::max(a.skeleton().num_vertices(), b.skeleton().num_vertices()), max_vertices);
  if (a.skeleton().num_vertices() != b.skeleton().num_vertices()) return std::nullopt;
  auto sa = detail::iso_side(a);
  auto sb = detail::iso_side(b);
  return detail::named_witness(a.skeleton().vertices(), b.skeleton().vertices(), detail::IsoSearch(sa, sb).run());
}

// ---------------------------------------------------------------------------
// Relabelling and random instances
// ---------------------------------------------------------------------------

/// Applies a vertex renaming; `mapping` must be injective and total on V(h).
inline Hypergraph relabel(const Hypergraph& h, const std::map<VertexId, VertexId>& mapping) {
  std::vector<std::vector<VertexId>> edges;
  for (const auto& e : h.hyperedges()) {
    std::vector<VertexId> mapped;
    for (const auto& v : e) {
      auto it = mapping.find(v);
      if (it == mapping.end()) throw ValidationError("relabel: no image for vertex " + v);
      mapped.push_back(it->second);
    }
    edges.push_back(std::move(mapped));
  }
  auto out = Hypergraph::from_edges(std::move(edges));
  if (out.num_vertices() != h.num_vertices()) throw ValidationError("relabel: mapping is not injective");
  return out;
}

namespace detail {

/// Uniform double in [0,1) from the top 53 bits; independent of the standard
/// library's distribution implementations.
inline double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t below(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

}  // namespace detail

/// A random renaming of `h` onto "<prefix>0", "<prefix>1", ... Returns the
/// renamed copy and the mapping used.
inline std::pair<Hypergraph, std::map<VertexId, VertexId>> random_relabel(const Hypergraph& h, std::uint64_t seed,
                                                                        const std::string& prefix = "r") {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(h.num_vertices());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[detail::below(rng, i)]);
  std::map<VertexId, VertexId> mapping;
  for (std::size_t i = 0; i < perm.size(); ++i) mapping.emplace(h.vertices()[i], prefix + std::to_string(perm[i]));
  return {relabel(h, mapping), mapping};
}

/// Random connected graph on v0..v{n-1}: each pair is an edge with
/// probability `edge_prob`, then random bridges join the components.
inline Graph random_connected_graph(std::size_t n, double edge_prob, std::uint64_t seed) {
  if (n < 2) throw ValidationError("random graphs need n >= 2");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  detail::DisjointSet dsu(n);
  auto name = [](std::size_t i) { return "v" + std::to_string(i); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (detail::unit_interval(rng) < edge_prob) {
        edges.push_back(make_edge(name(i), name(j)));
        dsu.unite(i, j);
      }
    }
  }
  while (dsu.num_sets() > 1) {
    std::vector<std::size_t> inside, outside;
    for (std::size_t i = 0; i < n; ++i) (dsu.same(i, 0) ? inside : outside).push_back(i);
    auto a = inside[detail::below(rng, inside.size())];
    auto b = outside[detail::below(rng, outside.size())];
    edges.push_back(make_edge(name(a), name(b)));
    dsu.unite(a, b);
  }
  return Graph::from_edges(edges);
}

/// The clique hypergraph of a random connected graph: conformal, connected,
/// with 2-section equal to the generated graph.
inline Hypergraph random_conformal_hypergraph(std::size_t n, double edge_prob, std::uint64_t seed) {
  auto g = random_connected_graph(n, edge_prob, seed);
  return Hypergraph::from_edges(maximal_cliques(g));
}

/// A random simple hypergraph: `m` random vertex subsets of size 2..max_size
/// over v0..v{n-1}, reduced to the inclusion-maximal ones. Not necessarily
/// connected or conformal.
inline Hypergraph random_hypergraph(std::size_t n, std::size_t m, std::size_t max_size, std::uint64_t seed) {
  if (n < 2 || m == 0 || max_size < 2) throw ValidationError("random_hypergraph: need n >= 2, m >= 1, max_size >= 2");
  std::mt19937_64 rng(seed);
  std::set<std::vector<VertexId>> candidates;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t size = 2 + detail::below(rng, std::min(max_size, n) - 1);
    std::vector<std::size_t> pool(n);
    for (std::size_t j = 0; j < n; ++j) pool[j] = j;
    std::vector<VertexId> e;
    for (std::size_t j = 0; j < size; ++j) {
      std::swap(pool[j], pool[j + detail::below(rng, n - j)]);
      e.push_back("v" + std::to_string(pool[j]));
    }
    std::sort(e.begin(), e.end());
    candidates.insert(std::move(e));
  }
  std::vector<std::vector<VertexId>> kept;
  for (const auto& e : candidates) {
    bool dominated = std::any_of(candidates.begin(), candidates.end(), [&](const auto& f) {
      return f.size() > e.size() && std::includes(f.begin(), f.end(), e.begin(), e.end());
    });
    if (!dominated) kept.push_back(e);
  }
  return Hypergraph::from_edges(std::move(kept));
}

}  // namespace hypercart
