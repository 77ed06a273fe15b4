#pragma once

// Exact weak/strong chromatic numbers, chromatic index, and the coloring of a
// product obtained from minimal colorings of its prime factors.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypercart/core.hpp"
#include "hypercart/hyperfactor.hpp"
#include "hypercart/sections.hpp"

namespace hypercart {

inline constexpr std::size_t kDefaultMaxExact = 24;

enum class ColoringMode { weak, strong };

/// Vertex coloring with 0-based colors.
struct Coloring {
  std::map<VertexId, int> assignment;

  int used_colors() const {
    std::set<int> used;
    for (const auto& [v, c] : assignment) used.insert(c);
    return static_cast<int>(used.size());
  }
};

struct EdgeColoring {
  std::map<Hyperedge, int> assignment;
};

struct ChromaticResult {
  int k = 0;
  Coloring coloring;
};

struct ChromaticIndexResult {
  int q = 0;
  EdgeColoring coloring;
};

/// Weak: no hyperedge is monochromatic. Strong: every hyperedge is rainbow.
inline bool verify_coloring(const Hypergraph& h, const Coloring& f, ColoringMode mode) {
  for (const auto& v : h.vertices()) {
    if (!f.assignment.contains(v)) throw ValidationError("coloring does not assign vertex " + v);
  }
  for (const auto& e : h.hyperedges()) {
    std::set<int> seen;
    for (const auto& v : e) seen.insert(f.assignment.at(v));
    if (mode == ColoringMode::weak && seen.size() < 2) return false;
    if (mode == ColoringMode::strong && seen.size() != e.size()) return false;
  }
  return true;
}

namespace detail {

/// Exact k-colorability of a graph: DSATUR branching with the usual symmetry
/// break (a vertex may open at most one new color).
class GraphColorer {
 public:
  explicit GraphColorer(std::vector<std::vector<std::uint32_t>> adj) : adj_(std::move(adj)) {}

  std::optional<std::vector<int>> color(int k) {
    const std::size_t n = adj_.size();
    k_ = k;
    colors_.assign(n, -1);
    conflicts_.assign(n, std::vector<int>(static_cast<std::size_t>(k), 0));
    saturation_.assign(n, 0);
    if (n == 0) return colors_;
    if (search(n, 0)) return colors_;
    return std::nullopt;
  }

 private:
  bool search(std::size_t remaining, int used) {
    if (remaining == 0) return true;
    std::size_t pick = adj_.size();
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (colors_[v] != -1) continue;
      if (pick == adj_.size() || saturation_[v] > saturation_[pick] ||
          (saturation_[v] == saturation_[pick] && adj_[v].size() > adj_[pick].size())) {
        pick = v;
      }
    }
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      if (conflicts_[pick][c] != 0) continue;
      assign(pick, c, +1);
      if (search(remaining - 1, std::max(used, c + 1))) return true;
      assign(pick, c, -1);
    }
    return false;
  }

  void assign(std::size_t v, int c, int delta) {
    colors_[v] = delta > 0 ? c : -1;
    for (auto w : adj_[v]) {
      auto& count = conflicts_[w][c];
      if (delta > 0 && count++ == 0) ++saturation_[w];
      if (delta < 0 && --count == 0) --saturation_[w];
    }
  }

  std::vector<std::vector<std::uint32_t>> adj_;
  int k_ = 0;
  std::vector<int> colors_;
  std::vector<std::vector<int>> conflicts_;
  std::vector<int> saturation_;
};

/// Exact weak k-colorability of a hypergraph by backtracking over a fixed
/// vertex order. A hyperedge is checked once its last vertex is colored.
class WeakColorer {
 public:
  explicit WeakColorer(const Hypergraph& h) : h_(h) {
    const std::size_t n = h.num_vertices();
    auto adj = section_adjacency(h);
    // Highest 2-section degree first, then prefer vertices with the most
    // already-placed neighbours so hyperedges close early.
    std::vector<char> placed(n, 0);
    std::vector<int> placed_neighbours(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t best = n;
      for (std::size_t v = 0; v < n; ++v) {
        if (placed[v]) continue;
        if (best == n || placed_neighbours[v] > placed_neighbours[best] ||
            (placed_neighbours[v] == placed_neighbours[best] && adj[v].size() > adj[best].size())) {
          best = v;
        }
      }
      placed[best] = 1;
      order_.push_back(static_cast<std::uint32_t>(best));
      for (auto w : adj[best]) ++placed_neighbours[w];
    }
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[order_[i]] = i;
    closing_.resize(n);
    for (std::size_t e = 0; e < h.num_hyperedges(); ++e) {
      const auto& m = h.edge_members(e);
      auto last = *std::max_element(m.begin(), m.end(), [&](auto a, auto b) { return position[a] < position[b]; });
      closing_[last].push_back(static_cast<std::uint32_t>(e));
    }
  }

  std::optional<std::vector<int>> color(int k) {
    k_ = k;
    colors_.assign(h_.num_vertices(), -1);
    if (search(0, 0)) return colors_;
    return std::nullopt;
  }

 private:
  bool search(std::size_t step, int used) {
    if (step == order_.size()) return true;
    const auto v = order_[step];
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      colors_[v] = c;
      if (closes_properly(v) && search(step + 1, std::max(used, c + 1))) return true;
    }
    colors_[v] = -1;
    return false;
  }

  bool closes_properly(std::uint32_t v) const {
    for (auto e : closing_[v]) {
      const auto& m = h_.edge_members(e);
      bool mono = std::all_of(m.begin(), m.end(), [&](auto w) { return colors_[w] == colors_[v]; });
      if (mono) return false;
    }
    return true;
  }

  const Hypergraph& h_;
  std::vector<std::uint32_t> order_;
  std::vector<std::vector<std::uint32_t>> closing_;
  int k_ = 0;
  std::vector<int> colors_;
};

inline Coloring named(const Hypergraph& h, const std::vector<int>& colors) {
  Coloring f;
  for (std::size_t i = 0; i < colors.size(); ++i) f.assignment.emplace(h.vertices()[i], colors[i]);
  return f;
}

}  // namespace detail

/// Minimum number of colors of a weak (no monochromatic hyperedge) or strong
/// (rainbow hyperedges) coloring, with a witness. Strong colorings are proper
/// colorings of the 2-section. Throws LimitExceededError above `max_vertices`.
inline ChromaticResult chromatic_number(const Hypergraph& h, ColoringMode mode,
                                        std::size_t max_vertices = kDefaultMaxExact) {
  const std::size_t n = h.num_vertices();
  if (n > max_vertices) {
    throw LimitExceededError("exact coloring limited to " + std::to_string(max_vertices) + " vertices, got " +
                             std::to_string(n));
  }
  if (mode == ColoringMode::strong) {
    detail::GraphColorer colorer(detail::section_adjacency(h));
    for (int k = static_cast<int>(stats(h).rank); k <= static_cast<int>(n); ++k) {
      if (auto c = colorer.color(k)) return {k, detail::named(h, *c)};
    }
  } else {
    detail::WeakColorer colorer(h);
    for (int k = 2; k <= static_cast<int>(n); ++k) {
      if (auto c = colorer.color(k)) return {k, detail::named(h, *c)};
    }
  }
  throw InternalInconsistencyError("no coloring found with n colors");
}

/// Minimum colors for the hyperedges so that intersecting hyperedges differ.
/// Throws LimitExceededError above `max_hyperedges`.
inline ChromaticIndexResult chromatic_index(const Hypergraph& h, std::size_t max_hyperedges = kDefaultMaxExact) {
  const std::size_t m = h.num_hyperedges();
  if (m > max_hyperedges) {
    throw LimitExceededError("exact edge coloring limited to " + std::to_string(max_hyperedges) +
                             " hyperedges, got " + std::to_string(m));
  }
  std::vector<std::vector<std::uint32_t>> adj(m);
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    const auto& inc = h.incident_edges(v);
    for (auto a : inc) {
      for (auto b : inc) {
        if (a != b) adj[a].push_back(b);
      }
    }
  }
  for (auto& n : adj) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  detail::GraphColorer colorer(std::move(adj));
  // The hyperedges through a vertex are pairwise intersecting, so q >= Δ.
  for (int q = static_cast<int>(stats(h).max_degree); q <= static_cast<int>(m); ++q) {
    if (auto c = colorer.color(q)) {
      ChromaticIndexResult out{q, {}};
      for (std::size_t e = 0; e < m; ++e) out.coloring.assignment.emplace(h.hyperedges()[e], (*c)[e]);
      return out;
    }
  }
  throw InternalInconsistencyError("no edge coloring found with m colors");
}

/// q(H) = Δ(H).
inline bool has_colored_hyperedge_property(const Hypergraph& h, std::size_t max_hyperedges = kDefaultMaxExact) {
  return chromatic_index(h, max_hyperedges).q == static_cast<int>(stats(h).max_degree);
}

namespace detail {

inline void check_surjective(const Coloring& f, int k, std::size_t which) {
  std::set<int> image;
  for (const auto& [v, c] : f.assignment) image.insert(c);
  std::set<int> expected;
  for (int c = 0; c < k; ++c) expected.insert(c);
  if (image != expected) {
    throw ValidationError("factor coloring " + std::to_string(which) + " does not use exactly colors 0.." +
                          std::to_string(k - 1));
  }
}

inline int mod_sum(const std::vector<Coloring>& factor_colorings, const std::vector<VertexId>& parts, int modulus) {
  int sum = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) sum += factor_colorings[i].assignment.at(parts[i]);
  return sum % modulus;
}

}  // namespace detail

/// Colors every product tuple (x_1, ..., x_k) with (Σ f_i(x_i)) mod max k_i.
/// Each f_i must use exactly the colors 0..k_i-1. Keys of the result are the
/// rendered tuple names.
inline Coloring combine_colorings(const std::vector<Coloring>& factor_colorings, const std::vector<int>& factor_chromatic) {
  if (factor_colorings.empty() || factor_colorings.size() != factor_chromatic.size()) {
    throw ValidationError("combine_colorings needs one color count per factor coloring");
  }
  for (std::size_t i = 0; i < factor_colorings.size(); ++i) {
    detail::check_surjective(factor_colorings[i], factor_chromatic[i], i);
  }
  const int modulus = *std::max_element(factor_chromatic.begin(), factor_chromatic.end());

  Coloring out;
  std::vector<std::vector<VertexId>> domains;
  for (const auto& f : factor_colorings) {
    std::vector<VertexId> d;
    for (const auto& [v, c] : f.assignment) d.push_back(v);
    domains.push_back(std::move(d));
  }
  std::vector<std::size_t> odometer(domains.size(), 0);
  while (true) {
    std::vector<VertexId> parts;
    for (std::size_t i = 0; i < domains.size(); ++i) parts.push_back(domains[i][odometer[i]]);
    auto name = render_tuple(parts);
    if (!out.assignment.emplace(name, detail::mod_sum(factor_colorings, parts, modulus)).second) {
      throw ValidationError("product vertex name " + name + " is ambiguous");
    }
    std::size_t i = domains.size();
    while (i > 0) {
      --i;
      if (++odometer[i] < domains[i].size()) break;
      odometer[i] = 0;
      if (i == 0) return out;
    }
  }
}

struct ColResult {
  Coloring coloring;
  int k = 0;
  HypergraphFactorization factorization;
  std::vector<int> factor_chromatic;
};

/// Minimal weak coloring of a connected conformal hypergraph computed from
/// minimal colorings of its prime factors.
inline ColResult col_algorithm_detailed(const Hypergraph& h, std::size_t max_vertices = kDefaultMaxExact,
                                        std::size_t clique_limit = kDefaultMaxCliques) {
  ColResult out{{}, 0, factor_hypergraph(h, clique_limit), {}};
  std::vector<Coloring> factor_colorings;
  for (const auto& f : out.factorization.factors) {
    auto r = chromatic_number(f, ColoringMode::weak, max_vertices);
    out.factor_chromatic.push_back(r.k);
    factor_colorings.push_back(std::move(r.coloring));
  }
  for (std::size_t i = 0; i < factor_colorings.size(); ++i) {
    detail::check_surjective(factor_colorings[i], out.factor_chromatic[i], i);
  }
  out.k = *std::max_element(out.factor_chromatic.begin(), out.factor_chromatic.end());
  for (const auto& [v, t] : out.factorization.coords) {
    out.coloring.assignment.emplace(v, detail::mod_sum(factor_colorings, t.parts, out.k));
  }
  return out;
}

inline Coloring col_algorithm(const Hypergraph& h, std::size_t max_vertices = kDefaultMaxExact,
                              std::size_t clique_limit = kDefaultMaxCliques) {
  return col_algorithm_detailed(h, max_vertices, clique_limit).coloring;
}

inline nlohmann::json to_json(const Coloring& f) {
  return nlohmann::json{{"k", f.used_colors()}, {"assignment", f.assignment}};
}

inline nlohmann::json to_json(const ChromaticIndexResult& r) {
  nlohmann::json assignment = nlohmann::json::object();
  for (const auto& [e, c] : r.coloring.assignment) assignment[detail::join_tokens(e)] = c;
  return nlohmann::json{{"k", r.q}, {"assignment", assignment}};
}

}  // namespace hypercart
