#pragma once

// 2-sections, labelled 2-sections (L2-sections), their inverse, subsections,
// maximal cliques and conformality.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hypercart/core.hpp"

namespace hypercart {

inline constexpr std::size_t kDefaultMaxCliques = 100000;

/// Raw edge labelling: each skeleton edge maps to the hyperedges covering it.
using LabelMap = std::map<Edge, std::vector<Hyperedge>>;

namespace detail {

inline std::string brace(const Hyperedge& e) { return "{" + join_tokens(e, ",") + "}"; }

/// Normalizes label sets (sorted, unique) and enforces the L2-section rules:
/// non-empty labels, each labelled hyperedge contains the edge's endpoints,
/// and closure (every pair of a labelled hyperedge is an edge carrying it).
inline LabelMap checked_labels(LabelMap labels) {
  if (labels.empty()) throw InvalidSectionError("L2-section has no edges");
  for (auto& [edge, set] : labels) {
    if (edge.first >= edge.second) {
      throw InvalidSectionError("edge {" + edge.first + "," + edge.second + "} is a loop or not normalized");
    }
    if (set.empty()) throw InvalidSectionError("edge {" + edge.first + "," + edge.second + "} has no labels");
    for (auto& e : set) {
      std::sort(e.begin(), e.end());
      if (std::adjacent_find(e.begin(), e.end()) != e.end() || e.size() < 2) {
        throw InvalidSectionError("label " + brace(e) + " is not a valid hyperedge");
      }
      if (!std::binary_search(e.begin(), e.end(), edge.first) ||
          !std::binary_search(e.begin(), e.end(), edge.second)) {
        throw InvalidSectionError("label " + brace(e) + " on edge {" + edge.first + "," + edge.second +
                                  "} does not contain both endpoints");
      }
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  for (const auto& [edge, set] : labels) {
    for (const auto& e : set) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
          auto it = labels.find({e[i], e[j]});
          if (it == labels.end() || !std::binary_search(it->second.begin(), it->second.end(), e)) {
            throw InvalidSectionError("closure violation: hyperedge " + brace(e) + " is labelled on {" +
                                      edge.first + "," + edge.second + "} but not on pair {" + e[i] + "," +
                                      e[j] + "}");
          }
        }
      }
    }
  }
  return labels;
}

inline Graph skeleton_of(const LabelMap& labels) {
  std::vector<Edge> edges;
  edges.reserve(labels.size());
  for (const auto& [edge, set] : labels) edges.push_back(edge);
  return Graph::from_edges(edges);
}

}  // namespace detail

/// A 2-section whose edges carry the set of hyperedges containing both
/// endpoints. Every instance satisfies the closure invariant.
class L2Section {
 public:
  static L2Section from_labels(LabelMap labels) {
    auto checked = detail::checked_labels(std::move(labels));
    auto skeleton = detail::skeleton_of(checked);
    return L2Section(std::move(skeleton), std::move(checked));
  }

  const Graph& skeleton() const noexcept { return skeleton_; }
  const LabelMap& labels() const noexcept { return labels_; }

  /// Labels of edge {a,b}; throws if the pair is not a skeleton edge.
  const std::vector<Hyperedge>& labels_of(const VertexId& a, const VertexId& b) const {
    auto it = labels_.find(make_edge(a, b));
    if (it == labels_.end()) throw ValidationError("{" + a + "," + b + "} is not a skeleton edge");
    return it->second;
  }

  friend bool operator==(const L2Section& a, const L2Section& b) { return a.labels_ == b.labels_; }

 private:
  L2Section(Graph skeleton, LabelMap labels) : skeleton_(std::move(skeleton)), labels_(std::move(labels)) {}

  Graph skeleton_;
  LabelMap labels_;
};

inline nlohmann::json to_json(const L2Section& s) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [edge, set] : s.labels()) {
    edges.push_back({{"edge", {edge.first, edge.second}}, {"labels", set}});
  }
  return nlohmann::json{{"edges", edges}};
}

/// One line per edge: "x y : a b c | a b d".
inline std::string to_text(const L2Section& s) {
  std::string out;
  for (const auto& [edge, set] : s.labels()) {
    out += edge.first + " " + edge.second + " :";
    for (std::size_t i = 0; i < set.size(); ++i) {
      out += i ? " | " : " ";
      out += detail::join_tokens(set[i]);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

inline Graph two_section(const Hypergraph& h) {
  auto adj = detail::section_adjacency(h);
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < adj.size(); ++a) {
    for (auto b : adj[a]) {
      if (a < b) edges.emplace_back(h.vertices()[a], h.vertices()[b]);
    }
  }
  return Graph::from_edges(edges);
}

inline L2Section l2_section(const Hypergraph& h) {
  LabelMap labels;
  for (const auto& e : h.hyperedges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) labels[{e[i], e[j]}].push_back(e);
    }
  }
  return L2Section::from_labels(std::move(labels));
}

/// The hypergraph whose hyperedges are the union of all label sets.
/// Throws InvalidSectionError on a closure violation and ValidationError when
/// the union is not a simple hypergraph.
inline Hypergraph inverse_l2(const LabelMap& labels) {
  auto checked = detail::checked_labels(labels);
  std::set<Hyperedge> all;
  for (const auto& [edge, set] : checked) all.insert(set.begin(), set.end());
  return Hypergraph::from_edges({all.begin(), all.end()});
}

inline Hypergraph inverse_l2(const L2Section& s) { return inverse_l2(s.labels()); }

/// Restriction of `s` to the edge subset `kept`. Every hyperedge labelled on a
/// kept edge must have all of its pairs kept.
inline L2Section subsection(const L2Section& s, const std::vector<Edge>& kept) {
  LabelMap restricted;
  for (const auto& raw : kept) {
    auto edge = make_edge(raw.first, raw.second);
    auto it = s.labels().find(edge);
    if (it == s.labels().end()) {
      throw InvalidSectionError("{" + edge.first + "," + edge.second + "} is not an edge of the section");
    }
    restricted.emplace(edge, it->second);
  }
  if (restricted.empty()) throw InvalidSectionError("subsection needs at least one edge");
  for (const auto& [edge, set] : restricted) {
    for (const auto& e : set) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
          if (!restricted.contains({e[i], e[j]})) {
            throw InvalidSectionError("subsection condition violated: hyperedge " + detail::brace(e) +
                                      " is labelled on {" + edge.first + "," + edge.second + "} but pair {" +
                                      e[i] + "," + e[j] + "} is not kept");
          }
        }
      }
    }
  }
  return L2Section::from_labels(std::move(restricted));
}

// ---------------------------------------------------------------------------
// Maximal cliques
// ---------------------------------------------------------------------------

namespace detail {

/// Bron–Kerbosch with Tomita pivoting over index adjacency lists. Returns
/// cliques as sorted index lists; throws once more than `limit` are found.
class CliqueEnumerator {
 public:
  CliqueEnumerator(const std::vector<std::vector<std::uint32_t>>& adj, std::size_t limit)
      : adj_(adj), limit_(limit) {}

  std::vector<std::vector<std::uint32_t>> run() {
    std::vector<std::uint32_t> p(adj_.size());
    for (std::uint32_t i = 0; i < p.size(); ++i) p[i] = i;
    std::vector<std::uint32_t> r, x;
    expand(r, p, x);
    return std::move(out_);
  }

 private:
  bool adjacent(std::uint32_t a, std::uint32_t b) const {
    return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
  }

  std::vector<std::uint32_t> neighbours_in(std::uint32_t v, const std::vector<std::uint32_t>& set) const {
    std::vector<std::uint32_t> out;
    std::set_intersection(set.begin(), set.end(), adj_[v].begin(), adj_[v].end(), std::back_inserter(out));
    return out;
  }

  void expand(std::vector<std::uint32_t>& r, std::vector<std::uint32_t> p, std::vector<std::uint32_t> x) {
    if (p.empty()) {
      if (x.empty()) {
        if (out_.size() >= limit_) {
          throw LimitExceededError("maximal clique limit of " + std::to_string(limit_) + " exceeded");
        }
        auto c = r;
        std::sort(c.begin(), c.end());
        out_.push_back(std::move(c));
      }
      return;
    }
    // Pivot maximizing |P ∩ N(u)| over P ∪ X.
    std::uint32_t pivot = p.front();
    std::size_t best = 0;
    for (const auto* set : {&p, &x}) {
      for (auto u : *set) {
        auto cnt = neighbours_in(u, p).size();
        if (cnt > best) {
          best = cnt;
          pivot = u;
        }
      }
    }
    std::vector<std::uint32_t> candidates;
    for (auto v : p) {
      if (!adjacent(pivot, v)) candidates.push_back(v);
    }
    for (auto v : candidates) {
      r.push_back(v);
      expand(r, neighbours_in(v, p), neighbours_in(v, x));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  const std::vector<std::vector<std::uint32_t>>& adj_;
  std::size_t limit_;
  std::vector<std::vector<std::uint32_t>> out_;
};

inline std::vector<std::vector<VertexId>> named_cliques(const std::vector<VertexId>& names,
                                                        const std::vector<std::vector<std::uint32_t>>& adj,
                                                        std::size_t limit) {
  auto raw = CliqueEnumerator(adj, limit).run();
  std::vector<std::vector<VertexId>> out;
  out.reserve(raw.size());
  for (const auto& c : raw) {
    std::vector<VertexId> named;
    for (auto i : c) named.push_back(names[i]);
    out.push_back(std::move(named));  // already sorted: names are sorted by index
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Inclusion-maximal cliques, each sorted, listed lexicographically.
inline std::vector<std::vector<VertexId>> maximal_cliques(const Graph& g, std::size_t limit = kDefaultMaxCliques) {
  std::vector<std::vector<std::uint32_t>> adj(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) adj[v] = g.neighbors(v);
  return detail::named_cliques(g.vertices(), adj, limit);
}

struct ConformalityReport {
  bool conformal = true;
  /// A maximal clique that is not a hyperedge, or a hyperedge that is not a
  /// maximal clique. Present iff not conformal.
  std::optional<std::vector<VertexId>> witness;
};

inline ConformalityReport is_conformal(const Hypergraph& h, std::size_t clique_limit = kDefaultMaxCliques) {
  auto cliques = detail::named_cliques(h.vertices(), detail::section_adjacency(h), clique_limit);
  for (const auto& c : cliques) {
    if (!h.has_hyperedge(c)) return {false, c};
  }
  for (const auto& e : h.hyperedges()) {
    if (!std::binary_search(cliques.begin(), cliques.end(), e)) return {false, e};
  }
  return {true, std::nullopt};
}

inline nlohmann::json to_json(const ConformalityReport& r) {
  nlohmann::json j{{"conformal", r.conformal}};
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

}  // namespace hypercart
