#pragma once

// Hypergraph and graph data model: validation, the .hg text format, the
// canonical JSON form, and basic statistics.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hypercart/error.hpp"

namespace hypercart {

/// Sorted, duplicate-free vertex list. Its identity is the list itself.
using Hyperedge = std::vector<VertexId>;

/// Unordered vertex pair stored with first < second.
using Edge = std::pair<VertexId, VertexId>;

inline Edge make_edge(VertexId a, VertexId b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

enum class InputKind { hypergraph, graph };
enum class Format { text, structured };

// ---------------------------------------------------------------------------
// Vertex tokens
// ---------------------------------------------------------------------------

inline bool is_atom_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '.' || c == '-';
}

inline bool is_atom_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_atom_char);
}

/// Splits a flat tuple "(a,b,c)" into its parts. Returns nullopt when `s` is
/// not a well-formed tuple of at least two atoms.
inline std::optional<std::vector<VertexId>> parse_tuple_token(std::string_view s) {
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') return std::nullopt;
  std::vector<VertexId> parts;
  std::string_view body = s.substr(1, s.size() - 2);
  std::size_t start = 0;
  while (true) {
    std::size_t comma = body.find(',', start);
    std::string_view part = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
    if (!is_atom_token(part)) return std::nullopt;
    parts.emplace_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() < 2) return std::nullopt;
  return parts;
}

/// A vertex token is an atom over [A-Za-z0-9_.-] or a flat tuple of atoms.
inline bool is_vertex_token(std::string_view s) {
  return is_atom_token(s) || parse_tuple_token(s).has_value();
}

/// Atomic parts of a vertex name: the tuple components, or the atom itself.
inline std::vector<VertexId> tuple_parts(const VertexId& v) {
  if (auto parts = parse_tuple_token(v)) return *parts;
  return {v};
}

/// Renders a tuple of vertex names as one flat tuple token. Tuple-valued
/// components are spliced in, so products never nest. A single atomic
/// component renders as itself.
inline VertexId render_tuple(std::span<const VertexId> components) {
  std::vector<VertexId> flat;
  for (const auto& c : components) {
    auto parts = tuple_parts(c);
    flat.insert(flat.end(), parts.begin(), parts.end());
  }
  if (flat.size() == 1) return flat.front();
  std::string out = "(";
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (i) out += ',';
    out += flat[i];
  }
  out += ')';
  return out;
}

// ---------------------------------------------------------------------------
// Hypergraph
// ---------------------------------------------------------------------------

/// A finite, simple, loop-free hypergraph whose hyperedges cover its vertices.
/// Immutable after construction; every instance satisfies the invariants.
class Hypergraph {
 public:
  /// Builds and validates a hypergraph. Each inner list is one hyperedge;
  /// order inside a list is irrelevant and identical hyperedges collapse.
  static Hypergraph from_edges(std::vector<std::vector<VertexId>> edges) {
    if (edges.empty()) throw ValidationError("hypergraph has no hyperedges");
    for (auto& e : edges) {
      for (const auto& v : e) {
        if (!is_vertex_token(v)) throw ValidationError("invalid vertex token '" + v + "'");
      }
      std::sort(e.begin(), e.end());
      auto dup = std::adjacent_find(e.begin(), e.end());
      if (dup != e.end()) throw ValidationError("duplicate vertex '" + *dup + "' in hyperedge");
      if (e.size() < 2) {
        throw ValidationError("loop: hyperedge {" + (e.empty() ? std::string() : e.front()) +
                              "} has fewer than 2 vertices");
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Hypergraph(std::move(edges));
  }

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  const std::vector<Hyperedge>& hyperedges() const noexcept { return edges_; }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_hyperedges() const noexcept { return edges_.size(); }

  std::optional<std::size_t> index_of(const VertexId& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }
  bool has_vertex(const VertexId& v) const { return index_of(v).has_value(); }

  /// `e` must be sorted.
  bool has_hyperedge(const Hyperedge& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  /// Vertex indices of hyperedge `i`, ascending.
  const std::vector<std::uint32_t>& edge_members(std::size_t i) const { return members_[i]; }
  /// Indices of the hyperedges containing vertex `v`, ascending.
  const std::vector<std::uint32_t>& incident_edges(std::size_t v) const { return incidence_[v]; }

  bool is_graph() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Hyperedge& e) { return e.size() == 2; });
  }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  explicit Hypergraph(std::vector<Hyperedge> edges) : edges_(std::move(edges)) {
    for (const auto& e : edges_) vertices_.insert(vertices_.end(), e.begin(), e.end());
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());

    members_.resize(edges_.size());
    incidence_.resize(vertices_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      for (const auto& v : edges_[i]) {
        auto vi = static_cast<std::uint32_t>(*index_of(v));
        members_[i].push_back(vi);
        incidence_[vi].push_back(static_cast<std::uint32_t>(i));
      }
    }
    check_simple();
  }

  // Containment test against the hyperedges through the least-loaded vertex
  // of each hyperedge; any superset must pass through it.
  void check_simple() const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& mem = members_[i];
      auto pivot = *std::min_element(mem.begin(), mem.end(), [&](auto a, auto b) {
        return incidence_[a].size() < incidence_[b].size();
      });
      for (auto j : incidence_[pivot]) {
        if (j == i || members_[j].size() <= mem.size()) continue;
        if (std::includes(members_[j].begin(), members_[j].end(), mem.begin(), mem.end())) {
          throw ValidationError("non-simple: hyperedge {" + join(edges_[i]) +
                                "} is contained in {" + join(edges_[j]) + "}");
        }
      }
    }
  }

  static std::string join(const Hyperedge& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) s += ',';
      s += e[i];
    }
    return s;
  }

  std::vector<VertexId> vertices_;
  std::vector<Hyperedge> edges_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<std::vector<std::uint32_t>> incidence_;
};

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

/// A hypergraph whose hyperedges all have two vertices.
class Graph {
 public:
  static Graph from_edges(const std::vector<Edge>& edges) {
    std::vector<std::vector<VertexId>> raw;
    raw.reserve(edges.size());
    for (const auto& [a, b] : edges) raw.push_back({a, b});
    return Graph(Hypergraph::from_edges(std::move(raw)));
  }

  static Graph from_hypergraph(Hypergraph h) {
    if (!h.is_graph()) throw ValidationError("not a graph: some hyperedge has more than 2 vertices");
    return Graph(std::move(h));
  }

  const Hypergraph& hypergraph() const noexcept { return h_; }
  const std::vector<VertexId>& vertices() const noexcept { return h_.vertices(); }
  std::size_t num_vertices() const noexcept { return h_.num_vertices(); }
  std::size_t num_edges() const noexcept { return h_.num_hyperedges(); }
  std::optional<std::size_t> index_of(const VertexId& v) const { return h_.index_of(v); }

  /// Edges sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(h_.num_hyperedges());
    for (const auto& e : h_.hyperedges()) out.emplace_back(e[0], e[1]);
    return out;
  }

  bool has_edge(const VertexId& a, const VertexId& b) const {
    auto [x, y] = make_edge(a, b);
    return h_.has_hyperedge({x, y});
  }

  /// Neighbour indices of vertex index `v`, ascending.
  const std::vector<std::uint32_t>& neighbors(std::size_t v) const { return adj_[v]; }

  bool adjacent(std::size_t a, std::size_t b) const {
    return std::binary_search(adj_[a].begin(), adj_[a].end(), static_cast<std::uint32_t>(b));
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.h_ == b.h_; }

 private:
  explicit Graph(Hypergraph h) : h_(std::move(h)) {
    adj_.resize(h_.num_vertices());
    for (std::size_t i = 0; i < h_.num_hyperedges(); ++i) {
      const auto& m = h_.edge_members(i);
      adj_[m[0]].push_back(m[1]);
      adj_[m[1]].push_back(m[0]);
    }
    for (auto& n : adj_) std::sort(n.begin(), n.end());
  }

  Hypergraph h_;
  std::vector<std::vector<std::uint32_t>> adj_;
};

namespace detail {

/// Sorted neighbour lists of the 2-section, indexed like `h.vertices()`.
inline std::vector<std::vector<std::uint32_t>> section_adjacency(const Hypergraph& h) {
  std::vector<std::vector<std::uint32_t>> adj(h.num_vertices());
  for (std::size_t i = 0; i < h.num_hyperedges(); ++i) {
    const auto& m = h.edge_members(i);
    for (auto a : m) {
      for (auto b : m) {
        if (a != b) adj[a].push_back(b);
      }
    }
  }
  for (auto& n : adj) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  return adj;
}

inline std::string join_tokens(const std::vector<VertexId>& e, std::string_view sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += sep;
    s += e[i];
  }
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Parsing and serialization
// ---------------------------------------------------------------------------

/// Parses the .hg line format: one hyperedge per line, whitespace-separated
/// tokens, '#' comments, blank lines ignored.
inline Hypergraph parse_hypergraph(std::string_view text, InputKind kind = InputKind::hypergraph) {
  std::vector<std::vector<VertexId>> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<VertexId> tokens;
    std::istringstream in{std::string(line)};
    for (std::string tok; in >> tok;) tokens.push_back(std::move(tok));
    if (tokens.empty()) continue;

    const std::string where = "line " + std::to_string(line_no) + ": ";
    for (const auto& t : tokens) {
      if (!is_vertex_token(t)) throw ValidationError(where + "invalid vertex token '" + t + "'");
    }
    auto sorted = tokens;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
      throw ValidationError(where + "duplicate token '" + *dup + "' in hyperedge");
    }
    if (tokens.size() == 1) throw ValidationError(where + "loop: hyperedge with a single vertex");
    if (kind == InputKind::graph && tokens.size() != 2) {
      throw ValidationError(where + "graph edges need exactly 2 vertices");
    }
    edges.push_back(std::move(tokens));
  }
  if (edges.empty()) throw ValidationError("empty input: no hyperedges");
  return Hypergraph::from_edges(std::move(edges));
}

inline nlohmann::json to_json(const Hypergraph& h) {
  return nlohmann::json{{"vertices", h.vertices()}, {"hyperedges", h.hyperedges()}};
}

inline nlohmann::json to_json(const Graph& g) { return to_json(g.hypergraph()); }

/// Reads the canonical structured object {"vertices": [...], "hyperedges": [[...]...]}.
inline Hypergraph hypergraph_from_json(const nlohmann::json& j, InputKind kind = InputKind::hypergraph) {
  if (!j.is_object() || !j.contains("hyperedges") || !j["hyperedges"].is_array()) {
    throw ValidationError("structured input needs a \"hyperedges\" array");
  }
  std::vector<std::vector<VertexId>> edges;
  for (const auto& e : j["hyperedges"]) {
    if (!e.is_array()) throw ValidationError("each hyperedge must be an array of strings");
    std::vector<VertexId> vs;
    for (const auto& v : e) {
      if (!v.is_string()) throw ValidationError("vertex tokens must be strings");
      vs.push_back(v.get<std::string>());
    }
    if (kind == InputKind::graph && vs.size() != 2) throw ValidationError("graph edges need exactly 2 vertices");
    edges.push_back(std::move(vs));
  }
  auto h = Hypergraph::from_edges(std::move(edges));
  if (j.contains("vertices")) {
    std::vector<VertexId> listed;
    try {
      listed = j["vertices"].get<std::vector<VertexId>>();
    } catch (const nlohmann::json::exception&) {
      throw ValidationError("\"vertices\" must be an array of strings");
    }
    std::sort(listed.begin(), listed.end());
    if (listed != h.vertices()) throw ValidationError("\"vertices\" does not equal the union of the hyperedges");
  }
  return h;
}

/// Accepts either the .hg text format or the structured JSON object; JSON is
/// recognised by a leading '{'.
inline Hypergraph parse_any(std::string_view text, InputKind kind = InputKind::hypergraph) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    return hypergraph_from_json(j, kind);
  }
  return parse_hypergraph(text, kind);
}

inline std::string to_text(const Hypergraph& h) {
  std::string out;
  for (const auto& e : h.hyperedges()) {
    out += detail::join_tokens(e);
    out += '\n';
  }
  return out;
}

/// Canonical JSON text shared by every structured output.
inline std::string dump_canonical(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline std::string serialize_hypergraph(const Hypergraph& h, Format format = Format::text) {
  return format == Format::text ? to_text(h) : dump_canonical(to_json(h));
}

// ---------------------------------------------------------------------------
// Statistics and connectivity
// ---------------------------------------------------------------------------

struct Stats {
  std::size_t n = 0;           ///< vertex count
  std::size_t m = 0;           ///< hyperedge count
  std::size_t max_degree = 0;  ///< Δ
  std::size_t rank = 0;        ///< r, largest hyperedge cardinality
  std::map<VertexId, std::size_t> degree;
};

inline Stats stats(const Hypergraph& h) {
  Stats s;
  s.n = h.num_vertices();
  s.m = h.num_hyperedges();
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    auto d = h.incident_edges(v).size();
    s.degree.emplace(h.vertices()[v], d);
    s.max_degree = std::max(s.max_degree, d);
  }
  for (const auto& e : h.hyperedges()) s.rank = std::max(s.rank, e.size());
  return s;
}

inline nlohmann::json to_json(const Stats& s) {
  return nlohmann::json{{"n", s.n}, {"m", s.m}, {"max_degree", s.max_degree}, {"rank", s.rank}, {"degree", s.degree}};
}

/// True iff the 2-section is connected.
inline bool is_connected(const Hypergraph& h) {
  std::vector<char> seen(h.num_vertices(), 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto e : h.incident_edges(v)) {
      for (auto w : h.edge_members(e)) {
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
  }
  return reached == h.num_vertices();
}

inline bool is_connected(const Graph& g) { return is_connected(g.hypergraph()); }

}  // namespace hypercart
