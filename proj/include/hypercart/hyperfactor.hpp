#pragma once

// Prime factorization of connected conformal hypergraphs through the
// L2-section: factor the 2-section as a graph, restrict the labels to each
// factor layer and rebuild the factor hypergraphs from those labels.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypercart/core.hpp"
#include "hypercart/graphfactor.hpp"
#include "hypercart/product.hpp"
#include "hypercart/sections.hpp"

namespace hypercart {

struct HypergraphFactorization {
  std::vector<Hypergraph> factors;
  VertexId base;
  std::map<VertexId, TupleVertex> coords;

  bool prime() const noexcept { return factors.size() == 1; }
};

/// Factors `h` into prime hypergraphs. Each factor is the partial hypergraph
/// of `h` living on the layer through the base vertex.
///
/// Throws PreconditionError ("connected" or "conformal", the latter with a
/// witness) outside the supported class, and InternalInconsistencyError if a
/// layer restriction is not a subsection or the product does not rebuild `h`.
inline HypergraphFactorization factor_hypergraph(const Hypergraph& h, std::size_t clique_limit = kDefaultMaxCliques) {
  if (!is_connected(h)) throw PreconditionError("connected", "hypergraph is not connected");
  if (auto report = is_conformal(h, clique_limit); !report.conformal) {
    throw PreconditionError("conformal",
                            "hypergraph is not conformal: {" + detail::join_tokens(*report.witness, ",") +
                                "} is a maximal clique of the 2-section but not a hyperedge, or vice versa",
                            *report.witness);
  }

  auto section = l2_section(h);
  auto graph_factors = factor_graph(section.skeleton());

  HypergraphFactorization out;
  out.base = graph_factors.base;
  out.coords = graph_factors.coords;
  if (graph_factors.prime()) {
    out.factors.push_back(h);
    return out;
  }

  for (std::size_t i = 0; i < graph_factors.factors.size(); ++i) {
    L2Section layer = [&] {
      try {
        return subsection(section, graph_factors.factors[i].edges());
      } catch (const InvalidSectionError& e) {
        throw InternalInconsistencyError("layer " + std::to_string(i) + " does not restrict to a subsection: " +
                                         e.what());
      }
    }();
    out.factors.push_back(inverse_l2(layer));
  }

  detail::verify_coordinates(out.factors, out.coords, h.hyperedges(),
                             "hypergraph with " + std::to_string(out.factors.size()) + " factors");
  return out;
}

inline nlohmann::json to_json(const HypergraphFactorization& f) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& h : f.factors) factors.push_back(to_json(h));
  return nlohmann::json{{"prime", f.prime()}, {"factors", factors}, {"coords", coords_to_json(f.coords)}};
}

}  // namespace hypercart
