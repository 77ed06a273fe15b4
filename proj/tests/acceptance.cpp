// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runs standalone (no test framework) so ctest reports it as a
// single test with readable output.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "test_util.hpp"

namespace hc = hypercart;
namespace ht = hypercart::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool report(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  double elapsed = seconds_since(t0);
  if (budget_s > 0 && elapsed >= budget_s) {
    std::ostringstream os;
    os << "runtime " << elapsed << " s exceeds " << budget_s << " s";
    out.fail(os.str());
  }
  std::printf("[%s] %2d %-44s %8.3f s%s%s\n", out.ok ? "PASS" : "FAIL", id, name.c_str(), elapsed,
              out.ok ? "" : "  ", out.detail.c_str());
  std::fflush(stdout);
  return out.ok;
}

std::string tag(const std::string& what, std::uint64_t i) { return what + " #" + std::to_string(i); }

// Renaming through coords must reproduce the product of the returned factors.
template <class F>
bool reconstructs(const hc::Hypergraph& h, const F& f) {
  if (f.factors.size() < 2) return true;
  std::map<hc::VertexId, hc::VertexId> rename;
  for (const auto& [v, t] : f.coords) rename.emplace(v, t.render());
  return hc::relabel(h, rename) == hc::hyper_product(f.factors);
}

std::vector<hc::Hypergraph> as_hypergraphs(const std::vector<hc::Graph>& gs) {
  std::vector<hc::Hypergraph> out;
  for (const auto& g : gs) out.push_back(g.hypergraph());
  return out;
}

Outcome graph_factorization() {
  Outcome out;
  std::uint64_t seed = 1000;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    std::size_t k = 2 + trial % 2;
    std::vector<hc::Graph> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(ht::random_prime_graph(seed, 6, "g" + std::to_string(i)));
    auto g = hc::graph_product(gens);
    auto f = hc::factor_graph(g);
    if (!ht::same_multiset_up_to_iso(f.factors, gens)) out.fail(tag("factor multiset", trial));
    std::set<std::vector<hc::VertexId>> image;
    for (const auto& [v, t] : f.coords) image.insert(t.parts);
    if (image.size() != g.num_vertices() || f.coords.size() != g.num_vertices()) out.fail(tag("coords bijection", trial));
    if (!reconstructs(g.hypergraph(), hc::HypergraphFactorization{as_hypergraphs(f.factors), f.base, f.coords})) {
      out.fail(tag("edge image", trial));
    }
  }
  return out;
}

bool named_instances() {
  bool all = true;
  auto k2 = [](const std::string& p) { return ht::complete_graph(2, p); };
  auto check = [&](const std::string& name, const hc::Graph& g, const std::vector<hc::Graph>& expected) {
    all &= report(2, "named: " + name, 1.0, [&] {
      Outcome out;
      auto f = hc::factor_graph(g);
      if (!ht::same_multiset_up_to_iso(f.factors, expected)) out.fail("factor multiset");
      return out;
    });
  };
  std::vector<hc::Graph> cube{k2("a"), k2("b"), k2("c")};
  check("Q3 -> 3 x K2", hc::graph_product(cube), {k2("x"), k2("y"), k2("z")});
  check("P2 x P3 -> {P2, P3}", hc::graph_product(ht::path_graph(2, "r"), ht::path_graph(3, "c")),
        {ht::path_graph(2), ht::path_graph(3)});
  check("C4 -> 2 x K2", ht::cycle_graph(4), {k2("x"), k2("y")});
  for (std::size_t n : {3, 4, 5}) {
    auto kn = ht::complete_graph(n);
    check("K" + std::to_string(n) + " prime", kn, {kn});
  }
  check("Petersen prime", ht::petersen_graph(), {ht::petersen_graph()});
  std::size_t found = 0;
  for (std::uint64_t seed = 1; found < 3 && seed < 200; ++seed) {
    auto g = hc::random_connected_graph(10, 0.3, seed);
    auto f = hc::factor_graph(g);
    if (!f.prime()) continue;
    ++found;
    check("random 10-vertex prime seed " + std::to_string(seed), g, {g});
  }
  if (found < 3) all &= report(2, "named: random 10-vertex primes", 0, [] {
    Outcome o;
    o.fail("fewer than 3 prime samples found");
    return o;
  });
  return all;
}

std::vector<hc::Hypergraph> prime_factors(const hc::Hypergraph& h) { return hc::factor_hypergraph(h).factors; }

Outcome algorithm2_soundness() {
  Outcome out;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto a = hc::random_conformal_hypergraph(2 + i % 4, 0.3 + static_cast<double>(i % 5) / 10.0, 5000 + i);
    auto b = hc::random_conformal_hypergraph(2 + (i / 4) % 4, 0.5, 7000 + i);
    auto expected = prime_factors(a);
    auto fb = prime_factors(b);
    expected.insert(expected.end(), fb.begin(), fb.end());
    auto h = hc::hyper_product(a, b);
    auto f = hc::factor_hypergraph(h);
    if (!ht::same_multiset_up_to_iso(f.factors, expected)) out.fail(tag("factor multiset", i));
    for (const auto& x : f.factors) {
      if (!hc::is_conformal(x).conformal) out.fail(tag("non-conformal factor", i));
    }
    if (!reconstructs(h, f)) out.fail(tag("reconstruction", i));
  }
  return out;
}

Outcome uniqueness() {
  Outcome out;
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto h = hc::hyper_product(hc::random_conformal_hypergraph(2 + i % 4, 0.5, 9000 + i),
                               hc::random_conformal_hypergraph(2 + (i / 3) % 3, 0.6, 9500 + i));
    auto c1 = hc::random_relabel(h, 2 * i + 1, "s").first;
    auto c2 = hc::random_relabel(h, 2 * i + 2, "t").first;
    if (!ht::same_multiset_up_to_iso(prime_factors(c1), prime_factors(c2))) out.fail(tag("trial", i));
  }
  return out;
}

Outcome chromatic_max() {
  Outcome out;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto a = hc::random_conformal_hypergraph(2 + i % 4, 0.4 + static_cast<double>(i % 3) / 10.0, 11000 + i);
    auto b = hc::random_conformal_hypergraph(2 + (i / 4) % 4, 0.5, 12000 + i);
    auto h = hc::hyper_product(a, b);
    for (auto mode : {hc::ColoringMode::weak, hc::ColoringMode::strong}) {
      int expected = std::max(hc::chromatic_number(a, mode).k, hc::chromatic_number(b, mode).k);
      if (hc::chromatic_number(h, mode, 64).k != expected) out.fail(tag("product chromatic", i));
    }
    auto f = hc::col_algorithm(h, 64);
    if (f.used_colors() != hc::chromatic_number(h, hc::ColoringMode::weak, 64).k) out.fail(tag("col_algorithm", i));
    if (!hc::verify_coloring(h, f, hc::ColoringMode::weak)) out.fail(tag("col_algorithm improper", i));
  }
  return out;
}

Outcome colored_hyperedge_property() {
  Outcome out;
  int accepted = 0;
  for (std::uint64_t i = 0; i < 2000 && accepted < 40; ++i) {
    auto a = hc::random_hypergraph(3 + i % 3, 2 + i % 3, 3, 20000 + i);
    auto b = hc::random_hypergraph(2 + (i / 3) % 3, 2, 3, 21000 + i);
    if (!hc::has_colored_hyperedge_property(a) || !hc::has_colored_hyperedge_property(b)) continue;
    ++accepted;
    auto h = hc::hyper_product(a, b);
    auto q = hc::chromatic_index(h, 256).q;
    auto delta = hc::stats(h).max_degree;
    if (static_cast<std::size_t>(q) != delta || delta != hc::stats(a).max_degree + hc::stats(b).max_degree) {
      out.fail(tag("pair", i));
    }
  }
  if (accepted < 30) out.fail("only " + std::to_string(accepted) + " accepted pairs");
  return out;
}

Outcome conformality_iff() {
  Outcome out;
  int mixed = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto pick = [&](std::uint64_t s, std::size_t n) {
      return s % 2 ? hc::random_conformal_hypergraph(n, 0.5, s) : hc::random_hypergraph(n, 2 + s % 4, 3, s);
    };
    auto a = pick(30000 + i, 3 + i % 3);
    auto b = pick(31000 + i * 3, 2 + i % 4);
    bool ca = hc::is_conformal(a).conformal, cb = hc::is_conformal(b).conformal;
    if (ca != cb) ++mixed;
    if (hc::is_conformal(hc::hyper_product(a, b)).conformal != (ca && cb)) out.fail(tag("pair", i));
  }
  if (mixed == 0) out.fail("sample never mixed conformal and non-conformal factors");
  return out;
}

Outcome section_identities() {
  Outcome out;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto a = hc::random_hypergraph(3 + i % 4, 2 + i % 4, 3, 40000 + i);
    auto b = hc::random_hypergraph(2 + i % 3, 2 + i % 3, 3, 41000 + i);
    auto h = hc::hyper_product(a, b);
    if (hc::two_section(h) != hc::graph_product(hc::two_section(a), hc::two_section(b))) out.fail(tag("2-section", i));
    if (hc::l2_section(h) != hc::l2_product(hc::l2_section(a), hc::l2_section(b))) out.fail(tag("L2-section", i));
    if (hc::inverse_l2(hc::l2_section(a)) != a) out.fail(tag("inverse of L2", i));
    auto gamma = hc::l2_section(hc::random_hypergraph(4 + i % 5, 3 + i % 5, 4, 42000 + i));
    if (hc::l2_section(hc::inverse_l2(gamma)) != gamma) out.fail(tag("L2 of inverse", i));
  }
  return out;
}

Outcome lemma_checks() {
  Outcome out;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto a = ht::rename_with_prefix(hc::random_hypergraph(2 + i % 4, 2 + i % 4, 3, 50000 + i), "a");
    auto b = ht::rename_with_prefix(hc::random_hypergraph(2 + (i / 2) % 4, 2 + i % 3, 4, 51000 + i), "b");
    auto h = hc::hyper_product(a, b);
    // Direction of a hyperedge: 0 if its first coordinate varies, 1 otherwise.
    auto direction = [](const hc::Hyperedge& e) {
      return hc::tuple_parts(e[0])[0] != hc::tuple_parts(e[1])[0] ? 0 : 1;
    };
    std::set<hc::Edge> pairs[2];
    for (const auto& e : h.hyperedges()) {
      int d = direction(e);
      for (std::size_t x = 0; x < e.size(); ++x) {
        for (std::size_t y = x + 1; y < e.size(); ++y) pairs[d].insert(hc::make_edge(e[x], e[y]));
      }
    }
    for (const auto& p : pairs[0]) {
      if (pairs[1].count(p)) out.fail(tag("A1 and A2 intersect", i));
    }
    // Hyperedges from different factor directions meet in at most one vertex.
    const auto& es = h.hyperedges();
    for (std::size_t x = 0; x < es.size(); ++x) {
      for (std::size_t y = x + 1; y < es.size(); ++y) {
        if (direction(es[x]) == direction(es[y])) continue;
        std::vector<hc::VertexId> common;
        std::set_intersection(es[x].begin(), es[x].end(), es[y].begin(), es[y].end(), std::back_inserter(common));
        if (common.size() > 1) out.fail(tag("hyperedges share two vertices", i));
      }
    }
    auto s = hc::stats(h), sa = hc::stats(a), sb = hc::stats(b);
    if (s.n != sa.n * sb.n) out.fail(tag("n", i));
    if (s.m != sa.n * sb.m + sb.n * sa.m) out.fail(tag("m", i));
    if (s.max_degree != sa.max_degree + sb.max_degree) out.fail(tag("max degree", i));
    if (s.rank != std::max(sa.rank, sb.rank)) out.fail(tag("rank", i));
  }
  return out;
}

Outcome exact_coloring_oracle() {
  Outcome out;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto h = hc::random_hypergraph(3 + seed % 5, 2 + seed % 8, 2 + seed % 4, 60000 + seed);
    if (h.num_vertices() > 7) out.fail(tag("generator exceeded 7 vertices", seed));
    for (auto mode : {hc::ColoringMode::weak, hc::ColoringMode::strong}) {
      auto r = hc::chromatic_number(h, mode);
      if (r.k != ht::brute_force_chromatic(h, mode)) out.fail(tag("chromatic number", seed));
      if (!hc::verify_coloring(h, r.coloring, mode)) out.fail(tag("improper coloring", seed));
    }
  }
  return out;
}

Outcome l2_runtime() {
  Outcome out;
  // 500 distinct rank-6 hyperedges over 200 vertices; simplicity holds since
  // all hyperedges have the same size.
  std::mt19937_64 rng(70000);
  std::set<std::vector<hc::VertexId>> chosen;
  while (chosen.size() < 500) {
    std::set<hc::VertexId> e;
    while (e.size() < 6) e.insert("v" + std::to_string(rng() % 200));
    chosen.insert({e.begin(), e.end()});
  }
  auto h = hc::Hypergraph::from_edges({chosen.begin(), chosen.end()});
  auto t0 = Clock::now();
  auto s = hc::l2_section(h);
  double elapsed = seconds_since(t0);
  if (hc::stats(h).rank != 6 || h.num_hyperedges() != 500) out.fail("instance shape");
  if (s.skeleton().num_edges() == 0) out.fail("empty section");
  if (elapsed >= 1.0) out.fail("l2_section took " + std::to_string(elapsed) + " s");
  return out;
}

}  // namespace

int main() {
  bool all = true;
  all &= report(1, "graph factorization, 200 products", 30.0, graph_factorization);
  all &= named_instances();
  all &= report(3, "hypergraph factorization soundness", 60.0, algorithm2_soundness);
  all &= report(4, "uniqueness under relabelling", 0, uniqueness);
  all &= report(5, "chromatic number of products", 0, chromatic_max);
  all &= report(6, "colored hyperedge property", 0, colored_hyperedge_property);
  all &= report(7, "conformality of products", 0, conformality_iff);
  all &= report(8, "section identities", 0, section_identities);
  all &= report(9, "layer lemmas and count identities", 0, lemma_checks);
  all &= report(10, "exact coloring vs brute force", 0, exact_coloring_oracle);
  all &= report(11, "L2-section runtime budget", 0, l2_runtime);
  std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
