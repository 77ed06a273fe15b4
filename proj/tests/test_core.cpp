#include <gtest/gtest.h>

#include <numeric>

#include "test_util.hpp"

namespace hypercart {
namespace {

using testing::hg;

TEST(Parse, ReadsHyperedgesAndVertexUnion) {
  auto h = parse_hypergraph("a b c\nb d");
  EXPECT_EQ(h.vertices(), (std::vector<VertexId>{"a", "b", "c", "d"}));
  EXPECT_EQ(h.hyperedges(), (std::vector<Hyperedge>{{"a", "b", "c"}, {"b", "d"}}));
}

TEST(Parse, IgnoresCommentsAndBlankLines) {
  auto h = parse_hypergraph("# header\n\n  c b a  # trailing\n\t\nb d\n");
  EXPECT_EQ(h, hg({{"a", "b", "c"}, {"b", "d"}}));
}

TEST(Parse, RejectsDuplicateToken) {
  EXPECT_THROW(parse_hypergraph("a a b"), ValidationError);
}

TEST(Parse, RejectsLoop) {
  EXPECT_THROW(parse_hypergraph("a b\nc"), ValidationError);
}

TEST(Parse, RejectsNonSimple) {
  try {
    parse_hypergraph("a b\na b c");
    FAIL() << "expected non-simple rejection";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("non-simple"), std::string::npos);
  }
}

TEST(Parse, RejectsEmptyInput) {
  EXPECT_THROW(parse_hypergraph(""), ValidationError);
  EXPECT_THROW(parse_hypergraph("# only a comment\n\n"), ValidationError);
}

TEST(Parse, RejectsReservedCharacters) {
  EXPECT_THROW(parse_hypergraph("a,b c"), ValidationError);
  EXPECT_THROW(parse_hypergraph("a| b"), ValidationError);
  EXPECT_THROW(parse_hypergraph("(a) b"), ValidationError);
  EXPECT_THROW(parse_hypergraph("((a,b),c) d"), ValidationError);
}

TEST(Parse, AcceptsFlatTupleTokens) {
  auto h = parse_hypergraph("(x,u) (x,v)\n");
  EXPECT_EQ(h.vertices(), (std::vector<VertexId>{"(x,u)", "(x,v)"}));
}

TEST(Parse, GraphKindNeedsPairs) {
  EXPECT_NO_THROW(parse_hypergraph("a b\nb c", InputKind::graph));
  EXPECT_THROW(parse_hypergraph("a b c", InputKind::graph), ValidationError);
}

TEST(Parse, DuplicateLinesCollapse) {
  EXPECT_EQ(parse_hypergraph("a b\nb a\n").num_hyperedges(), 1u);
}

TEST(Parse, StructuredInput) {
  auto h = parse_any(R"({"vertices": ["a","b","c"], "hyperedges": [["c","b"],["a","b"]]})");
  EXPECT_EQ(h, hg({{"a", "b"}, {"b", "c"}}));
  EXPECT_THROW(parse_any(R"({"vertices": ["a","b","z"], "hyperedges": [["a","b"]]})"), ValidationError);
  EXPECT_THROW(parse_any(R"({"hyperedges": )"), ValidationError);
}

TEST(Serialize, SortsVerticesAndHyperedges) {
  EXPECT_EQ(serialize_hypergraph(hg({{"b", "a"}})), "a b\n");
  EXPECT_EQ(serialize_hypergraph(hg({{"b", "d"}, {"c", "a", "b"}})), "a b c\nb d\n");
}

TEST(Serialize, StructuredShape) {
  auto j = nlohmann::json::parse(serialize_hypergraph(hg({{"b", "d"}, {"a", "b", "c"}}), Format::structured));
  EXPECT_EQ(j["vertices"], nlohmann::json({"a", "b", "c", "d"}));
  EXPECT_EQ(j["hyperedges"], nlohmann::json({{"a", "b", "c"}, {"b", "d"}}));
}

TEST(Serialize, RoundTripOnRandomHypergraphs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto h = random_hypergraph(3 + seed % 8, 1 + seed % 9, 2 + seed % 4, seed);
    EXPECT_EQ(parse_hypergraph(serialize_hypergraph(h)), h);
    EXPECT_EQ(parse_any(serialize_hypergraph(h, Format::structured)), h);
  }
}

TEST(Serialize, CanonicalForEqualHypergraphs) {
  auto a = parse_hypergraph("d b\nc a b\n");
  auto b = parse_hypergraph("a b c\nb d\n");
  EXPECT_EQ(serialize_hypergraph(a), serialize_hypergraph(b));
  EXPECT_EQ(serialize_hypergraph(a, Format::structured), serialize_hypergraph(b, Format::structured));
}

TEST(Stats, CountsDegreesAndRank) {
  auto s = stats(hg({{"a", "b", "c"}, {"b", "d"}}));
  EXPECT_EQ(s.n, 4u);
  EXPECT_EQ(s.m, 2u);
  EXPECT_EQ(s.max_degree, 2u);
  EXPECT_EQ(s.degree.at("b"), 2u);
  EXPECT_EQ(s.rank, 3u);

  auto single = stats(hg({{"a", "b"}}));
  EXPECT_EQ(single.n, 2u);
  EXPECT_EQ(single.m, 1u);
  EXPECT_EQ(single.max_degree, 1u);
  EXPECT_EQ(single.rank, 2u);
}

TEST(Stats, DegreeSumEqualsTotalHyperedgeSize) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto h = random_hypergraph(4 + seed % 7, 2 + seed % 8, 4, seed);
    auto s = stats(h);
    std::size_t degree_sum = 0, size_sum = 0;
    for (const auto& [v, d] : s.degree) degree_sum += d;
    for (const auto& e : h.hyperedges()) size_sum += e.size();
    EXPECT_EQ(degree_sum, size_sum);
  }
}

TEST(Stats, ProductDegreeIsSumOfFactorDegrees) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto a = random_hypergraph(3 + seed % 3, 3, 3, seed);
    auto b = testing::rename_with_prefix(random_hypergraph(3 + seed % 4, 3, 3, seed + 1000), "w");
    auto p = hyper_product(a, b);
    auto sa = stats(a), sb = stats(b), sp = stats(p);
    for (const auto& x : a.vertices()) {
      for (const auto& u : b.vertices()) {
        // Brute force: count product hyperedges containing (x,u).
        std::vector<VertexId> parts{x, u};
        auto name = render_tuple(parts);
        std::size_t count = 0;
        for (const auto& e : p.hyperedges()) count += std::binary_search(e.begin(), e.end(), name);
        EXPECT_EQ(count, sa.degree.at(x) + sb.degree.at(u));
        EXPECT_EQ(sp.degree.at(name), count);
      }
    }
  }
}

TEST(Connectivity, SimpleCases) {
  EXPECT_TRUE(is_connected(hg({{"a", "b"}, {"b", "c"}})));
  EXPECT_FALSE(is_connected(hg({{"a", "b"}, {"c", "d"}})));
}

TEST(Connectivity, ProductsOfConnectedAreConnected) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto a = random_conformal_hypergraph(2 + seed % 4, 0.4, seed);
    auto b = testing::rename_with_prefix(random_conformal_hypergraph(2 + seed % 3, 0.6, seed + 7), "w");
    EXPECT_TRUE(is_connected(hyper_product(a, b)));
  }
}

TEST(Invariants, ValidHypergraphsCoverAndAreSimple) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto h = random_hypergraph(5 + seed % 6, 3 + seed % 7, 4, seed);
    std::set<VertexId> covered;
    for (const auto& e : h.hyperedges()) {
      EXPECT_GE(e.size(), 2u);
      covered.insert(e.begin(), e.end());
      for (const auto& f : h.hyperedges()) {
        if (e != f) EXPECT_FALSE(std::includes(f.begin(), f.end(), e.begin(), e.end()));
      }
    }
    EXPECT_EQ(std::vector<VertexId>(covered.begin(), covered.end()), h.vertices());
  }
}

TEST(Tuples, RenderFlattensNestedComponents) {
  std::vector<VertexId> inner{"a", "b"};
  std::vector<VertexId> outer{render_tuple(inner), "c"};
  EXPECT_EQ(render_tuple(outer), "(a,b,c)");
  EXPECT_EQ(tuple_parts("(a,b,c)"), (std::vector<VertexId>{"a", "b", "c"}));
  EXPECT_EQ(tuple_parts("a"), (std::vector<VertexId>{"a"}));
}

}  // namespace
}  // namespace hypercart
