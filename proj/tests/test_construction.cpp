#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "flatband/construction.hpp"
#include "flatband/generators.hpp"

#include "oracles.hpp"

using namespace flatband;

namespace {

// Postcondition check backed by the independent enumeration: both subgraphs
// appear in the full degree-2 list, cover every degree-d vertex, and split on
// the distinguished vertex.
void check_pair(const Multigraph& g, int v, int d, const Degree2Pair& pair) {
  std::vector<std::vector<int>> all;
  for (const auto& s : enumerate_degree2_subgraphs(g)) all.push_back(s.sorted_edge_ids());
  std::sort(all.begin(), all.end());
  for (const Degree2Subgraph* s : {&pair.with_v, &pair.without_v})
    CHECK(std::binary_search(all.begin(), all.end(), s->sorted_edge_ids()));
  for (int x = 0; x < g.vertex_count(); ++x)
    if (g.degree(x) == d) {
      CHECK(pair.with_v.covered.contains(x));
      CHECK(pair.without_v.covered.contains(x));
    }
  CHECK(pair.with_v.covered.contains(v));
  CHECK_FALSE(pair.without_v.covered.contains(v));
}

}  // namespace

TEST_CASE("deficit 2-factor hypotheses are checked", "[construction]") {
  // C5 with d=3 has deficit 5 > 2
  CHECK_THROWS_WITH(two_factor_with_deficit(named_fixture("c_n(5)").first, 3),
                    Catch::Matchers::ContainsSubstring("deficit"));
  CHECK_THROWS_WITH(two_factor_with_deficit(named_fixture("k4").first, 4),
                    Catch::Matchers::ContainsSubstring("odd"));
  Multigraph path(2, {{0, 1}});
  CHECK_THROWS_WITH(two_factor_with_deficit(path, 3),
                    Catch::Matchers::ContainsSubstring("bridge-less"));
  Multigraph two_parts(4, {{0, 1}, {0, 1}, {2, 3}, {2, 3}});
  CHECK_THROWS_WITH(two_factor_with_deficit(two_parts, 3),
                    Catch::Matchers::ContainsSubstring("connected"));
}

TEST_CASE("deficit 2-factor on zero-deficit and small-deficit graphs", "[construction]") {
  const auto k4 = named_fixture("k4").first;
  const Degree2Subgraph tf = two_factor_with_deficit(k4, 3);
  CHECK(tf.spans(k4));

  // K4 minus one edge: deficit 2 <= 2, bridgeless; the spanning 4-cycle
  Multigraph k4m(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const Degree2Subgraph tf2 = two_factor_with_deficit(k4m, 3);
  CHECK(tf2.spans(k4m));
  REQUIRE(tf2.components.size() == 1);
  CHECK(tf2.components[0].edges.size() == 4);

  const auto theta = named_fixture("theta").first;
  CHECK(two_factor_with_deficit(theta, 3).spans(theta));
}

TEST_CASE("regular multigraphs with few bridges admit 2-factors", "[construction]") {
  // the guarantee behind the deficit construction, exercised as a search
  SplitMix64 rng(61);
  for (int d : {3, 4, 5}) {
    for (int rep = 0; rep < 12; ++rep) {
      const int n = (d % 2 == 0) ? 3 + static_cast<int>(rng.next_below(4))
                                 : 2 * (2 + static_cast<int>(rng.next_below(2)));
      const Multigraph g = random_regular_multigraph(n, d, rng.next());
      if (static_cast<int>(find_bridges(g).size()) > d - 1) continue;
      const auto tf = find_2factor(g);
      REQUIRE(tf.has_value());
      CHECK(tf->spans(g));
    }
  }
}

TEST_CASE("typeII pair preconditions", "[construction]") {
  const auto theta = named_fixture("theta").first;
  // theta is 3-regular: I is empty, so no vertex qualifies
  CHECK_THROWS_WITH(typeII_degree2_pair(theta, 0, 3),
                    Catch::Matchers::ContainsSubstring("degree smaller than d"));
  const auto house = named_fixture("house_like").first;
  CHECK_THROWS_WITH(typeII_degree2_pair(house, 0, 3),
                    Catch::Matchers::ContainsSubstring("degree smaller than d"));
  CHECK_THROWS_WITH(typeII_degree2_pair(house, 1, 5),
                    Catch::Matchers::ContainsSubstring("maximum degree"));
}

TEST_CASE("typeII pair on the worked K4-minus-edge example", "[construction]") {
  // vertices a,b,c,d' = 0,1,2,3 with the edge {2,3} missing; v = 2
  Multigraph g(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const Degree2Pair pair = typeII_degree2_pair(g, 2, 3);
  check_pair(g, 2, 3, pair);
  // with_v spans all four vertices, without_v is a triangle on {0,1,3}
  CHECK(pair.with_v.covered.count() == 4);
  CHECK(pair.without_v.covered.count() == 3);
  CHECK_FALSE(pair.without_v.covered.contains(2));
}

TEST_CASE("typeII pair base case: a single deficient vertex", "[construction]") {
  // house with the roof doubled: degrees (3,2,2,3,4)? build one with |I| = 1:
  // triangle with one doubled edge has degrees (3,3,2)
  Multigraph g(3, {{0, 1}, {0, 1}, {0, 2}, {1, 2}});
  const Degree2Pair pair = typeII_degree2_pair(g, 2, 3);
  check_pair(g, 2, 3, pair);
  CHECK(pair.with_v.spans(g));  // base case with_v is a full 2-factor
}

TEST_CASE("typeII pair on the house graph", "[construction]") {
  const auto house = named_fixture("house_like").first;
  for (int v : {1, 2, 4}) {
    const Degree2Pair pair = typeII_degree2_pair(house, v, 3);
    check_pair(house, v, 3, pair);
  }
}

TEST_CASE("typeII pair on random bridge-less instances", "[construction]") {
  SplitMix64 rng(62);
  for (int d : {3, 5}) {
    for (int rep = 0; rep < 25; ++rep) {
      const Multigraph g = testing::random_typeII_instance(rng, d);
      std::vector<int> deficient;
      for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) < d) deficient.push_back(v);
      REQUIRE_FALSE(deficient.empty());
      const int v = deficient[rng.next_below(deficient.size())];
      const Degree2Pair pair = typeII_degree2_pair(g, v, d);
      check_pair(g, v, d, pair);
    }
  }
}
