#include <catch2/catch_amalgamated.hpp>

#include "flatband/matrix.hpp"
#include "flatband/multigraph.hpp"
#include "flatband/rng.hpp"

#include "oracles.hpp"

using namespace flatband;

TEST_CASE("degrees count self-loops twice", "[graph-core]") {
  Multigraph bouquet(1, {{0, 0}, {0, 0}});
  CHECK(bouquet.degree(0) == 4);
  CHECK(bouquet.is_regular() == 4);

  Multigraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(star.degree(0) == 3);
  CHECK(star.degree(1) == 1);
  CHECK_FALSE(star.is_regular().has_value());

  Multigraph theta(2, {{0, 1}, {0, 1}, {0, 1}});
  CHECK(theta.degree(0) == 3);
  CHECK(theta.degree(1) == 3);
  CHECK(theta.is_regular() == 3);
}

TEST_CASE("handshake identity on random multigraphs", "[graph-core]") {
  SplitMix64 rng(11);
  for (int rep = 0; rep < 100; ++rep) {
    const auto wg = testing::random_weighted_multigraph(rng, 8, 16);
    long total = 0;
    for (int v = 0; v < wg.graph.vertex_count(); ++v) total += wg.graph.degree(v);
    CHECK(total == 2L * wg.graph.edge_count());
  }
}

TEST_CASE("adjacency index rebuilds identically", "[graph-core]") {
  SplitMix64 rng(12);
  for (int rep = 0; rep < 50; ++rep) {
    const auto wg = testing::random_weighted_multigraph(rng, 7, 12);
    const auto rebuilt =
        Multigraph::build_adjacency(wg.graph.vertex_count(), wg.graph.edges());
    for (int v = 0; v < wg.graph.vertex_count(); ++v) CHECK(rebuilt[v] == wg.graph.adjacency(v));
  }
}

TEST_CASE("induced subgraph keeps exactly the interior edges", "[graph-core]") {
  Multigraph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
  VertexSet s;
  s.add(0);
  s.add(1);
  const InducedSubgraph sub = induced_subgraph(triangle, s);
  CHECK(sub.graph.vertex_count() == 2);
  CHECK(sub.graph.edge_count() == 1);
  CHECK(sub.edge_map == std::vector<int>{0});

  const InducedSubgraph all = induced_subgraph(triangle, triangle.vertex_set());
  CHECK(all.graph.edge_count() == 3);
  CHECK(all.vertex_map == std::vector<int>{0, 1, 2});

  Multigraph path(3, {{0, 1}, {1, 2}});
  VertexSet ends;
  ends.add(0);
  ends.add(2);
  const InducedSubgraph gap = induced_subgraph(path, ends);
  CHECK(gap.graph.vertex_count() == 2);
  CHECK(gap.graph.edge_count() == 0);
}

TEST_CASE("delete_vertices equals induced on the complement", "[graph-core]") {
  Multigraph path(3, {{0, 1}, {1, 2}});
  const InducedSubgraph no_mid = delete_vertices(path, VertexSet::single(1));
  CHECK(no_mid.graph.vertex_count() == 2);
  CHECK(no_mid.graph.edge_count() == 0);

  const InducedSubgraph untouched = delete_vertices(path, VertexSet{});
  CHECK(untouched.graph.edge_count() == 2);

  Multigraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const InducedSubgraph tri = delete_vertices(k4, VertexSet::single(0));
  CHECK(tri.graph.vertex_count() == 3);
  CHECK(tri.graph.edge_count() == 3);
}

TEST_CASE("nested induced subgraphs compose", "[graph-core]") {
  SplitMix64 rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    const auto wg = testing::random_weighted_multigraph(rng, 8, 14);
    const int n = wg.graph.vertex_count();
    VertexSet a, b;
    for (int v = 0; v < n; ++v) {
      if (rng.next_below(2)) a.add(v);
      if (rng.next_below(2)) b.add(v);
    }
    const InducedSubgraph direct = induced_subgraph(wg.graph, a.intersect(b));
    const InducedSubgraph outer = induced_subgraph(wg.graph, a);
    // b expressed in outer's vertex numbering
    VertexSet b_in_outer;
    for (std::size_t i = 0; i < outer.vertex_map.size(); ++i)
      if (b.contains(outer.vertex_map[i])) b_in_outer.add(static_cast<int>(i));
    const InducedSubgraph nested = induced_subgraph(outer.graph, b_in_outer);
    CHECK(nested.graph.vertex_count() == direct.graph.vertex_count());
    REQUIRE(nested.graph.edge_count() == direct.graph.edge_count());
    // Same original edges survive.
    std::vector<int> nested_orig;
    for (int id : nested.edge_map) nested_orig.push_back(outer.edge_map[id]);
    CHECK(nested_orig == direct.edge_map);
  }
}

TEST_CASE("hamiltonian matrix matches the defining sums", "[graph-core]") {
  SECTION("single edge, unit weight") {
    Multigraph g(2, {{0, 1}});
    const GaussianMatrix h = hamiltonian_matrix(g, SchrodingerWeights::adjacency(g));
    CHECK(h.at(0, 0) == GaussianRational(0));
    CHECK(h.at(0, 1) == GaussianRational(1));
    CHECK(h.at(1, 0) == GaussianRational(1));
  }
  SECTION("parallel edges add") {
    Multigraph g(2, {{0, 1}, {0, 1}});
    const GaussianRational w1(Rational(1), Rational(2));
    const GaussianRational w2(Rational(-3), Rational(1, 2));
    SchrodingerWeights w({w1, w2}, {Rational(0), Rational(0)});
    const GaussianMatrix h = hamiltonian_matrix(g, w);
    CHECK(h.at(0, 1) == w1 + w2);
    CHECK(h.at(1, 0) == (w1 + w2).conj());
  }
  SECTION("purely imaginary loop weight cancels on the diagonal") {
    Multigraph g(1, {{0, 0}});
    SchrodingerWeights w({GaussianRational(Rational(0), Rational(1))}, {Rational(0)});
    const GaussianMatrix h = hamiltonian_matrix(g, w);
    CHECK(h.at(0, 0) == GaussianRational(0));
  }
  SECTION("missing weights are a configuration error") {
    Multigraph g(2, {{0, 1}});
    SchrodingerWeights w({}, {});
    CHECK_THROWS_AS(hamiltonian_matrix(g, w), std::invalid_argument);
  }
}

TEST_CASE("hamiltonian matrix is exactly Hermitian on random weights", "[graph-core]") {
  SplitMix64 rng(14);
  for (int rep = 0; rep < 100; ++rep) {
    const auto wg = testing::random_weighted_multigraph(rng, 7, 12);
    CHECK(hamiltonian_matrix(wg.graph, wg.weights).is_hermitian());
  }
}

TEST_CASE("zero edge weights are rejected", "[graph-core]") {
  CHECK_THROWS_AS(SchrodingerWeights({GaussianRational(0)}, {Rational(0), Rational(0)}),
                  std::invalid_argument);
}
