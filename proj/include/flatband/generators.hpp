#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flatband/multigraph.hpp"
#include "flatband/rng.hpp"

namespace flatband {

// Named base graphs used throughout the test corpora, adjacency weights.
//   zd_bouquet(k): one vertex, k self-loops (cover = the k-dim integer lattice)
//   theta:         two vertices joined by three parallel edges
//   lieb:          vertices a,b,c with double edges a-b and a-c (Lieb lattice base)
//   k4, k33, petersen, k1_3, c_n(n), house_like
inline std::pair<Multigraph, SchrodingerWeights> named_fixture(const std::string& name) {
  auto make = [](int n, std::vector<std::pair<int, int>> edges) {
    Multigraph g(n, std::move(edges));
    SchrodingerWeights w = SchrodingerWeights::adjacency(g);
    return std::make_pair(std::move(g), std::move(w));
  };

  std::string base = name;
  long arg = -1;
  if (const auto open = name.find('('); open != std::string::npos) {
    if (name.back() != ')') throw std::invalid_argument("unknown fixture: " + name);
    base = name.substr(0, open);
    const std::string inner = name.substr(open + 1, name.size() - open - 2);
    try {
      arg = std::stol(inner);
    } catch (...) {
      throw std::invalid_argument("unknown fixture: " + name);
    }
  }

  if (base == "zd_bouquet") {
    if (arg < 1) throw std::invalid_argument("zd_bouquet(k) needs k >= 1");
    std::vector<std::pair<int, int>> edges(static_cast<std::size_t>(arg), {0, 0});
    return make(1, std::move(edges));
  }
  if (base == "theta") return make(2, {{0, 1}, {0, 1}, {0, 1}});
  if (base == "lieb") return make(3, {{0, 1}, {0, 1}, {0, 2}, {0, 2}});
  if (base == "k4") return make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  if (base == "k33")
    return make(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  if (base == "k1_3") return make(4, {{0, 1}, {0, 2}, {0, 3}});
  if (base == "c_n") {
    if (arg < 3) throw std::invalid_argument("c_n(n) needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < arg; ++i) edges.emplace_back(i, static_cast<int>((i + 1) % arg));
    return make(static_cast<int>(arg), std::move(edges));
  }
  if (base == "house_like")
    return make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {3, 4}});
  if (base == "petersen") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) edges.emplace_back(i, (i + 1) % 5);        // outer cycle
    for (int i = 0; i < 5; ++i) edges.emplace_back(i, i + 5);              // spokes
    for (int i = 0; i < 5; ++i) edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // pentagram
    return make(10, std::move(edges));
  }
  throw std::invalid_argument("unknown fixture: " + name);
}

namespace detail {

// One configuration-model pairing attempt: shuffle the half-edge stubs with
// the seeded stream and pair them off consecutively.
inline std::vector<std::pair<int, int>> pair_stubs(std::vector<int> stubs, SplitMix64& rng) {
  for (std::size_t i = stubs.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
    std::swap(stubs[i], stubs[j]);
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);
  return edges;
}

inline bool pairing_ok(const std::vector<std::pair<int, int>>& edges, bool allow_loops,
                       bool allow_multi) {
  if (!allow_loops)
    for (const auto& [u, v] : edges)
      if (u == v) return false;
  if (!allow_multi) {
    std::vector<std::pair<int, int>> sorted;
    sorted.reserve(edges.size());
    for (auto [u, v] : edges) sorted.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  return true;
}

}  // namespace detail

// Connected d-regular multigraph on n vertices via the configuration model
// with the specified stream; rejection handles the loop/multi options and
// connectivity. Deterministic in the seed.
inline Multigraph random_regular_multigraph(int n, int d, std::uint64_t seed,
                                            bool allow_loops = true, bool allow_multi = true,
                                            int retry_budget = 4000) {
  if (n < 1 || d < 1 || (n * d) % 2 != 0)
    throw std::invalid_argument("random_regular_multigraph: need n >= 1, d >= 1, n*d even");
  SplitMix64 rng(seed);
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * d);
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < d; ++k) stubs.push_back(v);
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    auto edges = detail::pair_stubs(stubs, rng);
    if (!detail::pairing_ok(edges, allow_loops, allow_multi)) continue;
    Multigraph g(n, std::move(edges));
    if (g.is_connected()) return g;
  }
  throw std::runtime_error("random_regular_multigraph: constraints infeasible within retry budget");
}

// Uniformly random endpoints, loops and parallels allowed; not necessarily
// connected (property suites filter as needed).
inline Multigraph random_multigraph(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 0) throw std::invalid_argument("random_multigraph: need n >= 1, m >= 0");
  SplitMix64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int i = 0; i < m; ++i) {
    const int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    const int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    edges.emplace_back(u, v);
  }
  return Multigraph(n, std::move(edges));
}

// d-regular with exactly one bridge: two random blocks, each d-regular except
// for one vertex of degree d-1, joined by the bridge. Exercises the hard
// (bridged, odd-regular) regime of the no-flat-bands sweep.
inline Multigraph bridged_regular_multigraph(int block_size, int d, std::uint64_t seed,
                                             int retry_budget = 4000) {
  if (block_size < 1 || d < 2 || (block_size * d) % 2 != 1)
    throw std::invalid_argument(
        "bridged_regular_multigraph: need block_size*d odd so one stub stays free");
  SplitMix64 rng(seed);
  std::vector<int> stubs;
  for (int v = 0; v < block_size; ++v)
    for (int k = 0; k < d; ++k) stubs.push_back(v);
  stubs.pop_back();  // vertex block_size-1 keeps degree d-1

  auto make_block = [&]() -> std::vector<std::pair<int, int>> {
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
      auto edges = detail::pair_stubs(stubs, rng);
      Multigraph g(block_size, edges);
      if (g.is_connected()) return edges;
    }
    throw std::runtime_error("bridged_regular_multigraph: block generation failed");
  };

  const auto a = make_block();
  const auto b = make_block();
  std::vector<std::pair<int, int>> edges = a;
  for (const auto& [u, v] : b) edges.emplace_back(u + block_size, v + block_size);
  edges.emplace_back(block_size - 1, 2 * block_size - 1);  // the bridge
  return Multigraph(2 * block_size, std::move(edges));
}

// Labeled simple graphs on n vertices, connected only; enumeration order is
// the subset order of the edge candidates.
template <typename Fn>
void for_each_connected_simple_graph(int n, Fn&& fn) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1) edges.push_back(pairs[i]);
    Multigraph g(n, std::move(edges));
    if (g.is_connected()) fn(g);
  }
}

}  // namespace flatband
