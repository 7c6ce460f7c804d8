// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and budgets are pinned here, not configurable.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "flatband/bgvm.hpp"
#include "flatband/construction.hpp"
#include "flatband/flatband.hpp"
#include "flatband/floquet.hpp"
#include "flatband/generators.hpp"
#include "flatband/json_io.hpp"

#include "oracles.hpp"

using namespace flatband;

namespace {

struct Criterion {
  int number;
  std::string label;
  std::function<bool(std::string&)> run;
  double budget_seconds;
};

bool all_fixture_names(std::vector<std::string>& out) {
  out = {"lieb", "theta",      "k4",   "k33",        "petersen",
         "k1_3", "zd_bouquet(1)", "zd_bouquet(2)", "c_n(4)", "c_n(5)", "house_like"};
  return true;
}

// ---- criterion 1: Lieb flat band ------------------------------------------

bool criterion_lieb(std::string& detail) {
  const auto [g, w] = named_fixture("lieb");
  const FlatBandReport rep = flatband_polynomial(g, w);
  const bool gcd_is_x = rep.gcd_poly == RationalPolynomial({Rational(0), Rational(1)});
  const bool root_zero = rep.roots.rational_roots.size() == 1 &&
                         rep.roots.rational_roots[0].first == 0 &&
                         rep.roots.irrational_intervals.empty();
  detail = "gcd = " + rep.gcd_poly.to_string();
  return gcd_is_x && root_zero;
}

// ---- criterion 2: no flat bands for regular multigraphs --------------------

bool criterion_regular_sweep(std::string& detail) {
  int checked = 0, bridged = 0;
  // 160 configuration-model graphs over d in {3,4,5,6}, n <= 8
  for (int d : {3, 4, 5, 6}) {
    for (int i = 0; i < 40; ++i) {
      const int step = d % 2 == 1 ? 2 : 1;
      const int n_min = 2;
      const int n_count = (8 - n_min) / step + 1;
      const int n = n_min + step * (i % n_count);
      const Multigraph g =
          random_regular_multigraph(n, d, 0x20000 + 1000ULL * d + i, true, true);
      if (!theorem2_check(g, SchrodingerWeights::adjacency(g))) {
        detail = "flat band claimed on a " + std::to_string(d) + "-regular graph, seed " +
                 std::to_string(0x20000 + 1000 * d + i);
        return false;
      }
      ++checked;
    }
  }
  // 40 bridged odd-regular dumbbells (>= 20 required)
  for (int d : {3, 5}) {
    for (int i = 0; i < 20; ++i) {
      const Multigraph g = bridged_regular_multigraph(3, d, 0x30000 + 100ULL * d + i);
      if (find_bridges(g).empty()) {
        detail = "dumbbell lost its bridge";
        return false;
      }
      ++bridged;
      if (!theorem2_check(g, SchrodingerWeights::adjacency(g))) {
        detail = "flat band claimed on a bridged " + std::to_string(d) + "-regular graph";
        return false;
      }
      ++checked;
    }
  }
  detail = std::to_string(checked) + " regular multigraphs (" + std::to_string(bridged) +
           " bridged odd-regular), all constant gcd";
  return checked == 200 && bridged >= 20;
}

// ---- criterion 3: oracle equivalence ---------------------------------------

bool criterion_oracle_equivalence(std::string& detail) {
  SplitMix64 rng(0xACCE01);
  int cases = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const auto wg = testing::random_weighted_multigraph(rng, 8, 14);
    if (matching_poly(wg.graph, wg.weights) != matching_poly_enum(wg.graph, wg.weights)) {
      detail = "mismatch at random case " + std::to_string(rep);
      return false;
    }
    ++cases;
  }
  std::vector<std::string> fixtures;
  all_fixture_names(fixtures);
  for (const auto& name : fixtures) {
    const auto [g, w] = named_fixture(name);
    if (matching_poly(g, w) != matching_poly_enum(g, w)) {
      detail = "mismatch on fixture " + name;
      return false;
    }
    ++cases;
  }
  detail = std::to_string(cases) + " graphs, zero mismatches";
  return cases >= 500;
}

// ---- criterion 4: exact expansion identities --------------------------------

bool criterion_identities(std::string& detail) {
  SplitMix64 rng(0xACCE02);
  int cases = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto wg = testing::random_weighted_multigraph(rng, 6, 10);
    if (!verify_charpoly_expansion(wg.graph, wg.weights)) {
      detail = "characteristic-polynomial expansion failed at case " + std::to_string(rep);
      return false;
    }
    if (!verify_moebius_identity(wg.graph, wg.weights)) {
      detail = "Moebius identity failed at case " + std::to_string(rep);
      return false;
    }
    ++cases;
  }
  detail = std::to_string(cases) + " weighted multigraphs, both identities exact";
  return cases >= 100;
}

// ---- criterion 5: numeric torus cross-check ---------------------------------

bool criterion_floquet_numeric(std::string& detail) {
  const auto [lieb, lw] = named_fixture("lieb");
  const double flat = sample_flatband_numeric(lieb, lw, Rational(0), 200, 0xF10C);
  const auto [theta, tw] = named_fixture("theta");
  const double theta_gap = sample_flatband_numeric(theta, tw, Rational(0), 200, 0xF10C);
  const auto [b2, bw] = named_fixture("zd_bouquet(2)");
  const double bouquet_gap = sample_flatband_numeric(b2, bw, Rational(0), 200, 0xF10C);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "lieb %.2e (<=1e-9), theta %.2e, bouquet %.2e (>=1e-2)", flat,
                theta_gap, bouquet_gap);
  detail = buf;
  return flat <= 1e-9 && theta_gap >= 1e-2 && bouquet_gap >= 1e-2;
}

// ---- criterion 6: Heilmann-Lieb bound ---------------------------------------

bool criterion_heilmann_lieb(std::string& detail) {
  int checked = 0;
  SplitMix64 seeds(0xACCE06);
  const int per_d = 17;
  for (int d : {2, 3, 4}) {
    for (int i = 0; i < per_d && checked < 50; ++i) {
      int n = 0;
      if (d == 2)
        n = 3 + static_cast<int>(seeds.next_below(8));  // 3..10
      else if (d == 3) {
        n = 4 + 2 * static_cast<int>(seeds.next_below(4));  // 4,6,8,10
      } else {
        n = 5 + static_cast<int>(seeds.next_below(6));  // 5..10
        if ((n * d) % 2) ++n;
      }
      const Multigraph g = random_regular_multigraph(n, d, seeds.next(), false, false);
      if (!heilmann_lieb_check(g)) {
        detail = "root escaped the bound for d=" + std::to_string(d);
        return false;
      }
      ++checked;
    }
  }
  while (checked < 50) {
    const Multigraph g = random_regular_multigraph(8, 3, seeds.next(), false, false);
    if (!heilmann_lieb_check(g)) {
      detail = "root escaped the bound (fill-up case)";
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " simple regular graphs certified by Sturm counting";
  return checked >= 50;
}

// ---- criterion 7: universal-cover criterion implies flat bands --------------

bool criterion_prop_a2(std::string& detail) {
  long graphs = 0, with_candidates = 0;
  for (int n = 1; n <= 6; ++n) {
    bool ok = true;
    for_each_connected_simple_graph(n, [&](const Multigraph& g) {
      if (!ok) return;
      const SchrodingerWeights w = SchrodingerWeights::adjacency(g);
      const BgvmCandidates cands = bgvm_candidate_lambdas(g, w);
      ++graphs;
      if (cands.candidates.empty()) return;
      ++with_candidates;
      const FlatBandReport rep = flatband_polynomial(g, w);
      for (const auto& [poly, cert] : cands.candidates) {
        if (!rep.gcd_poly.divisible_by(poly)) {
          ok = false;
          return;
        }
        for (const auto& [root, mult] : extract_rational_roots(poly).roots) {
          (void)mult;
          if (!is_flatband(g, w, root).flat) {
            ok = false;
            return;
          }
        }
      }
    });
    if (!ok) {
      detail = "violation among connected simple graphs on " + std::to_string(n) + " vertices";
      return false;
    }
  }
  SplitMix64 rng(0xACCE07);
  int random_cases = 0;
  while (random_cases < 100) {
    const Multigraph g = random_multigraph(2 + static_cast<int>(rng.next_below(5)),
                                           2 + static_cast<int>(rng.next_below(8)), rng.next());
    if (!g.is_connected()) continue;
    ++random_cases;
    if (!check_prop_A2(g, SchrodingerWeights::adjacency(g))) {
      detail = "violation on random multigraph case " + std::to_string(random_cases);
      return false;
    }
  }
  detail = std::to_string(graphs) + " exhaustive simple graphs (" +
           std::to_string(with_candidates) + " with certificates) + " +
           std::to_string(random_cases) + " random multigraphs, zero violations";
  return true;
}

// ---- criterion 8: Type II degree-2 pair construction ------------------------

bool criterion_typeII(std::string& detail) {
  SplitMix64 rng(0xACCE08);
  int cases = 0;
  for (int d : {3, 5}) {
    for (int i = 0; i < 50; ++i) {
      const Multigraph g = testing::random_typeII_instance(rng, d);
      std::vector<int> deficient;
      for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) < d) deficient.push_back(v);
      const int v = deficient[rng.next_below(deficient.size())];
      Degree2Pair pair;
      try {
        pair = typeII_degree2_pair(g, v, d);
      } catch (const std::exception& e) {
        detail = std::string("construction failed: ") + e.what();
        return false;
      }
      // independent validation from raw degrees
      for (const Degree2Subgraph* s : {&pair.with_v, &pair.without_v}) {
        std::vector<int> deg(g.vertex_count(), 0);
        for (int id : s->sorted_edge_ids()) {
          const auto& e = g.edge(id);
          deg[e.u] += e.is_loop() ? 2 : 1;
          if (!e.is_loop()) deg[e.v] += 1;
        }
        for (int x = 0; x < g.vertex_count(); ++x) {
          if (deg[x] != 0 && deg[x] != 2) {
            detail = "output is not a degree-2 subgraph";
            return false;
          }
          if ((deg[x] == 2) != s->covered.contains(x)) {
            detail = "covered set disagrees with the edge set";
            return false;
          }
          if (g.degree(x) == d && deg[x] != 2) {
            detail = "a degree-d vertex was left uncovered";
            return false;
          }
        }
      }
      if (!pair.with_v.covered.contains(v) || pair.without_v.covered.contains(v)) {
        detail = "v-membership contract violated";
        return false;
      }
      // against the brute-force enumeration when the edge count allows it
      if (g.edge_count() <= 16) {
        const auto brute = testing::degree2_edge_sets_brute(g);
        for (const Degree2Subgraph* s : {&pair.with_v, &pair.without_v}) {
          if (!std::binary_search(brute.begin(), brute.end(), s->sorted_edge_ids())) {
            detail = "output missing from the brute-force enumeration";
            return false;
          }
        }
      }
      ++cases;
    }
  }
  detail = std::to_string(cases) + " bridge-less instances validated";
  return cases >= 100;
}

// ---- criterion 9: compact eigenfunctions ------------------------------------

bool criterion_compact_eigenfunction(std::string& detail) {
  const auto [lieb, lw] = named_fixture("lieb");
  const auto f = find_compact_eigenfunction(lieb, lw, Rational(0), 3);
  if (!f || f->support.empty()) {
    detail = "no compact eigenfunction found on the Lieb base at 0";
    return false;
  }
  // exactly zero residual everywhere: support and its neighbor ring cover
  // every vertex where the residual could be nonzero
  std::vector<PeriodicVertex> to_check;
  for (const auto& [pv, value] : f->support) {
    (void)value;
    to_check.push_back(pv);
    for (const auto& [nb, wt] : periodic_neighbors(lieb, lw, pv)) {
      (void)wt;
      to_check.push_back(nb);
    }
  }
  for (const auto& pv : to_check)
    if (!compact_eigenfunction_residual(lieb, lw, *f, pv).is_zero()) {
      detail = "nonzero residual";
      return false;
    }

  const auto [theta, tw] = named_fixture("theta");
  if (find_compact_eigenfunction(theta, tw, Rational(0), 3).has_value()) {
    detail = "spurious compact eigenfunction on theta at 0";
    return false;
  }
  detail = "lieb support " + std::to_string(f->support.size()) +
           " with exact zero residual; theta none";
  return true;
}

// ---- criterion 10: determinism and round-trips ------------------------------

bool criterion_determinism(std::string& detail) {
  // corpora: same seeds, byte-identical serialization
  for (std::uint64_t seed : {1ULL, 99ULL}) {
    for (int i = 0; i < 5; ++i) {
      const Multigraph a = random_regular_multigraph(6, 4, seed + i);
      const Multigraph b = random_regular_multigraph(6, 4, seed + i);
      if (to_canonical_string(graph_to_json(a, SchrodingerWeights::adjacency(a))) !=
          to_canonical_string(graph_to_json(b, SchrodingerWeights::adjacency(b)))) {
        detail = "corpus generation is not deterministic";
        return false;
      }
    }
  }
  // reports: byte-identical on repeat runs
  std::vector<std::string> fixtures;
  all_fixture_names(fixtures);
  for (const auto& name : fixtures) {
    const auto [g, w] = named_fixture(name);
    const std::string r1 = to_canonical_string(flatband_report_to_json(flatband_polynomial(g, w)));
    const std::string r2 = to_canonical_string(flatband_report_to_json(flatband_polynomial(g, w)));
    if (r1 != r2) {
      detail = "report bytes differ on fixture " + name;
      return false;
    }
    // lossless JSON round-trip
    const Json j = graph_to_json(g, w);
    auto [g2, w2] = graph_from_json(j);
    if (graph_to_json(g2, w2) != j) {
      detail = "graph JSON round-trip lost information on " + name;
      return false;
    }
  }
  detail = "corpora, reports and graph JSON all byte-stable";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Lieb base has the single flat band 0 (gcd = x)", criterion_lieb, 1.0},
      {2, "200 regular multigraphs have no flat bands", criterion_regular_sweep, 60.0},
      {3, "matching polynomial recursion equals enumeration (>=500 cases)",
       criterion_oracle_equivalence, 600.0},
      {4, "determinant expansion and Moebius identities exact (>=100 cases)",
       criterion_identities, 600.0},
      {5, "torus sampling separates flat from dispersive", criterion_floquet_numeric, 600.0},
      {6, "matching-polynomial roots within the regular-tree bound (50 graphs)",
       criterion_heilmann_lieb, 600.0},
      {7, "universal-cover candidates divide the flat-band gcd", criterion_prop_a2, 600.0},
      {8, "Type II degree-2 pairs validate on 100 instances", criterion_typeII, 600.0},
      {9, "compact eigenfunction: Lieb found exactly, theta none",
       criterion_compact_eigenfunction, 600.0},
      {10, "seeded corpora and reports are byte-identical; JSON round-trips",
       criterion_determinism, 600.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      ok = false;
      detail += " [over budget " + std::to_string(c.budget_seconds) + "s]";
    }
    std::printf("criterion %2d %s (%.2fs): %s%s%s\n", c.number, ok ? "PASS" : "FAIL", seconds,
                c.label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures == 0)
    std::printf("ACCEPTANCE: all %zu criteria passed\n", criteria.size());
  else
    std::printf("ACCEPTANCE: %d of %zu criteria FAILED\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
