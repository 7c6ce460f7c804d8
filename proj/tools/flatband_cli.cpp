// Command-line front end: parse graph JSON, run analyses, emit canonical
// JSON/CSV reports with stable exit codes (0 ok / 10 finding / 2 input error).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatband/bgvm.hpp"
#include "flatband/construction.hpp"
#include "flatband/flatband.hpp"
#include "flatband/floquet.hpp"
#include "flatband/generators.hpp"
#include "flatband/json_io.hpp"

namespace {

using namespace flatband;

constexpr int kExitOk = 0;
constexpr int kExitFinding = 10;
constexpr int kExitInputError = 2;

std::pair<Multigraph, SchrodingerWeights> load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("graph file is not valid JSON: ") + e.what());
  }
  return graph_from_json(j);
}

// Reports are built fully, then written once.
void emit(const Json& j) { std::fputs(to_canonical_string(j).c_str(), stdout); }

int run_flatbands(const std::string& path, int threads) {
  auto [g, w] = load_graph(path);
  const FlatBandReport report = flatband_polynomial(g, w, threads);
  emit(flatband_report_to_json(report));
  return report.has_flat_bands() ? kExitFinding : kExitOk;
}

int run_matchpoly(const std::string& path, const std::string& delete_list) {
  auto [g, w] = load_graph(path);
  VertexSet to_delete;
  if (!delete_list.empty()) {
    std::stringstream ss(delete_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const int v = std::stoi(item);
      if (v < 0 || v >= g.vertex_count())
        throw std::invalid_argument("--delete vertex out of range: " + item);
      to_delete.add(v);
    }
  }
  const InducedSubgraph rest = delete_vertices(g, to_delete);
  emit(polynomial_to_json(matching_poly(rest.graph, w.restrict_to(rest))));
  return kExitOk;
}

int run_deg2(const std::string& path, bool list) {
  auto [g, w] = load_graph(path);
  (void)w;
  const auto subgraphs = enumerate_degree2_subgraphs(g);
  if (!list) {
    emit(Json{{"count", subgraphs.size()}});
    return kExitOk;
  }
  Json arr = Json::array();
  for (const auto& s : subgraphs) arr.push_back(degree2_to_json(s));
  emit(Json{{"count", subgraphs.size()}, {"subgraphs", std::move(arr)}});
  return kExitOk;
}

int run_decompose(const std::string& path) {
  auto [g, w] = load_graph(path);
  (void)w;
  emit(decomposition_to_json(bridge_block_decomposition(g)));
  return kExitOk;
}

int run_floquet(const std::string& path, int samples, std::uint64_t seed,
                const std::string& check_lambda, int threads) {
  (void)threads;
  auto [g, w] = load_graph(path);
  std::optional<Rational> lambda;
  if (!check_lambda.empty()) lambda = parse_rational(check_lambda);

  const auto angle_rows = sample_torus_angles(g.edge_count(), samples, seed);
  std::ostringstream out;
  out.setf(std::ios::scientific);
  out.precision(17);
  for (int e = 0; e < g.edge_count(); ++e) out << (e ? "," : "") << "theta_" << (e + 1);
  for (int i = 0; i < g.vertex_count(); ++i)
    out << (g.edge_count() || i ? "," : "") << "eig_" << (i + 1);
  if (lambda) out << ",min_dist";
  out << "\n";
  for (const auto& row : angle_rows) {
    const auto eig = hermitian_eigenvalues(floquet_matrix(g, w, angles_to_z(row)));
    bool first = true;
    for (double theta : row) {
      out << (first ? "" : ",") << theta;
      first = false;
    }
    for (double e : eig) {
      out << (first ? "" : ",") << e;
      first = false;
    }
    if (lambda) {
      const double target = lambda->convert_to<double>();
      double best = std::numeric_limits<double>::infinity();
      for (double e : eig) best = std::min(best, std::abs(e - target));
      out << "," << best;
    }
    out << "\n";
  }
  std::fputs(out.str().c_str(), stdout);
  return kExitOk;
}

int run_bgvm(const std::string& path, const std::string& lambda_text, bool all, int max_size) {
  auto [g, w] = load_graph(path);
  if (all == !lambda_text.empty())
    throw std::invalid_argument("bgvm needs exactly one of --lambda or --all");
  if (!lambda_text.empty()) {
    const Rational lambda = parse_rational(lambda_text);
    const BgvmResult res = bgvm_holds(g, w, lambda, max_size);
    Json j{{"lambda", rational_to_string(lambda)},
           {"exhaustive", res.exhaustive},
           {"size_cap", res.size_cap},
           {"found", res.certificate.has_value()}};
    if (res.certificate) j["certificate"] = certificate_to_json(*res.certificate);
    emit(j);
    return res.certificate ? kExitFinding : kExitOk;
  }
  const BgvmCandidates cands = bgvm_candidate_lambdas(g, w, max_size);
  Json arr = Json::array();
  for (const auto& [poly, cert] : cands.candidates)
    arr.push_back(Json{{"lambda_poly", polynomial_to_json(poly)},
                       {"certificate", certificate_to_json(cert)}});
  emit(Json{{"exhaustive", cands.exhaustive},
            {"size_cap", cands.size_cap},
            {"candidates", std::move(arr)}});
  return cands.candidates.empty() ? kExitOk : kExitFinding;
}

int run_verify(const std::string& path, const std::string& identity) {
  auto [g, w] = load_graph(path);
  bool pass = false;
  if (identity == "recursion")
    pass = verify_recursion_identity(g, w);
  else if (identity == "charpoly")
    pass = verify_charpoly_expansion(g, w);
  else if (identity == "moebius")
    pass = verify_moebius_identity(g, w);
  else if (identity == "prop_a2")
    pass = check_prop_A2(g, w);
  else if (identity == "heilmann_lieb")
    pass = heilmann_lieb_check(g);
  else
    throw std::invalid_argument("unknown identity: " + identity);
  emit(Json{{"identity", identity}, {"pass", pass}});
  return pass ? kExitOk : kExitFinding;
}

int run_compare(const std::string& path, int max_size) {
  auto [g, w] = load_graph(path);
  const AbUniComparison cmp = compare_ab_vs_uni(g, w, max_size);
  const char* verdict = cmp.verdict == AbUniVerdict::Agree              ? "agree"
                        : cmp.verdict == AbUniVerdict::AbStrictlyLarger ? "ab_strictly_larger"
                                                                        : "inconclusive";
  Json j{{"verdict", verdict},
         {"flatband_gcd", cmp.flatband_gcd.to_string()},
         {"certificates", cmp.certificate_count}};
  if (cmp.verdict != AbUniVerdict::Agree) j["uncovered"] = polynomial_to_json(cmp.uncovered);
  emit(j);
  return kExitOk;
}

int run_gen(const std::string& spec_path, const std::string& out_dir) {
  std::ifstream in(spec_path);
  if (!in) throw std::invalid_argument("cannot open corpus spec: " + spec_path);
  Json spec;
  try {
    in >> spec;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("corpus spec is not valid JSON: ") + e.what());
  }
  const std::string kind = spec.at("kind").get<std::string>();
  const std::uint64_t seed = spec.value("seed", 0ULL);
  const int count = spec.value("count", 1);

  std::filesystem::create_directories(out_dir);
  std::vector<std::string> files;
  auto write_graph = [&](int index, const Multigraph& g, const SchrodingerWeights& w) {
    char name[32];
    std::snprintf(name, sizeof(name), "graph_%03d.json", index);
    std::ofstream out(std::filesystem::path(out_dir) / name);
    out << to_canonical_string(graph_to_json(g, w));
    files.emplace_back(name);
  };

  if (kind == "named") {
    const auto [g, w] = named_fixture(spec.at("name").get<std::string>());
    write_graph(0, g, w);
  } else if (kind == "random_regular") {
    for (int i = 0; i < count; ++i) {
      const Multigraph g = random_regular_multigraph(
          spec.at("n").get<int>(), spec.at("d").get<int>(), seed + static_cast<std::uint64_t>(i),
          spec.value("allow_loops", true), spec.value("allow_multi", true));
      write_graph(i, g, SchrodingerWeights::adjacency(g));
    }
  } else if (kind == "random_multigraph") {
    for (int i = 0; i < count; ++i) {
      const Multigraph g = random_multigraph(spec.at("n").get<int>(), spec.at("m").get<int>(),
                                             seed + static_cast<std::uint64_t>(i));
      write_graph(i, g, SchrodingerWeights::adjacency(g));
    }
  } else if (kind == "exhaustive_simple") {
    int i = 0;
    for_each_connected_simple_graph(spec.at("n").get<int>(), [&](const Multigraph& g) {
      write_graph(i++, g, SchrodingerWeights::adjacency(g));
    });
  } else {
    throw std::invalid_argument("unknown corpus kind: " + kind);
  }

  Json manifest{{"spec", spec}, {"files", files}};
  std::ofstream mf(std::filesystem::path(out_dir) / "manifest.json");
  mf << to_canonical_string(manifest);
  emit(Json{{"written", files.size()}, {"dir", out_dir}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact flat-band analysis of maximal abelian covers of finite multigraphs"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "cap on internal parallelism")->capture_default_str();

  std::string graph_path, delete_list, check_lambda, lambda_text, identity, spec_path, out_dir;
  int samples = 100, max_size = -1;
  std::uint64_t seed = 0;
  bool deg2_list = false, deg2_count = false, bgvm_all = false;

  auto* cmd_flat = app.add_subcommand("flatbands", "flat-band polynomial, roots and witnesses");
  cmd_flat->add_option("graph", graph_path)->required();

  auto* cmd_match = app.add_subcommand("matchpoly", "generalized matching polynomial");
  cmd_match->add_option("graph", graph_path)->required();
  cmd_match->add_option("--delete", delete_list, "comma-separated vertices to delete first");

  auto* cmd_deg2 = app.add_subcommand("deg2", "degree-2 subgraph enumeration");
  cmd_deg2->add_option("graph", graph_path)->required();
  cmd_deg2->add_flag("--list", deg2_list, "list the subgraphs");
  cmd_deg2->add_flag("--count", deg2_count, "count only (default)");

  auto* cmd_dec = app.add_subcommand("decompose", "bridges and bridge-blocks");
  cmd_dec->add_option("graph", graph_path)->required();

  auto* cmd_flo = app.add_subcommand("floquet", "torus samples of the Bloch fiber, CSV");
  cmd_flo->add_option("graph", graph_path)->required();
  cmd_flo->add_option("--samples", samples)->capture_default_str();
  cmd_flo->add_option("--seed", seed)->capture_default_str();
  cmd_flo->add_option("--check-lambda", check_lambda, "append min |eig - lambda| per sample");

  auto* cmd_bgvm = app.add_subcommand("bgvm", "universal-cover eigenvalue certificates");
  cmd_bgvm->add_option("graph", graph_path)->required();
  cmd_bgvm->add_option("--lambda", lambda_text, "test one rational eigenvalue");
  cmd_bgvm->add_flag("--all", bgvm_all, "emit all candidate polynomials");
  cmd_bgvm->add_option("--max-size", max_size, "subset size cap");

  auto* cmd_ver = app.add_subcommand("verify", "exact identity checks");
  cmd_ver->add_option("graph", graph_path)->required();
  cmd_ver->add_option("--identity", identity,
                      "recursion|charpoly|moebius|prop_a2|heilmann_lieb")
      ->required();

  auto* cmd_gen = app.add_subcommand("gen", "write a graph corpus from a spec");
  cmd_gen->add_option("--spec", spec_path)->required();
  cmd_gen->add_option("--out", out_dir)->required();

  auto* cmd_cmp = app.add_subcommand("compare", "flat bands vs universal-cover eigenvalues");
  cmd_cmp->add_option("graph", graph_path)->required();
  cmd_cmp->add_option("--max-size", max_size, "subset size cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fputs(flatband::to_canonical_string(Json{{"error", e.what()}}).c_str(), stdout);
    return kExitInputError;
  }

  try {
    if (cmd_flat->parsed()) return run_flatbands(graph_path, threads);
    if (cmd_match->parsed()) return run_matchpoly(graph_path, delete_list);
    if (cmd_deg2->parsed()) return run_deg2(graph_path, deg2_list && !deg2_count);
    if (cmd_dec->parsed()) return run_decompose(graph_path);
    if (cmd_flo->parsed()) return run_floquet(graph_path, samples, seed, check_lambda, threads);
    if (cmd_bgvm->parsed()) return run_bgvm(graph_path, lambda_text, bgvm_all, max_size);
    if (cmd_ver->parsed()) return run_verify(graph_path, identity);
    if (cmd_gen->parsed()) return run_gen(spec_path, out_dir);
    if (cmd_cmp->parsed()) return run_compare(graph_path, max_size);
  } catch (const std::exception& e) {
    std::fputs(flatband::to_canonical_string(Json{{"error", e.what()}}).c_str(), stdout);
    return kExitInputError;
  }
  return kExitInputError;
}
