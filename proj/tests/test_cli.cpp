#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "flatband/generators.hpp"
#include "flatband/json_io.hpp"

using namespace flatband;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "flatband_cli_out.txt";
  const std::string cmd = std::string(FLATBAND_CLI_PATH) + " " + args + " > " + out.string();
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(status), ss.str()};
}

fs::path write_fixture(const std::string& name) {
  const auto [g, w] = named_fixture(name);
  fs::path dir = fs::temp_directory_path() / "flatband_cli_fixtures";
  fs::create_directories(dir);
  std::string file = name;
  for (char& c : file)
    if (c == '(' || c == ')') c = '_';
  const fs::path path = dir / (file + ".json");
  std::ofstream out(path);
  out << to_canonical_string(graph_to_json(g, w));
  return path;
}

}  // namespace

TEST_CASE("flatbands exit codes and report bodies", "[cli]") {
  const auto lieb = write_fixture("lieb");
  const RunResult flat = run_cli("flatbands " + lieb.string());
  CHECK(flat.exit_code == 10);
  const Json report = Json::parse(flat.output);
  CHECK(report.at("gcd") == "x");
  REQUIRE(report.at("rational_roots").size() == 1);
  CHECK(report.at("rational_roots")[0].at("root") == "0");

  const auto theta = write_fixture("theta");
  const RunResult none = run_cli("flatbands " + theta.string());
  CHECK(none.exit_code == 0);
  CHECK(Json::parse(none.output).at("gcd") == "1");
}

TEST_CASE("reports are deterministic across runs", "[cli]") {
  const auto lieb = write_fixture("lieb");
  const RunResult a = run_cli("flatbands " + lieb.string());
  const RunResult b = run_cli("flatbands " + lieb.string());
  CHECK(a.output == b.output);
}

TEST_CASE("matchpoly with and without deletions", "[cli]") {
  const auto lieb = write_fixture("lieb");
  const RunResult all = run_cli("matchpoly " + lieb.string());
  CHECK(all.exit_code == 0);
  CHECK(Json::parse(all.output).at("coeffs") == Json::array({"0", "-4", "0", "1"}));
  const RunResult del = run_cli("matchpoly " + lieb.string() + " --delete 0,1");
  CHECK(Json::parse(del.output).at("coeffs") == Json::array({"0", "1"}));
}

TEST_CASE("deg2, decompose, verify subcommands", "[cli]") {
  const auto k4 = write_fixture("k4");
  CHECK(Json::parse(run_cli("deg2 " + k4.string()).output).at("count") == 8);
  const Json listed = Json::parse(run_cli("deg2 " + k4.string() + " --list").output);
  CHECK(listed.at("subgraphs").size() == 8);
  CHECK(listed.at("subgraphs")[0].at("components").empty());

  const Json dec = Json::parse(run_cli("decompose " + k4.string()).output);
  CHECK(dec.at("bridges").empty());
  CHECK(dec.at("blocks").size() == 1);
  CHECK(dec.at("tree_edges").empty());

  for (const char* identity : {"recursion", "charpoly", "moebius", "prop_a2", "heilmann_lieb"}) {
    const RunResult v = run_cli("verify " + k4.string() + " --identity " + identity);
    CHECK(v.exit_code == 0);
    CHECK(Json::parse(v.output).at("pass") == true);
  }
}

TEST_CASE("floquet CSV shape", "[cli]") {
  const auto lieb = write_fixture("lieb");
  const RunResult csv =
      run_cli("floquet " + lieb.string() + " --samples 5 --seed 9 --check-lambda 0");
  CHECK(csv.exit_code == 0);
  std::stringstream ss(csv.output);
  std::string line;
  int rows = 0;
  std::getline(ss, line);
  CHECK(line == "theta_1,theta_2,theta_3,theta_4,eig_1,eig_2,eig_3,min_dist");
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    ++rows;
    const std::size_t commas = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    CHECK(commas == 7);
    // flat band at 0: min_dist column is tiny in every row
    const double last = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(last <= 1e-9);
  }
  CHECK(rows == 5);
}

TEST_CASE("bgvm subcommand", "[cli]") {
  const auto k13 = write_fixture("k1_3");
  const RunResult at0 = run_cli("bgvm " + k13.string() + " --lambda 0");
  CHECK(at0.exit_code == 10);
  const Json j = Json::parse(at0.output);
  CHECK(j.at("found") == true);
  CHECK(j.at("certificate").at("boundary").size() == 1);

  const RunResult all = run_cli("bgvm " + k13.string() + " --all");
  CHECK(all.exit_code == 10);
  CHECK(Json::parse(all.output).at("candidates").size() >= 1);

  const RunResult neither = run_cli("bgvm " + k13.string());
  CHECK(neither.exit_code == 2);

  const auto tri = write_fixture("c_n(3)");
  CHECK(run_cli("bgvm " + tri.string() + " --lambda 2").exit_code == 0);
}

TEST_CASE("compare subcommand", "[cli]") {
  const auto lieb = write_fixture("lieb");
  const Json j = Json::parse(run_cli("compare " + lieb.string()).output);
  CHECK(j.at("verdict") == "agree");
}

TEST_CASE("gen writes a corpus with manifest", "[cli]") {
  const fs::path dir = fs::temp_directory_path() / "flatband_cli_gen";
  fs::remove_all(dir);
  const fs::path spec = fs::temp_directory_path() / "corpus_spec.json";
  {
    std::ofstream out(spec);
    out << R"({"kind":"random_regular","n":6,"d":3,"seed":5,"count":3})";
  }
  const RunResult gen = run_cli("gen --spec " + spec.string() + " --out " + dir.string());
  CHECK(gen.exit_code == 0);
  CHECK(fs::exists(dir / "manifest.json"));
  int count = 0;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().filename().string().rfind("graph_", 0) == 0) ++count;
  CHECK(count == 3);
  // graphs parse and are 3-regular
  std::ifstream in(dir / "graph_000.json");
  Json gj;
  in >> gj;
  auto [g, w] = graph_from_json(gj);
  CHECK(g.is_regular() == 3);

  // determinism: regenerate into a second directory, byte-identical files
  const fs::path dir2 = fs::temp_directory_path() / "flatband_cli_gen2";
  fs::remove_all(dir2);
  run_cli("gen --spec " + spec.string() + " --out " + dir2.string());
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream a(entry.path()), b(dir2 / entry.path().filename());
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
  }
}

TEST_CASE("input errors exit 2 with distinct machine-readable messages", "[cli]") {
  const fs::path dir = fs::temp_directory_path() / "flatband_cli_fixtures";
  fs::create_directories(dir);

  SECTION("missing file") {
    const RunResult r = run_cli("flatbands /does/not/exist.json");
    CHECK(r.exit_code == 2);
    CHECK(Json::parse(r.output).contains("error"));
  }
  SECTION("malformed rational") {
    const fs::path bad = dir / "bad_rational.json";
    std::ofstream(bad) << R"({"vertices":[{"id":0,"potential":"x"}],"edges":[]})";
    const RunResult r = run_cli("flatbands " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(Json::parse(r.output).at("error").get<std::string>().find("malformed rational") !=
          std::string::npos);
  }
  SECTION("zero weight") {
    const fs::path bad = dir / "bad_weight.json";
    std::ofstream(bad)
        << R"({"vertices":[{"id":0},{"id":1}],"edges":[{"id":0,"u":0,"v":1,"w_re":"0","w_im":"0"}]})";
    const RunResult r = run_cli("flatbands " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(Json::parse(r.output).at("error").get<std::string>().find("nonzero") !=
          std::string::npos);
  }
  SECTION("disconnected flatbands input") {
    const fs::path bad = dir / "disconnected.json";
    std::ofstream(bad)
        << R"({"vertices":[{"id":0},{"id":1},{"id":2},{"id":3}],)"
        << R"("edges":[{"id":0,"u":0,"v":1},{"id":1,"u":0,"v":1},{"id":2,"u":2,"v":3},{"id":3,"u":2,"v":3}]})";
    const RunResult r = run_cli("flatbands " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(Json::parse(r.output).at("error").get<std::string>().find("connected") !=
          std::string::npos);
  }
}
