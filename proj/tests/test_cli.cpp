#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "rankgap/bounds.hpp"
#include "rankgap/tensor_io.hpp"

namespace fs = std::filesystem;
using rankgap::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("rankgap_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("extbinom") {
  const auto r = invoke({"extbinom", "3", "3", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "7\n");
  CHECK(invoke({"extbinom", "3", "x", "2"}).code == 2);
}

TEST_CASE("bound reports") {
  const auto a = invoke({"--format", "structured", "bound", "algebra", "--d",
                         "2", "--n", "2"});
  REQUIRE(a.code == 0);
  const auto ja = nlohmann::json::parse(a.out);
  CHECK(ja["best_lb"] == "7");

  const auto w = invoke({"bound", "wstate", "--k", "3", "--n", "3"});
  REQUIRE(w.code == 0);
  CHECK(w.out.find("blaser_lb: 15") != std::string::npos);
  CHECK(w.out.find("known exact: 16") != std::string::npos);

  const auto c = invoke({"bound", "algebra", "--d", "3", "--n", "2",
                         "--certify-border", "--format", "structured"});
  REQUIRE(c.code == 0);
  const auto jc = nlohmann::json::parse(c.out);
  CHECK(jc["border_certified"] == true);
  CHECK(jc["flattening_ranks"] == nlohmann::json::array({9, 9, 9}));
}

TEST_CASE("structured bound output round-trips") {
  for (unsigned k = 3; k <= 6; ++k) {
    for (unsigned n = 1; n <= 12; ++n) {
      const auto r = invoke({"--format", "structured", "bound", "wstate", "--k",
                             std::to_string(k), "--n", std::to_string(n)});
      REQUIRE(r.code == 0);
      const auto j = nlohmann::json::parse(r.out);
      const auto lib = rankgap::bounds::ratio_report(k, n);
      CHECK(rankgap::BigInt(j["best_lb"].get<std::string>()) == lib.best_lb);
      CHECK(rankgap::parse_rational(j["ratio_lb"].get<std::string>()) ==
            lib.ratio_lb);
      CHECK(rankgap::BigInt(j["rank_ub"].get<std::string>()) == lib.rank_ub);
    }
  }
}

TEST_CASE("tables match the golden files") {
  const fs::path golden(RANKGAP_GOLDEN_DIR);
  CHECK(invoke({"table", "1"}).out == slurp(golden / "table1.csv"));
  CHECK(invoke({"table", "2"}).out == slurp(golden / "table2.csv"));
  CHECK(invoke({"--format", "csv", "table", "2"}).out ==
        slurp(golden / "table2.csv"));

  const auto s = invoke({"--format", "structured", "table", "2"});
  const auto j = nlohmann::json::parse(s.out);
  const auto t = rankgap::bounds::table2();
  for (std::size_t r = 0; r < t.values.size(); ++r) {
    for (std::size_t c = 0; c < t.values[r].size(); ++c) {
      CHECK(rankgap::BigInt(j["values"][r][c].get<std::string>()) == t.values[r][c]);
    }
  }
  CHECK(invoke({"table", "3"}).code == 2);
}

TEST_CASE("output is deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"table", "1"},
           {"--format", "text", "table", "2"},
           {"bound", "algebra", "--d", "4", "--n", "3"},
           {"verify", "syzygy"}}) {
    CHECK(invoke(args).out == invoke(args).out);
  }
}

TEST_CASE("tensor files") {
  TempDir dir;
  const auto w = invoke({"tensor", "wstate", "--k", "3", "--power", "2", "--out",
                         dir.file("w2.json")});
  REQUIRE(w.code == 0);
  CHECK(rankgap::io::load_tensor(dir.file("w2.json")) ==
        rankgap::kron_power(rankgap::wstate(3), 2));

  const auto f = invoke({"tensor", "rank-flatten", "--in", dir.file("w2.json")});
  CHECK(f.code == 0);
  CHECK(f.out.find("concise: yes") != std::string::npos);

  const auto a = invoke({"tensor", "algebra", "--d", "2", "--n", "2", "--sparse",
                         "--out", dir.file("a22.json")});
  REQUIRE(a.code == 0);
  CHECK(slurp(dir.file("a22.json")).find("nonzeros") != std::string::npos);

  std::ofstream(dir.file("bad.json")) << "{\"shape\":[2";
  const auto bad = invoke({"tensor", "rank-flatten", "--in", dir.file("bad.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("rankgap:") == 0);
  CHECK(invoke({"tensor", "rank-flatten", "--in", dir.file("missing.json")}).code == 2);
}

TEST_CASE("verification commands") {
  const auto s = invoke({"verify", "syzygy"});
  CHECK(s.code == 0);
  CHECK(s.out.find("RESIDUAL = 0") != std::string::npos);

  CHECK(invoke({"verify", "wstate-basis", "--n", "3"}).code == 0);

  const auto d = invoke({"verify", "degeneration", "--k", "4", "--eps",
                         "1e-1,1e-2,1e-3"});
  CHECK(d.code == 0);
  CHECK(d.out.find("PASS") != std::string::npos);
  CHECK(invoke({"verify", "degeneration", "--k", "3", "--eps", "1e-1,0"}).code == 2);
}

TEST_CASE("decompose and re-verify") {
  TempDir dir;
  REQUIRE(invoke({"tensor", "wstate", "--k", "3", "--out", dir.file("w.json")}).code == 0);
  const auto good = invoke({"decompose", "--in", dir.file("w.json"), "--rank", "3",
                            "--restarts", "5", "--threshold", "1e-8", "--out",
                            dir.file("d3.json")});
  CHECK(good.code == 0);
  CHECK(invoke({"verify", "decomposition", "--tensor", dir.file("w.json"), "--in",
                dir.file("d3.json"), "--threshold", "1e-8"})
            .code == 0);

  const auto bad = invoke({"decompose", "--in", dir.file("w.json"), "--rank", "1",
                           "--threshold", "1e-8", "--out", dir.file("d1.json")});
  CHECK(bad.code == 1);
  CHECK(invoke({"verify", "decomposition", "--tensor", dir.file("w.json"), "--in",
                dir.file("d1.json"), "--threshold", "1e-8"})
            .code == 1);

  const auto probe = invoke({"decompose", "--in", dir.file("w.json"), "--rank", "2",
                             "--max-iters", "50", "--probe-divergence"});
  CHECK(probe.code == 0);
  CHECK(invoke({"decompose", "--in", dir.file("w.json"), "--rank", "0"}).code == 2);
}

TEST_CASE("usage and budget errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"bound", "algebra", "--d", "2"}).code == 2);
  CHECK(invoke({"bound", "algebra", "--d", "2", "--n", "2", "--bogus"}).code == 2);
  CHECK(invoke({"--format", "xml", "table", "1"}).code == 2);

  const auto big = invoke({"tensor", "algebra", "--d", "2", "--n", "8"});
  CHECK(big.code == 3);
  CHECK(big.err.find("budget") != std::string::npos);
  CHECK(invoke({"--max-dim", "256", "--max-rank-dim", "16", "bound", "algebra",
                "--d", "2", "--n", "5", "--certify-border"})
            .code == 3);
}
