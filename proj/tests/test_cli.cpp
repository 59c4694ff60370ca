#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sgdmds/bench.hpp"
#include "sgdmds/cli.hpp"
#include "sgdmds/datasets.hpp"
#include "test_support.hpp"

using namespace sgdmds;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Drops the named columns from a CSV so timing can be excluded from comparisons.
std::string without_columns(const std::string& csv, const std::vector<std::string>& names) {
  const auto rows = lines(csv);
  std::vector<bool> keep;
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::string> cells;
    std::stringstream ss(rows[r]);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (r == 0)
      for (const auto& c : cells) keep.push_back(std::find(names.begin(), names.end(), c) == names.end());
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (c >= keep.size() || keep[c]) out += cells[c] + ",";
    out += "\n";
  }
  return out;
}

bool balanced_svg(const std::string& doc) {
  return doc.find("<svg") != std::string::npos && doc.find("</svg>") != std::string::npos &&
         std::count(doc.begin(), doc.end(), '<') == std::count(doc.begin(), doc.end(), '>');
}

}  // namespace

TEST_CASE("embed blobs writes 300 rows, a trace and a plot") {
  const fs::path dir = testing::temp_dir("cli");
  const Run r = run({"embed", "--blobs", "300,2,3,0.5", "--solver", "sgd", "--seed", "1", "--out",
                     (dir / "e.csv").string(), "--trace", (dir / "t.csv").string(), "--plot",
                     (dir / "p.svg").string()});
  REQUIRE(r.code == 0);
  const auto emb = lines(slurp(dir / "e.csv"));
  CHECK(emb.size() == 301);
  CHECK(emb[0] == "x0,x1,label");
  const auto trace = lines(slurp(dir / "t.csv"));
  CHECK(trace[0] == "step,raw_stress,normalized_stress,learning_rate,elapsed_seconds");
  CHECK(trace[1].rfind("0,", 0) == 0);
  CHECK(balanced_svg(slurp(dir / "p.svg")));
  fs::remove_all(dir);
}

TEST_CASE("embed is deterministic for both solvers") {
  const fs::path dir = testing::temp_dir("cli");
  for (const std::string solver : {"sgd", "smacof"}) {
    for (int rep = 0; rep < 2; ++rep) {
      REQUIRE(run({"embed", "--blobs", "120,6,3", "--solver", solver, "--seed", "4", "--weights", "invsq",
                   "--out", (dir / (solver + std::to_string(rep) + ".csv")).string(), "--trace",
                   (dir / (solver + std::to_string(rep) + "_t.csv")).string()})
                  .code == 0);
    }
    CHECK(slurp(dir / (solver + "0.csv")) == slurp(dir / (solver + "1.csv")));
    CHECK(without_columns(slurp(dir / (solver + "0_t.csv")), {"elapsed_seconds"}) ==
          without_columns(slurp(dir / (solver + "1_t.csv")), {"elapsed_seconds"}));
  }
  fs::remove_all(dir);
}

TEST_CASE("embed from feature and dissimilarity files") {
  const fs::path dir = testing::temp_dir("cli");
  REQUIRE(run({"gen", "--blobs", "40,3,2", "--seed", "2", "--out", (dir / "f.csv").string()}).code == 0);
  CHECK(run({"embed", "--input", (dir / "f.csv").string(), "--mode", "lazy", "--out", (dir / "lazy.csv").string()})
            .code == 0);
  std::ofstream(dir / "m.csv") << "0,1,1\n1,0,1\n1,1,0\n";
  CHECK(run({"embed", "--dissim", (dir / "m.csv").string(), "--solver", "smacof", "--out",
             (dir / "m_out.csv").string()})
            .code == 0);
  const Run lazy = run({"embed", "--dissim", (dir / "m.csv").string(), "--mode", "lazy", "--out",
                        (dir / "x.csv").string()});
  CHECK(lazy.code == 1);
  CHECK_FALSE(lazy.err.empty());
  CHECK(run({"embed", "--dissim", (dir / "m.csv").string(), "--input", (dir / "f.csv").string(), "--out",
             (dir / "x.csv").string()})
            .code == 1);
  fs::remove_all(dir);
}

TEST_CASE("exit codes for bad input") {
  const fs::path dir = testing::temp_dir("cli");
  CHECK(run({"embed", "--blobs", "100,2,3", "--nonsense"}).code == 1);
  CHECK(run({"embed", "--blobs", "100,2,3", "--epochs", "0"}).code == 1);
  CHECK(run({"embed", "--input", (dir / "missing.csv").string()}).code == 2);
  std::ofstream(dir / "bad.csv") << "1,2\n3,abc\n";
  const Run bad = run({"embed", "--input", (dir / "bad.csv").string(), "--out", (dir / "o.csv").string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("row 2") != std::string::npos);
  CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);
  CHECK(run({}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("gen writes labelled rows and validates blob arguments") {
  const fs::path dir = testing::temp_dir("cli");
  REQUIRE(run({"gen", "--blobs", "100,2,3", "--seed", "5", "--out", (dir / "a.csv").string()}).code == 0);
  REQUIRE(run({"gen", "--blobs", "100,2,3", "--seed", "5", "--out", (dir / "b.csv").string()}).code == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  const Dataset ds = load_feature_csv_auto(dir / "a.csv");
  CHECK(ds.size() == 100);
  for (const auto& l : ds.labels()) CHECK((l == "0" || l == "1" || l == "2"));
  CHECK(run({"gen", "--blobs", "2,1,3", "--out", (dir / "c.csv").string()}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("bench: 3 datasets x 2 solvers x 5 seeds") {
  const fs::path dir = testing::temp_dir("bench");
  const std::vector<std::string> args{"bench", "--blobs", "60,2,3", "--blobs", "70,5,2", "--blobs", "50,8,4",
                                      "--seeds", "5", "--solvers", "sgd,smacof", "--out-dir"};
  auto a = args, b = args;
  a.push_back((dir / "a").string());
  b.push_back((dir / "b").string());
  const Run ra = run(a);
  REQUIRE(ra.code == 0);
  CHECK(ra.out.find("lower_stress") != std::string::npos);
  const auto rows = lines(slurp(dir / "a" / "results.csv"));
  CHECK(rows.size() == 31);
  CHECK(rows[0] == bench::kResultsHeader);
  std::size_t svgs = 0, traces = 0;
  for (const auto& e : fs::directory_iterator(dir / "a")) {
    if (e.path().extension() == ".svg") {
      ++svgs;
      const std::string doc = slurp(e.path());
      CHECK(balanced_svg(doc));
      // one series per (solver, seed)
      std::size_t series = 0;
      for (auto pos = doc.find("class=\"series\""); pos != std::string::npos; pos = doc.find("class=\"series\"", pos + 1))
        ++series;
      CHECK(series == 10);
    }
  }
  for (const auto& e : fs::directory_iterator(dir / "a" / "traces")) traces += e.path().extension() == ".csv";
  CHECK(svgs == 3);
  CHECK(traces == 30);

  REQUIRE(run(b).code == 0);
  const std::vector<std::string> timing{"provider_seconds", "wall_time_total", "wall_time_to_stable"};
  CHECK(without_columns(slurp(dir / "a" / "results.csv"), timing) ==
        without_columns(slurp(dir / "b" / "results.csv"), timing));
  fs::remove_all(dir);
}

TEST_CASE("scaling: row count and per-D plots") {
  const fs::path dir = testing::temp_dir("scaling");
  const Run r = run({"scaling", "--n-grid", "40,60", "--d-list", "2,8", "--seeds", "2", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  const auto rows = lines(slurp(dir / "scaling.csv"));
  CHECK(rows.size() == 1 + 2 * 2 * 3 * 2);
  CHECK(rows[0].rfind("N,D,solver,mode,seed,wall_time_to_stable,final_normalized_stress", 0) == 0);
  CHECK(fs::exists(dir / "runtime_D2.svg"));
  CHECK(fs::exists(dir / "runtime_D8.svg"));
  CHECK(balanced_svg(slurp(dir / "runtime_D8.svg")));
  fs::remove_all(dir);
}
