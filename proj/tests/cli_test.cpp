#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string data(const std::string& name) { return std::string(UCS_TEST_DATA_DIR) + "/" + name; }

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("ucs_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string("\"") + UCS_CLI_PATH + "\" " + args + " >\"" +
                            out.string() + "\" 2>\"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
};

TEST_F(Cli, SparsifyK4) {
  const CliRun r = run("sparsify --input " + data("k4.txt") + " --ell 5 --out " + path("k4.json") +
                    " --svg " + path("k4.svg"));
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(slurp(path("k4.json")));
  EXPECT_NEAR(j.at("lambda_min").get<double>(), 0.5, 1e-10);
  EXPECT_EQ(j.at("selected_edges").size(), 5u);
  EXPECT_EQ(j.at("per_iteration").size(), 5u);
  EXPECT_TRUE(j.at("sandwich").at("pass").get<bool>());
  EXPECT_EQ(j.at("manifest").at("command"), "sparsify");
  EXPECT_EQ(j.at("manifest").at("ell"), 5);
  EXPECT_EQ(j.at("manifest").at("tie_rule"), "first");
  const std::string svg = slurp(path("k4.svg"));
  EXPECT_NE(svg.find("<svg"), std::string::npos);
}

TEST_F(Cli, SparsifyToStdoutIsDeterministic) {
  const CliRun a = run("sparsify -i " + data("k4.txt") + " -l 5 --tie best");
  const CliRun b = run("sparsify -i " + data("k4.txt") + " -l 5 --tie best");
  ASSERT_EQ(a.code, 0) << a.err;
  json ja = json::parse(a.out);
  json jb = json::parse(b.out);
  ja["manifest"].erase("timestamp");
  jb["manifest"].erase("timestamp");
  EXPECT_EQ(ja, jb);
  EXPECT_EQ(ja.at("params").at("tie_rule"), "best");
}

TEST_F(Cli, SparsifyRejectsEllAtMostN) {
  const CliRun r = run("sparsify --input " + data("k4.txt") + " --ell 2");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("domain error"), std::string::npos) << r.err;
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(run("sparsify --input " + path("missing.txt") + " --ell 5").code, 1);
  EXPECT_EQ(run("sparsify --input " + data("k4.txt")).code, 1);
  EXPECT_EQ(run("sparsify --input " + data("k4.txt") + " --ell 5 --format csv").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  write("bad.txt", "0\t1\n1\t2\t3\n");
  const CliRun r = run("sparsify --input " + path("bad.txt") + " --ell 2");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(Cli, TreeK4AndTwoComponents) {
  const CliRun k4 = run("tree --input " + data("k4.txt") + " --edges " + path("tree.txt"));
  ASSERT_EQ(k4.code, 0) << k4.err;
  const json j = json::parse(k4.out);
  EXPECT_EQ(j.at("edge_count"), 3);
  EXPECT_TRUE(j.at("acyclic").get<bool>());
  const std::string edges = slurp(path("tree.txt"));
  EXPECT_EQ(std::count(edges.begin(), edges.end(), '\n'), 3);

  const CliRun two = run("tree --input " + data("two_components.txt"));
  ASSERT_EQ(two.code, 0) << two.err;
  const json t = json::parse(two.out);
  EXPECT_EQ(t.at("edge_count").get<std::size_t>(),
            t.at("graph").at("vertex_count").get<std::size_t>() - 2);
  EXPECT_TRUE(t.at("same_components").get<bool>());
}

TEST_F(Cli, BoundsRows) {
  const CliRun a = run("bounds --n 2 --m 4 --ell 3");
  ASSERT_EQ(a.code, 0) << a.err;
  std::istringstream lines(a.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header.rfind("n,m,ell,T_hat_star,F_at_star,T,kappa_inv_ucs,kappa_inv_ddsss,", 0), 0u);
  std::vector<std::string> cells;
  std::stringstream ss(row);
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  ASSERT_GE(cells.size(), 8u);
  EXPECT_NEAR(std::stod(cells[6]), 0.0285954, 1e-6);

  const CliRun b = run("bounds --n 1 --m 3 --ell 2 --json " + path("b.json"));
  ASSERT_EQ(b.code, 0) << b.err;
  const json j = json::parse(slurp(path("b.json")));
  EXPECT_NEAR(j.at("rows")[0].at("kappa_inv_ucs").get<double>(), 0.0559700, 1e-6);

  const CliRun c = run("bounds --n 3 --m 6 --ell 3");
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("skipped"), std::string::npos);
  EXPECT_NE(c.err.find("skipped"), std::string::npos);

  const CliRun grid = run("bounds --n 2:3 --m 10:11 --ell 4:5");
  EXPECT_EQ(std::count(grid.out.begin(), grid.out.end(), '\n'), 9);
  EXPECT_EQ(run("bounds --n x --m 4 --ell 3").code, 1);
}

TEST_F(Cli, VerifySubsets) {
  write("all.json", "[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]");
  write("none.json", "{\"selected_edges\": []}");
  write("unknown.json", "[[0,9]]");
  const std::string base = "verify --input " + data("k4.txt") + " --subset ";
  const CliRun all = run(base + path("all.json") + " --kappa-inv 1");
  EXPECT_EQ(all.code, 0) << all.err;
  EXPECT_TRUE(json::parse(all.out).at("pass").get<bool>());
  EXPECT_EQ(run(base + path("none.json") + " --kappa-inv 0.5").code, 2);
  EXPECT_EQ(run(base + path("unknown.json") + " --kappa-inv 0.5").code, 1);

  ASSERT_EQ(run("sparsify --input " + data("k4.txt") + " --ell 5 --out " + path("s.json")).code,
            0);
  const CliRun from = run(base + path("s.json") + " --kappa-inv 0.0316");
  EXPECT_EQ(from.code, 0) << from.err;
  EXPECT_NEAR(json::parse(from.out).at("lower").get<double>(), 0.5, 1e-10);
}

TEST_F(Cli, LayoutWritesSvgAndCoordinates) {
  write("sub.json", "[[0,1],[0,2],[0,3]]");
  const CliRun r = run("layout --input " + data("k4.txt") + " --subset " + path("sub.json") +
                    " --seed 3 --iterations 200 --svg " + path("k4.svg") + " --coords " +
                    path("c.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string svg = slurp(path("k4.svg"));
  std::size_t lines = 0, hl = 0;
  for (auto p = svg.find("<line"); p != std::string::npos; p = svg.find("<line", p + 1)) ++lines;
  for (auto p = svg.find("class=\"highlight\""); p != std::string::npos;
       p = svg.find("class=\"highlight\"", p + 1)) {
    ++hl;
  }
  EXPECT_EQ(lines, 6u);
  EXPECT_EQ(hl, 3u);
  const json c = json::parse(slurp(path("c.json")));
  EXPECT_EQ(c.at("coordinates").size(), 4u);
  EXPECT_EQ(c.at("manifest").at("seed"), 3);

  const CliRun again = run("layout --input " + data("k4.txt") + " --subset " + path("sub.json") +
                        " --seed 3 --iterations 200 --svg " + path("k4b.svg"));
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(slurp(path("k4b.svg")), svg);
}

TEST_F(Cli, ThreadsEnvironment) {
  const std::string tail = "\" sparsify --input " + data("k4.txt") + " --ell 5 >/dev/null 2>&1";
  const std::string bad = "UCS_THREADS=zero \"" + std::string(UCS_CLI_PATH) + tail;
  const std::string good = "UCS_THREADS=3 \"" + std::string(UCS_CLI_PATH) + tail;
  EXPECT_EQ(WEXITSTATUS(std::system(bad.c_str())), 1);
  EXPECT_EQ(WEXITSTATUS(std::system(good.c_str())), 0);
}

}  // namespace
