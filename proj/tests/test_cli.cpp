#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sphere/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sphere");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = sphere::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, CensusSquare) {
  const auto r = run({"census", "--map", "power:d=2", "--n-max", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,count,rate,bound_dn,theorem3_sum");
  for (int n = 1; n <= 8; ++n) {
    ASSERT_TRUE(std::getline(in, line));
    EXPECT_EQ(line.substr(0, line.find(',', line.find(',') + 1)),
              std::to_string(n) + "," + std::to_string((1 << n) + 1));
  }
}

TEST(Cli, CensusToFile) {
  const std::string path = ::testing::TempDir() + "census.csv";
  ASSERT_EQ(run({"census", "--map", "power:d=3", "--n-max", "2", "--out", path}).code, 0);
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "n,count,rate,bound_dn,theorem3_sum");
  std::remove(path.c_str());
}

TEST(Cli, DegreeJson) {
  const auto r = run({"degree", "--map", "power:d=3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["global"], 3);
  EXPECT_EQ(j["witnesses"].size(), 3u);
  const auto fixed = nlohmann::json::parse(run({"degree", "--map", "power:d=2", "--value", "1,0"}).out);
  EXPECT_EQ(fixed["global"], 2);
}

TEST(Cli, CheckHFailsForQuadratic) {
  const auto r = run({"check-h", "--map", "quad:c=0.1+0.0i"});
  EXPECT_EQ(r.code, 1);
  const auto first = r.out.substr(0, r.out.find('\n'));
  EXPECT_EQ(nlohmann::json::parse(first)["result"], "fail");
  EXPECT_NE(r.out.find("# chart="), std::string::npos);
  EXPECT_EQ(run({"check-h", "--map", "power:d=2"}).code, 0);
}

TEST(Cli, IndexFromCurveFile) {
  const std::string path = ::testing::TempDir() + "curve.csv";
  {
    std::ofstream f(path);
    f << "# chart=north\n";
    for (int i = 0; i < 64; ++i) {
      const double t = 6.283185307179586 * i / 64;
      f << 2 * std::cos(t) << "," << 2 * std::sin(t) << "\n";
    }
  }
  const auto r = run({"index", "--map", "power:d=2", "--curve", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["index"], 2);
  std::remove(path.c_str());
}

TEST(Cli, AnnuliAndStripIndex) {
  const auto a = run({"annuli", "--map", "product:q=affine(2,0);d=-1"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto comps = nlohmann::json::parse(a.out);
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0]["delta"], -1);
  EXPECT_EQ(comps[0]["theorem3_bound"], 2);
  EXPECT_TRUE(comps[0]["lower_s"].is_null());

  const auto s = run({"strip-index", "--map", "product:q=affine(2,0);d=-1"});
  ASSERT_EQ(s.code, 0) << s.err;
  std::istringstream in(s.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["index"], -1);
    EXPECT_EQ(j["k"], lines);
    ++lines;
  }
  EXPECT_EQ(lines, 2);
  const auto one = run({"strip-index", "--map", "product:q=affine(2,0);d=-1", "--lift", "1"});
  EXPECT_EQ(nlohmann::json::parse(one.out)["k"], 1);
}

TEST(Cli, ErrorsAreJsonWithExitCodes) {
  const auto bad = run({"degree", "--map", "power:d=x"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(nlohmann::json::parse(bad.err)["error"], "ParseError");
  EXPECT_EQ(run({"degree"}).code, 2);
  EXPECT_EQ(run({"degree", "--map", "power:d=0"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  const auto analysis = run({"annuli", "--map", "quad:c=0.1"});
  EXPECT_EQ(analysis.code, 1);
  EXPECT_EQ(nlohmann::json::parse(analysis.err)["error"], "NotStraightened");
}

TEST(Cli, OutputIsDeterministic) {
  for (const std::vector<std::string> args : {std::vector<std::string>{"degree", "--map", "quad:c=0.2"},
                                              std::vector<std::string>{"census", "--map", "power:d=3", "--n-max", "4"}}) {
    EXPECT_EQ(run(args).out, run(args).out);
  }
}
