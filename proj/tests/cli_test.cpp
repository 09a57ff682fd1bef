#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(RCW_BINARY) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string curve(const char* name) { return std::string(RCW_CURVES_DIR) + "/" + name + ".curve"; }

TEST(Cli, ExitCodesOfNamedCurves) {
  EXPECT_EQ(run("check " + curve("circle")).code, 0);
  EXPECT_EQ(run("check " + curve("mirrored_circle")).code, 0);
  EXPECT_EQ(run("check " + curve("bernoulli")).code, 0);
  EXPECT_EQ(run("check " + curve("double_circle")).code, 0);
  EXPECT_EQ(run("check " + curve("gerono")).code, 3);
  EXPECT_EQ(run("check " + curve("perturbed_gerono")).code, 2);
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run("check").code, 1);
  EXPECT_EQ(run("check /nonexistent/file.curve").code, 1);
  EXPECT_EQ(run("check -e 'x = t^^2'").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("check -e 'x = 1/(t - 1); y = t'").code, 2);
}

TEST(Cli, JsonReport) {
  const Outcome r = run("check --json - " + curve("circle"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["w_gauss"], 1);
  EXPECT_EQ(j["w_regular"], 1);
  EXPECT_EQ(j["w_sweep"], 1);
  EXPECT_EQ(j["rhs"], 1);
  EXPECT_EQ(j["sweep"]["ledger"]["gaps"], nlohmann::json({-1, 0, 1}));
  EXPECT_EQ(j["exit_code"], 0);
  EXPECT_EQ(r.out, run("check --json - " + curve("circle")).out);
}

TEST(Cli, ExpressionAndStdin) {
  EXPECT_EQ(run("whitney -e 'x = (1 - t^2)/(1 + t^2); y = 2*t/(1 + t^2)'").code, 0);
  EXPECT_EQ(run("infinity - < " + curve("bernoulli")).code, 0);
}

TEST(Cli, RenderWritesAFile) {
  const std::string path = std::string(RCW_TEST_TMP) + "/cli_render.svg";
  std::remove(path.c_str());
  ASSERT_EQ(run("render " + curve("bernoulli") + " --svg " + path).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("<svg"), std::string::npos);
  EXPECT_NE(ss.str().find("</svg>"), std::string::npos);
}

TEST(Cli, GenerateOutputParsesBack) {
  const Outcome g = run("generate --seed 4 --harmonics 2");
  ASSERT_EQ(g.code, 0);
  const std::string path = std::string(RCW_TEST_TMP) + "/cli_generated.curve";
  std::ofstream(path) << g.out;
  EXPECT_EQ(run("check " + path).code, 0);
}

TEST(Cli, SmallBatch) {
  const Outcome r = run("batch --count 8 --seed 3 --json -");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["requested"], 8);
  EXPECT_EQ(j["passed"], j["generated"]);
}

}  // namespace
