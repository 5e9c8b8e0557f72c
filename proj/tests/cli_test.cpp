#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "atdist/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "atdist");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = atdist::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(ATDIST_SAMPLES_DIR) + "/counterexamples/" + name + ".xml"; }
std::string data(const std::string& name) { return std::string(ATDIST_TEST_DATA) + "/" + name; }

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("atdist_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, CompareIdenticalIsAllZero) {
  const CliRun r = run({"compare", sample("base"), sample("base"), "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  for (const char* m : {"ld", "ted", "rd", "msd"}) EXPECT_EQ(j["measures"][m]["absolute"], 0.0) << m;
  EXPECT_EQ(j["wsd"], 0.0);
}

TEST(Cli, CompareOrderReversedWithoutReorder) {
  const CliRun r = run({"compare", sample("base"), sample("order_reversed"), "--reorder", "off", "--epsilon", "1",
                     "--provider", "exact", "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["measures"]["ted"]["absolute"], 7.0);
  // default reorder=min flips the siblings back
  const CliRun m = run({"compare", sample("base"), sample("order_reversed"), "--epsilon", "1", "--output", "json"});
  const auto j = nlohmann::json::parse(m.out);
  EXPECT_EQ(j["measures"]["ted"]["absolute"], 0.0);
  EXPECT_EQ(j["ted_reordered"], true);
}

TEST(Cli, ConfigEchoRoundTripsEveryFlag) {
  const CliRun r = run({"compare", sample("base"), sample("move_up"), "--epsilon", "0.55", "--provider", "levenshtein",
                     "--gamma-delta", "0.25", "--alpha", "1,0,0.5,0", "--reorder", "on", "--no-lowercase",
                     "--missing-embedding", "zero", "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto c = nlohmann::json::parse(r.out)["config"];
  EXPECT_EQ(c["epsilon"], 0.55);
  EXPECT_EQ(c["provider"], "levenshtein");
  EXPECT_EQ(c["gamma_delta"], 0.25);
  EXPECT_EQ(c["alpha"], nlohmann::json::parse("[1,0,0.5,0]"));
  EXPECT_EQ(c["reorder"], "on");
  EXPECT_EQ(c["lowercase"], false);
  EXPECT_EQ(c["missing_embedding"], "zero");
}

TEST(Cli, TextAndCsvOutputs) {
  const CliRun t = run({"compare", sample("base"), sample("extra_leaf")});
  ASSERT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("WSD"), std::string::npos);
  const CliRun c = run({"compare", sample("base"), sample("extra_leaf"), "--output", "csv"});
  EXPECT_EQ(c.out.rfind("measure,absolute,normalized", 0), 0u);
}

TEST(Cli, ConfigErrorsExitFour) {
  EXPECT_EQ(run({"compare", sample("base"), sample("base"), "--gamma-delta", "3"}).code, 4);
  EXPECT_EQ(run({"compare", sample("base"), sample("base"), "--epsilon", "1.5"}).code, 4);
  EXPECT_EQ(run({"compare", sample("base"), sample("base"), "--alpha", "1,2"}).code, 4);
  EXPECT_EQ(run({"compare", sample("base"), sample("base"), "--alpha", "1,x,0,0"}).code, 4);
  EXPECT_EQ(run({"compare", sample("base"), sample("base"), "--reorder", "maybe"}).code, 4);
  EXPECT_EQ(run({"compare", sample("base"), sample("base"), "--output", "xml"}).code, 4);
  EXPECT_EQ(run({"compare", sample("base"), sample("base"), "--provider", "bert"}).code, 4);
  EXPECT_EQ(run({"compare", sample("base"), sample("base"), "--bogus"}).code, 4);
  EXPECT_EQ(run({"sweep", sample("base"), sample("base"), "--step", "0"}).code, 4);
  EXPECT_EQ(run({}).code, 4);
}

TEST(Cli, ParseErrorsExitTwo) {
  const CliRun missing = run({"compare", "/nonexistent.xml", sample("base")});
  EXPECT_EQ(missing.code, 2);
  const CliRun bad = run({"compare", data("malformed.xml"), sample("base")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("malformed.xml:"), std::string::npos) << bad.err;
}

TEST(Cli, Validate) {
  const CliRun ok = run({"validate", sample("base")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("ok (7 nodes"), std::string::npos);
  const CliRun sr = run({"validate", data("switch_role.xml")});
  EXPECT_EQ(sr.code, 2);
  EXPECT_NE(sr.err.find("adtree/node/node[0]"), std::string::npos) << sr.err;
}

TEST(Cli, SweepDefaultGrid) {
  const CliRun r = run({"sweep", sample("base"), sample("base"), "--provider", "levenshtein"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), 102u);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::stringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');
    for (int k = 0; k < 5; ++k) {
      std::getline(cells, cell, ',');
      EXPECT_EQ(cell, "0") << line;
    }
  }
  const CliRun j = run({"sweep", sample("base"), sample("move_up"), "--step", "0.25", "--output", "json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["rows"].size(), 5u);
}

TEST(Cli, CounterexamplesOutputs) {
  const CliRun t = run({"counterexamples"});
  EXPECT_EQ(t.code, 0) << t.out;
  EXPECT_NE(t.out.find("all hard checks passed"), std::string::npos);
  const CliRun c = run({"counterexamples", "--output", "csv", "--epsilon", "0.1"});  // overrides ignored
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(lines(c.out), 13u);
  const CliRun j = run({"counterexamples", "--output", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["rows"].size(), 12u);
  EXPECT_EQ(doc["passed"], true);
}

TEST(Cli, MatrixOfIdenticalFiles) {
  const fs::path dir = scratch_dir("matrix");
  fs::copy_file(sample("base"), dir / "one.xml");
  fs::copy_file(sample("base"), dir / "two.xml");
  std::ofstream(dir / "notes.txt") << "ignored";
  const CliRun r = run({"matrix", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "tree,one,two\none,0,0\ntwo,0,0\n");
  const CliRun j = run({"matrix", dir.string(), "--measure", "ted", "--output", "json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["measure"], "ted");
  fs::remove(dir / "two.xml");
  EXPECT_EQ(run({"matrix", dir.string()}).code, 4);
  EXPECT_EQ(run({"matrix", (dir / "nothing").string()}).code, 2);
}

TEST(Cli, EmbeddingProvider) {
  const std::string emb = "embedding:" + data("embeddings.json");
  const CliRun missing = run({"compare", data("house_a.xml"), data("house_b.xml"), "--provider", emb});
  EXPECT_EQ(missing.code, 3);
  EXPECT_NE(missing.err.find("climb chimney"), std::string::npos) << missing.err;
  const CliRun zero =
      run({"compare", data("house_a.xml"), data("house_b.xml"), "--provider", emb, "--missing-embedding", "zero"});
  EXPECT_EQ(zero.code, 0) << zero.err;
  EXPECT_EQ(run({"compare", data("house_a.xml"), data("house_b.xml"), "--provider", "embedding:/nope.json"}).code, 3);
}

TEST(Cli, EmbeddingPathFromEnvironment) {
  ::setenv("ATDIST_EMBEDDINGS", (std::string(ATDIST_SAMPLES_DIR) + "/study/embeddings.json").c_str(), 1);
  const std::string a = std::string(ATDIST_SAMPLES_DIR) + "/study/steal_credentials_a.xml";
  const std::string b = std::string(ATDIST_SAMPLES_DIR) + "/study/steal_credentials_b.xml";
  const CliRun r = run({"compare", a, b, "--provider", "embedding", "--output", "json"});
  ::unsetenv("ATDIST_EMBEDDINGS");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["config"]["provider"], "embedding");
  EXPECT_EQ(run({"compare", a, b, "--provider", "embedding"}).code, 4);
}

TEST(Cli, SideOutputs) {
  const fs::path dir = scratch_dir("emit");
  const CliRun r = run({"compare", sample("base"), sample("move_down"), "--emit-mapping", (dir / "map.json").string(),
                     "--emit-script", (dir / "script.jsonl").string(), "--emit-radicals",
                     (dir / "radicals.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto mapping = nlohmann::json::parse(slurp(dir / "map.json"));
  EXPECT_EQ(mapping.size(), 7u);  // same label sets: every node matched
  std::istringstream script(slurp(dir / "script.jsonl"));
  std::string line;
  std::size_t n = 0;
  while (std::getline(script, line)) {
    EXPECT_TRUE(nlohmann::json::parse(line).contains("kind"));
    ++n;
  }
  EXPECT_GE(n, 7u);
  const auto rad = nlohmann::json::parse(slurp(dir / "radicals.json"));
  EXPECT_EQ(rad["source"].size(), 3u);
  EXPECT_EQ(rad["target"].size(), 4u);
}

TEST(Cli, Help) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("compare"), std::string::npos);
}

TEST(Cli, BinaryIsDeterministic) {
  const std::string cmd = std::string(ATDIST_CLI_PATH) + " compare " + sample("base") + " " + sample("move_down") +
                          " --provider levenshtein --output json";
  const auto capture = [](const std::string& c) {
    std::string out;
    FILE* p = ::popen(c.c_str(), "r");
    if (p == nullptr) return out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    ::pclose(p);
    return out;
  };
  const std::string first = capture(cmd);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(capture(cmd), first);
}
