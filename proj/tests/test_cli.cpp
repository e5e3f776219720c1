#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hk/job.hpp"

using namespace hk;

namespace {

const char* kPlane =
    R"({"p":2,"vars":["x","y"],"weights":[1,1],"relations":[],"I":["x","y"],"J":["x","y"],"job":"h-grid","n_max":4,"grid":"q-grid"})";
const char* kCusp = R"({"p":2,"vars":["x","y"],"weights":[3,2],"relations":["x^2 - y^3"],"I":["x","y"],"J":["x","y"],"job":"ehk","n_max":3})";

std::string error_of(const std::string& text) {
  try {
    parse_job(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("hk_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  int status = std::system((std::string(HK_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(ParseJob, ValidConfigs) {
  auto plane = parse_job(kPlane);
  EXPECT_EQ(plane.job, "h-grid");
  EXPECT_EQ(plane.ring->dim(), 2);
  EXPECT_EQ(plane.levels(), level_range(1, 4));
  auto cusp = parse_job(kCusp);
  EXPECT_EQ(cusp.ring->relations().size(), 1u);
  EXPECT_EQ(cusp.ring->dim(), 1);
}

TEST(ParseJob, Errors) {
  EXPECT_NE(error_of(R"({"p":4,"vars":["x"],"job":"ehk"})").find("characteristic must be prime"), std::string::npos);
  auto inh = error_of(R"({"p":2,"vars":["x","y"],"relations":["x^2 - y"],"job":"ehk"})");
  EXPECT_NE(inh.find("not weighted-homogeneous"), std::string::npos);
  EXPECT_NE(inh.find("1, 2"), std::string::npos);
  EXPECT_NE(error_of(R"({"p":2,"vars":["x"],"job":"nope"})").find("unknown job"), std::string::npos);
  auto mal = error_of(R"({"p":2,"vars":["x","y"],"I":["x*+y"],"job":"ehk"})");
  EXPECT_NE(mal.find("position"), std::string::npos);
  EXPECT_NE(error_of(R"({"p":2,"vars":["x"],"job":"ehk","n_mx":3})").find("unknown key"), std::string::npos);
  EXPECT_NE(error_of("{not json").find("malformed JSON"), std::string::npos);
  EXPECT_NE(error_of(R"({"p":2,"vars":["x"],"job":"ehk","weights":[0]})").find("positive"), std::string::npos);
  EXPECT_THROW(parse_job(kPlane, "ehk"), ConfigError);
}

TEST(ParseJob, MissingParametersAreConfigErrors) {
  auto cfg = parse_job(R"({"p":2,"vars":["x","y"],"I":["x","y"],"J":["x","y"],"job":"boij","n":2})");
  EXPECT_THROW(run_job(cfg), ConfigError);
  auto ineq = parse_job(R"({"p":2,"vars":["x","y"],"I":["x","y"],"J":["x","y"],"job":"inequalities","n_max":3})");
  EXPECT_THROW(run_job(ineq), ConfigError);
}

TEST(Grid, Kinds) {
  auto cfg = parse_job(R"({"p":3,"vars":["x"],"job":"h-grid","grid":{"start":"1/2","stop":"3/2","step":"1/4"}})");
  EXPECT_EQ(cfg.grid->at_level(3).size(), 5u);
  auto qg = parse_job(R"({"p":3,"vars":["x"],"job":"h-grid","grid":"q-grid","s_max":"1"})");
  EXPECT_EQ(qg.grid->at_level(9).size(), 10u);
  auto pts = parse_job(R"({"p":3,"vars":["x"],"job":"h-grid","grid":["1/3", 2]})");
  EXPECT_EQ(pts.grid->at_level(9).back(), Rational(2));
}

TEST(RunJob, DvrHGrid) {
  auto cfg = parse_job(R"({"p":3,"vars":["x"],"I":["x^2"],"J":["x^3"],"job":"h-grid","n_min":1,"n_max":4,"grid":"q-grid","s_max":"1"})");
  auto rep = run_job(cfg);
  std::vector<std::string> raw_at_one;
  for (const auto& row : rep.table.rows)
    if (row[2] == "1/1") raw_at_one.push_back(row[4]);
  EXPECT_EQ(raw_at_one, (std::vector<std::string>{"6", "18", "54", "162"}));
  EXPECT_EQ(rep.table.columns, (std::vector<std::string>{"n", "q", "s", "ceil_sq", "raw", "normalized"}));
}

TEST(RunJob, FThresholdJson) {
  auto cfg = parse_job(R"({"p":2,"vars":["x","y"],"I":["x","y"],"J":["x^2","x*y","y^2"],"job":"fthreshold","n":2})");
  auto rep = run_job(cfg);
  EXPECT_EQ(rep.json.dump(), R"({"invariant":"c_level","n":2,"value":10})");
}

TEST(RunJob, DeterministicAcrossThreadCounts) {
  auto cfg = parse_job(kPlane);
  auto a = run_job(cfg, {1}).render("csv");
  length_tables().clear();
  auto b = run_job(cfg, {4}).render("csv");
  EXPECT_EQ(a, b);
  EXPECT_EQ(run_job(cfg, {2}).render("json"), run_job(cfg, {3}).render("json"));
}

TEST(RunJob, EveryJobRuns) {
  const std::string base = R"("p":2,"vars":["x","y"],"I":["x","y"],"J":["x","y"],"n_min":1,"n_max":3,)";
  std::vector<std::string> extras{
      R"("job":"h-grid","grid":"q-grid")",
      R"("job":"density-grid","grid":"q-grid")",
      R"("job":"graded-density","grid":["1/2","1"])",
      R"("job":"ehk")",
      R"("job":"multiplicity")",
      R"("job":"fthreshold")",
      R"("job":"flimbus")",
      R"("job":"stable-point")",
      R"("job":"fp-grid","y":[0,[1,0],{"re":-2,"im":-0.5}])",
      R"("job":"convexity","s0":"1/2","grid":{"start":"1/2","stop":"2","step":"1/4"})",
      R"("job":"boij","j_max":6)",
      R"("job":"scaling-check","n0":2,"grid":["1/3","1","5/3"])",
      R"("job":"adjoin-check","alpha":1,"beta":2,"grid":["1/2","3/2"])",
      R"("job":"asymptotes")",
      R"("job":"inequalities","r":2,"grid":["1/4","1/2","1"])",
  };
  for (const auto& e : extras) {
    auto cfg = parse_job("{" + base + e + "}");
    Report rep;
    ASSERT_NO_THROW(rep = run_job(cfg)) << e;
    EXPECT_FALSE(rep.failed) << e;
    EXPECT_FALSE(rep.render("csv").empty());
    EXPECT_EQ(rep.render("json").back(), '\n');
  }
}

TEST(RunJob, RationalsAreNumDenStrings) {
  auto cfg = parse_job(kCusp);
  auto rep = run_job(cfg);
  EXPECT_TRUE(rep.json["estimate"]["value"].is_string());
  EXPECT_NE(rep.json["estimate"]["value"].get<std::string>().find('/'), std::string::npos);
}

TEST(ResultCache, RoundTripIsBitIdentical) {
  auto dir = temp_dir("cache");
  auto cfg = parse_job(kCusp);
  length_tables().clear();
  auto fresh = run_job(cfg).render("json");
  auto h = parse_job(R"({"p":2,"vars":["x","y"],"weights":[3,2],"relations":["x^2 - y^3"],"I":["x","y"],"J":["x","y"],"job":"h-grid","n_max":3,"grid":"q-grid"})");
  auto fresh_h = run_job(h).render("csv");
  ResultCache cache(dir);
  EXPECT_GT(cache.store_all(), 0u);

  length_tables().clear();
  cache.attach();
  auto cached_h = run_job(h).render("csv");
  length_tables().set_loader(nullptr);
  length_tables().clear();
  EXPECT_EQ(fresh_h, cached_h);
  EXPECT_EQ(run_job(cfg).render("json"), fresh);
  std::filesystem::remove_all(dir);
}

TEST(ResultCache, RejectsForeignKeys) {
  auto dir = temp_dir("foreign");
  ResultCache cache(dir);
  auto ring = RingSpec::make(2, {"x"});
  auto x = Ideal::parse(ring, {"x"});
  LengthTable table(x, x, 4);
  {
    std::ofstream out(cache.path_for(table.key()));
    out << R"({"key":"something else","values":[7,7,7],"stable":1})";
  }
  EXPECT_FALSE(cache.load(table.key(), table));
  EXPECT_EQ(table.raw(2), 2u);
  {
    std::ofstream out(cache.path_for(table.key()));
    out << "garbage";
  }
  EXPECT_FALSE(cache.load(table.key(), table));
  std::filesystem::remove_all(dir);
}

TEST(ResultCache, HashIsStable) {
  EXPECT_EQ(ResultCache::hash(""), "cbf29ce484222325");
  EXPECT_EQ(ResultCache::hash("a"), "af63dc4c8601ec8c");
}

TEST(Parallel, OrderAndErrors) {
  auto v = parallel_map(100, [](std::size_t i) { return static_cast<int>(i * i); }, 8);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i));
  try {
    parallel_map(
        50,
        [](std::size_t i) -> int {
          if (i == 7 || i == 30) throw DomainError("at " + std::to_string(i));
          return 0;
        },
        8);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "at 7");
  }
  EXPECT_TRUE(parallel_map(0, [](std::size_t) { return 1; }, 4).empty());
}

TEST(Cli, ExitCodes) {
  auto dir = temp_dir("cli");
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  auto ok = write("ok.json", kPlane);
  auto bad = write("bad.json", R"({"p":4,"vars":["x"],"job":"ehk"})");
  auto budget = write("budget.json",
                      R"({"p":2,"vars":["x","y","z"],"I":["x+y","y+z","x*z"],"J":["x^2+y*z","y^2","z^2+x*y"],"job":"h-grid","n_max":3,"grid":["2"],"budget":{"max_basis":1}})");
  auto domain = write("domain.json", R"({"p":2,"vars":["x","y"],"I":["x"],"J":["x^2"],"job":"h-grid","n_max":2,"grid":["1"]})");
  const std::string cache = " --cache-dir " + (dir / "cache").string();
  EXPECT_EQ(run_cli("h-grid --config " + ok + cache), 0);
  EXPECT_EQ(run_cli("h-grid --config " + ok + cache + " --verify-cache --threads 3"), 0);
  EXPECT_EQ(run_cli("h-grid --config " + ok + " --no-cache --format csv --out " + (dir / "o.csv").string()), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "o.csv"));
  EXPECT_EQ(run_cli("ehk --config " + bad), 1);
  EXPECT_EQ(run_cli("ehk"), 1);
  EXPECT_EQ(run_cli("h-grid --config " + ok + " --format xml"), 1);
  EXPECT_EQ(run_cli("h-grid --config " + budget + " --no-cache"), 2);
  EXPECT_EQ(run_cli("h-grid --config " + domain + " --no-cache"), 3);
  EXPECT_EQ(run_cli("verify"), 0);
  std::filesystem::remove_all(dir);
}
