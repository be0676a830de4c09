#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "kgc/formats.hpp"

namespace kgc {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  return (std::filesystem::path(KGC_GOLDEN_DIR) / name).string();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("kgc_cli_test_" + name);
}

TEST(Cli, OmegaOfCommutingLoops) {
  const CliRun r = run({"omega", golden("loops.skel")});
  EXPECT_EQ(r.code, cli::kAffirmative);
  EXPECT_EQ(r.out, "omega = 1+0i\n");
  EXPECT_EQ(run({"omega", golden("loops.2graph")}).out, "omega = 1+0i\n");
}

TEST(Cli, RealizeOmegaI) {
  const CliRun r = run({"realize", golden("omega_i.skel")});
  EXPECT_EQ(r.code, cli::kNegative);
  EXPECT_EQ(first_line(r.out), "NOT_REALIZABLE");
}

TEST(Cli, RealizeWritesWitness) {
  const auto path = temp_path("witness.2graph");
  const CliRun r = run({"realize", golden("roses.skel"), "-o", path.string()});
  EXPECT_EQ(r.code, cli::kAffirmative);
  EXPECT_EQ(first_line(r.out), "REALIZABLE");
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_TRUE(validate_kgraph(parse_presentation(text.str())).valid);
  std::filesystem::remove(path);
}

TEST(Cli, EnumerateLoops) {
  const CliRun r = run({"enumerate", golden("loop1.kg"), golden("loop2.kg")});
  EXPECT_EQ(r.code, cli::kAffirmative);
  EXPECT_EQ(r.out.find("# presentation 2"), std::string::npos);
  EXPECT_NE(r.out.find("# presentation 1\nkgc-2graph v1\n"), std::string::npos);
  EXPECT_NE(r.out.find("# count 1\n"), std::string::npos);
  // The listed document parses back.
  const auto start = r.out.find("kgc-2graph");
  const auto stop = r.out.find("# count");
  EXPECT_NO_THROW(parse_presentation(r.out.substr(start, stop - start)));
}

TEST(Cli, EnumerateLimit) {
  const CliRun r = run({"enumerate", golden("rose2.kg"), golden("rose2.kg"), "--limit", "3"});
  EXPECT_EQ(r.code, cli::kAffirmative);
  EXPECT_NE(r.out.find("# count 3\n# truncated\n"), std::string::npos);
}

TEST(Cli, Validate) {
  EXPECT_EQ(run({"validate", golden("cycles.2graph")}).code, cli::kAffirmative);
  const auto path = temp_path("bad.2graph");
  {
    std::ofstream out(path);
    out << "kgc-2graph v1\nvertices 1\nk 2\ngraph 1\nedges 2\ne0 r=0 s=0\ne1 r=0 s=0\nend\n"
           "graph 2\nedges 1\nf r=0 s=0\nend\nsquares 1 2\ne0 f -> f e0\nend\n";
  }
  const CliRun r = run({"validate", path.string()});
  EXPECT_EQ(r.code, cli::kNegative);
  EXPECT_EQ(first_line(r.out), "INVALID");
  EXPECT_EQ(run({"skeleton", path.string()}).code, cli::kNegative);
  std::filesystem::remove(path);
}

TEST(Cli, SkeletonMatchesGolden) {
  std::ifstream in(golden("roses.skel"));
  std::stringstream expected;
  expected << in.rdbuf();
  EXPECT_EQ(run({"skeleton", golden("roses.2graph")}).out, expected.str());
}

TEST(Cli, Hexagon) {
  const CliRun r = run({"hexagon", golden("loops3.kgraph")});
  EXPECT_EQ(r.code, cli::kAffirmative);
  EXPECT_EQ(first_line(r.out), "PASS");
  EXPECT_NE(run({"hexagon", golden("roses.skel")}).out.find("vacuous yes"), std::string::npos);
}

TEST(Cli, Iso) {
  CliRun r = run({"iso", golden("mixed.skel"), golden("mixed.skel")});
  EXPECT_EQ(r.code, cli::kAffirmative);
  EXPECT_EQ(first_line(r.out), "ISOMORPHIC");
  r = run({"iso", golden("omega_i.skel"), golden("loops.skel")});
  EXPECT_EQ(r.code, cli::kNegative);
  EXPECT_EQ(first_line(r.out), "NOT_ISOMORPHIC");
}

TEST(Cli, IsoUnknown) {
  // mixed.skel against the literal flip: T has a different spectrum.
  const auto path = temp_path("flip.skel");
  {
    std::ofstream out(path);
    out << "kgc-skeleton v1\nvertices 1\nk 2\ndim Y1\n1\ndim Y2\n2\nT 1 2\nblock r=0 s=0\n"
           "1+0i 0+0i\n0+0i 1+0i\n";
  }
  const CliRun r = run({"iso", golden("mixed.skel"), path.string(), "--restarts", "2"});
  EXPECT_EQ(r.code, cli::kUnknown);
  EXPECT_EQ(first_line(r.out), "UNKNOWN");
  std::filesystem::remove(path);
}

TEST(Cli, Imprimitivity) {
  CliRun r = run({"imprimitivity", golden("swap.corr")});
  EXPECT_EQ(r.code, cli::kAffirmative);
  EXPECT_NE(r.out.find("permutation 1 0\n"), std::string::npos);
  r = run({"imprimitivity", golden("upper.corr")});
  EXPECT_EQ(r.code, cli::kNegative);
  EXPECT_EQ(first_line(r.out), "NOT_IMPRIMITIVITY");
  EXPECT_EQ(run({"imprimitivity", golden("cycle2.kg")}).code, cli::kAffirmative);
}

TEST(Cli, Tensor) {
  CliRun r = run({"tensor", golden("upper.corr"), golden("swap.corr")});
  EXPECT_EQ(r.code, cli::kAffirmative);
  EXPECT_EQ(r.out, "kgc-corr v1\nvertices 2\ndim\n2 1\n1 0\n");
  r = run({"tensor", golden("cycle2.kg"), golden("cycle2.kg")});
  EXPECT_EQ(r.out, "kgc-graph v1\nvertices 2\nedges 2\n(a,b) r=0 s=0\n(b,a) r=1 s=1\n");
  EXPECT_EQ(run({"tensor", golden("cycle2.kg"), golden("loop1.kg")}).code, cli::kUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"omega"}).code, cli::kUsage);
  EXPECT_EQ(run({"iso", golden("loops.skel")}).code, cli::kUsage);
  EXPECT_EQ(run({"omega", golden("roses.skel")}).code, cli::kUsage);
  EXPECT_EQ(run({"omega", golden("swap.corr")}).code, cli::kUsage);
  EXPECT_EQ(run({"omega", "/nonexistent/file"}).code, cli::kUsage);
  EXPECT_EQ(run({"iso", golden("loops.skel"), golden("loops.skel"), "--seed", "x"}).code,
            cli::kUsage);
  const CliRun r = run({"validate", golden("loop1.kg"), "--bogus"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ParseErrorReportsPosition) {
  const auto path = temp_path("broken.kg");
  {
    std::ofstream out(path);
    out << "kgc-graph v1\nvertices 1\nedges 1\ne r=0 s=3\n";
  }
  const CliRun r = run({"validate", path.string()});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find(":4:7:"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::vector<std::string>> commands = {
      {"iso", golden("roses.skel"), golden("roses.skel"), "--seed", "5"},
      {"realize", golden("roses.skel"), "--seed", "5"},
      {"enumerate", golden("rose2.kg"), golden("rose2.kg")},
  };
  for (const auto& c : commands) {
    const CliRun a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

}  // namespace
}  // namespace kgc
