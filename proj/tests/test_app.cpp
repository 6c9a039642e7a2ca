// Measures, sweeps, CSV/JSON output and the cvw executable.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "cvw/app/figures.hpp"
#include "cvw/app/measures.hpp"
#include "cvw/app/sweep.hpp"

using namespace cvw::app;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cvw(const std::string& args) {
  const std::string cmd = std::string(CVW_BINARY) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("cvw_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

// ---- ranges and formatting

TEST(Range, Forms) {
  EXPECT_EQ(parse_range("0.5"), std::vector<double>{0.5});
  EXPECT_EQ(parse_range("0.1,0.5,0.9"), (std::vector<double>{0.1, 0.5, 0.9}));
  const auto r = parse_range("0:1:0.1");
  ASSERT_EQ(r.size(), 11u);
  EXPECT_EQ(r[3], 0.3);
  EXPECT_EQ(r.back(), 1.0);
  EXPECT_EQ(parse_range("0:0.98:0.02").size(), 50u);
}

TEST(Range, Rejects) {
  EXPECT_THROW(parse_range(""), cvw::domain_error);
  EXPECT_THROW(parse_range("1:0:0.1"), cvw::domain_error);
  EXPECT_THROW(parse_range("0:1:0"), cvw::domain_error);
  EXPECT_THROW(parse_range("0:1"), cvw::domain_error);
  EXPECT_THROW(parse_range("0.5x"), cvw::domain_error);
}

TEST(Format, TwelveDigits) {
  EXPECT_EQ(format_number(0.1 + 0.2), "0.3");
  EXPECT_EQ(format_number(0.224717318691100), "0.224717318691");
}

// ---- measures

TEST(Measures, AllRegisteredAndComputable) {
  PointParams in;
  in.mu = 0.8;
  in.t = 1.0;
  in.samples = 2000;
  for (const auto& m : measures()) {
    if (m.name == "gaussian-discord" || m.name == "gap") continue;  // covered below, slower
    const auto r = compute(m.name, in);
    EXPECT_EQ(r.results.size(), m.results.size()) << m.name;
    EXPECT_EQ(r.labels.size(), m.labels.size()) << m.name;
  }
  EXPECT_THROW(find_measure("nope"), unknown_measure);
}

TEST(Measures, Discord0Value) {
  const auto r = compute("discord0", {});
  EXPECT_NEAR(r.result("discord"), 0.2247173186911004, 1e-14);
  EXPECT_EQ(r.n_max, 0u);
}

TEST(Measures, BoundsRegionLabel) {
  PointParams in;
  in.p = 0.05;
  in.mu = 0.8;
  in.lambda = round12(std::pow(0.8, 4));
  const auto r = compute("bounds", in);
  EXPECT_EQ(r.labels.at(0).second, "separable");
  EXPECT_GE(r.result("L_clipped"), 0.0);
}

TEST(Measures, DomainErrorsPropagate) {
  PointParams in;
  in.p = 1.5;
  EXPECT_THROW(compute("discord0", in), cvw::domain_error);
}

TEST(Measures, Units) {
  EXPECT_EQ(column_unit("discord"), "nats");
  EXPECT_EQ(column_unit("p_sep"), "");
  EXPECT_EQ(column_unit("normalization"), "");
}

// ---- sweeps and tables

TEST(Sweep, OrderedAndRoundTripsThroughCsv) {
  SweepSpec spec;
  spec.measure = "discord0";
  spec.p = parse_range("0:1:0.25");
  spec.lambda = {0.2, 0.7};
  spec.mu = {0.1, 0.2};  // unused by discord0: collapses to one value
  spec.threads = 3;
  const auto table = run_sweep(spec);
  ASSERT_EQ(table.rows.size(), 10u);
  EXPECT_EQ(table.failures(), 0u);
  EXPECT_EQ(table.rows[1].params.lambda, 0.7);
  EXPECT_EQ(table.rows[2].params.p, 0.25);

  std::stringstream buf;
  write_csv(buf, table);
  const auto csv = read_csv(buf);
  EXPECT_EQ(csv.header.front(), "p");
  EXPECT_EQ(csv.header.back(), "error");
  ASSERT_EQ(csv.rows.size(), 10u);
  const auto col = csv.column("discord[nats]");
  for (std::size_t i = 0; i < 10; ++i) {
    const double expected = table.rows[i].report.result("discord");
    EXPECT_NEAR(std::stod(csv.rows[i][col]), expected, 5e-12 * std::max(1.0, expected));
    EXPECT_EQ(csv.rows[i].size(), csv.header.size());
  }
}

TEST(Sweep, FailedRowsAreReportedNotDropped) {
  SweepSpec spec;
  spec.measure = "discord0";
  spec.p = {0.5, 1.5};
  spec.lambda = {0.5};
  const auto table = run_sweep(spec);
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.failures(), 1u);
  std::stringstream buf;
  write_csv(buf, table);
  const auto csv = read_csv(buf);
  EXPECT_FALSE(csv.rows[1][csv.column("error")].empty());
  EXPECT_TRUE(csv.rows[1][csv.column("discord[nats]")].empty());
  const auto j = to_json(table);
  EXPECT_TRUE(j[1].contains("error"));
}

TEST(Csv, QuotedFields) {
  const auto f = split_csv_line("a,\"b,c\",\"say \"\"hi\"\"\",");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[1], "b,c");
  EXPECT_EQ(f[2], "say \"hi\"");
  EXPECT_EQ(f[3], "");
}

TEST(Json, ReportShape) {
  const auto j = to_json(compute("ppt-bounds", {}));
  EXPECT_EQ(j["measure"], "ppt-bounds");
  EXPECT_NEAR(j["results"]["U"].get<double>(), 0.5 * std::log(2.0), 1e-12);
  EXPECT_EQ(j["units"]["U"], "nats");
  EXPECT_FALSE(j["units"].contains("norm_const"));
}

// ---- figures

TEST(Figures, WritesCsvAndStub) {
  const auto dir = scratch_dir("fig");
  const auto out = write_figure("fig-bounds-mu4", dir);
  EXPECT_EQ(out.failed_rows, 0u);
  ASSERT_EQ(out.files.size(), 3u);
  for (const auto& f : out.files) EXPECT_TRUE(fs::exists(f)) << f;
  std::ifstream fh(dir / "fig-bounds-mu4.csv");
  const auto csv = read_csv(fh);
  EXPECT_EQ(csv.rows.size(), 101u);
  fs::remove_all(dir);
}

TEST(Figures, Registry) {
  for (const char* name : {"fig-surface", "fig-gaussian", "fig-gap", "fig-bounds-eq", "fig-bounds-mu4", "fig-ppt"})
    EXPECT_NO_THROW(find_figure(name)) << name;
  EXPECT_THROW(find_figure("fig-none"), unknown_measure);
}

// ---- command line

TEST(Cli, ComputeJson) {
  const auto r = run_cvw("compute discord0 --p 0.5 --lambda 0.5");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["results"]["discord"].get<double>(), 0.224717318691, 1e-12);
}

TEST(Cli, ComputeRegion) {
  const auto r = run_cvw("compute region --mu 0.8 --p 0.05");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["results"]["region"], "separable");
}

TEST(Cli, SweepCsv) {
  const auto r = run_cvw("sweep ppt-bounds --lambda 0.1,0.5 --format csv");
  ASSERT_EQ(r.code, 0);
  std::stringstream s(r.out);
  const auto csv = read_csv(s);
  ASSERT_EQ(csv.rows.size(), 2u);
  EXPECT_NEAR(std::stod(csv.rows[1][csv.column("U[nats]")]), 0.5 * std::log(2.0), 1e-11);
}

TEST(Cli, ConfigFile) {
  const auto dir = scratch_dir("cfg");
  {
    std::ofstream cfg(dir / "run.ini");
    cfg << "p=0.3\nlambda=0.6\n";
  }
  const auto r = run_cvw("--config " + (dir / "run.ini").string() + " compute discord0");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["inputs"]["p"].get<double>(), 0.3);
  EXPECT_DOUBLE_EQ(j["inputs"]["lambda"].get<double>(), 0.6);
  fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cvw("compute nope").code, 2);
  EXPECT_EQ(run_cvw("").code, 2);
  EXPECT_EQ(run_cvw("compute discord0 --bogus 1").code, 2);
  EXPECT_EQ(run_cvw("compute discord0 --p 1.5").code, 3);
  EXPECT_EQ(run_cvw("compute discord0 --lambda 1").code, 3);
  EXPECT_EQ(run_cvw("sweep discord0 --p 0.5,1.5").code, 4);
  EXPECT_EQ(run_cvw("compute discord0 --out /nonexistent_dir/x.json").code, 5);
}
