#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ksbench/bench.hpp"
#include "ksbench/io.hpp"

using namespace ksb;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& leaf) {
  const fs::path p = fs::temp_directory_path() / "ksbench_bench_tests" / leaf;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

BenchConfig small_config(const fs::path& out) {
  BenchConfig cfg;
  cfg.schemes = {Scheme::EquispacedRect, Scheme::Gaussian1D};
  cfg.accels = {4.0};
  cfg.acs_fracs = {0.08};
  cfg.cases = 2;
  cfg.method = ReconMethod::ZfSense;
  cfg.shape = GridShape(32, 32);
  cfg.n_coils = 4;
  cfg.seed = 7;
  cfg.out_dir = out;
  return cfg;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("method names round-trip") {
  for (int c = 0; c <= 4; ++c) {
    const ReconMethod m = ReconMethod(c);
    CHECK(method_from_name(method_name(m)) == m);
  }
  CHECK(std::string(method_name(ReconMethod::Cg)) == "cg");
  CHECK_THROWS_WITH_AS(method_from_name("tv"), doctest::Contains("unknown"),
                       ParamError);
}

TEST_CASE("a full sweep yields one row per case-scheme-acceleration cell") {
  const fs::path dir = fresh_dir("sweep");
  BenchConfig cfg;
  cfg.cases = 1;
  cfg.method = ReconMethod::ZfRss;
  cfg.seed = 3;
  cfg.out_dir = dir;
  const std::vector<ReconReport> reports = run_bench(cfg);
  CHECK(reports.size() == 24);  // 1 case x 8 schemes x 3 accelerations

  size_t idx = 0;
  for (size_t s = 0; s < cfg.schemes.size(); ++s)
    for (size_t a = 0; a < cfg.accels.size(); ++a, ++idx) {
      const ReconReport& r = reports[idx];
      CHECK(r.case_id == 0);
      CHECK(r.scheme == cfg.schemes[s]);
      CHECK(r.R == cfg.accels[a]);
      CHECK_FALSE(r.failed);
      CHECK(std::isfinite(r.metrics.ssim));
      CHECK(r.metrics.ssim > 0.0);
      CHECK(r.metrics.ssim <= 1.0);
      CHECK(std::isfinite(r.metrics.nmse));
      // per-cell mask artifact, readable and matching the cell key
      const fs::path mask_file =
          dir / ("mask_case0_" + std::string(scheme_name(r.scheme)) + "_R" +
                 csv_double(r.R) + ".msk");
      CHECK(fs::exists(mask_file));
      const SamplingMask m = read_mask(mask_file);
      CHECK(m.scheme == r.scheme);
      CHECK(m.accel_target == r.R);
    }
  CHECK(fs::exists(dir / "bench.csv"));
}

TEST_CASE("repeated runs are byte-identical") {
  const fs::path a = fresh_dir("repeat_a");
  const fs::path b = fresh_dir("repeat_b");
  run_bench(small_config(a));
  run_bench(small_config(b));
  CHECK(file_bytes(a / "bench.csv") == file_bytes(b / "bench.csv"));
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    CHECK(fs::exists(other));
    CHECK(file_bytes(entry.path()) == file_bytes(other));
  }
}

TEST_CASE("worker count does not change the outputs") {
  const fs::path a = fresh_dir("workers_1");
  const fs::path b = fresh_dir("workers_4");
  BenchConfig one = small_config(a);
  one.workers = 1;
  BenchConfig four = small_config(b);
  four.workers = 4;
  run_bench(one);
  run_bench(four);
  CHECK(file_bytes(a / "bench.csv") == file_bytes(b / "bench.csv"));
  for (const auto& entry : fs::directory_iterator(a))
    CHECK(file_bytes(entry.path()) == file_bytes(b / entry.path().filename()));
}

TEST_CASE("configuration validation") {
  BenchConfig cfg = small_config(fresh_dir("validate"));
  cfg.cases = 0;
  CHECK_THROWS_AS(run_bench(cfg), ParamError);

  cfg = small_config(fresh_dir("validate"));
  cfg.acs_fracs = {0.08, 0.04};  // one per acceleration required
  CHECK_THROWS_WITH_AS(run_bench(cfg), doctest::Contains("ACS fraction"),
                       ParamError);

  cfg = small_config(fresh_dir("validate"));
  cfg.schemes.clear();
  CHECK_THROWS_AS(run_bench(cfg), ParamError);

  cfg = small_config(fresh_dir("validate"));
  cfg.out_dir.clear();
  CHECK_THROWS_AS(run_bench(cfg), ParamError);
}

TEST_CASE("an infeasible cell fails alone and the sweep continues") {
  const fs::path dir = fresh_dir("failure");
  BenchConfig cfg;
  // 16 lines of ACS but an R=16 budget of 2 lines: mask generation throws
  cfg.schemes = {Scheme::RandomRect};
  cfg.accels = {16.0, 4.0};
  cfg.acs_fracs = {0.5, 0.08};
  cfg.cases = 1;
  cfg.method = ReconMethod::ZfRss;
  cfg.shape = GridShape(32, 32);
  cfg.n_coils = 2;
  cfg.out_dir = dir;
  const std::vector<ReconReport> reports = run_bench(cfg);
  REQUIRE(reports.size() == 2);

  CHECK(reports[0].failed);
  CHECK_FALSE(reports[0].error.empty());
  CHECK(std::isnan(reports[0].metrics.ssim));
  CHECK(std::isnan(reports[0].metrics.nmse));

  CHECK_FALSE(reports[1].failed);
  CHECK(std::isfinite(reports[1].metrics.ssim));

  // the CSV still carries the failed row, flagged as nan
  const std::string csv = file_bytes(dir / "bench.csv");
  CHECK(csv.find("random,16") != std::string::npos);
  CHECK(csv.find("random,4") != std::string::npos);
  CHECK(csv.find("nan") != std::string::npos);
}

}  // TEST_SUITE("bench")
