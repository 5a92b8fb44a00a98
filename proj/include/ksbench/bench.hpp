#pragma once

#include <filesystem>
#include <vector>

#include "ksbench/core.hpp"
#include "ksbench/metrics.hpp"
#include "ksbench/phantom.hpp"
#include "ksbench/recon.hpp"

namespace ksb {

enum class ReconMethod : uint8_t {
  ZfRss = 0,
  ZfSense = 1,
  Cg = 2,
  UnrolledImage = 3,
  UnrolledKspace = 4,
};

const char* method_name(ReconMethod m);
ReconMethod method_from_name(const std::string& name);

struct BenchConfig {
  std::vector<Scheme> schemes = {
      Scheme::RandomRect, Scheme::EquispacedRect, Scheme::EquispacedPlusRect,
      Scheme::Gaussian1D, Scheme::VDPD,           Scheme::Gaussian2D,
      Scheme::Radial,     Scheme::Spiral};
  std::vector<double> accels = {2.0, 4.0, 8.0};
  std::vector<double> acs_fracs = {0.16, 0.08, 0.04};  // paired with accels
  int cases = 1;
  ReconMethod method = ReconMethod::Cg;
  uint64_t seed = 0;
  std::filesystem::path out_dir;

  GridShape shape = GridShape(64, 64);
  uint32_t n_coils = 8;
  PhantomKind phantom_kind = PhantomKind::RandomEllipses;
  int n_ellipses = 8;
  double noise_sigma = 0.0;
  double mask_tolerance = 0.10;
  CgConfig cg;
  UnrolledConfig unrolled;
  // 0 = KSBENCH_WORKERS env var, falling back to hardware concurrency
  unsigned workers = 0;
};

// Full retrospective sweep: per (case, scheme, R) generate the phantom and
// coils, simulate a noiseless (or noisy) acquisition, subsample with a
// per-cell seeded mask, estimate sensitivities from the subsampled ACS,
// reconstruct, and score against the fully sampled RSS ground truth.
// Writes <out_dir>/bench.csv plus one MSK1 file per cell; rows are sorted by
// (case, scheme, R) and byte-identical across runs and worker counts. A
// failing cell yields a NaN row and the sweep continues.
std::vector<ReconReport> run_bench(const BenchConfig& cfg);

}  // namespace ksb
