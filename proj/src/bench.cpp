#include "ksbench/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "ksbench/calib.hpp"
#include "ksbench/io.hpp"
#include "ksbench/masks.hpp"
#include "ksbench/operators.hpp"
#include "ksbench/rng.hpp"

namespace ksb {

const char* method_name(ReconMethod m) {
  switch (m) {
    case ReconMethod::ZfRss: return "zf-rss";
    case ReconMethod::ZfSense: return "zf-sense";
    case ReconMethod::Cg: return "cg";
    case ReconMethod::UnrolledImage: return "unrolled-image";
    case ReconMethod::UnrolledKspace: return "unrolled-kspace";
  }
  throw ParamError("method_name: unknown method code " + std::to_string(int(m)));
}

ReconMethod method_from_name(const std::string& name) {
  for (int c = 0; c <= 4; ++c)
    if (name == method_name(ReconMethod(c))) return ReconMethod(c);
  throw ParamError("unknown reconstruction method '" + name + "'");
}

namespace {

struct Cell {
  int case_id;
  size_t scheme_idx;
  size_t accel_idx;
};

unsigned pick_workers(const BenchConfig& cfg) {
  if (cfg.workers > 0) return cfg.workers;
  if (const char* env = std::getenv("KSBENCH_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return unsigned(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::string mask_filename(const BenchConfig& cfg, const Cell& cell) {
  return "mask_case" + std::to_string(cell.case_id) + "_" +
         scheme_name(cfg.schemes[cell.scheme_idx]) + "_R" +
         csv_double(cfg.accels[cell.accel_idx]) + ".msk";
}

}  // namespace

std::vector<ReconReport> run_bench(const BenchConfig& cfg) {
  if (cfg.cases < 1) throw ParamError("run_bench: cases must be >= 1");
  if (cfg.schemes.empty() || cfg.accels.empty())
    throw ParamError("run_bench: schemes and accels must be nonempty");
  if (cfg.accels.size() != cfg.acs_fracs.size())
    throw ParamError("run_bench: need one ACS fraction per acceleration");
  if (cfg.out_dir.empty()) throw ParamError("run_bench: output directory not set");
  std::filesystem::create_directories(cfg.out_dir);

  std::vector<Cell> cells;
  for (int c = 0; c < cfg.cases; ++c)
    for (size_t s = 0; s < cfg.schemes.size(); ++s)
      for (size_t a = 0; a < cfg.accels.size(); ++a)
        cells.push_back(Cell{c, s, a});

  std::vector<ReconReport> reports(cells.size());
  std::atomic<size_t> next{0};

  auto run_cell = [&](const Cell& cell, ReconReport& rep) {
    const Scheme scheme = cfg.schemes[cell.scheme_idx];
    const double R = cfg.accels[cell.accel_idx];
    rep.case_id = cell.case_id;
    rep.scheme = scheme;
    rep.R = R;
    try {
      // one phantom/coil pair per case, one mask per cell
      PhantomSpec pspec{cfg.shape, cfg.phantom_kind, cfg.n_ellipses,
                        derive_seed(cfg.seed, uint64_t(cell.case_id), 0x9A11)};
      const RealImage truth_img = make_phantom(pspec);
      CoilArraySpec cspec;
      cspec.n_c = cfg.n_coils;
      cspec.seed = derive_seed(cfg.seed, uint64_t(cell.case_id), 0xC01E);
      const SensitivityMaps true_maps = make_coils(cspec, cfg.shape);

      const MultiCoilKSpace ksp_full = simulate_acquisition(
          truth_img, true_maps, cfg.noise_sigma,
          derive_seed(cfg.seed, uint64_t(cell.case_id), 0xAC01));

      SchemeParams mp;
      mp.scheme = scheme;
      mp.accel = AccelerationSpec(R, cfg.acs_fracs[cell.accel_idx],
                                  cfg.mask_tolerance);
      mp.seed = derive_seed(cfg.seed, uint64_t(cell.case_id),
                            uint64_t(cell.scheme_idx), uint64_t(cell.accel_idx));
      const SamplingMask mask = generate(cfg.shape, mp);
      write_mask(cfg.out_dir / mask_filename(cfg, cell), mask);

      const MultiCoilKSpace y_sub = apply_mask(ksp_full, mask);
      const SensitivityMaps est_maps = estimate_sensitivities(y_sub, mask);

      RealImage recon;
      switch (cfg.method) {
        case ReconMethod::ZfRss:
          recon = zero_filled(y_sub, Combine::Rss);
          break;
        case ReconMethod::ZfSense:
          recon = zero_filled(y_sub, Combine::Sense, &est_maps);
          break;
        case ReconMethod::Cg:
          recon = cg_sense(y_sub, mask, est_maps, cfg.cg);
          break;
        case ReconMethod::UnrolledImage: {
          UnrolledConfig uc = cfg.unrolled;
          uc.domain = UnrollDomain::Image;
          recon = unrolled_recon(y_sub, mask, est_maps, uc);
          break;
        }
        case ReconMethod::UnrolledKspace: {
          UnrolledConfig uc = cfg.unrolled;
          uc.domain = UnrollDomain::Kspace;
          recon = unrolled_recon(y_sub, mask, est_maps, uc);
          break;
        }
      }

      const RealImage truth = zero_filled(ksp_full, Combine::Rss);
      rep.metrics = score(truth, recon);
      rep.failed = false;
    } catch (const std::exception& e) {
      rep.failed = true;
      rep.error = e.what();
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rep.metrics = MetricRecord{nan, nan, nan};
    }
  };

  const unsigned workers =
      std::min<unsigned>(pick_workers(cfg), unsigned(cells.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < cells.size(); ++i) run_cell(cells[i], reports[i]);
  } else {
    // work-stealing over a shared index; each cell writes only its own slot,
    // so the result order (and every output byte) is independent of timing
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          run_cell(cells[i], reports[i]);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  write_metrics_csv(cfg.out_dir / "bench.csv", reports);
  return reports;
}

}  // namespace ksb
