// ksbench — retrospective k-space subsampling and parallel-MRI
// reconstruction benchmark. Subcommands wire the library pipeline:
// phantom -> mask gen -> subsample -> estimate-sens -> recon -> eval, plus a
// bench sweep over schemes and accelerations.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "ksbench/bench.hpp"
#include "ksbench/calib.hpp"
#include "ksbench/io.hpp"
#include "ksbench/masks.hpp"
#include "ksbench/operators.hpp"

namespace {

using namespace ksb;

GridShape parse_shape(const std::string& text) {
  const size_t x = text.find('x');
  if (x == std::string::npos || x == 0 || x + 1 >= text.size())
    throw ParamError("--shape expects HxW, e.g. 64x64");
  try {
    const unsigned long rows = std::stoul(text.substr(0, x));
    const unsigned long cols = std::stoul(text.substr(x + 1));
    return GridShape(uint32_t(rows), uint32_t(cols));
  } catch (const std::logic_error&) {
    throw ParamError("--shape expects HxW, e.g. 64x64");
  }
}

MultiCoilKSpace to_complex_stack(const RealImage& img) {
  MultiCoilKSpace out(1, img.shape);
  for (size_t i = 0; i < img.data.size(); ++i)
    out.data[i] = cxd{img.data[i], 0.0};
  return out;
}

RealImage magnitude_of(const MultiCoilKSpace& stack, size_t coil) {
  RealImage out(stack.shape);
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = std::abs(stack.coil(coil)[i]);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"retrospective k-space subsampling + reconstruction benchmark"};
  app.require_subcommand(1);
  app.set_config("--config", "", "plain key=value config file; flags override");

  // ---- phantom ----
  std::string ph_shape = "64x64", ph_kind = "ellipse", ph_out, ph_pgm;
  int ph_ellipses = 8;
  uint64_t ph_seed = 0;
  auto* ph = app.add_subcommand("phantom", "render a synthetic phantom (KSR, 1 coil)");
  ph->add_option("--shape", ph_shape, "grid HxW");
  ph->add_option("--kind", ph_kind, "ellipse | random")
      ->check(CLI::IsMember({"ellipse", "random"}));
  ph->add_option("--ellipses", ph_ellipses, "ellipse count for --kind random");
  ph->add_option("--seed", ph_seed, "RNG seed");
  ph->add_option("--out", ph_out, "output .ksr path")->required();
  ph->add_option("--pgm", ph_pgm, "optional PGM preview path");

  // ---- mask gen ----
  std::string mk_scheme = "vdpd", mk_shape = "64x64", mk_out, mk_pgm;
  double mk_accel = 4.0, mk_acs = 0.08, mk_tol = 0.10;
  uint64_t mk_seed = 0;
  int64_t mk_offset = 0;
  bool mk_has_offset = false;
  auto* mask_cmd = app.add_subcommand("mask", "sampling mask operations");
  auto* mg = mask_cmd->add_subcommand("gen", "generate a subsampling mask");
  mg->add_option("--scheme", mk_scheme,
                 "random | equispaced | equispaced_plus | gaussian1d | vdpd | "
                 "gaussian2d | radial | spiral");
  mg->add_option("--shape", mk_shape, "grid HxW");
  mg->add_option("--accel", mk_accel, "target acceleration R");
  mg->add_option("--acs-frac", mk_acs, "ACS fraction (0 disables)");
  mg->add_option("--tolerance", mk_tol, "relative acceleration tolerance");
  mg->add_option("--seed", mk_seed, "RNG seed");
  mg->add_option("--offset", mk_offset, "start/rotation offset")
      ->each([&](const std::string&) { mk_has_offset = true; });
  mg->add_option("--out", mk_out, "output .msk path")->required();
  mg->add_option("--pgm", mk_pgm, "optional PGM preview path");

  // ---- subsample ----
  std::string ss_in, ss_mask, ss_out;
  auto* ss = app.add_subcommand("subsample", "apply a mask to k-space");
  ss->add_option("--in", ss_in, "input .ksr")->required();
  ss->add_option("--mask", ss_mask, "mask .msk")->required();
  ss->add_option("--out", ss_out, "output .ksr")->required();

  // ---- estimate-sens ----
  std::string es_in, es_mask, es_out;
  auto* es = app.add_subcommand("estimate-sens",
                                "estimate coil sensitivities from the ACS");
  es->add_option("--in", es_in, "subsampled .ksr")->required();
  es->add_option("--mask", es_mask, "mask .msk with ACS")->required();
  es->add_option("--out", es_out, "output sensitivity .ksr")->required();

  // ---- recon ----
  std::string rc_in, rc_mask, rc_sens, rc_method = "cg", rc_out, rc_pgm;
  double rc_lambda = 1e-4, rc_rtol = 1e-6, rc_alpha = 1.0;
  unsigned rc_iters = 50, rc_steps = 8;
  auto* rc = app.add_subcommand("recon", "reconstruct from subsampled k-space");
  rc->add_option("--in", rc_in, "subsampled .ksr")->required();
  rc->add_option("--mask", rc_mask, "mask .msk")->required();
  rc->add_option("--sens", rc_sens, "sensitivity .ksr (estimated when absent)");
  rc->add_option("--method", rc_method,
                 "zf-rss | zf-sense | cg | unrolled-image | unrolled-kspace");
  rc->add_option("--lambda", rc_lambda, "Tikhonov weight (cg)");
  rc->add_option("--iters", rc_iters, "max CG iterations");
  rc->add_option("--rtol", rc_rtol, "CG relative residual stop");
  rc->add_option("--steps", rc_steps, "unrolled time-steps T");
  rc->add_option("--alpha", rc_alpha, "unrolled step size");
  rc->add_option("--out", rc_out, "output magnitude .ksr (1 coil)")->required();
  rc->add_option("--pgm", rc_pgm, "optional PGM preview path");

  // ---- eval ----
  std::string ev_ref, ev_pred, ev_out, ev_scheme = "random";
  int ev_case = 0;
  double ev_r = 0.0;
  auto* ev = app.add_subcommand("eval", "score a reconstruction against a reference");
  ev->add_option("--ref", ev_ref, "reference .ksr (magnitude of coil 0)")->required();
  ev->add_option("--pred", ev_pred, "prediction .ksr")->required();
  ev->add_option("--out", ev_out, "output metrics .csv")->required();
  ev->add_option("--case", ev_case, "case id for the CSV row");
  ev->add_option("--scheme", ev_scheme, "scheme label for the CSV row");
  ev->add_option("--R", ev_r, "acceleration label for the CSV row");

  // ---- bench ----
  BenchConfig bc;
  std::string bn_shape = "64x64", bn_method = "cg", bn_out,
              bn_kind = "random";
  std::vector<std::string> bn_schemes;
  auto* bn = app.add_subcommand("bench", "scheme x acceleration sweep");
  bn->add_option("--cases", bc.cases, "number of phantom cases");
  bn->add_option("--schemes", bn_schemes, "subset of schemes (default all 8)")
      ->delimiter(',');
  bn->add_option("--accels", bc.accels, "acceleration factors")->delimiter(',');
  bn->add_option("--acs-fracs", bc.acs_fracs, "ACS fraction per acceleration")
      ->delimiter(',');
  bn->add_option("--shape", bn_shape, "grid HxW");
  bn->add_option("--coils", bc.n_coils, "simulated coil count");
  bn->add_option("--method", bn_method, "reconstruction method");
  bn->add_option("--phantom-kind", bn_kind, "ellipse | random")
      ->check(CLI::IsMember({"ellipse", "random"}));
  bn->add_option("--ellipses", bc.n_ellipses, "ellipses per random phantom");
  bn->add_option("--noise", bc.noise_sigma, "k-space noise std");
  bn->add_option("--seed", bc.seed, "sweep seed");
  bn->add_option("--lambda", bc.cg.lambda, "CG Tikhonov weight");
  bn->add_option("--workers", bc.workers,
                 "worker threads (default KSBENCH_WORKERS or all cores)");
  bn->add_option("--out", bn_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (ph->parsed()) {
    PhantomSpec spec{parse_shape(ph_shape),
                     ph_kind == "ellipse" ? PhantomKind::EllipseStandard
                                          : PhantomKind::RandomEllipses,
                     ph_ellipses, ph_seed};
    const RealImage img = make_phantom(spec);
    write_ksr(ph_out, to_complex_stack(img));
    if (!ph_pgm.empty()) write_image_pgm(ph_pgm, img);
    std::printf("phantom %s written to %s\n", ph_kind.c_str(), ph_out.c_str());
    return 0;
  }

  if (mg->parsed()) {
    SchemeParams params;
    params.scheme = scheme_from_name(mk_scheme);
    params.accel = AccelerationSpec(mk_accel, mk_acs, mk_tol);
    params.seed = mk_seed;
    if (mk_has_offset) params.offset = mk_offset;
    const SamplingMask m = generate(parse_shape(mk_shape), params);
    write_mask(mk_out, m);
    if (!mk_pgm.empty()) write_mask_pgm(mk_pgm, m);
    std::printf("%s mask R=%g achieved=%.4f written to %s\n", mk_scheme.c_str(),
                mk_accel, m.accel_achieved, mk_out.c_str());
    return 0;
  }

  if (ss->parsed()) {
    const MultiCoilKSpace ksp = read_ksr(ss_in);
    const SamplingMask m = read_mask(ss_mask);
    write_ksr(ss_out, apply_mask(ksp, m));
    std::printf("subsampled %s -> %s (R=%.4f)\n", ss_in.c_str(), ss_out.c_str(),
                m.accel_achieved);
    return 0;
  }

  if (es->parsed()) {
    const MultiCoilKSpace ksp = read_ksr(es_in);
    const SamplingMask m = read_mask(es_mask);
    const SensitivityMaps maps = estimate_sensitivities(ksp, m);
    MultiCoilKSpace out(maps.n_c, maps.shape);
    out.data = maps.data;
    write_ksr(es_out, out);
    std::printf("sensitivities (%u coils) written to %s\n", maps.n_c,
                es_out.c_str());
    return 0;
  }

  if (rc->parsed()) {
    const MultiCoilKSpace ksp = read_ksr(rc_in);
    const SamplingMask m = read_mask(rc_mask);
    SensitivityMaps maps;
    const ReconMethod method = method_from_name(rc_method);
    if (method != ReconMethod::ZfRss) {
      if (!rc_sens.empty()) {
        const MultiCoilKSpace s = read_ksr(rc_sens);
        maps = SensitivityMaps(s.n_c, s.shape);
        maps.data = s.data;
        maps = normalize(maps);
      } else {
        maps = estimate_sensitivities(ksp, m);
      }
    }
    RealImage img;
    switch (method) {
      case ReconMethod::ZfRss: img = zero_filled(ksp, Combine::Rss); break;
      case ReconMethod::ZfSense:
        img = zero_filled(ksp, Combine::Sense, &maps);
        break;
      case ReconMethod::Cg: {
        CgConfig cc{rc_lambda, rc_iters, rc_rtol};
        img = cg_sense(ksp, m, maps, cc);
        break;
      }
      case ReconMethod::UnrolledImage:
      case ReconMethod::UnrolledKspace: {
        UnrolledConfig uc;
        uc.T = rc_steps;
        uc.alphas = {rc_alpha};
        uc.domain = method == ReconMethod::UnrolledImage ? UnrollDomain::Image
                                                         : UnrollDomain::Kspace;
        img = unrolled_recon(ksp, m, maps, uc);
        break;
      }
    }
    write_ksr(rc_out, to_complex_stack(img));
    if (!rc_pgm.empty()) write_image_pgm(rc_pgm, img);
    std::printf("%s reconstruction written to %s\n", rc_method.c_str(),
                rc_out.c_str());
    return 0;
  }

  if (ev->parsed()) {
    const RealImage ref = magnitude_of(read_ksr(ev_ref), 0);
    const RealImage pred = magnitude_of(read_ksr(ev_pred), 0);
    ReconReport rep;
    rep.case_id = ev_case;
    rep.scheme = scheme_from_name(ev_scheme);
    rep.R = ev_r;
    rep.metrics = score(ref, pred);
    write_metrics_csv(ev_out, {rep});
    std::printf("ssim=%.6f psnr=%.4f nmse=%.8f -> %s\n", rep.metrics.ssim,
                rep.metrics.psnr_db, rep.metrics.nmse, ev_out.c_str());
    return 0;
  }

  if (bn->parsed()) {
    bc.shape = parse_shape(bn_shape);
    bc.method = method_from_name(bn_method);
    bc.phantom_kind = bn_kind == "ellipse" ? PhantomKind::EllipseStandard
                                           : PhantomKind::RandomEllipses;
    bc.out_dir = bn_out;
    if (!bn_schemes.empty()) {
      bc.schemes.clear();
      for (const std::string& s : bn_schemes)
        bc.schemes.push_back(scheme_from_name(s));
    }
    const auto reports = run_bench(bc);
    size_t failures = 0;
    for (const auto& r : reports) failures += r.failed;
    std::printf("bench: %zu cells, %zu failures -> %s\n", reports.size(),
                failures, (bc.out_dir / "bench.csv").c_str());
    return failures == 0 ? 0 : 4;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ksb::ParamError& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return 2;
  } catch (const ksb::FormatError& e) {
    std::fprintf(stderr, "format error: %s\n", e.what());
    return 3;
  } catch (const ksb::NumericError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
