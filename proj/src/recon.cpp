#include "ksbench/recon.hpp"

#include <cmath>

#include "ksbench/operators.hpp"

namespace ksb {

namespace {

double norm2(const std::vector<cxd>& v) {
  double s = 0.0;
  for (const cxd& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double dot_re(const std::vector<cxd>& a, const std::vector<cxd>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return s;
}

bool finite(const std::vector<cxd>& v) {
  for (const cxd& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

// Peak magnitude of the per-coil zero-filled images; the solvers scale the
// measured k-space by its inverse so lambda and thresholds are
// data-independent, and scale back on output.
double zf_peak(const MultiCoilKSpace& ksp) {
  const MultiCoilKSpace imgs = ifft2c_coils(ksp);
  double peak = 0.0;
  for (const cxd& z : imgs.data) peak = std::max(peak, std::abs(z));
  return peak;
}

MultiCoilKSpace scaled(const MultiCoilKSpace& ksp, double factor) {
  MultiCoilKSpace out = ksp;
  for (cxd& z : out.data) z *= factor;
  return out;
}

RealImage magnitude(const ComplexImage& img, double scale) {
  RealImage out(img.shape);
  for (size_t i = 0; i < img.data.size(); ++i)
    out.data[i] = std::abs(img.data[i]) * scale;
  return out;
}

std::vector<double> step_sizes(const UnrolledConfig& cfg) {
  if (cfg.T < 1) throw ParamError("unrolled_recon: T must be >= 1");
  std::vector<double> alphas = cfg.alphas;
  if (alphas.size() == 1 && cfg.T > 1) alphas.assign(cfg.T, alphas[0]);
  if (alphas.size() != cfg.T)
    throw ParamError("unrolled_recon: need one step size per time-step");
  for (double a : alphas)
    if (!(a > 0.0) || !std::isfinite(a))
      throw ParamError("unrolled_recon: step sizes must be positive finite");
  return alphas;
}

}  // namespace

Regularizer make_shrinkage_regularizer(double threshold) {
  if (!(threshold >= 0.0))
    throw ParamError("make_shrinkage_regularizer: threshold must be >= 0");
  return [threshold](const ComplexImage& w) {
    ComplexImage delta(w.shape);
    for (size_t i = 0; i < w.data.size(); ++i) {
      const double mag = std::abs(w.data[i]);
      const double shrunk = mag <= threshold ? 0.0 : mag - threshold;
      // shrink(w) - w, pointing against the current value
      delta.data[i] = mag > 0.0 ? w.data[i] * (shrunk / mag - 1.0) : cxd{0.0, 0.0};
    }
    return delta;
  };
}

RealImage zero_filled(const MultiCoilKSpace& ksp_sub, Combine combine,
                      const SensitivityMaps* maps) {
  const MultiCoilKSpace imgs = ifft2c_coils(ksp_sub);
  if (combine == Combine::Rss) return rss(imgs);
  if (!maps)
    throw ParamError("zero_filled: SENSE combination requires sensitivity maps");
  return sense_combine(imgs, *maps);
}

MultiCoilKSpace dc_step(const MultiCoilKSpace& y, const MultiCoilKSpace& y_tilde,
                        const SamplingMask& mask, double alpha,
                        const ComplexImage* h_img, const SensitivityMaps* maps) {
  if (!(y.shape == y_tilde.shape) || y.n_c != y_tilde.n_c)
    throw ParamError("dc_step: iterate and measurement shapes differ");
  if (!(y.shape == mask.shape)) throw ParamError("dc_step: mask shape differs");
  MultiCoilKSpace out = y;
  const size_t n = mask.shape.n();
  for (uint32_t k = 0; k < y.n_c; ++k) {
    cxd* o = out.coil(k);
    const cxd* m = y_tilde.coil(k);
    for (size_t idx = 0; idx < n; ++idx)
      if (mask.bits[idx]) o[idx] -= alpha * (o[idx] - m[idx]);
  }
  if (h_img) {
    if (!maps)
      throw ParamError("dc_step: regularizer image requires sensitivity maps");
    const MultiCoilKSpace corr = fft2c_coils(expand(*h_img, *maps));
    for (size_t idx = 0; idx < out.data.size(); ++idx) out.data[idx] += corr.data[idx];
  }
  return out;
}

RealImage unrolled_recon(const MultiCoilKSpace& ksp_sub, const SamplingMask& mask,
                         const SensitivityMaps& maps, const UnrolledConfig& cfg) {
  const std::vector<double> alphas = step_sizes(cfg);
  const double peak = zf_peak(ksp_sub);
  if (peak == 0.0) return RealImage(ksp_sub.shape);
  const MultiCoilKSpace y_tilde = scaled(ksp_sub, 1.0 / peak);
  const ForwardOperator op(mask, maps);

  if (cfg.domain == UnrollDomain::Image) {
    const ComplexImage b = adjoint(op, y_tilde);
    const double guard = 1e6 * norm2(b.data);
    ComplexImage w = b;
    for (uint32_t t = 0; t < cfg.T; ++t) {
      const ComplexImage grad = adjoint(op, forward(op, w));
      for (size_t i = 0; i < w.data.size(); ++i)
        w.data[i] -= alphas[t] * (grad.data[i] - b.data[i]);
      if (cfg.regularizer) {
        const ComplexImage h = cfg.regularizer(w);
        for (size_t i = 0; i < w.data.size(); ++i) w.data[i] += h.data[i];
      }
      if (!finite(w.data) || norm2(w.data) > guard)
        throw NumericError("unrolled_recon: iterate diverged at step " +
                           std::to_string(t + 1));
    }
    return magnitude(w, peak);
  }

  // k-space domain: iterate the dc update from y = y_tilde
  const double guard = 1e6 * norm2(y_tilde.data);
  MultiCoilKSpace y = y_tilde;
  for (uint32_t t = 0; t < cfg.T; ++t) {
    if (cfg.regularizer) {
      const ComplexImage w_t = reduce(ifft2c_coils(y), maps);
      const ComplexImage h = cfg.regularizer(w_t);
      y = dc_step(y, y_tilde, mask, alphas[t], &h, &maps);
    } else {
      y = dc_step(y, y_tilde, mask, alphas[t]);
    }
    if (!finite(y.data) || norm2(y.data) > guard)
      throw NumericError("unrolled_recon: iterate diverged at step " +
                         std::to_string(t + 1));
  }
  return magnitude(reduce(ifft2c_coils(y), maps), peak);
}

RealImage cg_sense(const MultiCoilKSpace& ksp_sub, const SamplingMask& mask,
                   const SensitivityMaps& maps, const CgConfig& cfg,
                   uint32_t* iters_out, std::vector<double>* residuals_out) {
  if (cfg.lambda < 0.0) throw ParamError("cg_sense: lambda must be >= 0");
  if (cfg.max_iters < 1) throw ParamError("cg_sense: max_iters must be >= 1");
  if (!(cfg.rtol > 0.0 && cfg.rtol < 1.0))
    throw ParamError("cg_sense: rtol must lie in (0, 1)");

  const double peak = zf_peak(ksp_sub);
  if (peak == 0.0) {
    if (iters_out) *iters_out = 0;
    return RealImage(ksp_sub.shape);
  }
  const MultiCoilKSpace y_tilde = scaled(ksp_sub, 1.0 / peak);
  const ForwardOperator op(mask, maps);

  // CG on the SPD normal system (A*A + lambda I) w = A* y_tilde
  const ComplexImage b = adjoint(op, y_tilde);
  const double bnorm = norm2(b.data);
  ComplexImage w(b.shape);
  std::vector<cxd> r = b.data, p = b.data;
  double rs = dot_re(r, r);
  if (residuals_out) {
    residuals_out->clear();
    residuals_out->push_back(std::sqrt(rs));
  }
  uint32_t it = 0;
  for (; it < cfg.max_iters && std::sqrt(rs) > cfg.rtol * bnorm; ++it) {
    ComplexImage pc(b.shape);
    pc.data = p;
    ComplexImage ap = adjoint(op, forward(op, pc));
    if (cfg.lambda > 0.0)
      for (size_t i = 0; i < ap.data.size(); ++i) ap.data[i] += cfg.lambda * p[i];
    const double pap = dot_re(p, ap.data);
    if (!(pap > 0.0)) break;  // numerically exhausted search direction
    const double alpha = rs / pap;
    for (size_t i = 0; i < w.data.size(); ++i) {
      w.data[i] += alpha * p[i];
      r[i] -= alpha * ap.data[i];
    }
    const double rs_next = dot_re(r, r);
    if (!std::isfinite(rs_next))
      throw NumericError("cg_sense: non-finite residual at iteration " +
                         std::to_string(it + 1));
    const double beta = rs_next / rs;
    rs = rs_next;
    for (size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
    if (residuals_out) residuals_out->push_back(std::sqrt(rs));
  }
  if (iters_out) *iters_out = it;
  return magnitude(w, peak);
}

}  // namespace ksb
