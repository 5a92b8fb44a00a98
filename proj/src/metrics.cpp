#include "ksbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ksb {

namespace {

void check_sizes(size_t a, size_t b, const char* what) {
  if (a != b)
    throw ParamError(std::string(what) + ": size mismatch " + std::to_string(a) +
                     " vs " + std::to_string(b));
}

}  // namespace

double ssim(const RealImage& u, const RealImage& v) {
  if (!(u.shape == v.shape)) throw ParamError("ssim: shape mismatch");
  constexpr int W = 7;
  const uint32_t n_x = u.shape.n_x, n_y = u.shape.n_y;
  if (n_x < W || n_y < W)
    throw ParamError("ssim: image must be at least 7x7, got " +
                     std::to_string(n_x) + "x" + std::to_string(n_y));

  double lo = u.data[0], hi = u.data[0];
  for (double x : u.data) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  double L = hi - lo;
  if (L == 0.0) L = 1.0;
  const double c1 = (0.01 * L) * (0.01 * L);
  const double c2 = (0.03 * L) * (0.03 * L);

  const double inv_area = 1.0 / double(W * W);
  double total = 0.0;
  size_t windows = 0;
  for (uint32_t i0 = 0; i0 + W <= n_x; ++i0) {
    for (uint32_t j0 = 0; j0 + W <= n_y; ++j0) {
      double su = 0.0, sv = 0.0, suu = 0.0, svv = 0.0, suv = 0.0;
      for (int di = 0; di < W; ++di) {
        const double* ru = &u.at(i0 + di, j0);
        const double* rv = &v.at(i0 + di, j0);
        for (int dj = 0; dj < W; ++dj) {
          const double a = ru[dj], b = rv[dj];
          su += a;
          sv += b;
          suu += a * a;
          svv += b * b;
          suv += a * b;
        }
      }
      const double mu = su * inv_area, mv = sv * inv_area;
      // population (biased) window statistics
      const double var_u = suu * inv_area - mu * mu;
      const double var_v = svv * inv_area - mv * mv;
      const double cov = suv * inv_area - mu * mv;
      const double num = (2.0 * mu * mv + c1) * (2.0 * cov + c2);
      const double den = (mu * mu + mv * mv + c1) * (var_u + var_v + c2);
      total += num / den;
      ++windows;
    }
  }
  return total / double(windows);
}

double psnr(std::span<const double> u, std::span<const double> v) {
  check_sizes(u.size(), v.size(), "psnr");
  if (u.empty()) throw ParamError("psnr: empty input");
  double peak = u[0];
  double se = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    peak = std::max(peak, u[i]);
    const double d = u[i] - v[i];
    se += d * d;
  }
  if (peak <= 0.0) throw ParamError("psnr: reference peak must be positive");
  const double mse = se / double(u.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(peak / std::sqrt(mse));
}

double nmse(std::span<const double> u, std::span<const double> v) {
  check_sizes(u.size(), v.size(), "nmse");
  double ref = 0.0, err = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    ref += u[i] * u[i];
    const double d = u[i] - v[i];
    err += d * d;
  }
  if (ref <= 0.0) throw ParamError("nmse: reference norm must be positive");
  return err / ref;
}

double combined_loss(const RealImage& ref, const RealImage& pred) {
  if (!(ref.shape == pred.shape)) throw ParamError("combined_loss: shape mismatch");
  double l1 = 0.0;
  for (size_t i = 0; i < ref.data.size(); ++i)
    l1 += std::abs(ref.data[i] - pred.data[i]);
  return l1 + (1.0 - ssim(ref, pred));
}

MetricRecord score(const RealImage& ref, const RealImage& pred) {
  MetricRecord r;
  r.ssim = ssim(ref, pred);
  r.psnr_db = psnr(ref.data, pred.data);
  r.nmse = nmse(ref.data, pred.data);
  return r;
}

}  // namespace ksb
