#include "ksbench/calib.hpp"

#include <cmath>

#include "ksbench/operators.hpp"

namespace ksb {

MultiCoilKSpace extract_acs(const MultiCoilKSpace& ksp, const SamplingMask& mask) {
  if (!mask.has_acs())
    throw ParamError("extract_acs: mask carries no ACS region");
  if (!(ksp.shape == mask.shape))
    throw ParamError("extract_acs: k-space and mask shapes differ");
  MultiCoilKSpace out = ksp;
  const size_t n = mask.shape.n();
  for (uint32_t k = 0; k < ksp.n_c; ++k) {
    cxd* o = out.coil(k);
    for (size_t idx = 0; idx < n; ++idx)
      if (!mask.acs_bits[idx]) o[idx] = cxd{0.0, 0.0};
  }
  return out;
}

SensitivityMaps estimate_sensitivities(const MultiCoilKSpace& ksp,
                                       const SamplingMask& mask) {
  const MultiCoilKSpace acs = extract_acs(ksp, mask);
  const MultiCoilKSpace coil_imgs = ifft2c_coils(acs);
  const RealImage root = rss(coil_imgs);

  double peak = 0.0;
  for (double v : root.data) peak = std::max(peak, v);
  if (peak <= 0.0)
    throw NumericError("estimate_sensitivities: ACS signal is identically zero");
  const double floor = 1e-9 * peak;

  SensitivityMaps maps(ksp.n_c, ksp.shape);
  const size_t n = ksp.shape.n();
  size_t zeroed = 0;
  for (size_t idx = 0; idx < n; ++idx) {
    if (root.data[idx] < floor) {
      ++zeroed;
      continue;  // coil vector stays zero
    }
    for (uint32_t k = 0; k < ksp.n_c; ++k)
      maps.coil(k)[idx] = coil_imgs.coil(k)[idx] / root.data[idx];
  }
  maps.normalized = true;
  maps.n_zero_pixels = zeroed;
  return maps;
}

SensitivityMaps normalize(const SensitivityMaps& maps) {
  SensitivityMaps out = maps;
  const size_t n = maps.shape.n();
  size_t zeroed = 0;
  bool any = false;
  for (size_t idx = 0; idx < n; ++idx) {
    double s2 = 0.0;
    for (uint32_t k = 0; k < maps.n_c; ++k) s2 += std::norm(maps.coil(k)[idx]);
    if (s2 <= 0.0) {
      ++zeroed;
      continue;
    }
    any = true;
    const double inv = 1.0 / std::sqrt(s2);
    for (uint32_t k = 0; k < maps.n_c; ++k) out.coil(k)[idx] *= inv;
  }
  if (!any) throw ParamError("normalize: sensitivity maps are identically zero");
  out.normalized = true;
  out.n_zero_pixels = zeroed;
  return out;
}

}  // namespace ksb
