#include "ksbench/operators.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace ksb {

namespace {

// Plans are cached per (n_x, n_y, sign) and reused through the new-array
// execute API: plan creation is serialized (FFTW requirement), execution is
// thread-safe. FFTW_UNALIGNED keeps the plans valid for any buffer the
// caller hands in; FFTW_ESTIMATE keeps planning deterministic and cheap.
class PlanCache {
 public:
  fftw_plan get(uint32_t n_x, uint32_t n_y, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto key = std::tuple{n_x, n_y, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<fftw_complex> a(size_t(n_x) * n_y), b(size_t(n_x) * n_y);
    fftw_plan p = fftw_plan_dft_2d(int(n_x), int(n_y), a.data(), b.data(), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<uint32_t, uint32_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

// out[k] = in[(k + shift) mod n] applied on both axes.
void shifted_copy(const cxd* in, cxd* out, uint32_t n_x, uint32_t n_y,
                  uint32_t sx, uint32_t sy) {
  for (uint32_t i = 0; i < n_x; ++i) {
    const uint32_t si = (i + sx) % n_x;
    const cxd* row = in + size_t(si) * n_y;
    cxd* orow = out + size_t(i) * n_y;
    for (uint32_t j = 0; j < n_y; ++j) orow[j] = row[(j + sy) % n_y];
  }
}

// plane-level centered transform: fftshift(FFT(ifftshift(x))) / sqrt(n)
void transform_plane(const cxd* in, cxd* out, GridShape shape, int sign) {
  const uint32_t n_x = shape.n_x, n_y = shape.n_y;
  const size_t n = shape.n();
  std::vector<cxd> tmp(n), tmp2(n);
  // ifftshift: shift by floor(n/2)
  shifted_copy(in, tmp.data(), n_x, n_y, n_x / 2, n_y / 2);
  fftw_plan p = cache().get(n_x, n_y, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                   reinterpret_cast<fftw_complex*>(tmp2.data()));
  // fftshift: shift by ceil(n/2)
  shifted_copy(tmp2.data(), out, n_x, n_y, n_x - n_x / 2, n_y - n_y / 2);
  const double scale = 1.0 / std::sqrt(double(n));
  for (size_t idx = 0; idx < n; ++idx) out[idx] *= scale;
}

void check_same_shape(GridShape a, GridShape b, const char* what) {
  if (!(a == b))
    throw ParamError(std::string(what) + ": shape mismatch " +
                     std::to_string(a.n_x) + "x" + std::to_string(a.n_y) + " vs " +
                     std::to_string(b.n_x) + "x" + std::to_string(b.n_y));
}

}  // namespace

ComplexImage fft2c(const ComplexImage& img) {
  ComplexImage out(img.shape);
  transform_plane(img.data.data(), out.data.data(), img.shape, FFTW_FORWARD);
  return out;
}

ComplexImage ifft2c(const ComplexImage& ksp) {
  ComplexImage out(ksp.shape);
  transform_plane(ksp.data.data(), out.data.data(), ksp.shape, FFTW_BACKWARD);
  return out;
}

MultiCoilKSpace fft2c_coils(const MultiCoilKSpace& stack) {
  MultiCoilKSpace out(stack.n_c, stack.shape);
  for (uint32_t k = 0; k < stack.n_c; ++k)
    transform_plane(stack.coil(k), out.coil(k), stack.shape, FFTW_FORWARD);
  return out;
}

MultiCoilKSpace ifft2c_coils(const MultiCoilKSpace& stack) {
  MultiCoilKSpace out(stack.n_c, stack.shape);
  for (uint32_t k = 0; k < stack.n_c; ++k)
    transform_plane(stack.coil(k), out.coil(k), stack.shape, FFTW_BACKWARD);
  return out;
}

MultiCoilKSpace expand(const ComplexImage& img, const SensitivityMaps& maps) {
  check_same_shape(img.shape, maps.shape, "expand");
  MultiCoilKSpace out(maps.n_c, maps.shape);
  const size_t n = maps.shape.n();
  for (uint32_t k = 0; k < maps.n_c; ++k) {
    const cxd* s = maps.coil(k);
    cxd* o = out.coil(k);
    for (size_t idx = 0; idx < n; ++idx) o[idx] = s[idx] * img.data[idx];
  }
  return out;
}

ComplexImage reduce(const MultiCoilKSpace& coil_imgs, const SensitivityMaps& maps) {
  check_same_shape(coil_imgs.shape, maps.shape, "reduce");
  if (coil_imgs.n_c != maps.n_c)
    throw ParamError("reduce: coil count mismatch " + std::to_string(coil_imgs.n_c) +
                     " vs " + std::to_string(maps.n_c));
  ComplexImage out(maps.shape);
  const size_t n = maps.shape.n();
  for (uint32_t k = 0; k < maps.n_c; ++k) {
    const cxd* s = maps.coil(k);
    const cxd* z = coil_imgs.coil(k);
    for (size_t idx = 0; idx < n; ++idx) out.data[idx] += std::conj(s[idx]) * z[idx];
  }
  return out;
}

MultiCoilKSpace apply_mask(const MultiCoilKSpace& ksp, const SamplingMask& mask) {
  check_same_shape(ksp.shape, mask.shape, "apply_mask");
  MultiCoilKSpace out = ksp;
  const size_t n = mask.shape.n();
  for (uint32_t k = 0; k < ksp.n_c; ++k) {
    cxd* o = out.coil(k);
    for (size_t idx = 0; idx < n; ++idx)
      if (!mask.bits[idx]) o[idx] = cxd{0.0, 0.0};
  }
  return out;
}

ForwardOperator::ForwardOperator(SamplingMask m, SensitivityMaps s)
    : mask(std::move(m)), maps(std::move(s)) {
  check_same_shape(mask.shape, maps.shape, "ForwardOperator");
  if (!maps.normalized)
    throw ParamError("ForwardOperator: sensitivity maps must be normalized");
}

MultiCoilKSpace forward(const ForwardOperator& op, const ComplexImage& img) {
  return apply_mask(fft2c_coils(expand(img, op.maps)), op.mask);
}

ComplexImage adjoint(const ForwardOperator& op, const MultiCoilKSpace& ksp) {
  return reduce(ifft2c_coils(apply_mask(ksp, op.mask)), op.maps);
}

RealImage rss(const MultiCoilKSpace& coil_imgs) {
  RealImage out(coil_imgs.shape);
  const size_t n = coil_imgs.shape.n();
  for (uint32_t k = 0; k < coil_imgs.n_c; ++k) {
    const cxd* z = coil_imgs.coil(k);
    for (size_t idx = 0; idx < n; ++idx) out.data[idx] += std::norm(z[idx]);
  }
  for (size_t idx = 0; idx < n; ++idx) out.data[idx] = std::sqrt(out.data[idx]);
  return out;
}

RealImage sense_combine(const MultiCoilKSpace& coil_imgs,
                        const SensitivityMaps& maps) {
  const ComplexImage combined = reduce(coil_imgs, maps);
  RealImage out(coil_imgs.shape);
  for (size_t idx = 0; idx < out.data.size(); ++idx)
    out.data[idx] = std::abs(combined.data[idx]);
  return out;
}

}  // namespace ksb
