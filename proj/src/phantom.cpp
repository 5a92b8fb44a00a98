#include "ksbench/phantom.hpp"

#include <cmath>
#include <numbers>

#include "ksbench/operators.hpp"
#include "ksbench/rng.hpp"

namespace ksb {

namespace {

struct Ellipse {
  double intensity, a, b, x0, y0, phi_deg;
};

// The classic ten-ellipse head phantom (the low-contrast variant) on the
// [-1, 1]^2 square.
constexpr Ellipse kStandardEllipses[10] = {
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
};

RealImage render(GridShape shape, const Ellipse* es, size_t count) {
  RealImage img(shape);
  const double hx = (shape.n_x - 1) / 2.0;
  const double hy = (shape.n_y - 1) / 2.0;
  for (size_t i = 0; i < shape.n_x; ++i) {
    const double y = (hx - double(i)) / hx;  // row 0 is the top of the image
    for (size_t j = 0; j < shape.n_y; ++j) {
      const double x = (double(j) - hy) / hy;
      double v = 0.0;
      for (size_t e = 0; e < count; ++e) {
        const double phi = es[e].phi_deg * std::numbers::pi / 180.0;
        const double c = std::cos(phi), s = std::sin(phi);
        const double dx = x - es[e].x0, dy = y - es[e].y0;
        const double u = (dx * c + dy * s) / es[e].a;
        const double w = (-dx * s + dy * c) / es[e].b;
        if (u * u + w * w <= 1.0) v += es[e].intensity;
      }
      img.at(i, j) = std::min(1.0, std::max(0.0, v));
    }
  }
  return img;
}

}  // namespace

RealImage make_phantom(const PhantomSpec& spec) {
  if (spec.kind == PhantomKind::EllipseStandard)
    return render(spec.shape, kStandardEllipses, 10);

  if (spec.n_ellipses < 1)
    throw ParamError("make_phantom: n_ellipses must be >= 1");
  Rng rng(spec.seed, /*stream=*/0x9e11);
  std::vector<Ellipse> es(size_t(spec.n_ellipses));
  for (Ellipse& e : es) {
    e.intensity = 0.1 + 0.5 * rng.next_double();
    e.a = 0.08 + 0.42 * rng.next_double();
    e.b = 0.08 + 0.42 * rng.next_double();
    e.x0 = -0.6 + 1.2 * rng.next_double();
    e.y0 = -0.6 + 1.2 * rng.next_double();
    e.phi_deg = 180.0 * rng.next_double();
  }
  return render(spec.shape, es.data(), es.size());
}

SensitivityMaps make_coils(const CoilArraySpec& spec, GridShape shape) {
  if (spec.n_c < 1) throw ParamError("make_coils: need at least one coil");
  if (!(spec.width > 0.0)) throw ParamError("make_coils: width must be > 0");

  Rng rng(spec.seed, /*stream=*/0xC017);
  const double rot = 2.0 * std::numbers::pi * rng.next_double();
  const double cx = (shape.n_x - 1) / 2.0;
  const double cy = (shape.n_y - 1) / 2.0;
  const double ring = 0.5 * std::min(shape.n_x, shape.n_y);
  const double sigma = spec.width * std::min(shape.n_x, shape.n_y);

  SensitivityMaps maps(spec.n_c, shape);
  for (uint32_t k = 0; k < spec.n_c; ++k) {
    const double ang = rot + 2.0 * std::numbers::pi * k / spec.n_c;
    const double ax = cx + ring * std::cos(ang);
    const double ay = cy + ring * std::sin(ang);
    // gentle coil-specific linear phase ramp
    const double px = 0.3 * std::cos(ang) * 2.0 * std::numbers::pi / shape.n_x;
    const double py = 0.3 * std::sin(ang) * 2.0 * std::numbers::pi / shape.n_y;
    cxd* plane = maps.coil(k);
    for (size_t i = 0; i < shape.n_x; ++i) {
      for (size_t j = 0; j < shape.n_y; ++j) {
        const double d2 = (double(i) - ax) * (double(i) - ax) +
                          (double(j) - ay) * (double(j) - ay);
        const double mag = std::exp(-d2 / (2.0 * sigma * sigma));
        const double phase = px * double(i) + py * double(j);
        plane[i * shape.n_y + j] = std::polar(mag, phase);
      }
    }
  }

  // normalize in place: sum_k |S^k|^2 = 1 everywhere (bumps are strictly
  // positive, so no pixel is left zero)
  const size_t n = shape.n();
  for (size_t idx = 0; idx < n; ++idx) {
    double s2 = 0.0;
    for (uint32_t k = 0; k < spec.n_c; ++k) s2 += std::norm(maps.coil(k)[idx]);
    const double inv = 1.0 / std::sqrt(s2);
    for (uint32_t k = 0; k < spec.n_c; ++k) maps.coil(k)[idx] *= inv;
  }
  maps.normalized = true;
  return maps;
}

MultiCoilKSpace simulate_acquisition(const RealImage& img,
                                     const SensitivityMaps& maps,
                                     double noise_sigma, uint64_t seed) {
  if (!(img.shape == maps.shape))
    throw ParamError("simulate_acquisition: image and maps shapes differ");
  if (noise_sigma < 0.0)
    throw ParamError("simulate_acquisition: noise_sigma must be >= 0");

  ComplexImage cimg(img.shape);
  for (size_t idx = 0; idx < img.data.size(); ++idx)
    cimg.data[idx] = cxd{img.data[idx], 0.0};

  MultiCoilKSpace ksp = fft2c_coils(expand(cimg, maps));
  if (noise_sigma > 0.0) {
    Rng rng(seed, /*stream=*/0xAC9);
    const double part = noise_sigma / std::sqrt(2.0);
    for (cxd& z : ksp.data)
      z += cxd{part * rng.next_gaussian(), part * rng.next_gaussian()};
  }
  return ksp;
}

}  // namespace ksb
