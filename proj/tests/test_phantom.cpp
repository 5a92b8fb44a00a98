#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ksbench/operators.hpp"
#include "ksbench/phantom.hpp"
#include "ksbench/rng.hpp"

using namespace ksb;

namespace {

// Independent per-pixel evaluation of the ten-ellipse head phantom: sum
// intensities of the rotated ellipses containing the point, clip to [0,1].
double head_phantom_at(GridShape shape, size_t i, size_t j) {
  struct E {
    double v, a, b, x0, y0, deg;
  };
  static const E es[10] = {
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
  const double hx = (shape.n_x - 1) / 2.0, hy = (shape.n_y - 1) / 2.0;
  const double x = (double(j) - hy) / hy;
  const double y = (hx - double(i)) / hx;
  double v = 0.0;
  for (const E& e : es) {
    const double phi = e.deg * std::numbers::pi / 180.0;
    const double dx = x - e.x0, dy = y - e.y0;
    const double u = (dx * std::cos(phi) + dy * std::sin(phi)) / e.a;
    const double w = (-dx * std::sin(phi) + dy * std::cos(phi)) / e.b;
    if (u * u + w * w <= 1.0) v += e.v;
  }
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

TEST_SUITE("phantom") {

TEST_CASE("standard phantom matches the analytic ellipse sum") {
  const GridShape shape(64, 64);
  const RealImage img = make_phantom({shape, PhantomKind::EllipseStandard, 8, 0});
  for (size_t i = 0; i < shape.n_x; ++i)
    for (size_t j = 0; j < shape.n_y; ++j)
      CHECK(img.at(i, j) == head_phantom_at(shape, i, j));

  // brain tissue at the middle, vacuum at the corner
  CHECK(img.at(32, 32) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(img.at(0, 0) == 0.0);
}

TEST_CASE("phantoms are deterministic and clipped to [0,1]") {
  const GridShape shape(48, 40);
  const PhantomSpec spec{shape, PhantomKind::RandomEllipses, 8, 123};
  const RealImage a = make_phantom(spec);
  const RealImage b = make_phantom(spec);
  CHECK(a.data == b.data);

  const RealImage c = make_phantom({shape, PhantomKind::RandomEllipses, 8, 124});
  CHECK(a.data != c.data);

  double lo = 1.0, hi = 0.0, mass = 0.0;
  for (double v : a.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    mass += v;
  }
  CHECK(lo >= 0.0);
  CHECK(hi <= 1.0);
  CHECK(mass > 0.0);  // ellipses actually land on the grid

  CHECK_THROWS_AS(make_phantom({shape, PhantomKind::RandomEllipses, 0, 1}),
                  ParamError);
}

TEST_CASE("coil maps are normalized with no dead pixels") {
  const GridShape shape(64, 64);
  CoilArraySpec spec;
  spec.n_c = 8;
  spec.seed = 7;
  const SensitivityMaps maps = make_coils(spec, shape);
  CHECK(maps.normalized);
  CHECK(maps.n_zero_pixels == 0);
  for (size_t idx = 0; idx < shape.n(); ++idx) {
    double s2 = 0.0;
    for (uint32_t k = 0; k < 8; ++k) s2 += std::norm(maps.coil(k)[idx]);
    CHECK(s2 == doctest::Approx(1.0).epsilon(1e-6));
  }

  // single coil: normalization forces unit modulus everywhere
  CoilArraySpec one;
  one.n_c = 1;
  const SensitivityMaps single = make_coils(one, shape);
  for (const cxd& z : single.data)
    CHECK(std::abs(z) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("each coil dominates at the grid cell nearest its ring anchor") {
  // per-pixel normalization preserves within-pixel magnitude ratios, so the
  // coil whose bump is anchored there must carry the largest weight
  const GridShape shape(64, 64);
  CoilArraySpec spec;
  spec.n_c = 8;
  spec.seed = 3;
  const SensitivityMaps maps = make_coils(spec, shape);

  Rng rng(3, 0xC017);
  const double rot = 2.0 * std::numbers::pi * rng.next_double();
  const double cx = (shape.n_x - 1) / 2.0, cy = (shape.n_y - 1) / 2.0;
  const double ring = 0.5 * std::min(shape.n_x, shape.n_y);
  for (uint32_t k = 0; k < 8; ++k) {
    const double ang = rot + 2.0 * std::numbers::pi * k / 8;
    const long long ai = std::clamp<long long>(
        std::llround(cx + ring * std::cos(ang)), 0, shape.n_x - 1);
    const long long aj = std::clamp<long long>(
        std::llround(cy + ring * std::sin(ang)), 0, shape.n_y - 1);
    const size_t idx = size_t(ai) * shape.n_y + size_t(aj);
    for (uint32_t m = 0; m < 8; ++m) {
      if (m == k) continue;
      CHECK(std::abs(maps.coil(k)[idx]) > std::abs(maps.coil(m)[idx]));
    }
  }
}

TEST_CASE("coil maps are seeded deterministically") {
  const GridShape shape(32, 32);
  CoilArraySpec spec;
  spec.n_c = 4;
  spec.seed = 9;
  CHECK(make_coils(spec, shape).data == make_coils(spec, shape).data);
  CoilArraySpec other = spec;
  other.seed = 10;
  CHECK(make_coils(spec, shape).data != make_coils(other, shape).data);

  CHECK_THROWS_AS(make_coils(CoilArraySpec{0, CoilProfile::GaussianRing, 0.35, 0},
                             shape),
                  ParamError);
}

TEST_CASE("acquisition with an identity coil is the plain transform") {
  const GridShape shape(16, 16);
  const RealImage img = make_phantom({shape, PhantomKind::EllipseStandard, 8, 0});
  SensitivityMaps identity(1, shape);
  for (cxd& z : identity.data) z = cxd{1.0, 0.0};
  identity.normalized = true;

  const MultiCoilKSpace y = simulate_acquisition(img, identity, 0.0, 0);
  ComplexImage ci(shape);
  for (size_t i = 0; i < img.data.size(); ++i) ci.data[i] = cxd{img.data[i], 0.0};
  const ComplexImage want = fft2c(ci);
  for (size_t i = 0; i < want.data.size(); ++i)
    CHECK(std::abs(y.data[i] - want.data[i]) < 1e-13);
}

TEST_CASE("noiseless acquisition inverts through rss") {
  const GridShape shape(32, 32);
  const RealImage img = make_phantom({shape, PhantomKind::EllipseStandard, 8, 0});
  CoilArraySpec spec;
  spec.n_c = 6;
  spec.seed = 2;
  const SensitivityMaps maps = make_coils(spec, shape);
  const MultiCoilKSpace y = simulate_acquisition(img, maps, 0.0, 0);
  const RealImage back = rss(ifft2c_coils(y));
  double err = 0.0, ref = 0.0;
  for (size_t i = 0; i < img.data.size(); ++i) {
    err += (back.data[i] - img.data[i]) * (back.data[i] - img.data[i]);
    ref += img.data[i] * img.data[i];
  }
  CHECK(err / ref < 1e-20);
}

TEST_CASE("noise level matches the requested sigma") {
  const GridShape shape(64, 64);
  RealImage zero(shape);
  SensitivityMaps maps(4, shape);
  for (cxd& z : maps.data) z = cxd{0.5, 0.0};
  maps.normalized = true;  // 4 x 0.5^2 = 1

  const double sigma = 0.25;
  const MultiCoilKSpace y = simulate_acquisition(zero, maps, sigma, 77);
  double s2 = 0.0;
  for (const cxd& z : y.data) s2 += std::norm(z);
  const double sample = std::sqrt(s2 / double(y.data.size()));
  CHECK(sample == doctest::Approx(sigma).epsilon(0.05));

  // seeded determinism and sigma validation
  const MultiCoilKSpace y2 = simulate_acquisition(zero, maps, sigma, 77);
  CHECK(y.data == y2.data);
  CHECK_THROWS_AS(simulate_acquisition(zero, maps, -0.1, 0), ParamError);
}

}  // TEST_SUITE("phantom")
