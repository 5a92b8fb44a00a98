#pragma once

#include <cstdint>

#include "ksbench/core.hpp"

namespace ksb {

enum class PhantomKind : uint8_t { EllipseStandard = 0, RandomEllipses = 1 };

struct PhantomSpec {
  GridShape shape;
  PhantomKind kind = PhantomKind::EllipseStandard;
  int n_ellipses = 8;  // RandomEllipses only
  uint64_t seed = 0;
};

enum class CoilProfile : uint8_t { GaussianRing = 0 };

struct CoilArraySpec {
  uint32_t n_c = 8;
  CoilProfile profile = CoilProfile::GaussianRing;
  double width = 0.35;  // bump std as a fraction of min(n_x, n_y)
  uint64_t seed = 0;
};

// Analytic per-pixel ellipse-sum phantom, intensities clipped to [0, 1].
// EllipseStandard is the classic ten-ellipse head phantom; RandomEllipses
// draws n_ellipses seeded ellipses with additive intensities.
RealImage make_phantom(const PhantomSpec& spec);

// Gaussian bumps centered at equal angles on a ring of radius
// 0.5*min(n_x,n_y) around the grid center, each with a smooth linear phase;
// returned normalized (sum_k |S^k|^2 = 1 everywhere).
SensitivityMaps make_coils(const CoilArraySpec& spec, GridShape shape);

// y^k = fft2c(S^k * img) + e^k with e^k complex Gaussian of RMS amplitude
// noise_sigma per entry (real and imaginary parts each N(0, sigma^2/2)).
MultiCoilKSpace simulate_acquisition(const RealImage& img,
                                     const SensitivityMaps& maps,
                                     double noise_sigma, uint64_t seed);

}  // namespace ksb
