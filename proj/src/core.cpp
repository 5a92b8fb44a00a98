#include "ksbench/core.hpp"

#include <cmath>

namespace ksb {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::RandomRect: return "random";
    case Scheme::EquispacedRect: return "equispaced";
    case Scheme::EquispacedPlusRect: return "equispaced_plus";
    case Scheme::Gaussian1D: return "gaussian1d";
    case Scheme::VDPD: return "vdpd";
    case Scheme::Gaussian2D: return "gaussian2d";
    case Scheme::Radial: return "radial";
    case Scheme::Spiral: return "spiral";
  }
  throw ParamError("scheme_name: unknown scheme code " +
                   std::to_string(int(s)));
}

Scheme scheme_from_name(const std::string& name) {
  for (int c = 0; c < 8; ++c) {
    if (name == scheme_name(Scheme(c))) return Scheme(c);
  }
  throw ParamError("unknown scheme '" + name + "'");
}

SamplingMask SamplingMask::acs_mask() const {
  SamplingMask m(shape);
  m.scheme = scheme;
  m.seed = seed;
  m.accel_target = accel_target;
  if (has_acs()) m.bits = acs_bits;
  m.degenerate_acs = degenerate_acs;
  return m;
}

double kspace_radius(GridShape shape, size_t i, size_t j) {
  if (i >= shape.n_x || j >= shape.n_y)
    throw ParamError("kspace_radius: index (" + std::to_string(i) + "," +
                     std::to_string(j) + ") outside " +
                     std::to_string(shape.n_x) + "x" + std::to_string(shape.n_y));
  const double ci = double(shape.n_x / 2);
  const double cj = double(shape.n_y / 2);
  return std::hypot(double(i) - ci, double(j) - cj);
}

size_t popcount(const std::vector<uint8_t>& bits) {
  size_t c = 0;
  for (uint8_t b : bits) c += (b != 0);
  return c;
}

double achieved_acceleration(const SamplingMask& mask) {
  const size_t set = popcount(mask.bits);
  if (set == 0) throw ParamError("achieved_acceleration: mask has no sampled cells");
  return double(mask.shape.n()) / double(set);
}

}  // namespace ksb
