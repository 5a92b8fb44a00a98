#pragma once

#include <optional>

#include "ksbench/core.hpp"

namespace ksb {

struct SchemeParams {
  Scheme scheme = Scheme::RandomRect;
  AccelerationSpec accel;
  uint64_t seed = 0;
  // Rotation/start offset: equispaced start (in line units), radial/spiral
  // rotation multiplier. Drawn from the seed when absent.
  std::optional<int64_t> offset;
};

// L = round(r_acs * n_y) centered full phase-encode lines, ties toward the
// lower index. r_acs must be in (0, 1) and L >= 1.
SamplingMask acs_lines(GridShape shape, double r_acs);

// Each non-ACS line kept independently with probability
// p = (n_y/R - L) / (n_y - L), united with the ACS lines.
SamplingMask random_rectilinear(GridShape shape, const SchemeParams& params);

// Evenly spaced lines (rational stride): the line count c and seeded start
// offset are chosen so the union with the ACS lines lands closest to
// round(n_y/R); ties prefer denser sampling.
SamplingMask equispaced_rectilinear(GridShape shape, const SchemeParams& params);

// Equispaced pattern whose start offset additionally maximizes the union of
// the sampled line set with its conjugate mirror (n_y-1-k), so sampled lines
// interleave with their mirrors instead of coinciding.
SamplingMask equispaced_plus_rectilinear(GridShape shape, const SchemeParams& params);

// Line indices drawn from Normal(n_y/2, 4*sqrt(n_y/2)), rounded, rejected
// when out of range or repeated, until round(n_y/R) lines are set.
SamplingMask gaussian_1d(GridShape shape, const SchemeParams& params);

// Variable-density Poisson disk via dart throwing on the cell lattice with
// local minimum distance d(r) = 1 + s*r; the slope s is calibrated by
// bisection until the acceleration is within tolerance. A centered disk of
// radius sqrt(n_x*n_y*r_acs/pi) is fully sampled. slope_out, when given,
// receives the calibrated s (for distance audits).
SamplingMask vdpd(GridShape shape, const SchemeParams& params,
                  double* slope_out = nullptr);

// Cells drawn from a bivariate normal centered at (n_x/2, n_y/2) with
// per-axis stds 4*sqrt(n_x/2) and 4*sqrt(n_y/2) until round(n/R) cells are
// set; same fully sampled ACS disk as vdpd.
SamplingMask gaussian_2d(GridShape shape, const SchemeParams& params);

// N straight spokes through the grid center at pi/N angular spacing plus a
// golden-angle rotation, rasterized by unit steps; N calibrated by bisection.
SamplingMask radial_sim(GridShape shape, const SchemeParams& params);

// N single-turn Archimedean arms (rho = a*phi, one turn to the inscribed
// edge), arc-length-stepped rasterization; N calibrated by bisection.
SamplingMask spiral_sim(GridShape shape, const SchemeParams& params);

// Largest centered disk whose every cell is sampled. The radius never
// exceeds min(n_x,n_y)/2 - 1/2 (the inscribed disk). An unsampled center
// yields the degenerate single-cell disk of radius 0. rho_out, when given,
// receives the disk radius.
SamplingMask largest_sampled_disk(const SamplingMask& mask, double* rho_out = nullptr);

// Dispatch on params.scheme, attach the scheme's ACS submask (centered lines
// for rectilinear schemes when r_acs > 0, the constructed disk for
// VDPD/Gaussian 2D, the largest sampled disk for radial/spiral), and record
// the achieved acceleration.
SamplingMask generate(GridShape shape, const SchemeParams& params);

namespace detail {
// Fixed-parameter rasterizers and single Poisson passes, exposed so tests
// can pin counts/geometry without going through calibration.
std::vector<uint8_t> rasterize_radial(GridShape shape, uint32_t n_spokes,
                                      int64_t offset_mult);
std::vector<uint8_t> rasterize_spiral(GridShape shape, uint32_t n_arms,
                                      int64_t offset_mult, uint64_t seed);
std::vector<uint8_t> vdpd_once(GridShape shape, double slope, uint64_t seed,
                               double rho_acs);
}  // namespace detail

}  // namespace ksb
