#include "ksbench/masks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "ksbench/io.hpp"
#include "ksbench/rng.hpp"

namespace ksb {

namespace {

constexpr double kGoldenAngle = std::numbers::pi * (3.0 - 2.2360679774997896964091736687747);  // pi*(3-sqrt(5))

// Per-scheme RNG stream tags so different schemes never share a draw
// sequence even under the same seed.
uint64_t stream_of(Scheme s) { return 0x100 + uint64_t(s); }

size_t acs_line_count(GridShape shape, double r_acs) {
  return size_t(std::llround(r_acs * shape.n_y));
}

size_t acs_line_start(GridShape shape, size_t L) { return (shape.n_y - L) / 2; }

void set_line(SamplingMask& m, size_t j) {
  for (size_t i = 0; i < m.shape.n_x; ++i) m.bits[i * m.shape.n_y + j] = 1;
}

SamplingMask from_lines(GridShape shape, const std::set<size_t>& lines) {
  SamplingMask m(shape);
  for (size_t j : lines) set_line(m, j);
  return m;
}

// Lines of the ACS region for the rectilinear schemes; empty when disabled.
std::set<size_t> acs_line_set(GridShape shape, double r_acs) {
  std::set<size_t> s;
  if (r_acs <= 0.0) return s;
  const size_t L = acs_line_count(shape, r_acs);
  const size_t start = acs_line_start(shape, L);
  for (size_t j = start; j < start + L; ++j) s.insert(j);
  return s;
}

void check_line_feasible(GridShape shape, const AccelerationSpec& accel,
                         size_t L) {
  if (double(shape.n_y) / accel.R < double(L))
    throw ParamError("infeasible acceleration: R=" + std::to_string(accel.R) +
                     " asks for fewer lines than the " + std::to_string(L) +
                     " ACS lines");
}

void attach_line_acs(SamplingMask& m, GridShape shape, double r_acs) {
  if (r_acs <= 0.0) return;
  const size_t L = acs_line_count(shape, r_acs);
  const size_t start = acs_line_start(shape, L);
  m.acs_info = AcsInfo{AcsKind::Lines, uint32_t(start), uint32_t(L), 0.0};
  m.acs_bits.assign(shape.n(), 0);
  for (size_t i = 0; i < shape.n_x; ++i)
    for (size_t j = start; j < start + L; ++j) m.acs_bits[i * shape.n_y + j] = 1;
}

void attach_disk_acs(SamplingMask& m, double rho) {
  m.acs_info = AcsInfo{AcsKind::Disk, 0, 0, rho};
  m.acs_bits = disk_cells(m.shape, rho);
}

void finish(SamplingMask& m, const SchemeParams& params) {
  m.scheme = params.scheme;
  m.seed = params.seed;
  m.accel_target = params.accel.R;
  m.accel_achieved = achieved_acceleration(m);
}

// Lines of the rational-stride progression: floor((o + k*n_y)/c) for
// k = 0..c-1, i.e. c lines with real spacing n_y/c and start o/c in
// [0, n_y/c). Every distinct floor pattern is reachable with o in [0, n_y).
std::set<size_t> stride_lines(size_t n_y, size_t c, size_t o) {
  std::set<size_t> lines;
  for (size_t k = 0; k < c; ++k) lines.insert((o + k * n_y) / c);
  return lines;
}

size_t union_size(const std::set<size_t>& a, const std::set<size_t>& b) {
  size_t extra = 0;
  for (size_t x : b)
    if (!a.count(x)) ++extra;
  return a.size() + extra;
}

// |S ∪ mirror(S)| with the conjugate mirror j -> n_y-1-j.
size_t mirror_union(const std::set<size_t>& s, size_t n_y) {
  std::set<size_t> u = s;
  for (size_t j : s) u.insert(n_y - 1 - j);
  return u.size();
}

struct StrideChoice {
  size_t c = 1;
  size_t o = 0;
  size_t diff = SIZE_MAX;
};

// Best line count c for a fixed start offset: minimize the distance of the
// ACS-united line total to round(n_y/R); ties prefer denser sampling.
StrideChoice pick_stride(GridShape shape, const AccelerationSpec& accel,
                         size_t o, const std::set<size_t>& acs) {
  const size_t n_y = shape.n_y;
  const size_t target = size_t(std::llround(double(n_y) / accel.R));
  StrideChoice best;
  for (size_t c = 1; c <= n_y; ++c) {
    const size_t total = union_size(stride_lines(n_y, c, o), acs);
    const size_t diff = total > target ? total - target : target - total;
    if (diff < best.diff || (diff == best.diff && c > best.c))
      best = StrideChoice{c, o, diff};
  }
  return best;
}

// ---- radial/spiral/vdpd calibration ----------------------------------

// Search integer N (spokes/arms/...) so that eval(N) cells land the
// acceleration inside the tolerance window; eval must be deterministic.
template <typename Eval>
size_t calibrate_count(GridShape shape, const AccelerationSpec& accel,
                       Eval&& eval, const char* what) {
  const double n = double(shape.n());
  std::map<size_t, size_t> memo;
  auto cells = [&](size_t N) {
    auto it = memo.find(N);
    if (it != memo.end()) return it->second;
    const size_t c = eval(N);
    memo.emplace(N, c);
    return c;
  };
  auto accel_of = [&](size_t N) { return n / double(cells(N)); };

  const size_t cap = 16 * std::max(shape.n_x, shape.n_y);
  size_t hi = 1;
  while (accel_of(hi) > accel.R && hi < cap) hi *= 2;
  size_t lo = hi > 1 ? hi / 2 : 1;
  // binary search the crossing, then scan its neighborhood for the best hit
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    if (accel_of(mid) > accel.R)
      lo = mid;
    else
      hi = mid;
  }
  size_t best_n = lo;
  double best_rel = std::abs(accel_of(lo) - accel.R) / accel.R;
  const size_t from = lo > 4 ? lo - 4 : 1;
  for (size_t N = from; N <= std::min(hi + 4, cap); ++N) {
    const double rel = std::abs(accel_of(N) - accel.R) / accel.R;
    if (rel < best_rel) {
      best_rel = rel;
      best_n = N;
    }
  }
  if (best_rel > accel.tolerance)
    throw NumericError(std::string(what) + ": cannot reach R=" +
                       std::to_string(accel.R) + " within tolerance; closest " +
                       std::to_string(accel_of(best_n)) + " at count " +
                       std::to_string(best_n) + " (bracket " +
                       std::to_string(accel_of(hi)) + ".." +
                       std::to_string(accel_of(lo > 1 ? lo : 1)) + ")");
  return best_n;
}

}  // namespace

SamplingMask acs_lines(GridShape shape, double r_acs) {
  if (!(r_acs > 0.0 && r_acs < 1.0))
    throw ParamError("acs_lines: r_acs must lie in (0, 1)");
  const size_t L = acs_line_count(shape, r_acs);
  if (L == 0)
    throw ParamError("acs_lines: r_acs=" + std::to_string(r_acs) +
                     " rounds to zero lines on " + std::to_string(shape.n_y) +
                     " phase encodes");
  SamplingMask m(shape);
  const size_t start = acs_line_start(shape, L);
  for (size_t j = start; j < start + L; ++j) set_line(m, j);
  attach_line_acs(m, shape, r_acs);
  m.accel_achieved = achieved_acceleration(m);
  return m;
}

SamplingMask random_rectilinear(GridShape shape, const SchemeParams& params) {
  const auto acs = acs_line_set(shape, params.accel.r_acs);
  const size_t L = acs.size();
  check_line_feasible(shape, params.accel, L);
  const size_t n_y = shape.n_y;
  double p = 1.0;
  if (n_y > L)
    p = (double(n_y) / params.accel.R - double(L)) / double(n_y - L);
  p = std::clamp(p, 0.0, 1.0);

  Rng rng(params.seed, stream_of(Scheme::RandomRect));
  std::set<size_t> lines = acs;
  for (size_t j = 0; j < n_y; ++j)
    if (rng.next_double() < p) lines.insert(j);

  SamplingMask m = from_lines(shape, lines);
  attach_line_acs(m, shape, params.accel.r_acs);
  finish(m, params);
  return m;
}

SamplingMask equispaced_rectilinear(GridShape shape, const SchemeParams& params) {
  const auto acs = acs_line_set(shape, params.accel.r_acs);
  check_line_feasible(shape, params.accel, acs.size());
  const size_t n_y = shape.n_y;

  size_t o;
  if (params.offset) {
    o = size_t(((*params.offset % int64_t(n_y)) + int64_t(n_y)) % int64_t(n_y));
  } else {
    Rng rng(params.seed, stream_of(Scheme::EquispacedRect));
    o = size_t(rng.next_double() * double(n_y));
  }
  const StrideChoice pick = pick_stride(shape, params.accel, o, acs);

  std::set<size_t> lines = stride_lines(n_y, pick.c, pick.o);
  for (size_t j : acs) lines.insert(j);
  SamplingMask m = from_lines(shape, lines);
  attach_line_acs(m, shape, params.accel.r_acs);
  finish(m, params);
  return m;
}

SamplingMask equispaced_plus_rectilinear(GridShape shape,
                                         const SchemeParams& params) {
  const auto acs = acs_line_set(shape, params.accel.r_acs);
  check_line_feasible(shape, params.accel, acs.size());
  const size_t n_y = shape.n_y;
  const size_t target = size_t(std::llround(double(n_y) / params.accel.R));

  // Joint deterministic search: hit the line budget first, then prefer the
  // offset whose sampled lines interleave best with their conjugate mirrors.
  size_t best_c = 1, best_o = 0, best_diff = SIZE_MAX, best_mu = 0;
  for (size_t c = 1; c <= n_y; ++c) {
    for (size_t o = 0; o < n_y; ++o) {
      std::set<size_t> lines = stride_lines(n_y, c, o);
      for (size_t j : acs) lines.insert(j);
      const size_t total = lines.size();
      const size_t diff = total > target ? total - target : target - total;
      if (diff > best_diff) continue;
      const size_t mu = mirror_union(lines, n_y);
      if (diff < best_diff || mu > best_mu ||
          (mu == best_mu && c > best_c)) {
        best_c = c;
        best_o = o;
        best_diff = diff;
        best_mu = mu;
      }
    }
  }

  std::set<size_t> lines = stride_lines(n_y, best_c, best_o);
  for (size_t j : acs) lines.insert(j);
  SamplingMask m = from_lines(shape, lines);
  attach_line_acs(m, shape, params.accel.r_acs);
  finish(m, params);
  return m;
}

SamplingMask gaussian_1d(GridShape shape, const SchemeParams& params) {
  const auto acs = acs_line_set(shape, params.accel.r_acs);
  check_line_feasible(shape, params.accel, acs.size());
  const size_t n_y = shape.n_y;
  const size_t target = size_t(std::llround(double(n_y) / params.accel.R));

  const double mu = double(n_y) / 2.0;
  const double sigma = 4.0 * std::sqrt(mu);
  Rng rng(params.seed, stream_of(Scheme::Gaussian1D));
  std::set<size_t> lines = acs;
  size_t draws = 0;
  while (lines.size() < target) {
    if (++draws > 1000000)
      throw NumericError("gaussian_1d: sampling stalled after 1e6 draws");
    const double x = mu + sigma * rng.next_gaussian();
    const long long j = std::llround(x);
    if (j < 0 || j >= (long long)n_y) continue;
    lines.insert(size_t(j));
  }

  SamplingMask m = from_lines(shape, lines);
  attach_line_acs(m, shape, params.accel.r_acs);
  finish(m, params);
  return m;
}

namespace detail {

std::vector<uint8_t> vdpd_once(GridShape shape, double slope, uint64_t seed,
                               double rho_acs) {
  const size_t n_x = shape.n_x, n_y = shape.n_y;
  std::vector<uint8_t> bits = disk_cells(shape, rho_acs);  // all zero when rho<0

  Rng rng(seed, stream_of(Scheme::VDPD));
  auto d_of = [&](double i, double j) {
    const double ci = double(n_x / 2), cj = double(n_y / 2);
    return 1.0 + slope * std::hypot(i - ci, j - cj);
  };

  struct Pt {
    int i, j;
  };
  std::vector<Pt> pts;
  // coarse buckets for neighbor lookups; violations of the acceptance rule
  // always lie within d(candidate) of the candidate
  const int B = 8;
  const int gx = int((n_x + B - 1) / B), gy = int((n_y + B - 1) / B);
  std::vector<std::vector<int>> buckets(size_t(gx) * gy);
  auto bucket_of = [&](int i, int j) { return (i / B) * gy + (j / B); };

  auto acceptable = [&](int i, int j) {
    const double dp = d_of(i, j);
    const int reach = int(dp) / B + 1;
    const int bi = i / B, bj = j / B;
    for (int ui = std::max(0, bi - reach); ui <= std::min(gx - 1, bi + reach); ++ui) {
      for (int uj = std::max(0, bj - reach); uj <= std::min(gy - 1, bj + reach); ++uj) {
        for (int idx : buckets[size_t(ui) * gy + uj]) {
          const Pt& q = pts[size_t(idx)];
          const double need = std::min(dp, d_of(q.i, q.j));
          const double dx = double(i - q.i), dy = double(j - q.j);
          if (dx * dx + dy * dy < need * need) return false;
        }
      }
    }
    return true;
  };
  auto add_point = [&](int i, int j) {
    pts.push_back(Pt{i, j});
    bits[size_t(i) * n_y + j] = 1;
    buckets[size_t(bucket_of(i, j))].push_back(int(pts.size()) - 1);
  };

  // initial dart: first unoccupied uniformly random cell
  for (int tries = 0; tries < 1000000; ++tries) {
    const int i = int(rng.next_below(n_x));
    const int j = int(rng.next_below(n_y));
    if (!bits[size_t(i) * n_y + j]) {
      add_point(i, j);
      break;
    }
  }
  if (pts.empty()) return bits;  // ACS disk covers the whole grid

  std::vector<int> active{0};
  while (!active.empty()) {
    const size_t slot = size_t(rng.next_below(active.size()));
    const Pt p = pts[size_t(active[slot])];
    const double dp = d_of(p.i, p.j);
    bool placed = false;
    for (int t = 0; t < 30; ++t) {
      const double rr = dp * (1.0 + rng.next_double());
      const double th = 2.0 * std::numbers::pi * rng.next_double();
      const long long ci = std::llround(p.i + rr * std::cos(th));
      const long long cj = std::llround(p.j + rr * std::sin(th));
      if (ci < 0 || ci >= (long long)n_x || cj < 0 || cj >= (long long)n_y) continue;
      if (bits[size_t(ci) * n_y + size_t(cj)]) continue;
      if (!acceptable(int(ci), int(cj))) continue;
      add_point(int(ci), int(cj));
      active.push_back(int(pts.size()) - 1);
      placed = true;
      break;
    }
    if (!placed) {
      active[slot] = active.back();
      active.pop_back();
    }
  }
  return bits;
}

}  // namespace detail

SamplingMask vdpd(GridShape shape, const SchemeParams& params,
                  double* slope_out) {
  const double rho_acs =
      params.accel.r_acs > 0.0
          ? std::sqrt(double(shape.n()) * params.accel.r_acs / std::numbers::pi)
          : -1.0;
  const double n = double(shape.n());
  auto accel_at = [&](double s) {
    auto bits = detail::vdpd_once(shape, s, params.seed, rho_acs);
    const size_t c = popcount(bits);
    return std::pair{n / double(c), std::move(bits)};
  };

  // grow the bracket until the spacing slope overshoots the target
  double lo = 0.0, hi = 1.0;
  auto [a_hi, bits_hi] = accel_at(hi);
  int grow = 0;
  while (a_hi < params.accel.R && grow++ < 14) {
    hi *= 2.0;
    std::tie(a_hi, bits_hi) = accel_at(hi);
  }
  auto [a_lo, bits_lo] = accel_at(lo);
  if (a_hi < params.accel.R || a_lo > params.accel.R)
    throw NumericError("vdpd: acceleration R=" + std::to_string(params.accel.R) +
                       " outside achievable range [" + std::to_string(a_lo) +
                       ", " + std::to_string(a_hi) + "]");

  double best_rel = std::abs(a_lo - params.accel.R) / params.accel.R;
  double best_slope = lo;
  std::vector<uint8_t> best_bits = std::move(bits_lo);
  if (std::abs(a_hi - params.accel.R) / params.accel.R < best_rel) {
    best_rel = std::abs(a_hi - params.accel.R) / params.accel.R;
    best_slope = hi;
    best_bits = std::move(bits_hi);
  }
  for (int it = 0; it < 40 && best_rel > 0.25 * params.accel.tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    auto [a_mid, bits_mid] = accel_at(mid);
    const double rel = std::abs(a_mid - params.accel.R) / params.accel.R;
    if (rel < best_rel) {
      best_rel = rel;
      best_slope = mid;
      best_bits = std::move(bits_mid);
    }
    if (a_mid < params.accel.R)
      lo = mid;
    else
      hi = mid;
  }
  if (best_rel > params.accel.tolerance)
    throw NumericError("vdpd: bisection stopped at relative error " +
                       std::to_string(best_rel) + " for R=" +
                       std::to_string(params.accel.R));

  if (slope_out) *slope_out = best_slope;
  SamplingMask m(shape);
  m.bits = std::move(best_bits);
  if (rho_acs >= 0.0) attach_disk_acs(m, rho_acs);
  finish(m, params);
  return m;
}

SamplingMask gaussian_2d(GridShape shape, const SchemeParams& params) {
  const double rho_acs =
      params.accel.r_acs > 0.0
          ? std::sqrt(double(shape.n()) * params.accel.r_acs / std::numbers::pi)
          : -1.0;
  SamplingMask m(shape);
  m.bits = disk_cells(shape, rho_acs);
  size_t set_count = popcount(m.bits);
  const size_t target = size_t(std::llround(double(shape.n()) / params.accel.R));
  if (target < set_count)
    throw ParamError("gaussian_2d: R=" + std::to_string(params.accel.R) +
                     " asks for fewer cells than the ACS disk holds");

  const double cx = double(shape.n_x) / 2.0, cy = double(shape.n_y) / 2.0;
  const double sx = 4.0 * std::sqrt(cx), sy = 4.0 * std::sqrt(cy);
  Rng rng(params.seed, stream_of(Scheme::Gaussian2D));
  size_t draws = 0;
  while (set_count < target) {
    if (++draws > 1000000)
      throw NumericError("gaussian_2d: sampling stalled after 1e6 draws");
    const long long i = std::llround(cx + sx * rng.next_gaussian());
    const long long j = std::llround(cy + sy * rng.next_gaussian());
    if (i < 0 || i >= (long long)shape.n_x || j < 0 || j >= (long long)shape.n_y)
      continue;
    uint8_t& cell = m.bits[size_t(i) * shape.n_y + size_t(j)];
    if (cell) continue;
    cell = 1;
    ++set_count;
  }

  if (rho_acs >= 0.0) attach_disk_acs(m, rho_acs);
  finish(m, params);
  return m;
}

namespace detail {

std::vector<uint8_t> rasterize_radial(GridShape shape, uint32_t n_spokes,
                                      int64_t offset_mult) {
  std::vector<uint8_t> bits(shape.n(), 0);
  const double ci = double(shape.n_x / 2), cj = double(shape.n_y / 2);
  for (uint32_t s = 0; s < n_spokes; ++s) {
    const double theta = std::numbers::pi * double(s) / double(n_spokes) +
                         double(offset_mult) * kGoldenAngle;
    for (int sgn : {1, -1}) {
      const double dx = sgn * std::cos(theta), dy = sgn * std::sin(theta);
      for (double t = 0.0;; t += 1.0) {
        const long long i = std::llround(ci + t * dx);
        const long long j = std::llround(cj + t * dy);
        if (i < 0 || i >= (long long)shape.n_x || j < 0 || j >= (long long)shape.n_y)
          break;
        bits[size_t(i) * shape.n_y + size_t(j)] = 1;
      }
    }
  }
  return bits;
}

std::vector<uint8_t> rasterize_spiral(GridShape shape, uint32_t n_arms,
                                      int64_t offset_mult, uint64_t seed) {
  std::vector<uint8_t> bits(shape.n(), 0);
  const double ci = double(shape.n_x / 2), cj = double(shape.n_y / 2);
  const double rho_max = 0.5 * std::min(shape.n_x, shape.n_y);
  const double a = rho_max / (2.0 * std::numbers::pi);
  // per-arm jitter so equal seeds reproduce and distinct offsets decorrelate
  Rng jit = Rng(seed, stream_of(Scheme::Spiral)).split(n_arms);
  for (uint32_t arm = 0; arm < n_arms; ++arm) {
    const double base =
        (double(arm) + double(offset_mult)) * 2.0 * std::numbers::pi / n_arms +
        0.15 * (2.0 * std::numbers::pi / n_arms) * jit.next_double();
    for (double phi = 0.0; phi <= 2.0 * std::numbers::pi;) {
      const double rho = a * phi;
      const long long i = std::llround(ci + rho * std::cos(phi + base));
      const long long j = std::llround(cj + rho * std::sin(phi + base));
      if (i >= 0 && i < (long long)shape.n_x && j >= 0 && j < (long long)shape.n_y)
        bits[size_t(i) * shape.n_y + size_t(j)] = 1;
      phi += 0.5 / std::sqrt(rho * rho + a * a);  // arc steps <= 0.5 cell
    }
  }
  return bits;
}

}  // namespace detail

SamplingMask radial_sim(GridShape shape, const SchemeParams& params) {
  int64_t mult;
  if (params.offset) {
    mult = *params.offset;
  } else {
    Rng rng(params.seed, stream_of(Scheme::Radial));
    mult = int64_t(rng.next_below(1 << 20));
  }
  const size_t n_spokes = calibrate_count(
      shape, params.accel,
      [&](size_t N) {
        return popcount(detail::rasterize_radial(shape, uint32_t(N), mult));
      },
      "radial_sim");
  SamplingMask m(shape);
  m.bits = detail::rasterize_radial(shape, uint32_t(n_spokes), mult);
  double rho = 0.0;
  const SamplingMask disk = largest_sampled_disk(m, &rho);
  m.acs_info = AcsInfo{AcsKind::Disk, 0, 0, rho};
  m.acs_bits = disk.bits;
  finish(m, params);
  return m;
}

SamplingMask spiral_sim(GridShape shape, const SchemeParams& params) {
  int64_t mult;
  if (params.offset) {
    mult = *params.offset;
  } else {
    Rng rng(params.seed, stream_of(Scheme::Spiral));
    mult = int64_t(rng.next_below(1 << 20));
  }
  const size_t n_arms = calibrate_count(
      shape, params.accel,
      [&](size_t N) {
        return popcount(
            detail::rasterize_spiral(shape, uint32_t(N), mult, params.seed));
      },
      "spiral_sim");
  SamplingMask m(shape);
  m.bits = detail::rasterize_spiral(shape, uint32_t(n_arms), mult, params.seed);
  double rho = 0.0;
  const SamplingMask disk = largest_sampled_disk(m, &rho);
  m.acs_info = AcsInfo{AcsKind::Disk, 0, 0, rho};
  m.acs_bits = disk.bits;
  finish(m, params);
  return m;
}

SamplingMask largest_sampled_disk(const SamplingMask& mask, double* rho_out) {
  if (popcount(mask.bits) == 0)
    throw ParamError("largest_sampled_disk: mask has no sampled cells");
  const GridShape shape = mask.shape;
  const size_t n_y = shape.n_y;
  const size_t center = (shape.n_x / 2) * n_y + (n_y / 2);

  SamplingMask disk(shape);
  disk.scheme = mask.scheme;
  disk.seed = mask.seed;
  disk.accel_target = mask.accel_target;

  if (!mask.bits[center]) {
    disk.bits[center] = 1;
    disk.degenerate_acs = true;
    if (rho_out) *rho_out = 0.0;
    return disk;
  }

  const double cap = 0.5 * std::min(shape.n_x, shape.n_y) - 0.5;
  std::vector<std::pair<double, size_t>> cells;
  for (size_t i = 0; i < shape.n_x; ++i) {
    for (size_t j = 0; j < n_y; ++j) {
      const double r = kspace_radius(shape, i, j);
      if (r <= cap + 1e-9) cells.emplace_back(r, i * n_y + j);
    }
  }
  std::sort(cells.begin(), cells.end());

  // walk radius groups outward while every cell of the group is sampled
  double rho = 0.0;
  bool all_inside = true;
  size_t idx = 0;
  while (idx < cells.size()) {
    size_t end = idx;
    while (end < cells.size() && cells[end].first == cells[idx].first) ++end;
    bool group_ok = true;
    for (size_t t = idx; t < end; ++t)
      if (!mask.bits[cells[t].second]) group_ok = false;
    if (!group_ok) {
      all_inside = false;
      break;
    }
    rho = cells[idx].first;
    idx = end;
  }
  if (all_inside) rho = cap;  // the whole inscribed disk is sampled

  disk.bits = disk_cells(shape, rho);
  if (rho_out) *rho_out = rho;
  return disk;
}

SamplingMask generate(GridShape shape, const SchemeParams& params) {
  switch (params.scheme) {
    case Scheme::RandomRect: return random_rectilinear(shape, params);
    case Scheme::EquispacedRect: return equispaced_rectilinear(shape, params);
    case Scheme::EquispacedPlusRect:
      return equispaced_plus_rectilinear(shape, params);
    case Scheme::Gaussian1D: return gaussian_1d(shape, params);
    case Scheme::VDPD: return vdpd(shape, params);
    case Scheme::Gaussian2D: return gaussian_2d(shape, params);
    case Scheme::Radial: return radial_sim(shape, params);
    case Scheme::Spiral: return spiral_sim(shape, params);
  }
  throw ParamError("generate: unknown scheme code " +
                   std::to_string(int(params.scheme)));
}

}  // namespace ksb
