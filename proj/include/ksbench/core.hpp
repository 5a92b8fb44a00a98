#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ksb {

using cxd = std::complex<double>;

// Error taxonomy, mapped to CLI exit codes 2/3/4.
struct ParamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// n_x rows (frequency-encode), n_y columns (phase-encode).
struct GridShape {
  uint32_t n_x = 0;
  uint32_t n_y = 0;

  GridShape() = default;
  GridShape(uint32_t rows, uint32_t cols) : n_x(rows), n_y(cols) {
    if (n_x < 2 || n_y < 2)
      throw ParamError("GridShape: both dimensions must be >= 2, got " +
                       std::to_string(n_x) + "x" + std::to_string(n_y));
  }
  size_t n() const { return size_t(n_x) * n_y; }
  bool operator==(const GridShape&) const = default;
};

// Dense row-major complex plane. Values stored as double pairs even when
// files carry 32-bit floats, so solver arithmetic never loses precision.
struct ComplexImage {
  GridShape shape;
  std::vector<cxd> data;

  ComplexImage() = default;
  explicit ComplexImage(GridShape s) : shape(s), data(s.n(), cxd{0.0, 0.0}) {}
  cxd& at(size_t i, size_t j) { return data[i * shape.n_y + j]; }
  const cxd& at(size_t i, size_t j) const { return data[i * shape.n_y + j]; }
};

// Real-valued row-major plane (phantoms, magnitude reconstructions, metrics).
struct RealImage {
  GridShape shape;
  std::vector<double> data;

  RealImage() = default;
  explicit RealImage(GridShape s) : shape(s), data(s.n(), 0.0) {}
  double& at(size_t i, size_t j) { return data[i * shape.n_y + j]; }
  const double& at(size_t i, size_t j) const { return data[i * shape.n_y + j]; }
};

// Stack of n_c complex planes, coil-major then row-major. Doubles as the
// container for per-coil image stacks (same layout, spatial domain).
struct MultiCoilKSpace {
  uint32_t n_c = 0;
  GridShape shape;
  std::vector<cxd> data;

  MultiCoilKSpace() = default;
  MultiCoilKSpace(uint32_t coils, GridShape s)
      : n_c(coils), shape(s), data(size_t(coils) * s.n(), cxd{0.0, 0.0}) {
    if (n_c < 1) throw ParamError("MultiCoilKSpace: need at least one coil");
  }
  cxd* coil(size_t k) { return data.data() + k * shape.n(); }
  const cxd* coil(size_t k) const { return data.data() + k * shape.n(); }
  cxd& at(size_t k, size_t i, size_t j) { return data[(k * shape.n_x + i) * shape.n_y + j]; }
  const cxd& at(size_t k, size_t i, size_t j) const {
    return data[(k * shape.n_x + i) * shape.n_y + j];
  }
};

// Per-coil spatial sensitivity profiles S^k. `normalized` means the coil
// vector at every nonzero pixel has unit l2 norm (within 1e-6).
struct SensitivityMaps {
  uint32_t n_c = 0;
  GridShape shape;
  std::vector<cxd> data;
  bool normalized = false;
  size_t n_zero_pixels = 0;  // pixels left at zero by normalize/estimation

  SensitivityMaps() = default;
  SensitivityMaps(uint32_t coils, GridShape s)
      : n_c(coils), shape(s), data(size_t(coils) * s.n(), cxd{0.0, 0.0}) {
    if (n_c < 1) throw ParamError("SensitivityMaps: need at least one coil");
  }
  cxd* coil(size_t k) { return data.data() + k * shape.n(); }
  const cxd* coil(size_t k) const { return data.data() + k * shape.n(); }
  cxd& at(size_t k, size_t i, size_t j) { return data[(k * shape.n_x + i) * shape.n_y + j]; }
  const cxd& at(size_t k, size_t i, size_t j) const {
    return data[(k * shape.n_x + i) * shape.n_y + j];
  }
};

enum class Scheme : uint8_t {
  RandomRect = 0,
  EquispacedRect = 1,
  EquispacedPlusRect = 2,
  Gaussian1D = 3,
  VDPD = 4,
  Gaussian2D = 5,
  Radial = 6,
  Spiral = 7,
};

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);  // ParamError on unknown

// How the ACS region of a mask was constructed; drives serialization and
// reconstruction of the ACS bits from compact metadata.
enum class AcsKind : uint8_t { None = 0, Lines = 1, Disk = 2 };

struct AcsInfo {
  AcsKind kind = AcsKind::None;
  uint32_t line_start = 0;   // Lines: first phase-encode line index
  uint32_t line_count = 0;   // Lines: number of lines
  double disk_radius = -1.0; // Disk: radius in cells (0 = center cell only)
};

// Binary Cartesian sampling pattern with generator metadata. Bits are
// row-major, one byte per cell (0/1). ACS bits, when present, are a subset
// of `bits` derived deterministically from `acs_info`.
struct SamplingMask {
  GridShape shape;
  std::vector<uint8_t> bits;
  Scheme scheme = Scheme::RandomRect;
  double accel_target = 1.0;
  double accel_achieved = 0.0;  // n / popcount, recorded by generate/read
  uint64_t seed = 0;
  AcsInfo acs_info;
  std::vector<uint8_t> acs_bits;  // empty when acs_info.kind == None
  bool degenerate_acs = false;    // disk ACS whose center cell is unsampled

  SamplingMask() = default;
  explicit SamplingMask(GridShape s) : shape(s), bits(s.n(), 0) {}
  bool has_acs() const { return acs_info.kind != AcsKind::None; }
  // The U_ACS submask as a standalone mask (no nested ACS).
  SamplingMask acs_mask() const;
};

struct AccelerationSpec {
  double R = 2.0;          // target acceleration, >= 1
  double r_acs = 0.0;      // ACS fraction in [0,1); 0 disables ACS
  double tolerance = 0.10; // relative acceleration tolerance

  AccelerationSpec() = default;
  AccelerationSpec(double R_, double r_acs_, double tol = 0.10)
      : R(R_), r_acs(r_acs_), tolerance(tol) {
    if (!(R >= 1.0)) throw ParamError("AccelerationSpec: R must be >= 1");
    if (!(r_acs >= 0.0 && r_acs < 1.0))
      throw ParamError("AccelerationSpec: r_acs must lie in [0, 1)");
    if (!(tolerance > 0.0)) throw ParamError("AccelerationSpec: tolerance must be > 0");
  }
};

// Distance from cell (i,j) to the DC cell (n_x/2, n_y/2). The DC cell is
// where fft2c puts the zero-frequency coefficient, so radii measure true
// k-space distance on the centered grid.
double kspace_radius(GridShape shape, size_t i, size_t j);

// n / (number of set bits); ParamError on an all-zero mask.
double achieved_acceleration(const SamplingMask& mask);

size_t popcount(const std::vector<uint8_t>& bits);

}  // namespace ksb
