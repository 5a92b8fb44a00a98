#include <doctest.h>

#include <cmath>

#include "ksbench/core.hpp"
#include "ksbench/rng.hpp"

using namespace ksb;

TEST_SUITE("core") {

TEST_CASE("scheme names round-trip and reject unknowns") {
  for (int c = 0; c < 8; ++c) {
    const Scheme s = Scheme(c);
    CHECK(scheme_from_name(scheme_name(s)) == s);
  }
  CHECK(std::string(scheme_name(Scheme::RandomRect)) == "random");
  CHECK(std::string(scheme_name(Scheme::EquispacedPlusRect)) == "equispaced_plus");
  CHECK_THROWS_AS(scheme_from_name("cartesian"), ParamError);
  CHECK_THROWS_AS(scheme_from_name(""), ParamError);
}

TEST_CASE("GridShape rejects degenerate dimensions") {
  CHECK_THROWS_AS(GridShape(1, 8), ParamError);
  CHECK_THROWS_AS(GridShape(8, 0), ParamError);
  const GridShape s(6, 10);
  CHECK(s.n() == 60);
  CHECK(s == GridShape(6, 10));
}

TEST_CASE("MultiCoilKSpace needs at least one coil") {
  CHECK_THROWS_AS(MultiCoilKSpace(0, GridShape(4, 4)), ParamError);
  MultiCoilKSpace y(3, GridShape(4, 5));
  y.at(2, 3, 4) = cxd{1.0, -2.0};
  CHECK(y.coil(2)[3 * 5 + 4] == cxd{1.0, -2.0});
}

TEST_CASE("kspace_radius measures from the DC cell") {
  // DC sits at (n_x/2, n_y/2), the cell the centered transform maps to
  // zero frequency.
  CHECK(kspace_radius(GridShape(4, 4), 2, 2) == 0.0);
  CHECK(kspace_radius(GridShape(3, 3), 0, 1) == doctest::Approx(1.0));
  const double corner = kspace_radius(GridShape(64, 64), 0, 0);
  CHECK(corner == doctest::Approx(std::hypot(32.0, 32.0)).epsilon(1e-15));
  CHECK_THROWS_AS(kspace_radius(GridShape(4, 4), 4, 0), ParamError);
  CHECK_THROWS_AS(kspace_radius(GridShape(4, 4), 0, 7), ParamError);
}

TEST_CASE("kspace_radius is reflection-symmetric on odd grids") {
  const GridShape s(5, 7);
  for (size_t i = 0; i < s.n_x; ++i)
    for (size_t j = 0; j < s.n_y; ++j)
      CHECK(kspace_radius(s, i, j) ==
            doctest::Approx(kspace_radius(s, s.n_x - 1 - i, s.n_y - 1 - j))
                .epsilon(1e-15));
}

TEST_CASE("achieved_acceleration counts set bits") {
  SamplingMask full(GridShape(8, 8));
  full.bits.assign(64, 1);
  CHECK(achieved_acceleration(full) == 1.0);

  // 8 of 16 lines set => half the cells => R = 2
  SamplingMask half(GridShape(16, 16));
  for (size_t j = 0; j < 16; j += 2)
    for (size_t i = 0; i < 16; ++i) half.bits[i * 16 + j] = 1;
  CHECK(achieved_acceleration(half) == 2.0);

  SamplingMask empty(GridShape(4, 4));
  CHECK_THROWS_AS(achieved_acceleration(empty), ParamError);
}

TEST_CASE("achieved_acceleration matches a brute-force count and survives transposition") {
  const GridShape s(11, 17);
  SamplingMask m(s);
  Rng rng(7);
  size_t set = 0;
  for (auto& b : m.bits) {
    b = rng.next_double() < 0.3 ? 1 : 0;
    set += b;
  }
  REQUIRE(set > 0);
  CHECK(achieved_acceleration(m) == doctest::Approx(double(s.n()) / double(set)));

  SamplingMask t(GridShape(17, 11));
  for (size_t i = 0; i < s.n_x; ++i)
    for (size_t j = 0; j < s.n_y; ++j) t.bits[j * 11 + i] = m.bits[i * 17 + j];
  CHECK(achieved_acceleration(t) == achieved_acceleration(m));
}

TEST_CASE("AccelerationSpec validates its ranges") {
  CHECK_THROWS_AS(AccelerationSpec(0.5, 0.1), ParamError);
  CHECK_THROWS_AS(AccelerationSpec(2.0, -0.1), ParamError);
  CHECK_THROWS_AS(AccelerationSpec(2.0, 1.0), ParamError);
  CHECK_THROWS_AS(AccelerationSpec(2.0, 0.1, 0.0), ParamError);
  const AccelerationSpec ok(4.0, 0.08, 0.05);
  CHECK(ok.R == 4.0);
  CHECK(ok.tolerance == 0.05);
}

TEST_CASE("acs_mask lifts the ACS bits into a standalone mask") {
  SamplingMask m(GridShape(4, 4));
  m.bits.assign(16, 1);
  m.scheme = Scheme::Gaussian1D;
  m.seed = 99;
  m.acs_info = AcsInfo{AcsKind::Lines, 1, 2, 0.0};
  m.acs_bits.assign(16, 0);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 1; j <= 2; ++j) m.acs_bits[i * 4 + j] = 1;

  const SamplingMask acs = m.acs_mask();
  CHECK(acs.bits == m.acs_bits);
  CHECK(acs.scheme == Scheme::Gaussian1D);
  CHECK(acs.seed == 99);
  CHECK_FALSE(acs.has_acs());

  SamplingMask bare(GridShape(4, 4));
  bare.bits.assign(16, 1);
  const SamplingMask none = bare.acs_mask();
  CHECK(popcount(none.bits) == 0);
}

TEST_CASE("popcount") {
  CHECK(popcount({}) == 0);
  CHECK(popcount({0, 1, 1, 0, 1}) == 3);
  CHECK(popcount(std::vector<uint8_t>(100, 1)) == 100);
}

}  // TEST_SUITE("core")
