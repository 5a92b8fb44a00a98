#pragma once

#include "ksbench/core.hpp"

namespace ksb {

// Zero k-space outside the mask's ACS submask, coil-wise. The mask must
// carry an ACS region.
MultiCoilKSpace extract_acs(const MultiCoilKSpace& ksp, const SamplingMask& mask);

// RSS-based sensitivity estimation: per-coil inverse transform of the
// ACS-limited k-space divided by the RSS combination. Pixels whose RSS falls
// below 1e-9 of its maximum are zeroed (the division is undefined there).
// The result satisfies sum_k |S^k|^2 = 1 at every surviving pixel.
SensitivityMaps estimate_sensitivities(const MultiCoilKSpace& ksp,
                                       const SamplingMask& mask);

// Scale each pixel's coil vector to unit l2 norm; all-zero pixels stay zero
// and are counted in the result's n_zero_pixels.
SensitivityMaps normalize(const SensitivityMaps& maps);

}  // namespace ksb
