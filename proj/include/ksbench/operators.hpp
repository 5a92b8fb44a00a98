#pragma once

#include "ksbench/core.hpp"

namespace ksb {

// Centered orthonormal 2D FFT pair: DC sits at (n_x/2, n_y/2), both
// directions scaled by 1/sqrt(n) so the transform is unitary and
// ifft2c(fft2c(x)) == x to machine precision.
ComplexImage fft2c(const ComplexImage& img);
ComplexImage ifft2c(const ComplexImage& ksp);

// Plane-wise transforms over a coil stack.
MultiCoilKSpace fft2c_coils(const MultiCoilKSpace& stack);
MultiCoilKSpace ifft2c_coils(const MultiCoilKSpace& stack);

// Per-coil images S^k * img (the expand operator E_S).
MultiCoilKSpace expand(const ComplexImage& img, const SensitivityMaps& maps);

// Sum_k conj(S^k) * z^k (the reduce operator R_S).
ComplexImage reduce(const MultiCoilKSpace& coil_imgs, const SensitivityMaps& maps);

// Zero every cell whose mask bit is unset, identically on all coils.
MultiCoilKSpace apply_mask(const MultiCoilKSpace& ksp, const SamplingMask& mask);

struct ForwardOperator {
  SamplingMask mask;
  SensitivityMaps maps;

  ForwardOperator(SamplingMask m, SensitivityMaps s);
};

// A x = apply_mask(fft2c(expand(x)))
MultiCoilKSpace forward(const ForwardOperator& op, const ComplexImage& img);
// A* y = reduce(ifft2c(apply_mask(y)))
ComplexImage adjoint(const ForwardOperator& op, const MultiCoilKSpace& ksp);

// Pixelwise sqrt of the sum of squared coil magnitudes.
RealImage rss(const MultiCoilKSpace& coil_imgs);
// |reduce(coil_imgs, maps)|; conjugate-weighted, never divides by S.
RealImage sense_combine(const MultiCoilKSpace& coil_imgs, const SensitivityMaps& maps);

}  // namespace ksb
