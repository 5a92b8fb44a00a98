#pragma once

#include <functional>
#include <vector>

#include "ksbench/core.hpp"

namespace ksb {

enum class Combine : uint8_t { Rss = 0, Sense = 1 };
enum class UnrollDomain : uint8_t { Image = 0, Kspace = 1 };

// Additive image-domain correction plugged into the unrolled iteration in
// place of a learned regularizer; an empty function is the zero map.
using Regularizer = std::function<ComplexImage(const ComplexImage&)>;

// Soft-threshold shrinkage of the image magnitude, returned as the additive
// correction shrink(w) - w.
Regularizer make_shrinkage_regularizer(double threshold);

struct UnrolledConfig {
  uint32_t T = 8;
  std::vector<double> alphas = {1.0};  // broadcast when a single value is given
  Regularizer regularizer;             // empty = zero map
  UnrollDomain domain = UnrollDomain::Image;
};

struct CgConfig {
  double lambda = 1e-4;
  uint32_t max_iters = 50;
  double rtol = 1e-6;
};

// Per-coil inverse transform followed by RSS or SENSE combination. maps is
// required for the SENSE combination.
RealImage zero_filled(const MultiCoilKSpace& ksp_sub, Combine combine,
                      const SensitivityMaps* maps = nullptr);

// One k-space data-consistency update:
//   y_next = y - alpha * U(y - y_tilde) + fft2c(expand(h_img, maps))
// The last term is dropped when h_img is null; maps is required with h_img.
MultiCoilKSpace dc_step(const MultiCoilKSpace& y, const MultiCoilKSpace& y_tilde,
                        const SamplingMask& mask, double alpha,
                        const ComplexImage* h_img = nullptr,
                        const SensitivityMaps* maps = nullptr);

// Unrolled gradient descent, T steps. Image domain iterates
//   w <- w - alpha_t * A*(A w - y_tilde) + H(w)      starting from w = A* y_tilde;
// k-space domain iterates the dc_step from y = y_tilde. Returns the final
// image magnitude. Input k-space is scaled so the peak zero-filled coil
// magnitude is 1 during the solve, undone on output.
RealImage unrolled_recon(const MultiCoilKSpace& ksp_sub, const SamplingMask& mask,
                         const SensitivityMaps& maps, const UnrolledConfig& cfg);

// Conjugate-gradient solve of (A*A + lambda I) w = A* y_tilde from w = 0,
// stopping at the relative residual or the iteration cap; returns |w|.
// Same peak normalization as unrolled_recon. iters_out/residuals_out, when
// given, receive the iteration count and the residual-norm history
// (including the initial residual).
RealImage cg_sense(const MultiCoilKSpace& ksp_sub, const SamplingMask& mask,
                   const SensitivityMaps& maps, const CgConfig& cfg,
                   uint32_t* iters_out = nullptr,
                   std::vector<double>* residuals_out = nullptr);

}  // namespace ksb
