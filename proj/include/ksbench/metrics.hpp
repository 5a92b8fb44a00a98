#pragma once

#include <span>
#include <string>

#include "ksbench/core.hpp"

namespace ksb {

struct MetricRecord {
  double ssim = 0.0;
  double psnr_db = 0.0;  // +infinity when MSE is exactly zero
  double nmse = 0.0;
  double reported_ssim() const { return ssim * 100.0; }
  double reported_nmse() const { return nmse * 1000.0; }
};

// One bench cell: metrics for (case, scheme, R). A failed cell keeps its key
// and carries NaN metrics plus the error text.
struct ReconReport {
  int case_id = 0;
  Scheme scheme = Scheme::RandomRect;
  double R = 0.0;
  MetricRecord metrics;
  bool failed = false;
  std::string error;
};

// Mean SSIM over all fully contained 7x7 windows (stride 1), uniform window
// statistics, c1=(0.01*L)^2, c2=(0.03*L)^2 with L = max(u)-min(u) of the
// reference (L=0 treated as 1). Images must be at least 7x7.
double ssim(const RealImage& u, const RealImage& v);

// 20*log10(max(u)/sqrt(MSE)); +infinity when MSE == 0; max(u) <= 0 is a
// domain error.
double psnr(std::span<const double> u, std::span<const double> v);

// ||u - v||^2 / ||u||^2; zero reference is a domain error.
double nmse(std::span<const double> u, std::span<const double> v);

// l1 distance (sum of absolute differences) plus (1 - ssim).
double combined_loss(const RealImage& ref, const RealImage& pred);

MetricRecord score(const RealImage& ref, const RealImage& pred);

}  // namespace ksb
