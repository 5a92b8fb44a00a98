#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ksbench/core.hpp"
#include "ksbench/metrics.hpp"

namespace ksb {

// KSR1: "KSR1" | n_c,n_x,n_y u32 LE | dtype u8 (0=f32 pairs, 1=f64 pairs) |
// coil-major row-major interleaved (re,im) payload.
void write_ksr(const std::filesystem::path& path, const MultiCoilKSpace& data,
               int dtype = 1);
MultiCoilKSpace read_ksr(const std::filesystem::path& path);

// MSK1: "MSK1" | n_x,n_y u32 LE | scheme u8 | accel f64 LE | seed u64 LE |
// acs-disk-radius f64 LE | acs-line-start u32 LE | acs-line-count u32 LE |
// one byte per cell (0/1), row-major.
// ACS encoding: radius < 0 -> no ACS; radius == 0 with line-count >= 1 ->
// centered full lines [start, start+count); radius >= 0 with line-count 0 ->
// centered disk of that radius (0 = center cell only).
void write_mask(const std::filesystem::path& path, const SamplingMask& mask);
SamplingMask read_mask(const std::filesystem::path& path);

// PGM (P5) exports with 0/255 levels; raster width n_y, height n_x.
void write_mask_pgm(const std::filesystem::path& path, const SamplingMask& mask);
// Real image scaled so its max maps to 255 (all-zero image stays black).
void write_image_pgm(const std::filesystem::path& path, const RealImage& img);

// CSV: header `case,scheme,R,ssim,psnr,nmse,reported_ssim,reported_nmse`,
// shortest round-trip decimal formatting, "inf"/"nan" tokens, LF endings.
void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<ReconReport>& records);

// Shortest decimal string that round-trips the value (CSV cell format).
std::string csv_double(double v);

// Cells with kspace_radius <= rho (+1e-9 slop); shared by mask generation
// and MSK1 ACS reconstruction so both sides agree bit-for-bit.
std::vector<uint8_t> disk_cells(GridShape shape, double rho);

}  // namespace ksb
