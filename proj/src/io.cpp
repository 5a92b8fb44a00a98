#include "ksbench/io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>

namespace ksb {

namespace {

void put_u32(std::string& out, uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(char((v >> (8 * b)) & 0xFF));
}
void put_u64(std::string& out, uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(char((v >> (8 * b)) & 0xFF));
}
void put_f64(std::string& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}
void put_f32(std::string& out, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(out, bits);
}

struct Reader {
  std::vector<char> buf;
  size_t pos = 0;
  std::string name;

  void need(size_t count, const char* what) const {
    if (pos + count > buf.size())
      throw FormatError(name + ": truncated reading " + what + " at byte " +
                        std::to_string(pos) + " (need " + std::to_string(count) +
                        " more bytes, have " + std::to_string(buf.size() - pos) + ")");
  }
  uint32_t u32(const char* what) {
    need(4, what);
    uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= uint32_t(uint8_t(buf[pos + b])) << (8 * b);
    pos += 4;
    return v;
  }
  uint64_t u64(const char* what) {
    need(8, what);
    uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= uint64_t(uint8_t(buf[pos + b])) << (8 * b);
    pos += 8;
    return v;
  }
  double f64(const char* what) {
    const uint64_t bits = u64(what);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  float f32(const char* what) {
    const uint32_t bits = u32(what);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
  uint8_t byte(const char* what) {
    need(1, what);
    return uint8_t(buf[pos++]);
  }
};

Reader slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "' for reading");
  Reader r;
  r.name = path.filename().string();
  in.seekg(0, std::ios::end);
  r.buf.resize(size_t(in.tellg()));
  in.seekg(0);
  in.read(r.buf.data(), std::streamsize(r.buf.size()));
  if (!in) throw FormatError("read failure on '" + path.string() + "'");
  return r;
}

void dump(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw FormatError("write failure on '" + path.string() + "'");
}

void check_magic(Reader& r, const char* magic) {
  r.need(4, "magic");
  if (std::memcmp(r.buf.data(), magic, 4) != 0)
    throw FormatError(r.name + ": bad magic at byte 0, expected \"" +
                      std::string(magic) + "\"");
  r.pos = 4;
}

}  // namespace

std::string csv_double(double v) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::vector<uint8_t> disk_cells(GridShape shape, double rho) {
  std::vector<uint8_t> bits(shape.n(), 0);
  if (rho < 0.0) return bits;
  for (size_t i = 0; i < shape.n_x; ++i)
    for (size_t j = 0; j < shape.n_y; ++j)
      if (kspace_radius(shape, i, j) <= rho + 1e-9) bits[i * shape.n_y + j] = 1;
  return bits;
}

void write_ksr(const std::filesystem::path& path, const MultiCoilKSpace& data,
               int dtype) {
  if (dtype != 0 && dtype != 1)
    throw ParamError("write_ksr: dtype must be 0 (f32) or 1 (f64)");
  std::string out;
  out.reserve(17 + data.data.size() * (dtype ? 16 : 8));
  out += "KSR1";
  put_u32(out, data.n_c);
  put_u32(out, data.shape.n_x);
  put_u32(out, data.shape.n_y);
  out.push_back(char(dtype));
  for (const cxd& z : data.data) {
    if (dtype == 1) {
      put_f64(out, z.real());
      put_f64(out, z.imag());
    } else {
      put_f32(out, float(z.real()));
      put_f32(out, float(z.imag()));
    }
  }
  dump(path, out);
}

MultiCoilKSpace read_ksr(const std::filesystem::path& path) {
  Reader r = slurp(path);
  check_magic(r, "KSR1");
  const uint32_t n_c = r.u32("n_c");
  const uint32_t n_x = r.u32("n_x");
  const uint32_t n_y = r.u32("n_y");
  const uint8_t dtype = r.byte("dtype");
  if (n_c < 1) throw FormatError(r.name + ": n_c must be >= 1, got 0 (byte 4)");
  if (n_x < 2 || n_y < 2)
    throw FormatError(r.name + ": grid must be at least 2x2, got " +
                      std::to_string(n_x) + "x" + std::to_string(n_y) + " (byte 8)");
  if (dtype != 0 && dtype != 1)
    throw FormatError(r.name + ": unknown dtype code " + std::to_string(dtype) +
                      " at byte 16");
  const size_t n_vals = size_t(n_c) * n_x * n_y;
  const size_t expect = n_vals * (dtype ? 16 : 8);
  const size_t have = r.buf.size() - r.pos;
  if (have != expect)
    throw FormatError(r.name + ": payload is " + std::to_string(have) +
                      " bytes, expected " + std::to_string(expect) +
                      " (header says " + std::to_string(n_c) + "x" +
                      std::to_string(n_x) + "x" + std::to_string(n_y) + ")");
  MultiCoilKSpace out(n_c, GridShape(n_x, n_y));
  for (size_t idx = 0; idx < n_vals; ++idx) {
    if (dtype == 1) {
      const double re = r.f64("re");
      const double im = r.f64("im");
      out.data[idx] = cxd{re, im};
    } else {
      const float re = r.f32("re");
      const float im = r.f32("im");
      out.data[idx] = cxd{double(re), double(im)};
    }
  }
  return out;
}

void write_mask(const std::filesystem::path& path, const SamplingMask& mask) {
  std::string out;
  out.reserve(45 + mask.bits.size());
  out += "MSK1";
  put_u32(out, mask.shape.n_x);
  put_u32(out, mask.shape.n_y);
  out.push_back(char(uint8_t(mask.scheme)));
  put_f64(out, mask.accel_target);
  put_u64(out, mask.seed);
  double radius = -1.0;
  uint32_t ls = 0, lc = 0;
  switch (mask.acs_info.kind) {
    case AcsKind::None: break;
    case AcsKind::Lines:
      radius = 0.0;
      ls = mask.acs_info.line_start;
      lc = mask.acs_info.line_count;
      break;
    case AcsKind::Disk: radius = mask.acs_info.disk_radius; break;
  }
  put_f64(out, radius);
  put_u32(out, ls);
  put_u32(out, lc);
  for (uint8_t b : mask.bits) out.push_back(char(b ? 1 : 0));
  dump(path, out);
}

SamplingMask read_mask(const std::filesystem::path& path) {
  Reader r = slurp(path);
  check_magic(r, "MSK1");
  const uint32_t n_x = r.u32("n_x");
  const uint32_t n_y = r.u32("n_y");
  if (n_x < 2 || n_y < 2)
    throw FormatError(r.name + ": grid must be at least 2x2, got " +
                      std::to_string(n_x) + "x" + std::to_string(n_y) + " (byte 4)");
  const uint8_t scheme = r.byte("scheme");
  if (scheme > 7)
    throw FormatError(r.name + ": unknown scheme code " + std::to_string(scheme) +
                      " at byte 12");
  const double accel = r.f64("accel");
  const uint64_t seed = r.u64("seed");
  const double radius = r.f64("acs radius");
  const uint32_t ls = r.u32("acs line start");
  const uint32_t lc = r.u32("acs line count");

  SamplingMask m(GridShape(n_x, n_y));
  m.scheme = Scheme(scheme);
  m.accel_target = accel;
  m.seed = seed;

  const size_t n = m.shape.n();
  const size_t have = r.buf.size() - r.pos;
  if (have != n)
    throw FormatError(r.name + ": payload is " + std::to_string(have) +
                      " bytes, expected " + std::to_string(n));
  for (size_t idx = 0; idx < n; ++idx) {
    const uint8_t b = uint8_t(r.buf[r.pos + idx]);
    if (b > 1)
      throw FormatError(r.name + ": cell byte " + std::to_string(b) +
                        " at byte " + std::to_string(r.pos + idx) +
                        " (cells must be 0 or 1)");
    m.bits[idx] = b;
  }

  if (radius < 0.0) {
    m.acs_info = AcsInfo{};  // no ACS
    if (lc != 0)
      throw FormatError(r.name + ": ACS line count set without an ACS region");
  } else if (radius == 0.0 && lc >= 1) {
    if (size_t(ls) + lc > n_y)
      throw FormatError(r.name + ": ACS lines [" + std::to_string(ls) + ", " +
                        std::to_string(ls + lc) + ") exceed " + std::to_string(n_y) +
                        " phase-encode lines");
    m.acs_info = AcsInfo{AcsKind::Lines, ls, lc, 0.0};
    m.acs_bits.assign(n, 0);
    for (size_t i = 0; i < n_x; ++i)
      for (size_t j = ls; j < size_t(ls) + lc; ++j) m.acs_bits[i * n_y + j] = 1;
  } else {
    m.acs_info = AcsInfo{AcsKind::Disk, 0, 0, radius};
    m.acs_bits = disk_cells(m.shape, radius);
  }

  if (m.has_acs()) {
    const size_t ci = (n_x / 2) * size_t(n_y) + (n_y / 2);
    m.degenerate_acs =
        m.acs_info.kind == AcsKind::Disk && radius == 0.0 && m.bits[ci] == 0;
    if (!m.degenerate_acs) {
      for (size_t idx = 0; idx < n; ++idx)
        if (m.acs_bits[idx] && !m.bits[idx])
          throw FormatError(r.name + ": ACS cell at index " + std::to_string(idx) +
                            " is not sampled in the mask");
    }
  }
  if (popcount(m.bits) == 0)
    throw FormatError(r.name + ": mask has no sampled cells");
  m.accel_achieved = achieved_acceleration(m);
  return m;
}

void write_mask_pgm(const std::filesystem::path& path, const SamplingMask& mask) {
  std::string out = "P5\n" + std::to_string(mask.shape.n_y) + " " +
                    std::to_string(mask.shape.n_x) + "\n255\n";
  for (uint8_t b : mask.bits) out.push_back(char(b ? 255 : 0));
  dump(path, out);
}

void write_image_pgm(const std::filesystem::path& path, const RealImage& img) {
  double hi = 0.0;
  for (double v : img.data) hi = std::max(hi, v);
  std::string out = "P5\n" + std::to_string(img.shape.n_y) + " " +
                    std::to_string(img.shape.n_x) + "\n255\n";
  for (double v : img.data) {
    const double t = hi > 0.0 ? v / hi : 0.0;
    const int level = int(t <= 0.0 ? 0 : (t >= 1.0 ? 255 : t * 255.0 + 0.5));
    out.push_back(char(level));
  }
  dump(path, out);
}

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<ReconReport>& records) {
  if (records.empty()) throw ParamError("write_metrics_csv: no records");
  std::string out = "case,scheme,R,ssim,psnr,nmse,reported_ssim,reported_nmse\n";
  for (const ReconReport& r : records) {
    out += std::to_string(r.case_id);
    out += ',';
    out += scheme_name(r.scheme);
    out += ',';
    out += csv_double(r.R);
    out += ',';
    out += csv_double(r.metrics.ssim);
    out += ',';
    out += csv_double(r.metrics.psnr_db);
    out += ',';
    out += csv_double(r.metrics.nmse);
    out += ',';
    out += csv_double(r.metrics.reported_ssim());
    out += ',';
    out += csv_double(r.metrics.reported_nmse());
    out += '\n';
  }
  dump(path, out);
}

}  // namespace ksb
