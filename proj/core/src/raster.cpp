#include <fstream>
#include <sstream>

#include "pcrot/errors.hpp"
#include "pcrot/experiments.hpp"

namespace pcrot {

namespace {

// fixed palette indexed by p1 + 2*p2
constexpr uint8_t kPalette[4][3] = {
    {31, 119, 180},   // p = (0,0)
    {255, 127, 14},   // p = (1,0)
    {44, 160, 44},    // p = (0,1)
    {214, 39, 40},    // p = (1,1)
};

}  // namespace

Raster raster(const ContractedRotation& sys, int width, int height) {
  if (sys.d != 2) throw domain_error("raster: pixmap output requires d = 2");
  if (width < 2 || height < 2) throw domain_error("raster: resolution must be >= 2 per axis");

  IntVector k = chi(sys);
  Raster r;
  r.width = width;
  r.height = height;
  r.codes.resize(static_cast<std::size_t>(width) * height);
  r.image_rgb.assign(static_cast<std::size_t>(3) * width * height, 0);
  r.mask_gray.assign(static_cast<std::size_t>(width) * height, 0);

  for (int row = 0; row < height; ++row) {
    // row 0 at the top: x2 near 1
    Rational x2 = Rational(2LL * (height - 1 - row) + 1, 2LL * height);
    for (int col = 0; col < width; ++col) {
      Rational x1 = Rational(2LL * col + 1, 2LL * width);
      RVector x{x1, x2};
      IntVector e = code_e(sys, x);
      Letter p(2);
      p[0] = static_cast<uint8_t>(e[0] - k[0]);
      p[1] = static_cast<uint8_t>(e[1] - k[1]);
      std::size_t idx = static_cast<std::size_t>(row) * width + col;
      r.codes[idx] = p;
      int pi = p[0] + 2 * p[1];
      r.image_rgb[3 * idx + 0] = kPalette[pi][0];
      r.image_rgb[3 * idx + 1] = kPalette[pi][1];
      r.image_rgb[3 * idx + 2] = kPalette[pi][2];
    }
  }

  for (int row = 0; row < height; ++row)
    for (int col = 0; col < width; ++col) {
      std::size_t idx = static_cast<std::size_t>(row) * width + col;
      const Letter& p = r.codes[idx];
      bool crossing = false;
      const int dr[4] = {-1, 1, 0, 0};
      const int dc[4] = {0, 0, -1, 1};
      for (int nb = 0; nb < 4 && !crossing; ++nb) {
        int rr = row + dr[nb], cc = col + dc[nb];
        if (rr < 0 || rr >= height || cc < 0 || cc >= width) continue;
        if (r.codes[static_cast<std::size_t>(rr) * width + cc] != p) crossing = true;
      }
      if (crossing) r.mask_gray[idx] = 255;
    }
  return r;
}

std::string raster_csv(const ContractedRotation& sys, int per_axis) {
  if (per_axis < 2) throw domain_error("raster_csv: resolution must be >= 2 per axis");
  const int d = sys.d;
  IntVector k = chi(sys);
  std::ostringstream os;
  for (int i = 0; i < d; ++i) os << "x" << (i + 1) << ",";
  for (int i = 0; i < d; ++i) os << "f" << (i + 1) << ",";
  for (int i = 0; i < d; ++i) os << "p" << (i + 1) << (i + 1 < d ? "," : "");
  os << "\n";

  long total = 1;
  for (int i = 0; i < d; ++i) total *= per_axis;
  for (long idx = 0; idx < total; ++idx) {
    RVector x(d);
    long rest = idx;
    for (int i = 0; i < d; ++i) {
      x[i] = Rational(2 * (rest % per_axis) + 1, 2LL * per_axis);
      rest /= per_axis;
    }
    RVector fx = apply_f(sys, x);
    IntVector e = code_e(sys, x);
    for (int i = 0; i < d; ++i) os << x[i].str() << ",";
    for (int i = 0; i < d; ++i) os << fx[i].str() << ",";
    for (int i = 0; i < d; ++i)
      os << (e[static_cast<std::size_t>(i)] - k[static_cast<std::size_t>(i)]) << (i + 1 < d ? "," : "");
    os << "\n";
  }
  return os.str();
}

void write_pixmap_p6(const std::string& path, const Raster& r) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw parse_error("cannot open for writing: " + path);
  f << "P6\n" << r.width << " " << r.height << "\n255\n";
  f.write(reinterpret_cast<const char*>(r.image_rgb.data()),
          static_cast<std::streamsize>(r.image_rgb.size()));
}

void write_pixmap_p5_mask(const std::string& path, const Raster& r) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw parse_error("cannot open for writing: " + path);
  f << "P5\n" << r.width << " " << r.height << "\n255\n";
  f.write(reinterpret_cast<const char*>(r.mask_gray.data()),
          static_cast<std::streamsize>(r.mask_gray.size()));
}

}  // namespace pcrot
