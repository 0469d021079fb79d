// Copyright 2026 The inpaintseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "inpaintseg/image_io.hpp"

#include <png.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace inpaintseg {
namespace fs = std::filesystem;

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    throw IoError(std::string(mode[0] == 'r' ? "cannot open " : "cannot write ") + path.string() +
                  ": " + std::strerror(errno));
  }
  return f;
}

struct PngHeader {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
};

// Reads the raw rows of a PNG into `rows_out` (row-major, bytes). Returns false on a libpng
// error, with `message` filled in. All C++ objects live outside the setjmp frame.
bool read_png_raw(std::FILE* fp, PngHeader& hdr, std::vector<unsigned char>& data,
                  std::string& message, bool header_only) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) {
    message = "png_create_read_struct failed";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> row_ptrs;
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    message = "corrupt PNG data";
    return false;
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  hdr.width = png_get_image_width(png, info);
  hdr.height = png_get_image_height(png, info);
  hdr.bit_depth = png_get_bit_depth(png, info);
  hdr.color_type = png_get_color_type(png, info);
  if (!header_only) {
    if (hdr.bit_depth == 16) png_set_swap(png);  // host little-endian order
    png_read_update_info(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    data.resize(rowbytes * hdr.height);
    row_ptrs.resize(hdr.height);
    for (png_uint_32 y = 0; y < hdr.height; ++y) row_ptrs[y] = data.data() + y * rowbytes;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

bool write_png_raw(std::FILE* fp, int width, int height, int bit_depth, int color_type,
                   const std::vector<unsigned char>& data, std::size_t rowbytes,
                   std::string& message) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) {
    message = "png_create_write_struct failed";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> row_ptrs(height);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, info ? &info : nullptr);
    message = "PNG encoding failed";
    return false;
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth == 16) png_set_swap(png);
  for (int y = 0; y < height; ++y) {
    row_ptrs[y] = const_cast<png_bytep>(data.data() + static_cast<std::size_t>(y) * rowbytes);
  }
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

bool has_png_signature(std::FILE* fp) {
  unsigned char sig[8] = {};
  const std::size_t n = std::fread(sig, 1, 8, fp);
  std::rewind(fp);
  return n == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

// Skips whitespace and '#' comments in a PNM header.
int pnm_next_int(std::istream& in) {
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int v = -1;
  if (!(in >> v)) throw FormatError("malformed PNM header");
  return v;
}

Slice load_pgm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[2] = {};
  in.read(magic, 2);
  if (magic[0] != 'P') throw FormatError("unsupported image format: " + path.string());
  if (magic[1] == '6' || magic[1] == '3') {
    throw FormatError("non-grayscale image rejected: " + path.string());
  }
  if (magic[1] != '5') throw FormatError("only binary PGM (P5) is supported: " + path.string());
  const int w = pnm_next_int(in);
  const int h = pnm_next_int(in);
  const int maxval = pnm_next_int(in);
  if (w < 1 || h < 1) throw FormatError("invalid PGM dimensions in " + path.string());
  if (maxval != 255) throw FormatError("only 8-bit PGM (maxval 255) is supported");
  in.get();  // single whitespace after maxval
  std::vector<unsigned char> bytes(static_cast<std::size_t>(w) * h);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw FormatError("truncated PGM data in " + path.string());
  }
  return Slice(w, h, std::vector<double>(bytes.begin(), bytes.end()));
}

std::vector<unsigned char> quantize(const Slice& slice) {
  std::vector<unsigned char> bytes(slice.size());
  auto px = slice.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (!(px[i] >= 0.0 && px[i] <= 255.0)) {
      throw ValueError("intensity " + std::to_string(px[i]) + " outside [0, 255]");
    }
    bytes[i] = static_cast<unsigned char>(std::lround(px[i]));
  }
  return bytes;
}

}  // namespace

Slice load_slice(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("no such file: " + path.string());
  auto fp = open_file(path, "rb");
  if (!has_png_signature(fp.get())) {
    fp.reset();
    return load_pgm(path);
  }
  PngHeader hdr;
  std::vector<unsigned char> data;
  std::string message;
  if (!read_png_raw(fp.get(), hdr, data, message, true)) throw FormatError(message);
  if (hdr.color_type & PNG_COLOR_MASK_COLOR) {
    throw FormatError("non-grayscale image rejected: " + path.string());
  }
  if (hdr.color_type != PNG_COLOR_TYPE_GRAY || hdr.bit_depth != 8) {
    throw FormatError("only 8-bit single-channel PNG is supported: " + path.string());
  }
  std::rewind(fp.get());
  if (!read_png_raw(fp.get(), hdr, data, message, false)) throw FormatError(message);
  return Slice(static_cast<int>(hdr.width), static_cast<int>(hdr.height),
               std::vector<double>(data.begin(), data.end()));
}

void save_slice(const Slice& slice, const fs::path& path) {
  const auto bytes = quantize(slice);
  if (path.extension() == ".pgm") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "P5\n" << slice.width() << ' ' << slice.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
    return;
  }
  auto fp = open_file(path, "wb");
  std::string message;
  if (!write_png_raw(fp.get(), slice.width(), slice.height(), 8, PNG_COLOR_TYPE_GRAY, bytes,
                     static_cast<std::size_t>(slice.width()), message)) {
    throw IoError(message + ": " + path.string());
  }
}

void save_rgb_png(const RgbImage& image, const fs::path& path) {
  std::vector<unsigned char> bytes(image.pixels.size() * 3);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    std::memcpy(&bytes[i * 3], image.pixels[i].data(), 3);
  }
  auto fp = open_file(path, "wb");
  std::string message;
  if (!write_png_raw(fp.get(), image.width, image.height, 8, PNG_COLOR_TYPE_RGB, bytes,
                     static_cast<std::size_t>(image.width) * 3, message)) {
    throw IoError(message + ": " + path.string());
  }
}

void save_gray16_png(int width, int height, const std::vector<std::uint16_t>& values,
                     const fs::path& path) {
  if (values.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionError("label count does not match image size");
  }
  std::vector<unsigned char> bytes(values.size() * 2);
  std::memcpy(bytes.data(), values.data(), bytes.size());
  auto fp = open_file(path, "wb");
  std::string message;
  if (!write_png_raw(fp.get(), width, height, 16, PNG_COLOR_TYPE_GRAY, bytes,
                     static_cast<std::size_t>(width) * 2, message)) {
    throw IoError(message + ": " + path.string());
  }
}

std::vector<std::uint16_t> load_gray16_png(const fs::path& path, int& width, int& height) {
  auto fp = open_file(path, "rb");
  if (!has_png_signature(fp.get())) throw FormatError("not a PNG file: " + path.string());
  PngHeader hdr;
  std::vector<unsigned char> data;
  std::string message;
  if (!read_png_raw(fp.get(), hdr, data, message, false)) throw FormatError(message);
  if (hdr.color_type != PNG_COLOR_TYPE_GRAY || hdr.bit_depth != 16) {
    throw FormatError("expected 16-bit grayscale PNG: " + path.string());
  }
  width = static_cast<int>(hdr.width);
  height = static_cast<int>(hdr.height);
  std::vector<std::uint16_t> values(static_cast<std::size_t>(width) * height);
  std::memcpy(values.data(), data.data(), values.size() * 2);
  return values;
}

void save_pfm(int width, int height, const std::vector<double>& values, const fs::path& path) {
  static_assert(std::endian::native == std::endian::little, "PFM writer assumes little-endian host");
  if (values.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionError("value count does not match image size");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "Pf\n" << width << ' ' << height << "\n-1.0\n";
  std::vector<float> row(width);
  for (int y = height - 1; y >= 0; --y) {
    for (int x = 0; x < width; ++x) row[x] = static_cast<float>(values[static_cast<std::size_t>(y) * width + x]);
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<double> load_pfm(const fs::path& path, int& width, int& height) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string magic;
  double scale = 0.0;
  in >> magic >> width >> height >> scale;
  if (magic != "Pf" || width < 1 || height < 1) throw FormatError("not a grayscale PFM: " + path.string());
  if (scale >= 0.0) throw FormatError("big-endian PFM not supported: " + path.string());
  in.get();
  std::vector<double> values(static_cast<std::size_t>(width) * height);
  std::vector<float> row(width);
  for (int y = height - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!in) throw FormatError("truncated PFM data: " + path.string());
    for (int x = 0; x < width; ++x) values[static_cast<std::size_t>(y) * width + x] = row[x];
  }
  return values;
}

}  // namespace inpaintseg
