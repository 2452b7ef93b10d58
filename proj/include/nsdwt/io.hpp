#ifndef NSDWT_IO_HPP
#define NSDWT_IO_HPP

#include "nsdwt/image.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsdwt {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// What a raw file holds. Stored in the fourth header word.
enum class RawContent : std::uint32_t { image = 0, ll = 1, hl = 2, lh = 3, hh = 4 };

inline constexpr std::array<char, 4> raw_magic{'N', 'S', 'D', 'W'};

namespace detail {

inline std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void dump(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

inline void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<unsigned char>(v >> (8 * b)));
}

inline std::uint32_t get_u32(const unsigned char* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 | std::uint32_t{p[3]} << 24;
}

// PGM header token reader; skips whitespace and '#' comments.
struct PgmCursor {
  const std::vector<unsigned char>& bytes;
  std::size_t pos = 0;

  long next_int(const std::string& what) {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    long v = 0;
    std::size_t digits = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos++] - '0');
      if (++digits > 9) throw IoError("PGM " + what + " out of range");
    }
    if (digits == 0) throw IoError("malformed PGM header: expected " + what);
    return v;
  }
};

}  // namespace detail

/// Binary (P5) PGM, 8 or 16 bit. Samples are scaled to [0, 1] by maxval.
inline Image2D<double> read_pgm(const std::filesystem::path& path) {
  const auto bytes = detail::slurp(path);
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') throw IoError(path.string() + " is not a binary PGM");
  detail::PgmCursor cur{bytes, 2};
  const long w = cur.next_int("width"), h = cur.next_int("height"), maxval = cur.next_int("maxval");
  if (w < 1 || h < 1) throw IoError("PGM dimensions must be positive");
  if (maxval < 1 || maxval > 65535) throw IoError("PGM maxval must be in 1..65535");
  if (cur.pos >= bytes.size() || !std::isspace(bytes[cur.pos])) throw IoError("malformed PGM header");
  ++cur.pos;
  const std::size_t bps = maxval > 255 ? 2 : 1;
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (bytes.size() - cur.pos < n * bps) throw IoError("PGM pixel data truncated");
  Image2D<double> img(static_cast<int>(w), static_cast<int>(h));
  const unsigned char* p = bytes.data() + cur.pos;
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned v = bps == 2 ? (unsigned{p[2 * i]} << 8 | p[2 * i + 1]) : p[i];
    img.samples()[i] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return img;
}

/// Writes a P5 PGM; samples are clamped to [0, 1] and rounded.
template <Sample T>
void write_pgm(const std::filesystem::path& path, const Image2D<T>& img, int maxval = 255) {
  if (maxval < 1 || maxval > 65535) throw std::invalid_argument("PGM maxval must be in 1..65535");
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n" + std::to_string(maxval) + "\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  for (T s : img.samples()) {
    const auto v = static_cast<unsigned>(std::lround(std::clamp(static_cast<double>(s), 0.0, 1.0) * maxval));
    if (maxval > 255) out.push_back(static_cast<unsigned char>(v >> 8));
    out.push_back(static_cast<unsigned char>(v & 0xff));
  }
  detail::dump(path, out);
}

/// Raw float32 little endian behind a 16-byte header: magic, width, height,
/// content tag (all u32 LE).
template <Sample T>
void write_raw(const std::filesystem::path& path, const Image2D<T>& img, RawContent content = RawContent::image) {
  std::vector<unsigned char> out(raw_magic.begin(), raw_magic.end());
  detail::put_u32(out, static_cast<std::uint32_t>(img.width()));
  detail::put_u32(out, static_cast<std::uint32_t>(img.height()));
  detail::put_u32(out, static_cast<std::uint32_t>(content));
  out.reserve(out.size() + 4 * img.samples().size());
  for (T s : img.samples()) detail::put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(s)));
  detail::dump(path, out);
}

struct RawImage {
  Image2D<float> image;
  RawContent content = RawContent::image;
};

inline RawImage read_raw(const std::filesystem::path& path) {
  const auto bytes = detail::slurp(path);
  if (bytes.size() < 16 || !std::equal(raw_magic.begin(), raw_magic.end(), bytes.begin()))
    throw IoError(path.string() + " is not a raw float image");
  const std::uint32_t w = detail::get_u32(&bytes[4]), h = detail::get_u32(&bytes[8]), tag = detail::get_u32(&bytes[12]);
  if (w < 1 || h < 1 || w > (1u << 20) || h > (1u << 20)) throw IoError("raw image dimensions out of range");
  if (tag > 4) throw IoError("unknown raw content tag " + std::to_string(tag));
  const std::size_t n = std::size_t{w} * h;
  if (bytes.size() != 16 + 4 * n) throw IoError("raw image size does not match its header");
  Image2D<float> img(static_cast<int>(w), static_cast<int>(h));
  for (std::size_t i = 0; i < n; ++i) img.samples()[i] = std::bit_cast<float>(detail::get_u32(&bytes[16 + 4 * i]));
  return {std::move(img), static_cast<RawContent>(tag)};
}

/// Loads by extension: .pgm as PGM, anything else as raw.
inline Image2D<double> read_image(const std::filesystem::path& path) {
  if (path.extension() == ".pgm") return read_pgm(path);
  return convert<double>(read_raw(path).image);
}

}  // namespace nsdwt

#endif  // NSDWT_IO_HPP
