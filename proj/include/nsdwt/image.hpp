#ifndef NSDWT_IMAGE_HPP
#define NSDWT_IMAGE_HPP

#include "nsdwt/step_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsdwt {

template <typename T>
concept Sample = std::same_as<T, float> || std::same_as<T, double>;

enum class Precision { single, double_precision };

template <Sample T>
constexpr Precision precision_of() {
  return std::same_as<T, float> ? Precision::single : Precision::double_precision;
}

constexpr const char* precision_name(Precision p) { return p == Precision::single ? "single" : "double"; }

/// Row-major raster.
template <Sample T>
class Image2D {
 public:
  using value_type = T;

  Image2D() = default;
  Image2D(int width, int height) : Image2D(width, height, std::vector<T>(checked_area(width, height))) {}
  Image2D(int width, int height, std::vector<T> samples)
      : width_(width), height_(height), samples_(std::move(samples)) {
    if (samples_.size() != checked_area(width, height))
      throw std::invalid_argument("image sample count does not match " + std::to_string(width) + "x" +
                                  std::to_string(height));
  }

  int width() const { return width_; }
  int height() const { return height_; }
  static constexpr Precision precision() { return precision_of<T>(); }

  T& at(int x, int y) { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  const T& at(int x, int y) const { return samples_[static_cast<std::size_t>(y) * width_ + x]; }

  std::span<T> samples() { return samples_; }
  std::span<const T> samples() const { return samples_; }
  T* data() { return samples_.data(); }
  const T* data() const { return samples_.data(); }

  friend bool operator==(const Image2D&, const Image2D&) = default;

 private:
  static std::size_t checked_area(int width, int height) {
    if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be positive");
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> samples_;
};

/// The four polyphase components, ordered as the quadruple.
template <Sample T>
struct SubbandQuad {
  Image2D<T> ll, hl, lh, hh;

  Image2D<T>& component(int c) {
    switch (c) {
      case Component::ll: return ll;
      case Component::hl: return hl;
      case Component::lh: return lh;
      case Component::hh: return hh;
    }
    throw std::out_of_range("component index");
  }
  const Image2D<T>& component(int c) const { return const_cast<SubbandQuad*>(this)->component(c); }

  int width() const { return ll.width(); }
  int height() const { return ll.height(); }

  void validate() const {
    for (int c = 1; c < 4; ++c)
      if (component(c).width() != ll.width() || component(c).height() != ll.height())
        throw std::invalid_argument("subbands must share dimensions");
  }

  friend bool operator==(const SubbandQuad&, const SubbandQuad&) = default;
};

template <Sample T>
void require_even(const Image2D<T>& image) {
  if (image.width() % 2 != 0 || image.height() % 2 != 0)
    throw std::invalid_argument("dimensions must be even (got " + std::to_string(image.width()) + "x" +
                                std::to_string(image.height()) + ")");
}

template <Sample T>
SubbandQuad<T> deinterleave(const Image2D<T>& image) {
  require_even(image);
  const int qw = image.width() / 2, qh = image.height() / 2;
  SubbandQuad<T> q{Image2D<T>(qw, qh), Image2D<T>(qw, qh), Image2D<T>(qw, qh), Image2D<T>(qw, qh)};
  for (int c = 0; c < 4; ++c) {
    auto& band = q.component(c);
    for (int j = 0; j < qh; ++j)
      for (int i = 0; i < qw; ++i) band.at(i, j) = image.at(2 * i + column_parity(c), 2 * j + row_parity(c));
  }
  return q;
}

template <Sample T>
Image2D<T> interleave(const SubbandQuad<T>& q) {
  q.validate();
  Image2D<T> image(2 * q.width(), 2 * q.height());
  for (int c = 0; c < 4; ++c) {
    const auto& band = q.component(c);
    for (int j = 0; j < q.height(); ++j)
      for (int i = 0; i < q.width(); ++i) image.at(2 * i + column_parity(c), 2 * j + row_parity(c)) = band.at(i, j);
  }
  return image;
}

template <Sample T>
double max_abs_diff(const Image2D<T>& a, const Image2D<T>& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw std::invalid_argument("image size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.samples().size(); ++i)
    worst = std::max(worst, std::abs(static_cast<double>(a.samples()[i]) - static_cast<double>(b.samples()[i])));
  return worst;
}

template <Sample T>
double max_abs_diff(const SubbandQuad<T>& a, const SubbandQuad<T>& b) {
  double worst = 0.0;
  for (int c = 0; c < 4; ++c) worst = std::max(worst, max_abs_diff(a.component(c), b.component(c)));
  return worst;
}

template <Sample To, Sample From>
Image2D<To> convert(const Image2D<From>& image) {
  std::vector<To> s(image.samples().begin(), image.samples().end());
  return Image2D<To>(image.width(), image.height(), std::move(s));
}

}  // namespace nsdwt

#endif  // NSDWT_IMAGE_HPP
