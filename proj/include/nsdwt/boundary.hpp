#ifndef NSDWT_BOUNDARY_HPP
#define NSDWT_BOUNDARY_HPP

#include <stdexcept>

namespace nsdwt {

/// Whole-sample symmetric reflection of index into [0, size): -1 -> 1,
/// size -> size - 2. Indices further out fold repeatedly, so the result is
/// defined for any integer.
constexpr int extend(int index, int size) {
  if (size < 1) throw std::invalid_argument("extend: size must be >= 1");
  if (size == 1) return 0;
  const int period = 2 * (size - 1);
  int r = index % period;
  if (r < 0) r += period;
  return r < size ? r : period - r;
}

}  // namespace nsdwt

#endif  // NSDWT_BOUNDARY_HPP
