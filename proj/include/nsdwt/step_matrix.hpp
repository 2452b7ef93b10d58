#ifndef NSDWT_STEP_MATRIX_HPP
#define NSDWT_STEP_MATRIX_HPP

#include "nsdwt/laurent.hpp"

#include <array>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nsdwt {

/// Positions of the polyphase quadruple. The 2x2 block of samples at
/// (2m + column parity, 2n + row parity) maps to these indices.
enum Component : int {
  ll = 0,  // even row, even column
  hl = 1,  // even row, odd column
  lh = 2,  // odd row, even column
  hh = 3,  // odd row, odd column
};

constexpr int column_parity(int component) { return component & 1; }
constexpr int row_parity(int component) { return (component >> 1) & 1; }

/// 2x2 univariate polyphase matrix acting on (even, odd) and producing
/// (low, high).
template <Coefficient T>
struct PolyphaseMatrix {
  std::array<std::array<Laurent1<T>, 2>, 2> e;

  static PolyphaseMatrix identity() {
    PolyphaseMatrix m;
    m.e[0][0] = Laurent1<T>::constant(T{1});
    m.e[1][1] = Laurent1<T>::constant(T{1});
    return m;
  }
  static PolyphaseMatrix predict(const Laurent1<T>& p) {
    auto m = identity();
    m.e[1][0] = p;
    return m;
  }
  static PolyphaseMatrix update(const Laurent1<T>& u) {
    auto m = identity();
    m.e[0][1] = u;
    return m;
  }
  static PolyphaseMatrix scale(const T& low, const T& high) {
    PolyphaseMatrix m;
    m.e[0][0] = Laurent1<T>::constant(low);
    m.e[1][1] = Laurent1<T>::constant(high);
    return m;
  }

  friend PolyphaseMatrix operator*(const PolyphaseMatrix& a, const PolyphaseMatrix& b) {
    PolyphaseMatrix r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.e[i][j] = a.e[i][0] * b.e[0][j] + a.e[i][1] * b.e[1][j];
    return r;
  }
  friend bool operator==(const PolyphaseMatrix&, const PolyphaseMatrix&) = default;
};

template <Coefficient T>
double max_coefficient_diff(const PolyphaseMatrix<T>& a, const PolyphaseMatrix<T>& b) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) worst = std::max(worst, max_coefficient_diff(a.e[i][j], b.e[i][j]));
  return worst;
}

/// 4x4 matrix of bivariate Laurent polynomials acting on the quadruple
/// (ll, hl, lh, hh). Row r, column c: contribution of component c to the
/// new value of component r.
template <Coefficient T>
class StepMatrix {
 public:
  using poly = Laurent2<T>;
  using grid = std::array<std::array<poly, 4>, 4>;

  StepMatrix() = default;
  explicit StepMatrix(std::string label) : label_(std::move(label)) {}

  static StepMatrix identity(std::string label = "I") {
    StepMatrix m(std::move(label));
    for (int i = 0; i < 4; ++i) m.e_[i][i] = poly::one();
    return m;
  }

  const poly& at(int row, int col) const { return e_.at(row).at(col); }
  poly& at(int row, int col) { return e_.at(row).at(col); }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool is_identity() const {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i == j ? !e_[i][j].is_one() : !e_[i][j].is_zero()) return false;
    return true;
  }

  bool has_unit_diagonal() const {
    for (int i = 0; i < 4; ++i)
      if (!e_[i][i].is_one()) return false;
    return true;
  }

  bool is_unit_lower_triangular() const {
    if (!has_unit_diagonal()) return false;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (!e_[i][j].is_zero()) return false;
    return true;
  }

  bool is_unit_upper_triangular() const {
    if (!has_unit_diagonal()) return false;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < i; ++j)
        if (!e_[i][j].is_zero()) return false;
    return true;
  }

  /// Diagonal with constant entries: a pointwise gain, no neighbor access.
  bool is_constant_diagonal() const {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i != j && !e_[i][j].is_zero()) return false;
        if (i == j && (!e_[i][j].is_constant() || e_[i][j].is_zero())) return false;
      }
    return true;
  }

  /// True when no entry reads a neighboring quadruple.
  bool is_local() const {
    for (const auto& row : e_)
      for (const auto& p : row)
        if (!p.is_constant()) return false;
    return true;
  }

  /// Largest |k_m|, |k_n| over all entries.
  std::pair<int, int> reach() const {
    int rm = 0, rn = 0;
    for (const auto& row : e_)
      for (const auto& p : row) {
        auto [m, n] = p.reach();
        rm = std::max(rm, m);
        rn = std::max(rn, n);
      }
    return {rm, rn};
  }

  friend StepMatrix operator*(const StepMatrix& a, const StepMatrix& b) {
    StepMatrix r(a.label_ + " " + b.label_);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        poly acc;
        for (int k = 0; k < 4; ++k)
          if (!a.e_[i][k].is_zero() && !b.e_[k][j].is_zero()) acc = acc + a.e_[i][k] * b.e_[k][j];
        r.e_[i][j] = std::move(acc);
      }
    return r;
  }

  /// Entry-wise equality; labels are metadata and do not participate.
  friend bool operator==(const StepMatrix& a, const StepMatrix& b) { return a.e_ == b.e_; }

 private:
  grid e_{};
  std::string label_;
};

/// Symbolic product a * b; b acts first.
template <Coefficient T>
StepMatrix<T> fuse(const StepMatrix<T>& a, const StepMatrix<T>& b) {
  return a * b;
}

/// 1-D polyphase matrix along the horizontal axis: acts on the pairs
/// (ll, hl) and (lh, hh) with z -> z_m.
template <Coefficient T>
StepMatrix<T> horizontal(const PolyphaseMatrix<T>& a, std::string label) {
  StepMatrix<T> m(std::move(label));
  for (int base : {0, 2})
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m.at(base + i, base + j) = embed_horizontal(a.e[i][j]);
  return m;
}

/// Vertical counterpart: acts on (ll, lh) and (hl, hh) with z -> z_n.
template <Coefficient T>
StepMatrix<T> vertical(const PolyphaseMatrix<T>& a, std::string label) {
  StepMatrix<T> m(std::move(label));
  for (int base : {0, 1})
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m.at(base + 2 * i, base + 2 * j) = embed_vertical(a.e[i][j]);
  return m;
}

/// Inverse of a unit triangular matrix (I + N with N nilpotent) or of a
/// constant diagonal gain. Throws std::domain_error otherwise.
template <Coefficient T>
StepMatrix<T> invert(const StepMatrix<T>& m) {
  if (m.is_unit_lower_triangular() || m.is_unit_upper_triangular()) {
    const auto id = StepMatrix<T>::identity();
    StepMatrix<T> nil;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) nil.at(i, j) = i == j ? Laurent2<T>{} : m.at(i, j);
    // (I + N)^{-1} = I - N + N^2 - N^3, N^4 = 0 for 4x4 strictly triangular.
    const auto n2 = nil * nil;
    const auto n3 = n2 * nil;
    StepMatrix<T> r(m.label() + "^-1");
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r.at(i, j) = id.at(i, j) - nil.at(i, j) + n2.at(i, j) - n3.at(i, j);
    return r;
  }
  if (m.is_constant_diagonal()) {
    StepMatrix<T> r(m.label() + "^-1");
    for (int i = 0; i < 4; ++i) r.at(i, i) = Laurent2<T>::constant(T{1} / m.at(i, i).coefficient(0, 0));
    return r;
  }
  throw std::domain_error("step matrix '" + m.label() + "' is neither unit triangular nor a constant gain");
}

template <Coefficient To, Coefficient From>
StepMatrix<To> promote(const StepMatrix<From>& m) {
  StepMatrix<To> r(m.label());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.at(i, j) = promote<To>(m.at(i, j));
  return r;
}

template <Coefficient T>
double max_coefficient_diff(const StepMatrix<T>& a, const StepMatrix<T>& b) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) worst = std::max(worst, max_coefficient_diff(a.at(i, j), b.at(i, j)));
  return worst;
}

template <Coefficient T>
std::string to_string(const StepMatrix<T>& m) {
  std::ostringstream os;
  os << m.label() << " =\n";
  for (int i = 0; i < 4; ++i) {
    os << "  [";
    for (int j = 0; j < 4; ++j) os << (j ? " | " : " ") << to_string(m.at(i, j));
    os << " ]\n";
  }
  return os.str();
}

}  // namespace nsdwt

#endif  // NSDWT_STEP_MATRIX_HPP
