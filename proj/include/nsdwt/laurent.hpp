#ifndef NSDWT_LAURENT_HPP
#define NSDWT_LAURENT_HPP

#include "nsdwt/coefficient.hpp"

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>

// Exponent convention used throughout the library: a stored exponent k
// stands for the monomial z^{-k}, exactly as in G(z) = sum_k g_k z^{-k}.
// Applied to a signal, the term g_k z^{-k} reads the sample at index i - k,
// so the stencil offset of a term is -k.

namespace nsdwt {

/// Finite univariate Laurent polynomial. No zero coefficients are stored.
template <Coefficient T>
class Laurent1 {
 public:
  using coefficient_type = T;
  using map_type = std::map<int, T>;

  Laurent1() = default;

  static Laurent1 constant(const T& c) { return monomial(0, c); }

  /// c * z^{-k}
  static Laurent1 monomial(int k, const T& c) {
    Laurent1 p;
    p.accumulate(k, c);
    return p;
  }

  /// Taps listed in increasing k starting at first_k.
  static Laurent1 from_taps(int first_k, std::initializer_list<T> taps) {
    Laurent1 p;
    int k = first_k;
    for (const T& c : taps) p.accumulate(k++, c);
    return p;
  }

  const map_type& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  T coefficient(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? T{0} : it->second;
  }

  void accumulate(int k, const T& c) {
    if (nsdwt::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second = it->second + c;
      if (nsdwt::is_zero(it->second)) terms_.erase(it);
    }
  }

  std::complex<double> evaluate(std::complex<double> z) const {
    std::complex<double> sum{0.0, 0.0};
    for (const auto& [k, c] : terms_)
      sum += coefficient_traits<T>::to_double(c) * std::pow(z, -k);
    return sum;
  }

  friend Laurent1 operator+(const Laurent1& a, const Laurent1& b) {
    Laurent1 r = a;
    for (const auto& [k, c] : b.terms_) r.accumulate(k, c);
    return r;
  }
  friend Laurent1 operator-(const Laurent1& a) {
    Laurent1 r;
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
    return r;
  }
  friend Laurent1 operator-(const Laurent1& a, const Laurent1& b) { return a + (-b); }
  friend Laurent1 operator*(const Laurent1& a, const Laurent1& b) {
    Laurent1 r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.accumulate(ka + kb, ca * cb);
    return r;
  }
  friend bool operator==(const Laurent1&, const Laurent1&) = default;

 private:
  map_type terms_;
};

/// Finite bivariate Laurent polynomial in z_m (horizontal) and z_n
/// (vertical). The key (k_m, k_n) stands for z_m^{-k_m} z_n^{-k_n}.
template <Coefficient T>
class Laurent2 {
 public:
  using coefficient_type = T;
  using exponent = std::pair<int, int>;
  using map_type = std::map<exponent, T>;

  Laurent2() = default;

  static Laurent2 constant(const T& c) { return monomial(0, 0, c); }
  static Laurent2 one() { return constant(T{1}); }

  static Laurent2 monomial(int km, int kn, const T& c) {
    Laurent2 p;
    p.accumulate({km, kn}, c);
    return p;
  }

  const map_type& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == exponent{0, 0} &&
           terms_.begin()->second == T{1};
  }

  /// True when the only term sits at exponent (0, 0): no neighbor access.
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == exponent{0, 0});
  }

  T coefficient(int km, int kn) const {
    auto it = terms_.find({km, kn});
    return it == terms_.end() ? T{0} : it->second;
  }

  void accumulate(exponent k, const T& c) {
    if (nsdwt::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second = it->second + c;
      if (nsdwt::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Largest |k_m| and |k_n| over the support.
  std::pair<int, int> reach() const {
    int rm = 0, rn = 0;
    for (const auto& [k, c] : terms_) {
      rm = std::max(rm, std::abs(k.first));
      rn = std::max(rn, std::abs(k.second));
    }
    return {rm, rn};
  }

  std::complex<double> evaluate(std::complex<double> zm, std::complex<double> zn) const {
    std::complex<double> sum{0.0, 0.0};
    for (const auto& [k, c] : terms_)
      sum += coefficient_traits<T>::to_double(c) * std::pow(zm, -k.first) * std::pow(zn, -k.second);
    return sum;
  }

  friend Laurent2 operator+(const Laurent2& a, const Laurent2& b) {
    Laurent2 r = a;
    for (const auto& [k, c] : b.terms_) r.accumulate(k, c);
    return r;
  }
  friend Laurent2 operator-(const Laurent2& a) {
    Laurent2 r;
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
    return r;
  }
  friend Laurent2 operator-(const Laurent2& a, const Laurent2& b) { return a + (-b); }
  friend Laurent2 operator*(const Laurent2& a, const Laurent2& b) {
    Laurent2 r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        r.accumulate({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
  }
  friend bool operator==(const Laurent2&, const Laurent2&) = default;

 private:
  map_type terms_;
};

template <Coefficient T>
Laurent1<T> add(const Laurent1<T>& a, const Laurent1<T>& b) { return a + b; }
template <Coefficient T>
Laurent2<T> add(const Laurent2<T>& a, const Laurent2<T>& b) { return a + b; }
template <Coefficient T>
Laurent1<T> mul(const Laurent1<T>& a, const Laurent1<T>& b) { return a * b; }
template <Coefficient T>
Laurent2<T> mul(const Laurent2<T>& a, const Laurent2<T>& b) { return a * b; }

/// G*(z_m, z_n) = G(z_n, z_m)
template <Coefficient T>
Laurent2<T> transpose(const Laurent2<T>& a) {
  Laurent2<T> r;
  for (const auto& [k, c] : a.terms()) r.accumulate({k.second, k.first}, c);
  return r;
}

/// G(z_m, z_n) = G(z_m)
template <Coefficient T>
Laurent2<T> embed_horizontal(const Laurent1<T>& g) {
  Laurent2<T> r;
  for (const auto& [k, c] : g.terms()) r.accumulate({k, 0}, c);
  return r;
}

/// G(z_m, z_n) = G(z_n)
template <Coefficient T>
Laurent2<T> embed_vertical(const Laurent1<T>& g) {
  Laurent2<T> r;
  for (const auto& [k, c] : g.terms()) r.accumulate({0, k}, c);
  return r;
}

/// Even/odd polyphase components: G(z) = G_e(z^2) + z^{-1} G_o(z^2).
/// Even collects k = 2j, odd collects k = 2j + 1 (the odd part carries the
/// unit delay).
template <Coefficient T>
struct PolyphaseComponents {
  Laurent1<T> even;
  Laurent1<T> odd;
  friend bool operator==(const PolyphaseComponents&, const PolyphaseComponents&) = default;
};

inline int floor_div2(int k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); }

template <Coefficient T>
PolyphaseComponents<T> polyphase_split(const Laurent1<T>& g) {
  PolyphaseComponents<T> r;
  for (const auto& [k, c] : g.terms()) {
    const int j = floor_div2(k);
    if (k - 2 * j == 0)
      r.even.accumulate(j, c);
    else
      r.odd.accumulate(j, c);
  }
  return r;
}

template <Coefficient T>
Laurent1<T> interleave(const PolyphaseComponents<T>& pc) {
  Laurent1<T> r;
  for (const auto& [j, c] : pc.even.terms()) r.accumulate(2 * j, c);
  for (const auto& [j, c] : pc.odd.terms()) r.accumulate(2 * j + 1, c);
  return r;
}

template <Coefficient To, Coefficient From>
Laurent1<To> promote(const Laurent1<From>& p) {
  Laurent1<To> r;
  for (const auto& [k, c] : p.terms()) r.accumulate(k, promote_coefficient<To>(c));
  return r;
}

template <Coefficient To, Coefficient From>
Laurent2<To> promote(const Laurent2<From>& p) {
  Laurent2<To> r;
  for (const auto& [k, c] : p.terms()) r.accumulate(k, promote_coefficient<To>(c));
  return r;
}

/// Largest coefficient difference over the union of both supports.
template <Coefficient T>
double max_coefficient_diff(const Laurent2<T>& a, const Laurent2<T>& b) {
  double worst = 0.0;
  const auto diff = a - b;
  for (const auto& [k, c] : diff.terms())
    worst = std::max(worst, std::fabs(coefficient_traits<T>::to_double(c)));
  return worst;
}

template <Coefficient T>
double max_coefficient_diff(const Laurent1<T>& a, const Laurent1<T>& b) {
  double worst = 0.0;
  const auto diff = a - b;
  for (const auto& [k, c] : diff.terms())
    worst = std::max(worst, std::fabs(coefficient_traits<T>::to_double(c)));
  return worst;
}

namespace detail {

inline std::string power(const char* var, int k) {
  // Stored k means var^{-k}.
  if (k == 0) return {};
  std::string s = var;
  if (k != -1) s += "^" + std::to_string(-k);
  return s;
}

template <Coefficient T>
std::string format_term(const T& c, const std::string& mono, bool first) {
  using traits = coefficient_traits<T>;
  const bool negative = c < T{0};
  std::string out;
  if (first)
    out = negative ? "-" : "";
  else
    out = negative ? " - " : " + ";
  const T mag = traits::magnitude(c);
  if (mono.empty()) return out + traits::format(mag);
  if (mag == T{1}) return out + mono;
  return out + traits::format(mag) + " " + mono;
}

}  // namespace detail

/// Renders e.g. "-1/2 - 1/2 z".
template <Coefficient T>
std::string to_string(const Laurent1<T>& p, const char* var = "z") {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  // Descending k lists constant and delay terms before advances, e.g. z^-1 + 1 + z.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    out += detail::format_term(it->second, detail::power(var, it->first), first);
    first = false;
  }
  return out;
}

template <Coefficient T>
std::string to_string(const Laurent2<T>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    std::string mono = detail::power("z_m", it->first.first);
    const std::string vn = detail::power("z_n", it->first.second);
    if (!vn.empty()) mono = mono.empty() ? vn : mono + " " + vn;
    out += detail::format_term(it->second, mono, first);
    first = false;
  }
  return out;
}

}  // namespace nsdwt

#endif  // NSDWT_LAURENT_HPP
