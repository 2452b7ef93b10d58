#ifndef NSDWT_LIFTING_PLAN_HPP
#define NSDWT_LIFTING_PLAN_HPP

#include "nsdwt/boundary.hpp"
#include "nsdwt/step_matrix.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsdwt {

template <Coefficient T>
struct LiftingPair {
  Laurent1<T> predict;
  Laurent1<T> update;
};

/// Analysis filter pair. With x_e[i] = x[2i] and x_o[i] = x[2i + 1]:
///   low[i]  = sum_k g0_k x[2i + 1 - k]
///   high[i] = sum_k g1_k x[2i + 1 - k]
template <Coefficient T>
struct FilterBank {
  Laurent1<T> lowpass;
  Laurent1<T> highpass;
};

/// Ordered predict/update pairs (first pair applied first), an optional
/// final (low, high) gain and, optionally, the reference filter bank the
/// factorization is expected to reproduce.
template <Coefficient T>
struct LiftingPlan {
  std::string name;
  std::vector<LiftingPair<T>> pairs;
  std::optional<std::pair<T, T>> scale;
  std::optional<FilterBank<T>> filters;
  double filter_tolerance = 1e-9;

  void validate() const {
    if (pairs.empty()) throw std::invalid_argument("lifting plan '" + name + "' has no predict/update pair");
    if (scale && (is_zero(scale->first) || is_zero(scale->second)))
      throw std::invalid_argument("lifting plan '" + name + "' has a zero gain");
  }
};

/// CDF 5/3: d += -1/2 (s[i] + s[i+1]), s += 1/4 (d[i-1] + d[i]).
inline LiftingPlan<Rational> cdf53() {
  LiftingPlan<Rational> plan;
  plan.name = "cdf53";
  const Rational half(1, 2), quarter(1, 4), eighth(1, 8);
  plan.pairs.push_back({Laurent1<Rational>::from_taps(-1, {-half, -half}),
                        Laurent1<Rational>::from_taps(0, {quarter, quarter})});
  plan.filters = FilterBank<Rational>{
      Laurent1<Rational>::from_taps(-1, {-eighth, quarter, Rational(3, 4), quarter, -eighth}),
      Laurent1<Rational>::from_taps(-1, {-half, Rational(1), -half})};
  plan.filter_tolerance = 0.0;
  return plan;
}

/// CDF 9/7 as four lifting steps followed by the (1/K, K) gain.
inline LiftingPlan<double> cdf97() {
  constexpr double alpha = -1.586134342059924;
  constexpr double beta = -0.052980118572961;
  constexpr double gamma = 0.882911075530934;
  constexpr double delta = 0.443506852043971;
  constexpr double k = 1.230174104914001;
  LiftingPlan<double> plan;
  plan.name = "cdf97";
  plan.pairs.push_back({Laurent1<double>::from_taps(-1, {alpha, alpha}), Laurent1<double>::from_taps(0, {beta, beta})});
  plan.pairs.push_back({Laurent1<double>::from_taps(-1, {gamma, gamma}), Laurent1<double>::from_taps(0, {delta, delta})});
  plan.scale = std::pair{1.0 / k, k};
  // Published 9/7 analysis taps (12 decimals); the check tolerance matches.
  plan.filters = FilterBank<double>{
      Laurent1<double>::from_taps(-3, {0.026748757411, -0.016864118443, -0.078223266529, 0.266864118443,
                                       0.602949018236, 0.266864118443, -0.078223266529, -0.016864118443,
                                       0.026748757411}),
      Laurent1<double>::from_taps(-3, {0.091271763114, -0.057543526229, -0.591271763114, 1.115087052457,
                                       -0.591271763114, -0.057543526229, 0.091271763114})};
  plan.filter_tolerance = 1e-9;
  return plan;
}

/// One pair with P = U = 0; every scheme built from it is the identity.
template <Coefficient T>
LiftingPlan<T> trivial_plan() {
  LiftingPlan<T> plan;
  plan.name = "trivial";
  plan.pairs.push_back({});
  return plan;
}

template <Coefficient To, Coefficient From>
LiftingPlan<To> promote(const LiftingPlan<From>& plan) {
  LiftingPlan<To> r;
  r.name = plan.name;
  r.filter_tolerance = plan.filter_tolerance;
  for (const auto& p : plan.pairs) r.pairs.push_back({promote<To>(p.predict), promote<To>(p.update)});
  if (plan.scale)
    r.scale = std::pair{promote_coefficient<To>(plan.scale->first), promote_coefficient<To>(plan.scale->second)};
  if (plan.filters) r.filters = FilterBank<To>{promote<To>(plan.filters->lowpass), promote<To>(plan.filters->highpass)};
  return r;
}

/// Multiplies out the lifting factorization: gain * prod_k S[U_k] T[P_k],
/// with the first pair rightmost.
template <Coefficient T>
PolyphaseMatrix<T> lifting_product(const LiftingPlan<T>& plan) {
  plan.validate();
  auto m = PolyphaseMatrix<T>::identity();
  for (const auto& pair : plan.pairs)
    m = PolyphaseMatrix<T>::update(pair.update) * (PolyphaseMatrix<T>::predict(pair.predict) * m);
  if (plan.scale) m = PolyphaseMatrix<T>::scale(plan.scale->first, plan.scale->second) * m;
  return m;
}

/// Row 0 produces the lowpass output, row 1 the highpass; column 0 reads
/// the even samples, column 1 the odd ones:
///   [ G0_o  G0_e ]
///   [ G1_o  G1_e ]
template <Coefficient T>
PolyphaseMatrix<T> polyphase_from_filters(const FilterBank<T>& bank) {
  const auto lo = polyphase_split(bank.lowpass);
  const auto hi = polyphase_split(bank.highpass);
  PolyphaseMatrix<T> m;
  m.e[0][0] = lo.odd;
  m.e[0][1] = lo.even;
  m.e[1][0] = hi.odd;
  m.e[1][1] = hi.even;
  return m;
}

template <Coefficient T>
FilterBank<T> filters_from_polyphase(const PolyphaseMatrix<T>& m) {
  return {interleave(PolyphaseComponents<T>{m.e[0][1], m.e[0][0]}),
          interleave(PolyphaseComponents<T>{m.e[1][1], m.e[1][0]})};
}

/// The convolution polyphase matrix of the plan. When the plan carries a
/// reference filter bank, the lifting product must agree with it within
/// plan.filter_tolerance.
template <Coefficient T>
PolyphaseMatrix<T> convolution_polyphase(const LiftingPlan<T>& plan) {
  const auto lifted = lifting_product(plan);
  if (plan.filters) {
    const auto direct = polyphase_from_filters(*plan.filters);
    const double diff = max_coefficient_diff(direct, lifted);
    if (diff > plan.filter_tolerance)
      throw std::invalid_argument("lifting plan '" + plan.name +
                                  "' does not reproduce its filter bank (max coefficient error " +
                                  std::to_string(diff) + ")");
  }
  return lifted;
}

namespace detail {

template <typename S>
void lift_step_1d(std::span<S> x, const Laurent1<double>& filter, int target_parity, double sign) {
  const int n = static_cast<int>(x.size());
  const int source_parity = 1 - target_parity;
  std::vector<S> src(x.begin(), x.end());
  for (int i = 0; 2 * i + target_parity < n; ++i) {
    S acc = src[2 * i + target_parity];
    for (const auto& [k, c] : filter.terms())
      acc += static_cast<S>(sign * c) * src[extend(2 * (i - k) + source_parity, n)];
    x[2 * i + target_parity] = acc;
  }
}

}  // namespace detail

/// In-place 1-D forward lifting on an even-length interleaved signal with
/// whole-sample symmetric extension. Afterwards even positions hold the
/// lowpass band and odd positions the highpass band.
template <Coefficient T, typename S>
void lift_1d(const LiftingPlan<T>& plan, std::span<S> x) {
  if (x.size() % 2 != 0) throw std::invalid_argument("lift_1d: length must be even");
  const auto fp = promote<double>(plan);
  for (const auto& pair : fp.pairs) {
    detail::lift_step_1d(x, pair.predict, 1, 1.0);
    detail::lift_step_1d(x, pair.update, 0, 1.0);
  }
  if (fp.scale)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] *= static_cast<S>(i % 2 ? fp.scale->second : fp.scale->first);
}

template <Coefficient T, typename S>
void unlift_1d(const LiftingPlan<T>& plan, std::span<S> x) {
  if (x.size() % 2 != 0) throw std::invalid_argument("unlift_1d: length must be even");
  const auto fp = promote<double>(plan);
  if (fp.scale)
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] *= static_cast<S>(1.0 / (i % 2 ? fp.scale->second : fp.scale->first));
  for (auto it = fp.pairs.rbegin(); it != fp.pairs.rend(); ++it) {
    detail::lift_step_1d(x, it->update, 0, -1.0);
    detail::lift_step_1d(x, it->predict, 1, -1.0);
  }
}

}  // namespace nsdwt

#endif  // NSDWT_LIFTING_PLAN_HPP
