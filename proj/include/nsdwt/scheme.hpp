#ifndef NSDWT_SCHEME_HPP
#define NSDWT_SCHEME_HPP

#include "nsdwt/lifting_plan.hpp"

#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsdwt {

enum class SchemeKind {
  separable_convolution,
  separable_lifting,
  nonseparable_lifting,
  nonseparable_split,
};

inline constexpr std::array<SchemeKind, 4> all_scheme_kinds{
    SchemeKind::separable_convolution, SchemeKind::separable_lifting, SchemeKind::nonseparable_lifting,
    SchemeKind::nonseparable_split};

/// Short identifier used on the command line and in reports.
constexpr std::string_view scheme_id(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::separable_convolution: return "conv";
    case SchemeKind::separable_lifting: return "sep-lift";
    case SchemeKind::nonseparable_lifting: return "ns-lift";
    case SchemeKind::nonseparable_split: return "ns-lift-split";
  }
  return "?";
}

constexpr std::string_view scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::separable_convolution: return "separable convolution";
    case SchemeKind::separable_lifting: return "separable lifting";
    case SchemeKind::nonseparable_lifting: return "non-separable lifting";
    case SchemeKind::nonseparable_split: return "non-separable lifting (split)";
  }
  return "?";
}

inline SchemeKind parse_scheme_kind(std::string_view id) {
  for (auto kind : all_scheme_kinds)
    if (scheme_id(kind) == id) return kind;
  throw std::invalid_argument("unknown scheme '" + std::string(id) + "'");
}

enum class PassRole { predict, update, convolution, gain };

template <Coefficient T>
struct Pass {
  StepMatrix<T> matrix;
  bool barrier_before = true;
  PassRole role = PassRole::predict;
  /// Set when the inverse is known but not derivable from the matrix shape
  /// (convolution passes), and on every pass produced by invert_scheme.
  std::optional<StepMatrix<T>> inverse;
};

/// Ordered passes, first applied first. A pass with barrier_before starts a
/// new barrier-delimited step; passes without it run in the same step.
template <Coefficient T>
struct Scheme {
  SchemeKind kind = SchemeKind::separable_lifting;
  std::string wavelet;
  std::vector<Pass<T>> passes;

  /// Number of barrier-delimited steps.
  int steps() const {
    int n = 0;
    for (const auto& p : passes) n += p.barrier_before ? 1 : 0;
    return n;
  }

  /// Symbolic product of all passes in application order.
  StepMatrix<T> product() const {
    auto m = StepMatrix<T>::identity();
    for (const auto& p : passes) m = p.matrix * m;
    m.set_label(std::string(scheme_id(kind)));
    return m;
  }

  void validate() const {
    if (passes.empty()) throw std::invalid_argument("scheme has no passes");
    if (!passes.front().barrier_before) throw std::invalid_argument("the first pass of a scheme must start a step");
  }
};

template <Coefficient T>
struct SeparableSteps {
  StepMatrix<T> predict_h, predict_v, update_h, update_v;
};

/// T[P]^H, T[P]^V, S[U]^H, S[U]^V for one predict/update pair.
template <Coefficient T>
SeparableSteps<T> build_separable_step_matrices(const LiftingPair<T>& pair) {
  const auto t = PolyphaseMatrix<T>::predict(pair.predict);
  const auto s = PolyphaseMatrix<T>::update(pair.update);
  return {horizontal(t, "T[P]^H"), vertical(t, "T[P]^V"), horizontal(s, "S[U]^H"), vertical(s, "S[U]^V")};
}

template <Coefficient T>
struct NonseparableSteps {
  StepMatrix<T> predict, update;
};

/// Spatial predict T[P] and spatial update S[U], written out entry by entry.
template <Coefficient T>
NonseparableSteps<T> build_nonseparable_step_matrices(const LiftingPair<T>& pair) {
  const auto p = embed_horizontal(pair.predict);
  const auto ps = transpose(p);
  const auto u = embed_horizontal(pair.update);
  const auto us = transpose(u);
  auto t = StepMatrix<T>::identity("T[P]");
  t.at(hl, ll) = p;
  t.at(lh, ll) = ps;
  t.at(hh, ll) = p * ps;
  t.at(hh, hl) = ps;
  t.at(hh, lh) = p;
  auto s = StepMatrix<T>::identity("S[U]");
  s.at(ll, hl) = u;
  s.at(ll, lh) = us;
  s.at(ll, hh) = u * us;
  s.at(hl, hh) = us;
  s.at(lh, hh) = u;
  return {t, s};
}

/// Constant split P = p0 + p1, U = u0 + u1 with p0, u0 the zero-exponent
/// terms.
template <Coefficient T>
struct SplitPolynomials {
  T p0{0}, u0{0};
  Laurent1<T> p1, u1;
};

template <Coefficient T>
SplitPolynomials<T> split_constants(const LiftingPair<T>& pair) {
  SplitPolynomials<T> s;
  s.p0 = pair.predict.coefficient(0);
  s.u0 = pair.update.coefficient(0);
  s.p1 = pair.predict - Laurent1<T>::constant(s.p0);
  s.u1 = pair.update - Laurent1<T>::constant(s.u0);
  return s;
}

namespace detail {

inline std::string pair_suffix(std::size_t index, std::size_t count) {
  return count > 1 ? " #" + std::to_string(index + 1) : "";
}

template <Coefficient T>
Pass<T> make_pass(StepMatrix<T> m, bool barrier, PassRole role) {
  return Pass<T>{std::move(m), barrier, role, std::nullopt};
}

template <Coefficient T>
void append_gain(Scheme<T>& scheme, const LiftingPlan<T>& plan) {
  if (!plan.scale) return;
  const auto g = PolyphaseMatrix<T>::scale(plan.scale->first, plan.scale->second);
  // Pointwise: no neighbor access, so it joins the last step.
  auto m = vertical(g, "") * horizontal(g, "");
  m.set_label("K");
  scheme.passes.push_back(make_pass(std::move(m), false, PassRole::gain));
}

}  // namespace detail

/// N^V | N^H | with the full 1-D polyphase matrix in each direction.
template <Coefficient T>
Scheme<T> build_convolution_scheme(const LiftingPlan<T>& plan) {
  const auto phi = convolution_polyphase(plan);
  // Inverse from the factorization: T[-P1] S[-U1] ... T[-PK] S[-UK] K^-1.
  auto inv = PolyphaseMatrix<T>::identity();
  for (const auto& pair : plan.pairs)
    inv = inv * PolyphaseMatrix<T>::predict(-pair.predict) * PolyphaseMatrix<T>::update(-pair.update);
  if (plan.scale) inv = inv * PolyphaseMatrix<T>::scale(T{1} / plan.scale->first, T{1} / plan.scale->second);
  Scheme<T> s;
  s.kind = SchemeKind::separable_convolution;
  s.wavelet = plan.name;
  auto h = detail::make_pass(horizontal(phi, "N^H"), true, PassRole::convolution);
  h.inverse = horizontal(inv, "N^H^-1");
  auto v = detail::make_pass(vertical(phi, "N^V"), true, PassRole::convolution);
  v.inverse = vertical(inv, "N^V^-1");
  s.passes.push_back(std::move(h));
  s.passes.push_back(std::move(v));
  return s;
}

/// S[U]^V | S[U]^H | T[P]^V | T[P]^H | for every pair, then the gain.
template <Coefficient T>
Scheme<T> build_separable_lifting_scheme(const LiftingPlan<T>& plan) {
  plan.validate();
  Scheme<T> s;
  s.kind = SchemeKind::separable_lifting;
  s.wavelet = plan.name;
  for (std::size_t i = 0; i < plan.pairs.size(); ++i) {
    auto m = build_separable_step_matrices(plan.pairs[i]);
    const auto sfx = detail::pair_suffix(i, plan.pairs.size());
    m.predict_h.set_label(m.predict_h.label() + sfx);
    m.predict_v.set_label(m.predict_v.label() + sfx);
    m.update_h.set_label(m.update_h.label() + sfx);
    m.update_v.set_label(m.update_v.label() + sfx);
    s.passes.push_back(detail::make_pass(m.predict_h, true, PassRole::predict));
    s.passes.push_back(detail::make_pass(m.predict_v, true, PassRole::predict));
    s.passes.push_back(detail::make_pass(m.update_h, true, PassRole::update));
    s.passes.push_back(detail::make_pass(m.update_v, true, PassRole::update));
  }
  detail::append_gain(s, plan);
  return s;
}

/// S[U] | T[P] | for every pair, then the gain.
template <Coefficient T>
Scheme<T> build_nonseparable_scheme(const LiftingPlan<T>& plan) {
  plan.validate();
  Scheme<T> s;
  s.kind = SchemeKind::nonseparable_lifting;
  s.wavelet = plan.name;
  for (std::size_t i = 0; i < plan.pairs.size(); ++i) {
    auto m = build_nonseparable_step_matrices(plan.pairs[i]);
    const auto sfx = detail::pair_suffix(i, plan.pairs.size());
    m.predict.set_label(m.predict.label() + sfx);
    m.update.set_label(m.update.label() + sfx);
    s.passes.push_back(detail::make_pass(m.predict, true, PassRole::predict));
    s.passes.push_back(detail::make_pass(m.update, true, PassRole::update));
  }
  detail::append_gain(s, plan);
  return s;
}

/// Non-separable scheme with the constant split applied. Each step first
/// evaluates the spatial remainder T[P1] (or S[U1]), which is the only part
/// reading neighboring quadruples, and then the separable constant steps
/// T[P0]^H, T[P0]^V (or S[U0]^H, S[U0]^V) on the same quadruple without a
/// barrier. All these factors commute, so the product equals T[P] (S[U]).
template <Coefficient T>
Scheme<T> build_split_scheme(const LiftingPlan<T>& plan) {
  plan.validate();
  Scheme<T> s;
  s.kind = SchemeKind::nonseparable_split;
  s.wavelet = plan.name;
  for (std::size_t i = 0; i < plan.pairs.size(); ++i) {
    const auto sp = split_constants(plan.pairs[i]);
    const auto sfx = detail::pair_suffix(i, plan.pairs.size());
    const auto rest = build_nonseparable_step_matrices(LiftingPair<T>{sp.p1, sp.u1});
    const auto consts = build_separable_step_matrices(
        LiftingPair<T>{Laurent1<T>::constant(sp.p0), Laurent1<T>::constant(sp.u0)});

    auto push = [&](StepMatrix<T> m, std::string label, bool barrier, PassRole role) {
      m.set_label(std::move(label) + sfx);
      s.passes.push_back(detail::make_pass(std::move(m), barrier, role));
    };
    push(rest.predict, "T[P1]", true, PassRole::predict);
    if (!is_zero(sp.p0)) {
      push(consts.predict_h, "T[P0]^H", false, PassRole::predict);
      push(consts.predict_v, "T[P0]^V", false, PassRole::predict);
    }
    push(rest.update, "S[U1]", true, PassRole::update);
    if (!is_zero(sp.u0)) {
      push(consts.update_h, "S[U0]^H", false, PassRole::update);
      push(consts.update_v, "S[U0]^V", false, PassRole::update);
    }
  }
  detail::append_gain(s, plan);
  return s;
}

template <Coefficient T>
Scheme<T> build_scheme(SchemeKind kind, const LiftingPlan<T>& plan) {
  switch (kind) {
    case SchemeKind::separable_convolution: return build_convolution_scheme(plan);
    case SchemeKind::separable_lifting: return build_separable_lifting_scheme(plan);
    case SchemeKind::nonseparable_lifting: return build_nonseparable_scheme(plan);
    case SchemeKind::nonseparable_split: return build_split_scheme(plan);
  }
  throw std::invalid_argument("unknown scheme kind");
}

/// The full 2-D polyphase transfer matrix: N^V N^H.
template <Coefficient T>
StepMatrix<T> transfer_matrix(const LiftingPlan<T>& plan) {
  const auto phi = convolution_polyphase(plan);
  auto m = vertical(phi, "N^V") * horizontal(phi, "N^H");
  m.set_label("N");
  return m;
}

/// Passes in reverse order, each replaced by its inverse. A barrier sits
/// before an inverted pass wherever one separated it from its successor in
/// the forward scheme, so steps stay aligned and invert_scheme is an
/// involution.
template <Coefficient T>
Scheme<T> invert_scheme(const Scheme<T>& scheme) {
  scheme.validate();
  Scheme<T> r;
  r.kind = scheme.kind;
  r.wavelet = scheme.wavelet;
  const std::size_t n = scheme.passes.size();
  for (std::size_t j = 0; j < n; ++j) {
    const auto& f = scheme.passes[n - 1 - j];
    Pass<T> p;
    p.matrix = f.inverse ? *f.inverse : invert(f.matrix);
    p.inverse = f.matrix;
    p.role = f.role;
    p.barrier_before = j == 0 ? true : scheme.passes[n - j].barrier_before;
    r.passes.push_back(std::move(p));
  }
  return r;
}

template <Coefficient To, Coefficient From>
Scheme<To> promote(const Scheme<From>& s) {
  Scheme<To> r;
  r.kind = s.kind;
  r.wavelet = s.wavelet;
  for (const auto& p : s.passes) {
    Pass<To> q{promote<To>(p.matrix), p.barrier_before, p.role, std::nullopt};
    if (p.inverse) q.inverse = promote<To>(*p.inverse);
    r.passes.push_back(std::move(q));
  }
  return r;
}

/// Text form in the z-notation, passes listed in application order with
/// "|" marking a barrier, e.g. "| T[P]^H | T[P]^V | S[U]^H | S[U]^V".
template <Coefficient T>
std::string sequence_string(const Scheme<T>& s) {
  std::string out;
  for (const auto& p : s.passes) {
    if (!out.empty()) out += ' ';
    if (p.barrier_before) out += "| ";
    out += p.matrix.label();
  }
  return out;
}

template <Coefficient T>
std::string to_string(const Scheme<T>& s) {
  std::ostringstream os;
  os << "scheme " << scheme_id(s.kind) << " (" << scheme_name(s.kind) << "), wavelet " << s.wavelet
     << ", coefficients " << coefficient_traits<T>::mode_name << "\n";
  os << "sequence: " << sequence_string(s) << "\n";
  os << "steps: " << s.steps() << "\n";
  for (const auto& p : s.passes) {
    os << (p.barrier_before ? "| " : "  ") << to_string(p.matrix);
  }
  return os.str();
}

}  // namespace nsdwt

#endif  // NSDWT_SCHEME_HPP
