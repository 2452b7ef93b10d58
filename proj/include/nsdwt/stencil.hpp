#ifndef NSDWT_STENCIL_HPP
#define NSDWT_STENCIL_HPP

#include "nsdwt/scheme.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <tuple>
#include <vector>

namespace nsdwt {

/// out[target](m, n) += coef * in[source](m + dm, n + dn), in quadruple
/// coordinates. A term stored with exponent (k_m, k_n) becomes the offset
/// (-k_m, -k_n).
struct Tap {
  int source = 0;
  int dm = 0;
  int dn = 0;
  double coef = 0.0;
  friend bool operator==(const Tap&, const Tap&) = default;
};

struct TargetStencil {
  /// Start from the target's own input value (unit diagonal entry).
  bool keep = true;
  /// Sorted by (dm, dn, source); this is the accumulation order.
  std::vector<Tap> taps;
};

struct StencilPass {
  std::string label;
  bool barrier_before = true;
  int reach_m = 0;
  int reach_n = 0;
  std::array<TargetStencil, 4> targets;
};

struct StencilProgram {
  std::vector<StencilPass> passes;

  int steps() const {
    return static_cast<int>(std::count_if(passes.begin(), passes.end(), [](const auto& p) { return p.barrier_before; }));
  }
};

template <Coefficient T>
StencilPass compile_pass(const Pass<T>& pass) {
  StencilPass sp;
  sp.label = pass.matrix.label();
  sp.barrier_before = pass.barrier_before;
  for (int r = 0; r < 4; ++r) {
    auto& target = sp.targets[r];
    target.keep = pass.matrix.at(r, r).is_one();
    for (int c = 0; c < 4; ++c) {
      if (c == r && target.keep) continue;
      for (const auto& [k, coef] : pass.matrix.at(r, c).terms()) {
        target.taps.push_back(Tap{c, -k.first, -k.second, coefficient_traits<T>::to_double(coef)});
        sp.reach_m = std::max(sp.reach_m, std::abs(k.first));
        sp.reach_n = std::max(sp.reach_n, std::abs(k.second));
      }
    }
    std::sort(target.taps.begin(), target.taps.end(), [](const Tap& a, const Tap& b) {
      return std::tie(a.dm, a.dn, a.source) < std::tie(b.dm, b.dn, b.source);
    });
  }
  return sp;
}

/// Lowers every pass of the scheme to a stencil.
template <Coefficient T>
StencilProgram compile(const Scheme<T>& scheme) {
  scheme.validate();
  StencilProgram prog;
  for (const auto& p : scheme.passes) prog.passes.push_back(compile_pass(p));
  return prog;
}

/// Rebuilds the matrix a stencil pass realizes (float coefficients).
inline StepMatrix<double> to_matrix(const StencilPass& pass) {
  StepMatrix<double> m(pass.label);
  for (int r = 0; r < 4; ++r) {
    if (pass.targets[r].keep) m.at(r, r) = Laurent2<double>::one();
    for (const auto& t : pass.targets[r].taps)
      m.at(r, t.source).accumulate({-t.dm, -t.dn}, t.coef);
  }
  return m;
}

}  // namespace nsdwt

#endif  // NSDWT_STENCIL_HPP
