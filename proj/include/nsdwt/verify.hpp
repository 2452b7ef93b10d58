#ifndef NSDWT_VERIFY_HPP
#define NSDWT_VERIFY_HPP

#include "nsdwt/bench.hpp"
#include "nsdwt/engine.hpp"
#include "nsdwt/scheme.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nsdwt {

/// One measured quantity against its bound. Passes when value <= tolerance.
struct Check {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass() const { return value <= tolerance; }
};

struct VerifyOptions {
  int images = 20;
  int max_size = 256;
  std::uint64_t seed = 1;
  TileConfig tiling;
  /// Negates one predict coefficient of the non-separable forward program.
  bool inject_fault = false;
};

template <Coefficient C>
double algebra_tolerance(const LiftingPlan<C>&) {
  return coefficient_traits<C>::exact ? 0.0 : 1e-12;
}

/// Fusion of the horizontal and vertical steps into the spatial ones, and
/// agreement of every scheme's product with the transfer matrix.
template <Coefficient C>
std::vector<Check> algebra_checks(const LiftingPlan<C>& plan) {
  std::vector<Check> out;
  const double tol = algebra_tolerance(plan);
  for (std::size_t i = 0; i < plan.pairs.size(); ++i) {
    const auto sep = build_separable_step_matrices(plan.pairs[i]);
    const auto ns = build_nonseparable_step_matrices(plan.pairs[i]);
    const std::string sfx = plan.pairs.size() > 1 ? " #" + std::to_string(i + 1) : "";
    out.push_back({"fusion T[P]^H T[P]^V = T[P]" + sfx,
                   max_coefficient_diff(fuse(sep.predict_h, sep.predict_v), ns.predict), tol});
    out.push_back({"fusion S[U]^H S[U]^V = S[U]" + sfx,
                   max_coefficient_diff(fuse(sep.update_h, sep.update_v), ns.update), tol});
  }
  const auto n = transfer_matrix(plan);
  for (auto kind : all_scheme_kinds)
    out.push_back({"product " + std::string(scheme_id(kind)) + " = transfer matrix",
                   max_coefficient_diff(build_scheme(kind, plan).product(), n), tol});
  return out;
}

template <Sample T, Coefficient C>
double reconstruction_tolerance(const LiftingPlan<C>&) {
  if constexpr (std::is_same_v<T, float>) return 1e-3;
  else return coefficient_traits<C>::exact ? 1e-12 : 1e-9;
}

template <Sample T>
constexpr double cross_scheme_tolerance() {
  return std::is_same_v<T, float> ? 1e-3 : 1e-9;
}

/// Sizes of the seeded random test images: the first is max_size square,
/// the rest are random even sizes between 8 and max_size.
inline std::vector<std::pair<int, int>> verify_image_sizes(const VerifyOptions& opt) {
  if (opt.images < 1) throw std::invalid_argument("need at least one verification image");
  if (opt.max_size < 8 || opt.max_size % 2) throw std::invalid_argument("maximum verification size must be even and at least 8");
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> half(4, opt.max_size / 2);
  std::vector<std::pair<int, int>> sizes{{opt.max_size, opt.max_size}};
  while (static_cast<int>(sizes.size()) < opt.images) {
    const int w = 2 * half(rng);
    sizes.emplace_back(w, 2 * half(rng));
  }
  return sizes;
}

/// Cross-scheme differences (against separable convolution) and
/// reconstruction errors, maximized over the seeded images.
template <Sample T, Coefficient C>
std::vector<Check> image_checks(const LiftingPlan<C>& plan, const VerifyOptions& opt) {
  std::vector<StencilProgram> fwd, inv;
  for (auto kind : all_scheme_kinds) {
    const auto s = build_scheme(kind, plan);
    fwd.push_back(compile(s));
    inv.push_back(compile(invert_scheme(s)));
  }
  if (opt.inject_fault) {
    auto& taps = fwd[2].passes.front().targets[hl].taps;
    if (!taps.empty()) taps.front().coef = -taps.front().coef;
  }
  std::vector<double> cross(fwd.size(), 0.0), recon(fwd.size(), 0.0);
  std::uint64_t k = 0;
  for (const auto& [w, h] : verify_image_sizes(opt)) {
    const auto img = seeded_image<T>(w, h, opt.seed * 7919 + k++);
    const auto ref = run_tiled(fwd[0], img, opt.tiling);
    for (std::size_t s = 0; s < fwd.size(); ++s) {
      const auto q = s == 0 ? ref : run_tiled(fwd[s], img, opt.tiling);
      cross[s] = std::max(cross[s], max_abs_diff(q, ref));
      recon[s] = std::max(recon[s], max_abs_diff(execute(inv[s], interleave(q), opt.tiling), img));
    }
  }
  std::vector<Check> out;
  for (std::size_t s = 1; s < fwd.size(); ++s)
    out.push_back({"cross-scheme conv vs " + std::string(scheme_id(all_scheme_kinds[s])), cross[s],
                   cross_scheme_tolerance<T>()});
  for (std::size_t s = 0; s < fwd.size(); ++s)
    out.push_back({"reconstruction " + std::string(scheme_id(all_scheme_kinds[s])), recon[s],
                   reconstruction_tolerance<T>(plan)});
  return out;
}

}  // namespace nsdwt

#endif  // NSDWT_VERIFY_HPP
