#ifndef NSDWT_ENGINE_HPP
#define NSDWT_ENGINE_HPP

#include "nsdwt/boundary.hpp"
#include "nsdwt/image.hpp"
#include "nsdwt/stencil.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace nsdwt {

/// Overlapping-block execution parameters. Tile sizes are in quadruples; 0
/// means the whole image along that axis. The halo is derived from the
/// program by configure() and is not meant to be set by hand.
struct TileConfig {
  int tile_width = 0;
  int tile_height = 0;
  int threads = 1;
  /// Run the whole program as one step per block (no global barrier between
  /// passes, halo widened to cover every pass) instead of synchronizing at
  /// each barrier.
  bool fuse_steps = false;
  int halo_m = 0;
  int halo_n = 0;
};

namespace detail {

struct Region {
  int i0 = 0, j0 = 0, i1 = 0, j1 = 0;  // quadruple coordinates, half open

  Region grown(int hm, int hn, int qw, int qh) const {
    return {std::max(0, i0 - hm), std::max(0, j0 - hn), std::min(qw, i1 + hm), std::min(qh, j1 + hn)};
  }
  int width() const { return i1 - i0; }
  int height() const { return j1 - j0; }
};

/// Window onto interleaved samples; (x, y) are full-image coordinates.
template <typename P>
struct View {
  P* data = nullptr;
  int x0 = 0, y0 = 0, stride = 0;
  std::ptrdiff_t offset(int x, int y) const {
    return static_cast<std::ptrdiff_t>(y - y0) * stride + (x - x0);
  }
};

/// Passes between consecutive global synchronization points.
inline std::vector<std::vector<const StencilPass*>> stages(const StencilProgram& prog, bool fuse_all) {
  std::vector<std::vector<const StencilPass*>> out;
  for (const auto& p : prog.passes) {
    if (out.empty() || (p.barrier_before && !fuse_all)) out.emplace_back();
    out.back().push_back(&p);
  }
  return out;
}

/// Evaluates one pass over `region`, reading `src` with symmetric extension
/// against the full image (width, height) and writing `dst`. This is the only
/// place arithmetic happens, so every executor accumulates identically.
template <Sample T>
void apply_pass(const StencilPass& pass, View<const T> src, View<T> dst, Region region, int width, int height) {
  const int qw = width / 2;
  std::vector<std::ptrdiff_t> row_offset;
  std::vector<T> coef;
  for (int r = 0; r < 4; ++r) {
    const auto& target = pass.targets[r];
    const int px = column_parity(r), py = row_parity(r);
    const std::size_t nt = target.taps.size();
    coef.resize(nt);
    row_offset.resize(nt);
    int dm_min = 0, dm_max = 0;
    for (std::size_t t = 0; t < nt; ++t) {
      coef[t] = static_cast<T>(target.taps[t].coef);
      dm_min = std::min(dm_min, target.taps[t].dm);
      dm_max = std::max(dm_max, target.taps[t].dm);
    }
    // Columns where no tap needs reflection.
    const int i_lo = std::clamp(-dm_min, region.i0, region.i1);
    const int i_hi = std::clamp(qw - dm_max, i_lo, region.i1);

    for (int j = region.j0; j < region.j1; ++j) {
      const int y = 2 * j + py;
      for (std::size_t t = 0; t < nt; ++t) {
        const auto& tap = target.taps[t];
        const int sy = extend(2 * (j + tap.dn) + row_parity(tap.source), height);
        row_offset[t] = src.offset(0, sy);
      }
      auto sample = [&](int i, bool interior) {
        const int x = 2 * i + px;
        T acc = target.keep ? src.data[src.offset(x, y)] : T{0};
        for (std::size_t t = 0; t < nt; ++t) {
          const auto& tap = target.taps[t];
          int sx = 2 * (i + tap.dm) + column_parity(tap.source);
          if (!interior) sx = extend(sx, width);
          acc += coef[t] * src.data[row_offset[t] + sx];
        }
        dst.data[dst.offset(x, y)] = acc;
      };
      for (int i = region.i0; i < i_lo; ++i) sample(i, false);
      for (int i = i_lo; i < i_hi; ++i) sample(i, true);
      for (int i = i_hi; i < region.i1; ++i) sample(i, false);
    }
  }
}

/// Runs one stage for one block: the block plus its halo is evaluated pass
/// by pass in block-local buffers, the halo shrinking by each pass's reach,
/// and only the block itself is written to `out`.
template <Sample T>
void run_block(const std::vector<const StencilPass*>& stage, const Image2D<T>& in, Image2D<T>& out, Region block) {
  const int w = in.width(), h = in.height(), qw = w / 2, qh = h / 2;
  const std::size_t n = stage.size();
  // Remaining halo after each pass.
  std::vector<int> rem_m(n, 0), rem_n(n, 0);
  for (std::size_t k = n - 1; k-- > 0;) {
    rem_m[k] = rem_m[k + 1] + stage[k + 1]->reach_m;
    rem_n[k] = rem_n[k + 1] + stage[k + 1]->reach_n;
  }

  View<const T> src{in.data(), 0, 0, w};
  std::vector<T> local[2];
  for (std::size_t k = 0; k < n; ++k) {
    const bool last = k + 1 == n;
    if (last) {
      apply_pass<T>(*stage[k], src, View<T>{out.data(), 0, 0, w}, block, w, h);
      break;
    }
    const Region r = block.grown(rem_m[k], rem_n[k], qw, qh);
    auto& buf = local[k % 2];
    buf.resize(static_cast<std::size_t>(2 * r.width()) * (2 * r.height()));
    View<T> dst{buf.data(), 2 * r.i0, 2 * r.j0, 2 * r.width()};
    apply_pass<T>(*stage[k], src, dst, r, w, h);
    src = View<const T>{buf.data(), dst.x0, dst.y0, dst.stride};
  }
}

template <typename F>
void parallel_for(int count, int threads, F&& body) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> workers;
  const int n = std::min(threads, count);
  workers.reserve(n);
  for (int t = 0; t < n; ++t)
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  // jthread destructors join: every block of this stage completes here.
}

}  // namespace detail

/// Derives the halo (sum of pass reaches over the passes executed between
/// global barriers, maximized over those groups) and validates the config
/// against the image size in samples.
inline TileConfig configure(TileConfig cfg, const StencilProgram& prog, int width, int height) {
  if (cfg.threads < 1) throw std::invalid_argument("thread count must be positive");
  if (cfg.tile_width < 0 || cfg.tile_height < 0) throw std::invalid_argument("tile size must be positive");
  if (width % 2 != 0 || height % 2 != 0) throw std::invalid_argument("dimensions must be even");
  const int qw = width / 2, qh = height / 2;
  cfg.halo_m = cfg.halo_n = 0;
  for (const auto& stage : detail::stages(prog, cfg.fuse_steps)) {
    int hm = 0, hn = 0;
    for (const auto* p : stage) {
      if (p->reach_m >= qw || p->reach_n >= qh)
        throw std::invalid_argument("image " + std::to_string(width) + "x" + std::to_string(height) +
                                    " is too small for stencil reach of pass " + p->label);
      hm += p->reach_m;
      hn += p->reach_n;
    }
    cfg.halo_m = std::max(cfg.halo_m, hm);
    cfg.halo_n = std::max(cfg.halo_n, hn);
  }
  const int tw = cfg.tile_width ? cfg.tile_width : qw;
  const int th = cfg.tile_height ? cfg.tile_height : qh;
  if (tw < std::min(cfg.halo_m, qw) || th < std::min(cfg.halo_n, qh))
    throw std::invalid_argument("tile " + std::to_string(tw) + "x" + std::to_string(th) + " is smaller than halo " +
                                std::to_string(cfg.halo_m) + "x" + std::to_string(cfg.halo_n));
  return cfg;
}

/// Untiled reference: each pass over the whole image, one buffer swap per
/// pass.
template <Sample T>
Image2D<T> run_reference(const StencilProgram& prog, Image2D<T> image) {
  configure(TileConfig{}, prog, image.width(), image.height());
  Image2D<T> next(image.width(), image.height());
  const detail::Region all{0, 0, image.width() / 2, image.height() / 2};
  for (const auto& pass : prog.passes) {
    detail::apply_pass<T>(pass, {image.data(), 0, 0, image.width()}, {next.data(), 0, 0, image.width()}, all,
                          image.width(), image.height());
    std::swap(image, next);
  }
  return image;
}

/// Executes the program on an interleaved image with overlapping blocks.
/// Stages are separated by a full synchronization of all workers.
template <Sample T>
Image2D<T> execute(const StencilProgram& prog, Image2D<T> image, TileConfig cfg) {
  cfg = configure(cfg, prog, image.width(), image.height());
  const int qw = image.width() / 2, qh = image.height() / 2;
  const int tw = cfg.tile_width ? std::min(cfg.tile_width, qw) : qw;
  const int th = cfg.tile_height ? std::min(cfg.tile_height, qh) : qh;
  const int nx = (qw + tw - 1) / tw, ny = (qh + th - 1) / th;

  Image2D<T> next(image.width(), image.height());
  for (const auto& stage : detail::stages(prog, cfg.fuse_steps)) {
    detail::parallel_for(nx * ny, cfg.threads, [&](int b) {
      const int bx = b % nx, by = b / nx;
      const detail::Region block{bx * tw, by * th, std::min(qw, (bx + 1) * tw), std::min(qh, (by + 1) * th)};
      detail::run_block<T>(stage, image, next, block);
    });
    std::swap(image, next);
  }
  return image;
}

/// Executes the program on an image and returns the deinterleaved result.
template <Sample T>
SubbandQuad<T> run_tiled(const StencilProgram& prog, const Image2D<T>& image, const TileConfig& cfg) {
  require_even(image);
  return deinterleave(execute(prog, image, cfg));
}

template <Sample T, Coefficient C>
SubbandQuad<T> forward(const Image2D<T>& image, const Scheme<C>& scheme, const TileConfig& cfg = {}) {
  require_even(image);
  return run_tiled(compile(scheme), image, cfg);
}

template <Sample T, Coefficient C>
Image2D<T> inverse(const SubbandQuad<T>& quad, const Scheme<C>& scheme, const TileConfig& cfg = {}) {
  quad.validate();
  return execute(compile(invert_scheme(scheme)), interleave(quad), cfg);
}

/// Race model for a missing barrier: every pass is applied in place, one
/// quadruple at a time in the given visiting order, with no synchronization
/// between passes. A pass then reads neighbors that may or may not have been
/// updated by the preceding pass. Used to show that barriers are needed.
template <Sample T>
Image2D<T> run_unsynchronized(const StencilProgram& prog, Image2D<T> image, std::span<const int> order) {
  const int w = image.width(), h = image.height(), qw = w / 2;
  configure(TileConfig{}, prog, w, h);
  std::array<T, 4> fresh{};
  for (int q : order) {
    const int i = q % qw, j = q / qw;
    for (const auto& pass : prog.passes) {
      for (int r = 0; r < 4; ++r) {
        const auto& target = pass.targets[r];
        T acc = target.keep ? image.at(2 * i + column_parity(r), 2 * j + row_parity(r)) : T{0};
        for (const auto& tap : target.taps)
          acc += static_cast<T>(tap.coef) * image.at(extend(2 * (i + tap.dm) + column_parity(tap.source), w),
                                                     extend(2 * (j + tap.dn) + row_parity(tap.source), h));
        fresh[r] = acc;
      }
      for (int r = 0; r < 4; ++r) image.at(2 * i + column_parity(r), 2 * j + row_parity(r)) = fresh[r];
    }
  }
  return image;
}

}  // namespace nsdwt

#endif  // NSDWT_ENGINE_HPP
