#include "nsdwt/engine.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

namespace nsdwt {
namespace {

template <Sample T>
Image2D<T> random_image(int w, int h, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  Image2D<T> img(w, h);
  for (auto& v : img.samples()) v = static_cast<T>(d(rng));
  return img;
}

// Oracle independent of the stencil engine: the filter bank applied along
// rows then columns by direct convolution with symmetric extension. The
// output is interleaved (low at even, high at odd positions).
Image2D<double> separable_filter_oracle(const FilterBank<double>& bank, const Image2D<double>& x) {
  auto filter_line = [&](std::vector<double> line) {
    const int n = static_cast<int>(line.size());
    std::vector<double> out(line.size());
    for (int i = 0; i < n / 2; ++i) {
      double lo = 0, hi = 0;
      for (const auto& [k, c] : bank.lowpass.terms()) lo += c * line[extend(2 * i + 1 - k, n)];
      for (const auto& [k, c] : bank.highpass.terms()) hi += c * line[extend(2 * i + 1 - k, n)];
      out[2 * i] = lo;
      out[2 * i + 1] = hi;
    }
    return out;
  };
  Image2D<double> tmp(x.width(), x.height()), out(x.width(), x.height());
  for (int y = 0; y < x.height(); ++y) {
    std::vector<double> row(x.width());
    for (int i = 0; i < x.width(); ++i) row[i] = x.at(i, y);
    row = filter_line(row);
    for (int i = 0; i < x.width(); ++i) tmp.at(i, y) = row[i];
  }
  for (int i = 0; i < x.width(); ++i) {
    std::vector<double> col(x.height());
    for (int y = 0; y < x.height(); ++y) col[y] = tmp.at(i, y);
    col = filter_line(col);
    for (int y = 0; y < x.height(); ++y) out.at(i, y) = col[y];
  }
  return out;
}

template <Coefficient C>
FilterBank<double> bank_of(const LiftingPlan<C>& plan) {
  const auto b = filters_from_polyphase(lifting_product(plan));
  return {promote<double>(b.lowpass), promote<double>(b.highpass)};
}

TEST(Extend, Reflection) {
  EXPECT_EQ(extend(-1, 8), 1);
  EXPECT_EQ(extend(8, 8), 6);
  EXPECT_EQ(extend(3, 8), 3);
  EXPECT_EQ(extend(-3, 8), 3);
  EXPECT_EQ(extend(9, 8), 5);
  EXPECT_EQ(extend(5, 1), 0);
  for (int size = 2; size < 12; ++size)
    for (int i = -size + 1; i < 2 * size - 1; ++i) {
      const int e = extend(i, size);
      EXPECT_GE(e, 0);
      EXPECT_LT(e, size);
      EXPECT_EQ(extend(e, size), e);
      EXPECT_EQ(e % 2 == 0, ((i % 2) + 2) % 2 == 0) << "parity preserved for even sizes only";
      if (size % 2 == 1) break;
    }
  EXPECT_THROW(extend(0, 0), std::invalid_argument);
}

TEST(Compile, IdentityHasNoTaps) {
  Scheme<Rational> s;
  s.passes.push_back(Pass<Rational>{StepMatrix<Rational>::identity(), true, PassRole::predict, std::nullopt});
  const auto prog = compile(s);
  for (const auto& t : prog.passes[0].targets) {
    EXPECT_TRUE(t.keep);
    EXPECT_TRUE(t.taps.empty());
  }
}

TEST(Compile, HorizontalPredict53) {
  const auto prog = compile(build_separable_lifting_scheme(cdf53()));
  const auto& hl_target = prog.passes[0].targets[hl];
  ASSERT_EQ(hl_target.taps.size(), 2u);
  EXPECT_EQ(hl_target.taps[0], (Tap{ll, 0, 0, -0.5}));
  EXPECT_EQ(hl_target.taps[1], (Tap{ll, 1, 0, -0.5}));
  EXPECT_TRUE(prog.passes[0].targets[ll].taps.empty());
  EXPECT_EQ(prog.passes[0].reach_m, 1);
  EXPECT_EQ(prog.passes[0].reach_n, 0);
}

TEST(Compile, SpatialPredictCrossTerm53) {
  const auto prog = compile(build_nonseparable_scheme(cdf53()));
  std::vector<Tap> from_ll;
  for (const auto& t : prog.passes[0].targets[hh].taps)
    if (t.source == ll) from_ll.push_back(t);
  ASSERT_EQ(from_ll.size(), 4u);
  std::vector<std::pair<int, int>> offsets;
  for (const auto& t : from_ll) {
    EXPECT_EQ(t.coef, 0.25);
    offsets.emplace_back(t.dm, t.dn);
  }
  EXPECT_EQ(offsets, (std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(Compile, StencilReproducesMatrices) {
  for (auto kind : all_scheme_kinds) {
    const auto s53 = build_scheme(kind, cdf53());
    const auto prog53 = compile(s53);
    for (std::size_t i = 0; i < s53.passes.size(); ++i)
      EXPECT_EQ(to_matrix(prog53.passes[i]), promote<double>(s53.passes[i].matrix));
    const auto s97 = build_scheme(kind, cdf97());
    const auto prog97 = compile(s97);
    for (std::size_t i = 0; i < s97.passes.size(); ++i) EXPECT_EQ(to_matrix(prog97.passes[i]), s97.passes[i].matrix);
  }
}

TEST(Compile, AccumulationOrderIsSorted) {
  const auto prog = compile(build_split_scheme(cdf97()));
  for (const auto& pass : prog.passes)
    for (const auto& t : pass.targets)
      EXPECT_TRUE(std::is_sorted(t.taps.begin(), t.taps.end(), [](const Tap& a, const Tap& b) {
        return std::tie(a.dm, a.dn, a.source) < std::tie(b.dm, b.dn, b.source);
      }));
}

TEST(Forward, ConstantImageHasNoDetail) {
  Image2D<double> img(32, 32, std::vector<double>(32 * 32, 0.7));
  for (auto kind : all_scheme_kinds) {
    for (const auto& q : {forward(img, build_scheme(kind, cdf53())), forward(img, build_scheme(kind, cdf97()))}) {
      for (int c : {hl, lh, hh})
        for (double v : q.component(c).samples()) EXPECT_NEAR(v, 0.0, 1e-12) << scheme_id(kind);
    }
  }
  // 5/3 lowpass has unit DC gain: the LL band keeps the constant.
  const auto q = forward(img, build_separable_lifting_scheme(cdf53()));
  for (double v : q.ll.samples()) EXPECT_NEAR(v, 0.7, 1e-12);
}

TEST(Forward, TrivialPlanDeinterleaves) {
  Image2D<double> img(2, 2, {1.0, 2.0, 3.0, 4.0});
  for (auto kind : all_scheme_kinds) {
    const auto q = forward(img, build_scheme(kind, trivial_plan<Rational>()));
    EXPECT_EQ(q.ll.at(0, 0), 1.0);
    EXPECT_EQ(q.hl.at(0, 0), 2.0);
    EXPECT_EQ(q.lh.at(0, 0), 3.0);
    EXPECT_EQ(q.hh.at(0, 0), 4.0);
  }
}

TEST(Forward, MatchesDirectSeparableConvolution) {
  const auto img = random_image<double>(64, 48, 1);
  for (const auto& [bank, scheme] :
       {std::pair{bank_of(cdf53()), promote<double>(build_nonseparable_scheme(cdf53()))},
        std::pair{bank_of(cdf97()), build_split_scheme(cdf97())}}) {
    const auto expected = deinterleave(separable_filter_oracle(bank, img));
    EXPECT_LE(max_abs_diff(forward(img, scheme), expected), 1e-12);
  }
}

TEST(Forward, CrossSchemeEquivalence) {
  const auto img = random_image<double>(64, 64, 2);
  for (const bool nine_seven : {false, true}) {
    std::vector<SubbandQuad<double>> out;
    for (auto kind : all_scheme_kinds)
      out.push_back(nine_seven ? forward(img, build_scheme(kind, cdf97())) : forward(img, build_scheme(kind, cdf53())));
    for (std::size_t i = 1; i < out.size(); ++i) EXPECT_LE(max_abs_diff(out[0], out[i]), 1e-9);
  }
  const auto imgf = random_image<float>(64, 64, 3);
  std::vector<SubbandQuad<float>> outf;
  for (auto kind : all_scheme_kinds) outf.push_back(forward(imgf, build_scheme(kind, cdf97())));
  for (std::size_t i = 1; i < outf.size(); ++i) EXPECT_LE(max_abs_diff(outf[0], outf[i]), 1e-3);
}

TEST(Forward, RejectsOddDimensions) {
  Image2D<double> img(7, 8);
  EXPECT_THROW(forward(img, build_separable_lifting_scheme(cdf53())), std::invalid_argument);
  try {
    forward(Image2D<double>(511, 512), build_separable_lifting_scheme(cdf53()));
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("dimensions must be even"), std::string::npos);
  }
}

TEST(Forward, RejectsTileSmallerThanHalo) {
  const auto img = random_image<double>(64, 64, 4);
  TileConfig cfg;
  cfg.tile_width = 1;
  cfg.tile_height = 1;
  cfg.fuse_steps = true;  // whole 9/7 scheme in one step: halo 4
  EXPECT_THROW(forward(img, build_nonseparable_scheme(cdf97()), cfg), std::invalid_argument);
  cfg.tile_width = cfg.tile_height = 4;
  EXPECT_NO_THROW(forward(img, build_nonseparable_scheme(cdf97()), cfg));
  TileConfig bad_threads;
  bad_threads.threads = 0;
  EXPECT_THROW(forward(img, build_nonseparable_scheme(cdf97()), bad_threads), std::invalid_argument);
}

TEST(Configure, HaloSumsReachWithinAStep) {
  const auto prog = compile(build_split_scheme(cdf97()));
  const auto cfg = configure(TileConfig{}, prog, 64, 64);
  EXPECT_EQ(cfg.halo_m, 1);
  EXPECT_EQ(cfg.halo_n, 1);
  TileConfig fused;
  fused.fuse_steps = true;
  const auto f = configure(fused, prog, 64, 64);
  EXPECT_EQ(f.halo_m, 4);  // four spatial steps of reach 1; constant passes add nothing
  EXPECT_EQ(f.halo_n, 4);
}

TEST(Inverse, PerfectReconstruction) {
  const auto img = random_image<double>(64, 64, 5);
  for (auto kind : all_scheme_kinds) {
    const auto s53 = build_scheme(kind, cdf53());
    EXPECT_LE(max_abs_diff(inverse(forward(img, s53), s53), img), 1e-12) << scheme_id(kind);
    const auto s97 = build_scheme(kind, cdf97());
    EXPECT_LE(max_abs_diff(inverse(forward(img, s97), s97), img), 1e-9) << scheme_id(kind);
  }
  const auto imgf = random_image<float>(64, 64, 6);
  for (auto kind : all_scheme_kinds) {
    const auto s97 = build_scheme(kind, cdf97());
    EXPECT_LE(max_abs_diff(inverse(forward(imgf, s97), s97), imgf), 1e-3) << scheme_id(kind);
  }
}

TEST(Inverse, ZerosStayZero) {
  Image2D<double> zero(16, 16);
  for (auto kind : all_scheme_kinds) {
    const auto s = build_scheme(kind, cdf97());
    EXPECT_EQ(inverse(forward(zero, s), s), zero);
  }
}

TEST(Inverse, RejectsMismatchedSubbands) {
  SubbandQuad<double> q{Image2D<double>(4, 4), Image2D<double>(4, 4), Image2D<double>(4, 3), Image2D<double>(4, 4)};
  EXPECT_THROW(inverse(q, build_nonseparable_scheme(cdf53())), std::invalid_argument);
}

TEST(Forward, Linearity) {
  const auto x = random_image<double>(32, 32, 7), y = random_image<double>(32, 32, 8);
  const double a = 1.75, b = -0.4;
  Image2D<double> mix(32, 32);
  for (std::size_t i = 0; i < mix.samples().size(); ++i) mix.samples()[i] = a * x.samples()[i] + b * y.samples()[i];
  for (auto kind : all_scheme_kinds) {
    const auto s = build_scheme(kind, cdf97());
    const auto fx = forward(x, s), fy = forward(y, s), fm = forward(mix, s);
    for (int c = 0; c < 4; ++c)
      for (std::size_t i = 0; i < fm.component(c).samples().size(); ++i)
        EXPECT_NEAR(fm.component(c).samples()[i],
                    a * fx.component(c).samples()[i] + b * fy.component(c).samples()[i], 1e-12);
  }
}

TEST(RunTiled, TileAndThreadInvariance) {
  const auto img = random_image<double>(64, 64, 9);
  for (auto kind : all_scheme_kinds) {
    const auto prog = compile(build_scheme(kind, cdf97()));
    const auto reference = deinterleave(run_reference(prog, img));
    for (int tile : {0, 3, 8, 16, 32})
      for (int threads : {1, 2, 8})
        for (bool fuse : {false, true}) {
          if (fuse && tile != 0 && tile < 4) continue;
          TileConfig cfg;
          cfg.tile_width = cfg.tile_height = tile;
          cfg.threads = threads;
          cfg.fuse_steps = fuse;
          EXPECT_TRUE(run_tiled(prog, img, cfg) == reference)
              << scheme_id(kind) << " tile " << tile << " threads " << threads << " fuse " << fuse;
        }
  }
}

TEST(RunTiled, NonSquareAndRaggedTiles) {
  const auto img = random_image<double>(70, 38, 10);
  const auto prog = compile(build_split_scheme(cdf97()));
  const auto reference = deinterleave(run_reference(prog, img));
  TileConfig cfg;
  cfg.tile_width = 6;
  cfg.tile_height = 5;
  cfg.threads = 3;
  cfg.fuse_steps = true;
  EXPECT_TRUE(run_tiled(prog, img, cfg) == reference);
  cfg.fuse_steps = false;
  EXPECT_TRUE(run_tiled(prog, img, cfg) == reference);
}

TEST(RunTiled, ImageTooSmallForReach) {
  const auto prog = compile(build_separable_lifting_scheme(cdf53()));
  EXPECT_THROW(run_reference(prog, Image2D<double>(2, 2)), std::invalid_argument);
  EXPECT_NO_THROW(run_reference(prog, Image2D<double>(4, 4)));
}

// The impulse response of the forward transform at a source component
// gives column `source` of the transfer matrix: output component r at
// offset (i - i0, j - j0) = coefficient of the term z_m^{-(i-i0)} z_n^{-(j-j0)}.
template <Coefficient C>
void check_impulse(const LiftingPlan<C>& plan) {
  const auto n = promote<double>(transfer_matrix(plan));
  constexpr int size = 48, q0 = 12;
  for (auto kind : all_scheme_kinds) {
    const auto scheme = build_scheme(kind, plan);
    for (int source = 0; source < 4; ++source) {
      Image2D<double> delta(size, size);
      delta.at(2 * q0 + column_parity(source), 2 * q0 + row_parity(source)) = 1.0;
      const auto q = forward(delta, scheme);
      for (int r = 0; r < 4; ++r) {
        const auto& entry = n.at(r, source);
        for (int j = 0; j < size / 2; ++j)
          for (int i = 0; i < size / 2; ++i)
            EXPECT_NEAR(q.component(r).at(i, j), entry.coefficient(i - q0, j - q0), 1e-12)
                << scheme_id(kind) << " r=" << r << " source=" << source;
      }
    }
  }
}

TEST(Forward, ImpulseResponseMatchesTransferMatrix) {
  check_impulse(cdf53());
  check_impulse(cdf97());
}

TEST(Barriers, RemovingABarrierIsDetectable) {
  const auto prog = compile(build_separable_lifting_scheme(cdf53()));
  const auto img = random_image<double>(32, 32, 11);
  const auto expected = run_reference(prog, img);
  std::vector<int> order(16 * 16);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(12);
  std::shuffle(order.begin(), order.end(), rng);
  const auto raced = run_unsynchronized(prog, img, order);
  EXPECT_GT(max_abs_diff(raced, expected), 1e-6);
}

TEST(Barriers, SinglePassNeedsNoBarrier) {
  // One pass alone is race free in place, whatever the visiting order.
  auto s = build_separable_lifting_scheme(cdf53());
  s.passes.resize(1);
  const auto prog = compile(s);
  const auto img = random_image<double>(16, 16, 13);
  std::vector<int> order(64);
  std::iota(order.rbegin(), order.rend(), 0);
  EXPECT_EQ(run_unsynchronized(prog, img, order), run_reference(prog, img));
}

TEST(Image, InterleaveRoundTrip) {
  const auto img = random_image<float>(10, 6, 14);
  EXPECT_EQ(interleave(deinterleave(img)), img);
  EXPECT_THROW(Image2D<double>(3, 3, std::vector<double>(8)), std::invalid_argument);
  EXPECT_THROW(Image2D<double>(0, 3), std::invalid_argument);
  EXPECT_EQ(Image2D<float>::precision(), Precision::single);
}

}  // namespace
}  // namespace nsdwt
