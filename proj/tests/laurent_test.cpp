#include "nsdwt/laurent.hpp"

#include <gtest/gtest.h>

#include <random>

namespace nsdwt {
namespace {

using R = Rational;
using P1 = Laurent1<R>;
using P2 = Laurent2<R>;

P2 z_m() { return P2::monomial(-1, 0, R(1)); }
P2 z_n() { return P2::monomial(0, -1, R(1)); }
P2 one() { return P2::one(); }

template <typename T>
Laurent2<T> random_poly2(std::mt19937& rng, int max_terms = 5, int span = 3) {
  std::uniform_int_distribution<int> nterm(0, max_terms), exp(-span, span), num(-9, 9), den(1, 8);
  Laurent2<T> p;
  const int n = nterm(rng);
  for (int t = 0; t < n; ++t) {
    const int km = exp(rng), kn = exp(rng);
    if constexpr (std::is_same_v<T, Rational>)
      p.accumulate({km, kn}, Rational(num(rng), den(rng)));
    else
      p.accumulate({km, kn}, std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
  }
  return p;
}

template <typename T>
Laurent1<T> random_poly1(std::mt19937& rng) {
  std::uniform_int_distribution<int> nterm(0, 6), exp(-5, 5), num(-9, 9), den(1, 8);
  Laurent1<T> p;
  const int n = nterm(rng);
  for (int t = 0; t < n; ++t) {
    if constexpr (std::is_same_v<T, Rational>)
      p.accumulate(exp(rng), Rational(num(rng), den(rng)));
    else
      p.accumulate(exp(rng), std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
  }
  return p;
}

template <typename A, typename B>
concept Addable = requires(A a, B b) { a + b; };
template <typename A, typename B>
concept Multipliable = requires(A a, B b) { a * b; };

TEST(Coefficient, RationalsStayReduced) {
  const R a(2, 4);
  EXPECT_EQ(a.numerator(), 1);
  EXPECT_EQ(a.denominator(), 2);
  const R b = R(1, 6) + R(1, 3);
  EXPECT_EQ(b, R(1, 2));
  EXPECT_EQ(b.denominator(), 2);
}

TEST(Coefficient, MixedModeIsRejectedAtCompileTime) {
  EXPECT_FALSE((Addable<Laurent2<R>, Laurent2<double>>));
  EXPECT_FALSE((Multipliable<Laurent2<R>, Laurent2<double>>));
  EXPECT_TRUE((Addable<Laurent2<R>, Laurent2<R>>));
  // Explicit promotion is the only way across.
  const auto p = promote<double>(P2::constant(R(1, 4)));
  EXPECT_EQ(p.coefficient(0, 0), 0.25);
}

TEST(LaurentAdd, Cancellation) {
  const auto sum = (one() + z_m()) + (-z_m());
  EXPECT_EQ(sum, one());
  EXPECT_EQ(sum.size(), 1u);
}

TEST(LaurentAdd, AdditiveIdentity) {
  const auto p = embed_horizontal(P1::from_taps(-1, {R(-1, 2), R(-1, 2)}));
  EXPECT_EQ(p + P2{}, p);
}

TEST(LaurentAdd, NoZeroTermsStored) {
  P2 p = P2::monomial(1, 1, R(3));
  p.accumulate({1, 1}, R(-3));
  EXPECT_TRUE(p.is_zero());
  p.accumulate({0, 2}, R(0));
  EXPECT_TRUE(p.terms().empty());
}

TEST(LaurentMul, MultiplicativeIdentity) {
  const auto p = embed_horizontal(P1::from_taps(-1, {R(-1, 2), R(-1, 2)}));
  EXPECT_EQ(one() * p, p);
}

TEST(LaurentMul, MonomialProduct) {
  const auto prod = z_m() * z_n();
  ASSERT_EQ(prod.size(), 1u);
  EXPECT_EQ(prod.terms().begin()->first, (std::pair{-1, -1}));
  EXPECT_EQ(prod.coefficient(-1, -1), R(1));
}

TEST(LaurentMul, PredictTimesTransposedPredictFor53) {
  // P = -1/2 (1 + z_m); P P* = 1/4 (1 + z_m)(1 + z_n) = 1/4 (1 + z_m + z_n + z_m z_n).
  const auto p = embed_horizontal(P1::from_taps(-1, {R(-1, 2), R(-1, 2)}));
  const auto pp = p * transpose(p);
  ASSERT_EQ(pp.size(), 4u);
  for (auto k : {std::pair{0, 0}, std::pair{-1, 0}, std::pair{0, -1}, std::pair{-1, -1}})
    EXPECT_EQ(pp.coefficient(k.first, k.second), R(1, 4));
}

TEST(LaurentMul, MatchesBruteForceConvolution) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_poly2<R>(rng), b = random_poly2<R>(rng);
    // Dense grid convolution as the oracle.
    constexpr int span = 3, size = 2 * span + 1, out = 2 * size - 1;
    R ga[size][size]{}, gb[size][size]{}, gc[out][out]{};
    for (const auto& [k, c] : a.terms()) ga[k.first + span][k.second + span] = c;
    for (const auto& [k, c] : b.terms()) gb[k.first + span][k.second + span] = c;
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j)
        for (int u = 0; u < size; ++u)
          for (int v = 0; v < size; ++v) gc[i + u][j + v] += ga[i][j] * gb[u][v];
    const auto prod = a * b;
    for (int i = 0; i < out; ++i)
      for (int j = 0; j < out; ++j) EXPECT_EQ(prod.coefficient(i - 2 * span, j - 2 * span), gc[i][j]);
    // Support is contained in the Minkowski sum.
    for (const auto& [k, c] : prod.terms()) {
      bool found = false;
      for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
          found |= ka.first + kb.first == k.first && ka.second + kb.second == k.second;
      EXPECT_TRUE(found);
    }
  }
}

TEST(LaurentTranspose, Definition) {
  const auto p = embed_horizontal(P1::from_taps(-1, {R(-1, 2), R(-1, 2)}));
  const auto t = transpose(p);
  EXPECT_EQ(t.coefficient(0, -1), R(-1, 2));
  EXPECT_EQ(t.coefficient(0, 0), R(-1, 2));
  EXPECT_EQ(t.size(), 2u);
}

TEST(LaurentTranspose, SwapsIndexTermwise) {
  const auto p = one() + z_m() + z_m() * z_n();
  EXPECT_EQ(transpose(p), one() + z_n() + z_m() * z_n());
}

TEST(LaurentTranspose, InvolutionAndRingHomomorphism) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_poly2<R>(rng), b = random_poly2<R>(rng);
    EXPECT_EQ(transpose(transpose(a)), a);
    EXPECT_EQ(transpose(a * b), transpose(a) * transpose(b));
    EXPECT_EQ(transpose(a + b), transpose(a) + transpose(b));
  }
}

TEST(LaurentRing, AxiomsExact) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_poly2<R>(rng), b = random_poly2<R>(rng), c = random_poly2<R>(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

double relative_diff(const Laurent2<double>& a, const Laurent2<double>& b) {
  double scale = 1.0;
  for (const auto& [k, c] : a.terms()) scale = std::max(scale, std::fabs(c));
  return max_coefficient_diff(a, b) / scale;
}

TEST(LaurentRing, AxiomsFloat) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_poly2<double>(rng), b = random_poly2<double>(rng), c = random_poly2<double>(rng);
    EXPECT_LE(relative_diff((a + b) + c, a + (b + c)), 1e-12);
    EXPECT_LE(relative_diff(a + b, b + a), 1e-12);
    EXPECT_LE(relative_diff((a * b) * c, a * (b * c)), 1e-12);
    EXPECT_LE(relative_diff(a * b, b * a), 1e-12);
    EXPECT_LE(relative_diff(a * (b + c), a * b + a * c), 1e-12);
  }
}

TEST(LaurentEvaluate, CommutesWithOperations) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586), radius(0.7, 1.3);
  auto close = [](std::complex<double> x, std::complex<double> y) {
    return std::abs(x - y) <= 1e-10 * std::max(1.0, std::abs(x));
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_poly2<double>(rng), b = random_poly2<double>(rng);
    const auto zm = std::polar(radius(rng), phase(rng)), zn = std::polar(radius(rng), phase(rng));
    EXPECT_TRUE(close((a + b).evaluate(zm, zn), a.evaluate(zm, zn) + b.evaluate(zm, zn)));
    EXPECT_TRUE(close((a * b).evaluate(zm, zn), a.evaluate(zm, zn) * b.evaluate(zm, zn)));
    EXPECT_TRUE(close(transpose(a).evaluate(zm, zn), a.evaluate(zn, zm)));
  }
}

TEST(PolyphaseSplit, One) {
  const auto s = polyphase_split(P1::constant(R(1)));
  EXPECT_EQ(s.even, P1::constant(R(1)));
  EXPECT_TRUE(s.odd.is_zero());
}

TEST(PolyphaseSplit, Predict53) {
  // -1/2 (1 + z): the constant is even, the z term (k = -1) is odd.
  const auto s = polyphase_split(P1::from_taps(-1, {R(-1, 2), R(-1, 2)}));
  EXPECT_EQ(s.even, P1::constant(R(-1, 2)));
  EXPECT_EQ(s.odd, P1::monomial(-1, R(-1, 2)));
  EXPECT_EQ(interleave(s), P1::from_taps(-1, {R(-1, 2), R(-1, 2)}));
}

TEST(PolyphaseSplit, PureEvenExponent) {
  const auto s = polyphase_split(P1::monomial(-2, R(1)));  // z^2
  EXPECT_EQ(s.even, P1::monomial(-1, R(1)));
  EXPECT_TRUE(s.odd.is_zero());
}

TEST(PolyphaseSplit, RoundTripsAndMatchesDefinition) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_poly1<R>(rng);
    const auto s = polyphase_split(g);
    EXPECT_EQ(interleave(s), g);
    EXPECT_EQ(polyphase_split(interleave(s)), s);
    // G(z) = G_e(z^2) + z^{-1} G_o(z^2), checked by evaluation.
    const std::complex<double> z = std::polar(1.1, 0.3 + trial);
    const auto lhs = g.evaluate(z);
    const auto rhs = s.even.evaluate(z * z) + s.odd.evaluate(z * z) / z;
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9);
  }
}

TEST(Embed, Definitions) {
  const auto g = P1::from_taps(-1, {R(1), R(1)});  // 1 + z
  EXPECT_EQ(embed_horizontal(g), one() + z_m());
  EXPECT_EQ(embed_vertical(g), one() + z_n());
}

TEST(Embed, VerticalIsTransposedHorizontal) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_poly1<R>(rng);
    EXPECT_EQ(transpose(embed_horizontal(g)), embed_vertical(g));
    const auto h = embed_horizontal(g);
    for (const auto& [k, c] : h.terms()) EXPECT_EQ(k.second, 0);
  }
}

TEST(Format, ZNotation) {
  EXPECT_EQ(to_string(P1::from_taps(-1, {R(-1, 2), R(-1, 2)})), "-1/2 - 1/2 z");
  EXPECT_EQ(to_string(P1::from_taps(0, {R(1, 4), R(1, 4)})), "1/4 z^-1 + 1/4");
  EXPECT_EQ(to_string(one() + z_m() * z_n()), "1 + z_m z_n");
  EXPECT_EQ(to_string(P2{}), "0");
}

}  // namespace
}  // namespace nsdwt
