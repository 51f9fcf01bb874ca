#include "crn1d/roots.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace crn1d;

namespace {

UnivarPoly linear_root(const Rational& r) { return UnivarPoly::linear(1, -r); }

// -(3/2)(x - 1)(x^2 - 8x + 3)
UnivarPoly ex36_cubic() { return UnivarPoly({Rational(9, 2), Rational(-33, 2), Rational(27, 2), Rational(-3, 2)}); }

}  // namespace

TEST(Sturm, CountsDistinctRootsInOpenIntervals) {
  SturmSequence s(squarefree_kernel(ex36_cubic()));
  EXPECT_EQ(s.count_open(0, 9), 3u);
  EXPECT_EQ(s.count_open(0, 1), 1u);  // 1 itself is excluded
  EXPECT_EQ(s.count_open(1, 9), 1u);
  EXPECT_EQ(s.count_open(Rational(1, 2), Rational(3, 2)), 1u);
  EXPECT_EQ(s.count_above(0), 3u);
  EXPECT_EQ(s.count_above(8), 0u);
}

TEST(IsolateRoots, Example36CubicHasThreeSimpleRoots) {
  auto roots = isolate_roots(ex36_cubic(), 0, UpperBound(9));
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_FALSE(roots[0].exact());
  EXPECT_TRUE(roots[1].exact());
  EXPECT_EQ(roots[1].lo, 1);
  EXPECT_FALSE(roots[2].exact());
  for (const auto& r : roots) EXPECT_EQ(r.multiplicity, 1u);
  auto r0 = refine(ex36_cubic(), roots[0], Rational(1, 1000000000));
  auto r2 = refine(ex36_cubic(), roots[2], Rational(1, 1000000000));
  EXPECT_NEAR(to_double(r0.approx), 4 - std::sqrt(13.0), 1e-9);
  EXPECT_NEAR(to_double(r2.approx), 4 + std::sqrt(13.0), 1e-9);
  EXPECT_THROW(refine(ex36_cubic(), roots[0], 0), std::invalid_argument);
}

TEST(IsolateRoots, MultiplicitiesAndInfiniteUpperBound) {
  UnivarPoly p = pow(linear_root(Rational(2, 3)), 2) * pow(linear_root(5), 3) * linear_root(-1) *
                 UnivarPoly({Rational(-2), Rational(0), Rational(1)});  // x^2 - 2
  auto roots = isolate_roots(p, 0, UpperBound::inf());
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_TRUE(roots[0].exact());
  EXPECT_EQ(roots[0].lo, Rational(2, 3));
  EXPECT_EQ(roots[0].multiplicity, 2u);
  EXPECT_FALSE(roots[1].exact());
  EXPECT_EQ(roots[1].multiplicity, 1u);
  EXPECT_TRUE(roots[2].exact());
  EXPECT_EQ(roots[2].lo, 5);
  EXPECT_EQ(roots[2].multiplicity, 3u);
}

TEST(IsolateRoots, EndpointsAreExcluded) {
  UnivarPoly p = linear_root(0) * linear_root(3) * linear_root(1);
  auto roots = isolate_roots(p, 0, UpperBound(3));
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(roots[0].lo, 1);
  EXPECT_THROW(isolate_roots(p, 3, UpperBound(3)), std::invalid_argument);
  EXPECT_THROW(isolate_roots(UnivarPoly(), 0, UpperBound(3)), std::domain_error);
  EXPECT_TRUE(isolate_roots(UnivarPoly(4), 0, UpperBound(3)).empty());
}

TEST(IsolateRoots, RandomRationalRootsAreRecoveredExactly) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<Rational, unsigned>> want;
    UnivarPoly p = Rational(1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 3));
    int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      Rational r(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 9));
      bool dup = false;
      for (auto& [v, m] : want) dup = dup || v == r;
      if (dup) continue;
      unsigned mult = 1 + static_cast<unsigned>(rng() % 3);
      want.emplace_back(r, mult);
      p *= pow(linear_root(r), mult);
    }
    std::sort(want.begin(), want.end());
    auto roots = isolate_roots(p, -100, UpperBound::inf());
    ASSERT_EQ(roots.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_TRUE(roots[i].exact());
      EXPECT_EQ(roots[i].lo, want[i].first);
      EXPECT_EQ(roots[i].multiplicity, want[i].second);
    }
  }
}

TEST(AlgebraicRoot, SignsAndComparisons) {
  UnivarPoly q = ex36_cubic();
  auto roots = isolate_roots(q, 0, UpperBound(9));
  AlgebraicRoot small = AlgebraicRoot::of(q, roots[0]);  // 4 - sqrt 13
  AlgebraicRoot big = AlgebraicRoot::of(q, roots[2]);
  // (x - 4)^2 - 13 vanishes at both
  UnivarPoly quad({Rational(3), Rational(-8), Rational(1)});
  EXPECT_EQ(small.sign_of(quad), 0);
  EXPECT_EQ(small.sign_of(linear_root(Rational(39, 100))), 1);
  EXPECT_EQ(small.sign_of(linear_root(Rational(40, 100))), -1);
  EXPECT_EQ(small.sign_of(q.derivative()), -1);
  EXPECT_EQ(big.sign_of(q.derivative()), -1);
  EXPECT_EQ(small.compare(big), -1);
  EXPECT_EQ(big.compare(small), 1);
  EXPECT_EQ(small.compare(Rational(1)), -1);
  // Same number, different defining polynomials.
  AlgebraicRoot other(quad, RootRecord{0, 1, 1, Rational(1, 2)});
  EXPECT_EQ(small.compare(other), 0);
  EXPECT_EQ(AlgebraicRoot::rational(Rational(1, 3)).compare(Rational(1, 3)), 0);
}
