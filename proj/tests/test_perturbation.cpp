#include "suites.hpp"

#include <gtest/gtest.h>

using namespace crn1d;
using namespace crn1d::testing;

TEST(Families, TwentyOfEachParity) {
  auto fams = perturbation_families();
  std::size_t even = 0, odd = 0;
  for (const auto& f : fams) (f.multiplicity % 2 == 0 ? even : odd)++;
  EXPECT_EQ(even, 20u);
  EXPECT_EQ(odd, 20u);
}

TEST(Families, Ex36DoubleRootFormula) {
  auto kappa = ex36_double_root_kappa(Rational(1), Rational(1));
  EXPECT_EQ(kappa, (std::vector<Rational>{Rational(7, 9), Rational(128, 9), 1}));
}

TEST(Perturbation, EvenFamiliesSplitOrVanish) {
  SuiteResult r = perturbation_suite(true);
  EXPECT_EQ(r.cases, 20u);
  for (const auto& v : r.violations) ADD_FAILURE() << v;
}

TEST(Perturbation, OddFamiliesMoveEitherWay) {
  SuiteResult r = perturbation_suite(false);
  EXPECT_EQ(r.cases, 20u);
  for (const auto& v : r.violations) ADD_FAILURE() << v;
}
