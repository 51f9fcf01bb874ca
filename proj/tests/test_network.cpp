#include "crn1d/network.hpp"

#include <gtest/gtest.h>

using namespace crn1d;

namespace {
const char* kEx36 = "X2 -> X1 ; X1 -> X2 ; 2 X1 + X2 -> 3 X1";
const char* kEx37 = "2 X1 + 2 X2 + X3 -> 3 X1 + X2 ; X1 + 2 X3 -> X2 + 3 X3";
const char* kEx52 = "X1 + 2 X2 + X3 + 2 X4 -> 2 X1 + X2 + 3 X4 ; X1 + 2 X3 + X4 -> X2 + 3 X3";
}  // namespace

TEST(ParseNetwork, Example36) {
  Network net = parse_network(kEx36);
  ASSERT_EQ(net.s(), 2u);
  ASSERT_EQ(net.m(), 3u);
  EXPECT_EQ(net.species(), (std::vector<std::string>{"X1", "X2"}));
  std::vector<std::vector<int>> alpha{{0, 1}, {1, 0}, {2, 1}}, beta{{1, 0}, {0, 1}, {3, 0}};
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(net.reactions()[j].reactant, alpha[j]);
    EXPECT_EQ(net.reactions()[j].product, beta[j]);
  }
  EXPECT_EQ(net.reactions()[0].label, "k1");
  EXPECT_EQ(net.reactions()[2].label, "k3");
}

TEST(ParseNetwork, NaturalSpeciesOrder) {
  Network net = parse_network("X10 + B -> X2 ; X2 -> a1");
  EXPECT_EQ(net.species(), (std::vector<std::string>{"B", "X2", "X10", "a1"}));
  EXPECT_TRUE(detail::natural_less("X9", "X10"));
  EXPECT_FALSE(detail::natural_less("X10", "X9"));
  EXPECT_TRUE(detail::natural_less("X", "X1"));
  EXPECT_FALSE(detail::natural_less("X1", "X1"));
}

TEST(ParseNetwork, MinimalAndExample37) {
  Network one = parse_network("X1 -> 2 X1");
  EXPECT_EQ(one.s(), 1u);
  EXPECT_EQ(one.alpha(0, 0), 1);
  EXPECT_EQ(one.beta(0, 0), 2);
  Network net = parse_network(kEx37);
  EXPECT_EQ(net.s(), 3u);
  EXPECT_EQ(net.m(), 2u);
  EXPECT_EQ(net.delta(0, 0), 1);
}

TEST(ParseNetwork, CommentsSeparatorsAndEmptyComplex) {
  Network net = parse_network("# header\nA + B -> 2 C  # trailing\n\n2 C -> A + B; C -> 0\n");
  EXPECT_EQ(net.s(), 3u);
  EXPECT_EQ(net.m(), 3u);
  EXPECT_EQ(net.reactions()[2].product, (std::vector<int>{0, 0, 0}));
  Network summed = parse_network("A + A -> B");
  EXPECT_EQ(summed.alpha(0, 0), 2);
}

TEST(ParseNetwork, ErrorsCarryPositions) {
  auto expect_error = [](const char* text, std::size_t line, std::size_t col, const std::string& fragment) {
    try {
      parse_network(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text;
      EXPECT_EQ(e.column(), col) << text;
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
      EXPECT_FALSE(e.is_model_error());
    }
  };
  expect_error("X1 -> X1", 1, 1, "identical");
  expect_error("X1 -> 2 X1\nX1 + X2 -> X2 + X1", 2, 1, "identical");
  expect_error("-1 X1 -> X2", 1, 1, "negative");
  expect_error("1.5 X1 -> X2", 1, 1, "non-integer");
  expect_error("X1 -> 3/2 X2", 1, 7, "non-integer");
  expect_error("X1 X2 -> X3", 1, 4, "'->'");
  expect_error("X1 -> ", 1, 7, "expected species name");
  expect_error("X1 -> $", 1, 7, "unexpected character");
  expect_error("0 X1 -> X2", 1, 1, "positive");
}

TEST(ParseNetwork, RoundTripsThroughUnparse) {
  for (const char* text : {kEx36, kEx37, kEx52, "X1 -> 2 X1 ; 2 X1 -> X1", "A -> 0 ; 0 -> A"}) {
    Network net = parse_network(text);
    EXPECT_EQ(parse_network(unparse(net)), net) << text;
  }
}

TEST(NetworkValidation, RejectsBadShapes) {
  EXPECT_THROW(Network({"A", "A"}, {}), DimensionMismatch);
  EXPECT_THROW(Network({"A"}, {Reaction{{1, 0}, {0}, ""}}), DimensionMismatch);
  EXPECT_THROW(Network({"A"}, {Reaction{{-1}, {0}, ""}}), DimensionMismatch);
  EXPECT_THROW(Network({"A"}, {Reaction{{1}, {1}, ""}}), DimensionMismatch);
}

TEST(StoichData, Example36) {
  Network net = parse_network(kEx36);
  EXPECT_EQ(net, Network({"X1", "X2"}, {Reaction{{0, 1}, {1, 0}, ""}, Reaction{{1, 0}, {0, 1}, ""},
                                        Reaction{{2, 1}, {3, 0}, ""}}));
  StoichData sd = stoich_data(net);
  EXPECT_EQ(sd.N.column(0), (std::vector<Rational>{1, -1}));
  EXPECT_EQ(sd.N.column(1), (std::vector<Rational>{-1, 1}));
  EXPECT_EQ(sd.N.column(2), (std::vector<Rational>{1, -1}));
  EXPECT_EQ(sd.lambda, (std::vector<Rational>{1, -1, 1}));
  EXPECT_TRUE((sd.W * sd.N).is_zero());
  EXPECT_EQ(sd.W.rows(), 1u);
  EXPECT_EQ(sd.W.row(0), (std::vector<Rational>{1, 1}));
  EXPECT_NO_THROW(assert_one_dimensional(sd));
}

TEST(StoichData, Example37ConservationLaws) {
  StoichData sd = stoich_data(parse_network(kEx37));
  EXPECT_EQ(sd.lambda, (std::vector<Rational>{1, -1}));
  ASSERT_EQ(sd.W.rows(), 2u);
  // RREF basis of the span of (1,1,0) and (1,0,1).
  EXPECT_EQ(sd.W.row(0), (std::vector<Rational>{1, 0, 1}));
  EXPECT_EQ(sd.W.row(1), (std::vector<Rational>{0, 1, -1}));
  EXPECT_TRUE((sd.W * sd.N).is_zero());
}

TEST(StoichData, OneSpecies) {
  StoichData sd = stoich_data(parse_network("X1 -> 2 X1 ; 2 X1 -> X1"));
  EXPECT_EQ(sd.lambda, (std::vector<Rational>{1, -1}));
  EXPECT_EQ(sd.W.rows(), 0u);
  EXPECT_EQ(sd.rank, 1u);
}

TEST(StoichData, RankTwoIsRejected) {
  StoichData sd = stoich_data(parse_network("X1 -> X2 ; X1 -> 2 X2"));
  EXPECT_EQ(sd.rank, 2u);
  EXPECT_TRUE(sd.lambda.empty());
  try {
    assert_one_dimensional(sd);
    ADD_FAILURE();
  } catch (const NotOneDimensional& e) {
    EXPECT_EQ(e.rank(), 2u);
    EXPECT_EQ(e.kind(), "NotOneDimensional");
  }
}

TEST(Normalize, KeepsOrSwapsFirstSpecies) {
  Network ex37 = parse_network(kEx37);
  auto n1 = normalize_first_species(ex37);
  EXPECT_EQ(n1.permutation, identity_permutation(3));
  EXPECT_EQ(n1.network, ex37);

  Network net = parse_network("A + B -> A + 2 C ; 2 C -> B");
  auto n2 = normalize_first_species(net);
  EXPECT_EQ(n2.permutation, (Permutation{1, 0, 2}));
  EXPECT_EQ(n2.network.species()[0], "B");
  EXPECT_NE(n2.network.delta(0, 0), 0);
}

TEST(Permutation, VectorsRoundTrip) {
  Permutation p{2, 0, 1};
  std::vector<int> v{10, 20, 30};
  auto w = permute_vector<int>(v, p);
  EXPECT_EQ(w, (std::vector<int>{30, 10, 20}));
  EXPECT_EQ(unpermute_vector<int>(w, p), v);
  Permutation q{1, 0, 2};
  // compose(p, q): first relabel by p, then by q.
  auto pq = compose(p, q);
  EXPECT_EQ(permute_vector<int>(v, pq), permute_vector<int>(permute_vector<int>(v, p), q));
}

TEST(Conservation, ConstantsAndClassPoint) {
  Network net = parse_network(kEx37);
  std::vector<Rational> x{2, 1, Rational(3, 4)};
  auto c = conservation_constants<Rational>(net, x);
  EXPECT_EQ(c, (std::vector<Rational>{-3, Rational(-11, 4)}));
  auto p = class_point(net, c);
  EXPECT_EQ(conservation_constants<Rational>(net, p), c);
  EXPECT_EQ(p[0], 0);
}
