#include "psel/similarity.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "psel/error.hpp"
#include "synthetic.hpp"

namespace psel {
namespace {

using V = std::vector<double>;

DistanceVector dv(std::vector<std::uint32_t> v) { return DistanceVector{std::move(v)}; }

TEST(CosineTest, Identity) {
  const V a{1, 2, 3};
  const Similarity s = cosine(a, a);
  EXPECT_EQ(1.0, s.value);
  EXPECT_FALSE(s.degenerate);
}

TEST(CosineTest, Orthogonal) { EXPECT_EQ(0.0, cosine(V{1, 0}, V{0, 1}).value); }

TEST(CosineTest, FortyFiveDegrees) {
  EXPECT_NEAR(1.0 / std::sqrt(2.0), cosine(V{1, 1}, V{1, 0}).value, 1e-9);
  EXPECT_NEAR(0.7071, cosine(V{1, 1}, V{1, 0}).value, 1e-4);
}

TEST(CosineTest, LengthMismatchThrows) {
  EXPECT_THROW(cosine(V{1, 2}, V{1, 2, 3}), DimensionError);
  EXPECT_THROW(cosine(V{}, V{}), DimensionError);
}

TEST(CosineTest, ZeroNormIsFlaggedNotThrown) {
  const Similarity s = cosine(V{0, 0}, V{1, 2});
  EXPECT_EQ(0.0, s.value);
  EXPECT_TRUE(s.degenerate);
}

TEST(CosineTest, SymmetricBoundedAndScaleInvariant) {
  testing::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const V a = testing::random_vector(rng, 16);
    V b = testing::random_vector(rng, 16);
    const double ab = cosine(a, b).value;
    ASSERT_EQ(ab, cosine(b, a).value);
    ASSERT_LE(std::abs(ab), 1.0);
    ASSERT_EQ(1.0, cosine(a, a).value);
    for (auto& x : b) x *= 3.7;
    ASSERT_NEAR(ab, cosine(a, b).value, 1e-12);
  }
}

TEST(SyntacticSimilarityTest, Identical) {
  EXPECT_EQ(1.0, syntactic_similarity(dv({0, 2, 1}), dv({0, 2, 1})).value);
}

TEST(SyntacticSimilarityTest, ZeroPadsShorter) {
  // cosine([0,2,1,3],[0,2,1,0]) = 5 / (sqrt(14) * sqrt(5))
  const double expected = 5.0 / (std::sqrt(14.0) * std::sqrt(5.0));
  EXPECT_NEAR(expected, syntactic_similarity(dv({0, 2, 1, 3}), dv({0, 2, 1})).value, 1e-12);
  EXPECT_NEAR(0.5976, syntactic_similarity(dv({0, 2, 1, 3}), dv({0, 2, 1})).value, 1e-4);
  EXPECT_EQ(syntactic_similarity(dv({0, 2, 1})  , dv({0, 2, 1, 3})).value,
            syntactic_similarity(dv({0, 2, 1, 3}), dv({0, 2, 1})).value);
}

TEST(SyntacticSimilarityTest, SingleTokenPairIsDegenerate) {
  const Similarity s = syntactic_similarity(dv({0}), dv({0}));
  EXPECT_EQ(0.0, s.value);
  EXPECT_TRUE(s.degenerate);
}

TEST(SyntacticSimilarityTest, EmptyThrows) {
  EXPECT_THROW(syntactic_similarity(dv({}), dv({0})), DimensionError);
}

SentenceRepr both(V cwe, std::vector<std::uint32_t> d) {
  return SentenceRepr{std::move(cwe), dv(std::move(d))};
}

TEST(CombinedSimilarityTest, AveragesChannels) {
  // cwe channel: cos((1,0),(1,0)) = 1; syntactic channel: identical -> 1.
  EXPECT_EQ(1.0, combined_similarity(both({1, 0}, {0, 2, 1}), both({1, 0}, {0, 2, 1})).value);
  // cwe channel 0 (orthogonal), syntactic 1 -> 0.5.
  EXPECT_EQ(0.5, combined_similarity(both({1, 0}, {0, 2, 1}), both({0, 1}, {0, 2, 1})).value);
  EXPECT_DOUBLE_EQ(0.7, combine({0.8, false}, {0.6, false}).value);
}

TEST(CombinedSimilarityTest, EqualsChannelWhenChannelsAgree) {
  const auto a = both({1, 1}, {0, 1});
  const auto b = both({1, 0}, {0, 1, 1});
  const double c = cosine(*a.cwe, *b.cwe).value;
  const double s = syntactic_similarity(*a.syndist, *b.syndist).value;
  ASSERT_NEAR(c, s, 1e-15);  // both 1/sqrt(2)
  EXPECT_NEAR(c, combined_similarity(a, b).value, 1e-15);
}

TEST(CombinedSimilarityTest, MissingFieldIsNamed) {
  SentenceRepr only_cwe{V{1, 0}, std::nullopt};
  SentenceRepr full = both({1, 0}, {0, 1});
  try {
    combined_similarity(full, only_cwe);
    FAIL() << "expected MissingRepresentationError";
  } catch (const MissingRepresentationError& e) {
    EXPECT_NE(std::string(e.what()).find("tree"), std::string::npos);
  }
  SentenceRepr only_syn{std::nullopt, dv({0, 1})};
  try {
    combined_similarity(only_syn, full);
    FAIL() << "expected MissingRepresentationError";
  } catch (const MissingRepresentationError& e) {
    EXPECT_NE(std::string(e.what()).find("cwe"), std::string::npos);
  }
}

TEST(CombinedSimilarityTest, SymmetricAndBounded) {
  testing::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_query(rng, 8, 10);
    const auto b = testing::random_query(rng, 8, 10);
    for (auto mode : {SimilarityMode::kSyntactic, SimilarityMode::kCwe, SimilarityMode::kCombined}) {
      const double ab = similarity(mode, a, b).value;
      ASSERT_EQ(ab, similarity(mode, b, a).value);
      ASSERT_GE(ab, -1.0);
      ASSERT_LE(ab, 1.0);
    }
  }
}

TEST(SimilarityModeTest, NamesRoundTrip) {
  for (auto mode : {SimilarityMode::kSyntactic, SimilarityMode::kCwe, SimilarityMode::kCombined}) {
    EXPECT_EQ(mode, parse_similarity_mode(to_string(mode)));
  }
  EXPECT_THROW(parse_similarity_mode("bert"), Error);
}

}  // namespace
}  // namespace psel
