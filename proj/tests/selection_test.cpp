#include "psel/selection.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "psel/error.hpp"
#include "synthetic.hpp"

namespace psel {
namespace {

constexpr SimilarityMode kModes[] = {SimilarityMode::kSyntactic, SimilarityMode::kCwe,
                                     SimilarityMode::kCombined};

Corpus fixture() { return ingest(std::string(PSEL_FIXTURE_DIR) + "/corpus.jsonl"); }

TEST(SelectSentenceTest, SelfRetrieval) {
  const Corpus c = fixture();
  const std::size_t u7 = *c.find("u07");
  for (auto mode : kModes) {
    const SelectionResult r = select_sentence(c, repr_of(c, u7), mode);
    EXPECT_EQ("u07", r.chosen_id) << to_string(mode);
    EXPECT_EQ(1.0, r.ls);
    EXPECT_EQ(0.0, r.d);
    EXPECT_EQ(0.0, r.loss);
  }
}

TEST(SelectSentenceTest, TiesGoToSmallestId) {
  CorpusRecord b{"b", "x", parse_tree("(S (A p) (B q))"), {1.0, 2.0}, {0.0, 1.0}};
  CorpusRecord a = b;
  a.id = "a";
  CorpusRecord z{"z", "y", parse_tree("(X q)"), {-1.0, 0.5}, {1.0, 1.0}};
  const Corpus c = Corpus::build({z, b, a});
  for (auto mode : kModes) {
    EXPECT_EQ("a", select_sentence(c, repr_of(c, 1), mode).chosen_id);
  }
}

TEST(SelectSentenceTest, MatchesExhaustiveOracle) {
  testing::Rng rng(100);
  for (int t = 0; t < 50; ++t) {
    const Corpus c = testing::random_corpus(rng, {10, 8, 4, 10});
    const SentenceRepr q = testing::random_query(rng, 8, 10);
    for (auto mode : kModes) {
      const auto expect = testing::oracle::best_sentence(c, q, mode);
      const auto got = select_sentence(c, q, mode);
      ASSERT_EQ(c.record(expect.index).id, got.chosen_id);
      ASSERT_EQ(expect.ls, got.ls);
      ASSERT_EQ(1.0 - got.ls, got.loss);
    }
  }
}

TEST(SelectSentenceTest, RunnerUpsAreRankedAfterChoice) {
  testing::Rng rng(101);
  const Corpus c = testing::random_corpus(rng, {12, 8, 4, 10});
  const auto q = testing::random_query(rng, 8, 10);
  const auto r = select_sentence(c, q, SimilarityMode::kCombined, 5);
  ASSERT_EQ(5u, r.runner_ups.size());
  RankedCandidate chosen{r.chosen_id, r.ls, r.d, r.loss};
  EXPECT_TRUE(ranks_before(chosen, r.runner_ups[0]));
  for (std::size_t k = 1; k < r.runner_ups.size(); ++k) {
    EXPECT_TRUE(ranks_before(r.runner_ups[k - 1], r.runner_ups[k]));
  }
  EXPECT_EQ(11u, select_sentence(c, q, SimilarityMode::kCwe, 50).runner_ups.size());
  EXPECT_TRUE(select_sentence(c, q, SimilarityMode::kCwe, 0).runner_ups.empty());
}

TEST(SelectSentenceTest, Errors) {
  const Corpus empty;
  SentenceRepr q{std::vector<double>{1.0}, DistanceVector{{0}}};
  EXPECT_THROW(select_sentence(empty, q, SimilarityMode::kCwe), Error);
  const Corpus c = fixture();
  SentenceRepr no_cwe{std::nullopt, DistanceVector{{0, 1}}};
  EXPECT_THROW(select_sentence(c, no_cwe, SimilarityMode::kCwe), MissingRepresentationError);
  EXPECT_THROW(select_sentence(c, no_cwe, SimilarityMode::kCombined), MissingRepresentationError);
  EXPECT_NO_THROW(select_sentence(c, no_cwe, SimilarityMode::kSyntactic));
  SentenceRepr short_cwe{std::vector<double>{1.0, 2.0}, std::nullopt};
  EXPECT_THROW(select_sentence(c, short_cwe, SimilarityMode::kCwe), DimensionError);
}

TEST(SelectSentenceTest, ReportsDegenerateCandidates) {
  const Corpus c = fixture();  // u08 "Breaking news" has 2 tokens; no single-token records
  SentenceRepr one_token{std::nullopt, DistanceVector{{0}}};
  const auto r = select_sentence(c, one_token, SimilarityMode::kSyntactic);
  EXPECT_EQ(c.size(), r.degenerate_candidates);
  EXPECT_EQ(0.0, r.ls);
}

class ParagraphTest : public ::testing::Test {
 protected:
  void SetUp() override {
    corpus_ = testing::random_corpus(rng_, {15, 8, 16, 10});
    projector_ = Projector::fit(corpus_);
  }
  std::vector<SentenceRepr> paragraph(std::size_t n) {
    std::vector<SentenceRepr> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(testing::random_query(rng_, 8, 10));
    return out;
  }

  testing::Rng rng_{200};
  Corpus corpus_;
  Projector projector_;
};

TEST_F(ParagraphTest, SingleSentenceMatchesSelectSentence) {
  for (int t = 0; t < 20; ++t) {
    const auto q = paragraph(1);
    for (auto mode : kModes) {
      const auto plain = select_sentence(corpus_, q[0], mode);
      for (double lsw : {0.0, 0.3, 0.7, 0.9, 1.0}) {
        const auto r = select_paragraph(corpus_, q, {mode, lsw, true, 5}, projector_);
        ASSERT_EQ(1u, r.size());
        ASSERT_EQ(plain.chosen_id, r[0].chosen_id);
        ASSERT_EQ(plain.ls, r[0].ls);
        ASSERT_EQ(0.0, r[0].d);
      }
    }
  }
}

TEST_F(ParagraphTest, FullWeightIgnoresAcoustics) {
  for (int t = 0; t < 20; ++t) {
    const auto q = paragraph(6);
    for (auto mode : kModes) {
      const auto r = select_paragraph(corpus_, q, {mode, 1.0, true, 5}, projector_);
      for (std::size_t k = 0; k < q.size(); ++k) {
        ASSERT_EQ(select_sentence(corpus_, q[k], mode).chosen_id, r[k].chosen_id);
      }
    }
  }
}

TEST_F(ParagraphTest, EachStepMatchesExhaustiveOracle) {
  for (int t = 0; t < 30; ++t) {
    const auto q = paragraph(5);
    for (auto mode : kModes) {
      for (double lsw : {0.7, 0.85, 0.9, 0.5}) {
        for (bool norm : {true, false}) {
          const auto r = select_paragraph(corpus_, q, {mode, lsw, norm, 3}, projector_);
          std::optional<std::size_t> prev;
          for (std::size_t k = 0; k < q.size(); ++k) {
            const auto pick =
                testing::oracle::best_step(corpus_, q[k], mode, lsw, projector_, norm, prev);
            ASSERT_EQ(corpus_.record(pick.index).id, r[k].chosen_id) << "step " << k;
            ASSERT_EQ(pick.loss, r[k].loss);
            ASSERT_EQ(pick.d, r[k].d);
            prev = pick.index;
          }
        }
      }
    }
  }
}

TEST_F(ParagraphTest, LossIdentityHolds) {
  for (int t = 0; t < 20; ++t) {
    const auto q = paragraph(6);
    for (double lsw : {1.0, 0.95, 0.9, 0.8, 0.7, 0.0}) {
      for (const auto& r : select_paragraph(corpus_, q, {SimilarityMode::kCombined, lsw, true, 5},
                                            projector_)) {
        ASSERT_NEAR(lsw * (1.0 - r.ls) + (1.0 - lsw) * r.d, r.loss, 1e-12);
        for (const auto& c : r.runner_ups) ASSERT_LE(r.loss, c.loss);
      }
    }
  }
}

TEST_F(ParagraphTest, FirstSentenceHasZeroDistance) {
  const auto r = select_paragraph(corpus_, paragraph(4), {SimilarityMode::kCwe, 0.5, true, 5},
                                  projector_);
  EXPECT_EQ(0.0, r[0].d);
  for (const auto& c : r[0].runner_ups) EXPECT_EQ(0.0, c.d);
}

TEST_F(ParagraphTest, PerStepScalarizationMonotone) {
  const Selector selector(corpus_, projector_);
  const double grid[] = {1.0, 0.95, 0.9, 0.85, 0.8, 0.75, 0.7};
  for (int t = 0; t < 200; ++t) {
    const auto q = testing::random_query(rng_, 8, 10);
    const std::size_t prev = std::uniform_int_distribution<std::size_t>(0, corpus_.size() - 1)(rng_);
    for (auto mode : kModes) {
      double last_d = 0.0, last_ls = 0.0;
      for (std::size_t g = 0; g < std::size(grid); ++g) {
        const auto r = selector.select_step(q, {mode, grid[g], true, 0}, prev);
        if (g > 0) {
          // lsw fell from grid[g-1] to grid[g]
          ASSERT_LE(r.d, last_d);
          ASSERT_LE(r.ls, last_ls);
        }
        last_d = r.d;
        last_ls = r.ls;
      }
    }
  }
}

TEST_F(ParagraphTest, CorpusOrderDoesNotMatter) {
  std::vector<CorpusRecord> records(corpus_.records().begin(), corpus_.records().end());
  std::reverse(records.begin(), records.end());
  std::rotate(records.begin(), records.begin() + 4, records.end());
  const Corpus shuffled = Corpus::build(records);
  const Projector p2 = Projector::fit(shuffled);
  for (int t = 0; t < 20; ++t) {
    const auto q = paragraph(5);
    for (auto mode : kModes) {
      const auto a = select_paragraph(corpus_, q, {mode, 0.8, true, 0}, projector_);
      const auto b = select_paragraph(shuffled, q, {mode, 0.8, true, 0}, p2);
      for (std::size_t k = 0; k < q.size(); ++k) ASSERT_EQ(a[k].chosen_id, b[k].chosen_id);
    }
  }
}

TEST_F(ParagraphTest, DominatedRecordNeverChanges) {
  const SelectionConfig cfg{SimilarityMode::kCwe, 0.8, true, 0};
  const Selector base(corpus_, projector_);
  for (int t = 0; t < 50; ++t) {
    const auto q = testing::random_query(rng_, 8, 10);
    const std::size_t prev = std::uniform_int_distribution<std::size_t>(0, corpus_.size() - 1)(rng_);
    const auto before = base.select_step(q, cfg, prev);

    // ls = -1 and an acoustic embedding far outside the corpus along the
    // first component: strictly worse on both terms. The id sorts first so
    // only the dominance, not the tie-break, can keep it out.
    CorpusRecord bad = corpus_.record(0);
    bad.id = "000-dominated";
    bad.cwe = *q.cwe;
    for (auto& x : bad.cwe) x = -x;
    bad.acoustic = projector_.mean();
    for (std::size_t k = 0; k < bad.acoustic.size(); ++k) {
      bad.acoustic[k] += 1e3 * projector_.components()[0][k];
    }
    std::vector<CorpusRecord> records(corpus_.records().begin(), corpus_.records().end());
    records.push_back(bad);
    const Corpus bigger = Corpus::build(records);
    const auto after = Selector(bigger, projector_).select_step(q, cfg, prev);
    ASSERT_LT(-1.0, before.ls);
    ASSERT_EQ(before.chosen_id, after.chosen_id);
    ASSERT_EQ(before.loss, after.loss);
  }
}

TEST(SelectionConfigTest, RejectsOutOfRangeLsw) {
  EXPECT_THROW(validate({SimilarityMode::kCwe, 1.5, true, 5}), Error);
  EXPECT_THROW(validate({SimilarityMode::kCwe, -0.1, true, 5}), Error);
  EXPECT_THROW(validate({SimilarityMode::kCwe, std::nan(""), true, 5}), Error);
  EXPECT_NO_THROW(validate({}));
  EXPECT_EQ(0.9, SelectionConfig{}.lsw);
}

TEST(SelectParagraphTest, EmptyParagraphThrows) {
  testing::Rng rng(5);
  const Corpus c = testing::random_corpus(rng, {5, 4, 4, 6});
  const Projector p = Projector::fit(c);
  EXPECT_THROW(select_paragraph(c, {}, {}, p), Error);
}

}  // namespace
}  // namespace psel
