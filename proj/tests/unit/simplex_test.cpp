#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "rwc/complex.hpp"
#include "rwc/simplex.hpp"

namespace {

using rwc::Simplex;

Simplex from(const oracle::VertexSet& v) {
  std::vector<rwc::Vertex> u(v.begin(), v.end());
  return Simplex(std::span<const rwc::Vertex>(u));
}

TEST(Simplex, RankExamples) {
  EXPECT_EQ(rwc::rank(Simplex{0, 1, 2}, 10).value, 0u);
  EXPECT_EQ(rwc::rank(Simplex{1, 3}, 5).value, 4u);
  EXPECT_EQ(rwc::rank(Simplex{2, 3, 4}, 5).value, 9u);
  EXPECT_THROW(rwc::rank(Simplex{1, 5}, 5), std::domain_error);
}

TEST(Simplex, UnrankExamples) {
  EXPECT_EQ(rwc::unrank({0, 2, 10}), (Simplex{0, 1, 2}));
  EXPECT_EQ(rwc::unrank({4, 1, 5}), (Simplex{1, 3}));
  EXPECT_THROW(rwc::unrank({10, 1, 5}), std::out_of_range);
}

TEST(Simplex, RankMatchesExhaustiveColexEnumeration) {
  for (int n = 1; n <= 12; ++n) {
    for (int k = 1; k <= std::min(n, 6); ++k) {
      const auto subsets = oracle::colex_subsets(n, k);
      ASSERT_EQ(subsets.size(), rwc::binomial(n, k));
      for (std::size_t i = 0; i < subsets.size(); ++i) {
        const Simplex s = from(subsets[i]);
        ASSERT_EQ(rwc::rank(s, n).value, i);
        ASSERT_EQ(rwc::unrank({i, k - 1, n}), s);
      }
    }
  }
}

TEST(Simplex, IndexerAgreesWithFreeFunctions) {
  const rwc::SimplexIndexer idx(9, 3);
  EXPECT_EQ(idx.num_top(), 126u);
  EXPECT_EQ(idx.num_faces(), 84u);
  for (rwc::Rank r = 0; r < idx.num_top(); ++r) {
    const Simplex t = idx.top(r);
    EXPECT_EQ(idx.rank_of(t), r);
    const auto fr = idx.face_ranks(t);
    const auto fs = rwc::faces(t);
    ASSERT_EQ(fr.size(), fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) EXPECT_EQ(idx.face(fr[i]), fs[i]);
  }
}

TEST(Simplex, ColexWalkerVisitsRanksInOrder) {
  rwc::ColexWalker walk(8, 3);
  rwc::Rank expected = 0;
  for (; !walk.done(); walk.advance()) EXPECT_EQ(rwc::rank(walk.current(), 8).value, expected++);
  EXPECT_EQ(expected, 56u);
}

TEST(Simplex, Faces) {
  EXPECT_EQ(rwc::faces(Simplex{0, 1, 2}), (std::vector<Simplex>{{1, 2}, {0, 2}, {0, 1}}));
  EXPECT_EQ(rwc::faces(Simplex{0, 1}), (std::vector<Simplex>{{1}, {0}}));
}

TEST(Simplex, Cofacets) {
  EXPECT_EQ(rwc::cofacets(Simplex{0}, 3), (std::vector<Simplex>{{0, 1}, {0, 2}}));
  EXPECT_EQ(rwc::cofacets(Simplex{0, 1}, 4), (std::vector<Simplex>{{0, 1, 2}, {0, 1, 3}}));
}

TEST(Simplex, BinomialOverflowIsAnError) {
  EXPECT_EQ(rwc::binomial(60, 30), 118264581564861424ull);
  EXPECT_THROW(rwc::binomial(200, 100), std::overflow_error);
}

TEST(Complex, Degree) {
  const rwc::WeightedComplex empty(5, 2);
  EXPECT_EQ(empty.degree(Simplex{0, 1}), 0);
  std::vector<rwc::Rank> all(rwc::binomial(5, 3));
  std::iota(all.begin(), all.end(), 0);
  const rwc::WeightedComplex full(5, 2, all, std::vector<double>(all.size(), 1.0));
  EXPECT_EQ(full.degree(Simplex{0, 1}), 3);
  const rwc::SimplexIndexer idx(4, 2);
  const rwc::WeightedComplex one(4, 2, {idx.rank_of(Simplex{0, 1, 2})}, {1.0});
  EXPECT_EQ(one.degree(Simplex{0, 1}), 1);
  EXPECT_EQ(one.degree(Simplex{0, 3}), 0);
}

TEST(Complex, ConstructorRejectsBadInput) {
  EXPECT_THROW(rwc::WeightedComplex(4, 1, {0, 0}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(rwc::WeightedComplex(4, 1, {6}, {1.0}), std::invalid_argument);
  EXPECT_THROW(rwc::WeightedComplex(4, 1, {1}, {-1.0}), std::invalid_argument);
}

}  // namespace
