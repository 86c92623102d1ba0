#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rwc/cohomology.hpp"
#include "rwc/topology.hpp"

namespace {

using namespace rwc;

TEST(Cohomology, Examples) {
  SubComplexView lone;
  lone.n = 5;
  lone.d = 2;
  lone.faces = std::vector<Rank>{0};
  EXPECT_EQ(cocycle_dim(lone), 1u);

  const SimplexIndexer idx(4, 2);
  const WeightedComplex single(4, 2, {idx.rank_of(Simplex{0, 1, 2})}, {1.0});
  const auto lab = components(single);
  for (std::size_t c = 0; c < lab.size(); ++c) {
    if (!lab.tops_of(c).empty()) EXPECT_EQ(cocycle_dim(lab.view(c, single)), 2u);
  }

  std::vector<Rank> tet{0, 1, 2, 3};
  const WeightedComplex boundary(4, 2, tet, std::vector<double>(4, 1.0));
  EXPECT_EQ(cocycle_dim(boundary), 3u);
}

TEST(Cohomology, RankExamples) {
  EXPECT_EQ(rank_pm1(CoboundaryMatrix(4, 5)), 0u);
  CoboundaryMatrix id(6, 6);
  for (std::size_t i = 0; i < 6; ++i) id.set(i, i, 1);
  EXPECT_EQ(rank_pm1(id), 6u);
  EXPECT_EQ(rank_fraction_free(id), 6u);
}

TEST(Cohomology, PrimeFieldRankMatchesFractionFreeAndRationalOracle) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + gen() % 12;
    const std::size_t cols = 1 + gen() % 12;
    CoboundaryMatrix m(rows, cols);
    std::vector<std::vector<int>> dense(rows, std::vector<int>(cols, 0));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const int v = static_cast<int>(gen() % 3) - 1;
        m.set(r, c, v);
        dense[r][c] = v;
      }
    }
    const auto expected = oracle::rational_rank(dense);
    EXPECT_EQ(rank_pm1(m), expected);
    EXPECT_EQ(rank_fraction_free(m), expected);
  }
}

TEST(Cohomology, CoboundaryMatchesOracleConstruction) {
  ModelParams params;
  params.n = 6;
  params.d = 2;
  params.p = 0.4;
  const auto x = sample_complex(params, 8);
  const auto m = CoboundaryMatrix::from_complex(x);
  std::vector<oracle::VertexSet> tops;
  std::vector<oracle::VertexSet> faces;
  for (Rank t : x.present()) {
    const auto s = x.indexer().top(t);
    tops.emplace_back(s.begin(), s.end());
  }
  for (Rank f = 0; f < x.indexer().num_faces(); ++f) {
    const auto s = x.indexer().face(f);
    faces.emplace_back(s.begin(), s.end());
  }
  const auto ref = oracle::coboundary(tops, faces);
  ASSERT_EQ(m.rows(), ref.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) EXPECT_EQ(m.at(r, c), ref[r][c]);
  }
}

TEST(Cohomology, MatrixDumpRoundTrip) {
  ModelParams params;
  params.n = 7;
  params.d = 2;
  params.p = 0.3;
  const auto m = CoboundaryMatrix::from_complex(sample_complex(params, 9));
  std::stringstream buf;
  write_matrix(buf, m);
  EXPECT_EQ(read_matrix(buf), m);
}

TEST(Cohomology, AddingSimplexNeverIncreasesCocycleDim) {
  ModelParams params;
  params.n = 7;
  params.d = 2;
  params.p = 0.2;
  for (int inst = 0; inst < 100; ++inst) {
    const auto x = sample_complex(params, 100 + inst);
    const Rank tau = static_cast<Rank>(inst * 13) % x.indexer().num_top();
    const auto before = cocycle_dim(x);
    const auto after = cocycle_dim(x.with_simplex(tau, 1.0));
    EXPECT_LE(after, before);
    EXPECT_LE(before, x.indexer().num_faces());
  }
}

TEST(Cohomology, LocalComplexAgreesWithView) {
  ModelParams params;
  params.n = 8;
  params.d = 2;
  params.p = 0.15;
  const auto x = sample_complex(params, 12);
  const auto lab = components(x);
  for (std::size_t c = 0; c < lab.size(); ++c) {
    const auto view = lab.view(c, x);
    EXPECT_EQ(cocycle_dim(view), cocycle_dim(relabel(view)));
  }
}

}  // namespace
