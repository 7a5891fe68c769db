#include "jacring/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace jacring;

namespace {

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (rng() % 3 == 0) continue;
      long num = static_cast<long>(rng() % 11) - 5;
      long den = static_cast<long>(rng() % 4) + 1;
      m.set(i, j, Rat(num, den));
    }
  }
  return m;
}

}  // namespace

TEST(Rat, CanonicalForm) {
  Rat a(6, -4);
  EXPECT_EQ(a.str(), "-3/2");
  EXPECT_EQ(a.frac_str(), "-3/2");
  EXPECT_EQ(Rat(0, 7).frac_str(), "0/1");
  EXPECT_EQ(Rat(4, 2).str(), "2");
  EXPECT_EQ(Rat::parse("10/-4"), Rat(-5, 2));
  EXPECT_EQ(Rat::parse("-7"), Rat(-7));
  EXPECT_THROW(Rat(1, 0), RangeError);
  EXPECT_THROW(Rat::parse("abc"), RangeError);
  EXPECT_THROW(Rat(1) / Rat(0), RangeError);
}

TEST(Rat, ExactDistributivity) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto pick = [&] {
      return Rat(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1);
    };
    Rat a = pick(), b = pick(), c = pick();
    EXPECT_EQ((a + b) * c, a * c + b * c);
  }
}

TEST(Rat, Combinatorics) {
  EXPECT_EQ(factorial(5), Rat(120));
  EXPECT_EQ(binomial(6, 2), Rat(15));
  EXPECT_EQ(ipow(Rat(-2, 3), 3), Rat(-8, 27));
  EXPECT_EQ(ipow(Rat(7), 0), Rat(1));
}

TEST(Rref, ProportionalRows) {
  auto r = rref(RatMatrix::from_dense({{1, 2}, {2, 4}}));
  EXPECT_EQ(r.rank, 1U);
  EXPECT_EQ(r.pivots, std::vector<std::size_t>{0});
  EXPECT_EQ(r.matrix.at(0, 1), Rat(2));
}

TEST(Rref, IdentityIsFixed) {
  auto id = RatMatrix::identity(3);
  auto r = rref(id);
  EXPECT_EQ(r.rank, 3U);
  EXPECT_EQ(r.matrix, id);
}

TEST(Rref, HandReducedTwoByTwo) {
  auto r = rref(RatMatrix::from_dense({{1, 1}, {1, 2}}));
  EXPECT_EQ(r.rank, 2U);
  EXPECT_EQ(r.matrix, RatMatrix::identity(2));
}

TEST(Rref, EmptyMatrix) {
  auto r = rref(RatMatrix(0, 0));
  EXPECT_EQ(r.rank, 0U);
  EXPECT_TRUE(r.pivots.empty());
}

TEST(Rref, IdempotentOnRandomMatrices) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    auto m = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6);
    auto once = rref(m);
    auto twice = rref(once.matrix);
    EXPECT_EQ(once.matrix, twice.matrix);
    EXPECT_EQ(once.rank, twice.rank);
  }
}

TEST(Inverse, SingularThrows) {
  EXPECT_THROW(inverse(RatMatrix::from_dense({{1, 2}, {2, 4}})), DegenerateBasisError);
  auto inv = inverse(RatMatrix::from_dense({{2, 1}, {1, 1}}));
  EXPECT_EQ(inv.at(0, 0), Rat(1));
  EXPECT_EQ(inv.at(0, 1), Rat(-1));
  EXPECT_EQ(inv.at(1, 1), Rat(2));
}

TEST(Vandermonde, HandSolvedSystem) {
  // 4a + 16b = 20, 9a + 81b = 90
  auto c = solve_vandermonde({2, 3}, {2, 4}, {{{0, Rat(20)}}, {{0, Rat(90)}}});
  ASSERT_EQ(c.size(), 2U);
  EXPECT_EQ(c[0].at(0), Rat(1));
  EXPECT_EQ(c[1].at(0), Rat(1));
}

TEST(Vandermonde, SingleUnknown) {
  auto c = solve_vandermonde({3}, {2}, {{{4, Rat(5)}}});
  EXPECT_EQ(c[0].at(4), Rat(5, 9));
}

TEST(Vandermonde, ZeroValues) {
  auto c = solve_vandermonde({2, 3, 4}, {0, 1, 2}, {{}, {}, {}});
  for (const auto& v : c) EXPECT_TRUE(v.empty());
}

TEST(Vandermonde, DegenerateAndShapeErrors) {
  EXPECT_THROW(solve_vandermonde({2, 3}, {2, 2}, {{}, {}}), DegenerateBasisError);
  EXPECT_THROW(solve_vandermonde({2, 2}, {1, 2}, {{}, {}}), DegenerateBasisError);
  EXPECT_THROW(solve_vandermonde({2}, {1, 2}, {{}}), ShapeError);
  EXPECT_THROW(solve_vandermonde({0}, {1}, {{}}), RangeError);
}

TEST(Vandermonde, RoundTripReproducesInputs) {
  std::mt19937_64 rng(3);
  const std::vector<long> samples{2, 3, -1, 5, 7};
  const std::vector<unsigned> exps{0, 1, 2, 3, 4};
  std::vector<RatVector> values(samples.size());
  for (auto& v : values) {
    for (std::size_t i = 0; i < 4; ++i) {
      long num = static_cast<long>(rng() % 21) - 10;
      if (num != 0) v.emplace(i, Rat(num, static_cast<long>(rng() % 5) + 1));
    }
  }
  auto comps = solve_vandermonde(samples, exps, values);
  for (std::size_t j = 0; j < samples.size(); ++j) {
    RatVector back;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      axpy(back, ipow(Rat(samples[j]), exps[k]), comps[k]);
    }
    EXPECT_EQ(back, values[j]);
  }
}

TEST(Subspace, Examples) {
  EXPECT_EQ(subspace_closure(2, {{{0, 1}}, {{1, 1}}, {{0, 1}, {1, 1}}}).dim(), 2U);
  EXPECT_EQ(subspace_closure(2, {}).dim(), 0U);
  auto s = subspace_closure(2, {{{0, 2}, {1, 4}}, {{0, 1}, {1, 2}}});
  EXPECT_EQ(s.dim(), 1U);
  EXPECT_TRUE(s.contains({{0, Rat(-3)}, {1, Rat(-6)}}));
  EXPECT_FALSE(s.contains({{1, Rat(1)}}));
  EXPECT_THROW(s.insert({{5, Rat(1)}}), ShapeError);
}

TEST(Subspace, DimensionMatchesRref) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    auto m = random_matrix(rng, 1 + rng() % 7, 5);
    std::vector<RatVector> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    auto s = subspace_closure(5, rows);
    EXPECT_EQ(s.dim(), rref(m).rank);
    for (const auto& r : rows) EXPECT_TRUE(s.contains(r));
  }
}
