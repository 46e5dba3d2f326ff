#include <gtest/gtest.h>

#include "biquad/alternating.hpp"
#include "biquad/certificate.hpp"
#include "biquad/classes.hpp"
#include "biquad/dominance.hpp"
#include "biquad/errors.hpp"
#include "biquad/monic_form.hpp"
#include "oracles.hpp"

namespace biquad {
namespace {

FlatMatrix matrix2(Rational a, Rational b, Rational c) { return FlatMatrix(2, 1, {a, b, b, c}); }

// Flattening written out by hand: row/column order (1,1), (1,2), (2,1), (2,2).
TEST(Flatten, MonicTwoByTwoByHand) {
  const Rational a(2), b(3), c(5);
  const FlatMatrix expected(2, 2, {1, b, a, c,  //
                                   b, 1, c, a,  //
                                   a, c, 1, b,  //
                                   c, a, b, 1});
  EXPECT_EQ(flatten(monic_to_tensor({2, 2, a, b, c})), expected);
}

TEST(Flatten, IdentityAndZero) {
  const FlatMatrix id = flatten(m_identity(2, 3));
  for (std::size_t p = 0; p < 6; ++p)
    for (std::size_t q = 0; q < 6; ++q) EXPECT_EQ(id(p, q), Rational(p == q ? 1 : 0));
  EXPECT_EQ(flatten(symmetrize(BiquadraticTensor(2, 2))), FlatMatrix(2, 2));
}

TEST(Flatten, SymmetricWithPairExchange) {
  testing::RandomRationals rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = rng.dim(1, 4), n = rng.dim(1, 4);
    const SymmetricTensor t = symmetrize(rng.tensor(m, n));
    const FlatMatrix f = flatten(t);
    EXPECT_TRUE(f.is_symmetric());
    EXPECT_TRUE(f.has_pair_exchange_symmetry());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < m; ++k)
          for (std::size_t l = 0; l < n; ++l) EXPECT_EQ(f(i * n + j, k * n + l), t(i, j, k, l));
  }
}

TEST(RowBound, IdentityIsZero) {
  const SymmetricTensor id = m_identity(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(row_bound(id, i, j), Rational(0));
}

TEST(RowBound, MonicClosedForm) {
  testing::RandomRationals rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const MonicParams p{rng.dim(2, 4), rng.dim(2, 4), rng.next(), rng.next(), rng.next()};
    const Rational expected = Rational(long(p.m - 1)) * abs(p.a) + Rational(long(p.n - 1)) * abs(p.b) +
                              Rational(long((p.m - 1) * (p.n - 1))) * abs(p.c);
    const SymmetricTensor t = monic_to_tensor(p);
    for (std::size_t i = 0; i < p.m; ++i)
      for (std::size_t j = 0; j < p.n; ++j) EXPECT_EQ(row_bound(t, i, j), expected);
  }
}

// For symmetric tensors both sums in r_ij run over the same flattened row.
TEST(RowBound, EqualsOffDiagonalRowSum) {
  testing::RandomRationals rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = rng.dim(1, 4), n = rng.dim(1, 4);
    const SymmetricTensor t = symmetrize(rng.tensor(m, n));
    const FlatMatrix f = flatten(t);
    for (std::size_t p = 0; p < m * n; ++p) {
      Rational sum;
      for (std::size_t q = 0; q < m * n; ++q)
        if (q != p) sum += abs(f(p, q));
      EXPECT_EQ(row_bound(t, p / n, p % n), sum);
    }
  }
}

TEST(RowBound, OutOfRange) {
  EXPECT_THROW(row_bound(m_identity(2, 2), 2, 0), DimensionError);
  EXPECT_THROW(row_bound(m_identity(2, 2), 0, 2), DimensionError);
}

TEST(DiagonalDominance, Examples) {
  EXPECT_TRUE(is_diagonally_dominated(m_identity(3, 3)));
  EXPECT_FALSE(is_diagonally_dominated(monic_to_tensor({2, 2, 1, 1, 1})));
  EXPECT_TRUE(is_diagonally_dominated(monic_to_tensor({2, 2, Rational(1, 2), Rational(1, 2), 0})));
  const auto v = dominance_violations(monic_to_tensor({2, 2, 1, 1, 1}));
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0].diagonal, Rational(1));
  EXPECT_EQ(v[0].bound, Rational(3));
}

TEST(DdMatrixDecompose, Identity) {
  const DDCertificateRaw raw = dd_matrix_decompose(flatten(m_identity(2, 2)));
  EXPECT_EQ(raw.alphas, std::vector<Rational>(4, Rational(1)));
  EXPECT_TRUE(raw.pairs.empty());
}

TEST(DdMatrixDecompose, AllOnes) {
  const DDCertificateRaw raw = dd_matrix_decompose(matrix2(1, 1, 1));
  EXPECT_EQ(raw.alphas, (std::vector<Rational>{0, 0}));
  ASSERT_EQ(raw.pairs.size(), 1u);
  EXPECT_EQ(raw.pairs[0].beta, Rational(1));
  EXPECT_EQ(raw.pairs[0].sign, 1);
}

TEST(DdMatrixDecompose, NegativeOffDiagonal) {
  const DDCertificateRaw raw = dd_matrix_decompose(matrix2(3, -2, 5));
  EXPECT_EQ(raw.alphas, (std::vector<Rational>{1, 3}));
  ASSERT_EQ(raw.pairs.size(), 1u);
  EXPECT_EQ(raw.pairs[0].beta, Rational(2));
  EXPECT_EQ(raw.pairs[0].sign, -1);
  EXPECT_EQ(reconstruct(raw, 2, 1), matrix2(3, -2, 5));
}

TEST(DdMatrixDecompose, NamesFailingRow) {
  try {
    dd_matrix_decompose(matrix2(3, 2, 1));
    FAIL();
  } catch (const NotDiagonallyDominantError& e) {
    EXPECT_EQ(e.row(), 1u);
  }
}

TEST(DdSosDecompose, Identity) {
  const SOSCertificate cert = dd_sos_decompose(m_identity(2, 2));
  EXPECT_EQ(cert.terms.size(), 4u);
  for (const SOSTerm& term : cert.terms) EXPECT_EQ(term.weight, Rational(1));
  EXPECT_TRUE(tensors_equal(expand_certificate(cert), m_identity(2, 2)));
}

TEST(DdSosDecompose, SinglePair) {
  BiquadraticTensor t(2, 1);
  for (Rational& v : t.entries()) v = 1;
  const SOSCertificate cert = dd_sos_decompose(SymmetricTensor::from_symmetric(t));
  ASSERT_EQ(cert.terms.size(), 1u);
  EXPECT_EQ(cert.terms[0].form, BilinearForm(2, 1, {1, 1}));
  EXPECT_EQ(cert.terms[0].weight, Rational(1));
}

TEST(DdSosDecompose, MonicInsideDominance) {
  const SymmetricTensor t = monic_to_tensor({2, 2, Rational(1, 2), Rational(1, 2), 0});
  EXPECT_TRUE(tensors_equal(expand_certificate(dd_sos_decompose(t)), t));
}

TEST(DdSosDecompose, RejectsNonDominated) {
  EXPECT_THROW(dd_sos_decompose(monic_to_tensor({2, 2, 1, 1, 1})), NotDiagonallyDominantError);
}

TEST(DdSosDecompose, RoundTripOnGeneratedTensors) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t m = 1 + seed % 4, n = 1 + (seed / 4) % 4;
    const SymmetricTensor t = generate(TensorClass::dd, m, n, seed);
    ASSERT_TRUE(is_diagonally_dominated(t));
    const SOSCertificate cert = dd_sos_decompose(t);
    for (const SOSTerm& term : cert.terms) EXPECT_GE(term.weight, Rational(0));
    EXPECT_TRUE(tensors_equal(expand_certificate(cert), t));
    EXPECT_GE(sample_min(t, 50, seed).value, -1e-9);
  }
}

TEST(DdMatrixDecompose, ReconstructsRandomDominantMatrices) {
  testing::RandomRationals rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = rng.dim(1, 3), n = rng.dim(1, 3), s = m * n;
    FlatMatrix f(m, n);
    for (std::size_t p = 0; p < s; ++p)
      for (std::size_t q = p + 1; q < s; ++q) f(p, q) = f(q, p) = rng.next(1, 5);
    for (std::size_t p = 0; p < s; ++p) {
      Rational row;
      for (std::size_t q = 0; q < s; ++q)
        if (q != p) row += abs(f(p, q));
      f(p, p) = row + rng.next(1, 3).abs();
    }
    EXPECT_EQ(reconstruct(dd_matrix_decompose(f), m, n), f);
  }
}

}  // namespace
}  // namespace biquad
