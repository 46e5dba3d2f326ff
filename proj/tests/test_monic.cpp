#include <gtest/gtest.h>

#include "biquad/alternating.hpp"
#include "biquad/certificate.hpp"
#include "biquad/classes.hpp"
#include "biquad/errors.hpp"
#include "biquad/monic.hpp"
#include "biquad/reference.hpp"
#include "oracles.hpp"

namespace biquad {
namespace {

using Triple = std::array<Rational, 3>;

Rational R(long p, long q = 1) { return Rational(p, q); }

MonicParams at(std::size_t m, std::size_t n, const Triple& v) { return {m, n, v[0], v[1], v[2]}; }

std::array<Rational, 4> linear_conditions(const MonicParams& p) {
  const MEigenReport r = m_eigen_monic(p);
  return {*r.entries[0].value, *r.entries[1].value, *r.entries[2].value, *r.entries[3].value};
}

std::size_t binom2(std::size_t k) { return k * (k - 1) / 2; }

TEST(PsdConditions, Identity) {
  const PsdVerdict v = psd_conditions({3, 3, 0, 0, 0});
  EXPECT_TRUE(v.psd);
  for (std::size_t e = 0; e < 4; ++e) EXPECT_EQ(*v.report.entries[e].value, R(1));
  EXPECT_FALSE(v.report.entries[4].applicable);
  EXPECT_FALSE(v.report.entries[4].value.has_value());
}

TEST(PsdConditions, AllOnes) {
  const PsdVerdict v = psd_conditions({3, 3, 1, 1, 1});
  EXPECT_TRUE(v.psd);
  EXPECT_EQ(linear_conditions({3, 3, 1, 1, 1}), (std::array<Rational, 4>{0, 0, 0, 9}));
}

TEST(PsdConditions, SecondVertexFourByThree) {
  const MonicParams p{4, 3, R(-1, 3), R(-1, 2), R(1, 6)};
  EXPECT_TRUE(psd_conditions(p).psd);
  EXPECT_EQ(linear_conditions(p)[3], R(0));
}

TEST(PsdConditions, Outside) {
  EXPECT_FALSE(psd_conditions({2, 2, 2, 0, 0}).psd);
  EXPECT_FALSE(psd_conditions({2, 2, -1, -1, -1}).psd);
}

TEST(MEigen, FifthApplicability) {
  const MEigenReport r = m_eigen_monic({2, 2, R(1, 2), R(1, 2), R(1, 4)});
  EXPECT_FALSE(r.entries[4].applicable);  // a/c = 2 is outside [-1, 1)
  const MEigenReport s = m_eigen_monic({3, 3, R(-1, 2), R(-1, 2), 1});
  EXPECT_TRUE(s.entries[4].applicable);
  EXPECT_EQ(*s.entries[4].value, R(3, 4));
}

TEST(MEigen, FirstVertexMinimumIsThird) {
  for (std::size_t m = 2; m <= 5; ++m)
    for (std::size_t n = 2; n <= 5; ++n) {
      const MEigenReport r = m_eigen_monic({m, n, 1, 1, 1});
      EXPECT_EQ(*r.entries[2].value, R(0));
      EXPECT_EQ(r.min_applicable(), R(0));
    }
}

// The closed forms list every critical value on the unit spheres, so the
// sampled minimum of the form must equal the smallest applicable one.
TEST(MEigen, MinimumMatchesSampledMinimum) {
  testing::RandomRationals rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    const MonicParams p{rng.dim(2, 4), rng.dim(2, 4), rng.next(1, 6), rng.next(1, 6), rng.next(1, 6)};
    const double sampled = sample_min(monic_to_tensor(p), 300, trial).value;
    EXPECT_NEAR(sampled, m_eigen_monic(p).min_applicable().to_double(), 1e-7)
        << p.m << "x" << p.n << " " << p.a.str() << " " << p.b.str() << " " << p.c.str();
  }
}

TEST(Tetrahedron, FourByThree) {
  const Tetrahedron t = tetrahedron(4, 3);
  EXPECT_EQ(t.vertices[0], (Triple{1, 1, 1}));
  EXPECT_EQ(t.vertices[1], (Triple{R(-1, 3), R(-1, 2), R(1, 6)}));
  EXPECT_EQ(t.vertices[2], (Triple{R(-1, 3), 1, R(-1, 3)}));
  EXPECT_EQ(t.vertices[3], (Triple{1, R(-1, 2), R(-1, 2)}));
}

TEST(Tetrahedron, FourByFour) {
  const Tetrahedron t = tetrahedron(4, 4);
  EXPECT_EQ(t.vertices[1], (Triple{R(-1, 3), R(-1, 3), R(1, 9)}));
  EXPECT_EQ(t.vertices[2], (Triple{R(-1, 3), 1, R(-1, 3)}));
  EXPECT_EQ(t.vertices[3], (Triple{1, R(-1, 3), R(-1, 3)}));
}

TEST(Tetrahedron, TwoByTwo) {
  const Tetrahedron t = tetrahedron(2, 2);
  EXPECT_EQ(t.vertices[1], (Triple{-1, -1, 1}));
  EXPECT_EQ(t.vertices[2], (Triple{-1, 1, -1}));
  EXPECT_EQ(t.vertices[3], (Triple{1, -1, -1}));
}

TEST(Tetrahedron, RejectsSmallDimensions) {
  EXPECT_THROW(tetrahedron(1, 3), DimensionError);
}

// Each vertex lies on exactly three of the four facets (i)..(iv) and
// strictly inside the fourth.
TEST(Tetrahedron, VerticesTightOnThreeFacets) {
  for (std::size_t m = 2; m <= 6; ++m)
    for (std::size_t n = 2; n <= 6; ++n) {
      const Tetrahedron t = tetrahedron(m, n);
      for (const Triple& v : t.vertices) {
        const auto c = linear_conditions(at(m, n, v));
        int zeros = 0;
        for (const Rational& x : c) {
          EXPECT_GE(x, R(0));
          zeros += x.is_zero();
        }
        EXPECT_EQ(zeros, 3);
      }
    }
}

TEST(Barycentric, Examples) {
  const Tetrahedron t = tetrahedron(3, 3);
  Triple centroid{0, 0, 0};
  for (const Triple& v : t.vertices)
    for (int d = 0; d < 3; ++d) centroid[d] += v[d] / R(4);
  EXPECT_EQ(*barycentric(at(3, 3, centroid)), (std::array<Rational, 4>{R(1, 4), R(1, 4), R(1, 4), R(1, 4)}));
  EXPECT_EQ(*barycentric(at(3, 3, t.vertices[2])), (std::array<Rational, 4>{0, 0, 1, 0}));
  EXPECT_EQ(*barycentric({2, 2, 0, 0, 0}), (std::array<Rational, 4>{R(1, 4), R(1, 4), R(1, 4), R(1, 4)}));
  EXPECT_FALSE(barycentric({2, 2, 2, 0, 0}).has_value());
}

TEST(Barycentric, ReproducesPoint) {
  testing::RandomRationals rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const MonicParams p{rng.dim(2, 5), rng.dim(2, 5), rng.next(), rng.next(), rng.next()};
    const auto lambda = barycentric_coordinates(p);
    const Tetrahedron t = tetrahedron(p.m, p.n);
    Triple sum{0, 0, 0};
    Rational total;
    for (int v = 0; v < 4; ++v) {
      total += lambda[v];
      for (int d = 0; d < 3; ++d) sum[d] += lambda[v] * t.vertices[v][d];
    }
    EXPECT_EQ(total, R(1));
    EXPECT_EQ(sum, (Triple{p.a, p.b, p.c}));
  }
}

TEST(Membership, Examples) {
  EXPECT_TRUE(membership_equivalence_check({4, 3, R(-1, 3), R(-1, 2), R(1, 6)}));
  const MembershipAudit in = audit_point({4, 3, R(-1, 3), R(-1, 2), R(1, 6)});
  EXPECT_TRUE(in.conditions_psd && in.inside && in.eigen_nonnegative);
  const MembershipAudit out = audit_point({2, 2, 2, 0, 0});
  EXPECT_TRUE(out.agrees());
  EXPECT_FALSE(out.conditions_psd || out.inside || out.eigen_nonnegative);
}

TEST(Membership, FullGridThreeByThree) {
  const GridAudit audit = audit_grid({3, 3, R(1, 5), R(2)});
  EXPECT_EQ(audit.points, 21u * 21u * 21u);
  EXPECT_TRUE(audit.disagreements.empty());
  EXPECT_TRUE(audit.redundancy_failures.empty());
  EXPECT_GT(audit.psd_points, 0u);
}

TEST(Membership, GridAxis) {
  EXPECT_EQ(GridSpec{}.axis().size(), 21u);
  EXPECT_THROW((GridSpec{3, 3, R(3, 10), R(1)}.axis()), PreconditionError);
  EXPECT_THROW((GridSpec{3, 3, R(0), R(1)}.axis()), PreconditionError);
}

TEST(Membership, GridExecIndependent) {
  const GridSpec spec{2, 3, R(1, 2), R(2)};
  const GridAudit par = audit_grid(spec, Exec::parallel);
  const GridAudit ref = reference::audit_grid(spec);
  EXPECT_EQ(par.points, ref.points);
  EXPECT_EQ(par.psd_points, ref.psd_points);
  EXPECT_EQ(par.max_certificate_terms, ref.max_certificate_terms);
  EXPECT_EQ(par.points_over_five_terms, ref.points_over_five_terms);
  EXPECT_EQ(par.disagreements, ref.disagreements);
}

TEST(VertexSos, FirstVertexTwoByTwo) {
  const SOSCertificate cert = vertex_sos(Vertex::v1, 2, 2);
  ASSERT_EQ(cert.terms.size(), 1u);
  EXPECT_TRUE(tensors_equal(expand_certificate(cert), monic_to_tensor({2, 2, 1, 1, 1})));
}

TEST(VertexSos, SecondVertexTwoByTwo) {
  const SOSCertificate cert = vertex_sos(Vertex::v2, 2, 2);
  ASSERT_EQ(cert.terms.size(), 1u);
  EXPECT_EQ(cert.terms[0].form, BilinearForm(2, 2, {1, -1, -1, 1}));
}

TEST(VertexSos, SecondVertexFourByThree) {
  const SOSCertificate cert = vertex_sos(Vertex::v2, 4, 3);
  EXPECT_EQ(cert.terms.size(), 18u);
  for (const SOSTerm& term : cert.terms) EXPECT_EQ(term.weight, R(1, 6));
  EXPECT_TRUE(tensors_equal(expand_certificate(cert), monic_to_tensor({4, 3, R(-1, 3), R(-1, 2), R(1, 6)})));
}

TEST(VertexSos, AllVerticesExpandToVertexTensors) {
  for (std::size_t m = 2; m <= 5; ++m)
    for (std::size_t n = 2; n <= 5; ++n) {
      const Tetrahedron t = tetrahedron(m, n);
      const std::array<std::size_t, 4> counts{1, binom2(m) * binom2(n), binom2(m), binom2(n)};
      for (int v = 0; v < 4; ++v) {
        const SOSCertificate cert = vertex_sos(static_cast<Vertex>(v + 1), m, n);
        EXPECT_EQ(cert.terms.size(), counts[v]);
        EXPECT_TRUE(tensors_equal(expand_certificate(cert), monic_to_tensor(at(m, n, t.vertices[v]))));
      }
    }
}

TEST(MonicSosDecompose, IdentityTwoByTwo) {
  const auto cert = monic_sos_decompose({2, 2, 0, 0, 0});
  ASSERT_TRUE(cert.has_value());
  EXPECT_LE(cert->terms.size(), 4u);
  EXPECT_TRUE(tensors_equal(expand_certificate(*cert), m_identity(2, 2)));
}

TEST(MonicSosDecompose, VertexMatchesVertexCertificate) {
  const Tetrahedron t = tetrahedron(4, 3);
  const auto cert = monic_sos_decompose(at(4, 3, t.vertices[3]));
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(tensors_equal(expand_certificate(*cert), expand_certificate(vertex_sos(Vertex::v4, 4, 3))));
  EXPECT_EQ(cert->terms.size(), vertex_sos(Vertex::v4, 4, 3).terms.size());
}

TEST(MonicSosDecompose, InteriorPoint) {
  const MonicParams p{3, 3, R(1, 2), R(1, 2), R(1, 2)};
  const auto cert = monic_sos_decompose(p);
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(tensors_equal(expand_certificate(*cert), monic_to_tensor(p)));
}

TEST(MonicSosDecompose, OutsideGivesNothing) {
  EXPECT_FALSE(monic_sos_decompose({2, 2, 2, 0, 0}).has_value());
}

TEST(MonicSosDecompose, RandomConvexCombinations) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 2 + trial % 3, n = 2 + (trial / 3) % 3;
    const Tetrahedron t = tetrahedron(m, n);
    std::array<Rational, 4> w;
    Rational total;
    for (Rational& x : w) total += x = R(std::uniform_int_distribution<long>(0, 9)(rng));
    if (total.is_zero()) continue;
    Triple point{0, 0, 0};
    for (int v = 0; v < 4; ++v)
      for (int d = 0; d < 3; ++d) point[d] += w[v] / total * t.vertices[v][d];
    const MonicParams p = at(m, n, point);
    const auto cert = monic_sos_decompose(p);
    ASSERT_TRUE(cert.has_value());
    for (const SOSTerm& term : cert->terms) EXPECT_GT(term.weight, R(0));
    EXPECT_TRUE(tensors_equal(expand_certificate(*cert), monic_to_tensor(p)));
  }
}

TEST(SymmetricSosDecompose, ZeroTensor) {
  const auto cert = symmetric_sos_decompose(symmetrize(BiquadraticTensor(2, 2)));
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(cert->terms.empty());
}

TEST(SymmetricSosDecompose, ScaledIdentity) {
  const auto unit = symmetric_sos_decompose(m_identity(2, 2));
  const auto three = symmetric_sos_decompose(scale(m_identity(2, 2), 3));
  ASSERT_TRUE(unit && three);
  ASSERT_EQ(three->terms.size(), 4u);
  for (std::size_t p = 0; p < 4; ++p) EXPECT_EQ(three->terms[p].weight, R(3) * unit->terms[p].weight);
  EXPECT_TRUE(tensors_equal(expand_certificate(*three), scale(m_identity(2, 2), 3)));
}

TEST(SymmetricSosDecompose, NegativeDiagonal) {
  EXPECT_FALSE(symmetric_sos_decompose(scale(m_identity(3, 2), -1)).has_value());
}

TEST(SymmetricSosDecompose, ZeroDiagonalNonzeroTensor) {
  BiquadraticTensor t(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l)
          if (i != k && j != l) t(i, j, k, l) = 1;
  EXPECT_FALSE(symmetric_sos_decompose(SymmetricTensor::from_symmetric(t)).has_value());
}

TEST(SymmetricSosDecompose, Preconditions) {
  BiquadraticTensor t(2, 2);
  t(0, 0, 0, 0) = 1;
  t(1, 0, 1, 0) = 2;
  EXPECT_THROW(symmetric_sos_decompose(symmetrize(t)), PreconditionError);
  EXPECT_THROW(symmetric_sos_decompose(m_identity(1, 3)), DimensionError);
}

TEST(SymmetricSosDecompose, ScalingInvariance) {
  testing::RandomRationals rng(54);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = rng.dim(2, 4), n = rng.dim(2, 4);
    const Tetrahedron t = tetrahedron(m, n);
    const MonicParams p = at(m, n, t.vertices[trial % 4]);
    const Rational d = rng.next(3, 7).abs() + R(1, 10);
    const auto cert = symmetric_sos_decompose(scale(monic_to_tensor(p), d));
    ASSERT_TRUE(cert.has_value());
    EXPECT_TRUE(tensors_equal(expand_certificate(*cert), scale(monic_to_tensor(p), d)));
    EXPECT_EQ(monic_read_back(scale(monic_to_tensor(p), d)).a, p.a * d);
  }
}

}  // namespace
}  // namespace biquad
