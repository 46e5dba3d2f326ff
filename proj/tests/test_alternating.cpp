#include <gtest/gtest.h>

#include "biquad/alternating.hpp"
#include "biquad/classes.hpp"
#include "biquad/errors.hpp"
#include "biquad/monic_form.hpp"
#include "biquad/reference.hpp"
#include "oracles.hpp"

namespace biquad {
namespace {

TEST(FloatTensor, EvaluateMatchesExact) {
  testing::RandomRationals rng(31);
  const SymmetricTensor t = symmetrize(rng.tensor(3, 4));
  const FloatTensor f = to_float(t);
  const auto [x, y] = random_unit_pair(3, 4, 5, 0);
  const FloatVector fx(x.data(), x.data() + x.size()), fy(y.data(), y.data() + y.size());
  EXPECT_NEAR(f.evaluate(x, y), evaluate(t, fx, fy), 1e-12);
  EXPECT_NEAR(x.dot(f.contract_y(y) * x), f.evaluate(x, y), 1e-12);
  EXPECT_NEAR(y.dot(f.contract_x(x) * y), f.evaluate(x, y), 1e-12);
}

TEST(RandomUnitPair, UnitNormAndDeterministic) {
  const auto [x, y] = random_unit_pair(4, 2, 99, 7);
  EXPECT_NEAR(x.norm(), 1.0, 1e-14);
  EXPECT_NEAR(y.norm(), 1.0, 1e-14);
  const auto [x2, y2] = random_unit_pair(4, 2, 99, 7);
  EXPECT_EQ(x, x2);
  EXPECT_EQ(y, y2);
  EXPECT_NE(random_unit_pair(4, 2, 99, 8).first, x);
}

TEST(AlternatingRefine, MonotoneAndNoWorseThanStart) {
  testing::RandomRationals rng(32);
  const FloatTensor f = to_float(symmetrize(rng.tensor(3, 3)));
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const auto [x, y] = random_unit_pair(3, 3, 1, trial);
    const double start = f.evaluate(x, y);
    const ExtremumPoint lo = alternating_refine(f, Sense::minimize, x, y);
    const ExtremumPoint hi = alternating_refine(f, Sense::maximize, x, y);
    EXPECT_LE(lo.value, start + 1e-12);
    EXPECT_GE(hi.value, start - 1e-12);
    EXPECT_NEAR(f.evaluate(lo.x, lo.y), lo.value, 1e-12);
    EXPECT_NEAR(lo.x.norm(), 1.0, 1e-12);
  }
}

TEST(SampleMin, Identity) {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n)
      EXPECT_GE(sample_min(m_identity(m, n), 100, 1).value, 1.0 - 1e-9);
}

TEST(SampleMin, IndefiniteMonic) {
  // Smallest closed-form eigenvalue 1 + a + b + c = -2.
  const SampleMinResult r = sample_min(monic_to_tensor({2, 2, -1, -1, -1}), 100, 2);
  EXPECT_LT(r.value, 0.0);
  EXPECT_NEAR(r.value, -2.0, 1e-9);
}

TEST(SampleMin, ZeroTensor) {
  EXPECT_EQ(sample_min(BiquadraticTensor(2, 3), 10, 3).value, 0.0);
}

TEST(SampleMin, RejectsZeroTrials) {
  EXPECT_THROW(sample_min(m_identity(2, 2), 0, 1), PreconditionError);
}

TEST(SampleMin, DeterministicAndExecIndependent) {
  testing::RandomRationals rng(33);
  for (int trial = 0; trial < 5; ++trial) {
    const SymmetricTensor t = symmetrize(rng.tensor(3, 3));
    const SampleMinResult par = sample_min(t, 64, 17, Exec::parallel);
    const SampleMinResult ser = sample_min(t, 64, 17, Exec::serial);
    const SampleMinResult ref = reference::sample_min(t, 64, 17);
    EXPECT_EQ(par.value, ser.value);
    EXPECT_EQ(par.value, ref.value);
    EXPECT_EQ(par.best_trial, ref.best_trial);
    EXPECT_EQ(par.x, ref.x);
    EXPECT_EQ(par.y, ref.y);
  }
}

TEST(SampleMin, NeverBelowAGoodWitness) {
  testing::RandomRationals rng(34);
  const SymmetricTensor t = symmetrize(rng.tensor(2, 3));
  const SampleMinResult r = sample_min(t, 50, 4);
  EXPECT_NEAR(evaluate(t, r.x, r.y), r.value, 1e-12);
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const auto [x, y] = random_unit_pair(2, 3, 999, trial);
    EXPECT_LE(r.value, to_float(t).evaluate(x, y) + 1e-12);
  }
}

}  // namespace
}  // namespace biquad
