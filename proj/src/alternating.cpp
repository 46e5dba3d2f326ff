#include "biquad/alternating.hpp"

#include <omp.h>

#include <cmath>
#include <random>

#include "biquad/errors.hpp"

namespace biquad {

namespace {

Eigen::VectorXd extreme_eigenvector(const Eigen::MatrixXd& a, Sense sense) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensolver failed in alternating iteration");
  // Eigenvalues are sorted ascending.
  const Eigen::Index col = sense == Sense::minimize ? 0 : a.rows() - 1;
  return solver.eigenvectors().col(col);
}

bool improves(Sense sense, double candidate, double best) {
  return sense == Sense::minimize ? candidate < best : candidate > best;
}

FloatVector to_std(const Eigen::VectorXd& v) { return FloatVector(v.data(), v.data() + v.size()); }

}  // namespace

FloatTensor to_float(const BiquadraticTensor& t) {
  FloatTensor f{t.m(), t.n(), Eigen::MatrixXd(t.pairs(), t.pairs())};
  const auto a = t.entries();
  for (std::size_t p = 0; p < t.pairs(); ++p)
    for (std::size_t q = 0; q < t.pairs(); ++q) f.flat(p, q) = a[p * t.pairs() + q].to_double();
  return f;
}

double FloatTensor::evaluate(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd z(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i * n + j) = x(i) * y(j);
  return z.dot(flat * z);
}

Eigen::MatrixXd FloatTensor::contract_y(const Eigen::VectorXd& y) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) s += flat(i * n + j, k * n + l) * y(j) * y(l);
      out(i, k) = s;
    }
  return 0.5 * (out + out.transpose());
}

Eigen::MatrixXd FloatTensor::contract_x(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) s += flat(i * n + j, k * n + l) * x(i) * x(k);
      out(j, l) = s;
    }
  return 0.5 * (out + out.transpose());
}

ExtremumPoint alternating_refine(const FloatTensor& t, Sense sense, Eigen::VectorXd x,
                                 Eigen::VectorXd y, const AlternatingOptions& options) {
  x.normalize();
  y.normalize();
  ExtremumPoint best{t.evaluate(x, y), x, y, 0};
  double previous = best.value;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    x = extreme_eigenvector(t.contract_y(y), sense);
    y = extreme_eigenvector(t.contract_x(x), sense);
    const double value = t.evaluate(x, y);
    best.iterations = it;
    // Exact eigenvectors never move the wrong way; rounding can, so keep
    // the best point seen.
    if (improves(sense, value, best.value)) {
      best.value = value;
      best.x = x;
      best.y = y;
    }
    if (std::abs(value - previous) < options.tolerance) break;
    previous = value;
  }
  return best;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> random_unit_pair(std::size_t m, std::size_t n,
                                                             std::uint64_t seed,
                                                             std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd x(m);
  Eigen::VectorXd y(n);
  do {
    for (std::size_t i = 0; i < m; ++i) x(i) = normal(rng);
  } while (x.norm() == 0.0);
  do {
    for (std::size_t j = 0; j < n; ++j) y(j) = normal(rng);
  } while (y.norm() == 0.0);
  return {x.normalized(), y.normalized()};
}

SampleMinResult sample_min(const BiquadraticTensor& t, std::size_t trials, std::uint64_t seed,
                           Exec exec) {
  if (trials == 0) throw PreconditionError("sample_min needs trials >= 1");
  const FloatTensor f = to_float(t);
  std::vector<ExtremumPoint> found(trials);
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (std::int64_t trial = 0; trial < count; ++trial) {
    auto [x, y] = random_unit_pair(f.m, f.n, seed, static_cast<std::uint64_t>(trial));
    found[static_cast<std::size_t>(trial)] = alternating_refine(f, Sense::minimize, x, y);
  }
  std::size_t best = 0;
  for (std::size_t trial = 1; trial < trials; ++trial)
    if (found[trial].value < found[best].value) best = trial;
  return {found[best].value, to_std(found[best].x), to_std(found[best].y), best};
}

}  // namespace biquad
