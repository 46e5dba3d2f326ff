#include "biquad/classes.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "biquad/dominance.hpp"
#include "biquad/errors.hpp"

namespace biquad {

namespace {

bool is_diagonal(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  return i == k && j == l;
}

// Calls fn(i,j,k,l) once per symmetry orbit, on its lexicographically
// smallest member.
template <typename Fn>
void for_each_orbit(std::size_t m, std::size_t n, Fn fn) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const std::array<std::size_t, 4> self{i, j, k, l};
          bool smallest = true;
          for (const auto& member : orbit(i, j, k, l))
            if (member < self) smallest = false;
          if (smallest) fn(i, j, k, l);
        }
}

void assign_orbit(BiquadraticTensor& t, std::size_t i, std::size_t j, std::size_t k,
                  std::size_t l, const Rational& v) {
  for (const auto& [a, b, c, d] : orbit(i, j, k, l)) t(a, b, c, d) = v;
}

class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform-ish rational in [lo, hi] with denominator in [1, 10].
  Rational uniform(long lo, long hi) {
    const long den = std::uniform_int_distribution<long>(1, 10)(rng_);
    const long num = std::uniform_int_distribution<long>(lo * den, hi * den)(rng_);
    return Rational(num, den);
  }
  Rational uniform_half(long lo2, long hi2) { return uniform(lo2, hi2) * Rational(1, 2); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::uint64_t next() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

// Off-diagonal orbits drawn by `draw`, diagonal zero.
template <typename Draw>
BiquadraticTensor random_off_diagonal(std::size_t m, std::size_t n, Draw draw) {
  BiquadraticTensor t(m, n);
  for_each_orbit(m, n, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    if (!is_diagonal(i, j, k, l)) assign_orbit(t, i, j, k, l, draw());
  });
  return t;
}

SymmetricTensor generate_dd(std::size_t m, std::size_t n, RationalSampler& rs) {
  BiquadraticTensor t = random_off_diagonal(m, n, [&] {
    return rs.chance(0.3) ? Rational(0) : rs.uniform(-1, 1);
  });
  const SymmetricTensor bare = SymmetricTensor::from_symmetric(t);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t(i, j, i, j) = row_bound(bare, i, j) + (rs.chance(0.2) ? Rational(0) : rs.uniform(0, 1));
  return SymmetricTensor::from_symmetric(std::move(t));
}

SymmetricTensor generate_z(std::size_t m, std::size_t n, RationalSampler& rs) {
  BiquadraticTensor t = random_off_diagonal(m, n, [&] {
    return rs.chance(0.3) ? Rational(0) : rs.uniform(-1, 0);
  });
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j, i, j) = rs.uniform(0, 2);
  return SymmetricTensor::from_symmetric(std::move(t));
}

SymmetricTensor generate_m(std::size_t m, std::size_t n, RationalSampler& rs) {
  BiquadraticTensor b(m, n);
  for_each_orbit(m, n, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    assign_orbit(b, i, j, k, l, rs.chance(0.3) ? Rational(0) : rs.uniform(0, 1));
  });
  LambdaMaxOptions opts;
  opts.seed = rs.next();
  opts.exec = Exec::serial;
  const double lambda = lambda_max_estimate(SymmetricTensor::from_symmetric(b), opts).value;
  const Rational alpha(static_cast<long>(std::ceil((lambda + 0.1) * 1000.0)), 1000);
  for (Rational& v : b.entries()) v = -v;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j, i, j) += alpha;
  return SymmetricTensor::from_symmetric(std::move(b));
}

SymmetricTensor generate_b0(std::size_t m, std::size_t n, RationalSampler& rs) {
  BiquadraticTensor t = random_off_diagonal(m, n, [&] {
    return rs.chance(0.3) ? Rational(0) : rs.uniform_half(-1, 2);
  });
  const std::size_t pairs = t.pairs();
  const Rational mn(static_cast<long>(pairs));
  auto a = t.entries();
  for (std::size_t p = 0; p < pairs; ++p) {
    Rational sum;
    std::optional<Rational> largest;
    for (std::size_t q = 0; q < pairs; ++q) {
      if (q == p) continue;
      sum += a[p * pairs + q];
      if (!largest || a[p * pairs + q] > *largest) largest = a[p * pairs + q];
    }
    Rational target = largest ? std::max(Rational(0), mn * *largest) : Rational(0);
    a[p * pairs + p] = target - sum + (rs.chance(0.2) ? Rational(0) : rs.uniform_half(0, 1));
  }
  return SymmetricTensor::from_symmetric(std::move(t));
}

bool member(TensorClass cls, const SymmetricTensor& t) {
  switch (cls) {
    case TensorClass::dd:
      return is_diagonally_dominated(t);
    case TensorClass::z:
    case TensorClass::m:
      return is_z_tensor(t);
    case TensorClass::b0:
      return is_b0_tensor(t);
  }
  return false;
}

}  // namespace

SymmetricTensor m_identity(std::size_t m, std::size_t n) {
  BiquadraticTensor t(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j, i, j) = 1;
  return SymmetricTensor::from_symmetric(std::move(t));
}

bool is_z_tensor(const BiquadraticTensor& t) {
  for (std::size_t i = 0; i < t.m(); ++i)
    for (std::size_t j = 0; j < t.n(); ++j)
      for (std::size_t k = 0; k < t.m(); ++k)
        for (std::size_t l = 0; l < t.n(); ++l)
          if (!is_diagonal(i, j, k, l) && t(i, j, k, l).sign() > 0) return false;
  return true;
}

ZSplit z_split(const BiquadraticTensor& t) {
  if (!is_z_tensor(t)) throw PreconditionError("z_split: tensor has a positive off-diagonal entry");
  Rational alpha = t(0, 0, 0, 0);
  for (std::size_t i = 0; i < t.m(); ++i)
    for (std::size_t j = 0; j < t.n(); ++j) alpha = std::max(alpha, t(i, j, i, j));
  BiquadraticTensor b = t;
  for (Rational& v : b.entries()) v = -v;
  for (std::size_t i = 0; i < t.m(); ++i)
    for (std::size_t j = 0; j < t.n(); ++j) b(i, j, i, j) += alpha;
  return {alpha, std::move(b)};
}

LambdaMaxEstimate lambda_max_estimate(const SymmetricTensor& b, const LambdaMaxOptions& options) {
  for (const Rational& v : b.tensor().entries())
    if (v.sign() < 0) throw PreconditionError("lambda_max_estimate: tensor has a negative entry");
  const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
  const FloatTensor f = to_float(b);
  std::vector<ExtremumPoint> runs(restarts);
  const auto count = static_cast<std::int64_t>(restarts);
#pragma omp parallel for schedule(dynamic) if (options.exec == Exec::parallel)
  for (std::int64_t r = 0; r < count; ++r) {
    auto [x, y] = random_unit_pair(f.m, f.n, options.seed, static_cast<std::uint64_t>(r));
    runs[static_cast<std::size_t>(r)] =
        alternating_refine(f, Sense::maximize, x, y, options.alternating);
  }
  LambdaMaxEstimate est;
  std::size_t best = 0;
  for (std::size_t r = 0; r < restarts; ++r) {
    if (runs[r].value > runs[best].value) best = r;
    est.best_so_far.push_back(runs[best].value);
  }
  est.value = runs[best].value;
  est.x = runs[best].x;
  est.y = runs[best].y;
  return est;
}

Rational row_mean_sum(const BiquadraticTensor& t, std::size_t i, std::size_t j) {
  Rational sum;
  for (std::size_t i2 = 0; i2 < t.m(); ++i2) {
    for (std::size_t j2 = 0; j2 < t.n(); ++j2) sum += t(i, j, i2, j2);
    for (std::size_t j1 = 0; j1 < t.n(); ++j1) sum += t(i, j1, i2, j);
  }
  return sum * Rational(1, 2);
}

bool is_b0_tensor(const BiquadraticTensor& t) {
  const Rational mn(static_cast<long>(t.pairs()));
  for (std::size_t i = 0; i < t.m(); ++i)
    for (std::size_t j = 0; j < t.n(); ++j) {
      const Rational s = row_mean_sum(t, i, j);
      if (s.sign() < 0) return false;
      const Rational mean = s / mn;
      for (std::size_t i2 = 0; i2 < t.m(); ++i2)
        for (std::size_t jj = 0; jj < t.n(); ++jj) {
          // jj plays j2 in a_{ij i2 j2} and j1 in a_{i j1 i2 j}.
          if ((i2 != i || jj != j) && t(i, j, i2, jj) > mean) return false;
          if ((i2 != i || jj != j) && t(i, jj, i2, j) > mean) return false;
        }
    }
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::unknown:
      return "unknown";
  }
  return "unknown";
}

ClassReport classify(const SymmetricTensor& t, const LambdaMaxOptions& options) {
  ClassReport report;
  report.is_z = is_z_tensor(t);
  report.is_b0 = is_b0_tensor(t);
  report.is_dd = is_diagonally_dominated(t);
  if (report.is_z) {
    ZSplit split = z_split(t);
    const double lambda =
        lambda_max_estimate(SymmetricTensor::from_symmetric(std::move(split.b)), options).value;
    const double alpha = split.alpha.to_double();
    MTensorReport m{split.alpha, lambda, Verdict::unknown};
    if (alpha >= lambda + kMTensorMargin)
      m.verdict = Verdict::yes;
    else if (lambda > alpha + kMTensorMargin)
      m.verdict = Verdict::no;
    report.m_tensor = m;
  }
  return report;
}

TensorClass parse_tensor_class(const std::string& name) {
  if (name == "dd") return TensorClass::dd;
  if (name == "z") return TensorClass::z;
  if (name == "m" || name == "m_tensor") return TensorClass::m;
  if (name == "b0") return TensorClass::b0;
  throw ParseError("unknown tensor class '" + name + "' (expected dd, z, m, m_tensor or b0)");
}

std::string to_string(TensorClass c) {
  switch (c) {
    case TensorClass::dd:
      return "dd";
    case TensorClass::z:
      return "z";
    case TensorClass::m:
      return "m_tensor";
    case TensorClass::b0:
      return "b0";
  }
  return "dd";
}

SymmetricTensor generate(TensorClass cls, std::size_t m, std::size_t n, std::uint64_t seed) {
  RationalSampler rs(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    SymmetricTensor t = [&] {
      switch (cls) {
        case TensorClass::dd:
          return generate_dd(m, n, rs);
        case TensorClass::z:
          return generate_z(m, n, rs);
        case TensorClass::m:
          return generate_m(m, n, rs);
        case TensorClass::b0:
          return generate_b0(m, n, rs);
      }
      return generate_dd(m, n, rs);
    }();
    if (member(cls, t)) return t;
  }
  throw NumericalError("generate: no class member after 100 attempts");
}

}  // namespace biquad
