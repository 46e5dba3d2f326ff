#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biquad/alternating.hpp"
#include "biquad/rational.hpp"
#include "biquad/tensor.hpp"

namespace biquad {

/// I_{ijkl} = 1 iff i == k and j == l.
SymmetricTensor m_identity(std::size_t m, std::size_t n);

/// Every off-diagonal entry (not i == k and j == l) is <= 0.
bool is_z_tensor(const BiquadraticTensor& t);

struct ZSplit {
  Rational alpha;
  BiquadraticTensor b;  // alpha * I - t, entrywise >= 0
};

/// alpha = largest diagonal entry, the smallest alpha leaving B
/// nonnegative. Throws PreconditionError for non-Z tensors.
ZSplit z_split(const BiquadraticTensor& t);

struct LambdaMaxOptions {
  std::size_t restarts = 20;
  std::uint64_t seed = 0;
  AlternatingOptions alternating{};
  Exec exec = Exec::parallel;
};

struct LambdaMaxEstimate {
  double value = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  /// Best value after each restart; nondecreasing.
  std::vector<double> best_so_far;
};

/// Lower bound on the largest M-eigenvalue of a nonnegative symmetric
/// tensor: best alternating ascent over random restarts. Throws
/// PreconditionError if B has a negative entry.
LambdaMaxEstimate lambda_max_estimate(const SymmetricTensor& b, const LambdaMaxOptions& options = {});

/// Row quantity S_ij = 1/2 sum_{i2} (sum_{j2} a_{ij i2 j2} + sum_{j1} a_{i j1 i2 j}).
Rational row_mean_sum(const BiquadraticTensor& t, std::size_t i, std::size_t j);

/// S_ij >= 0 and S_ij / (mn) >= every off-diagonal entry a_{ij i2 j2},
/// a_{i j1 i2 j} (the diagonal position excluded in both).
bool is_b0_tensor(const BiquadraticTensor& t);

enum class Verdict { yes, no, unknown };
std::string to_string(Verdict v);

struct MTensorReport {
  Rational alpha;
  double lambda_max_estimate = 0.0;
  Verdict verdict = Verdict::unknown;
};

struct ClassReport {
  bool is_z = false;
  bool is_b0 = false;
  bool is_dd = false;
  /// Absent when the tensor is not a Z-tensor (no alpha*I - B split).
  std::optional<MTensorReport> m_tensor;
};

inline constexpr double kMTensorMargin = 1e-6;

/// yes: alpha >= estimate + margin. no: the ascent witness exceeds alpha by
/// more than the margin. unknown otherwise.
ClassReport classify(const SymmetricTensor& t, const LambdaMaxOptions& options = {});

enum class TensorClass { dd, z, m, b0 };
/// Accepts "dd", "z", "m", "m_tensor", "b0". Throws ParseError.
TensorClass parse_tensor_class(const std::string& name);
std::string to_string(TensorClass c);

/// Random member of the class with small-denominator rational entries,
/// rejection-checked against the class predicate. Deterministic per seed.
///   dd: off-diagonals in [-1, 1], diagonals r_ij + slack
///   z:  off-diagonals in [-1, 0], diagonals in [0, 2]
///   m:  alpha I - B with B >= 0 in [0, 1] and alpha >= lambda_max(B) + 1/10
///   b0: off-diagonals in [-1/2, 1], diagonals raised to meet (B1), (B2)
SymmetricTensor generate(TensorClass cls, std::size_t m, std::size_t n, std::uint64_t seed);

}  // namespace biquad
