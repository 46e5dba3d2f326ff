#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>

#include "biquad/tensor.hpp"

namespace biquad {

/// Selects the OpenMP kernel or a single-threaded run of the same kernel.
enum class Exec { serial, parallel };

/// Double-precision copy of a tensor's flattening, for numerical probes.
struct FloatTensor {
  std::size_t m = 0;
  std::size_t n = 0;
  Eigen::MatrixXd flat;  // (mn) x (mn), entry (i*n+j, k*n+l) = a_ijkl

  double evaluate(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// Symmetric m x m matrix sum_{j,l} a_ijkl y_j y_l.
  Eigen::MatrixXd contract_y(const Eigen::VectorXd& y) const;
  /// Symmetric n x n matrix sum_{i,k} a_ijkl x_i x_k.
  Eigen::MatrixXd contract_x(const Eigen::VectorXd& x) const;
};

FloatTensor to_float(const BiquadraticTensor& t);

enum class Sense { minimize, maximize };

struct AlternatingOptions {
  std::size_t max_iterations = 500;
  double tolerance = 1e-12;
};

struct ExtremumPoint {
  double value = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  std::size_t iterations = 0;
};

/// Block-coordinate descent (or ascent) on the unit spheres: with y fixed
/// x becomes the extreme eigenvector of contract_y(y), then the roles swap.
/// The objective is monotone in the chosen sense; stops when successive
/// values differ by less than the tolerance.
ExtremumPoint alternating_refine(const FloatTensor& t, Sense sense, Eigen::VectorXd x,
                                 Eigen::VectorXd y, const AlternatingOptions& options = {});

/// Uniform random pair on S^{m-1} x S^{n-1}, a pure function of (seed, trial).
std::pair<Eigen::VectorXd, Eigen::VectorXd> random_unit_pair(std::size_t m, std::size_t n,
                                                             std::uint64_t seed,
                                                             std::uint64_t trial);

struct SampleMinResult {
  double value = 0.0;
  FloatVector x;
  FloatVector y;
  std::size_t best_trial = 0;
};

/// Minimum of the form over `trials` refined random unit pairs.
/// Deterministic for a fixed seed and identical under both Exec modes;
/// ties resolve to the lowest trial index. Throws PreconditionError when
/// trials == 0.
SampleMinResult sample_min(const BiquadraticTensor& t, std::size_t trials, std::uint64_t seed,
                           Exec exec = Exec::parallel);

}  // namespace biquad
