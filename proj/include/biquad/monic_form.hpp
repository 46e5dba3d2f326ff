#pragma once

#include <cstddef>

#include "biquad/rational.hpp"
#include "biquad/tensor.hpp"

namespace biquad {

/// Parameters of a monic symmetric biquadratic form
///   sum x_i^2 y_j^2 + a sum_{i!=k} x_i x_k y_j^2 + b sum_{j!=l} x_i^2 y_j y_l
///   + c sum_{i!=k, j!=l} x_i y_j x_k y_l.
struct MonicParams {
  std::size_t m = 2;
  std::size_t n = 2;
  Rational a;
  Rational b;
  Rational c;

  /// Throws DimensionError unless m, n >= 2.
  void validate() const;

  friend bool operator==(const MonicParams&, const MonicParams&) = default;
};

/// Unit diagonal, a at (i,j,k,j), b at (i,j,i,l), c at (i,j,k,l) with
/// i != k and j != l.
SymmetricTensor monic_to_tensor(const MonicParams& p);

/// Reads (a, b, c) back from a_{1121}, a_{1112}, a_{1122} (1-based).
/// Requires m, n >= 2; does not check that `t` is actually monic.
MonicParams monic_read_back(const SymmetricTensor& t);

}  // namespace biquad
