#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "biquad/rational.hpp"

namespace biquad {

using ExactVector = std::vector<Rational>;
using FloatVector = std::vector<double>;

/// Dense m x n biquadratic tensor a_{ijkl}, i,k in [0,m), j,l in [0,n).
///
/// Storage is row-major over the flat pair index p = i*n + j, so entry
/// (i,j,k,l) lives at p*(m*n) + q with q = k*n + l. This makes the tensor
/// bit-for-bit its own mn x mn flattening.
class BiquadraticTensor {
 public:
  /// Zero tensor. Throws DimensionError unless m, n >= 1.
  BiquadraticTensor(std::size_t m, std::size_t n);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t pairs() const { return m_ * n_; }

  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return entries_[index(i, j, k, l)];
  }
  Rational& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return entries_[index(i, j, k, l)];
  }

  /// Bounds-checked access; throws DimensionError.
  const Rational& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const;

  std::span<const Rational> entries() const { return entries_; }
  std::span<Rational> entries() { return entries_; }

  /// a_{ijkl} = a_{kjil} = a_{ilkj} = a_{klij} for every index.
  bool is_symmetric() const;

  friend bool operator==(const BiquadraticTensor&, const BiquadraticTensor&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return ((i * n_ + j) * m_ + k) * n_ + l;
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<Rational> entries_;
};

/// A biquadratic tensor known to satisfy the index symmetries. Instances
/// only come from symmetrize() or the checked from_symmetric() factory.
class SymmetricTensor {
 public:
  /// Throws PreconditionError if `t` is not symmetric.
  static SymmetricTensor from_symmetric(BiquadraticTensor t);

  std::size_t m() const { return t_.m(); }
  std::size_t n() const { return t_.n(); }
  std::size_t pairs() const { return t_.pairs(); }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return t_(i, j, k, l);
  }
  const BiquadraticTensor& tensor() const { return t_; }
  operator const BiquadraticTensor&() const { return t_; }  // NOLINT(implicit)

 private:
  explicit SymmetricTensor(BiquadraticTensor t) : t_(std::move(t)) {}
  friend SymmetricTensor symmetrize(const BiquadraticTensor& t);
  friend SymmetricTensor scale(const SymmetricTensor& t, const Rational& factor);

  BiquadraticTensor t_;
};

/// The (up to four) index tuples sharing a coefficient of the form:
/// (i,j,k,l), (k,j,i,l), (i,l,k,j), (k,l,i,j).
std::array<std::array<std::size_t, 4>, 4> orbit(std::size_t i, std::size_t j, std::size_t k,
                                                std::size_t l);

/// Orbit average; the unique symmetric tensor with the same form.
SymmetricTensor symmetrize(const BiquadraticTensor& t);

SymmetricTensor scale(const SymmetricTensor& t, const Rational& factor);

/// Sum over i,k,j,l of a_{ijkl} x_i y_j x_k y_l. Throws DimensionError.
Rational evaluate(const BiquadraticTensor& t, std::span<const Rational> x,
                  std::span<const Rational> y);
double evaluate(const BiquadraticTensor& t, std::span<const double> x, std::span<const double> y);

/// Exact entrywise equality. Throws DimensionError on shape mismatch.
bool tensors_equal(const SymmetricTensor& s, const SymmetricTensor& t);

/// Invariance of the form under every permutation of the x (resp. y)
/// variables, checked on adjacent transpositions.
bool is_x_symmetric(const SymmetricTensor& t);
bool is_y_symmetric(const SymmetricTensor& t);

}  // namespace biquad
