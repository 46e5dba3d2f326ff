#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "biquad/rational.hpp"
#include "biquad/tensor.hpp"

namespace biquad {

/// f(x, y) = sum_{i,j} W_ij x_i y_j with W stored row-major (m x n).
class BilinearForm {
 public:
  BilinearForm(std::size_t m, std::size_t n);
  BilinearForm(std::size_t m, std::size_t n, std::vector<Rational> coefficients);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return w_[i * n_ + j]; }
  /// Coefficients indexed by the flat pair p = i*n + j.
  std::span<const Rational> coefficients() const { return w_; }

  bool is_zero() const;
  Rational evaluate(std::span<const Rational> x, std::span<const Rational> y) const;

  friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Rational> w_;
};

struct SOSTerm {
  Rational weight;
  BilinearForm form;
};

/// P(x, y) = sum_p weight_p * f_p(x, y)^2.
struct SOSCertificate {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<SOSTerm> terms;

  /// Number of terms with nonzero weight and nonzero form.
  std::size_t rank_bound() const;
};

/// Throws DimensionError if a form has the wrong shape and
/// PreconditionError if a weight is negative.
void validate(const SOSCertificate& cert);

/// Symmetrization of sum_p c_p W_p[i,j] W_p[k,l]. Validates first.
SymmetricTensor expand_certificate(const SOSCertificate& cert);

/// Combines terms whose forms are rational multiples of each other
/// (c1 f^2 + c2 (t f)^2 = (c1 + c2 t^2) f^2) and drops zero terms. The
/// expansion is unchanged; order follows first occurrence.
SOSCertificate merge_proportional(const SOSCertificate& cert);

/// Multiplies every weight by `factor` (>= 0).
SOSCertificate scale_weights(SOSCertificate cert, const Rational& factor);

}  // namespace biquad
