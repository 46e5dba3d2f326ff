#pragma once

#include <cstddef>
#include <vector>

#include "biquad/certificate.hpp"
#include "biquad/rational.hpp"
#include "biquad/tensor.hpp"

namespace biquad {

/// The mn x mn matrix M_{(i,j),(k,l)} = a_{ijkl}, rows and columns indexed
/// by the flat pair p = i*n + j (0-based).
class FlatMatrix {
 public:
  FlatMatrix(std::size_t m, std::size_t n);
  FlatMatrix(std::size_t m, std::size_t n, std::vector<Rational> entries);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t size() const { return m_ * n_; }
  const Rational& operator()(std::size_t p, std::size_t q) const { return e_[p * size() + q]; }
  Rational& operator()(std::size_t p, std::size_t q) { return e_[p * size() + q]; }

  bool is_symmetric() const;
  /// M_{(i,j),(k,l)} = M_{(i,l),(k,j)} for all index pairs.
  bool has_pair_exchange_symmetry() const;

  friend bool operator==(const FlatMatrix&, const FlatMatrix&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Rational> e_;
};

FlatMatrix flatten(const SymmetricTensor& t);

/// r_ij: half the sum of |a_{ij i2 j2}| over (i2,j2) plus |a_{i j1 i2 j}|
/// over (i2,j1), with the diagonal position a_{ijij} left out of both sums.
/// Indices are 0-based; throws DimensionError when out of range.
Rational row_bound(const SymmetricTensor& t, std::size_t i, std::size_t j);

struct DominanceViolation {
  std::size_t i;
  std::size_t j;
  Rational diagonal;
  Rational bound;
};

/// Every (i,j) with a_{ijij} < r_ij, in row-major order.
std::vector<DominanceViolation> dominance_violations(const SymmetricTensor& t);

/// a_{ijij} >= r_ij for every (i,j).
bool is_diagonally_dominated(const SymmetricTensor& t);

/// M = sum_p alpha_p e_p e_p^T + sum_{p<q} beta_pq (e_p + s_pq e_q)(e_p + s_pq e_q)^T.
struct DDCertificateRaw {
  struct Pair {
    std::size_t p;
    std::size_t q;
    Rational beta;
    int sign;  // +1 or -1
  };
  std::vector<Rational> alphas;
  std::vector<Pair> pairs;
};

/// Requires M symmetric with M_pp >= sum_{q != p} |M_pq|; otherwise throws
/// NotDiagonallyDominantError naming the first failing row. Pairs are
/// emitted for nonzero off-diagonals only, in lexicographic (p, q) order.
DDCertificateRaw dd_matrix_decompose(const FlatMatrix& matrix);

/// Rebuilds the matrix described by a raw certificate.
FlatMatrix reconstruct(const DDCertificateRaw& raw, std::size_t m, std::size_t n);

/// SOS certificate of a diagonally dominated symmetric tensor: alpha terms
/// become (x_i y_j)^2, pair terms (x_i y_j +/- x_k y_l)^2. Zero alphas are
/// dropped. Throws NotDiagonallyDominantError.
SOSCertificate dd_sos_decompose(const SymmetricTensor& t);

}  // namespace biquad
