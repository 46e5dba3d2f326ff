#include "biquad/dominance.hpp"

#include <string>

#include "biquad/errors.hpp"

namespace biquad {

FlatMatrix::FlatMatrix(std::size_t m, std::size_t n) : m_(m), n_(n), e_(m * n * m * n) {}

FlatMatrix::FlatMatrix(std::size_t m, std::size_t n, std::vector<Rational> entries)
    : m_(m), n_(n), e_(std::move(entries)) {
  if (e_.size() != size() * size()) throw DimensionError("flat matrix entry count mismatch");
}

bool FlatMatrix::is_symmetric() const {
  for (std::size_t p = 0; p < size(); ++p)
    for (std::size_t q = p + 1; q < size(); ++q)
      if ((*this)(p, q) != (*this)(q, p)) return false;
  return true;
}

bool FlatMatrix::has_pair_exchange_symmetry() const {
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < m_; ++k)
        for (std::size_t l = 0; l < n_; ++l)
          if ((*this)(i * n_ + j, k * n_ + l) != (*this)(i * n_ + l, k * n_ + j)) return false;
  return true;
}

FlatMatrix flatten(const SymmetricTensor& t) {
  const auto a = t.tensor().entries();
  return FlatMatrix(t.m(), t.n(), std::vector<Rational>(a.begin(), a.end()));
}

Rational row_bound(const SymmetricTensor& t, std::size_t i, std::size_t j) {
  if (i >= t.m() || j >= t.n())
    throw DimensionError("row_bound: index (" + std::to_string(i) + "," + std::to_string(j) +
                         ") out of range");
  Rational sum;
  for (std::size_t i2 = 0; i2 < t.m(); ++i2) {
    for (std::size_t j2 = 0; j2 < t.n(); ++j2)
      if (i2 != i || j2 != j) sum += t(i, j, i2, j2).abs();
    for (std::size_t j1 = 0; j1 < t.n(); ++j1)
      if (i2 != i || j1 != j) sum += t(i, j1, i2, j).abs();
  }
  return sum * Rational(1, 2);
}

std::vector<DominanceViolation> dominance_violations(const SymmetricTensor& t) {
  std::vector<DominanceViolation> out;
  for (std::size_t i = 0; i < t.m(); ++i)
    for (std::size_t j = 0; j < t.n(); ++j) {
      Rational bound = row_bound(t, i, j);
      if (t(i, j, i, j) < bound) out.push_back({i, j, t(i, j, i, j), std::move(bound)});
    }
  return out;
}

bool is_diagonally_dominated(const SymmetricTensor& t) { return dominance_violations(t).empty(); }

DDCertificateRaw dd_matrix_decompose(const FlatMatrix& matrix) {
  if (!matrix.is_symmetric()) throw PreconditionError("dd_matrix_decompose: matrix not symmetric");
  const std::size_t size = matrix.size();
  DDCertificateRaw raw;
  raw.alphas.resize(size);
  for (std::size_t p = 0; p < size; ++p) {
    Rational off;
    for (std::size_t q = 0; q < size; ++q)
      if (q != p) off += matrix(p, q).abs();
    raw.alphas[p] = matrix(p, p) - off;
    if (raw.alphas[p].sign() < 0)
      throw NotDiagonallyDominantError(
          p, "row " + std::to_string(p + 1) + " is not diagonally dominant: diagonal " +
                 matrix(p, p).str() + " < off-diagonal sum " + off.str());
  }
  for (std::size_t p = 0; p < size; ++p)
    for (std::size_t q = p + 1; q < size; ++q) {
      const Rational& v = matrix(p, q);
      if (!v.is_zero()) raw.pairs.push_back({p, q, v.abs(), v.sign()});
    }
  return raw;
}

FlatMatrix reconstruct(const DDCertificateRaw& raw, std::size_t m, std::size_t n) {
  FlatMatrix out(m, n);
  if (raw.alphas.size() != out.size()) throw DimensionError("reconstruct: alpha count mismatch");
  for (std::size_t p = 0; p < out.size(); ++p) out(p, p) += raw.alphas[p];
  for (const auto& pr : raw.pairs) {
    out(pr.p, pr.p) += pr.beta;
    out(pr.q, pr.q) += pr.beta;
    const Rational cross = pr.sign > 0 ? pr.beta : -pr.beta;
    out(pr.p, pr.q) += cross;
    out(pr.q, pr.p) += cross;
  }
  return out;
}

SOSCertificate dd_sos_decompose(const SymmetricTensor& t) {
  const auto violations = dominance_violations(t);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw NotDiagonallyDominantError(
        v.i * t.n() + v.j, "tensor is not diagonally dominated at (i,j)=(" +
                               std::to_string(v.i + 1) + "," + std::to_string(v.j + 1) +
                               "): a_ijij = " + v.diagonal.str() + " < r_ij = " + v.bound.str());
  }
  const DDCertificateRaw raw = dd_matrix_decompose(flatten(t));
  SOSCertificate cert{t.m(), t.n(), {}};
  const std::size_t pairs = t.pairs();
  for (std::size_t p = 0; p < pairs; ++p) {
    if (raw.alphas[p].is_zero()) continue;
    std::vector<Rational> w(pairs);
    w[p] = 1;
    cert.terms.push_back({raw.alphas[p], BilinearForm(t.m(), t.n(), std::move(w))});
  }
  for (const auto& pr : raw.pairs) {
    std::vector<Rational> w(pairs);
    w[pr.p] = 1;
    w[pr.q] = pr.sign;
    cert.terms.push_back({pr.beta, BilinearForm(t.m(), t.n(), std::move(w))});
  }
  return cert;
}

}  // namespace biquad
