#include "biquad/certificate.hpp"

#include <map>
#include <string>

#include "biquad/errors.hpp"

namespace biquad {

BilinearForm::BilinearForm(std::size_t m, std::size_t n) : m_(m), n_(n), w_(m * n) {}

BilinearForm::BilinearForm(std::size_t m, std::size_t n, std::vector<Rational> coefficients)
    : m_(m), n_(n), w_(std::move(coefficients)) {
  if (w_.size() != m * n)
    throw DimensionError("bilinear form needs " + std::to_string(m * n) + " coefficients, got " +
                         std::to_string(w_.size()));
}

bool BilinearForm::is_zero() const {
  for (const Rational& v : w_)
    if (!v.is_zero()) return false;
  return true;
}

Rational BilinearForm::evaluate(std::span<const Rational> x, std::span<const Rational> y) const {
  if (x.size() != m_ || y.size() != n_) throw DimensionError("bilinear form: argument length");
  Rational total;
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!(*this)(i, j).is_zero()) total += (*this)(i, j) * x[i] * y[j];
  return total;
}

std::size_t SOSCertificate::rank_bound() const {
  std::size_t count = 0;
  for (const SOSTerm& term : terms)
    if (!term.weight.is_zero() && !term.form.is_zero()) ++count;
  return count;
}

void validate(const SOSCertificate& cert) {
  for (std::size_t p = 0; p < cert.terms.size(); ++p) {
    const SOSTerm& term = cert.terms[p];
    if (term.form.m() != cert.m || term.form.n() != cert.n)
      throw DimensionError("certificate term " + std::to_string(p + 1) +
                           " has a form of the wrong shape");
    if (term.weight.sign() < 0)
      throw PreconditionError("certificate term " + std::to_string(p + 1) +
                              " has negative weight " + term.weight.str());
  }
}

SymmetricTensor expand_certificate(const SOSCertificate& cert) {
  validate(cert);
  BiquadraticTensor sum(cert.m, cert.n);
  const std::size_t pairs = cert.m * cert.n;
  auto entries = sum.entries();
  std::vector<std::size_t> support;
  for (const SOSTerm& term : cert.terms) {
    if (term.weight.is_zero()) continue;
    const auto w = term.form.coefficients();
    support.clear();
    for (std::size_t p = 0; p < pairs; ++p)
      if (!w[p].is_zero()) support.push_back(p);
    for (std::size_t p : support) {
      const Rational scaled = term.weight * w[p];
      for (std::size_t q : support) entries[p * pairs + q] += scaled * w[q];
    }
  }
  return symmetrize(sum);
}

SOSCertificate merge_proportional(const SOSCertificate& cert) {
  validate(cert);
  // Normalize each form so its first nonzero coefficient is 1; the weight
  // absorbs the square of the removed scale.
  std::map<std::vector<std::string>, std::size_t> slot;
  SOSCertificate out{cert.m, cert.n, {}};
  for (const SOSTerm& term : cert.terms) {
    if (term.weight.is_zero() || term.form.is_zero()) continue;
    const auto w = term.form.coefficients();
    Rational lead;
    for (const Rational& v : w)
      if (!v.is_zero()) {
        lead = v;
        break;
      }
    std::vector<Rational> normalized(w.begin(), w.end());
    std::vector<std::string> key;
    key.reserve(normalized.size());
    for (Rational& v : normalized) {
      v /= lead;
      key.push_back(v.str());
    }
    const Rational weight = term.weight * lead * lead;
    auto [it, inserted] = slot.emplace(std::move(key), out.terms.size());
    if (inserted)
      out.terms.push_back({weight, BilinearForm(cert.m, cert.n, std::move(normalized))});
    else
      out.terms[it->second].weight += weight;
  }
  return out;
}

SOSCertificate scale_weights(SOSCertificate cert, const Rational& factor) {
  if (factor.sign() < 0) throw PreconditionError("certificate weights scaled by a negative factor");
  for (SOSTerm& term : cert.terms) term.weight *= factor;
  return cert;
}

}  // namespace biquad
