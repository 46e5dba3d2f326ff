#include "biquad/tensor.hpp"

#include <string>

#include "biquad/errors.hpp"

namespace biquad {

namespace {

std::string shape(std::size_t m, std::size_t n) {
  return std::to_string(m) + "x" + std::to_string(n);
}

template <typename T>
std::vector<T> kron(std::span<const T> x, std::span<const T> y) {
  std::vector<T> z;
  z.reserve(x.size() * y.size());
  for (const T& xi : x)
    for (const T& yj : y) z.push_back(xi * yj);
  return z;
}

void check_lengths(const BiquadraticTensor& t, std::size_t xs, std::size_t ys) {
  if (xs != t.m() || ys != t.n())
    throw DimensionError("evaluate: tensor is " + shape(t.m(), t.n()) + " but got x of length " +
                         std::to_string(xs) + " and y of length " + std::to_string(ys));
}

// Maps every entry of `t` through (i,j,k,l) -> perm(i),j,perm(k),l (or on
// the y side) and compares with the original.
template <typename Swap>
bool invariant_under(const SymmetricTensor& t, std::size_t count, Swap swap) {
  for (std::size_t s = 0; s + 1 < count; ++s) {
    auto sigma = [s](std::size_t v) { return v == s ? s + 1 : (v == s + 1 ? s : v); };
    for (std::size_t i = 0; i < t.m(); ++i)
      for (std::size_t j = 0; j < t.n(); ++j)
        for (std::size_t k = 0; k < t.m(); ++k)
          for (std::size_t l = 0; l < t.n(); ++l)
            if (!swap(i, j, k, l, sigma)) return false;
  }
  return true;
}

}  // namespace

BiquadraticTensor::BiquadraticTensor(std::size_t m, std::size_t n)
    : m_(m), n_(n), entries_(m * n * m * n) {
  if (m == 0 || n == 0) throw DimensionError("tensor dimensions must be >= 1, got " + shape(m, n));
}

const Rational& BiquadraticTensor::at(std::size_t i, std::size_t j, std::size_t k,
                                      std::size_t l) const {
  if (i >= m_ || k >= m_ || j >= n_ || l >= n_)
    throw DimensionError("tensor index out of range for shape " + shape(m_, n_));
  return (*this)(i, j, k, l);
}

bool BiquadraticTensor::is_symmetric() const {
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < m_; ++k)
        for (std::size_t l = 0; l < n_; ++l) {
          const Rational& v = (*this)(i, j, k, l);
          if (v != (*this)(k, j, i, l) || v != (*this)(k, l, i, j) || v != (*this)(i, l, k, j))
            return false;
        }
  return true;
}

SymmetricTensor SymmetricTensor::from_symmetric(BiquadraticTensor t) {
  if (!t.is_symmetric()) throw PreconditionError("tensor is not symmetric");
  return SymmetricTensor(std::move(t));
}

std::array<std::array<std::size_t, 4>, 4> orbit(std::size_t i, std::size_t j, std::size_t k,
                                                std::size_t l) {
  return {{{i, j, k, l}, {k, j, i, l}, {i, l, k, j}, {k, l, i, j}}};
}

SymmetricTensor symmetrize(const BiquadraticTensor& t) {
  BiquadraticTensor out(t.m(), t.n());
  const Rational quarter(1, 4);
  for (std::size_t i = 0; i < t.m(); ++i)
    for (std::size_t j = 0; j < t.n(); ++j)
      for (std::size_t k = 0; k < t.m(); ++k)
        for (std::size_t l = 0; l < t.n(); ++l) {
          Rational sum;
          for (const auto& [a, b, c, d] : orbit(i, j, k, l)) sum += t(a, b, c, d);
          out(i, j, k, l) = sum * quarter;
        }
  return SymmetricTensor(std::move(out));
}

SymmetricTensor scale(const SymmetricTensor& t, const Rational& factor) {
  BiquadraticTensor out = t.tensor();
  for (Rational& v : out.entries()) v *= factor;
  return SymmetricTensor(std::move(out));
}

Rational evaluate(const BiquadraticTensor& t, std::span<const Rational> x,
                  std::span<const Rational> y) {
  check_lengths(t, x.size(), y.size());
  const auto z = kron(x, y);
  const std::size_t p = t.pairs();
  const auto a = t.entries();
  Rational total;
  for (std::size_t r = 0; r < p; ++r) {
    if (z[r].is_zero()) continue;
    Rational row;
    for (std::size_t c = 0; c < p; ++c)
      if (!a[r * p + c].is_zero() && !z[c].is_zero()) row += a[r * p + c] * z[c];
    total += row * z[r];
  }
  return total;
}

double evaluate(const BiquadraticTensor& t, std::span<const double> x, std::span<const double> y) {
  check_lengths(t, x.size(), y.size());
  const auto z = kron(x, y);
  const std::size_t p = t.pairs();
  const auto a = t.entries();
  double total = 0.0;
  for (std::size_t r = 0; r < p; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < p; ++c) row += a[r * p + c].to_double() * z[c];
    total += row * z[r];
  }
  return total;
}

bool tensors_equal(const SymmetricTensor& s, const SymmetricTensor& t) {
  if (s.m() != t.m() || s.n() != t.n())
    throw DimensionError("tensors_equal: shapes " + shape(s.m(), s.n()) + " and " +
                         shape(t.m(), t.n()) + " differ");
  return s.tensor() == t.tensor();
}

bool is_x_symmetric(const SymmetricTensor& t) {
  return invariant_under(t, t.m(), [&t](auto i, auto j, auto k, auto l, auto sigma) {
    return t(i, j, k, l) == t(sigma(i), j, sigma(k), l);
  });
}

bool is_y_symmetric(const SymmetricTensor& t) {
  return invariant_under(t, t.n(), [&t](auto i, auto j, auto k, auto l, auto sigma) {
    return t(i, j, k, l) == t(i, sigma(j), k, sigma(l));
  });
}

}  // namespace biquad
