#include "biquad/monic_form.hpp"

#include <string>

#include "biquad/errors.hpp"

namespace biquad {

void MonicParams::validate() const {
  if (m < 2 || n < 2)
    throw DimensionError("monic form needs m, n >= 2, got " + std::to_string(m) + "x" +
                         std::to_string(n));
}

SymmetricTensor monic_to_tensor(const MonicParams& p) {
  p.validate();
  BiquadraticTensor t(p.m, p.n);
  for (std::size_t i = 0; i < p.m; ++i)
    for (std::size_t j = 0; j < p.n; ++j)
      for (std::size_t k = 0; k < p.m; ++k)
        for (std::size_t l = 0; l < p.n; ++l) {
          const bool same_x = i == k;
          const bool same_y = j == l;
          t(i, j, k, l) = same_x ? (same_y ? Rational(1) : p.b) : (same_y ? p.a : p.c);
        }
  return SymmetricTensor::from_symmetric(std::move(t));
}

MonicParams monic_read_back(const SymmetricTensor& t) {
  if (t.m() < 2 || t.n() < 2) throw DimensionError("monic read-back needs m, n >= 2");
  return {t.m(), t.n(), t(0, 0, 1, 0), t(0, 0, 0, 1), t(0, 0, 1, 1)};
}

}  // namespace biquad
