#include "biquad/reference.hpp"

#include "biquad/errors.hpp"

namespace biquad::reference {

SampleMinResult sample_min(const BiquadraticTensor& t, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw PreconditionError("sample_min needs trials >= 1");
  const FloatTensor f = to_float(t);
  SampleMinResult best;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    auto [x, y] = random_unit_pair(f.m, f.n, seed, trial);
    const ExtremumPoint point = alternating_refine(f, Sense::minimize, x, y);
    if (trial == 0 || point.value < best.value) {
      best.value = point.value;
      best.x.assign(point.x.data(), point.x.data() + point.x.size());
      best.y.assign(point.y.data(), point.y.data() + point.y.size());
      best.best_trial = trial;
    }
  }
  return best;
}

GridAudit audit_grid(const GridSpec& spec) {
  MonicParams{spec.m, spec.n, {}, {}, {}}.validate();
  const auto axis = spec.axis();
  GridAudit out;
  for (const Rational& a : axis)
    for (const Rational& b : axis)
      for (const Rational& c : axis) {
        const MonicParams p{spec.m, spec.n, a, b, c};
        const MembershipAudit audit = audit_point(p);
        ++out.points;
        if (!audit.agrees()) out.disagreements.push_back(p);
        if (!audit.redundancy_ok()) out.redundancy_failures.push_back(p);
        if (!audit.inside) continue;
        ++out.psd_points;
        const std::size_t terms = monic_sos_decompose(p)->rank_bound();
        out.max_certificate_terms = std::max(out.max_certificate_terms, terms);
        if (terms > 5) ++out.points_over_five_terms;
      }
  return out;
}

}  // namespace biquad::reference
