#include "biquad/monic.hpp"

#include <omp.h>

#include <cstdint>
#include <string>

#include "biquad/errors.hpp"

namespace biquad {

namespace {

Rational dim(std::size_t v) { return Rational(static_cast<long>(v)); }

// Exact Gaussian elimination on a nonsingular 4x4 system.
std::array<Rational, 4> solve4(std::array<std::array<Rational, 5>, 4> aug) {
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    while (pivot < 4 && aug[pivot][col].is_zero()) ++pivot;
    if (pivot == 4) throw NumericalError("barycentric system is singular");
    std::swap(aug[col], aug[pivot]);
    for (std::size_t row = 0; row < 4; ++row) {
      if (row == col || aug[row][col].is_zero()) continue;
      const Rational factor = aug[row][col] / aug[col][col];
      for (std::size_t c = col; c < 5; ++c) aug[row][c] -= factor * aug[col][c];
    }
  }
  std::array<Rational, 4> x;
  for (std::size_t i = 0; i < 4; ++i) x[i] = aug[i][4] / aug[i][i];
  return x;
}

BilinearForm outer(std::size_t m, std::size_t n, const std::vector<Rational>& u,
                   const std::vector<Rational>& v) {
  BilinearForm f(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = u[i] * v[j];
  return f;
}

std::vector<Rational> ones(std::size_t k) { return std::vector<Rational>(k, Rational(1)); }

std::vector<Rational> difference(std::size_t k, std::size_t first, std::size_t second) {
  std::vector<Rational> d(k);
  d[first] = 1;
  d[second] = -1;
  return d;
}

}  // namespace

Rational MEigenReport::min_applicable() const {
  std::optional<Rational> best;
  for (const Entry& e : entries)
    if (e.applicable && e.value && (!best || *e.value < *best)) best = *e.value;
  return *best;
}

MEigenReport m_eigen_monic(const MonicParams& p) {
  p.validate();
  const Rational m1 = dim(p.m - 1);
  const Rational n1 = dim(p.n - 1);
  const Rational one(1);
  const auto& [m, n, a, b, c] = p;
  MEigenReport r;
  r.entries[0] = {"i", one - b + m1 * (a - c), true};
  r.entries[1] = {"ii", one - a + n1 * (b - c), true};
  r.entries[2] = {"iii", one - a - b + c, true};
  r.entries[3] = {"iv", one + m1 * a + n1 * b + m1 * n1 * c, true};
  r.entries[4] = {"v", std::nullopt, false};
  if (!c.is_zero()) {
    const Rational ac = a / c;
    const Rational bc = b / c;
    r.entries[4].value = one - a * b / c;
    r.entries[4].applicable = ac >= one - dim(n) && ac < one && bc >= one - dim(m) && bc < one;
  }
  return r;
}

PsdVerdict psd_conditions(const MonicParams& p) {
  PsdVerdict verdict{true, m_eigen_monic(p)};
  for (const auto& e : verdict.report.entries)
    if (e.applicable && e.value->sign() < 0) verdict.psd = false;
  return verdict;
}

Tetrahedron tetrahedron(std::size_t m, std::size_t n) {
  MonicParams{m, n, {}, {}, {}}.validate();
  const Rational xm = Rational(-1) / dim(m - 1);
  const Rational yn = Rational(-1) / dim(n - 1);
  Tetrahedron t{m, n, {}};
  t.vertices[0] = {1, 1, 1};
  t.vertices[1] = {xm, yn, Rational(1) / (dim(m - 1) * dim(n - 1))};
  t.vertices[2] = {xm, 1, xm};
  t.vertices[3] = {1, yn, yn};
  return t;
}

std::array<Rational, 4> barycentric_coordinates(const MonicParams& p) {
  const Tetrahedron tet = tetrahedron(p.m, p.n);
  const std::array<Rational, 4> target{p.a, p.b, p.c, 1};
  std::array<std::array<Rational, 5>, 4> aug;
  for (std::size_t row = 0; row < 4; ++row) {
    for (std::size_t v = 0; v < 4; ++v) aug[row][v] = row < 3 ? tet.vertices[v][row] : Rational(1);
    aug[row][4] = target[row];
  }
  return solve4(aug);
}

std::optional<std::array<Rational, 4>> barycentric(const MonicParams& p) {
  auto lambda = barycentric_coordinates(p);
  for (const Rational& l : lambda)
    if (l.sign() < 0) return std::nullopt;
  return lambda;
}

MembershipAudit audit_point(const MonicParams& p) {
  const PsdVerdict verdict = psd_conditions(p);
  MembershipAudit audit;
  audit.conditions_psd = verdict.psd;
  audit.inside = barycentric(p).has_value();
  audit.eigen_nonnegative = verdict.report.min_applicable().sign() >= 0;
  audit.linear_hold = true;
  for (std::size_t e = 0; e < 4; ++e)
    if (verdict.report.entries[e].value->sign() < 0) audit.linear_hold = false;
  const auto& fifth = verdict.report.entries[4];
  audit.fifth_holds = !fifth.applicable || fifth.value->sign() >= 0;
  return audit;
}

bool membership_equivalence_check(const MonicParams& p) {
  const MembershipAudit audit = audit_point(p);
  return audit.agrees() && audit.redundancy_ok();
}

SOSCertificate vertex_sos(Vertex v, std::size_t m, std::size_t n) {
  MonicParams{m, n, {}, {}, {}}.validate();
  SOSCertificate cert{m, n, {}};
  switch (v) {
    case Vertex::v1:
      cert.terms.push_back({1, outer(m, n, ones(m), ones(n))});
      break;
    case Vertex::v2: {
      const Rational w = Rational(1) / (dim(m - 1) * dim(n - 1));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = i + 1; k < m; ++k)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l)
              cert.terms.push_back({w, outer(m, n, difference(m, i, k), difference(n, j, l))});
      break;
    }
    case Vertex::v3: {
      const Rational w = Rational(1) / dim(m - 1);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = i + 1; k < m; ++k)
          cert.terms.push_back({w, outer(m, n, difference(m, i, k), ones(n))});
      break;
    }
    case Vertex::v4: {
      const Rational w = Rational(1) / dim(n - 1);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = j + 1; l < n; ++l)
          cert.terms.push_back({w, outer(m, n, ones(m), difference(n, j, l))});
      break;
    }
  }
  return cert;
}

std::optional<SOSCertificate> monic_sos_decompose(const MonicParams& p) {
  const auto lambda = barycentric(p);
  if (!lambda) return std::nullopt;
  SOSCertificate cert{p.m, p.n, {}};
  constexpr std::array<Vertex, 4> order{Vertex::v1, Vertex::v2, Vertex::v3, Vertex::v4};
  for (std::size_t v = 0; v < 4; ++v) {
    if ((*lambda)[v].is_zero()) continue;
    for (SOSTerm& term : scale_weights(vertex_sos(order[v], p.m, p.n), (*lambda)[v]).terms)
      cert.terms.push_back(std::move(term));
  }
  return merge_proportional(cert);
}

std::optional<SOSCertificate> symmetric_sos_decompose(const SymmetricTensor& t) {
  if (!is_x_symmetric(t) || !is_y_symmetric(t))
    throw PreconditionError("symmetric_sos_decompose: form is not x- and y-symmetric");
  if (t.m() < 2 || t.n() < 2) throw DimensionError("symmetric_sos_decompose needs m, n >= 2");
  const Rational d = t(0, 0, 0, 0);
  if (d.sign() < 0) return std::nullopt;
  if (d.is_zero()) {
    for (const Rational& v : t.tensor().entries())
      if (!v.is_zero()) return std::nullopt;
    return SOSCertificate{t.m(), t.n(), {}};
  }
  MonicParams p = monic_read_back(t);
  p.a /= d;
  p.b /= d;
  p.c /= d;
  auto cert = monic_sos_decompose(p);
  if (!cert) return std::nullopt;
  return scale_weights(std::move(*cert), d);
}

std::vector<Rational> GridSpec::axis() const {
  if (step.sign() <= 0) throw PreconditionError("grid step must be positive");
  if (range.sign() < 0) throw PreconditionError("grid range must be nonnegative");
  const Rational count = Rational(2) * range / step;
  if (count.denominator() != 1) throw PreconditionError("2*range must be a multiple of step");
  std::vector<Rational> values;
  const long steps = count.numerator().get_si();
  values.reserve(static_cast<std::size_t>(steps) + 1);
  for (long s = 0; s <= steps; ++s) values.push_back(-range + step * Rational(s));
  return values;
}

GridAudit audit_grid(const GridSpec& spec, Exec exec) {
  MonicParams{spec.m, spec.n, {}, {}, {}}.validate();
  const std::vector<Rational> axis = spec.axis();
  const std::size_t k = axis.size();
  const std::size_t total = k * k * k;

  struct PointResult {
    MembershipAudit audit;
    std::size_t terms = 0;
  };
  std::vector<PointResult> results(total);
  const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 64) if (exec == Exec::parallel)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    const MonicParams p{spec.m, spec.n, axis[u / (k * k)], axis[(u / k) % k], axis[u % k]};
    PointResult& r = results[u];
    r.audit = audit_point(p);
    if (r.audit.inside) r.terms = monic_sos_decompose(p)->rank_bound();
  }

  GridAudit out;
  out.points = total;
  for (std::size_t u = 0; u < total; ++u) {
    const PointResult& r = results[u];
    const MonicParams p{spec.m, spec.n, axis[u / (k * k)], axis[(u / k) % k], axis[u % k]};
    if (!r.audit.agrees()) out.disagreements.push_back(p);
    if (!r.audit.redundancy_ok()) out.redundancy_failures.push_back(p);
    if (r.audit.inside) {
      ++out.psd_points;
      out.max_certificate_terms = std::max(out.max_certificate_terms, r.terms);
      if (r.terms > 5) ++out.points_over_five_terms;
    }
  }
  return out;
}

}  // namespace biquad
