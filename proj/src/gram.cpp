#include "biquad/gram.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "biquad/errors.hpp"

namespace biquad {

namespace {

// One affine constraint G[p][q] + G[p2][q2] = 2 a_ijkl, with (p, q) and
// (p2, q2) the unordered positions (p <= q). `coincide` marks the single-
// position case, where the constraint reads G[p][q] = a_ijkl.
struct Constraint {
  std::size_t p, q, p2, q2;
  bool coincide;
  Rational target;  // a_ijkl
  double target_double;
};

std::pair<std::size_t, std::size_t> ordered(std::size_t a, std::size_t b) {
  return a <= b ? std::pair{a, b} : std::pair{b, a};
}

std::vector<Constraint> constraints(const SymmetricTensor& t) {
  const std::size_t n = t.n();
  std::vector<Constraint> out;
  std::set<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>> seen;
  for (std::size_t i = 0; i < t.m(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < t.m(); ++k)
        for (std::size_t l = 0; l < n; ++l) {
          auto first = ordered(i * n + j, k * n + l);
          auto second = ordered(i * n + l, k * n + j);
          if (second < first) std::swap(first, second);
          if (!seen.emplace(first, second).second) continue;
          out.push_back({first.first, first.second, second.first, second.second, first == second,
                         t(i, j, k, l), t(i, j, k, l).to_double()});
        }
  return out;
}

void project_affine_in_place(Eigen::MatrixXd& out, const std::vector<Constraint>& cs) {
  for (const Constraint& c : cs) {
    if (c.coincide) {
      out(c.p, c.q) = out(c.q, c.p) = c.target_double;
      continue;
    }
    const double shift = 0.5 * (out(c.p, c.q) + out(c.p2, c.q2) - 2.0 * c.target_double);
    out(c.p, c.q) -= shift;
    out(c.q, c.p) = out(c.p, c.q);
    out(c.p2, c.q2) -= shift;
    out(c.q2, c.p2) = out(c.p2, c.q2);
  }
}

double residual_from(const Eigen::MatrixXd& g, const std::vector<Constraint>& cs) {
  double worst = 0.0;
  for (const Constraint& c : cs)
    worst = std::max(worst, std::abs(g(c.p, c.q) + g(c.p2, c.q2) - 2.0 * c.target_double));
  return worst;
}

// Dykstra's alternating projections between the affine family and the
// cone {G : G >= floor * I}.
struct DykstraRun {
  Eigen::MatrixXd affine_point;
  Eigen::MatrixXd cone_point;
  std::vector<double> history;
  bool converged = false;
};

DykstraRun dykstra(const Eigen::MatrixXd& start, const SymmetricTensor& t, double floor,
                   std::size_t max_iter, double tol) {
  DykstraRun run;
  const std::vector<Constraint> cs = constraints(t);
  Eigen::MatrixXd x = start;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(start.rows(), start.cols());
  Eigen::MatrixXd q = p;
  run.history.reserve(max_iter);
  for (std::size_t it = 0; it < max_iter; ++it) {
    Eigen::MatrixXd y = x + p;
    y = 0.5 * (y + y.transpose()).eval();
    project_affine_in_place(y, cs);
    p = x + p - y;
    const Eigen::MatrixXd next = gram_project_psd(y + q, floor);
    q = y + q - next;
    x = next;
    const double combined = std::max(residual_from(x, cs), psd_residual(y));
    run.history.push_back(combined);
    run.affine_point = y;
    run.cone_point = x;
    if (combined < tol) {
      run.converged = true;
      break;
    }
  }
  return run;
}

// Rounds `g` to rationals with bounded denominators, repairs the affine
// constraints exactly and keeps the result if it factors as PSD and the
// certificate expands back to t.
std::optional<SOSCertificate> rationalize_gram(const Eigen::MatrixXd& g, const SymmetricTensor& t) {
  const std::size_t size = t.pairs();
  for (long den = 10; den <= 1'000'000; den *= 10) {
    FlatMatrix r(t.m(), t.n());
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = a; b < size; ++b) {
        r(a, b) = rationalize(0.5 * (g(a, b) + g(b, a)), den);
        r(b, a) = r(a, b);
      }
    auto cert = certificate_from_gram(gram_project_affine(r, t));
    if (cert && tensors_equal(expand_certificate(*cert), t)) return cert;
  }
  return std::nullopt;
}

bool plateaued(const std::vector<double>& history, std::size_t window, double tol) {
  if (history.size() < window || window == 0) return false;
  const auto begin = history.end() - static_cast<std::ptrdiff_t>(window);
  const auto [lo, hi] = std::minmax_element(begin, history.end());
  return *lo > tol && (*hi - *lo) <= 1e-3 * *hi;
}

}  // namespace

LdltResult ldlt_exact(const FlatMatrix& matrix) {
  const std::size_t size = matrix.size();
  FlatMatrix work = matrix;
  std::vector<bool> done(size, false);
  LdltResult out;
  for (std::size_t step = 0; step < size; ++step) {
    std::optional<std::size_t> pivot;
    for (std::size_t r = 0; r < size; ++r)
      if (!done[r] && (!pivot || work(r, r) > work(*pivot, *pivot))) pivot = r;
    const std::size_t p = *pivot;
    const Rational d = work(p, p);
    if (d.sign() < 0) {
      out.failing_pivot = d;
      out.failing_index = p;
      return out;
    }
    if (d.is_zero()) {
      std::optional<std::size_t> lowest;
      for (std::size_t r = 0; r < size; ++r)
        if (!done[r] && (!lowest || work(r, r) < work(*lowest, *lowest))) lowest = r;
      if (work(*lowest, *lowest).sign() < 0) {
        out.failing_pivot = work(*lowest, *lowest);
        out.failing_index = lowest;
        return out;
      }
      for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c)
          if (!done[r] && !done[c] && !work(r, c).is_zero()) {
            out.failing_pivot = d;
            out.failing_index = r;
            return out;
          }
      break;  // remaining block is zero
    }
    std::vector<Rational> column(size);
    for (std::size_t r = 0; r < size; ++r)
      if (!done[r]) column[r] = work(r, p) / d;
    done[p] = true;
    for (std::size_t r = 0; r < size; ++r) {
      if (done[r] || column[r].is_zero()) continue;
      const Rational scaled = column[r] * d;
      for (std::size_t c = 0; c < size; ++c)
        if (!done[c] && !column[c].is_zero()) work(r, c) -= scaled * column[c];
    }
    out.pivots.push_back(d);
    out.columns.push_back(std::move(column));
  }
  out.psd = true;
  return out;
}

std::optional<SOSCertificate> certificate_from_gram(const FlatMatrix& gram) {
  const LdltResult ldl = ldlt_exact(gram);
  if (!ldl.psd) return std::nullopt;
  SOSCertificate cert{gram.m(), gram.n(), {}};
  for (std::size_t c = 0; c < ldl.pivots.size(); ++c)
    cert.terms.push_back({ldl.pivots[c], BilinearForm(gram.m(), gram.n(), ldl.columns[c])});
  return cert;
}

std::optional<SOSCertificate> flattening_psd_check(const SymmetricTensor& t) {
  return certificate_from_gram(flatten(t));
}

bool is_non_sos_witness(const FlatMatrix& y, const SymmetricTensor& t) {
  if (y.m() != t.m() || y.n() != t.n()) throw DimensionError("witness shape does not match tensor");
  if (!y.is_symmetric() || !y.has_pair_exchange_symmetry()) return false;
  const FlatMatrix f = flatten(t);
  Rational inner;
  for (std::size_t p = 0; p < f.size(); ++p)
    for (std::size_t q = 0; q < f.size(); ++q) inner += y(p, q) * f(p, q);
  return inner.sign() < 0 && ldlt_exact(y).psd;
}

double affine_residual(const Eigen::MatrixXd& g, const SymmetricTensor& t) {
  const std::size_t n = t.n();
  double worst = 0.0;
  for (std::size_t i = 0; i < t.m(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < t.m(); ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const double v = g(i * n + j, k * n + l) + g(i * n + l, k * n + j) -
                           2.0 * t(i, j, k, l).to_double();
          worst = std::max(worst, std::abs(v));
        }
  return worst;
}

double psd_residual(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed in psd_residual");
  return std::max(0.0, -solver.eigenvalues()(0));
}

GramPoint measure(Eigen::MatrixXd g, const SymmetricTensor& t) {
  GramPoint point{std::move(g), 0.0, 0.0};
  point.residual_affine = affine_residual(point.g, t);
  point.residual_psd = psd_residual(point.g);
  return point;
}

Eigen::MatrixXd gram_project_affine(const Eigen::MatrixXd& g, const SymmetricTensor& t) {
  Eigen::MatrixXd out = 0.5 * (g + g.transpose());
  project_affine_in_place(out, constraints(t));
  return out;
}

FlatMatrix gram_project_affine(const FlatMatrix& g, const SymmetricTensor& t) {
  FlatMatrix out = g;
  const Rational half(1, 2);
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b) out(a, b) = out(b, a) = (g(a, b) + g(b, a)) * half;
  for (const Constraint& c : constraints(t)) {
    if (c.coincide) {
      out(c.p, c.q) = out(c.q, c.p) = c.target;
      continue;
    }
    const Rational shift = (out(c.p, c.q) + out(c.p2, c.q2) - Rational(2) * c.target) * half;
    out(c.p, c.q) -= shift;
    out(c.q, c.p) = out(c.p, c.q);
    out(c.p2, c.q2) -= shift;
    out(c.q2, c.p2) = out(c.p2, c.q2);
  }
  return out;
}

Eigen::MatrixXd gram_project_psd(const Eigen::MatrixXd& g, double floor) {
  const Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigensolver failed on Gram matrix:\n" << sym;
    throw NumericalError(os.str());
  }
  const Eigen::VectorXd clipped = solver.eigenvalues().cwiseMax(floor);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::MatrixXd out = v * clipped.asDiagonal() * v.transpose();
  return 0.5 * (out + out.transpose());
}

Rational rationalize(double x, long max_denominator) {
  if (!std::isfinite(x)) throw PreconditionError("rationalize: non-finite value");
  if (max_denominator < 1) throw PreconditionError("rationalize: denominator bound must be >= 1");
  // Convergents h/k of the continued fraction of x.
  long h_prev = 1, h = static_cast<long>(std::floor(x));
  long k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  while (frac > 1e-15) {
    const double inv = 1.0 / frac;
    if (inv > 1e15) break;
    const long a = static_cast<long>(std::floor(inv));
    const long k_next = a * k + k_prev;
    if (k_next > max_denominator) break;
    const long h_next = a * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    frac = inv - std::floor(inv);
  }
  return Rational(h, k);
}

std::string to_string(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::sos_certified:
      return "sos_certified";
    case ProbeStatus::flattening_psd:
      return "flattening_psd";
    case ProbeStatus::feasible_numerical:
      return "feasible_numerical";
    case ProbeStatus::infeasible_suspected:
      return "infeasible_suspected";
    case ProbeStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

SOSProbeResult sos_probe(const SymmetricTensor& t, const ProbeOptions& options) {
  SOSProbeResult result;
  if (auto cert = flattening_psd_check(t)) {
    result.status = ProbeStatus::sos_certified;
    result.certificate = std::move(cert);
    return result;
  }
  const FloatTensor start = to_float(t);
  DykstraRun run = dykstra(start.flat, t, 0.0, options.max_iter, options.tol);
  result.iterations = run.history.size();
  result.residual_affine = affine_residual(run.cone_point, t);
  result.residual_psd = psd_residual(run.affine_point);
  result.history = std::move(run.history);

  if (run.converged) {
    result.status = ProbeStatus::feasible_numerical;
    for (const Eigen::MatrixXd* candidate : {&run.affine_point, &run.cone_point})
      if (auto cert = rationalize_gram(*candidate, t)) {
        result.status = ProbeStatus::sos_certified;
        result.certificate = std::move(cert);
        return result;
      }
    // The limit sits on the PSD boundary where rounding breaks
    // semidefiniteness; look for a point with an eigenvalue margin.
    const double scale = std::max(1.0, start.flat.cwiseAbs().maxCoeff());
    for (double floor : {1e-2, 1e-3, 1e-4, 1e-5}) {
      DykstraRun inner =
          dykstra(run.cone_point, t, floor * scale, options.max_iter, options.tol);
      if (!inner.converged) continue;
      if (auto cert = rationalize_gram(inner.affine_point, t)) {
        result.status = ProbeStatus::sos_certified;
        result.certificate = std::move(cert);
        return result;
      }
    }
    return result;
  }
  const std::size_t window = std::max<std::size_t>(1, options.max_iter / 10);
  result.status = plateaued(result.history, window, options.tol) ? ProbeStatus::infeasible_suspected
                                                                 : ProbeStatus::inconclusive;
  return result;
}

std::map<std::string, std::size_t> SweepResult::histogram() const {
  std::map<std::string, std::size_t> counts;
  for (ProbeStatus s : {ProbeStatus::sos_certified, ProbeStatus::flattening_psd,
                        ProbeStatus::feasible_numerical, ProbeStatus::infeasible_suspected,
                        ProbeStatus::inconclusive})
    counts[to_string(s)] = 0;
  for (const SweepRow& row : rows) ++counts[to_string(row.status)];
  return counts;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  // splitmix64 finalizer over (seed, trial).
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SweepResult conjecture_sweep(TensorClass cls, std::size_t trials, std::uint64_t seed,
                             std::size_t m, std::size_t n, const ProbeOptions& options,
                             Exec exec) {
  if (trials == 0) throw PreconditionError("conjecture_sweep needs trials >= 1");
  SweepResult result;
  result.rows.resize(trials);
  std::vector<std::optional<SymmetricTensor>> flagged(trials);
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (std::int64_t trial = 0; trial < count; ++trial) {
    const auto u = static_cast<std::size_t>(trial);
    const std::uint64_t s = trial_seed(seed, u);
    SymmetricTensor t = generate(cls, m, n, s);
    const SOSProbeResult probe = sos_probe(t, options);
    result.rows[u] = {u, s, probe.status, probe.iterations, probe.residual_affine,
                      probe.residual_psd};
    if (probe.status == ProbeStatus::infeasible_suspected) flagged[u] = std::move(t);
  }
  for (std::size_t u = 0; u < trials; ++u)
    if (flagged[u]) result.suspicious.emplace_back(u, std::move(*flagged[u]));
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "trial,seed,status,iterations,residual_affine,residual_psd\n";
  os << std::setprecision(6) << std::scientific;
  for (const SweepRow& row : result.rows)
    os << row.trial << ',' << row.seed << ',' << to_string(row.status) << ',' << row.iterations
       << ',' << row.residual_affine << ',' << row.residual_psd << '\n';
  return os.str();
}

}  // namespace biquad
