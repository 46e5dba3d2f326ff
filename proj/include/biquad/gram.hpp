#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biquad/alternating.hpp"
#include "biquad/certificate.hpp"
#include "biquad/classes.hpp"
#include "biquad/dominance.hpp"
#include "biquad/tensor.hpp"

namespace biquad {

/// Exact symmetric LDL^T with diagonal pivoting (largest remaining
/// diagonal first). `psd` is true iff every pivot is >= 0 and any zero
/// pivot comes with an all-zero remaining block. A failure reports the most
/// negative remaining diagonal when there is one.
struct LdltResult {
  bool psd = false;
  std::vector<Rational> pivots;                // nonzero pivots, in elimination order
  std::vector<std::vector<Rational>> columns;  // matching L columns, original indexing
  std::optional<Rational> failing_pivot;       // negative pivot, or 0 over a nonzero block
  std::optional<std::size_t> failing_index;
};

LdltResult ldlt_exact(const FlatMatrix& matrix);

/// One square per LDL^T column (weight = pivot) when the matrix is PSD.
std::optional<SOSCertificate> certificate_from_gram(const FlatMatrix& gram);

/// certificate_from_gram(flatten(t)).
std::optional<SOSCertificate> flattening_psd_check(const SymmetricTensor& t);

/// Exact proof that `t` is not SOS: `y` symmetric PSD with the pair-exchange
/// symmetry and <y, flatten(t)> < 0. Every Gram matrix G of t then has
/// <y, G> = <y, flatten(t)> < 0, which no PSD G allows. Throws
/// DimensionError on shape mismatch.
bool is_non_sos_witness(const FlatMatrix& y, const SymmetricTensor& t);

/// Gram matrices G with z^T G z = P(x, y), z = x (x) y, are exactly the
/// symmetric G with G_{(i,j),(k,l)} + G_{(i,l),(k,j)} = 2 a_{ijkl}.
struct GramPoint {
  Eigen::MatrixXd g;
  double residual_affine = 0.0;  // max constraint violation
  double residual_psd = 0.0;     // max(0, -lambda_min(G))
};

double affine_residual(const Eigen::MatrixXd& g, const SymmetricTensor& t);
double psd_residual(const Eigen::MatrixXd& g);
GramPoint measure(Eigen::MatrixXd g, const SymmetricTensor& t);

/// Orthogonal (Frobenius) projection onto the affine family.
Eigen::MatrixXd gram_project_affine(const Eigen::MatrixXd& g, const SymmetricTensor& t);
/// Exact-rational version, used to repair rounded Gram matrices.
FlatMatrix gram_project_affine(const FlatMatrix& g, const SymmetricTensor& t);

/// Clips eigenvalues below `floor` up to `floor` (0 for the PSD cone).
/// Throws NumericalError if the eigensolver fails.
Eigen::MatrixXd gram_project_psd(const Eigen::MatrixXd& g, double floor = 0.0);

/// Best rational approximation with denominator <= max_denominator
/// (continued-fraction convergents).
Rational rationalize(double x, long max_denominator);

enum class ProbeStatus {
  sos_certified,
  flattening_psd,
  feasible_numerical,
  infeasible_suspected,
  inconclusive
};
std::string to_string(ProbeStatus s);

struct ProbeOptions {
  std::size_t max_iter = 5000;
  double tol = 1e-9;
};

struct SOSProbeResult {
  ProbeStatus status = ProbeStatus::inconclusive;
  std::optional<SOSCertificate> certificate;
  std::size_t iterations = 0;
  double residual_affine = 0.0;
  double residual_psd = 0.0;
  /// max(residual_affine, residual_psd) after every Dykstra iteration.
  std::vector<double> history;
};

/// Exact flattening test first; otherwise Dykstra projections between the
/// affine family and the PSD cone starting at flatten(t), then exact
/// rationalization of the numerical point. infeasible_suspected means the
/// residual stalled above tol over the last max_iter/10 iterations; it is
/// evidence, not proof.
SOSProbeResult sos_probe(const SymmetricTensor& t, const ProbeOptions& options = {});

struct SweepRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  ProbeStatus status = ProbeStatus::inconclusive;
  std::size_t iterations = 0;
  double residual_affine = 0.0;
  double residual_psd = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Tensors whose probe came back infeasible_suspected, keyed by trial.
  std::vector<std::pair<std::size_t, SymmetricTensor>> suspicious;

  std::map<std::string, std::size_t> histogram() const;
};

/// Seed of trial `trial` in a sweep seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// Generates `trials` members of `cls` and probes each. Rows are in trial
/// order under both Exec modes. Throws PreconditionError when trials == 0.
SweepResult conjecture_sweep(TensorClass cls, std::size_t trials, std::uint64_t seed,
                             std::size_t m, std::size_t n, const ProbeOptions& options = {},
                             Exec exec = Exec::parallel);

/// Header: trial,seed,status,iterations,residual_affine,residual_psd
std::string sweep_csv(const SweepResult& result);

}  // namespace biquad
