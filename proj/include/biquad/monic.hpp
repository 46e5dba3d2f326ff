#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "biquad/alternating.hpp"
#include "biquad/certificate.hpp"
#include "biquad/monic_form.hpp"
#include "biquad/rational.hpp"
#include "biquad/tensor.hpp"

namespace biquad {

/// Closed-form M-eigenvalues of a monic symmetric form, labelled i..v.
///
/// (i)   1 - b + (m-1)(a-c)            x = 1/sqrt(m), y orthogonal to 1
/// (ii)  1 - a + (n-1)(b-c)            y = 1/sqrt(n), x orthogonal to 1
/// (iii) 1 - a - b + c                 both orthogonal to the ones vector
/// (iv)  1 + (m-1)a + (n-1)b + (m-1)(n-1)c   both parallel to it
/// (v)   1 - ab/c, only when c != 0, a/c in [1-n, 1), b/c in [1-m, 1)
///
/// The interior critical points, where (1^T x)^2 = (c-b)/c and
/// (1^T y)^2 = (c-a)/c, enter only through (v); their eigenvectors are not
/// enumerated.
struct MEigenReport {
  struct Entry {
    std::string label;
    std::optional<Rational> value;  // absent only for (v) with c == 0
    bool applicable = true;
  };
  std::array<Entry, 5> entries;

  /// Smallest applicable eigenvalue.
  Rational min_applicable() const;
};

MEigenReport m_eigen_monic(const MonicParams& p);

struct PsdVerdict {
  bool psd = false;
  MEigenReport report;
};

/// Conjunction of conditions (i)..(v) (each applicable value >= 0).
PsdVerdict psd_conditions(const MonicParams& p);

/// Vertices of the PSD region in (a, b, c) space.
struct Tetrahedron {
  std::size_t m = 2;
  std::size_t n = 2;
  std::array<std::array<Rational, 3>, 4> vertices;
};

Tetrahedron tetrahedron(std::size_t m, std::size_t n);

/// Solution of [V1 V2 V3 V4; 1 1 1 1] lambda = [a; b; c; 1], always unique.
std::array<Rational, 4> barycentric_coordinates(const MonicParams& p);

/// Barycentric coordinates when all are >= 0, otherwise nullopt.
std::optional<std::array<Rational, 4>> barycentric(const MonicParams& p);

struct MembershipAudit {
  bool conditions_psd = false;    // (i)..(v)
  bool inside = false;            // barycentric membership
  bool eigen_nonnegative = false; // min applicable M-eigenvalue >= 0
  bool linear_hold = false;       // (i)..(iv)
  bool fifth_holds = false;       // (v) holds or is inapplicable

  bool agrees() const { return conditions_psd == inside && inside == eigen_nonnegative; }
  bool redundancy_ok() const { return !linear_hold || fifth_holds; }
};

MembershipAudit audit_point(const MonicParams& p);

/// All three PSD predicates agree and (i)..(iv) imply (v).
bool membership_equivalence_check(const MonicParams& p);

enum class Vertex { v1 = 1, v2 = 2, v3 = 3, v4 = 4 };

/// Explicit vertex certificates:
///   V1: (sum x)(sum y), weight 1
///   V2: (x_i - x_k)(y_j - y_l), i<k, j<l, weight 1/((m-1)(n-1))
///   V3: (x_i - x_k)(sum y), i<k, weight 1/(m-1)
///   V4: (sum x)(y_j - y_l), j<l, weight 1/(n-1)
SOSCertificate vertex_sos(Vertex v, std::size_t m, std::size_t n);

/// Convex combination of the vertex certificates (zero coefficients
/// omitted) followed by merge_proportional. nullopt when p is not PSD.
std::optional<SOSCertificate> monic_sos_decompose(const MonicParams& p);

/// Scales an x- and y-symmetric tensor to monic form and decomposes it.
/// Diagonal d < 0: nullopt. d == 0: empty certificate for the zero
/// tensor, nullopt otherwise. Throws PreconditionError when the tensor is
/// not x/y-symmetric and DimensionError when m or n < 2.
std::optional<SOSCertificate> symmetric_sos_decompose(const SymmetricTensor& t);

struct GridSpec {
  std::size_t m = 3;
  std::size_t n = 3;
  Rational step{1, 5};
  Rational range{2};

  /// Values -range, -range + step, ..., range. Throws PreconditionError
  /// unless step > 0 and 2*range/step is a whole number.
  std::vector<Rational> axis() const;
};

struct GridAudit {
  std::size_t points = 0;
  std::size_t psd_points = 0;
  std::vector<MonicParams> disagreements;
  std::vector<MonicParams> redundancy_failures;
  /// Largest term count of monic_sos_decompose over the PSD points.
  std::size_t max_certificate_terms = 0;
  std::size_t points_over_five_terms = 0;
};

/// Sweeps the full (a, b, c) grid; output order is the grid order
/// regardless of Exec.
GridAudit audit_grid(const GridSpec& spec, Exec exec = Exec::parallel);

}  // namespace biquad
