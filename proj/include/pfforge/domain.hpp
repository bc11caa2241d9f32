#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pfforge/coeff_seq.hpp"
#include "pfforge/geometry.hpp"
#include "pfforge/perturbation.hpp"

namespace pfforge {

/// Simply connected polygonal domain given by its closed boundary polyline.
struct DomainSpec {
  std::vector<ComplexRational> vertices;
  bool symmetric = false;
  std::optional<Rational> T;  ///< distance from 0 to the boundary, if supplied
};

struct ValidationReport {
  bool contains_origin = false;    ///< (A) 0 lies strictly inside
  bool symmetric = false;          ///< (B) vertex set closed under conjugation
  bool nearest_on_positive_axis = false;  ///< (C) dist(0, boundary) attained at T > 0 on the real axis
  bool contains_unit_disc = false; ///< every boundary point has modulus >= 1
  Rational dist2;                  ///< squared distance from 0 to the boundary
  std::optional<Rational> T_exact; ///< set when the distance is rational
  Rational T_lower;                ///< rational enclosure of the distance
  Rational T_upper;
  std::vector<std::string> notes;

  bool conditions_hold() const { return contains_origin && symmetric && nearest_on_positive_axis; }
};

/// Checks conditions (A)-(C) and unit-disc containment. Throws
/// malformed_polyline for non-simple boundaries.
ValidationReport validate_domain(const DomainSpec& spec);

/// Boundary point sequence by dyadic subdivision of each edge: all edge
/// midpoints, then the quarter points, then eighths, ... (vertices are never
/// emitted; they are limits of the sequence). For symmetric specs a point
/// in the upper half plane is immediately followed by its conjugate and
/// lower-half points are not emitted on their own, so the output may hold
/// N + 1 points when the N-th point opens a pair.
std::vector<ComplexRational> densify_boundary(const DomainSpec& spec, std::size_t N);

struct PoleTerm {
  ComplexRational lambda;  ///< boundary point nearest to the anchor
  Rational d;              ///< weight
  ComplexRational anchor;  ///< interior point z_k
  ComplexRational zeta;    ///< dense boundary point the anchor was placed near
  Index n = 1;             ///< radius index: |anchor - zeta| < 1/(2n), |zeta - lambda| < 1/n
};

/// g(z) = sum_k d_k / (lambda_k - z).
struct PoleSum {
  std::vector<PoleTerm> terms;

  Rational weight_sum() const;
};

/// One term per densified boundary point; weights d_k = 2^-k (k from 1), with
/// conjugate pairs at positions k, k+1 both weighted 3 * 2^-(k+2).
/// Requires (A) and unit-disc containment; throws domain_invalid otherwise
/// and geometry_degenerate if no interior anchor is found.
PoleSum build_pole_sum(const DomainSpec& spec, std::size_t N);

/// Exact Taylor coefficients b_n = sum_k d_k / lambda_k^{n+1}, n = 0..W.
struct TaylorCertificate {
  std::vector<ComplexRational> b;
  Rational bound;            ///< sum_k d_k, an upper bound on every |b_n|
  bool real = true;          ///< every b_n has zero imaginary part
  bool bound_holds = true;   ///< |b_n|^2 <= bound^2 verified for every n

  /// Real parts as a coefficient sequence; throws domain_invalid if !real.
  CoeffSeq real_coeffs() const;
};

TaylorCertificate taylor_coeffs(const PoleSum& poles, Index W, std::size_t jobs = 1);

struct BlowupPoint {
  Rational alpha;
  ComplexRational z;       ///< alpha * z_p + (1 - alpha) * lambda_p
  Rational lower_bound;    ///< exact rational lower bound on |g(z)|
};

struct BlowupWitness {
  std::size_t term = 0;
  std::size_t included_terms = 0;  ///< N_p: terms 0..N_p-1 enter the explicit sum
  std::vector<BlowupPoint> points;
};

/// Lower bounds d_p / (2|lambda_p - z|) - |sum_{k < N_p, k != p} d_k/(lambda_k - z)|
/// along the segment from the anchor of term p to lambda_p. N_p defaults to
/// the smallest count with sum_{k >= N_p} d_k < d_p / 2; an explicit N_p that
/// violates this throws tail_condition_unsatisfiable. alphas must lie in (0, 1].
BlowupWitness blowup_witness(const PoleSum& poles, std::size_t p,
                             const std::vector<Rational>& alphas,
                             std::optional<std::size_t> included_terms = std::nullopt);

struct ComposeOptions {
  std::size_t terms = 16;
  PlanMode mode = PlanMode::windowed;
  std::optional<Index> K;  ///< scan bound for windowed mode; defaults to W
  std::size_t jobs = 1;
};

struct ComposeResult {
  ValidationReport validation;
  Rational T;
  PoleSum poles;  ///< built on the domain scaled by 1/T
  TaylorCertificate taylor;
  PerturbationPlan plan;
  CoeffSeq coeffs;
};

/// PF_r generating function for a domain satisfying (A)-(C): scale the domain
/// by 1/T, build g with bounded coefficients there, take eps from the plan
/// for C = sum d_k + 1, form 1/(1-z)^{r^2} + eps g, and map c_k -> c_k / T^k.
ComposeResult compose_pfr_domain(const DomainSpec& spec, std::size_t r, Index W,
                                 const ComposeOptions& options = {});

}  // namespace pfforge
