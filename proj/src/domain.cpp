#include "pfforge/domain.hpp"

#include <algorithm>

#include "pfforge/error.hpp"
#include "pfforge/parallel.hpp"
#include "pfforge/series.hpp"

namespace pfforge {

using geometry::Location;
using geometry::Point;

namespace {

bool vertex_set_symmetric(const std::vector<Point>& v) {
  for (const auto& p : v) {
    const Point c = p.conj();
    if (std::find(v.begin(), v.end(), c) == v.end()) return false;
  }
  return true;
}

struct BoundarySample {
  Point zeta;
  std::size_t edge = 0;
  bool conjugate_of_previous = false;
};

std::vector<BoundarySample> boundary_samples(const DomainSpec& spec, std::size_t N) {
  const auto& v = spec.vertices;
  const std::size_t m = v.size();
  std::vector<BoundarySample> out;
  if (N == 0) return out;
  for (unsigned level = 1; out.size() < N; ++level) {
    if (level > 62) throw Error(ErrorCode::geometry_degenerate, "boundary subdivision overflow");
    const Integer den = Integer(1) << level;
    const unsigned long per_edge = 1ul << (level - 1);
    for (std::size_t e = 0; e < m && out.size() < N; ++e) {
      const Point& a = v[e];
      const Point& b = v[(e + 1) % m];
      for (unsigned long i = 0; i < per_edge && out.size() < N; ++i) {
        const Rational t = make_rational(Integer(2 * i + 1), den);
        Point zeta = a + t * (b - a);
        if (!spec.symmetric) {
          out.push_back({std::move(zeta), e, false});
        } else if (zeta.im == 0) {
          out.push_back({std::move(zeta), e, false});
        } else if (zeta.im > 0) {
          Point partner = zeta.conj();
          out.push_back({std::move(zeta), e, false});
          out.push_back({std::move(partner), e, true});
        }
      }
    }
  }
  return out;
}

}  // namespace

ValidationReport validate_domain(const DomainSpec& spec) {
  geometry::check_simple_polygon(spec.vertices);
  ValidationReport rep;
  const Point origin(0);

  const Location loc = geometry::locate(origin, spec.vertices);
  rep.contains_origin = loc == Location::inside;
  if (loc == Location::boundary) rep.notes.push_back("origin lies on the boundary");

  rep.symmetric = vertex_set_symmetric(spec.vertices);
  if (spec.symmetric && !rep.symmetric) {
    rep.notes.push_back("symmetric flag set but the vertex set is not closed under conjugation");
  }

  const auto nearest = geometry::nearest_on_boundary(origin, spec.vertices);
  rep.dist2 = nearest.dist2;
  rep.contains_unit_disc = rep.contains_origin && rep.dist2 >= 1;

  // (C): some edge's nearest point to 0 is a positive real at the minimal distance.
  const std::size_t m = spec.vertices.size();
  for (std::size_t e = 0; e < m; ++e) {
    const Point q = geometry::nearest_on_segment(origin, spec.vertices[e], spec.vertices[(e + 1) % m]);
    if (q.im == 0 && q.re > 0 && q.norm2() == rep.dist2) {
      rep.nearest_on_positive_axis = true;
      rep.T_exact = q.re;
      break;
    }
  }
  if (rep.T_exact) {
    rep.T_lower = rep.T_upper = *rep.T_exact;
  } else {
    const SqrtBounds bounds = sqrt_bounds(rep.dist2);
    rep.T_lower = bounds.lower;
    rep.T_upper = bounds.upper;
    if (bounds.lower == bounds.upper) rep.T_exact = bounds.lower;
    rep.notes.push_back("distance to the boundary is not attained on the positive real axis");
  }
  if (spec.T && (*spec.T < 0 || *spec.T * *spec.T != rep.dist2)) {
    rep.nearest_on_positive_axis = false;
    rep.notes.push_back("supplied T does not equal the distance from 0 to the boundary");
  }
  return rep;
}

std::vector<ComplexRational> densify_boundary(const DomainSpec& spec, std::size_t N) {
  geometry::check_simple_polygon(spec.vertices);
  if (spec.symmetric && !vertex_set_symmetric(spec.vertices)) {
    throw Error(ErrorCode::domain_invalid, "symmetric flag set on a non-symmetric polygon");
  }
  std::vector<ComplexRational> out;
  for (auto& s : boundary_samples(spec, N)) out.push_back(std::move(s.zeta));
  return out;
}

Rational PoleSum::weight_sum() const {
  Rational sum = 0;
  for (const auto& t : terms) sum += t.d;
  return sum;
}

PoleSum build_pole_sum(const DomainSpec& spec, std::size_t N) {
  if (N == 0) throw Error(ErrorCode::parameter_out_of_range, "pole sum needs N >= 1");
  const ValidationReport rep = validate_domain(spec);
  if (!rep.contains_origin) throw Error(ErrorCode::domain_invalid, "domain does not contain 0");
  if (!rep.contains_unit_disc) {
    throw Error(ErrorCode::domain_invalid, "domain does not contain the unit disc");
  }
  if (spec.symmetric && !rep.symmetric) {
    throw Error(ErrorCode::domain_invalid, "symmetric flag set on a non-symmetric polygon");
  }
  const auto& v = spec.vertices;
  const bool ccw = geometry::signed_area2(v) > 0;
  const auto samples = boundary_samples(spec, N);

  PoleSum ps;
  ps.terms.reserve(samples.size());
  for (std::size_t idx = 0; idx < samples.size(); ++idx) {
    const auto& s = samples[idx];
    PoleTerm term;
    if (s.conjugate_of_previous) {
      const PoleTerm& partner = ps.terms.back();
      term.lambda = partner.lambda.conj();
      term.anchor = partner.anchor.conj();
      term.zeta = partner.zeta.conj();
      term.n = partner.n;
      ps.terms.push_back(std::move(term));
      continue;
    }
    const Index n = static_cast<Index>(idx + 1);
    const Point edge = v[(s.edge + 1) % v.size()] - s.zeta;
    const Point inward = ccw ? Point(-edge.im, edge.re) : Point(edge.im, -edge.re);
    // |inward| <= |re| + |im|, so this step has Euclidean length <= delta.
    const Rational l1 = abs(inward.re) + abs(inward.im);
    Rational delta = make_rational(1, 4 * n);
    bool placed = false;
    for (int attempt = 0; attempt < 64; ++attempt, delta /= 2) {
      Point z = s.zeta + (delta / l1) * inward;
      if (geometry::locate(z, v) == Location::inside) {
        term.anchor = std::move(z);
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw Error(ErrorCode::geometry_degenerate,
                  "no interior anchor found near boundary point " + std::to_string(idx));
    }
    term.lambda = geometry::nearest_on_boundary(term.anchor, v).point;
    term.zeta = s.zeta;
    term.n = n;
    if ((term.zeta - term.lambda).norm2() * Rational(n * n) >= 1) {
      throw Error(ErrorCode::geometry_degenerate, "nearest boundary point too far from its seed");
    }
    ps.terms.push_back(std::move(term));
  }

  // Weights: 2^-k, averaged over conjugate pairs.
  for (std::size_t idx = 0; idx < ps.terms.size(); ++idx) {
    const Rational w = make_rational(1, Integer(1) << static_cast<unsigned>(idx + 1));
    const bool opens_pair = idx + 1 < samples.size() && samples[idx + 1].conjugate_of_previous;
    if (opens_pair) {
      const Rational shared = w * Rational(3, 4);
      ps.terms[idx].d = shared;
      ps.terms[idx + 1].d = shared;
      ++idx;
    } else {
      ps.terms[idx].d = w;
    }
  }
  return ps;
}

namespace {

// Exact term d * (1/lambda)^{n+1} held as Gaussian-integer numerator over an
// integer denominator: 1/lambda = s (a - b i) / (a^2 + b^2) for lambda = (a + b i)/s.
struct TermPowers {
  Integer w_re, w_im;  // s(a - bi)
  Integer q;           // a^2 + b^2
  Integer d_num, d_den;
};

struct GaussFrac {
  Integer re, im, den;
};

GaussFrac add(const GaussFrac& x, const GaussFrac& y) {
  return {x.re * y.den + y.re * x.den, x.im * y.den + y.im * x.den, x.den * y.den};
}

GaussFrac tree_sum(std::vector<GaussFrac>& items, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return items[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return add(tree_sum(items, lo, mid), tree_sum(items, mid, hi));
}

void gauss_mul(Integer& re, Integer& im, const Integer& br, const Integer& bi) {
  Integer nr = re * br - im * bi;
  im = re * bi + im * br;
  re = std::move(nr);
}

}  // namespace

CoeffSeq TaylorCertificate::real_coeffs() const {
  if (!real) throw Error(ErrorCode::domain_invalid, "Taylor coefficients are not real");
  std::vector<Rational> out;
  out.reserve(b.size());
  for (const auto& x : b) out.push_back(x.re);
  return CoeffSeq(std::move(out));
}

TaylorCertificate taylor_coeffs(const PoleSum& poles, Index W, std::size_t jobs) {
  if (W < 0) throw Error(ErrorCode::parameter_out_of_range, "window must be >= 0");
  TaylorCertificate cert;
  cert.bound = poles.weight_sum();
  const std::size_t count = static_cast<std::size_t>(W + 1);
  cert.b.assign(count, ComplexRational(0));
  if (poles.terms.empty()) return cert;

  std::vector<TermPowers> base;
  for (const auto& t : poles.terms) {
    if (t.lambda.norm2() < 1) {
      throw Error(ErrorCode::domain_invalid, "pole inside the unit disc");
    }
    const Integer s = lcm(t.lambda.re.get_den(), t.lambda.im.get_den());
    const Integer a = t.lambda.re.get_num() * (s / t.lambda.re.get_den());
    const Integer b = t.lambda.im.get_num() * (s / t.lambda.im.get_den());
    base.push_back({s * a, -(s * b), a * a + b * b, t.d.get_num(), t.d.get_den()});
  }

  parallel_slices(count, jobs, [&](std::size_t lo, std::size_t hi, std::size_t) {
    // Powers (1/lambda)^{lo+1} for every term, then one multiplication per n.
    std::vector<GaussFrac> cur(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      Integer re = 1, im = 0, q = 1;
      Integer br = base[i].w_re, bi = base[i].w_im, bq = base[i].q;
      for (std::size_t e = lo + 1; e > 0; e >>= 1) {
        if (e & 1u) {
          gauss_mul(re, im, br, bi);
          q *= bq;
        }
        if (e > 1) {
          gauss_mul(br, bi, br, bi);
          bq *= bq;
        }
      }
      cur[i] = {std::move(re), std::move(im), std::move(q)};
    }
    std::vector<GaussFrac> weighted(base.size());
    for (std::size_t n = lo; n < hi; ++n) {
      for (std::size_t i = 0; i < base.size(); ++i) {
        weighted[i] = {cur[i].re * base[i].d_num, cur[i].im * base[i].d_num,
                       cur[i].den * base[i].d_den};
      }
      const GaussFrac sum = tree_sum(weighted, 0, weighted.size());
      cert.b[n] = ComplexRational(make_rational(sum.re, sum.den), make_rational(sum.im, sum.den));
      if (n + 1 < hi) {
        for (std::size_t i = 0; i < base.size(); ++i) {
          gauss_mul(cur[i].re, cur[i].im, base[i].w_re, base[i].w_im);
          cur[i].den *= base[i].q;
        }
      }
    }
  });

  const Rational bound2 = cert.bound * cert.bound;
  for (const auto& x : cert.b) {
    if (!x.is_real()) cert.real = false;
    if (x.norm2() > bound2) cert.bound_holds = false;
  }
  return cert;
}

BlowupWitness blowup_witness(const PoleSum& poles, std::size_t p,
                             const std::vector<Rational>& alphas,
                             std::optional<std::size_t> included_terms) {
  const auto& terms = poles.terms;
  if (p >= terms.size()) throw Error(ErrorCode::parameter_out_of_range, "term index out of range");
  const Rational& dp = terms[p].d;

  // tail[k] = sum_{j >= k} d_j
  std::vector<Rational> tail(terms.size() + 1, Rational(0));
  for (std::size_t k = terms.size(); k-- > 0;) tail[k] = tail[k + 1] + terms[k].d;

  BlowupWitness out;
  out.term = p;
  if (included_terms) {
    if (*included_terms > terms.size() || !(tail[*included_terms] < dp / 2)) {
      throw Error(ErrorCode::tail_condition_unsatisfiable,
                  "weights beyond the explicit sum are not below d_p / 2");
    }
    out.included_terms = *included_terms;
  } else {
    std::size_t count = p + 1;
    while (!(tail[count] < dp / 2)) ++count;
    out.included_terms = count;
  }

  const ComplexRational& lambda = terms[p].lambda;
  const ComplexRational& anchor = terms[p].anchor;
  const Rational anchor_dist2 = (lambda - anchor).norm2();
  const Rational anchor_dist_upper = sqrt_bounds(anchor_dist2).upper;
  for (const auto& alpha : alphas) {
    if (alpha <= 0 || alpha > 1) {
      throw Error(ErrorCode::parameter_out_of_range, "alpha must lie in (0, 1]");
    }
    BlowupPoint pt;
    pt.alpha = alpha;
    pt.z = alpha * anchor + (1 - alpha) * lambda;
    ComplexRational rest(0);
    for (std::size_t k = 0; k < out.included_terms; ++k) {
      if (k == p) continue;
      rest += ComplexRational(terms[k].d) / (terms[k].lambda - pt.z);
    }
    // |lambda_p - z| = alpha |lambda_p - z_p|
    const Rational dist_upper = alpha * anchor_dist_upper;
    pt.lower_bound = dp / (2 * dist_upper) - sqrt_bounds(rest.norm2()).upper;
    out.points.push_back(std::move(pt));
  }
  return out;
}

ComposeResult compose_pfr_domain(const DomainSpec& spec, std::size_t r, Index W,
                                 const ComposeOptions& options) {
  ValidationReport rep = validate_domain(spec);
  if (!rep.conditions_hold()) {
    throw Error(ErrorCode::domain_invalid, "domain fails conditions (A)-(C)");
  }
  if (!rep.T_exact) throw Error(ErrorCode::domain_invalid, "distance to the boundary is irrational");
  const Rational T = *rep.T_exact;

  DomainSpec scaled;
  scaled.symmetric = true;
  scaled.T = Rational(1);
  for (const auto& v : spec.vertices) scaled.vertices.push_back((1 / T) * v);

  PoleSum poles = build_pole_sum(scaled, options.terms);
  TaylorCertificate taylor = taylor_coeffs(poles, W, options.jobs);
  if (!taylor.real || !taylor.bound_holds) {
    throw Error(ErrorCode::geometry_degenerate, "pole sum coefficients failed their certificate");
  }
  const Rational C = taylor.bound + 1;
  PerturbationPlan plan = epsilon_bound(r, 0, C, options.mode, options.K.value_or(W), options.jobs);
  const CoeffSeq f = build_perturbed(taylor.real_coeffs(), r, plan.epsilon, W);
  CoeffSeq coeffs = scale_sequence(f, 1 / T);
  return ComposeResult{std::move(rep),   T, std::move(poles), std::move(taylor), std::move(plan),
                       std::move(coeffs)};
}

}  // namespace pfforge
