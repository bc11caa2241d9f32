#include "pfforge/json_io.hpp"

#include "pfforge/error.hpp"

namespace pfforge {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

// Runs a decoder, turning library exceptions into parse_error.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

Json opt(const std::optional<Rational>& q) { return q ? to_json(*q) : Json(nullptr); }

std::optional<Rational> opt_rational(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return rational_from_json(*it);
}

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

std::vector<Rational> rationals_from(const Json& j) {
  if (!j.is_array()) bad("expected an array of rationals");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  bad("rational must be a \"p/q\" string");
}

Json to_json(const ComplexRational& z) { return Json{{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }

ComplexRational complex_from_json(const Json& j) {
  return {rational_from_json(field(j, "re")), rational_from_json(field(j, "im"))};
}

Json to_json(const CoeffSeq& c) { return Json{{"coeffs", rationals(c.coeffs())}}; }

CoeffSeq coeff_seq_from_json(const Json& j) {
  if (j.is_array()) return CoeffSeq(rationals_from(j));
  return CoeffSeq(rationals_from(field(j, "coeffs")));
}

Json to_json(const MinorSpec& spec) { return Json{{"rows", spec.rows}, {"cols", spec.cols}}; }

MinorSpec minor_spec_from_json(const Json& j) {
  return guarded("minor", [&] {
    MinorSpec s{field(j, "rows").get<std::vector<Index>>(), field(j, "cols").get<std::vector<Index>>()};
    return s;
  });
}

Json to_json(const PFVerdict& v) {
  Json j{{"status", to_string(v.status)}, {"r", v.order_checked}, {"window", v.window}};
  if (v.witness) {
    Json w = to_json(v.witness->spec);
    w["det"] = to_json(v.witness->det);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["gap"] = opt(v.strictness_gap);
  return j;
}

PFVerdict verdict_from_json(const Json& j) {
  return guarded("verdict", [&] {
    PFVerdict v;
    v.status = parse_pf_status(field(j, "status").get<std::string>());
    v.order_checked = field(j, "r").get<std::size_t>();
    v.window = field(j, "window").get<Index>();
    const Json& w = field(j, "witness");
    if (!w.is_null()) v.witness = MinorWitness{minor_spec_from_json(w), rational_from_json(field(w, "det"))};
    v.strictness_gap = opt_rational(j, "gap");
    return v;
  });
}

Json to_json(const SchoenbergCertificate& cert) {
  Json j{{"verdict", to_json(cert.verdict)}, {"certified", cert.certified}, {"label", cert.label}};
  if (cert.ratios) {
    const auto& r = *cert.ratios;
    j["ratios"] = Json{{"zero_indices", r.zero_indices},
                       {"max_ratio", opt(r.max_ratio)},
                       {"last_ratio", opt(r.last_ratio)},
                       {"non_increasing", r.non_increasing},
                       {"bounded", r.bounded}};
  } else {
    j["ratios"] = nullptr;
  }
  return j;
}

Json to_json(const PerturbationPlan& plan) {
  Json entries = Json::array();
  for (const auto& e : plan.entries) {
    Json je{{"n", e.n},
            {"p", e.p},
            {"M", to_json(e.M)},
            {"sup_ratio", to_json(e.sup_ratio)},
            {"argmax_k", e.argmax_k},
            {"epsilon_np", to_json(e.epsilon_np)}};
    if (e.tail) {
      je["tail"] = Json{{"threshold", e.tail->threshold},
                        {"a_hat", to_json(e.tail->a_hat)},
                        {"tail_bound", to_json(e.tail->tail_bound)},
                        {"scan_max", to_json(e.tail->scan_max)}};
    } else {
      je["tail"] = nullptr;
    }
    entries.push_back(std::move(je));
  }
  return Json{{"mode", to_string(plan.mode)},
              {"r", plan.r},
              {"alpha", plan.alpha},
              {"C", to_json(plan.C)},
              {"C_p", rationals(plan.C_p)},
              {"B", to_json(plan.B)},
              {"K_checked", plan.K_checked},
              {"epsilon", to_json(plan.epsilon)},
              {"entries", std::move(entries)}};
}

PerturbationPlan plan_from_json(const Json& j) {
  return guarded("plan", [&] {
    PerturbationPlan plan;
    plan.mode = parse_plan_mode(field(j, "mode").get<std::string>());
    plan.r = field(j, "r").get<std::size_t>();
    plan.alpha = field(j, "alpha").get<std::size_t>();
    plan.C = rational_from_json(field(j, "C"));
    plan.C_p = rationals_from(field(j, "C_p"));
    plan.B = rational_from_json(field(j, "B"));
    plan.K_checked = field(j, "K_checked").get<Index>();
    plan.epsilon = rational_from_json(field(j, "epsilon"));
    for (const auto& je : field(j, "entries")) {
      PlanEntry e;
      e.n = field(je, "n").get<std::size_t>();
      e.p = field(je, "p").get<std::size_t>();
      e.M = rational_from_json(field(je, "M"));
      e.sup_ratio = rational_from_json(field(je, "sup_ratio"));
      e.argmax_k = field(je, "argmax_k").get<Index>();
      e.epsilon_np = rational_from_json(field(je, "epsilon_np"));
      const Json& t = field(je, "tail");
      if (!t.is_null()) {
        e.tail = TailRecord{field(t, "threshold").get<Index>(), rational_from_json(field(t, "a_hat")),
                            rational_from_json(field(t, "tail_bound")),
                            rational_from_json(field(t, "scan_max"))};
      }
      plan.entries.push_back(std::move(e));
    }
    return plan;
  });
}

Json to_json(const MarginReport& report) {
  auto o = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"holds", report.holds},       {"checked", report.checked},
              {"fail_p", o(report.fail_p)},  {"fail_n", o(report.fail_n)},
              {"fail_k", o(report.fail_k)},  {"min_ratio", to_json(report.min_ratio)}};
}

Json to_json(const DomainSpec& spec) {
  Json v = Json::array();
  for (const auto& z : spec.vertices) v.push_back(to_json(z));
  Json j{{"vertices", std::move(v)}, {"symmetric", spec.symmetric}};
  if (spec.T) j["T"] = to_json(*spec.T);
  return j;
}

DomainSpec domain_from_json(const Json& j) {
  return guarded("domain", [&] {
    DomainSpec spec;
    const Json& v = field(j, "vertices");
    if (!v.is_array()) bad("vertices must be an array");
    for (const auto& z : v) spec.vertices.push_back(complex_from_json(z));
    if (auto it = j.find("symmetric"); it != j.end()) spec.symmetric = it->get<bool>();
    spec.T = opt_rational(j, "T");
    return spec;
  });
}

Json to_json(const ValidationReport& r) {
  return Json{{"contains_origin", r.contains_origin},
              {"symmetric", r.symmetric},
              {"nearest_on_positive_axis", r.nearest_on_positive_axis},
              {"contains_unit_disc", r.contains_unit_disc},
              {"conditions_hold", r.conditions_hold()},
              {"dist2", to_json(r.dist2)},
              {"T_exact", opt(r.T_exact)},
              {"T_lower", to_json(r.T_lower)},
              {"T_upper", to_json(r.T_upper)},
              {"notes", r.notes}};
}

ValidationReport validation_from_json(const Json& j) {
  return guarded("validation", [&] {
    ValidationReport r;
    r.contains_origin = field(j, "contains_origin").get<bool>();
    r.symmetric = field(j, "symmetric").get<bool>();
    r.nearest_on_positive_axis = field(j, "nearest_on_positive_axis").get<bool>();
    r.contains_unit_disc = field(j, "contains_unit_disc").get<bool>();
    r.dist2 = rational_from_json(field(j, "dist2"));
    r.T_exact = opt_rational(j, "T_exact");
    r.T_lower = rational_from_json(field(j, "T_lower"));
    r.T_upper = rational_from_json(field(j, "T_upper"));
    r.notes = field(j, "notes").get<std::vector<std::string>>();
    return r;
  });
}

Json to_json(const PoleSum& poles) {
  Json terms = Json::array();
  for (const auto& t : poles.terms) {
    terms.push_back(Json{{"lambda", to_json(t.lambda)},
                         {"d", to_json(t.d)},
                         {"anchor", to_json(t.anchor)},
                         {"zeta", to_json(t.zeta)},
                         {"n", t.n}});
  }
  return Json{{"terms", std::move(terms)}, {"weight_sum", to_json(poles.weight_sum())}};
}

PoleSum pole_sum_from_json(const Json& j) {
  return guarded("pole sum", [&] {
    PoleSum ps;
    for (const auto& t : field(j, "terms")) {
      ps.terms.push_back(PoleTerm{complex_from_json(field(t, "lambda")), rational_from_json(field(t, "d")),
                                  complex_from_json(field(t, "anchor")),
                                  complex_from_json(field(t, "zeta")), field(t, "n").get<Index>()});
    }
    return ps;
  });
}

Json to_json(const TaylorCertificate& cert) {
  Json b = Json::array();
  for (const auto& z : cert.b) b.push_back(to_json(z));
  return Json{{"b", std::move(b)},
              {"bound", to_json(cert.bound)},
              {"real", cert.real},
              {"bound_holds", cert.bound_holds}};
}

TaylorCertificate taylor_from_json(const Json& j) {
  return guarded("taylor", [&] {
    TaylorCertificate cert;
    for (const auto& z : field(j, "b")) cert.b.push_back(complex_from_json(z));
    cert.bound = rational_from_json(field(j, "bound"));
    cert.real = field(j, "real").get<bool>();
    cert.bound_holds = field(j, "bound_holds").get<bool>();
    return cert;
  });
}

Json to_json(const BlowupWitness& w) {
  Json pts = Json::array();
  for (const auto& p : w.points) {
    pts.push_back(Json{{"alpha", to_json(p.alpha)}, {"z", to_json(p.z)}, {"lower_bound", to_json(p.lower_bound)}});
  }
  return Json{{"term", w.term}, {"included_terms", w.included_terms}, {"points", std::move(pts)}};
}

Json to_json(const DeflationResult& d) {
  Json j = to_json(d.deflated);
  j["T"] = to_json(d.T);
  j["steps"] = d.steps;
  j["verdict"] = d.verdict ? to_json(*d.verdict) : Json(nullptr);
  return j;
}

DeflationResult deflation_from_json(const Json& j) {
  return guarded("deflation", [&] {
    DeflationResult d{coeff_seq_from_json(j), rational_from_json(field(j, "T")),
                      field(j, "steps").get<std::size_t>(), std::nullopt};
    if (auto it = j.find("verdict"); it != j.end() && !it->is_null()) d.verdict = verdict_from_json(*it);
    return d;
  });
}

Json to_json(const RadiusBracket& b) {
  return Json{{"T_lo", to_json(b.T_lo)},
              {"T_hi", b.T_hi ? to_json(*b.T_hi) : Json("inf")},
              {"non_increasing", b.non_increasing},
              {"violations", b.violations}};
}

Json to_json(const BoundaryLimitReport& rep) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < rep.xs.size(); ++i) {
    rows.push_back(Json{{"x", to_json(rep.xs[i])},
                        {"value", to_json(rep.values[i])},
                        {"tail_estimate", opt(rep.tail_estimates[i])},
                        {"tail_flag", static_cast<bool>(rep.tail_flags[i])}});
  }
  return Json{{"points", std::move(rows)}};
}

namespace {

// Plot tables carry a 20-digit decimal; the exact value lives in the JSON.
std::string decimal(const Rational& q) {
  mpf_class f(q, 256);
  mp_exp_t exp = 0;
  std::string digits = f.get_str(exp, 10, 20);
  if (digits.empty()) return "0";
  std::string sign;
  if (digits[0] == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  std::string out = sign + digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp) - 1);
  return out;
}

}  // namespace

void write_coeff_csv(std::ostream& out, const CoeffSeq& c) {
  out << "k,coeff\n";
  for (std::size_t k = 0; k < c.size(); ++k) out << k << ',' << to_string(c[k]) << '\n';
}

void write_taylor_csv(std::ostream& out, const TaylorCertificate& cert) {
  out << "n,b_n\n";
  for (std::size_t n = 0; n < cert.b.size(); ++n) {
    const auto& z = cert.b[n];
    out << n << ',' << to_string(z.re);
    if (!z.is_real()) out << (z.im < 0 ? "" : "+") << to_string(z.im) << 'i';
    out << '\n';
  }
}

void write_limit_csv(std::ostream& out, const BoundaryLimitReport& rep) {
  out << "x,value\n";
  for (std::size_t i = 0; i < rep.xs.size(); ++i) {
    out << to_string(rep.xs[i]) << ',' << decimal(rep.values[i]) << '\n';
  }
}

void write_blowup_csv(std::ostream& out, const BlowupWitness& w) {
  out << "alpha,lower_bound\n";
  for (const auto& p : w.points) out << to_string(p.alpha) << ',' << decimal(p.lower_bound) << '\n';
}

}  // namespace pfforge
