// pf_forge: command-line front end.
// Exit status: 0 pass/success, 1 mathematical failure with witness, 2 error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pfforge/deflation.hpp"
#include "pfforge/domain.hpp"
#include "pfforge/error.hpp"
#include "pfforge/json_io.hpp"
#include "pfforge/perturbation.hpp"
#include "pfforge/pf_check.hpp"
#include "pfforge/series.hpp"

using namespace pfforge;

namespace {

struct Common {
  std::string input;
  std::string output;
  std::size_t jobs = 1;
  std::string format;  // empty: subcommand default
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--input", c.input, "input JSON file (- for stdin)");
  sub->add_option("--output", c.output, "output file (default stdout)");
  sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

Json read_json(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::io_error, "--input is required");
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot read " + path);
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

// Output sink: a file when a path is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::io_error, "cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const std::string& path, const Json& j) {
  Sink s(path);
  s.out() << j.dump(2) << '\n';
}

void write_csv_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::io_error, "cannot write " + path);
  body(f);
}

std::uint64_t minor_budget() {
  const char* env = std::getenv("PF_FORGE_BUDGET");
  if (!env || !*env) return kDefaultMinorBudget;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || env[0] == '-') {
    throw Error(ErrorCode::parameter_out_of_range, "PF_FORGE_BUDGET must be a non-negative integer");
  }
  return v;
}

Rational rational_arg(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::parse_error, std::string(name) + ": " + e.what());
  }
}

std::vector<Rational> rational_list(const std::vector<std::string>& items, const char* name) {
  std::vector<Rational> out;
  for (const auto& s : items) out.push_back(rational_arg(s, name));
  return out;
}

void require_window_vs_r(Index W, std::size_t r) {
  if (W < static_cast<Index>(r)) {
    throw Error(ErrorCode::parameter_out_of_range,
                "window " + std::to_string(W) + " is shorter than r = " + std::to_string(r));
  }
}

// ---- check ----------------------------------------------------------------

struct CheckArgs {
  Common common;
  std::size_t r = 0;
  std::optional<Index> window;
  std::string method = "contiguous";
  bool ratio_evidence = false;
  bool normalized = false;
};

int run_check(const CheckArgs& a) {
  const Json in = read_json(a.common.input);
  CoeffSeq c = coeff_seq_from_json(in);
  if (a.normalized) c = CoeffSeq(c.coeffs(), true);
  require_window_vs_r(c.window(), a.r);
  Json out;
  PFStatus status;
  if (a.method == "all") {
    PFVerdict v = check_all_minors(c, a.r, a.window.value_or(c.window()),
                                   ScanOptions{minor_budget(), a.common.jobs});
    status = v.status;
    out = to_json(v);
  } else {
    const Index window = a.window.value_or(c.window() - static_cast<Index>(a.r) + 1);
    if (a.method == "schoenberg") {
      SchoenbergCertificate cert = schoenberg_certificate(c, a.r, window, a.ratio_evidence, a.common.jobs);
      status = cert.verdict.status;
      out = to_json(cert);
    } else {
      PFVerdict v = check_contiguous(c, a.r, window, a.common.jobs);
      status = v.status;
      out = to_json(v);
    }
  }
  emit_json(a.common.output, out);
  return status == PFStatus::fail ? 1 : 0;
}

// ---- perturb --------------------------------------------------------------

struct PerturbArgs {
  Common common;
  std::size_t r = 2;
  std::size_t alpha = 0;
  std::string g = "lacunary";
  std::string C;
  std::string mode = "windowed";
  Index K = 2000;
  std::optional<Index> window;
  bool margin = false;
};

int run_perturb(const PerturbArgs& a) {
  const Index needed = a.K + static_cast<Index>(a.r) - 1 + static_cast<Index>(a.alpha);
  const Index W = a.window.value_or(needed);
  if (W < 0) throw Error(ErrorCode::parameter_out_of_range, "window must be >= 0");
  require_window_vs_r(W, a.r);
  std::optional<CoeffSeq> g;
  Rational C;
  if (a.g == "lacunary") {
    g = lacunary_h(W + static_cast<Index>(a.alpha));
    C = 3;
  } else {
    g = coeff_seq_from_json(read_json(a.g == "file" ? a.common.input : a.g));
    Rational mx = 0;
    for (const auto& q : g->coeffs()) mx = std::max(mx, Rational(abs(q)));
    C = mx + 1;
  }
  if (!a.C.empty()) C = rational_arg(a.C, "--C");
  for (const auto& q : g->coeffs()) {
    if (abs(q) >= C) throw Error(ErrorCode::parameter_out_of_range, "some |g_k| >= C");
  }
  const PerturbationPlan plan = epsilon_bound(a.r, a.alpha, C, parse_plan_mode(a.mode), a.K, a.common.jobs);
  const CoeffSeq f = build_perturbed(*g, a.r, plan.epsilon, W);
  Json out{{"plan", to_json(plan)}, {"coeffs", to_json(f)["coeffs"]}};
  int code = 0;
  if (a.margin) {
    const MarginReport m = check_perturbation_margin(*g, plan, a.K, a.common.jobs);
    out["margin"] = to_json(m);
    if (!m.holds) code = 1;
  }
  if (a.common.format == "csv") {
    Sink s(a.common.output);
    write_coeff_csv(s.out(), f);
  } else {
    emit_json(a.common.output, out);
  }
  return code;
}

// ---- domain ---------------------------------------------------------------

struct DomainArgs {
  Common common;
  std::size_t N = 16;
  Index window = 100;
  std::vector<std::size_t> terms;
  std::vector<std::string> alphas;
  std::optional<std::size_t> included;
  std::string blowup_csv;
};

std::vector<Rational> default_alphas() {
  std::vector<Rational> out;
  for (int j = 1; j <= 40; ++j) out.push_back(Rational(1) / pow(Rational(2), static_cast<std::uint64_t>(j)));
  return out;
}

int run_domain(const DomainArgs& a) {
  const DomainSpec spec = domain_from_json(read_json(a.common.input));
  const PoleSum poles = build_pole_sum(spec, a.N);
  const TaylorCertificate taylor = taylor_coeffs(poles, a.window, a.common.jobs);
  const std::vector<Rational> alphas = a.alphas.empty() ? default_alphas() : rational_list(a.alphas, "--alphas");
  std::vector<BlowupWitness> witnesses;
  for (std::size_t p : a.terms) witnesses.push_back(blowup_witness(poles, p, alphas, a.included));

  Json out{{"poles", to_json(poles)}, {"taylor", to_json(taylor)}};
  out["coeffs"] = taylor.real ? to_json(taylor.real_coeffs())["coeffs"] : Json(nullptr);
  Json bw = Json::array();
  for (const auto& w : witnesses) bw.push_back(to_json(w));
  out["blowup"] = std::move(bw);

  if (!a.blowup_csv.empty()) {
    write_csv_file(a.blowup_csv, [&](std::ostream& os) {
      os << "term,alpha,lower_bound\n";
      for (const auto& w : witnesses) {
        std::ostringstream one;
        write_blowup_csv(one, w);
        std::istringstream rows(one.str());
        std::string line;
        std::getline(rows, line);  // header
        while (std::getline(rows, line)) os << w.term << ',' << line << '\n';
      }
    });
  }
  if (a.common.format == "csv") {
    Sink s(a.common.output);
    write_taylor_csv(s.out(), taylor);
  } else {
    emit_json(a.common.output, out);
  }
  return taylor.bound_holds ? 0 : 1;
}

// ---- compose --------------------------------------------------------------

struct ComposeArgs {
  Common common;
  std::size_t r = 2;
  Index window = 100;
  std::size_t N = 16;
  std::string mode = "windowed";
  std::optional<Index> K;
  bool verify = false;
};

int run_compose(const ComposeArgs& a) {
  require_window_vs_r(a.window, a.r);
  const DomainSpec spec = domain_from_json(read_json(a.common.input));
  ComposeOptions opts;
  opts.terms = a.N;
  opts.mode = parse_plan_mode(a.mode);
  opts.K = a.K;
  opts.jobs = a.common.jobs;
  const ComposeResult res = compose_pfr_domain(spec, a.r, a.window, opts);
  Json out{{"validation", to_json(res.validation)},
           {"T", to_json(res.T)},
           {"poles", to_json(res.poles)},
           {"plan", to_json(res.plan)},
           {"coeffs", to_json(res.coeffs)["coeffs"]}};
  int code = 0;
  if (a.verify) {
    const PFVerdict v = check_contiguous(res.coeffs, a.r, a.window - static_cast<Index>(a.r) + 1, a.common.jobs);
    out["verdict"] = to_json(v);
    if (!v.passed()) code = 1;
  }
  if (a.common.format == "csv") {
    Sink s(a.common.output);
    write_coeff_csv(s.out(), res.coeffs);
  } else {
    emit_json(a.common.output, out);
  }
  return code;
}

// ---- deflate --------------------------------------------------------------

struct DeflateArgs {
  Common common;
  std::string T;
  std::size_t steps = 1;
  std::optional<std::size_t> r;
  std::optional<Index> window;
  bool allow_nonpositive = false;
};

int run_deflate(const DeflateArgs& a) {
  const CoeffSeq c = coeff_seq_from_json(read_json(a.common.input));
  std::optional<RadiusBracket> bracket;
  Rational T;
  if (a.T == "estimate") {
    bracket = estimate_radius(c);
    T = bracket->T_lo;
  } else {
    T = rational_arg(a.T, "--T");
  }
  DeflateOptions opts;
  opts.allow_nonpositive = a.allow_nonpositive;
  opts.verdict_order = a.r;
  opts.verdict_window = a.window;
  opts.scan = ScanOptions{minor_budget(), a.common.jobs};
  const DeflationResult d = deflate(c, T, a.steps, opts);
  if (a.common.format == "csv") {
    Sink s(a.common.output);
    write_coeff_csv(s.out(), d.deflated);
  } else {
    Json out = to_json(d);
    if (bracket) out["radius"] = to_json(*bracket);
    emit_json(a.common.output, out);
  }
  return d.verdict && !d.verdict->passed() ? 1 : 0;
}

// ---- limit ----------------------------------------------------------------

struct LimitArgs {
  Common common;
  std::string T;
  std::size_t power = 1;
  std::vector<std::string> xs;
};

int run_limit(const LimitArgs& a) {
  const CoeffSeq c = coeff_seq_from_json(read_json(a.common.input));
  const BoundaryLimitReport rep = boundary_limit(c, rational_arg(a.T, "--T"), a.power, rational_list(a.xs, "--xs"));
  if (a.common.format == "json") {
    emit_json(a.common.output, to_json(rep));
  } else {
    Sink s(a.common.output);
    write_limit_csv(s.out(), rep);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks and constructions for Polya frequency sequences of finite order"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* sc = app.add_subcommand("check", "verify a coefficient window");
  add_common(sc, check.common);
  sc->add_option("--r", check.r, "order")->required()->check(CLI::PositiveNumber);
  sc->add_option("--window", check.window, "last k (contiguous) or last index (all)");
  sc->add_option("--method", check.method)->check(CLI::IsMember({"all", "contiguous", "schoenberg"}));
  sc->add_flag("--ratio-evidence", check.ratio_evidence, "attach coefficient ratio diagnostics");
  sc->add_flag("--normalized", check.normalized, "require c_0 = 1");

  PerturbArgs perturb;
  auto* sp = app.add_subcommand("perturb", "epsilon plan for 1/(1-z)^{r^2} + eps g");
  add_common(sp, perturb.common);
  sp->add_option("--r", perturb.r)->check(CLI::PositiveNumber);
  sp->add_option("--alpha", perturb.alpha, "highest derivative covered");
  sp->add_option("--g", perturb.g, "lacunary, file (uses --input) or a JSON path");
  sp->add_option("--C", perturb.C, "strict bound on |g_k|");
  sp->add_option("--mode", perturb.mode)->check(CLI::IsMember({"certified", "windowed"}));
  sp->add_option("--K", perturb.K, "scan bound")->check(CLI::NonNegativeNumber);
  sp->add_option("--window", perturb.window, "last coefficient emitted");
  sp->add_flag("--margin", perturb.margin, "check minor > S_0/2 for k <= K");

  DomainArgs domain;
  auto* sd = app.add_subcommand("domain", "pole sum with bounded Taylor coefficients");
  add_common(sd, domain.common);
  sd->add_option("--N", domain.N, "number of boundary points")->check(CLI::PositiveNumber);
  sd->add_option("--window", domain.window, "last Taylor coefficient")->check(CLI::NonNegativeNumber);
  sd->add_option("--term", domain.terms, "term index for a blow-up witness (repeatable)");
  sd->add_option("--alphas", domain.alphas, "segment parameters in (0,1]");
  sd->add_option("--included", domain.included, "explicit N_p");
  sd->add_option("--blowup-csv", domain.blowup_csv, "write term,alpha,lower_bound here");

  ComposeArgs compose;
  auto* so = app.add_subcommand("compose", "PF_r function whose domain of holomorphy is the input polygon");
  add_common(so, compose.common);
  so->add_option("--r", compose.r)->check(CLI::PositiveNumber);
  so->add_option("--window", compose.window)->check(CLI::NonNegativeNumber);
  so->add_option("--N", compose.N, "number of pole terms")->check(CLI::PositiveNumber);
  so->add_option("--mode", compose.mode)->check(CLI::IsMember({"certified", "windowed"}));
  so->add_option("--K", compose.K);
  so->add_flag("--verify", compose.verify, "run the contiguous check on the output");

  DeflateArgs deflate_args;
  auto* sf = app.add_subcommand("deflate", "multiply by (1 - z/T)");
  add_common(sf, deflate_args.common);
  sf->add_option("--T", deflate_args.T, "radius, or 'estimate'")->required();
  sf->add_option("--steps", deflate_args.steps)->check(CLI::PositiveNumber);
  sf->add_option("--r", deflate_args.r, "input order; checks order r - steps on the output");
  sf->add_option("--window", deflate_args.window, "window for that check");
  sf->add_flag("--allow-nonpositive", deflate_args.allow_nonpositive);

  LimitArgs limit;
  auto* sl = app.add_subcommand("limit", "(1 - x/T)^power * partial sums");
  add_common(sl, limit.common);
  sl->add_option("--T", limit.T)->required();
  sl->add_option("--power", limit.power);
  sl->add_option("--xs", limit.xs, "increasing points in (0, T)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sc) return run_check(check);
    if (*sp) return run_perturb(perturb);
    if (*sd) return run_domain(domain);
    if (*so) return run_compose(compose);
    if (*sf) return run_deflate(deflate_args);
    if (*sl) return run_limit(limit);
  } catch (const Error& e) {
    std::cerr << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
