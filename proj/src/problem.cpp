#include "orbitframes/problem.hpp"

#include "orbitframes/errors.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace orbitframes {

using io::Json;

namespace {

constexpr int kMaxOrbitLength = 200000;
constexpr int kMaxDimension = 2048;
constexpr double kContainmentSlack = 1e-6;
constexpr int kLowerNormSamples = 5;

const char* kDeltaFormula = "Delta = 2 delta^-4 (1 - 2 log delta)";

// Typed access to one "parameters" object that remembers which keys were read
// so that leftovers can be reported as unknown.
class Params {
 public:
  Params(const Json& j, std::string kind) : j_(j), kind_(std::move(kind)) {
    if (!j_.is_object()) throw InputError(kind_ + ": \"parameters\" must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const Json& required(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw InputError(where(key) + " is required");
    return j_.at(key);
  }

  const Json* optional(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  int integer(const std::string& key, std::optional<int> fallback, int lo, int hi) {
    const Json* v = fallback ? optional(key) : &required(key);
    if (!v) return *fallback;
    if (!v->is_number_integer()) throw InputError(where(key) + " must be an integer");
    const auto x = v->get<long long>();
    if (x < lo || x > hi) {
      throw InputError(where(key) + " = " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
    }
    return static_cast<int>(x);
  }

  double number(const std::string& key, std::optional<double> fallback) {
    const Json* v = fallback ? optional(key) : &required(key);
    if (!v) return *fallback;
    if (!v->is_number()) throw InputError(where(key) + " must be a number");
    return v->get<double>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const Json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw InputError(where(key) + " must be true or false");
    return v->get<bool>();
  }

  std::string choice(const std::string& key, const std::vector<std::string>& allowed, std::string fallback) {
    const Json* v = optional(key);
    if (!v) return fallback;
    if (v->is_string()) {
      const auto s = v->get<std::string>();
      if (std::find(allowed.begin(), allowed.end(), s) != allowed.end()) return s;
    }
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw InputError(where(key) + " must be one of: " + list);
  }

  std::string where(const std::string& key) const { return kind_ + ".parameters." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw InputError(where(it.key()) + " is not a recognized parameter");
    }
  }

 private:
  const Json& j_;
  std::string kind_;
  std::set<std::string> seen_;
};

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns) {
  std::ostringstream os;
  io::write_columns_csv(os, header, columns);
  return os.str();
}

std::string matrix_csv(const MatrixXcd& m) {
  std::ostringstream os;
  io::write_matrix_csv(os, m);
  return os.str();
}

// n_max, n_max/2, n_max/4, n_max/8 (distinct, ascending).
std::vector<int> truncation_ladder(int n_max) {
  std::vector<int> out;
  for (int div : {8, 4, 2, 1}) {
    const int n = n_max / div;
    if (out.empty() || out.back() != n) out.push_back(n);
  }
  return out;
}

CsvFile bounds_curve(const OrbitSpec& spec) {
  std::vector<double> ns, lower, upper, defect;
  for (int n : truncation_ladder(spec.n_max)) {
    OrbitSpec s = spec;
    s.n_max = n;
    const FrameReport r = frame_bounds(s);
    ns.push_back(n);
    lower.push_back(r.lower_bound);
    upper.push_back(r.upper_bound);
    defect.push_back(r.parseval_defect);
  }
  return {"bounds", to_csv({"n_max", "lower_bound", "upper_bound", "parseval_defect"}, {ns, lower, upper, defect})};
}

Json lower_norm_samples(const OrbitSpec& spec, const RunOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  Json checks = Json::array();
  double worst = 1e300;
  bool all_hold = true;
  for (int s = 0; s < kLowerNormSamples; ++s) {
    VectorXcd f(spec.T.rows());
    for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = Complex(gauss(rng), gauss(rng));
    const LowerNormCheck c = lower_norm_check(spec, f, -spec.n_max, spec.n_max);
    worst = std::min(worst, c.min_ratio);
    all_hold = all_hold && c.holds;
    checks.push_back(Json{{"min_ratio", c.min_ratio}, {"bound", c.bound}, {"holds", c.holds}});
  }
  return Json{{"samples", checks}, {"min_ratio", worst}, {"all_hold", all_hold}};
}

std::string index_set_name(IndexSet s) { return s == IndexSet::Natural ? "N" : "Z"; }

// --- carleson ---------------------------------------------------------------

RunResult run_carleson(Params& p) {
  const ZeroSequence<double> zeros = io::zeros_from_json(p.required("zeros"), p.where("zeros"));
  p.finish();
  if (zeros.size() == 0) throw InputError(p.where("zeros") + " must not be empty");

  RunResult out;
  const double delta = carleson_delta(zeros);
  Json results{{"count", zeros.size()}, {"delta", delta}, {"uniformly_separated", delta > 0.0}};
  Json cert{{"Delta", {{"formula", kDeltaFormula}, {"value", nullptr}}}};
  if (delta > 0.0) {
    const double Delta = delta_capacity(delta);
    results["Delta"] = Delta;
    cert["Delta"]["value"] = Delta;
  } else {
    results["Delta"] = nullptr;
  }
  out.report["results"] = results;
  out.report["certificates"] = cert;
  return out;
}

// --- model_space ------------------------------------------------------------

RunResult run_model_space(Params& p, const RunOptions& options) {
  const ZeroSequence<double> zeros = io::zeros_from_json(p.required("zeros"), p.where("zeros"));
  const int trunc = p.integer("trunc", default_truncation(static_cast<int>(std::max<std::size_t>(zeros.size(), 1))),
                              1, options.max_trunc);
  const int n_max = p.integer("n_max", 200, 0, kMaxOrbitLength);
  const Json* fj = p.optional("f");
  std::optional<VectorXcd> f;
  if (fj) f = io::vector_from_json(*fj, p.where("f"));
  p.finish();

  ModelSpaceOptions mso;
  mso.max_trunc = options.max_trunc;
  const ModelSpace ms = build_model_space(BlaschkeProduct<double>(zeros), trunc, mso);
  const VectorXcd v = f.value_or(ms.phi());
  if (v.size() != ms.dim()) throw InputError(p.where("f") + " must have dimension " + std::to_string(ms.dim()));

  const OrbitSpec orbit_spec{ms.shift_matrix(), ms.phi(), IndexSet::Natural, n_max};
  const FrameReport fr = frame_bounds(orbit_spec);
  const auto direct = decay_profile(ms, v, n_max);
  const auto tail = decay_profile_tail_sum(ms, v, n_max);
  double agreement = 0.0;
  for (std::size_t n = 0; n < direct.size(); ++n) agreement = std::max(agreement, std::abs(direct[n] - tail[n]));

  RunResult out;
  Json results = io::model_space_summary(ms);
  results["minimal_polynomial_residual"] = minimal_polynomial_check(ms);
  results["spectral_norm"] = spectral_norm(ms.shift_matrix());
  results["orbit_frame"] = io::to_json(fr);
  results["decay"] = Json{{"initial", direct.front()},
                          {"final", direct.back()},
                          {"routes_max_difference", agreement}};
  out.report["results"] = results;

  std::vector<double> ns(direct.size());
  for (std::size_t n = 0; n < ns.size(); ++n) ns[n] = static_cast<double>(n);
  out.csv.push_back({"decay", to_csv({"n", "norm_direct", "norm_tail_sum"}, {ns, direct, tail})});
  out.csv.push_back(bounds_curve(orbit_spec));
  return out;
}

// --- orbit_analysis ---------------------------------------------------------

RunResult run_orbit_analysis(Params& p, const RunOptions& options) {
  OrbitSpec spec;
  spec.T = io::matrix_from_json(p.required("T"), p.where("T"));
  spec.f0 = io::vector_from_json(p.required("f0"), p.where("f0"));
  spec.index_set = p.choice("index_set", {"N", "Z"}, "N") == "N" ? IndexSet::Natural : IndexSet::Integer;
  spec.n_max = p.integer("n_max", std::nullopt, 0, kMaxOrbitLength);
  const bool closure = p.boolean("closure", true);
  const bool synthesis_csv = p.boolean("synthesis_csv", false);
  p.finish();
  if (spec.T.rows() > kMaxDimension) throw InputError(p.where("T") + " is larger than the supported dimension");
  validate(spec);

  RunResult out;
  const MatrixXcd U = synthesis_matrix(spec);
  Json results;
  results["dimension"] = spec.T.rows();
  results["index_set"] = index_set_name(spec.index_set);
  results["spectral_radius"] = spectral_radius(spec.T);
  results["frame"] = io::to_json(frame_bounds(spec));

  if (closure) {
    ClosureOptions co;
    co.rank_tol = options.tol;
    const double residual = kernel_shift_invariance(U, options.tol);
    Json gen{{"kernel_shift_invariance", residual}, {"invariance_tol", co.invariance_tol}};
    if (residual < co.invariance_tol) {
      const MatrixXcd X = generator_closure(U, co);
      gen["boundedly_generated"] = true;
      gen["generator"] = io::to_json(X);
      gen["distance_to_T"] = spectral_norm(X - spec.T);
      gen["orbit_residual"] = spectral_norm(X * U.leftCols(U.cols() - 1) - U.rightCols(U.cols() - 1));
    } else {
      gen["boundedly_generated"] = false;
    }
    results["closure"] = gen;
  }
  if (spec.index_set == IndexSet::Integer) {
    results["unitarity_defect"] = unitarity_defect(spec);
    const auto period = orbit_period(spec, options.tol);
    results["period"] = period ? Json(*period) : Json(nullptr);
    results["lower_norm_check"] = lower_norm_samples(spec, options);
  }
  out.report["results"] = results;
  out.csv.push_back(bounds_curve(spec));
  if (synthesis_csv) out.csv.push_back({"synthesis", matrix_csv(U)});
  return out;
}

// --- normal_construction ----------------------------------------------------

RunResult run_normal_construction(Params& p) {
  const ZeroSequence<double> zeros = io::zeros_from_json(p.required("zeros"), p.where("zeros"));
  const std::vector<Complex> coeffs = io::complex_list_from_json(p.required("coeffs"), p.where("coeffs"));
  const int n_max = p.integer("n_max", 400, 0, kMaxOrbitLength);
  std::optional<MatrixXcd> W;
  if (const Json* wj = p.optional("W")) W = io::matrix_from_json(*wj, p.where("W"));
  std::optional<double> tail;
  if (p.has("coefficient_tail")) tail = p.number("coefficient_tail", std::nullopt);
  p.finish();

  const NormalOrbitSpec spec = make_normal_orbit_spec(zeros, coeffs, tail);
  RunResult out;
  Json results{{"spec", io::to_json(spec)}};
  Json certs;
  OrbitSpec orbit;
  BoundInterval cert;
  if (W) {
    const RieszConstruction rc = build_riesz_pair(spec, *W, n_max);
    orbit = rc.orbit;
    cert = rc.certificate;
    results["riesz_bounds"] = Json{{"lower", rc.riesz_lower}, {"upper", rc.riesz_upper}};
    results["biorthogonality_residual"] =
        spectral_norm(rc.g.adjoint() * rc.g_dual - MatrixXcd::Identity(rc.g.cols(), rc.g.cols()));
    certs["frame_bounds"] = Json{{"formula", "[alpha / (Delta B), beta Delta / A], A, B Riesz bounds of g_j"},
                                 {"value", io::to_json(cert)}};
  } else {
    orbit = build_normal_pair(spec, n_max);
    cert = certificate_bounds(spec);
    certs["frame_bounds"] = Json{{"formula", "[alpha / Delta, beta Delta]"}, {"value", io::to_json(cert)}};
  }
  certs["Delta"] = Json{{"formula", kDeltaFormula}, {"value", *spec.Delta}};
  const FrameReport fr = frame_bounds(orbit);
  results["measured"] = io::to_json(fr);
  results["contained"] = cert.contains(fr.lower_bound, fr.upper_bound, kContainmentSlack);
  out.report["results"] = results;
  out.report["certificates"] = certs;
  out.csv.push_back(bounds_curve(orbit));
  return out;
}

// --- perturbation -----------------------------------------------------------

RunResult run_perturbation(Params& p) {
  const ZeroSequence<double> zeros = io::zeros_from_json(p.required("zeros"), p.where("zeros"));
  const std::vector<Complex> coeffs = io::complex_list_from_json(p.required("coeffs"), p.where("coeffs"));
  const int J = static_cast<int>(zeros.size());
  const int k = p.integer("k", std::nullopt, 0, std::max(J - 1, 0));
  const int l = p.integer("l", std::nullopt, 0, std::max(J - 1, 0));
  const Complex tau = io::complex_from_json(p.required("tau"), p.where("tau"));
  const int n_max = p.integer("n_max", 400, 0, kMaxOrbitLength);
  p.finish();

  const PerturbedConstruction pc = perturb_tau(zeros, coeffs, k, l, tau, n_max);
  const MatrixXcd& T = pc.orbit.T;
  const MatrixXcd comm = T * T.adjoint() - T.adjoint() * T;
  Eigen::ComplexEigenSolver<MatrixXcd> es(T, false);
  const FrameReport fr = frame_bounds(pc.orbit);

  RunResult out;
  out.report["results"] = Json{
      {"excluded_tau", io::to_json(excluded_tau(zeros, coeffs, k, l))},
      {"T", io::to_json(T)},
      {"eigenvalues", io::to_json(VectorXcd(es.eigenvalues()))},
      {"non_normality", {{"commutator_norm", spectral_norm(comm)},
                         {"kk_discrepancy", std::abs(comm(k, k))},
                         {"tau_squared", std::norm(tau)}}},
      {"biorthogonality_residual", pc.biorthogonality_residual},
      {"diagonalization_residual", pc.diagonalization_residual},
      {"riesz_bounds", {{"lower", pc.riesz_lower}, {"upper", pc.riesz_upper}}},
      {"alpha", pc.alpha},
      {"beta", pc.beta},
      {"measured", io::to_json(fr)},
      {"contained", pc.certificate.contains(fr.lower_bound, fr.upper_bound, kContainmentSlack)}};
  out.report["certificates"] =
      Json{{"frame_bounds", {{"formula", "[alpha / (Delta B), beta Delta / A], A, B Riesz bounds of g_j"},
                             {"value", io::to_json(pc.certificate)}}}};
  out.csv.push_back(bounds_curve(pc.orbit));
  return out;
}

// --- biinfinite -------------------------------------------------------------

RunResult run_biinfinite(Params& p, const RunOptions& options) {
  const ArcSet sigma = io::arcs_from_json(p.required("arcs"), p.where("arcs"));
  const int M = p.integer("M", std::nullopt, 2, kMaxDimension);
  const int n_max = p.integer("n_max", M, 0, kMaxOrbitLength);
  const OrbitWindow window =
      p.choice("window", {"symmetric", "one_period"}, "symmetric") == "one_period" ? OrbitWindow::OnePeriod
                                                                                   : OrbitWindow::Symmetric;
  std::optional<std::vector<Complex>> psi;
  if (const Json* pj = p.optional("psi")) psi = io::complex_list_from_json(*pj, p.where("psi"));
  const double psi_floor = p.number("psi_floor", 1e-8);
  p.finish();

  const GridModel grid = build_grid(sigma, M);
  const OrbitSpec spec = build_multiplication_pair(sigma, M, n_max);
  RunResult out;
  Json results{{"arcs", io::to_json(sigma)},
               {"arc_measure", sigma.measure()},
               {"mask_count", grid.mask_count()},
               {"grid_measure", grid.measure()},
               {"window", window == OrbitWindow::OnePeriod ? "one_period" : "symmetric"},
               {"parseval_defect", parseval_defect(sigma, M, n_max, window)},
               {"one_period", io::to_json(one_period_bounds({spec.T, spec.f0}, M))},
               {"unitarity_defect", unitarity_defect(spec)},
               {"lower_norm_check", lower_norm_samples(spec, options)}};
  if (psi) {
    const OrbitSpec moved = commutant_multiplier(sigma, M, *psi, n_max, psi_floor);
    results["multiplier"] = Json{{"floor", psi_floor}, {"one_period", io::to_json(one_period_bounds({moved.T, moved.f0}, M))}};
  }
  out.report["results"] = results;

  std::vector<double> ns, defects;
  if (window == OrbitWindow::Symmetric) {
    for (int n : truncation_ladder(n_max)) {
      ns.push_back(n);
      defects.push_back(parseval_defect(sigma, M, n, window));
    }
    out.csv.push_back({"defect", to_csv({"n_max", "parseval_defect"}, {ns, defects})});
  }
  return out;
}

// --- translates -------------------------------------------------------------

RunResult run_translates(Params& p) {
  const int per_unit = p.integer("per_unit", 1000, 1, 1000000);
  const int period_count = p.integer("period_count", 4, 1, 1000);
  const double rel_threshold = p.number("rel_threshold", 1e-6);
  const bool named = p.has("profile");
  std::string profile;
  std::vector<double> samples;
  if (named) {
    profile = p.choice("profile", {"sinc", "quarter_band", "triangle"}, "");
    if (p.has("samples")) throw InputError(p.where("samples") + " cannot be combined with profile");
  } else {
    const Json& s = p.required("samples");
    if (!s.is_array()) throw InputError(p.where("samples") + " must be a list of numbers");
    for (const auto& v : s) {
      if (!v.is_number()) throw InputError(p.where("samples") + " must be a list of numbers");
      samples.push_back(v.get<double>());
    }
  }
  p.finish();
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0)) throw InputError(p.where("rel_threshold") + " must lie in (0, 1)");

  TranslateSamples ts;
  if (named) {
    const auto band = [](double half) {
      return [half](double w) { return w >= -half && w < half ? 1.0 : 0.0; };
    };
    if (profile == "sinc") ts = sample_translates(band(0.5), per_unit, period_count);
    if (profile == "quarter_band") ts = sample_translates(band(0.25), per_unit, period_count);
    if (profile == "triangle") {
      ts = sample_translates([](double w) { return std::pow(std::max(0.0, 1.0 - std::abs(w)), 2); }, per_unit,
                             period_count);
    }
  } else {
    ts = {samples, per_unit, period_count};
  }
  const TranslateProfile tp = translates_phi(ts, rel_threshold);

  RunResult out;
  out.report["results"] = Json{{"threshold", tp.threshold},
                               {"sigma_measure", tp.sigma_measure},
                               {"ess_inf", tp.ess_inf},
                               {"ess_sup", tp.ess_sup},
                               {"grid_resolution", 1.0 / per_unit}};
  std::vector<double> in(tp.in_sigma.size());
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = tp.in_sigma[i] ? 1.0 : 0.0;
  out.csv.push_back({"phi", to_csv({"omega", "phi", "in_sigma"}, {tp.omega, tp.phi, in})});
  return out;
}

}  // namespace

const std::vector<std::string>& problem_kinds() {
  static const std::vector<std::string> kinds{"carleson",     "model_space", "orbit_analysis", "normal_construction",
                                              "perturbation", "biinfinite",  "translates"};
  return kinds;
}

RunResult run_problem(const Json& problem, const RunOptions& options) {
  if (!problem.is_object()) throw InputError("problem file must contain a JSON object");
  for (auto it = problem.begin(); it != problem.end(); ++it) {
    if (it.key() != "kind" && it.key() != "parameters" && it.key() != "output") {
      throw InputError("unknown top-level field \"" + it.key() + "\"");
    }
  }
  if (!problem.contains("kind") || !problem["kind"].is_string()) throw InputError("\"kind\" must be a string");
  const std::string kind = problem["kind"].get<std::string>();
  const auto& kinds = problem_kinds();
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) throw InputError("unknown kind \"" + kind + "\"");
  if (!(options.tol > 0.0 && options.tol < 1.0)) throw InputError("tol must lie in (0, 1)");

  std::optional<std::string> output;
  if (problem.contains("output")) {
    if (!problem["output"].is_string()) throw InputError("\"output\" must be a path string");
    output = problem["output"].get<std::string>();
  }
  const Json empty = Json::object();
  const Json& params = problem.contains("parameters") ? problem["parameters"] : empty;
  Params p(params, kind);

  RunResult r;
  if (kind == "carleson") r = run_carleson(p);
  if (kind == "model_space") r = run_model_space(p, options);
  if (kind == "orbit_analysis") r = run_orbit_analysis(p, options);
  if (kind == "normal_construction") r = run_normal_construction(p);
  if (kind == "perturbation") r = run_perturbation(p);
  if (kind == "biinfinite") r = run_biinfinite(p, options);
  if (kind == "translates") r = run_translates(p);

  Json report;
  report["kind"] = kind;
  report["inputs"] = params;
  report["results"] = r.report["results"];
  if (r.report.contains("certificates")) report["certificates"] = r.report["certificates"];
  report["tolerances"] = Json{{"tol", options.tol},
                              {"gram_target", ModelSpaceOptions{}.gram_target},
                              {"containment_slack", kContainmentSlack},
                              {"max_trunc", options.max_trunc}};
  report["seed"] = options.seed;
  r.report = std::move(report);
  r.output = output;
  return r;
}

}  // namespace orbitframes
