#include <doctest.h>

#include "orbitframes/errors.hpp"
#include "orbitframes/problem.hpp"

#include <cmath>

using namespace orbitframes;
using io::Json;

namespace {

Json problem(const std::string& kind, Json params) { return Json{{"kind", kind}, {"parameters", std::move(params)}}; }

}  // namespace

TEST_CASE("complex values round-trip as [re, im]") {
  const VectorXcd v = Eigen::Vector2cd(Complex(1.5, -2.0), 0.25);
  CHECK(io::to_json(v).dump() == "[[1.5,-2.0],[0.25,0.0]]");
  CHECK((io::vector_from_json(io::to_json(v), "v") - v).norm() == 0.0);
  CHECK(io::complex_from_json(Json(0.5), "x") == Complex(0.5));
  CHECK_THROWS_AS(io::complex_from_json(Json::array({1, 2, 3}), "x"), InputError);
  CHECK_THROWS_AS(io::matrix_from_json(Json::array({Json::array({1, 2}), Json::array({1})}), "m"), InputError);
  CHECK(io::arcs_from_json(Json("full"), "arcs").measure() == 1.0);
  CHECK_THROWS_AS(io::arcs_from_json(Json("half"), "arcs"), InputError);
}

TEST_CASE("carleson report") {
  const RunResult r = run_problem(problem("carleson", {{"zeros", {0, 0.5}}}));
  CHECK(r.report["results"]["delta"].get<double>() == doctest::Approx(0.5));
  CHECK(r.report["results"]["Delta"].get<double>() == doctest::Approx(32.0 * (1.0 + 2.0 * std::log(2.0))));
  CHECK(r.report["tolerances"]["tol"].get<double>() == 1e-10);

  const RunResult dup = run_problem(problem("carleson", {{"zeros", {0.2, 0.2}}}));
  CHECK(dup.report["results"]["delta"].get<double>() == 0.0);
  CHECK(dup.report["results"]["Delta"].is_null());
}

TEST_CASE("model_space report for z^2") {
  const RunResult r = run_problem(problem("model_space", {{"zeros", {0, 0}}, {"n_max", 10}}));
  const Json& res = r.report["results"];
  CHECK(res["dim"] == 2);
  CHECK(res["shift_matrix"].dump() == "[[[0.0,0.0],[0.0,0.0]],[[1.0,0.0],[0.0,0.0]]]");
  CHECK(res["orbit_frame"]["parseval_defect"].get<double>() < 1e-10);
  CHECK(res["minimal_polynomial_residual"].get<double>() == 0.0);
  REQUIRE(r.csv.size() == 2);
  CHECK(r.csv[0].name == "decay");
  CHECK(r.csv[0].content.rfind("n,norm_direct,norm_tail_sum\n0,1,1\n1,1,1\n2,0,0\n", 0) == 0);
}

TEST_CASE("orbit_analysis report") {
  const Json T = Json::array({Json::array({0, 0, 1}), Json::array({1, 0, 0}), Json::array({0, 1, 0})});
  const RunResult r = run_problem(
      problem("orbit_analysis", {{"T", T}, {"f0", {1, 0, 0}}, {"n_max", 3}, {"synthesis_csv", true}}));
  const Json& res = r.report["results"];
  CHECK(res["frame"]["lower_bound"].get<double>() == doctest::Approx(1.0));
  CHECK(res["frame"]["upper_bound"].get<double>() == doctest::Approx(2.0));
  CHECK(res["closure"]["boundedly_generated"] == true);
  CHECK(res["closure"]["distance_to_T"].get<double>() < 1e-12);
  CHECK(r.csv.back().name == "synthesis");

  const RunResult z = run_problem(problem("orbit_analysis", {{"T", T}, {"f0", {1, 0, 0}}, {"n_max", 6}, {"index_set", "Z"}}));
  CHECK(z.report["results"]["period"] == 3);
  CHECK(z.report["results"]["unitarity_defect"].get<double>() < 1e-12);
  CHECK(z.report["results"]["lower_norm_check"]["all_hold"] == true);

  const Json bad = Json::array({Json::array({1, 0}), Json::array({0, 1})});
  CHECK_THROWS_AS(run_problem(problem("orbit_analysis", {{"T", bad}, {"f0", {1, 0, 0}}, {"n_max", 3}})), InputError);
}

TEST_CASE("normal_construction and perturbation reports") {
  std::vector<double> z, c;
  for (int j = 0; j < 5; ++j) {
    z.push_back(1.0 - std::ldexp(1.0, -j - 1));
    c.push_back(std::sqrt(1.0 - z.back() * z.back()));
  }
  const RunResult n = run_problem(problem("normal_construction", {{"zeros", z}, {"coeffs", c}}));
  CHECK(n.report["results"]["contained"] == true);
  CHECK(n.report["results"]["spec"]["coefficient_tail"] == "finite model");
  CHECK(n.report["certificates"]["Delta"]["value"].get<double>() > 1e6);

  const Json W = Json::array({Json::array({1, 0}), Json::array({0, 2})});
  const RunResult w = run_problem(problem("normal_construction", {{"zeros", {0, 0.5}},
                                                                  {"coeffs", {1.0, std::sqrt(0.75)}},
                                                                  {"W", W},
                                                                  {"coefficient_tail", 0.0}}));
  CHECK(w.report["results"]["riesz_bounds"]["lower"].get<double>() == doctest::Approx(0.25));
  CHECK(w.report["results"]["contained"] == true);

  const RunResult p = run_problem(problem(
      "perturbation", {{"zeros", {0.5, 0.75, 0.875}}, {"coeffs", {c[0], c[1], c[2]}}, {"k", 0}, {"l", 1}, {"tau", 0.1}}));
  CHECK(p.report["results"]["non_normality"]["kk_discrepancy"].get<double>() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(p.report["results"]["contained"] == true);

  CHECK_THROWS_AS(run_problem(problem("normal_construction", {{"zeros", {0.3, 0.3}}, {"coeffs", {0.5, 0.5}}})),
                  NumericalError);
}

TEST_CASE("biinfinite and translates reports") {
  const RunResult b =
      run_problem(problem("biinfinite", {{"arcs", "full"}, {"M", 8}, {"n_max", 8}, {"window", "one_period"}}));
  CHECK(b.report["results"]["parseval_defect"].get<double>() < 1e-12);
  CHECK(b.report["results"]["mask_count"] == 8);

  const RunResult half = run_problem(problem("biinfinite", {{"arcs", {{0.0, 3.141592653589793}}}, {"M", 64}, {"n_max", 128}}));
  CHECK(half.report["results"]["unitarity_defect"].get<double>() < 1e-8);
  REQUIRE(half.csv.size() == 1);
  CHECK(half.csv[0].name == "defect");

  const RunResult t = run_problem(problem("translates", {{"profile", "quarter_band"}}));
  CHECK(std::abs(t.report["results"]["sigma_measure"].get<double>() - 0.5) <= 2e-3);
  CHECK(t.csv[0].content.rfind("omega,phi,in_sigma\n", 0) == 0);

  const RunResult s = run_problem(problem("translates", {{"samples", {1, 0, 0, 0}}, {"per_unit", 2}, {"period_count", 1}}));
  CHECK(s.report["results"]["sigma_measure"].get<double>() == 0.5);
}

TEST_CASE("schema violations are input errors") {
  CHECK_THROWS_AS(run_problem(Json::array()), InputError);
  CHECK_THROWS_AS(run_problem(Json{{"kind", "spectral"}}), InputError);
  CHECK_THROWS_AS(run_problem(Json{{"kind", "carleson"}, {"parameters", {{"zeros", {0.5}}}}, {"extra", 1}}),
                  InputError);
  CHECK_THROWS_AS(run_problem(problem("carleson", {{"zeros", {0, 0.5}}, {"radius", 2}})), InputError);
  CHECK_THROWS_AS(run_problem(problem("carleson", Json::object())), InputError);
  CHECK_THROWS_AS(run_problem(problem("carleson", {{"zeros", {1.5}}})), InputError);
  CHECK_THROWS_AS(run_problem(problem("model_space", {{"zeros", {0.5}}, {"n_max", -1}})), InputError);
  CHECK_THROWS_AS(run_problem(problem("model_space", {{"zeros", {0.5}}, {"n_max", 2.5}})), InputError);
  CHECK_THROWS_AS(run_problem(problem("biinfinite", {{"arcs", "full"}, {"M", 8}, {"window", "left"}})), InputError);
  CHECK_THROWS_AS(run_problem(problem("translates", {{"profile", "sinc"}, {"samples", {1}}})), InputError);
  RunOptions bad_tol;
  bad_tol.tol = 2.0;
  CHECK_THROWS_AS(run_problem(problem("carleson", {{"zeros", {0.5}}}), bad_tol), InputError);
}

TEST_CASE("validation precedes computation") {
  // A numerically fatal problem with an unknown key still reports the schema error.
  CHECK_THROWS_AS(run_problem(problem("normal_construction", {{"zeros", {0.3, 0.3}}, {"coeffs", {0.5, 0.5}}, {"x", 1}})),
                  InputError);
}

TEST_CASE("max_trunc is honoured") {
  RunOptions small;
  small.max_trunc = 128;
  CHECK_THROWS_AS(run_problem(problem("model_space", {{"zeros", {0.999}}}), small), NumericalError);
  CHECK_THROWS_AS(run_problem(problem("model_space", {{"zeros", {0.5}}, {"trunc", 256}}), small), InputError);
}

TEST_CASE("reports are byte-stable and seed-determined") {
  const Json p = problem("biinfinite", {{"arcs", {{0.5, 2.0}}}, {"M", 32}, {"n_max", 32}});
  RunOptions a;
  a.seed = 7;
  const std::string first = run_problem(p, a).report.dump();
  CHECK(run_problem(p, a).report.dump() == first);
  RunOptions b;
  b.seed = 8;
  const RunResult other = run_problem(p, b);
  CHECK(other.report["seed"] == 8);
  CHECK(other.report["results"]["lower_norm_check"].dump() != run_problem(p, a).report["results"]["lower_norm_check"].dump());
}
