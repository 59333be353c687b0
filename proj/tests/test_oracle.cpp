#include "hopfcyc/focal.hpp"
#include "hopfcyc/oracle.hpp"
#include "hopfcyc/system.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hopfcyc;

namespace {

SystemSpec thm31a_sample() {
  CatalogEntry e{load_document(testing::catalog_file("thm31a"))};
  return instantiate_center(e, {{"a100", 1}, {"a010", 2}, {"b20", 1}, {"b11", -1}, {"b02", 3}});
}

// Exact L_1 of the perturbed system on (x^2+y^2)^2, where l_1 = pi L_1.
double radial_l1(const SystemSpec& s, const Perturbation& pert, const std::vector<Rational>& values) {
  auto g = pert.evaluate(values);
  SystemSpec p = s;
  p.P += g[0];
  p.Q += g[1];
  p.R += g[2];
  FocalOptions o;
  o.resonant = ResonantForm::radial;
  return focal_coefficients(p, {}, 1, 0, o).focal[1].constant_term().get_d();
}

}  // namespace

TEST_CASE("linear flow returns rho and contracts omega") {
  for (double lambda : {1.0, 0.5}) {
    SystemSpec s;
    s.lambda = Rational(lambda);
    NumericField f(s);
    auto r = return_map(f, 0.01, 0.002);
    CHECK(static_cast<double>(r.rho) == doctest::Approx(0.01).epsilon(1e-10));
    CHECK(static_cast<double>(r.omega) == doctest::Approx(0.002 * std::exp(-2 * std::numbers::pi * lambda)).epsilon(1e-8));
    CHECK(r.steps > 0);
  }
}

TEST_CASE("centers have no displacement") {
  NumericField f(thm31a_sample());
  for (double rho : {1e-3, 1e-2}) {
    auto d = reduced_displacement(f, rho);
    CHECK(std::fabs(d.d) <= 1e-9 * rho);
    CHECK(std::fabs(d.d2) <= 1e-9);
  }
  auto fixed = to_parsed_system(load_document(testing::catalog_file("thm38"))).system;
  CHECK(std::fabs(reduced_displacement(NumericField(fixed), 1e-3).d) <= 1e-12);
}

TEST_CASE("displacement follows the first focal coefficient") {
  SystemSpec s = thm31a_sample();
  auto pert = standard_quadratic_perturbation({"u", "v", "w"});
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> digit(-9, 9);
  for (int trial = 0; trial < 2; ++trial) {
    std::vector<Rational> values(pert.size());
    std::vector<double> numeric(pert.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = make_rational(digit(rng), 1000);
      numeric[i] = values[i].get_d();
    }
    double l1 = radial_l1(s, pert, values);
    REQUIRE(l1 != 0);
    NumericField f(s, pert, numeric);
    const double rho = 1e-3;
    auto d = reduced_displacement(f, rho);
    CHECK((d.d > 0) == (l1 > 0));
    CHECK(d.d / (std::numbers::pi * l1 * rho * rho * rho) == doctest::Approx(1).epsilon(0.05));
  }
}

TEST_CASE("trace perturbation brackets the displacement") {
  SystemSpec s = thm31a_sample();
  for (double l0 : {1e-4, -1e-4}) {
    NumericField f(s, Perturbation{}, {}, l0);
    const double rho = 1e-3;
    auto d = reduced_displacement(f, rho);
    double expected = rho * std::expm1(2 * std::numbers::pi * l0);
    CHECK(d.d == doctest::Approx(expected).epsilon(1e-3));
  }
}

TEST_CASE("tighter tolerance does not move the result") {
  SystemSpec s = thm31a_sample();
  auto pert = standard_quadratic_perturbation({"u", "v", "w"});
  std::vector<double> values(pert.size(), 0);
  values[3] = 0.004;
  values[10] = -0.002;
  NumericField f(s, pert, values);
  OracleOptions coarse;
  coarse.tolerance = 1e-10;
  OracleOptions fine;
  fine.tolerance = 1e-12;
  auto a = reduced_displacement(f, 2e-3, coarse);
  auto b = reduced_displacement(f, 2e-3, fine);
  CHECK(b.tol == 1e-12);
  CHECK(a.d == doctest::Approx(b.d).epsilon(1e-4));
  CHECK(b.steps >= a.steps);
}

TEST_CASE("large amplitudes escape and bad arguments are rejected") {
  NumericField f(thm31a_sample());
  CHECK_THROWS_AS(reduced_displacement(f, 50.0), OrbitEscapeError);
  CHECK_THROWS_AS(reduced_displacement(f, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(reduced_displacement(f, -1e-3), std::invalid_argument);
  OracleOptions tiny;
  tiny.max_steps = 3;
  CHECK_THROWS_AS(reduced_displacement(f, 1e-3, tiny), AccuracyError);
  auto pert = standard_quadratic_perturbation({"u", "v", "w"});
  std::vector<double> wrong(3, 0);
  CHECK_THROWS_AS(NumericField(thm31a_sample(), pert, wrong), std::invalid_argument);
}

TEST_CASE("csv output") {
  CHECK(csv_header() == "rho0,omega_tilde,d,steps,tol");
  DisplacementSample s;
  s.rho0 = 0.001;
  s.d = -2.5e-11;
  s.steps = 12;
  s.tol = 1e-12;
  std::string row = csv_row(s);
  CHECK(std::count(row.begin(), row.end(), ',') == 4);
  CHECK(row.find("12") != std::string::npos);
}
