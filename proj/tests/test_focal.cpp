#include "hopfcyc/cyclicity.hpp"
#include "hopfcyc/focal.hpp"
#include "hopfcyc/system.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace hopfcyc;

namespace {

ParsedSystem fixed_quadratic() { return to_parsed_system(load_document(testing::catalog_file("thm38"))); }

Rational coeff_of(const FocalSequence& f, int k, const std::string& param) {
  auto pos = f.space->find_param(param);
  REQUIRE(pos.has_value());
  return f[k].coefficient(f.space->param_monomial(*pos));
}

SystemSpec thm31a_sample() {
  CatalogEntry e{load_document(testing::catalog_file("thm31a"))};
  return instantiate_center(e, {{"a100", 1}, {"a010", 2}, {"b20", 1}, {"b11", -1}, {"b02", 3}});
}

Perturbation full_quadratic() { return standard_quadratic_perturbation({"u", "v", "w"}); }

}  // namespace

TEST_CASE("first linear part of the fixed quadratic system") {
  auto ps = fixed_quadratic();
  auto r = focal_coefficients(ps.system, ps.perturbation, 1, 1);
  const auto& f = r.focal;
  CHECK(jet_slice(f[1], 0).is_zero());
  CHECK(coeff_of(f, 1, "a011") == make_rational(22, 45));
  CHECK(coeff_of(f, 1, "a020") == 4);
  CHECK(coeff_of(f, 1, "a101") == make_rational(-4, 45));
  CHECK(coeff_of(f, 1, "a110") == make_rational(2, 3));
  CHECK(coeff_of(f, 1, "a200") == make_rational(4, 3));
  CHECK(coeff_of(f, 1, "b011") == make_rational(4, 45));
  CHECK(coeff_of(f, 1, "b020") == make_rational(-2, 3));
  CHECK(coeff_of(f, 1, "b101") == make_rational(22, 45));
  CHECK(coeff_of(f, 1, "b110") == make_rational(-4, 3));
  CHECK(coeff_of(f, 1, "b200") == -2);
  CHECK(coeff_of(f, 1, "a002") == 0);
  CHECK(coeff_of(f, 1, "c002") == 0);
}

TEST_CASE("zero perturbation of a center gives zero coefficients") {
  auto ps = parse_system(R"(lambda = 1
P = x^2 + 2*x*y + 3*x*z
Q = x*y + 2*y^2 + 3*y*z
R = 2/3*x^2 + x*y + 4*x*z - 2/3*y^2 + 3*y*z + 6*z^2
)");
  auto r = focal_coefficients(ps.system, ps.perturbation, 6, 2);
  REQUIRE(r.focal.L.size() == 6);
  for (const auto& L : r.focal.L) CHECK(L.is_zero());
}

TEST_CASE("planar weak focus embedded in three dimensions") {
  // x' = -y + c x (x^2 + y^2), y' = x + c y (x^2 + y^2), z' = -z: XH = 2c (x^2+y^2)^2.
  for (Rational c : {Rational(1), make_rational(-3, 7)}) {
    SystemSpec s;
    s.P.add_term({3, 0, 0}, c);
    s.P.add_term({1, 2, 0}, c);
    s.Q.add_term({2, 1, 0}, c);
    s.Q.add_term({0, 3, 0}, c);
    FocalOptions radial;
    radial.resonant = ResonantForm::radial;
    auto a = focal_coefficients(s, {}, 3, 0, radial);
    CHECK(a.focal[1].constant_term() == 2 * c);
    CHECK(a.focal[2].is_zero());
    auto b = focal_coefficients(s, {}, 3, 0);
    CHECK(b.focal[1].constant_term() == Rational(16) * c / 3);
    CHECK(b.focal[2].is_zero());
  }
}

TEST_CASE("the kept series satisfies the defining identity") {
  SystemSpec s = thm31a_sample();
  auto pert = standard_quadratic_perturbation({"u", "v", "w"}, 2, {"u002", "v002", "w002", "u011", "v011", "w011"});
  for (auto form : {ResonantForm::power_of_x, ResonantForm::radial}) {
    FocalOptions o;
    o.resonant = form;
    o.keep_series = true;
    const int K = 3;
    auto r = focal_coefficients(s, pert, K, 2, o);
    REQUIRE(r.series.has_value());
    const auto& space = r.focal.space;
    CHECK(r.series->computed_degree == 2 * K + 2);

    auto g = pert.polynomials(space);
    std::array<Poly3, 3> X;
    X[0] = Poly3::monomial({0, 1, 0}, JetPoly(space, -1)) + lift(s.P, space) + g[0];
    X[1] = Poly3::monomial({1, 0, 0}, JetPoly(space, 1)) + lift(s.Q, space) + g[1];
    X[2] = Poly3::monomial({0, 0, 1}, JetPoly(space, -s.lambda)) + lift(s.R, space) + g[2];
    Poly3 lhs = apply_vector_field(X, r.series->H).truncated(2 * K + 2);

    Poly3 rhs;
    Poly3 rho2 = Poly3::monomial({2, 0, 0}, JetPoly(space, 1)) + Poly3::monomial({0, 2, 0}, JetPoly(space, 1));
    Poly3 power = rho2;
    for (int k = 1; k <= K; ++k) {
      power = power * rho2;
      Poly3 B = form == ResonantForm::radial ? power : Poly3::monomial({2 * k + 2, 0, 0}, JetPoly(space, 1));
      rhs += B * Poly3::monomial({0, 0, 0}, r.focal[k]);
    }
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("rank does not depend on the normalization") {
  SystemSpec s = thm31a_sample();
  auto pert = full_quadratic();
  std::optional<std::size_t> rank;
  for (auto form : {ResonantForm::power_of_x, ResonantForm::radial})
    for (auto kernel :
         {KernelNormalization::zero_x_power, KernelNormalization::zero_y_power, KernelNormalization::circle_mean}) {
      FocalOptions o;
      o.resonant = form;
      o.kernel = kernel;
      auto r = focal_coefficients(s, pert, 7, 1, o);
      auto c = rank_certificate(r.focal);
      if (!rank) rank = c.rank;
      CHECK(c.rank == *rank);
    }
  CHECK(*rank == 6);
}

TEST_CASE("degree-j slices scale with the perturbation") {
  SystemSpec s = thm31a_sample();
  auto pert = full_quadratic();
  auto base = focal_coefficients(s, pert, 3, 2);
  auto scaled = focal_coefficients(s, pert.scaled(2), 3, 2);
  for (int k = 1; k <= 3; ++k) {
    CHECK(jet_slice(scaled.focal[k], 1) == jet_slice(base.focal[k], 1) * Rational(2));
    CHECK(jet_slice(scaled.focal[k], 2) == jet_slice(base.focal[k], 2) * Rational(4));
  }
}

TEST_CASE("argument and resource errors") {
  auto ps = fixed_quadratic();
  CHECK_THROWS_AS(focal_coefficients(ps.system, ps.perturbation, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(focal_coefficients(ps.system, ps.perturbation, 2, -1), std::invalid_argument);
  auto r0 = focal_coefficients(ps.system, ps.perturbation, 2, 0);
  CHECK_THROWS_AS(linear_part_matrix(r0.focal), std::invalid_argument);
  auto r1 = focal_coefficients(ps.system, ps.perturbation, 2, 1);
  CHECK_THROWS_AS(quadratic_parts(r1.focal, {1}), std::invalid_argument);
  auto r2 = focal_coefficients(ps.system, ps.perturbation, 2, 2);
  CHECK_THROWS_AS(quadratic_parts(r2.focal, {3}), std::out_of_range);

  SystemSpec zero_lambda = ps.system;
  zero_lambda.lambda = 0;
  CHECK_THROWS_AS(focal_coefficients(zero_lambda, ps.perturbation, 2, 1), ValidationError);

  FocalOptions tight;
  tight.max_stored_terms = 50;
  try {
    focal_coefficients(ps.system, ps.perturbation, 6, 2, tight);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(e.last_completed_k() >= 0);
    CHECK(e.last_completed_k() < 6);
  }
}

TEST_CASE("quadratic parts follow a relabeling of the parameters") {
  SystemSpec s = thm31a_sample();
  auto a = standard_quadratic_perturbation({"u", "v", "w"}, 2, {"u002", "v002", "w002", "u011", "v011", "w011"});
  const std::size_t m = a.size();
  Perturbation b = a;
  for (std::size_t i = 0; i < m; ++i) b.params[i] = {a.params[m - 1 - i].name, i};
  for (auto& slot : b.slots) slot.param = m - 1 - slot.param;
  auto fa = focal_coefficients(s, a, 3, 2).focal;
  auto fb = focal_coefficients(s, b, 3, 2).focal;
  auto qa = quadratic_parts(fa, {1, 2, 3});
  auto qb = quadratic_parts(fb, {1, 2, 3});
  for (std::size_t k = 0; k < qa.size(); ++k) {
    MPoly relabeled(m);
    for (const auto& [e, c] : qb[k].terms()) {
      MExponent f(m);
      for (std::size_t i = 0; i < m; ++i) f[m - 1 - i] = e[i];
      relabeled.add_term(f, c);
    }
    CHECK(relabeled == qa[k]);
    CHECK(qa[k].total_degree() <= 2);
  }
}
