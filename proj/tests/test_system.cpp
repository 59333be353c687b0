#include "hopfcyc/focal.hpp"
#include "hopfcyc/system.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace hopfcyc;

namespace {

const std::vector<std::string> kThm38Masked{"c011", "c020", "c101", "c110", "c200"};

CatalogEntry entry(const std::string& id) { return {load_document(testing::catalog_file(id))}; }

}  // namespace

TEST_CASE("parse the fixed quadratic system") {
  auto ps = parse_system(R"(lambda = 1
params = s
P = x^2 + 2*x*y + 3*x*z
Q = x*y + 2*y^2 + 3*y*z
R = 2/3*x^2 + x*y + 4*x*z - 2/3*y^2 + 3*y*z + 6*z^2
G1 = s*x^2
)");
  CHECK(ps.system.lambda == 1);
  CHECK(ps.system.R.coefficient({2, 0, 0}) == make_rational(2, 3));
  CHECK(ps.system.R.coefficient({0, 2, 0}) == make_rational(-2, 3));
  CHECK(ps.system.P.size() == 3);
  CHECK(ps.perturbation.size() == 1);
  CHECK(ps.perturbation.slots[0].monomial == Exp3{2, 0, 0});
}

TEST_CASE("linear systems are valid and linear terms are rejected") {
  auto ps = parse_system(R"(lambda = -3/2
)");
  CHECK(ps.system.lambda == make_rational(-3, 2));
  CHECK(ps.system.P.is_zero());
  CHECK_THROWS_AS(load_document(testing::data_file("linear_term.sys")), ValidationError);
  CHECK_THROWS_AS(parse_system("lambda = 0\n"), ValidationError);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_system("lambda = 1\nP = x^2 +* y\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_system("lambda = 1\nfoo = 3\n"), ParseError);
  CHECK_THROWS_AS(parse_system("lambda = 1\nlambda = 2\n"), ParseError);
  CHECK_THROWS_AS(parse_system("lambda = 1\nP = q*x^2\n"), ParseError);
  CHECK_THROWS_AS(parse_system("lambda = 1\nparams = x\n"), ParseError);
}

TEST_CASE("documents round-trip through the printer") {
  for (const auto& e : load_catalog(testing::catalog_dir())) {
    CAPTURE(e.id());
    auto again = parse_document(print_document(e.doc));
    CHECK(again == e.doc);
  }
  for (const char* f : {"linear.sys", "zero_pert.sys", "zero_quadratic.sys", "not_rigid.sys"}) {
    auto d = load_document(testing::data_file(f));
    CHECK(parse_document(print_document(d)) == d);
  }
}

TEST_CASE("standard quadratic perturbation") {
  auto full = standard_quadratic_perturbation({"a", "b", "c"});
  CHECK(full.size() == 18);
  CHECK(full.names().front() == "a002");
  CHECK(full.names().back() == "c200");
  auto masked = standard_quadratic_perturbation({"a", "b", "c"}, 2, kThm38Masked);
  CHECK(masked.size() == 13);
  CHECK(masked.names().back() == "c002");
  CHECK_THROWS_AS(standard_quadratic_perturbation({"a", "b", "c"}, 3), std::invalid_argument);

  auto doc = load_document(testing::catalog_file("thm38"));
  CHECK(perturbation_of(doc).names() == masked.names());
  auto by_param = [](std::vector<PerturbationSlot> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.param < b.param; });
    return v;
  };
  CHECK(by_param(perturbation_of(doc).slots) == by_param(masked.slots));
}

TEST_CASE("perturbation helpers") {
  auto p = standard_quadratic_perturbation({"u", "v", "w"});
  auto s = p.scaled(3);
  for (const auto& slot : s.slots) CHECK(slot.scale == 3);
  auto w = p.without({"u200", "w002"});
  CHECK(w.size() == 16);
  for (std::size_t i = 0; i < w.params.size(); ++i) CHECK(w.params[i].position == i);
  std::vector<Rational> values(18, 0);
  values[0] = 5;  // u002
  auto g = p.evaluate(values);
  CHECK(g[0].coefficient({0, 0, 2}) == 5);
  CHECK(g[1].is_zero());
}

TEST_CASE("instantiate catalog centers") {
  auto e = entry("thm31a");
  Assignment sample{{"a100", 1}, {"a010", 2}, {"b20", 1}, {"b11", -1}, {"b02", 3}};
  auto s = instantiate_center(e, sample);
  CHECK(s.P.coefficient({2, 0, 0}) == 1);
  CHECK(s.Q.coefficient({0, 2, 0}) == 2);
  CHECK_FALSE(s.P.coefficient({1, 0, 1}).has_value());
  CHECK(s.R.coefficient({1, 1, 0}) == -1);

  auto bad = sample;
  bad["a001"] = 1;
  CHECK_THROWS_AS(instantiate_center(e, bad), ConditionViolation);
  CHECK_THROWS_AS(instantiate_center(e, {{"a100", 1}}), ValidationError);
  CHECK_THROWS_AS(instantiate_center(e, {{"zz", 1}}), ValidationError);

  auto f = entry("thm33f");
  Assignment zero{{"a100", 1}, {"a010", 2}, {"a001", 0}, {"b002", 1}};
  CHECK_THROWS_AS(instantiate_center(f, zero), ConditionViolation);

  auto fixed = load_document(testing::catalog_file("thm38"));
  CHECK_THROWS_AS(to_parsed_system(e.doc), ValidationError);
  CHECK_NOTHROW(to_parsed_system(fixed));
}

TEST_CASE("random center samples satisfy their conditions") {
  for (const auto& e : load_catalog(testing::catalog_dir())) {
    if (!e.doc.has_free_coefficients()) continue;
    CAPTURE(e.id());
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto a = random_center_sample(e, seed);
      CHECK(a.size() == e.doc.coeffs.size());
      CHECK_NOTHROW(complete_sample(e, a));
      CHECK(random_center_sample(e, seed) == a);
    }
  }
}

TEST_CASE("catalog centers have vanishing low focal coefficients") {
  for (const auto& e : load_catalog(testing::catalog_dir())) {
    CAPTURE(e.id());
    SystemSpec s = e.doc.has_free_coefficients() ? instantiate_center(e, random_center_sample(e, 11))
                                                 : to_parsed_system(e.doc).system;
    auto r = focal_coefficients(s, perturbation_of(e.doc), 4, 1);
    for (int k = 1; k <= 4; ++k) CHECK(jet_slice(r.focal[k], 0).is_zero());
  }
}
