#include "hopfcyc/algebraic.hpp"
#include "hopfcyc/mpoly.hpp"
#include "hopfcyc/qmatrix.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hopfcyc;

namespace {

UPoly up(std::vector<long> c) {
  std::vector<Rational> q;
  for (long v : c) q.emplace_back(v);
  return UPoly(q);
}

// Roots of p by sign changes on a fine grid; used as an independent count.
int grid_root_count(const UPoly& p, double lo, double hi, int n = 200000) {
  int count = 0;
  double prev = p.evaluate(lo);
  for (int i = 1; i <= n; ++i) {
    double t = lo + (hi - lo) * i / n;
    double v = p.evaluate(t);
    if (v == 0 || (prev < 0) != (v < 0)) ++count;
    prev = v;
  }
  return count;
}

MPoly mp(std::size_t n, std::vector<std::pair<MExponent, long>> terms) {
  MPoly p(n);
  for (auto& [e, c] : terms) p.add_term(e, Rational(c));
  return p;
}

}  // namespace

TEST_CASE("univariate arithmetic") {
  UPoly p = up({-2, 0, 1});  // t^2 - 2
  CHECK(p.degree() == 2);
  CHECK(p.evaluate(Rational(3)) == 7);
  CHECK(p.derivative() == up({0, 2}));
  auto d = divide(up({-1, 0, 0, 1}), up({-1, 1}));
  CHECK(d.quotient == up({1, 1, 1}));
  CHECK(d.remainder.is_zero());
  CHECK(gcd(up({-1, 0, 1}), up({1, 2, 1})).monic() == up({1, 1}));
  CHECK(square_free_part(up({1, 2, 1}) * up({-2, 0, 1})).monic() == up({1, 1}) * up({-2, 0, 1}));
  auto eg = extended_gcd(up({-1, 0, 1}), up({-2, 1}));
  CHECK(eg.s * up({-1, 0, 1}) + eg.t * up({-2, 1}) == eg.g);
  CHECK(parse_upoly("2*t^3 - t + 1/2", "t") == UPoly({Rational(1, 2), Rational(-1), Rational(0), Rational(2)}));
  CHECK(UPoly({Rational(1, 2), Rational(3, 4)}).primitive() == up({2, 3}));
  // (t/3)^2 - 9 made primitive: t^2 - 81
  CHECK(up({-9, 0, 1}).scale_argument(3) == up({-81, 0, 1}));
}

TEST_CASE("Sturm counts agree with a sign-change grid") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Rational> roots;
    UPoly p = UPoly::constant(1);
    int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      Rational r = make_rational(static_cast<long>(rng() % 41) - 20, 7);
      if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
      roots.push_back(r);
      p = p * UPoly({-r, Rational(1)});
    }
    p = p * up({1, 0, 1});  // no real roots
    auto seq = sturm_sequence(p);
    CHECK(count_roots(seq, Rational(-10), Rational(10)) == static_cast<int>(roots.size()));
    CHECK(real_roots(p).size() == roots.size());
    CHECK(grid_root_count(p, -9.9999, 9.9999) == static_cast<int>(roots.size()));
    auto rr = rational_roots(p);
    std::sort(roots.begin(), roots.end());
    CHECK(rr == roots);
  }
}

TEST_CASE("isolating intervals and refinement") {
  UPoly p = up({-2, 0, 1});
  auto roots = real_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].approx() == doctest::Approx(-std::sqrt(2.0)));
  CHECK(roots[1].approx() == doctest::Approx(std::sqrt(2.0)));
  auto r = roots[1];
  r.refine(make_rational(1, 1 << 20));
  CHECK(r.width() <= make_rational(1, 1 << 20));
  CHECK(r.lo() < r.hi());
  // Dyadic endpoints.
  Integer den = r.lo().get_den();
  CHECK((den & (den - 1)) == 0);
  CHECK(r.is_root_of(p * up({3, 1})));
  CHECK_FALSE(r.is_root_of(up({-3, 0, 1})));
  CHECK(r.sign_of(up({-1, 1})) > 0);
  CHECK(r.sign_of(up({-2, 1})) < 0);
  CHECK_THROWS_AS(AlgebraicNumber(p, Rational(-2), Rational(2)), std::invalid_argument);
}

TEST_CASE("number field arithmetic in Q(sqrt 2)") {
  auto alpha = real_roots(up({-2, 0, 1}))[1];
  auto K = std::make_shared<const NumberField>(alpha);
  auto a = NumberFieldElement::generator(K);
  auto one = NumberFieldElement::constant(K, 1);
  CHECK((a * a - one * Rational(2)).is_zero());
  CHECK((a * a).rep() == up({2}));
  auto b = a + one;  // 1 + sqrt 2
  auto inv = b.inverse();
  CHECK((b * inv - one).is_zero());
  CHECK(inv.rep() == up({-1, 1}));
  CHECK((a - one * Rational(3, 2)).sign() < 0);
  CHECK((a - one * Rational(7, 5)).sign() > 0);
  CHECK(b.approx() == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK_THROWS_AS(NumberFieldElement::constant(K, 0).inverse(), std::domain_error);
}

TEST_CASE("field axioms on random elements of a cubic field") {
  auto alpha = real_roots(up({-5, -3, 0, 2}))[0];
  auto K = std::make_shared<const NumberField>(alpha);
  std::mt19937_64 rng(9);
  auto rand = [&]() {
    return NumberFieldElement(K, UPoly({testing::random_rational(rng), testing::random_rational(rng),
                                        testing::random_rational(rng)}));
  };
  for (int i = 0; i < 20; ++i) {
    auto x = rand(), y = rand(), z = rand();
    CHECK(((x + y) * z - (x * z + y * z)).is_zero());
    CHECK(((x * y) * z - x * (y * z)).is_zero());
    CHECK((x * y).approx() == doctest::Approx(x.approx() * y.approx()).epsilon(1e-9));
    if (!x.is_zero()) CHECK((x / x - NumberFieldElement::constant(K, 1)).is_zero());
  }
}

TEST_CASE("irreducibility certificates") {
  CHECK(certify_irreducible(up({-2, 0, 1})).has_value());
  CHECK(certify_irreducible(up({-5, -3, 0, 2})).has_value());
  CHECK_FALSE(certify_irreducible(up({-1, 0, 1})).has_value());
  CHECK_FALSE(certify_irreducible(up({2, 0, 3, 0, 1})).has_value());  // (t^2+1)(t^2+2)
}

TEST_CASE("multivariate gcd and resultant") {
  // x, y
  MPoly f = mp(2, {{{1, 0}, 1}, {{0, 1}, 1}});   // x + y
  MPoly g = mp(2, {{{1, 0}, 1}, {{0, 1}, -1}});  // x - y
  MPoly h = mp(2, {{{2, 0}, 1}, {{0, 0}, 1}});   // x^2 + 1
  CHECK(gcd(f * g, f * h).primitive() == f.primitive());
  CHECK(gcd(g, h).is_constant());
  CHECK(divexact(f * h, h) == f);
  CHECK_THROWS_AS(divexact(f, g), std::domain_error);

  // Res_x(x + y, x^2 + 1) = y^2 + 1
  MPoly r = resultant(f, h, 0);
  CHECK(r.primitive() == mp(2, {{{0, 2}, 1}, {{0, 0}, 1}}));
  // Common root gives zero resultant.
  CHECK(resultant(f * g, f * h, 0).is_zero());

  // Specializing y commutes with the resultant: compare with a Sylvester
  // determinant of the specialized pair.
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    MPoly a(2), b(2);
    for (int d = 0; d <= 2; ++d)
      for (int e = 0; e <= 2 - d; ++e) {
        a.add_term({d, e}, testing::random_rational(rng));
        b.add_term({d, e}, testing::random_rational(rng));
      }
    if (a.coefficient_in(0, 2).is_zero() || b.coefficient_in(0, 2).is_zero()) continue;
    Rational y = testing::random_rational(rng);
    auto coeffs = [&](const MPoly& p) {
      std::vector<Rational> c(3);
      for (int k = 0; k <= 2; ++k) c[static_cast<std::size_t>(k)] = p.coefficient_in(0, k).evaluate(std::vector<Rational>{0, y});
      return c;
    };
    auto ca = coeffs(a), cb = coeffs(b);
    QMatrix syl(4, 4);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t k = 0; k <= 2; ++k) {
        syl(r, r + k) = ca[2 - k];
        syl(r + 2, r + k) = cb[2 - k];
      }
    Rational expected = determinant(syl);
    Rational got = resultant(a, b, 0).evaluate(std::vector<Rational>{0, y});
    CHECK(abs(got) == abs(expected));
  }

  std::vector<std::vector<MPoly>> m{{f, g}, {h, f}};
  CHECK(determinant(m) == f * f - g * h);
}
