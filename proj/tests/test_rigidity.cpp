#include "hopfcyc/rigidity.hpp"
#include "hopfcyc/system.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace hopfcyc;

namespace {

QPoly3 mono(int i, int j, int k, const Rational& c = 1) { return QPoly3::monomial({i, j, k}, c); }

// p(x, y, h(x, y)) truncated above degree n, by plain expansion.
QPoly3 compose(const QPoly3& p, const QPoly3& h, int n) {
  QPoly3 out;
  for (const auto& [e, c] : p.terms()) {
    QPoly3 t = mono(e[0], e[1], 0, c);
    for (int k = 0; k < e[2]; ++k) t = QPoly3::multiply_truncated(t, h, n);
    out += t.truncated(n);
  }
  return out;
}

// Invariance of z = h through degree n, written out directly.
QPoly3 invariance_defect(const SystemSpec& s, const QPoly3& h, int n) {
  QPoly3 xdot = compose(mono(0, 1, 0, -1) + s.P, h, n);
  QPoly3 ydot = compose(mono(1, 0, 0) + s.Q, h, n);
  QPoly3 zdot = compose(mono(0, 0, 1, -s.lambda) + s.R, h, n);
  QPoly3 lhs = QPoly3::multiply_truncated(h.derivative(0), xdot, n) + QPoly3::multiply_truncated(h.derivative(1), ydot, n);
  return (lhs - zdot).truncated(n);
}

SystemSpec fixed_quadratic() { return to_parsed_system(load_document(testing::catalog_file("thm38"))).system; }

QPoly3 lowest_part(const QPoly3& p) { return p.is_zero() ? p : p.homogeneous(p.min_degree()); }

}  // namespace

TEST_CASE("no z-forcing gives a flat center manifold") {
  SystemSpec s;
  s.P = mono(2, 0, 0) + mono(0, 1, 1, 3);
  s.Q = mono(1, 1, 0, -2);
  auto cm = center_manifold_jet(s, 6);
  CHECK(cm.h.is_zero());
  CHECK(cm.order == 6);
  SystemSpec linear;
  CHECK(center_manifold_jet(linear, 4).h.is_zero());
  CHECK(is_rigid_cylindrical(linear));
  CHECK(is_rigid_on_cm(linear, 5));
}

TEST_CASE("center manifold jets satisfy invariance") {
  SystemSpec s = fixed_quadratic();
  for (int n : {2, 3, 6}) {
    auto cm = center_manifold_jet(s, n);
    CHECK(cm.h.min_degree() >= 2);
    CHECK(cm.h.degree() <= n);
    for (const auto& [e, c] : cm.h.terms()) CHECK(e[2] == 0);
    CHECK(invariance_defect(s, cm.h, n).is_zero());
    CHECK(invariance_residual(s, cm.h, n).is_zero());
  }
  // Degree-2 part by hand: (D + 1) h2 = R(x, y, 0) restricted to degree 2.
  auto h2 = center_manifold_jet(s, 2).h;
  CHECK_FALSE(h2.is_zero());
  CHECK(invariance_defect(s, h2, 2).is_zero());
  // A perturbed jet is detected.
  CHECK_FALSE(invariance_residual(s, h2 + mono(1, 1, 0), 2).is_zero());
}

TEST_CASE("center manifold jets are nested") {
  SystemSpec s;
  s.P = mono(1, 0, 1) + mono(0, 2, 0, 2);
  s.Q = mono(0, 0, 2);
  s.R = mono(2, 0, 0) + mono(1, 1, 1, -3) + mono(0, 3, 0);
  s.lambda = make_rational(-5, 2);
  auto big = center_manifold_jet(s, 7).h;
  for (int n = 2; n < 7; ++n) CHECK(center_manifold_jet(s, n).h == big.truncated(n));
  CHECK(invariance_defect(s, big, 7).is_zero());
}

TEST_CASE("center manifold argument errors") {
  SystemSpec s = fixed_quadratic();
  CHECK_THROWS_AS(center_manifold_jet(s, 1), std::invalid_argument);
  s.lambda = 0;
  CHECK_THROWS_AS(center_manifold_jet(s, 4), std::invalid_argument);
}

TEST_CASE("cylindrical rigidity") {
  CHECK(is_rigid_cylindrical(fixed_quadratic()));
  CHECK(angular_defect(fixed_quadratic()).is_zero());
  SystemSpec control = fixed_quadratic();
  control.Q += mono(2, 0, 0);
  CHECK_FALSE(is_rigid_cylindrical(control));
  CHECK(angular_defect(control) == mono(3, 0, 0));
  auto v = classify_rigidity(control, 3);
  CHECK_FALSE(v.cylindrical);
  CHECK_FALSE(v.on_center_manifold);
  CHECK(v.obstruction == mono(3, 0, 0));
  auto file = load_document(testing::data_file("not_rigid.sys"));
  CHECK_FALSE(is_rigid_cylindrical(to_parsed_system(file).system));
}

TEST_CASE("rigid on the center manifold but not cylindrically") {
  SystemSpec s;
  s.Q = mono(1, 0, 1);  // x Q - y P = x^2 z, zero on z = 0
  auto v = classify_rigidity(s, 6);
  CHECK_FALSE(v.cylindrical);
  CHECK(v.on_center_manifold);
  CHECK(v.obstruction.is_zero());
}

TEST_CASE("obstruction on the center manifold against direct expansion") {
  SystemSpec s;
  s.Q = mono(0, 0, 2);
  s.R = mono(2, 0, 0);
  const int n = 6;
  auto v = classify_rigidity(s, n);
  CHECK_FALSE(v.cylindrical);
  CHECK_FALSE(v.on_center_manifold);

  // Independent center manifold by undetermined coefficients: h2 solves
  // -y h_x + x h_y + h = x^2.
  Rational a = make_rational(3, 5), b = make_rational(2, 5), c = make_rational(2, 5);
  QPoly3 h2 = mono(2, 0, 0, a) + mono(1, 1, 0, b) + mono(0, 2, 0, c);
  CHECK(invariance_defect(s, h2, 2).is_zero());
  CHECK(center_manifold_jet(s, 2).h == h2);

  QPoly3 h = center_manifold_jet(s, n - 1).h;
  CHECK(invariance_defect(s, h, n - 1).is_zero());
  QPoly3 defect = compose(mono(1, 0, 0) * s.Q - mono(0, 1, 0) * s.P, h, n);
  CHECK(v.obstruction == lowest_part(defect));
  CHECK(v.obstruction == (mono(1, 0, 0) * h2 * h2));
}

TEST_CASE("classification is repeatable") {
  SystemSpec s = fixed_quadratic();
  s.Q += mono(0, 1, 2, 4);
  auto a = classify_rigidity(s, 5);
  auto b = classify_rigidity(s, 5);
  CHECK(a.cylindrical == b.cylindrical);
  CHECK(a.on_center_manifold == b.on_center_manifold);
  CHECK(a.obstruction == b.obstruction);
  CHECK(is_rigid_on_cm(s, 5) == a.on_center_manifold);
}

TEST_CASE("catalog systems are cylindrically rigid") {
  for (const auto& e : load_catalog(testing::catalog_dir())) {
    CAPTURE(e.id());
    SystemSpec s = e.doc.has_free_coefficients() ? instantiate_center(e, random_center_sample(e, 2))
                                                 : to_parsed_system(e.doc).system;
    CHECK(is_rigid_cylindrical(s));
    CHECK(is_rigid_on_cm(s, 6));
  }
}
