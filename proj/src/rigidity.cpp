#include "hopfcyc/rigidity.hpp"

#include "hopfcyc/qmatrix.hpp"

#include <stdexcept>

namespace hopfcyc {

namespace {

QPoly3 planar_part(const QPoly3& p, int d) {
  QPoly3 out;
  for (const auto& [e, c] : p.terms())
    if (e[2] == 0 && e[0] + e[1] == d) out.add_term(e, c);
  return out;
}

}  // namespace

QPoly3 invariance_residual(const SystemSpec& s, const QPoly3& h, int max_degree) {
  const QPoly3 x = QPoly3::monomial({1, 0, 0}, 1);
  const QPoly3 y = QPoly3::monomial({0, 1, 0}, 1);
  QPoly3 xdot = -y + substitute_z(s.P, h, max_degree);
  QPoly3 ydot = x + substitute_z(s.Q, h, max_degree);
  QPoly3 lhs = QPoly3::multiply_truncated(h.derivative(0), xdot, max_degree) +
               QPoly3::multiply_truncated(h.derivative(1), ydot, max_degree);
  QPoly3 rhs = h.scaled(-s.lambda) + substitute_z(s.R, h, max_degree);
  return (lhs - rhs).truncated(max_degree);
}

CenterManifoldJet center_manifold_jet(const SystemSpec& s, int order) {
  if (order < 2) throw std::invalid_argument("center manifold order must be at least 2");
  if (sgn(s.lambda) == 0) throw std::invalid_argument("lambda must be nonzero");
  CenterManifoldJet jet;
  jet.order = order;
  for (int d = 2; d <= order; ++d) {
    // Degree-d part of the defect with h_d = 0, then (D + lambda) h_d = -defect_d.
    QPoly3 defect = planar_part(invariance_residual(s, jet.h, d), d);
    if (defect.is_zero()) continue;
    const auto n = static_cast<std::size_t>(d + 1);
    QMatrix A(n, n);
    std::vector<Rational> b(n);
    for (int a = 0; a <= d; ++a) {
      const auto col = static_cast<std::size_t>(a);
      A(col, col) = s.lambda;
      if (a < d) A(col + 1, col) = d - a;
      if (a > 0) A(col - 1, col) = -a;
      b[col] = -defect.coefficient({a, d - a, 0}).value_or(Rational(0));
    }
    auto sol = solve(A, b);
    if (!sol) throw std::logic_error("singular center manifold layer");
    for (int a = 0; a <= d; ++a) jet.h.add_term({a, d - a, 0}, (*sol)[static_cast<std::size_t>(a)]);
  }
  return jet;
}

QPoly3 angular_defect(const SystemSpec& s) {
  return QPoly3::monomial({1, 0, 0}, 1) * s.Q - QPoly3::monomial({0, 1, 0}, 1) * s.P;
}

bool is_rigid_cylindrical(const SystemSpec& s) { return angular_defect(s).is_zero(); }

RigidityVerdict classify_rigidity(const SystemSpec& s, int order) {
  if (order < 2) throw std::invalid_argument("rigidity order must be at least 2");
  RigidityVerdict v;
  v.order = order;
  QPoly3 defect = angular_defect(s);
  v.cylindrical = defect.is_zero();
  if (v.cylindrical) {
    v.on_center_manifold = true;
    return v;
  }
  // The defect starts at degree 3, so h through degree order - 1 suffices.
  QPoly3 h = order >= 3 ? center_manifold_jet(s, order - 1).h : QPoly3{};
  QPoly3 restricted = substitute_z(defect, h, order);
  v.on_center_manifold = restricted.is_zero();
  if (!v.on_center_manifold) v.obstruction = restricted.homogeneous(restricted.min_degree());
  return v;
}

bool is_rigid_on_cm(const SystemSpec& s, int order) { return classify_rigidity(s, order).on_center_manifold; }

}  // namespace hopfcyc
