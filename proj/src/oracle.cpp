#include "hopfcyc/oracle.hpp"

#include "hopfcyc/rigidity.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>

namespace hopfcyc {

namespace odeint = boost::numeric::odeint;
using State = std::array<long double, 2>;

NumericField::NumericField(const SystemSpec& s, const Perturbation& pert, std::span<const double> values,
                           double lambda0)
    : lambda_(s.lambda.get_d()), lambda0_(lambda0) {
  if (values.size() != pert.size()) throw std::invalid_argument("wrong number of parameter values");
  for (int v = 0; v < 3; ++v)
    for (const auto& [e, c] : s.component(v).terms()) terms_[static_cast<std::size_t>(v)].push_back({e[0], e[1], e[2], c.get_d()});
  for (const auto& slot : pert.slots) {
    const auto& e = slot.monomial;
    terms_[static_cast<std::size_t>(slot.component)].push_back(
        {e[0], e[1], e[2], static_cast<long double>(slot.scale.get_d()) * values[slot.param]});
  }
  cm_ = center_manifold_jet(s, 8).h;
}

std::array<long double, 3> NumericField::nonlinear(long double x, long double y, long double z) const {
  std::array<long double, 3> out{};
  for (std::size_t v = 0; v < 3; ++v)
    for (const auto& t : terms_[v]) {
      long double m = t.c;
      for (int a = 0; a < t.i; ++a) m *= x;
      for (int a = 0; a < t.j; ++a) m *= y;
      for (int a = 0; a < t.k; ++a) m *= z;
      out[v] += m;
    }
  return out;
}

double NumericField::omega_guess(double rho0) const { return evaluate(cm_, rho0, 0.0, 0.0) / rho0; }

ReturnPoint return_map(const NumericField& f, double rho0, double omega0, const OracleOptions& o) {
  if (!(rho0 > 0)) throw std::invalid_argument("rho0 must be positive");
  auto rhs = [&f](const State& s, State& ds, long double theta) {
    const long double rho = s[0], omega = s[1];
    const long double c = std::cos(theta), sn = std::sin(theta);
    auto n = f.nonlinear(rho * c, rho * sn, rho * omega);
    const long double speed = 1 + (c * n[1] - sn * n[0]) / rho;
    if (!(speed > 0.01L)) throw OrbitEscapeError("angular speed 1 + phi left (0, inf); rho0 is too large");
    const long double drho = f.lambda0() * rho + c * n[0] + sn * n[1];
    const long double domega = -f.lambda() * omega + n[2] / rho - omega * drho / rho;
    ds[0] = drho / speed;
    ds[1] = domega / speed;
  };
  State s{rho0, omega0};
  ReturnPoint out;
  auto stepper = odeint::make_controlled(static_cast<long double>(o.tolerance), static_cast<long double>(o.tolerance),
                                         odeint::runge_kutta_fehlberg78<State, long double>());
  auto observer = [&](const State& st, long double) {
    if (++out.steps > o.max_steps) throw AccuracyError("step limit exceeded");
    if (!(st[0] > 0) || !std::isfinite(static_cast<double>(st[1]))) throw OrbitEscapeError("orbit left the domain");
  };
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  odeint::integrate_adaptive(stepper, rhs, s, 0.0L, two_pi, two_pi / 64, observer);
  out.rho = s[0];
  out.omega = s[1];
  return out;
}

DisplacementSample reduced_displacement(const NumericField& f, double rho0, const OracleOptions& o) {
  DisplacementSample out;
  out.rho0 = rho0;
  out.tol = o.tolerance;
  long double omega = f.omega_guess(rho0);
  auto d2_at = [&](long double w, ReturnPoint* keep) {
    ReturnPoint r = return_map(f, rho0, static_cast<double>(w), o);
    out.steps += r.steps;
    if (keep) *keep = r;
    return r.omega - w;
  };
  ReturnPoint at;
  long double d2 = d2_at(omega, &at);
  for (int it = 0; std::fabs(d2) > o.tolerance; ++it) {
    if (it >= o.max_newton) throw NoSectionPointError("Newton on the section did not converge");
    const long double h = 1e-6L * std::max<long double>(std::fabs(omega), rho0);
    const long double slope = (d2_at(omega + h, nullptr) - d2) / h;
    if (slope == 0) throw NoSectionPointError("flat second displacement");
    omega -= d2 / slope;
    d2 = d2_at(omega, &at);
    out.newton_iterations = it + 1;
  }
  out.omega_tilde = static_cast<double>(omega);
  out.d2 = static_cast<double>(d2);
  out.d = static_cast<double>(at.rho - static_cast<long double>(rho0));
  return out;
}

std::string csv_header() { return "rho0,omega_tilde,d,steps,tol"; }

std::string csv_row(const DisplacementSample& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%ld,%.3g", s.rho0, s.omega_tilde, s.d, s.steps, s.tol);
  return buf;
}

}  // namespace hopfcyc
