#include "hopfcyc/poly3.hpp"

#include <cmath>

namespace hopfcyc {

std::string monomial_string(const Exp3& e) {
  static constexpr char kVars[3] = {'x', 'y', 'z'};
  std::string out;
  for (int v = 0; v < 3; ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += kVars[v];
    if (e[v] > 1) out += '^' + std::to_string(e[v]);
  }
  return out;
}

Poly3 lift(const QPoly3& p, const JetSpacePtr& space) {
  Poly3 out;
  for (const auto& [e, c] : p.terms()) out.add_term(e, JetPoly(space, c));
  return out;
}

QPoly3 substitute_z(const QPoly3& p, const QPoly3& h, int max_degree) {
  // Powers of h are cached; h^k only contributes from degree 2k upward.
  std::vector<QPoly3> powers{QPoly3::monomial({0, 0, 0}, Rational(1))};
  QPoly3 out;
  for (const auto& [e, c] : p.terms()) {
    int planar = e[0] + e[1];
    if (planar + 2 * e[2] > max_degree && e[2] > 0 && !h.is_zero()) continue;
    while (static_cast<int>(powers.size()) <= e[2])
      powers.push_back(QPoly3::multiply_truncated(powers.back(), h, max_degree));
    QPoly3 base = QPoly3::monomial({e[0], e[1], 0}, c);
    out += QPoly3::multiply_truncated(base, powers[e[2]], max_degree);
  }
  return out;
}

double evaluate(const QPoly3& p, double x, double y, double z) {
  double s = 0;
  for (const auto& [e, c] : p.terms()) s += c.get_d() * std::pow(x, e[0]) * std::pow(y, e[1]) * std::pow(z, e[2]);
  return s;
}

Rational evaluate(const QPoly3& p, const Rational& x, const Rational& y, const Rational& z) {
  Rational s = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational t = c;
    for (int i = 0; i < e[0]; ++i) t *= x;
    for (int i = 0; i < e[1]; ++i) t *= y;
    for (int i = 0; i < e[2]; ++i) t *= z;
    s += t;
  }
  return s;
}

namespace {

template <class Coeff, class Str>
std::string poly_string(const TriPoly<Coeff>& p, Str coeff_str) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    std::string mono = monomial_string(e);
    std::string cs = coeff_str(c);
    if (mono.empty())
      out += cs;
    else
      out += "(" + cs + ")*" + mono;
  }
  return out;
}

}  // namespace

std::string to_string(const QPoly3& p) {
  return poly_string(p, [](const Rational& c) { return hopfcyc::to_string(c); });
}

std::string to_string(const Poly3& p) {
  return poly_string(p, [](const JetPoly& c) { return c.to_string(); });
}

}  // namespace hopfcyc
