#pragma once

#include "hopfcyc/jet.hpp"
#include "hopfcyc/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace hopfcyc {

// Exponents (j,k,l) of x^j y^k z^l.
using Exp3 = std::array<int, 3>;

inline int total_degree(const Exp3& e) { return e[0] + e[1] + e[2]; }

// Total degree first, then lexicographic with x dominant.
struct Exp3Order {
  bool operator()(const Exp3& a, const Exp3& b) const {
    int da = total_degree(a);
    int db = total_degree(b);
    if (da != db) return da < db;
    return a > b;
  }
};

std::string monomial_string(const Exp3& e);

namespace detail {
template <class C>
bool coeff_is_zero(const C& c) {
  return is_zero(c);
}
}  // namespace detail

// Sparse polynomial in (x,y,z) over a coefficient ring. Coefficients must
// support +, -, *, unary minus, scaling by Rational and is_zero().
template <class Coeff>
class TriPoly {
 public:
  using Map = std::map<Exp3, Coeff, Exp3Order>;

  TriPoly() = default;

  static TriPoly monomial(const Exp3& e, Coeff c) {
    TriPoly p;
    p.add_term(e, std::move(c));
    return p;
  }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::optional<Coeff> coefficient(const Exp3& e) const {
    auto it = terms_.find(e);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
  }

  void add_term(const Exp3& e, const Coeff& c) {
    if (hopfcyc_is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (hopfcyc_is_zero(it->second)) terms_.erase(it);
  }

  // Highest total degree, -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }
  int min_degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

  TriPoly homogeneous(int d) const {
    TriPoly out;
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == d) out.terms_.emplace(e, c);
    return out;
  }

  TriPoly truncated(int max_degree) const {
    TriPoly out;
    for (const auto& [e, c] : terms_)
      if (total_degree(e) <= max_degree) out.terms_.emplace(e, c);
    return out;
  }

  TriPoly derivative(int var) const {
    TriPoly out;
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exp3 f = e;
      f[var] -= 1;
      out.add_term(f, c * Rational(e[var]));
    }
    return out;
  }

  TriPoly& operator+=(const TriPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  TriPoly& operator-=(const TriPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  TriPoly operator-() const {
    TriPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }
  friend TriPoly operator+(TriPoly a, const TriPoly& b) { return a += b; }
  friend TriPoly operator-(TriPoly a, const TriPoly& b) { return a -= b; }

  friend TriPoly operator*(const TriPoly& a, const TriPoly& b) {
    TriPoly out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return out;
  }

  TriPoly scaled(const Rational& s) const {
    TriPoly out;
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
  }

  // Product truncated above total degree max_degree.
  static TriPoly multiply_truncated(const TriPoly& a, const TriPoly& b, int max_degree) {
    TriPoly out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exp3 e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
        if (total_degree(e) <= max_degree) out.add_term(e, ca * cb);
      }
    return out;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using Out = decltype(f(std::declval<const Coeff&>()));
    TriPoly<Out> out;
    for (const auto& [e, c] : terms_) out.add_term(e, f(c));
    return out;
  }

  friend bool operator==(const TriPoly& a, const TriPoly& b) { return a.terms_ == b.terms_; }

 private:
  static bool hopfcyc_is_zero(const Coeff& c) { return detail::coeff_is_zero(c); }
  Map terms_;
};

using QPoly3 = TriPoly<Rational>;
using Poly3 = TriPoly<JetPoly>;

// X H = H_x X[0] + H_y X[1] + H_z X[2].
template <class Coeff>
TriPoly<Coeff> apply_vector_field(const std::array<TriPoly<Coeff>, 3>& field, const TriPoly<Coeff>& h) {
  TriPoly<Coeff> out;
  for (int v = 0; v < 3; ++v) out += h.derivative(v) * field[v];
  return out;
}

inline Poly3 poly3_apply_vector_field(const std::array<Poly3, 3>& field, const Poly3& h) {
  return apply_vector_field(field, h);
}

// Lifts a rational polynomial into the jet ring of `space` (constant jets).
Poly3 lift(const QPoly3& p, const JetSpacePtr& space);

// Substitutes z = h(x,y) and keeps total degree <= max_degree. h must have
// no constant or linear terms for the truncation to be exact.
QPoly3 substitute_z(const QPoly3& p, const QPoly3& h, int max_degree);

double evaluate(const QPoly3& p, double x, double y, double z);
Rational evaluate(const QPoly3& p, const Rational& x, const Rational& y, const Rational& z);

std::string to_string(const QPoly3& p);
std::string to_string(const Poly3& p);

}  // namespace hopfcyc
