#pragma once

#include "hopfcyc/rational.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace hopfcyc {

using MExponent = std::vector<int>;

// Sparse multivariate polynomial over Q in a fixed number of variables,
// terms ordered lexicographically (variable 0 dominant). Variable names
// live with the owner; only indices are stored here.
class MPoly {
 public:
  using Map = std::map<MExponent, Rational>;

  MPoly() = default;
  explicit MPoly(std::size_t nvars) : nvars_(nvars) {}
  MPoly(std::size_t nvars, const Rational& c);

  static MPoly variable(std::size_t nvars, std::size_t index, const Rational& scale = 1);

  std::size_t num_vars() const { return nvars_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // coefficient of the unit monomial

  void add_term(const MExponent& e, const Rational& c);

  int total_degree() const;
  int degree_in(std::size_t var) const;
  // Coefficient of var^k as a polynomial in the same variable set.
  MPoly coefficient_in(std::size_t var, int k) const;
  // Set of variables that occur.
  std::vector<std::size_t> support() const;

  MPoly derivative(std::size_t var) const;
  MPoly substitute(std::size_t var, const Rational& value) const;
  MPoly substitute(std::size_t var, const MPoly& value) const;
  Rational evaluate(std::span<const Rational> values) const;
  double evaluate(std::span<const double> values) const;

  // Leading term under lex order.
  const std::pair<const MExponent, Rational>& leading() const { return *terms_.rbegin(); }

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const Rational& c);
  MPoly operator-() const;
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  MPoly pow(int k) const;

  // Exact quotient; throws std::domain_error if b does not divide a.
  friend MPoly divexact(const MPoly& a, const MPoly& b);

  // Scales to a primitive polynomial with integer coefficients and positive
  // leading coefficient.
  MPoly primitive() const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void check(const MPoly& o) const;
  std::size_t nvars_ = 0;
  Map terms_;
};

inline bool is_zero(const MPoly& p) { return p.is_zero(); }

// Resultant with respect to `var` via the Sylvester determinant, computed by
// fraction-free elimination over the polynomial ring.
MPoly resultant(const MPoly& a, const MPoly& b, std::size_t var);

// Pseudo-remainder of a by b in `var` (b must involve var or be nonzero).
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var);

// Greatest common divisor over Q, normalized by MPoly::primitive(); the gcd
// of two constants (not both zero) is 1.
MPoly gcd(const MPoly& a, const MPoly& b);

// Determinant of a square matrix of polynomials (Bareiss with exact division).
MPoly determinant(std::vector<std::vector<MPoly>> m);

}  // namespace hopfcyc
