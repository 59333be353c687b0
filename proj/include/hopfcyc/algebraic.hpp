#pragma once

#include "hopfcyc/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hopfcyc {

// Dense univariate polynomial over Q; c[i] is the coefficient of t^i and the
// leading coefficient is nonzero.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }
  static UPoly monomial(int degree, const Rational& c = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational evaluate(const Rational& t) const;
  int sign_at(const Rational& t) const { return sgn(evaluate(t)); }
  double evaluate(double t) const;
  UPoly derivative() const;
  UPoly monic() const;
  // Integer coefficients, content 1, positive leading coefficient.
  UPoly primitive() const;
  // p(t / s) scaled to be integral and primitive again.
  UPoly scale_argument(const Rational& s) const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly operator-() const;
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Rational& s);
  friend bool operator==(const UPoly& a, const UPoly& b) = default;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct UDivision {
  UPoly quotient;
  UPoly remainder;
};
UDivision divide(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
// Monic gcd (zero when both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
// s*a + t*b = gcd(a, b).
struct ExtendedGcd {
  UPoly g, s, t;
};
ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b);
UPoly square_free_part(const UPoly& p);

// Sturm sequence of a square-free polynomial and root counting on (a, b].
std::vector<UPoly> sturm_sequence(const UPoly& p);
int sign_changes_at(const std::vector<UPoly>& seq, const Rational& t);
int count_roots(const std::vector<UPoly>& seq, const Rational& a, const Rational& b);

// Parses sums of terms c*var^k with rational c (for example
// "3*alpha^2 - 1/2*alpha + 7"). Throws std::invalid_argument.
UPoly parse_upoly(std::string_view text, const std::string& var);

// A real root of a square-free integer polynomial, given by an interval
// (lo, hi) containing exactly one root, with poly(lo) and poly(hi) nonzero;
// lo == hi marks an exactly known rational root.
class AlgebraicNumber {
 public:
  AlgebraicNumber() = default;
  // Throws std::invalid_argument unless poly is square-free and has exactly
  // one root in (lo, hi].
  AlgebraicNumber(UPoly poly, Rational lo, Rational hi);

  const UPoly& poly() const { return poly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  bool is_rational() const { return lo_ == hi_; }

  // Bisects until the width is at most `width`.
  void refine(const Rational& width);
  double approx() const;
  // Zero test of e(alpha) and its sign (refining a private copy as needed).
  bool is_root_of(const UPoly& e) const;
  int sign_of(const UPoly& e) const;

 private:
  UPoly poly_;
  std::vector<UPoly> sturm_;
  Rational lo_, hi_;
};

// All real roots of p in increasing order, each isolated and refined to
// width <= 2^-64.
std::vector<AlgebraicNumber> real_roots(const UPoly& p);

// Real rational roots of p (exact).
std::vector<Rational> rational_roots(const UPoly& p);

// Irreducibility over Q certified by factor degree patterns modulo primes:
// returns the primes used when certified, nullopt otherwise.
std::optional<std::vector<unsigned long>> certify_irreducible(const UPoly& p, int max_primes = 200);

// Q(alpha) for a real algebraic alpha; the modulus is a square-free
// polynomial vanishing at alpha (the minimal polynomial when certified).
class NumberField {
 public:
  explicit NumberField(AlgebraicNumber alpha, std::string name = "alpha");
  const AlgebraicNumber& alpha() const { return alpha_; }
  const UPoly& modulus() const { return alpha_.poly(); }
  const std::string& name() const { return name_; }

 private:
  AlgebraicNumber alpha_;
  std::string name_;
};

using NumberFieldPtr = std::shared_ptr<const NumberField>;

class NumberFieldElement {
 public:
  NumberFieldElement() = default;
  NumberFieldElement(NumberFieldPtr field, UPoly rep);
  static NumberFieldElement constant(NumberFieldPtr field, const Rational& c);
  static NumberFieldElement generator(NumberFieldPtr field);

  const NumberFieldPtr& field() const { return field_; }
  const UPoly& rep() const { return rep_; }
  bool is_zero() const;
  int sign() const;
  double approx() const;
  // Inverse at alpha; throws std::domain_error when the element is zero.
  NumberFieldElement inverse() const;

  NumberFieldElement& operator+=(const NumberFieldElement& o);
  NumberFieldElement& operator-=(const NumberFieldElement& o);
  NumberFieldElement& operator*=(const NumberFieldElement& o);
  NumberFieldElement operator-() const;
  friend NumberFieldElement operator+(NumberFieldElement a, const NumberFieldElement& b) { return a += b; }
  friend NumberFieldElement operator-(NumberFieldElement a, const NumberFieldElement& b) { return a -= b; }
  friend NumberFieldElement operator*(NumberFieldElement a, const NumberFieldElement& b) { return a *= b; }
  friend NumberFieldElement operator/(const NumberFieldElement& a, const NumberFieldElement& b) { return a * b.inverse(); }
  friend NumberFieldElement operator*(NumberFieldElement a, const Rational& s);

  std::string to_string() const;

 private:
  NumberFieldPtr field_;
  UPoly rep_;
};

}  // namespace hopfcyc
