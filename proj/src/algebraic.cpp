#include "hopfcyc/algebraic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace hopfcyc {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(int degree, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(degree + 1));
  v.back() = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational UPoly::evaluate(const Rational& t) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r *= t;
    r += *it;
  }
  return r;
}

double UPoly::evaluate(double t) const {
  double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + it->get_d();
  return r;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (1 / leading());
}

UPoly UPoly::primitive() const {
  if (is_zero()) return *this;
  Integer l = 1;
  for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> z;
  Integer g = 0;
  for (const auto& c : c_) {
    Integer v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    z.push_back(v);
  }
  if (sgn(c_.back()) < 0) g = -g;
  std::vector<Rational> out;
  for (auto& v : z) out.emplace_back(Integer(v / g));
  return UPoly(std::move(out));
}

UPoly UPoly::scale_argument(const Rational& s) const {
  std::vector<Rational> out(c_.size());
  Rational f = 1;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    out[i] = c_[i] / f;
    f *= s;
  }
  return UPoly(std::move(out)).primitive();
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(out));
}

UPoly operator*(UPoly a, const Rational& s) {
  for (auto& c : a.c_) c *= s;
  a.trim();
  return a;
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    std::string term = mono.empty() ? hopfcyc::to_string(mag) : (mag == 1 ? mono : hopfcyc::to_string(mag) + "*" + mono);
    if (out.empty())
      out = (sgn(c) < 0 ? "-" : "") + term;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + term;
  }
  return out;
}

UDivision divide(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {UPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(da - db + 1));
  const Rational inv = 1 / b.leading();
  for (int i = da; i >= db; --i) {
    const Rational f = r[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - db)] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(j);
  }
  r.resize(static_cast<std::size_t>(db));
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divide(a, b).remainder; }

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a.primitive();
  UPoly y = b.primitive();
  while (!y.is_zero()) {
    UPoly r = (x % y).primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(1), s1;
  UPoly t0, t1 = UPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divide(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1;
    UPoly t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

UPoly square_free_part(const UPoly& p) {
  if (p.degree() <= 0) return p;
  UPoly g = gcd(p, p.derivative());
  return divide(p, g).quotient.primitive();
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    UPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern and bounds coefficient size.
    UPoly rp = r.primitive();
    if (sgn(rp.leading()) != sgn(r.leading())) rp = -rp;
    seq.push_back(-rp);
  }
  return seq;
}

int sign_changes_at(const std::vector<UPoly>& seq, const Rational& t) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = p.sign_at(t);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int count_roots(const std::vector<UPoly>& seq, const Rational& a, const Rational& b) {
  return sign_changes_at(seq, a) - sign_changes_at(seq, b);
}

UPoly parse_upoly(std::string_view text, const std::string& var) {
  std::size_t i = 0;
  auto skip = [&]() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("column " + std::to_string(i + 1) + ": " + what);
  };
  auto read_int = [&]() {
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) fail("expected digits");
    std::string s(text.substr(i, j - i));
    i = j;
    return Integer(s);
  };
  UPoly out;
  skip();
  if (i == text.size()) fail("empty polynomial");
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    Rational c = sign;
    int power = 0;
    bool any = false;
    while (true) {
      skip();
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        Integer num = read_int();
        skip();
        if (i < text.size() && text[i] == '/') {
          ++i;
          skip();
          Integer den = read_int();
          if (den == 0) fail("zero denominator");
          c *= make_rational(num, den);
        } else {
          c *= Rational(num);
        }
      } else if (text.substr(i, var.size()) == var) {
        i += var.size();
        skip();
        int e = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip();
          e = static_cast<int>(read_int().get_si());
        }
        power += e;
      } else {
        fail("expected a number or '" + var + "'");
      }
      any = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (any) out += UPoly::monomial(power, c);
  }
  return out;
}

// ---------------------------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(UPoly poly, Rational lo, Rational hi)
    : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (poly_.degree() < 1) throw std::invalid_argument("algebraic number needs a nonconstant polynomial");
  if (gcd(poly_, poly_.derivative()).degree() > 0) throw std::invalid_argument("polynomial is not square-free");
  if (lo_ > hi_) throw std::invalid_argument("empty isolating interval");
  sturm_ = sturm_sequence(poly_);
  if (lo_ == hi_) {
    if (poly_.sign_at(lo_) != 0) throw std::invalid_argument("point interval is not a root");
    return;
  }
  if (count_roots(sturm_, lo_, hi_) != 1) throw std::invalid_argument("interval does not isolate exactly one root");
  if (poly_.sign_at(hi_) == 0) {
    lo_ = hi_;
    return;
  }
  if (poly_.sign_at(lo_) == 0) throw std::logic_error("root at open endpoint");
}

void AlgebraicNumber::refine(const Rational& width) {
  if (is_rational()) return;
  int slo = poly_.sign_at(lo_);
  while (hi_ - lo_ > width) {
    Rational mid = (lo_ + hi_) / 2;
    int s = poly_.sign_at(mid);
    if (s == 0) {
      lo_ = hi_ = mid;
      return;
    }
    if (s == slo)
      lo_ = mid;
    else
      hi_ = mid;
  }
}

double AlgebraicNumber::approx() const {
  AlgebraicNumber a = *this;
  Rational scale = 1 + std::max(Rational(abs(lo_)), Rational(abs(hi_)));
  a.refine(scale / (Integer(1) << 60));
  return Rational((a.lo_ + a.hi_) / 2).get_d();
}

bool AlgebraicNumber::is_root_of(const UPoly& e) const {
  if (e.is_zero()) return true;
  if (is_rational()) return e.sign_at(lo_) == 0;
  UPoly g = gcd(e, poly_);
  if (g.degree() <= 0) return false;
  // g divides poly, so it has no root at lo; count roots in (lo, hi].
  return count_roots(sturm_sequence(g), lo_, hi_) == 1;
}

int AlgebraicNumber::sign_of(const UPoly& e) const {
  if (is_root_of(e)) return 0;
  if (is_rational()) return e.sign_at(lo_);
  AlgebraicNumber copy = *this;
  UPoly es = square_free_part(e);
  auto seq = sturm_sequence(es);
  // Shrink until e has no root on [lo, hi].
  Rational w = copy.width();
  while (es.sign_at(copy.lo_) == 0 || es.sign_at(copy.hi_) == 0 || count_roots(seq, copy.lo_, copy.hi_) != 0) {
    w /= 2;
    copy.refine(w);
    if (copy.is_rational()) return e.sign_at(copy.lo_);
  }
  return e.sign_at(copy.hi_);
}

namespace {

// Cauchy bound rounded up to a power of two, so that bisection points stay
// dyadic: every real root lies strictly inside (-B, B).
Rational root_bound(const UPoly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i) / p.leading())));
  m += 1;
  Rational b = 1;
  while (b < m) b *= 2;
  return b;
}

void isolate(const UPoly& p, const std::vector<UPoly>& seq, const Rational& a, const Rational& b, int count,
             std::vector<AlgebraicNumber>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.emplace_back(p, a, b);
    return;
  }
  Rational mid = (a + b) / 2;
  for (int k = 1; p.sign_at(mid) == 0; ++k) mid = a + (b - a) * make_rational(2 * k + 1, 4 * k + 4);
  int left = count_roots(seq, a, mid);
  isolate(p, seq, a, mid, left, out);
  isolate(p, seq, mid, b, count - left, out);
}

}  // namespace

std::vector<AlgebraicNumber> real_roots(const UPoly& p) {
  UPoly q = square_free_part(p);
  if (q.degree() < 1) return {};
  auto seq = sturm_sequence(q);
  Rational B = root_bound(q);
  std::vector<AlgebraicNumber> out;
  isolate(q, seq, -B, B, count_roots(seq, -B, B), out);
  Rational width = make_rational(Integer(1), Integer(1) << 64);
  for (auto& r : out) r.refine(width);
  return out;
}

std::vector<Rational> rational_roots(const UPoly& p) {
  UPoly q = square_free_part(p);
  std::vector<Rational> out;
  if (q.degree() < 1) return out;
  // For a primitive integer q, lc * r is an integer for every rational root r.
  Integer lc = abs(q.leading().get_num());
  Rational width = make_rational(Integer(1), lc * 4);
  for (auto root : real_roots(q)) {
    if (root.is_rational()) {
      out.push_back(root.lo());
      continue;
    }
    root.refine(width);
    if (root.is_rational()) {
      out.push_back(root.lo());
      continue;
    }
    Rational scaled = root.hi() * Rational(lc);
    Integer k = scaled.get_num() / scaled.get_den();  // trunc toward zero
    for (Integer cand : {Integer(k - 1), k, Integer(k + 1)}) {
      Rational r = make_rational(cand, lc);
      if (r > root.lo() && r <= root.hi() && q.sign_at(r) == 0) out.push_back(r);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials over Z/p for the irreducibility certificate.

namespace {

using ModPoly = std::vector<std::uint64_t>;  // low to high, trimmed

void mtrim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

ModPoly mmod(ModPoly a, const ModPoly& b, std::uint64_t p) {
  const std::uint64_t inv = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint64_t f = mulmod(a.back(), inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + p - mulmod(f, b[j], p)) % p;
    mtrim(a);
  }
  return a;
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
  mtrim(out);
  return out;
}

ModPoly mgcd(ModPoly a, ModPoly b, std::uint64_t p) {
  while (!b.empty()) {
    ModPoly r = mmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

ModPoly mdiv(ModPoly a, const ModPoly& b, std::uint64_t p) {
  if (a.size() < b.size()) return {};
  ModPoly q(a.size() - b.size() + 1);
  const std::uint64_t inv = invmod(b.back(), p);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    std::uint64_t f = mulmod(a[i], inv, p);
    std::size_t shift = i + 1 - b.size();
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + p - mulmod(f, b[j], p)) % p;
    if (i == b.size() - 1) break;
  }
  mtrim(q);
  return q;
}

// Degrees of the irreducible factors of a square-free f over Z/p.
std::vector<int> factor_degrees(ModPoly f, std::uint64_t p) {
  std::vector<int> out;
  ModPoly h = mmod(ModPoly{0, 1}, f, p);
  for (int i = 1; static_cast<int>(f.size()) - 1 >= 2 * i; ++i) {
    // h = x^(p^i) mod f
    ModPoly next{1};
    {
      ModPoly base = h;
      std::uint64_t e = p;
      while (e) {
        if (e & 1) next = mmod(mmul(next, base, p), f, p);
        base = mmod(mmul(base, base, p), f, p);
        e >>= 1;
      }
    }
    h = next;
    ModPoly hx = h;
    if (hx.size() < 2) hx.resize(2);
    hx[1] = (hx[1] + p - 1) % p;
    mtrim(hx);
    ModPoly g = mgcd(f, hx, p);
    int dg = static_cast<int>(g.size()) - 1;
    if (dg > 0) {
      for (int k = 0; k < dg / i; ++k) out.push_back(i);
      f = mdiv(f, g, p);
      h = mmod(h, f, p);
    }
  }
  if (f.size() > 1) out.push_back(static_cast<int>(f.size()) - 1);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::optional<std::vector<unsigned long>> certify_irreducible(const UPoly& poly, int max_primes) {
  UPoly q = poly.primitive();
  const int n = q.degree();
  if (n < 1) return std::nullopt;
  if (n == 1) return std::vector<unsigned long>{};
  // Degrees a proper factor over Q could have, narrowed by each prime.
  std::vector<char> possible(static_cast<std::size_t>(n + 1), 1);
  std::vector<unsigned long> used;
  int tried = 0;
  for (std::uint64_t p = 3; tried < max_primes; p += 2) {
    if (!is_prime(p)) continue;
    ++tried;
    Integer lc = q.leading().get_num();
    if (mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
    ModPoly f;
    for (int i = 0; i <= n; ++i) {
      Integer c = q.coeff(i).get_num();
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
      f.push_back(r.get_ui());
    }
    mtrim(f);
    // derivative
    ModPoly df;
    for (std::size_t i = 1; i < f.size(); ++i) df.push_back(mulmod(f[i], i % p, p));
    mtrim(df);
    if (df.empty() || mgcd(f, df, p).size() > 1) continue;
    auto degs = factor_degrees(f, p);
    std::vector<char> sums(static_cast<std::size_t>(n + 1), 0);
    sums[0] = 1;
    for (int d : degs)
      for (int s = n; s >= d; --s)
        if (sums[static_cast<std::size_t>(s - d)]) sums[static_cast<std::size_t>(s)] = 1;
    bool changed = false;
    for (int s = 1; s < n; ++s)
      if (possible[static_cast<std::size_t>(s)] && !sums[static_cast<std::size_t>(s)]) {
        possible[static_cast<std::size_t>(s)] = 0;
        changed = true;
      }
    if (changed) used.push_back(static_cast<unsigned long>(p));
    bool any = false;
    for (int s = 1; s < n; ++s) any = any || possible[static_cast<std::size_t>(s)];
    if (!any) return used;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

NumberField::NumberField(AlgebraicNumber alpha, std::string name) : alpha_(std::move(alpha)), name_(std::move(name)) {}

NumberFieldElement::NumberFieldElement(NumberFieldPtr field, UPoly rep) : field_(std::move(field)) {
  rep_ = rep.degree() >= field_->modulus().degree() ? rep % field_->modulus() : std::move(rep);
}

NumberFieldElement NumberFieldElement::constant(NumberFieldPtr field, const Rational& c) {
  return NumberFieldElement(std::move(field), UPoly::constant(c));
}

NumberFieldElement NumberFieldElement::generator(NumberFieldPtr field) {
  return NumberFieldElement(std::move(field), UPoly::monomial(1));
}

bool NumberFieldElement::is_zero() const { return rep_.is_zero() || field_->alpha().is_root_of(rep_); }

int NumberFieldElement::sign() const { return field_->alpha().sign_of(rep_); }

double NumberFieldElement::approx() const { return rep_.evaluate(field_->alpha().approx()); }

NumberFieldElement NumberFieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in Q(" + field_->name() + ")");
  // Work modulo the factor of the modulus that vanishes at alpha; the result
  // has the right value at alpha.
  UPoly m = field_->modulus();
  UPoly g = gcd(rep_, m);
  if (g.degree() > 0) m = divide(m, g).quotient;
  auto eg = extended_gcd(rep_ % m, m);
  if (eg.g.degree() != 0) throw std::logic_error("inverse modulo a reduced modulus failed");
  return NumberFieldElement(field_, eg.s);
}

NumberFieldElement& NumberFieldElement::operator+=(const NumberFieldElement& o) {
  rep_ += o.rep_;
  return *this;
}

NumberFieldElement& NumberFieldElement::operator-=(const NumberFieldElement& o) {
  rep_ -= o.rep_;
  return *this;
}

NumberFieldElement& NumberFieldElement::operator*=(const NumberFieldElement& o) {
  rep_ = (rep_ * o.rep_) % field_->modulus();
  return *this;
}

NumberFieldElement NumberFieldElement::operator-() const { return NumberFieldElement(field_, -rep_); }

NumberFieldElement operator*(NumberFieldElement a, const Rational& s) {
  a.rep_ = a.rep_ * s;
  return a;
}

std::string NumberFieldElement::to_string() const { return rep_.to_string(field_->name()); }

}  // namespace hopfcyc
