#include "hopfcyc/mpoly.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

namespace hopfcyc {

MPoly::MPoly(std::size_t nvars, const Rational& c) : nvars_(nvars) {
  if (sgn(c) != 0) terms_.emplace(MExponent(nvars, 0), c);
}

MPoly MPoly::variable(std::size_t nvars, std::size_t index, const Rational& scale) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  MPoly p(nvars);
  MExponent e(nvars, 0);
  e[index] = 1;
  p.add_term(e, scale);
  return p;
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

Rational MPoly::constant_value() const {
  auto it = terms_.find(MExponent(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::add_term(const MExponent& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("monomial arity mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

int MPoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

MPoly MPoly::coefficient_in(std::size_t var, int k) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != k) continue;
    MExponent f = e;
    f[var] = 0;
    out.add_term(f, c);
  }
  return out;
}

std::vector<std::size_t> MPoly::support() const {
  std::set<std::size_t> s;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) s.insert(i);
  return {s.begin(), s.end()};
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    MExponent f = e;
    f[var] -= 1;
    out.add_term(f, c * e[var]);
  }
  return out;
}

MPoly MPoly::substitute(std::size_t var, const Rational& value) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    MExponent f = e;
    Rational v = c;
    for (int k = 0; k < e[var]; ++k) v *= value;
    f[var] = 0;
    out.add_term(f, v);
  }
  return out;
}

MPoly MPoly::substitute(std::size_t var, const MPoly& value) const {
  int deg = degree_in(var);
  std::vector<MPoly> powers{MPoly(nvars_, Rational(1))};
  for (int k = 1; k <= deg; ++k) powers.push_back(powers.back() * value);
  MPoly out(nvars_);
  for (int k = 0; k <= deg; ++k) {
    MPoly ck = coefficient_in(var, k);
    if (!ck.is_zero()) out += ck * powers[static_cast<std::size_t>(k)];
  }
  return out;
}

Rational MPoly::evaluate(std::span<const Rational> values) const {
  if (values.size() != nvars_) throw std::invalid_argument("evaluate(): wrong number of values");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= values[i];
    s += t;
  }
  return s;
}

double MPoly::evaluate(std::span<const double> values) const {
  if (values.size() != nvars_) throw std::invalid_argument("evaluate(): wrong number of values");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i) t *= std::pow(values[i], e[i]);
    s += t;
  }
  return s;
}

void MPoly::check(const MPoly& o) const {
  if (o.nvars_ != nvars_ && !o.terms_.empty() && !terms_.empty())
    throw std::invalid_argument("polynomials over different variable sets");
}

MPoly& MPoly::operator+=(const MPoly& o) {
  check(o);
  if (terms_.empty()) nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  check(o);
  if (terms_.empty()) nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check(b);
  MPoly out(std::max(a.nvars_, b.nvars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      MExponent e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MPoly MPoly::pow(int k) const {
  MPoly out(nvars_, Rational(1));
  MPoly base = *this;
  while (k > 0) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return out;
}

MPoly divexact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  MPoly q(a.nvars_);
  MPoly r = a;
  const auto& [lb, cb] = b.leading();
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading();
    MExponent e = lr;
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] -= lb[i];
      if (e[i] < 0) throw std::domain_error("inexact polynomial division");
    }
    Rational c = cr / cb;
    MPoly t(a.nvars_);
    t.add_term(e, c);
    q += t;
    r -= t * b;
  }
  return q;
}

MPoly MPoly::primitive() const {
  if (terms_.empty()) return *this;
  Integer lcm = 1;
  for (const auto& [e, c] : terms_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer g = 0;
  for (const auto& [e, c] : terms_) {
    Integer v = c.get_num() * (lcm / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  Rational scale(lcm, g);
  scale.canonicalize();
  if (sgn(leading().second) < 0) scale = -scale;
  return *this * scale;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += i < names.size() ? names[i] : "v" + std::to_string(i);
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    Rational mag = abs(c);
    if (out.empty())
      out += sgn(c) < 0 ? "-" : "";
    else
      out += sgn(c) < 0 ? " - " : " + ";
    if (mono.empty())
      out += hopfcyc::to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += hopfcyc::to_string(mag) + "*" + mono;
  }
  return out;
}

MPoly determinant(std::vector<std::vector<MPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return MPoly(0, Rational(1));
  std::size_t nvars = 0;
  for (const auto& row : m)
    for (const auto& v : row) nvars = std::max(nvars, v.num_vars());
  MPoly prev(nvars, Rational(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return MPoly(nvars);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MPoly t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = divexact(t, prev);
      }
      m[i][k] = MPoly(nvars);
    }
    prev = m[k][k];
  }
  MPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

MPoly resultant(const MPoly& a, const MPoly& b, std::size_t var) {
  const int da = a.degree_in(var);
  const int db = b.degree_in(var);
  const std::size_t nvars = std::max(a.num_vars(), b.num_vars());
  if (da < 0 || db < 0) return MPoly(nvars);
  if (da == 0 && db == 0) return MPoly(nvars, Rational(1));
  if (da == 0) return a.coefficient_in(var, 0).pow(db);
  if (db == 0) return b.coefficient_in(var, 0).pow(da);
  const std::size_t n = static_cast<std::size_t>(da + db);
  std::vector<std::vector<MPoly>> s(n, std::vector<MPoly>(n, MPoly(nvars)));
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) s[r][r + da - k] = a.coefficient_in(var, k);
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k) s[db + r][r + db - k] = b.coefficient_in(var, k);
  return determinant(std::move(s));
}

MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var) {
  const int db = b.degree_in(var);
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  const std::size_t n = std::max(a.num_vars(), b.num_vars());
  MPoly lb = b.coefficient_in(var, db);
  MPoly r = a;
  MPoly x = MPoly::variable(n, var);
  for (int dr = r.degree_in(var); !r.is_zero() && dr >= db; dr = r.degree_in(var))
    r = lb * r - r.coefficient_in(var, dr) * x.pow(dr - db) * b;
  return r;
}

namespace {

// Largest variable index occurring in either polynomial.
std::optional<std::size_t> main_variable(const MPoly& a, const MPoly& b) {
  std::optional<std::size_t> v;
  for (const MPoly* p : {&a, &b})
    for (std::size_t i : p->support())
      if (!v || i > *v) v = i;
  return v;
}

MPoly content_in(const MPoly& p, std::size_t var) {
  MPoly c(p.num_vars());
  for (int k = 0; k <= p.degree_in(var); ++k) {
    MPoly ck = p.coefficient_in(var, k);
    if (!ck.is_zero()) c = gcd(c, ck);
  }
  return c;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  const std::size_t n = std::max(a.num_vars(), b.num_vars());
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  auto v = main_variable(a, b);
  if (!v) return MPoly(n, Rational(1));
  const std::size_t var = *v;
  if (a.degree_in(var) == 0) return gcd(a, content_in(b, var));
  if (b.degree_in(var) == 0) return gcd(content_in(a, var), b);
  MPoly ca = content_in(a, var);
  MPoly cb = content_in(b, var);
  MPoly x = divexact(a, ca);
  MPoly y = divexact(b, cb);
  if (x.degree_in(var) < y.degree_in(var)) std::swap(x, y);
  while (true) {
    MPoly r = pseudo_remainder(x, y, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      y = MPoly(n, Rational(1));
      break;
    }
    x = std::move(y);
    y = divexact(r, content_in(r, var));
  }
  return (gcd(ca, cb) * y).primitive();
}

}  // namespace hopfcyc
