#include "hopfcyc/cyclicity.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hopfcyc {

RankCertificate rank_certificate(const FocalSequence& f) {
  RankCertificate c;
  c.K = f.K;
  c.matrix = linear_part_matrix(f);
  auto prof = rank_profile(c.matrix);
  c.rank = prof.rank;
  c.pivots = prof.pivot_cols;
  for (auto p : c.pivots) c.pivot_names.push_back(f.space->names()[p]);
  return c;
}

namespace {

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

MPoly restrict_vars(const MPoly& p, const std::vector<std::size_t>& keep) {
  MPoly out(keep.size());
  for (const auto& [e, c] : p.terms()) {
    MExponent f(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) f[i] = e[keep[i]];
    out.add_term(f, c);
  }
  return out;
}

}  // namespace

HigherOrderProblem reduce_to_quadratic_problem(const FocalSequence& f, const RankCertificate& cert, int extra) {
  if (f.T < 2) throw std::invalid_argument("the higher-order reduction needs jet order T >= 2");
  if (extra < 1) throw std::invalid_argument("extra must be positive");
  const std::size_t r = cert.rank;
  const std::size_t m = f.space->num_params();
  if (r + static_cast<std::size_t>(extra) > f.L.size())
    throw std::invalid_argument("rank " + std::to_string(r) + " plus " + std::to_string(extra) + " exceeds the " +
                                std::to_string(f.L.size()) + " computed focal coefficients");
  const QMatrix& M = cert.matrix;
  QMatrix top = M.select_rows(iota_vec(r));
  std::vector<std::size_t> pivots = cert.pivots;
  QMatrix A = top.select_cols(pivots);
  auto Ainv = inverse(A);
  if (!Ainv) {
    auto prof = rank_profile(top);
    if (prof.rank < r)
      throw std::invalid_argument("the linear parts of L_1..L_" + std::to_string(r) + " are dependent");
    pivots = prof.pivot_cols;
    A = top.select_cols(pivots);
    Ainv = inverse(A);
  }
  std::vector<std::size_t> residual;
  for (std::size_t j = 0; j < m; ++j)
    if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) residual.push_back(j);

  // pivots = S * residual on L^1_1 = ... = L^1_r = 0.
  QMatrix S = *Ainv * top.select_cols(residual);
  std::vector<MPoly> pivot_values;
  for (std::size_t i = 0; i < r; ++i) {
    MPoly v(m);
    for (std::size_t j = 0; j < residual.size(); ++j)
      if (sgn(S(i, j)) != 0) v += MPoly::variable(m, residual[j], -S(i, j));
    pivot_values.push_back(std::move(v));
  }

  std::vector<int> indices(r + static_cast<std::size_t>(extra));
  std::iota(indices.begin(), indices.end(), 1);
  auto quad = quadratic_parts(f, indices);

  HigherOrderProblem p;
  p.k = static_cast<int>(r);
  p.residual_positions = residual;
  for (auto j : residual) p.residual.push_back(f.space->names()[j]);
  for (std::size_t i = r; i < r + static_cast<std::size_t>(extra); ++i) {
    // Row i as a combination of the first r rows.
    QMatrix row = M.select_rows({i});
    QMatrix c = row.select_cols(pivots) * *Ainv;
    if (!(c * top == row)) throw std::logic_error("linear part outside the span of the first rows");
    MPoly q = quad[i];
    for (std::size_t j = 0; j < r; ++j)
      if (sgn(c(0, j)) != 0) q -= quad[j] * c(0, j);
    for (std::size_t j = 0; j < r; ++j) q = q.substitute(pivots[j], pivot_values[j]);
    p.h.push_back(restrict_vars(q, residual));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q(alpha).

namespace {

using NFE = NumberFieldElement;

struct NFPoly {
  std::vector<NFE> c;  // low to high, leading coefficient nonzero at alpha

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
};

NFPoly nf_mod(NFPoly a, const NFPoly& b) {
  const NFE inv = b.c.back().inverse();
  while (a.degree() >= b.degree()) {
    NFE f = a.c.back() * inv;
    const std::size_t shift = a.c.size() - b.c.size();
    for (std::size_t j = 0; j < b.c.size(); ++j) a.c[shift + j] -= f * b.c[j];
    a.c.pop_back();
    a.trim();
  }
  return a;
}

NFPoly nf_gcd(NFPoly a, NFPoly b) {
  while (!b.is_zero()) {
    NFPoly r = nf_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const NFE inv = a.c.back().inverse();
  for (auto& x : a.c) x *= inv;
  return a;
}

NFPoly nf_derivative(const NFPoly& a) {
  NFPoly d;
  for (std::size_t i = 1; i < a.c.size(); ++i) d.c.push_back(a.c[i] * Rational(static_cast<long>(i)));
  d.trim();
  return d;
}

NFPoly nf_divide(NFPoly a, const NFPoly& b) {
  NFPoly q;
  q.c.assign(a.c.size() - b.c.size() + 1, NFE::constant(b.c.back().field(), 0));
  const NFE inv = b.c.back().inverse();
  while (a.degree() >= b.degree()) {
    NFE f = a.c.back() * inv;
    const std::size_t shift = a.c.size() - b.c.size();
    q.c[shift] = f;
    for (std::size_t j = 0; j < b.c.size(); ++j) a.c[shift + j] -= f * b.c[j];
    a.c.pop_back();
    a.trim();
  }
  q.trim();
  return q;
}

NFPoly nf_square_free(const NFPoly& a) {
  if (a.degree() <= 0) return a;
  NFPoly g = nf_gcd(a, nf_derivative(a));
  if (g.degree() <= 0) return a;
  return nf_divide(a, g);
}

// p with every variable except `var` replaced by its value.
NFPoly specialize(const MPoly& p, const std::vector<std::optional<NFE>>& values, std::size_t var,
                  const NumberFieldPtr& field) {
  NFPoly out;
  for (const auto& [e, c] : p.terms()) {
    NFE t = NFE::constant(field, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i == var || e[i] == 0) continue;
      if (!values[i]) throw std::logic_error("specialize: missing value");
      for (int k = 0; k < e[i]; ++k) t *= *values[i];
    }
    const auto d = static_cast<std::size_t>(e[var]);
    if (out.c.size() <= d) out.c.resize(d + 1, NFE::constant(field, 0));
    out.c[d] += t;
  }
  out.trim();
  return out;
}

NFE determinant(std::vector<std::vector<NFE>> m, const NumberFieldPtr& field) {
  const std::size_t n = m.size();
  NFE det = NFE::constant(field, 1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return NFE::constant(field, 0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const NFE inv = m[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      NFE f = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

// Largest s with s^i | c_i for i >= 1 over the primes of gcd(c_1..c_n) that
// trial division finds.
Integer root_scale(const UPoly& primitive_poly) {
  const int n = primitive_poly.degree();
  Integer g = 0;
  for (int i = 1; i <= n; ++i) {
    Integer c = primitive_poly.coeff(i).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  g = abs(g);
  Integer s = 1;
  auto try_prime = [&](unsigned long p) {
    int best = -1;
    for (int i = 1; i <= n; ++i) {
      Integer c = abs(primitive_poly.coeff(i).get_num());
      if (c == 0) continue;
      int v = 0;
      while (mpz_divisible_ui_p(c.get_mpz_t(), p)) {
        c /= p;
        ++v;
      }
      int e = v / i;
      best = best < 0 ? e : std::min(best, e);
    }
    for (int k = 0; k < best; ++k) s *= p;
  };
  for (unsigned long p = 2; p < 1000000 && g > 1; ++p) {
    if (!mpz_divisible_ui_p(g.get_mpz_t(), p)) continue;
    try_prime(p);
    while (mpz_divisible_ui_p(g.get_mpz_t(), p)) g /= p;
  }
  return s;
}

struct Stage {
  std::size_t var;
  std::vector<MPoly> equations;  // before eliminating var
  std::vector<MPoly> removed;    // common factors divided out for var
};

struct Elimination {
  std::vector<Stage> stages;
  std::size_t final_var = 0;
  UPoly univariate;
  std::string failure;
};

UPoly as_univariate(const MPoly& p, std::size_t var) {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(p.degree_in(var), 0) + 1));
  for (const auto& [e, v] : p.terms()) c[static_cast<std::size_t>(e[var])] += v;
  return UPoly(std::move(c));
}

Elimination eliminate(std::vector<MPoly> eqs, std::vector<std::size_t> vars, std::vector<std::string>& log,
                      const std::vector<std::string>& names) {
  Elimination out;
  for (auto& e : eqs) e = e.primitive();
  while (vars.size() > 1) {
    // Lowest degree first, ties in declared order.
    std::size_t best = 0;
    int best_deg = -1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      int d = 0;
      for (const auto& e : eqs) d = std::max(d, e.degree_in(vars[i]));
      if (best_deg < 0 || d < best_deg) {
        best = i;
        best_deg = d;
      }
    }
    const std::size_t v = vars[best];
    out.stages.push_back({v, eqs, {}});
    std::vector<MPoly> with, without;
    for (const auto& e : eqs) (e.degree_in(v) > 0 ? with : without).push_back(e);
    std::stable_sort(with.begin(), with.end(),
                     [&](const MPoly& a, const MPoly& b) { return a.degree_in(v) < b.degree_in(v); });
    std::vector<MPoly> next = without;
    for (std::size_t i = 1; i < with.size(); ++i) {
      MPoly g = gcd(with[0], with[i]);
      MPoly a = with[0], b = with[i];
      if (!g.is_constant()) {
        log.push_back("removed common factor " + g.to_string(names) + " before eliminating " + names[v]);
        out.stages.back().removed.push_back(g);
        a = divexact(a, g);
        b = divexact(b, g);
      }
      MPoly res = resultant(a, b, v);
      if (res.is_zero()) {
        out.failure = "resultant in " + names[v] + " vanishes identically";
        return out;
      }
      next.push_back(res.primitive());
    }
    for (const auto& e : next)
      if (e.is_constant() && !e.is_zero()) {
        out.failure = "inconsistent equations after eliminating " + names[v];
        return out;
      }
    std::erase_if(next, [](const MPoly& e) { return e.is_zero(); });
    log.push_back("eliminated " + names[v] + ": " + std::to_string(next.size()) + " equation(s) remain");
    eqs = std::move(next);
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(best));
  }
  if (vars.empty()) {
    out.failure = "no unknowns";
    return out;
  }
  out.final_var = vars[0];
  out.stages.push_back({vars[0], eqs, {}});
  UPoly u;
  for (const auto& e : eqs) u = gcd(u, as_univariate(e, vars[0]));
  if (u.is_zero()) {
    out.failure = "no equation left in " + names[vars[0]];
    return out;
  }
  out.univariate = u.primitive();
  return out;
}

}  // namespace

NumberFieldElement evaluate(const MPoly& p, const std::vector<NumberFieldElement>& point) {
  if (point.empty()) throw std::invalid_argument("empty point");
  const auto& field = point[0].field();
  NFE out = NFE::constant(field, 0);
  for (const auto& [e, c] : p.terms()) {
    NFE t = NFE::constant(field, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    out += t;
  }
  return out;
}

LineVerification verify_line(const HigherOrderProblem& p, const std::vector<NumberFieldElement>& eta) {
  LineVerification v;
  const std::size_t n = p.residual.size();
  if (eta.size() != n) throw std::invalid_argument("eta has the wrong number of coordinates");
  if (p.h.empty()) throw std::invalid_argument("no quadratic forms");
  const auto& field = eta[0].field();
  const std::size_t vanish = p.h.size() - 1;
  for (const auto& h : p.h) v.values.push_back(evaluate(h, eta));
  for (std::size_t i = 0; i < vanish; ++i)
    if (!v.values[i].is_zero()) {
      v.reason = "h" + std::to_string(p.k + 1 + static_cast<int>(i)) + "(eta) is not zero";
      break;
    }
  v.target_value = v.values.back();
  if (v.reason.empty() && v.target_value.is_zero())
    v.reason = "h" + std::to_string(p.target_index()) + "(eta) vanishes";

  // Jacobian of the vanishing forms; the preferred columns leave out the
  // first nonzero coordinate of eta, then all column sets in lex order.
  std::vector<std::vector<NFE>> jac(vanish);
  for (std::size_t i = 0; i < vanish; ++i)
    for (std::size_t c = 0; c < n; ++c) jac[i].push_back(evaluate(p.h[i].derivative(c), eta));
  std::vector<std::vector<std::size_t>> candidates;
  auto first_nonzero = std::find_if(eta.begin(), eta.end(), [](const NFE& x) { return !x.is_zero(); });
  if (first_nonzero != eta.end() && vanish + 1 == n) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != static_cast<std::size_t>(first_nonzero - eta.begin())) cols.push_back(c);
    candidates.push_back(cols);
  }
  if (vanish <= n) {
    std::vector<char> sel(n, 0);
    std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(vanish), 1);
    do {
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < n; ++c)
        if (sel[c]) cols.push_back(c);
      candidates.push_back(cols);
    } while (std::prev_permutation(sel.begin(), sel.end()));
  }
  v.determinant = NFE::constant(field, 0);
  for (const auto& cols : candidates) {
    std::vector<std::vector<NFE>> sub(vanish);
    for (std::size_t i = 0; i < vanish; ++i)
      for (auto c : cols) sub[i].push_back(jac[i][c]);
    NFE d = vanish == 0 ? NFE::constant(field, 1) : determinant(sub, field);
    if (!d.is_zero()) {
      v.determinant = d;
      v.jacobian_columns = cols;
      break;
    }
  }
  if (v.reason.empty() && v.determinant.is_zero()) v.reason = "the Jacobian of the vanishing forms is rank deficient";
  v.ok = v.reason.empty();
  return v;
}

SolveOutcome solve_line(const HigherOrderProblem& p) {
  SolveOutcome out;
  const std::size_t n = p.residual.size();
  const std::size_t l = p.h.size();
  const bool all_zero = std::all_of(p.h.begin(), p.h.end(), [](const MPoly& h) { return h.is_zero(); });
  if (all_zero) {
    out.reason = "all quadratic parts vanish";
    return out;
  }
  if (l < 2) {
    out.reason = "need at least 2 quadratic forms, found " + std::to_string(l);
    return out;
  }
  if (n != l) {
    out.reason = "expected " + std::to_string(l) + " residual parameters for " + std::to_string(l) +
                 " forms, found " + std::to_string(n);
    return out;
  }
  std::vector<std::string> failures;
  for (std::size_t j = 0; j < n; ++j) {
    out.log.push_back("chart " + p.residual[j] + " = 1");
    std::vector<MPoly> eqs;
    for (std::size_t i = 0; i + 1 < l; ++i) {
      MPoly e = p.h[i].substitute(j, Rational(1));
      if (!e.is_zero()) eqs.push_back(e);
    }
    std::vector<std::size_t> vars;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) vars.push_back(c);
    Elimination elim = eliminate(eqs, vars, out.log, p.residual);
    if (!elim.failure.empty()) {
      failures.push_back(p.residual[j] + " = 1: " + elim.failure);
      out.log.push_back(elim.failure);
      continue;
    }
    UPoly u = square_free_part(elim.univariate);
    out.log.push_back("univariate in " + p.residual[elim.final_var] + " of degree " + std::to_string(u.degree()));
    if (u.degree() < 1) {
      failures.push_back(p.residual[j] + " = 1: no solutions");
      continue;
    }
    auto rational = rational_roots(u);
    UPoly irrational = u;
    for (const auto& r : rational) irrational = divide(irrational, UPoly({-r, Rational(1)})).quotient;
    irrational = irrational.degree() > 0 ? irrational.primitive() : irrational;

    for (const auto& root : real_roots(u)) {
      // Field generated by this root, on its rational or irrational factor.
      UPoly modulus;
      std::optional<std::vector<unsigned long>> certified;
      Integer scale = 1;
      Rational lo = root.lo(), hi = root.hi();
      bool is_rational = false;
      for (const auto& r : rational)
        if (r >= root.lo() && r <= root.hi() && (root.is_rational() || r > root.lo())) {
          is_rational = true;
          modulus = UPoly({-r, Rational(1)}).primitive();
          lo = hi = r;
        }
      if (!is_rational) {
        modulus = irrational;
        certified = certify_irreducible(modulus);
        if (certified && modulus.degree() > 1) scale = root_scale(modulus);
      } else {
        certified = std::vector<unsigned long>{};
      }
      const Rational s(scale);
      UPoly scaled = modulus.scale_argument(s);
      auto field = std::make_shared<const NumberField>(AlgebraicNumber(scaled, lo * s, hi * s));
      out.log.push_back("root near " + std::to_string(root.approx()) + " (modulus degree " +
                        std::to_string(scaled.degree()) + ")");

      std::vector<std::optional<NFE>> values(n);
      values[j] = NFE::constant(field, 1);
      values[elim.final_var] = NFE::generator(field) * (1 / s);
      bool ok = true;
      std::string why;
      for (std::size_t st = elim.stages.size() - 1; st-- > 0 && ok;) {
        const Stage& stage = elim.stages[st];
        NFPoly g;
        for (const auto& e : stage.equations) {
          MPoly ej = e;
          NFPoly sp = specialize(ej, values, stage.var, field);
          g = g.is_zero() ? sp : nf_gcd(g, sp);
        }
        g = nf_square_free(g);
        // Roots on a removed common factor belong to a dropped component.
        for (const auto& f : stage.removed) {
          if (g.degree() < 1) break;
          NFPoly fs = specialize(f, values, stage.var, field);
          if (fs.degree() < 1) continue;
          NFPoly common = nf_gcd(g, fs);
          if (common.degree() >= 1) g = nf_divide(g, common);
        }
        if (g.degree() != 1) {
          ok = false;
          why = g.degree() < 1 ? "no value for " + p.residual[stage.var]
                               : "value of " + p.residual[stage.var] + " not unique";
          break;
        }
        values[stage.var] = -(g.c[0] / g.c[1]);
      }
      if (!ok) {
        out.log.push_back("  back-substitution failed: " + why);
        failures.push_back(p.residual[j] + " = 1, root near " + std::to_string(root.approx()) + ": " + why);
        continue;
      }
      std::vector<NFE> eta;
      for (auto& v : values) eta.push_back(*v);
      auto ver = verify_line(p, eta);
      if (!ver.ok) {
        out.log.push_back("  verification failed: " + ver.reason);
        failures.push_back(p.residual[j] + " = 1, root near " + std::to_string(root.approx()) + ": " + ver.reason);
        continue;
      }
      LineCertificate c;
      c.field = field;
      c.irreducible_mod = certified;
      c.final_variable = elim.final_var;
      c.alpha_scale = s;
      c.names = p.residual;
      c.eta = std::move(eta);
      for (std::size_t i = 0; i + 1 < l; ++i) c.vanishing.push_back(p.k + 1 + static_cast<int>(i));
      c.target = p.target_index();
      c.values = ver.values;
      c.determinant = ver.determinant;
      c.jacobian_columns = ver.jacobian_columns;
      c.target_value = ver.target_value;
      c.dehomogenized = j;
      c.total_bound = p.target_index();
      out.certificate = std::move(c);
      return out;
    }
  }
  out.reason = "no verified line";
  for (const auto& f : failures) out.reason += "; " + f;
  return out;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string primes_text(const std::optional<std::vector<unsigned long>>& primes) {
  if (!primes) return "not certified";
  if (primes->empty()) return "certified (degree 1)";
  std::string out = "certified mod";
  for (auto p : *primes) out += " " + std::to_string(p);
  return out;
}

}  // namespace

std::string format_rank_report(const RankCertificate& c, const FocalSequence& f, bool machine) {
  std::ostringstream out;
  const auto& names = f.space->names();
  if (machine) {
    out << "kind = rank-certificate\n";
    out << "K = " << c.K << "\nT = " << f.T << '\n';
    out << "params = " << join(names) << '\n';
    out << "rank = " << c.rank << '\n';
    out << "pivots = " << join(c.pivot_names) << '\n';
    out << "bound_without_trace = " << std::max(c.lower_bound_without_trace(), 0) << '\n';
    out << "bound_with_trace = " << c.lower_bound_with_trace() << '\n';
    for (std::size_t i = 0; i < c.matrix.rows(); ++i) {
      out << "row" << (i + 1) << " = ";
      for (std::size_t j = 0; j < c.matrix.cols(); ++j) out << (j ? ", " : "") << to_string(c.matrix(i, j));
      out << '\n';
    }
    return out.str();
  }
  out << "focal coefficients: K = " << c.K << ", jet order T = " << f.T << '\n';
  out << "perturbation parameters (" << names.size() << "): " << join(names) << '\n';
  out << "rank of the linear parts: " << c.rank << '\n';
  out << "pivot parameters: " << (c.pivot_names.empty() ? "none" : join(c.pivot_names)) << '\n';
  out << "limit cycles from the rank criterion: " << std::max(c.lower_bound_without_trace(), 0) << '\n';
  out << "limit cycles with the trace perturbation: " << c.lower_bound_with_trace() << '\n';
  return out.str();
}

std::string format_line_report(const HigherOrderProblem& p, const LineCertificate& c, bool machine) {
  std::ostringstream out;
  const auto& alpha = c.field->alpha();
  const std::string a = c.field->name();
  if (machine) {
    out << "kind = line-certificate\n";
    out << "alpha_minpoly = " << c.field->modulus().to_string(a) << '\n';
    out << "alpha_interval = " << to_string(alpha.lo()) << ", " << to_string(alpha.hi()) << '\n';
    out << "alpha_irreducible = " << primes_text(c.irreducible_mod) << '\n';
    out << "alpha_scale = " << to_string(c.alpha_scale) << '\n';
    out << "residual = " << join(c.names) << '\n';
    for (std::size_t i = 0; i < c.names.size(); ++i) out << "eta_" << c.names[i] << " = " << c.eta[i].to_string() << '\n';
    for (std::size_t i = 0; i < c.values.size(); ++i)
      out << "h" << (p.k + 1 + static_cast<int>(i)) << " = " << c.values[i].to_string() << '\n';
    std::vector<std::string> cols;
    for (auto j : c.jacobian_columns) cols.push_back(c.names[j]);
    out << "jacobian_columns = " << join(cols) << '\n';
    out << "determinant = " << c.determinant.to_string() << '\n';
    out << "target = " << c.target << '\n';
    out << "target_value = " << c.target_value.to_string() << '\n';
    out << "verified = true\n";
    out << "total_bound = " << c.total_bound << '\n';
    return out.str();
  }
  out << "quadratic parts h" << (p.k + 1) << "..h" << p.target_index() << " in " << join(p.residual) << '\n';
  out << a << " is the real root of\n  " << c.field->modulus().to_string(a) << "\n";
  out << "in (" << to_string(alpha.lo()) << ", " << to_string(alpha.hi()) << "), approximately " << alpha.approx()
      << '\n';
  out << "irreducibility: " << primes_text(c.irreducible_mod) << '\n';
  out << "line eta:\n";
  for (std::size_t i = 0; i < c.names.size(); ++i)
    out << "  " << c.names[i] << " = " << c.eta[i].to_string() << "   (~ " << c.eta[i].approx() << ")\n";
  for (std::size_t i = 0; i < c.values.size(); ++i)
    out << "h" << (p.k + 1 + static_cast<int>(i)) << "(eta) = " << c.values[i].to_string() << '\n';
  std::vector<std::string> cols;
  for (auto j : c.jacobian_columns) cols.push_back(c.names[j]);
  out << "Jacobian determinant in (" << join(cols) << ") = " << c.determinant.to_string() << "   (~ "
      << c.determinant.approx() << ", nonzero)\n";
  out << "h" << c.target << "(eta) ~ " << c.target_value.approx() << " (nonzero)\n";
  out << "limit cycles: " << c.total_bound << '\n';
  return out.str();
}

LineInput parse_line_input(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (auto eq = line.find('='); eq != std::string::npos) {
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
      };
      kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw std::invalid_argument("missing key '" + k + "'");
    return it->second;
  };
  UPoly m = parse_upoly(need("alpha_minpoly"), "alpha");
  const std::string& interval = need("alpha_interval");
  auto comma = interval.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("alpha_interval needs two endpoints");
  auto strip = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    return s;
  };
  Rational lo = parse_rational(strip(interval.substr(0, comma)));
  Rational hi = parse_rational(strip(interval.substr(comma + 1)));
  if (gcd(m, m.derivative()).degree() > 0) throw std::invalid_argument("alpha_minpoly is not square-free");
  LineInput in;
  in.field = std::make_shared<const NumberField>(AlgebraicNumber(m.primitive(), lo, hi));
  std::string names = need("residual");
  std::stringstream ss(names);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = strip(item);
    in.names.push_back(item);
    in.eta.emplace_back(in.field, parse_upoly(need("eta_" + item), "alpha"));
  }
  return in;
}

}  // namespace hopfcyc
