#include "hopfcyc/focal.hpp"

#include <algorithm>
#include <map>

namespace hopfcyc {

namespace {

Integer double_factorial(long n) {
  Integer r = 1;
  for (long k = n; k > 1; k -= 2) r *= k;
  return r;
}

// Mean of x^a y^b over the unit circle.
Rational circle_mean(int a, int b) {
  if (a % 2 != 0 || b % 2 != 0) return 0;
  return make_rational(double_factorial(a - 1) * double_factorial(b - 1), double_factorial(a + b));
}

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

struct FieldTerm {
  Exp3 e;
  int degree;
  JetPoly c;
};

// Coefficients of one homogeneous degree: layers[l][a] is the coefficient of
// x^a y^(d-l-a) z^l.
using Layers = std::vector<std::vector<JetPoly>>;

Layers empty_layers(int d, const JetSpacePtr& space) {
  Layers out(static_cast<std::size_t>(d + 1));
  for (int l = 0; l <= d; ++l) out[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(d - l + 1), JetPoly(space));
  return out;
}

std::size_t stored_terms(const Layers& layers) {
  std::size_t n = 0;
  for (const auto& layer : layers)
    for (const auto& p : layer) n += p.terms().size();
  return n;
}

// Resonant layer (l = 0, n even): D with the x^n row replaced by the
// normalization row.
QMatrix resonant_matrix(int n, KernelNormalization kernel) {
  QMatrix m(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  for (int a = 0; a <= n; ++a) {
    if (a < n) m(static_cast<std::size_t>(a + 1), static_cast<std::size_t>(a)) = n - a;
    if (a > 0) m(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(a)) = -a;
  }
  const auto last = static_cast<std::size_t>(n);
  for (std::size_t a = 0; a <= last; ++a) m(last, a) = 0;
  switch (kernel) {
    case KernelNormalization::zero_x_power:
      m(last, last) = 1;
      break;
    case KernelNormalization::zero_y_power:
      m(last, 0) = 1;
      break;
    case KernelNormalization::circle_mean:
      for (int a = 0; a <= n; ++a) m(last, static_cast<std::size_t>(a)) = circle_mean(a, n - a);
      break;
  }
  return m;
}

QMatrix rotation_matrix(int n) {
  QMatrix m(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  for (int a = 0; a <= n; ++a) {
    if (a < n) m(static_cast<std::size_t>(a + 1), static_cast<std::size_t>(a)) = n - a;
    if (a > 0) m(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(a)) = -a;
  }
  return m;
}

std::vector<JetPoly> apply_dense(const QMatrix& inv, const std::vector<JetPoly>& rhs, const JetSpacePtr& space) {
  std::vector<JetPoly> out;
  out.reserve(rhs.size());
  for (std::size_t i = 0; i < inv.rows(); ++i) {
    JetAccumulator acc(space);
    for (std::size_t j = 0; j < inv.cols(); ++j)
      if (sgn(inv(i, j)) != 0 && !rhs[j].is_zero()) acc.add(rhs[j], inv(i, j));
    out.push_back(acc.take());
  }
  return out;
}

// (D - c I) p = rhs for c != 0. The matrix is tridiagonal and every leading
// principal block is -c I plus a matrix similar to a skew-symmetric one, so
// elimination without pivoting never meets a zero pivot.
std::vector<JetPoly> solve_shifted(int n, const Rational& c, const std::vector<JetPoly>& rhs) {
  const auto size = static_cast<std::size_t>(n + 1);
  std::vector<Rational> inv_pivot(size), cp(size), sub(size);
  for (std::size_t i = 0; i < size; ++i) {
    const int a = static_cast<int>(i);
    sub[i] = i == 0 ? Rational(0) : Rational(n - a + 1);
    Rational sup = a < n ? Rational(-(a + 1)) : Rational(0);
    Rational pivot = -c;
    if (i > 0) pivot -= sub[i] * cp[i - 1];
    if (sgn(pivot) == 0) throw std::logic_error("zero pivot in shifted rotation solve");
    inv_pivot[i] = 1 / pivot;
    cp[i] = sup * inv_pivot[i];
  }
  std::vector<JetPoly> dp;
  dp.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    JetPoly v = rhs[i];
    if (i > 0 && !dp[i - 1].is_zero()) v -= dp[i - 1] * sub[i];
    v *= inv_pivot[i];
    dp.push_back(std::move(v));
  }
  for (std::size_t i = size - 1; i-- > 0;)
    if (!dp[i + 1].is_zero()) dp[i] -= dp[i + 1] * cp[i];
  return dp;
}

}  // namespace

FocalResult focal_coefficients(const SystemSpec& s, const Perturbation& pert, int K, int T,
                               const FocalOptions& options) {
  if (sgn(s.lambda) == 0) throw ValidationError("lambda = 0: the homological operator is singular");
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  if (T < 0) throw std::invalid_argument("T must be nonnegative");
  s.validate();
  pert.validate();

  auto space = JetSpace::make(pert.names(), T);
  auto g = pert.polynomials(space);
  std::vector<FieldTerm> field[3];
  int max_field_degree = 2;
  for (int c = 0; c < 3; ++c) {
    Poly3 comp = lift(s.component(c), space) + g[static_cast<std::size_t>(c)];
    for (const auto& [e, coeff] : comp.terms()) {
      field[c].push_back({e, total_degree(e), coeff});
      max_field_degree = std::max(max_field_degree, total_degree(e));
    }
  }

  const int top = 2 * K + 2;
  std::map<int, Layers> H;
  {
    Layers h2 = empty_layers(2, space);
    h2[0][0] = JetPoly(space, 1);
    h2[0][2] = JetPoly(space, 1);
    H.emplace(2, std::move(h2));
  }
  HSeries series;
  if (options.keep_series) {
    series.H.add_term({2, 0, 0}, JetPoly(space, 1));
    series.H.add_term({0, 2, 0}, JetPoly(space, 1));
  }

  FocalResult result;
  FocalSequence& out = result.focal;
  out.K = K;
  out.T = T;
  out.space = space;
  out.system = s;
  out.perturbation = pert;
  out.resonant = options.resonant;

  std::size_t stored = 0;
  for (int d = 3; d <= top; ++d) {
    // N_d: degree-d part of the nonlinear field applied to lower-degree H.
    std::vector<std::vector<JetAccumulator>> acc(static_cast<std::size_t>(d + 1));
    for (int l = 0; l <= d; ++l) acc[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(d - l + 1), JetAccumulator(space));
    for (int c = 0; c < 3; ++c) {
      for (const auto& term : field[c]) {
        const int hd = d - term.degree + 1;
        if (hd < 2) continue;
        auto it = H.find(hd);
        if (it == H.end()) throw std::logic_error("H degree discarded too early");
        const Layers& layers = it->second;
        for (int l = 0; l <= hd; ++l) {
          const int n = hd - l;
          for (int a = 0; a <= n; ++a) {
            const JetPoly& p = layers[static_cast<std::size_t>(l)][static_cast<std::size_t>(a)];
            if (p.is_zero()) continue;
            Exp3 ex{a, n - a, l};
            const int f = ex[static_cast<std::size_t>(c)];
            if (f == 0) continue;
            ex[static_cast<std::size_t>(c)] -= 1;
            const int tl = ex[2] + term.e[2];
            const int ta = ex[0] + term.e[0];
            acc[static_cast<std::size_t>(tl)][static_cast<std::size_t>(ta)].add_product(term.c, p, Rational(f));
          }
        }
      }
    }

    Layers hd = empty_layers(d, space);
    for (int l = 0; l <= d; ++l) {
      const int n = d - l;
      const auto size = static_cast<std::size_t>(n + 1);
      std::vector<JetPoly> N;
      N.reserve(size);
      for (auto& a : acc[static_cast<std::size_t>(l)]) N.push_back(a.take());
      const Rational shift = s.lambda * l;

      // Resonant coefficient and monomial bundle B (coefficients by a).
      JetPoly Lk(space);
      std::vector<Rational> B(size);
      const bool resonant = l == 0 && n % 2 == 0;
      if (resonant) {
        const int m = n / 2;
        Rational bmean;
        if (options.resonant == ResonantForm::power_of_x) {
          B[size - 1] = 1;
          bmean = circle_mean(n, 0);
        } else {
          for (int i = 0; i <= m; ++i) B[static_cast<std::size_t>(2 * i)] = Rational(binomial(m, i));
          bmean = 1;
        }
        JetAccumulator la(space);
        for (int a = 0; a <= n; ++a) {
          Rational w = circle_mean(a, n - a);
          if (sgn(w) != 0 && !N[static_cast<std::size_t>(a)].is_zero())
            la.add(N[static_cast<std::size_t>(a)], w / bmean);
        }
        Lk = la.take();
      }

      std::vector<JetPoly> rhs;
      rhs.reserve(size);
      for (std::size_t a = 0; a < size; ++a) {
        JetPoly r = -N[a];
        if (resonant && sgn(B[a]) != 0) r += Lk * B[a];
        rhs.push_back(std::move(r));
      }

      std::vector<JetPoly> p;
      const bool all_zero = std::all_of(rhs.begin(), rhs.end(), [](const JetPoly& v) { return v.is_zero(); });
      if (all_zero) {
        p.assign(size, JetPoly(space));
      } else if (l > 0) {
        p = solve_shifted(n, shift, rhs);
      } else {
        QMatrix m = resonant ? resonant_matrix(n, options.kernel) : rotation_matrix(n);
        if (resonant) rhs[size - 1] = JetPoly(space);
        auto inv = inverse(m);
        if (!inv) throw std::logic_error("singular planar layer");
        p = apply_dense(*inv, rhs, space);
      }

      // Degree-d coefficient equations: (D - shift) p + N = L B, every row.
      for (int a = 0; a <= n; ++a) {
        JetPoly r = N[static_cast<std::size_t>(a)];
        if (a > 0) r += p[static_cast<std::size_t>(a - 1)] * Rational(n - a + 1);
        if (a < n) r -= p[static_cast<std::size_t>(a + 1)] * Rational(a + 1);
        if (sgn(shift) != 0) r -= p[static_cast<std::size_t>(a)] * shift;
        if (resonant) r -= Lk * B[static_cast<std::size_t>(a)];
        if (!r.is_zero())
          throw std::logic_error("focal identity fails at degree " + std::to_string(d) + ", monomial " +
                                 monomial_string({a, n - a, l}));
      }

      if (resonant) out.L.push_back(std::move(Lk));
      hd[static_cast<std::size_t>(l)] = std::move(p);
    }

    if (options.keep_series) {
      for (int l = 0; l <= d; ++l)
        for (int a = 0; a <= d - l; ++a) {
          const JetPoly& p = hd[static_cast<std::size_t>(l)][static_cast<std::size_t>(a)];
          if (!p.is_zero()) series.H.add_term({a, d - l - a, l}, p);
        }
      series.computed_degree = d;
    }
    stored += stored_terms(hd);
    H.emplace(d, std::move(hd));
    // Degree d+1 reads H down to degree d + 2 - max_field_degree.
    for (auto it = H.begin(); it != H.end() && it->first < d + 2 - max_field_degree;) {
      stored -= stored_terms(it->second);
      it = H.erase(it);
    }
    if (options.max_stored_terms != 0 && stored > options.max_stored_terms)
      throw ResourceError("memory budget exceeded at degree " + std::to_string(d), static_cast<int>(out.L.size()));
  }

  if (options.keep_series) result.series = std::move(series);
  return result;
}

QMatrix linear_part_matrix(const FocalSequence& f) {
  if (f.T < 1) throw std::invalid_argument("linear parts need jet order T >= 1");
  const std::size_t m = f.space->num_params();
  QMatrix out(f.L.size(), m);
  for (std::size_t i = 0; i < f.L.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) = f.L[i].coefficient(f.space->param_monomial(j));
  return out;
}

MPoly jet_slice(const JetPoly& p, int j) {
  const auto& space = *p.space();
  const std::size_t m = space.num_params();
  MPoly out(m);
  for (const auto& [id, c] : p.terms()) {
    if (space.degree(id) != j) continue;
    const auto& e = space.exponent(id);
    out.add_term(MExponent(e.begin(), e.end()), c);
  }
  return out;
}

std::vector<MPoly> quadratic_parts(const FocalSequence& f, const std::vector<int>& indices) {
  if (f.T < 2) throw std::invalid_argument("quadratic parts need jet order T >= 2");
  std::vector<MPoly> out;
  for (int i : indices) {
    if (i < 1 || i > static_cast<int>(f.L.size())) throw std::out_of_range("focal index out of range");
    out.push_back(jet_slice(f[i], 2));
  }
  return out;
}

}  // namespace hopfcyc
