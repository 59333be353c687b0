#include "hopfcyc/system.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace hopfcyc {

void SystemSpec::validate() const {
  if (sgn(lambda) == 0) throw ValidationError("lambda must be nonzero");
  static const char* kNames[3] = {"P", "Q", "R"};
  for (int i = 0; i < 3; ++i)
    for (const auto& [e, c] : component(i).terms())
      if (total_degree(e) < 2) throw ValidationError(std::string(kNames[i]) + " has a constant or linear term");
}

std::vector<std::string> Perturbation::names() const {
  std::vector<std::string> out;
  out.reserve(params.size());
  for (const auto& p : params) out.push_back(p.name);
  return out;
}

std::array<Poly3, 3> Perturbation::polynomials(const JetSpacePtr& space) const {
  std::array<Poly3, 3> g;
  for (const auto& s : slots) g[static_cast<std::size_t>(s.component)].add_term(s.monomial, JetPoly::param(space, s.param, s.scale));
  return g;
}

std::array<QPoly3, 3> Perturbation::evaluate(std::span<const Rational> values) const {
  if (values.size() != params.size()) throw std::invalid_argument("wrong number of parameter values");
  std::array<QPoly3, 3> g;
  for (const auto& s : slots) g[static_cast<std::size_t>(s.component)].add_term(s.monomial, s.scale * values[s.param]);
  return g;
}

Perturbation Perturbation::scaled(const Rational& c) const {
  Perturbation out = *this;
  for (auto& s : out.slots) s.scale *= c;
  std::erase_if(out.slots, [](const PerturbationSlot& s) { return sgn(s.scale) == 0; });
  return out;
}

Perturbation Perturbation::without(const std::vector<std::string>& dropped) const {
  Perturbation out;
  out.trace = trace;
  std::vector<std::optional<std::size_t>> remap(params.size());
  for (const auto& p : params) {
    if (std::find(dropped.begin(), dropped.end(), p.name) != dropped.end()) continue;
    remap[p.position] = out.params.size();
    out.params.push_back({p.name, out.params.size()});
  }
  for (const auto& s : slots) {
    if (!remap[s.param]) continue;
    PerturbationSlot t = s;
    t.param = *remap[s.param];
    out.slots.push_back(t);
  }
  return out;
}

void Perturbation::validate() const {
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].position != i) throw ValidationError("parameter positions must follow declaration order");
    for (std::size_t j = i + 1; j < params.size(); ++j)
      if (params[i].name == params[j].name) throw ValidationError("duplicate parameter '" + params[i].name + "'");
  }
  for (const auto& s : slots) {
    if (s.component < 0 || s.component > 2) throw ValidationError("perturbation component out of range");
    if (total_degree(s.monomial) < 2) throw ValidationError("perturbation has a constant or linear term");
    if (s.param >= params.size()) throw ValidationError("perturbation slot refers to an unknown parameter");
  }
}

Perturbation perturbation_of(const SystemDocument& doc) {
  Perturbation p;
  p.trace = doc.trace;
  for (std::size_t i = 0; i < doc.params.size(); ++i) p.params.push_back({doc.params[i], i});
  static const char* kNames[3] = {"G1", "G2", "G3"};
  for (int comp = 0; comp < 3; ++comp) {
    for (const auto& [mono, coeff] : doc.pert[static_cast<std::size_t>(comp)].terms()) {
      for (const auto& [e, c] : coeff.terms()) {
        int deg = 0;
        std::size_t which = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
          if (e[i] > 0) {
            deg += e[i];
            which = i;
          }
        if (deg != 1)
          throw ValidationError(std::string(kNames[comp]) + ": coefficient of '" + monomial_string(mono) +
                                "' must be a rational multiple of a single parameter");
        p.slots.push_back({comp, mono, which, c});
      }
    }
  }
  p.validate();
  return p;
}

namespace {

Rational eval_coeff(const MPoly& c, const std::vector<Rational>& values) { return c.evaluate(values); }

std::vector<Rational> values_in_order(const std::vector<std::string>& names, const Assignment& a) {
  std::vector<Rational> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    auto it = a.find(n);
    if (it == a.end()) throw ValidationError("no value for coefficient '" + n + "'");
    out.push_back(it->second);
  }
  return out;
}

SystemSpec instantiate_field(const SystemDocument& doc, const Assignment& values) {
  auto vals = values_in_order(doc.coeffs, values);
  SystemSpec s;
  s.lambda = doc.lambda;
  for (int i = 0; i < 3; ++i)
    s.component(i) = doc.field[static_cast<std::size_t>(i)].map_coefficients(
        [&](const MPoly& c) { return eval_coeff(c, vals); });
  s.validate();
  return s;
}

}  // namespace

ParsedSystem to_parsed_system(const SystemDocument& doc) {
  if (doc.has_free_coefficients())
    throw ValidationError("system has free coefficients (" + std::to_string(doc.coeffs.size()) +
                          "); instantiate it with a sample first");
  return {instantiate_field(doc, {}), perturbation_of(doc)};
}

ParsedSystem parse_system(std::string_view text) { return to_parsed_system(parse_document(text)); }

Perturbation standard_quadratic_perturbation(const std::array<std::string, 3>& prefixes, int degree,
                                             const std::vector<std::string>& masked) {
  if (degree != 2) throw std::invalid_argument("standard_quadratic_perturbation supports degree 2 only");
  // Monomials j+k+l = 2 in ascending order of the "jkl" label.
  std::vector<Exp3> monos;
  for (int j = 0; j <= 2; ++j)
    for (int k = 0; k <= 2 - j; ++k) monos.push_back({j, k, 2 - j - k});
  std::sort(monos.begin(), monos.end());
  Perturbation p;
  for (int comp = 0; comp < 3; ++comp) {
    for (const auto& m : monos) {
      std::string name = prefixes[static_cast<std::size_t>(comp)] + std::to_string(m[0]) + std::to_string(m[1]) +
                         std::to_string(m[2]);
      if (std::find(masked.begin(), masked.end(), name) != masked.end()) continue;
      std::size_t pos = p.params.size();
      p.params.push_back({name, pos});
      p.slots.push_back({comp, m, pos, Rational(1)});
    }
  }
  p.validate();
  return p;
}

void set_perturbation(SystemDocument& doc, const Perturbation& p) {
  doc.params = p.names();
  doc.trace = p.trace;
  const std::size_t n = doc.params.size();
  for (auto& g : doc.pert) g = TriPoly<MPoly>();
  for (const auto& s : p.slots)
    doc.pert[static_cast<std::size_t>(s.component)].add_term(s.monomial, MPoly::variable(n, s.param, s.scale));
}

SystemDocument document_from(const SystemSpec& s, const Perturbation& p) {
  SystemDocument doc;
  doc.lambda = s.lambda;
  for (int i = 0; i < 3; ++i)
    doc.field[static_cast<std::size_t>(i)] = s.component(i).map_coefficients([](const Rational& c) { return MPoly(0, c); });
  set_perturbation(doc, p);
  return doc;
}

// ---------------------------------------------------------------------------
// Center conditions

namespace {

struct ConditionPlan {
  // Equations of the form name = expr, expr free of name.
  std::vector<std::pair<std::string, const Equation*>> substitutions;
  std::vector<const Equation*> constraints;
};

ConditionPlan plan_conditions(const CatalogEntry& entry) {
  ConditionPlan plan;
  std::set<std::string> solved;
  for (const auto& eq : entry.center_condition()) {
    if (eq.lhs.is_name()) {
      std::vector<std::string> rhs_names;
      eq.rhs.collect_names(rhs_names);
      const std::string& n = eq.lhs.name_value();
      if (!solved.count(n) && std::find(rhs_names.begin(), rhs_names.end(), n) == rhs_names.end()) {
        plan.substitutions.emplace_back(n, &eq);
        solved.insert(n);
        continue;
      }
    }
    plan.constraints.push_back(&eq);
  }
  return plan;
}

std::optional<Rational> lookup_in(const Assignment& a, const std::string& n) {
  auto it = a.find(n);
  if (it == a.end()) return std::nullopt;
  return it->second;
}

bool all_assigned(const Expr& e, const Assignment& a) {
  std::vector<std::string> names;
  e.collect_names(names);
  return std::all_of(names.begin(), names.end(), [&](const std::string& n) { return a.count(n) > 0; });
}

Rational evaluate_or_reject(const Expr& e, const Assignment& a, const Equation& eq) {
  try {
    return e.evaluate([&](const std::string& n) { return lookup_in(a, n); });
  } catch (const std::domain_error&) {
    throw ConditionViolation(eq.text(), "is undefined at the sample (a denominator vanishes)");
  }
}

}  // namespace

Assignment complete_sample(const CatalogEntry& entry, const Assignment& sample) {
  const auto& doc = entry.doc;
  for (const auto& [n, v] : sample)
    if (std::find(doc.coeffs.begin(), doc.coeffs.end(), n) == doc.coeffs.end())
      throw ValidationError("sample assigns unknown coefficient '" + n + "'");
  Assignment values = sample;
  auto plan = plan_conditions(entry);
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [name, eq] : plan.substitutions) {
      if (values.count(name) || !all_assigned(eq->rhs, values)) continue;
      values[name] = evaluate_or_reject(eq->rhs, values, *eq);
      progress = true;
    }
  }
  for (const auto& n : doc.coeffs)
    if (!values.count(n)) throw ValidationError("sample leaves coefficient '" + n + "' undetermined");
  for (const auto& eq : entry.center_condition()) {
    Rational l = evaluate_or_reject(eq.lhs, values, eq);
    Rational r = evaluate_or_reject(eq.rhs, values, eq);
    if (l != r) throw ConditionViolation(eq.text(), "is violated (" + to_string(l) + " != " + to_string(r) + ")");
  }
  return values;
}

SystemSpec instantiate_center(const CatalogEntry& entry, const Assignment& sample) {
  return instantiate_field(entry.doc, complete_sample(entry, sample));
}

Assignment random_center_sample(const CatalogEntry& entry, std::uint64_t seed) {
  const auto& doc = entry.doc;
  auto plan = plan_conditions(entry);
  std::set<std::string> dependent;
  for (const auto& [n, eq] : plan.substitutions) dependent.insert(n);

  // Each implicit constraint is solved for its last declared coefficient
  // that occurs linearly.
  struct Linear {
    std::size_t var;
    MPoly poly;
  };
  std::vector<Linear> linear;
  for (const Equation* eq : plan.constraints) {
    auto p = (eq->lhs.to_mpoly(doc.coeffs));
    auto q = (eq->rhs.to_mpoly(doc.coeffs));
    if (!p || !q) throw ValidationError("cannot sample constraint '" + eq->text() + "'");
    MPoly f = *p - *q;
    std::optional<std::size_t> pick;
    for (std::size_t v : f.support())
      if (!dependent.count(doc.coeffs[v]) && f.degree_in(v) == 1) pick = v;
    if (!pick) throw ValidationError("constraint '" + eq->text() + "' has no linearly occurring free coefficient");
    dependent.insert(doc.coeffs[*pick]);
    linear.push_back({*pick, f});
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-20, 19);
  auto draw = [&]() {
    auto one = [&]() {
      int v = dist(rng);
      return v >= 0 ? v + 1 : v;
    };
    int num = one();
    int den = one();
    return make_rational(num, den);
  };

  for (int attempt = 0; attempt < 200; ++attempt) {
    Assignment values;
    for (const auto& n : doc.coeffs)
      if (!dependent.count(n)) values[n] = draw();
    try {
      bool progress = true;
      bool failed = false;
      while (progress && !failed) {
        progress = false;
        for (const auto& [name, eq] : plan.substitutions) {
          if (values.count(name) || !all_assigned(eq->rhs, values)) continue;
          values[name] = evaluate_or_reject(eq->rhs, values, *eq);
          progress = true;
        }
        for (const auto& lin : linear) {
          const std::string& name = doc.coeffs[lin.var];
          if (values.count(name)) continue;
          bool ready = true;
          for (std::size_t v : lin.poly.support())
            if (v != lin.var && !values.count(doc.coeffs[v])) ready = false;
          if (!ready) continue;
          std::vector<Rational> point(doc.coeffs.size());
          for (std::size_t v = 0; v < doc.coeffs.size(); ++v)
            if (auto it = values.find(doc.coeffs[v]); it != values.end()) point[v] = it->second;
          Rational c1 = lin.poly.coefficient_in(lin.var, 1).evaluate(point);
          Rational c0 = lin.poly.coefficient_in(lin.var, 0).evaluate(point);
          if (sgn(c1) == 0) {
            failed = true;
            break;
          }
          values[name] = -c0 / c1;
          progress = true;
        }
      }
      if (failed) continue;
      return complete_sample(entry, values);
    } catch (const ConditionViolation&) {
      continue;
    }
  }
  throw ValidationError("could not draw a valid sample for '" + doc.id + "'");
}

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".sys") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<CatalogEntry> out;
  for (const auto& f : files) out.push_back({load_document(f)});
  return out;
}

}  // namespace hopfcyc
