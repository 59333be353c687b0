#include "hopfcyc/jet.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hopfcyc {

namespace {

// All exponent vectors of m variables with total degree exactly d, in
// lexicographic order with the first variable largest first.
void enumerate_degree(std::size_t m, int d, ParamExponent& current, std::size_t pos,
                      std::vector<ParamExponent>& out) {
  if (pos + 1 == m) {
    current[pos] = static_cast<std::uint16_t>(d);
    out.push_back(current);
    current[pos] = 0;
    return;
  }
  for (int e = d; e >= 0; --e) {
    current[pos] = static_cast<std::uint16_t>(e);
    enumerate_degree(m, d - e, current, pos + 1, out);
  }
  current[pos] = 0;
}

constexpr std::size_t kMaxTableSize = 2048;

}  // namespace

JetSpace::JetSpace(std::vector<std::string> names, int order) : names_(std::move(names)), order_(order) {
  if (order < 0) throw std::invalid_argument("jet order must be non-negative");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw std::invalid_argument("duplicate parameter name '" + names_[i] + "'");

  const std::size_t m = names_.size();
  for (int d = 0; d <= order_; ++d) {
    degree_starts_.push_back(static_cast<MonoId>(exponents_.size()));
    if (m == 0) {
      if (d == 0) exponents_.emplace_back();
      continue;
    }
    ParamExponent current(m, 0);
    enumerate_degree(m, d, current, 0, exponents_);
  }
  degree_starts_.push_back(static_cast<MonoId>(exponents_.size()));

  degrees_.reserve(exponents_.size());
  for (MonoId id = 0; id < exponents_.size(); ++id) {
    int deg = 0;
    for (auto e : exponents_[id]) deg += e;
    degrees_.push_back(deg);
    index_.emplace(exponents_[id], id);
  }

  if (size() <= kMaxTableSize) {
    table_.assign(size() * size(), -1);
    for (MonoId a = 0; a < size(); ++a)
      for (MonoId b = 0; b < size(); ++b) {
        auto p = product_slow(a, b);
        if (p) table_[static_cast<std::size_t>(a) * size() + b] = static_cast<std::int32_t>(*p);
      }
  }
}

std::optional<std::size_t> JetSpace::find_param(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::optional<MonoId> JetSpace::find(const ParamExponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

MonoId JetSpace::degree_begin(int j) const {
  if (j < 0) return 0;
  if (j > order_ + 1) j = order_ + 1;
  return degree_starts_[static_cast<std::size_t>(j)];
}

std::optional<MonoId> JetSpace::product_slow(MonoId a, MonoId b) const {
  if (degrees_[a] + degrees_[b] > order_) return std::nullopt;
  ParamExponent e = exponents_[a];
  const auto& eb = exponents_[b];
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(e[i] + eb[i]);
  return find(e);
}

std::string JetSpace::monomial_name(MonoId id) const {
  const auto& e = exponents_[id];
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names_[i];
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------

JetPoly::JetPoly(JetSpacePtr space, const Rational& constant) : space_(std::move(space)) {
  if (!hopfcyc::is_zero(constant)) terms_.emplace_back(0, constant);
}

JetPoly JetPoly::param(JetSpacePtr space, std::size_t position, const Rational& scale) {
  if (position >= space->num_params()) throw std::out_of_range("parameter index out of range");
  JetPoly p(std::move(space));
  if (p.space_->order() >= 1 && !hopfcyc::is_zero(scale)) p.terms_.emplace_back(p.space_->param_monomial(position), scale);
  return p;
}

JetPoly JetPoly::from_terms(JetSpacePtr space, std::vector<Term> terms) {
  JetPoly p(std::move(space));
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first)
      p.terms_.back().second += t.second;
    else
      p.terms_.push_back(std::move(t));
  }
  std::erase_if(p.terms_, [](const Term& t) { return hopfcyc::is_zero(t.second); });
  return p;
}

Rational JetPoly::coefficient(MonoId id) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), id, [](const Term& t, MonoId v) { return t.first < v; });
  if (it != terms_.end() && it->first == id) return it->second;
  return 0;
}

JetPoly JetPoly::homogeneous(int j) const {
  JetPoly out(space_);
  for (const auto& t : terms_)
    if (space_->degree(t.first) == j) out.terms_.push_back(t);
  return out;
}

JetPoly JetPoly::truncate(int order) const {
  if (order > space_->order()) throw std::invalid_argument("truncate() cannot raise the jet order");
  return rebind(JetSpace::make(space_->names(), order));
}

JetPoly JetPoly::rebind(const JetSpacePtr& target) const {
  if (target->names() != space_->names()) throw std::invalid_argument("rebind() requires identical parameter lists");
  JetPoly out(target);
  for (const auto& t : terms_) {
    if (space_->degree(t.first) > target->order()) continue;
    out.terms_.emplace_back(*target->find(space_->exponent(t.first)), t.second);
  }
  std::sort(out.terms_.begin(), out.terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  return out;
}

Rational JetPoly::evaluate(std::span<const Rational> values) const {
  if (values.size() != space_->num_params()) throw std::invalid_argument("evaluate(): wrong number of values");
  Rational sum = 0;
  for (const auto& [id, c] : terms_) {
    Rational v = c;
    const auto& e = space_->exponent(id);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) v *= values[i];
    sum += v;
  }
  return sum;
}

double JetPoly::evaluate(std::span<const double> values) const {
  if (values.size() != space_->num_params()) throw std::invalid_argument("evaluate(): wrong number of values");
  double sum = 0;
  for (const auto& [id, c] : terms_) {
    double v = c.get_d();
    const auto& e = space_->exponent(id);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) v *= values[i];
    sum += v;
  }
  return sum;
}

void JetPoly::check_compatible(const JetPoly& o) const {
  if (space_ == o.space_) return;
  if (space_->order() != o.space_->order()) throw std::invalid_argument("jet truncation orders differ");
  if (!space_->same_as(*o.space_)) throw std::invalid_argument("jets over different parameter lists");
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
  check_compatible(o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (!hopfcyc::is_zero(s)) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) { return *this += -o; }

JetPoly& JetPoly::operator*=(const Rational& c) {
  if (hopfcyc::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

JetPoly JetPoly::operator-() const {
  JetPoly out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

bool operator==(const JetPoly& a, const JetPoly& b) {
  if (!a.space_->same_as(*b.space_)) return false;
  return a.terms_ == b.terms_;
}

JetPoly jet_mul(const JetPoly& a, const JetPoly& b) {
  a.check_compatible(b);
  JetAccumulator acc(a.space_);
  acc.add_product(a, b, 1);
  return acc.take();
}

std::string JetPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [id, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << '-';
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono = space_->monomial_name(id);
    if (mono == "1") {
      out << hopfcyc::to_string(mag);
    } else {
      if (mag != 1) out << hopfcyc::to_string(mag) << '*';
      out << mono;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------

void JetAccumulator::add_product(const JetPoly& a, const JetPoly& b, const Rational& scale) {
  if (mark_.empty()) mark_.assign(space_->size(), 0);
  Rational tmp;
  for (const auto& [ia, va] : a.terms()) {
    for (const auto& [ib, vb] : b.terms()) {
      auto id = space_->product(ia, ib);
      if (!id) continue;
      tmp = va * vb;
      tmp *= scale;
      values_[*id] += tmp;
      if (!mark_[*id]) {
        mark_[*id] = 1;
        touched_.push_back(*id);
      }
    }
  }
}

void JetAccumulator::add(const JetPoly& a, const Rational& scale) {
  if (mark_.empty()) mark_.assign(space_->size(), 0);
  for (const auto& [id, v] : a.terms()) {
    values_[id] += v * scale;
    if (!mark_[id]) {
      mark_[id] = 1;
      touched_.push_back(id);
    }
  }
}

JetPoly JetAccumulator::take() {
  std::sort(touched_.begin(), touched_.end());
  std::vector<JetPoly::Term> terms;
  terms.reserve(touched_.size());
  for (auto id : touched_) {
    if (!hopfcyc::is_zero(values_[id])) terms.emplace_back(id, values_[id]);
    values_[id] = 0;
    mark_[id] = 0;
  }
  touched_.clear();
  return JetPoly::from_terms(space_, std::move(terms));
}

}  // namespace hopfcyc
