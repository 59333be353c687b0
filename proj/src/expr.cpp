#include "hopfcyc/expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopfcyc {

Expr Expr::number(Rational v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNumber;
  n->value = std::move(v);
  return Expr(std::move(n));
}

Expr Expr::name(std::string s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kName;
  n->name = std::move(s);
  return Expr(std::move(n));
}

Expr Expr::binary(Kind k, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->children = {std::move(a), std::move(b)};
  return Expr(std::move(n));
}

Expr Expr::negate(Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNeg;
  n->children = {std::move(a)};
  return Expr(std::move(n));
}

Expr Expr::power(Expr a, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponents are not supported");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPow;
  n->exponent = exponent;
  n->children = {std::move(a)};
  return Expr(std::move(n));
}

Rational Expr::evaluate(const std::function<std::optional<Rational>(const std::string&)>& lookup) const {
  const auto& c = node_->children;
  switch (node_->kind) {
    case Kind::kNumber:
      return node_->value;
    case Kind::kName: {
      auto v = lookup(node_->name);
      if (!v) throw std::out_of_range("no value for '" + node_->name + "'");
      return *v;
    }
    case Kind::kAdd:
      return c[0].evaluate(lookup) + c[1].evaluate(lookup);
    case Kind::kSub:
      return c[0].evaluate(lookup) - c[1].evaluate(lookup);
    case Kind::kMul:
      return c[0].evaluate(lookup) * c[1].evaluate(lookup);
    case Kind::kDiv: {
      Rational den = c[1].evaluate(lookup);
      if (sgn(den) == 0) throw std::domain_error("division by zero in '" + to_string() + "'");
      return c[0].evaluate(lookup) / den;
    }
    case Kind::kNeg:
      return -c[0].evaluate(lookup);
    case Kind::kPow: {
      Rational base = c[0].evaluate(lookup);
      Rational r = 1;
      for (int i = 0; i < node_->exponent; ++i) r *= base;
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

std::optional<MPoly> Expr::to_mpoly(const std::vector<std::string>& names) const {
  const std::size_t n = names.size();
  const auto& c = node_->children;
  switch (node_->kind) {
    case Kind::kNumber:
      return MPoly(n, node_->value);
    case Kind::kName: {
      auto it = std::find(names.begin(), names.end(), node_->name);
      if (it == names.end()) throw std::out_of_range("unknown name '" + node_->name + "'");
      return MPoly::variable(n, static_cast<std::size_t>(it - names.begin()));
    }
    case Kind::kNeg: {
      auto a = c[0].to_mpoly(names);
      if (!a) return std::nullopt;
      return -*a;
    }
    case Kind::kPow: {
      auto a = c[0].to_mpoly(names);
      if (!a) return std::nullopt;
      return a->pow(node_->exponent);
    }
    default:
      break;
  }
  auto a = c[0].to_mpoly(names);
  auto b = c[1].to_mpoly(names);
  if (!a || !b) return std::nullopt;
  switch (node_->kind) {
    case Kind::kAdd:
      return *a + *b;
    case Kind::kSub:
      return *a - *b;
    case Kind::kMul:
      return *a * *b;
    case Kind::kDiv:
      if (!b->is_constant() || b->is_zero()) return std::nullopt;
      return *a * (Rational(1) / b->constant_value());
    default:
      break;
  }
  return std::nullopt;
}

void Expr::collect_names(std::vector<std::string>& out) const {
  if (node_->kind == Kind::kName) {
    if (std::find(out.begin(), out.end(), node_->name) == out.end()) out.push_back(node_->name);
    return;
  }
  for (const auto& ch : node_->children) ch.collect_names(out);
}

int Expr::precedence() const {
  switch (node_->kind) {
    case Kind::kAdd:
    case Kind::kSub:
      return 1;
    case Kind::kMul:
    case Kind::kDiv:
      return 2;
    case Kind::kNeg:
      return 3;
    case Kind::kPow:
      return 4;
    case Kind::kNumber:
      if (sgn(node_->value) < 0) return 0;
      return node_->value.get_den() != 1 ? 2 : 5;
    case Kind::kName:
      return 5;
  }
  return 5;
}

std::string Expr::to_string() const {
  const auto& c = node_->children;
  auto wrap = [](const Expr& e, int min_prec) {
    std::string s = e.to_string();
    return e.precedence() < min_prec ? "(" + s + ")" : s;
  };
  switch (node_->kind) {
    case Kind::kNumber:
      return hopfcyc::to_string(node_->value);
    case Kind::kName:
      return node_->name;
    case Kind::kAdd:
      return wrap(c[0], 1) + " + " + wrap(c[1], 2);
    case Kind::kSub:
      return wrap(c[0], 1) + " - " + wrap(c[1], 2);
    case Kind::kMul:
      return wrap(c[0], 2) + "*" + wrap(c[1], 3);
    case Kind::kDiv:
      return wrap(c[0], 2) + "/" + wrap(c[1], 3);
    case Kind::kNeg:
      return "-" + wrap(c[0], 3);
    case Kind::kPow:
      return wrap(c[0], 5) + "^" + std::to_string(node_->exponent);
  }
  return {};
}

}  // namespace hopfcyc
