#pragma once

#include "hopfcyc/mpoly.hpp"
#include "hopfcyc/rational.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hopfcyc {

// Rational expression over named coefficients, as written in center
// conditions: + - * / ^ with integer exponents, parentheses, rational
// literals and names.
class Expr {
 public:
  enum class Kind { kNumber, kName, kAdd, kSub, kMul, kDiv, kNeg, kPow };

  static Expr number(Rational v);
  static Expr name(std::string n);
  static Expr binary(Kind k, Expr a, Expr b);
  static Expr negate(Expr a);
  static Expr power(Expr a, int exponent);

  Kind kind() const { return node_->kind; }

  // Throws std::domain_error on division by zero and std::out_of_range when
  // a name has no value.
  Rational evaluate(const std::function<std::optional<Rational>(const std::string&)>& lookup) const;

  // Polynomial form over `names`; nullopt when the expression divides by a
  // non-constant.
  std::optional<MPoly> to_mpoly(const std::vector<std::string>& names) const;

  void collect_names(std::vector<std::string>& out) const;
  std::string to_string() const;
  bool is_name() const { return node_->kind == Kind::kName; }
  const std::string& name_value() const { return node_->name; }

 private:
  struct Node {
    Kind kind = Kind::kNumber;
    Rational value;
    std::string name;
    int exponent = 0;
    std::vector<Expr> children;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  int precedence() const;
  std::shared_ptr<const Node> node_;
};

// lhs = rhs.
struct Equation {
  Expr lhs;
  Expr rhs;
  std::string text() const { return lhs.to_string() + " = " + rhs.to_string(); }
};

}  // namespace hopfcyc
