#pragma once

#include "hopfcyc/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hopfcyc {

// Position of a perturbation parameter in its declared list.
struct ParamIndex {
  std::string name;
  std::size_t position = 0;
};

using MonoId = std::uint32_t;
using ParamExponent = std::vector<std::uint16_t>;

// Enumerates every parameter monomial of total degree <= order, numbered in
// total-degree-then-lexicographic order (id 0 is the constant monomial, ids
// 1..m are the parameters themselves in declaration order). Shared by all
// jets of one computation.
class JetSpace {
 public:
  JetSpace(std::vector<std::string> names, int order);

  static std::shared_ptr<const JetSpace> make(std::vector<std::string> names, int order) {
    return std::make_shared<const JetSpace>(std::move(names), order);
  }

  int order() const { return order_; }
  std::size_t num_params() const { return names_.size(); }
  std::size_t size() const { return exponents_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find_param(const std::string& name) const;

  const ParamExponent& exponent(MonoId id) const { return exponents_[id]; }
  int degree(MonoId id) const { return degrees_[id]; }
  std::optional<MonoId> find(const ParamExponent& e) const;
  MonoId param_monomial(std::size_t param) const { return static_cast<MonoId>(1 + param); }

  // Ids of degree j form the half-open range [degree_begin(j), degree_begin(j+1)).
  MonoId degree_begin(int j) const;

  // Product monomial, or nullopt when its degree exceeds order().
  std::optional<MonoId> product(MonoId a, MonoId b) const {
    if (!table_.empty()) {
      auto v = table_[static_cast<std::size_t>(a) * size() + b];
      if (v < 0) return std::nullopt;
      return static_cast<MonoId>(v);
    }
    return product_slow(a, b);
  }

  std::string monomial_name(MonoId id) const;
  bool same_as(const JetSpace& other) const { return order_ == other.order_ && names_ == other.names_; }

 private:
  std::optional<MonoId> product_slow(MonoId a, MonoId b) const;

  std::vector<std::string> names_;
  int order_;
  std::vector<ParamExponent> exponents_;
  std::vector<int> degrees_;
  std::vector<MonoId> degree_starts_;
  std::map<ParamExponent, MonoId> index_;
  std::vector<std::int32_t> table_;
};

using JetSpacePtr = std::shared_ptr<const JetSpace>;

// Polynomial in the perturbation parameters truncated above total degree T.
// Terms are kept sorted by MonoId (the space's term order) with nonzero
// coefficients only.
class JetPoly {
 public:
  using Term = std::pair<MonoId, Rational>;

  explicit JetPoly(JetSpacePtr space) : space_(std::move(space)) {}
  JetPoly(JetSpacePtr space, const Rational& constant);

  static JetPoly param(JetSpacePtr space, std::size_t position, const Rational& scale = 1);

  const JetSpacePtr& space() const { return space_; }
  int order() const { return space_->order(); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(MonoId id) const;
  Rational constant_term() const { return coefficient(0); }

  // Exactly the degree-j terms.
  JetPoly homogeneous(int j) const;
  // Drops terms above degree `order` and rebinds to a space of that order.
  JetPoly truncate(int order) const;
  // Maps onto another space with the same parameter names (any order).
  JetPoly rebind(const JetSpacePtr& target) const;

  Rational evaluate(std::span<const Rational> values) const;
  double evaluate(std::span<const double> values) const;

  JetPoly& operator+=(const JetPoly& o);
  JetPoly& operator-=(const JetPoly& o);
  JetPoly& operator*=(const Rational& c);
  JetPoly operator-() const;

  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  friend JetPoly operator*(JetPoly a, const Rational& c) { return a *= c; }
  friend JetPoly operator*(const Rational& c, JetPoly a) { return a *= c; }
  friend JetPoly operator*(const JetPoly& a, const JetPoly& b) { return jet_mul(a, b); }
  friend bool operator==(const JetPoly& a, const JetPoly& b);

  // Throws std::invalid_argument when the truncation orders differ.
  friend JetPoly jet_mul(const JetPoly& a, const JetPoly& b);

  std::string to_string() const;

  // Low-level construction from (possibly unsorted, possibly zero) terms.
  static JetPoly from_terms(JetSpacePtr space, std::vector<Term> terms);

 private:
  void check_compatible(const JetPoly& o) const;

  JetSpacePtr space_;
  std::vector<Term> terms_;
};

inline bool is_zero(const JetPoly& p) { return p.is_zero(); }

// Dense accumulator over a JetSpace; used for hot inner loops where many
// products are summed into one jet.
class JetAccumulator {
 public:
  explicit JetAccumulator(JetSpacePtr space) : space_(std::move(space)), values_(space_->size()) {}

  void add_product(const JetPoly& a, const JetPoly& b, const Rational& scale);
  void add(const JetPoly& a, const Rational& scale);
  JetPoly take();

 private:
  JetSpacePtr space_;
  std::vector<Rational> values_;
  std::vector<MonoId> touched_;
  std::vector<char> mark_;
};

}  // namespace hopfcyc
