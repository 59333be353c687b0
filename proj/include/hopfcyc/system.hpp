#pragma once

#include "hopfcyc/expr.hpp"
#include "hopfcyc/jet.hpp"
#include "hopfcyc/mpoly.hpp"
#include "hopfcyc/poly3.hpp"
#include "hopfcyc/rational.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hopfcyc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sample that does not satisfy a center condition.
class ConditionViolation : public std::runtime_error {
 public:
  ConditionViolation(std::string equation, const std::string& why)
      : std::runtime_error("center condition '" + equation + "' " + why), equation_(std::move(equation)) {}
  const std::string& equation() const { return equation_; }

 private:
  std::string equation_;
};

// x' = -y + P, y' = x + Q, z' = -lambda z + R with P, Q, R free of constant
// and linear terms.
struct SystemSpec {
  Rational lambda = 1;
  QPoly3 P;
  QPoly3 Q;
  QPoly3 R;

  const QPoly3& component(int i) const { return i == 0 ? P : (i == 1 ? Q : R); }
  QPoly3& component(int i) { return i == 0 ? P : (i == 1 ? Q : R); }
  // Throws ValidationError.
  void validate() const;
  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

// One perturbation monomial: G_component gets scale * param * monomial.
struct PerturbationSlot {
  int component = 0;
  Exp3 monomial{};
  std::size_t param = 0;
  Rational scale = 1;
  friend bool operator==(const PerturbationSlot&, const PerturbationSlot&) = default;
};

struct Perturbation {
  std::vector<ParamIndex> params;
  std::vector<PerturbationSlot> slots;
  // Enables the lambda_0 trace perturbation (accounted for arithmetically).
  bool trace = false;

  std::vector<std::string> names() const;
  std::size_t size() const { return params.size(); }
  std::array<Poly3, 3> polynomials(const JetSpacePtr& space) const;
  // G_i evaluated at numeric parameter values.
  std::array<QPoly3, 3> evaluate(std::span<const Rational> values) const;
  // Multiplies every slot by c.
  Perturbation scaled(const Rational& c) const;
  // Drops the named parameters (they are fixed to zero).
  Perturbation without(const std::vector<std::string>& dropped) const;
  void validate() const;
};

inline bool operator==(const ParamIndex& a, const ParamIndex& b) { return a.name == b.name && a.position == b.position; }

// Parsed contents of a system file: the symbolic form, before any free
// coefficients are fixed.
struct SystemDocument {
  std::string id;
  std::string source;
  Rational lambda = 1;
  std::vector<std::string> coeffs;
  std::vector<std::string> params;
  bool trace = false;
  std::array<TriPoly<MPoly>, 3> field;  // P, Q, R over coeffs
  std::array<TriPoly<MPoly>, 3> pert;   // G1, G2, G3 over params
  std::vector<Equation> conditions;
  std::optional<int> expected_rank;
  std::optional<int> focal_count;

  bool has_free_coefficients() const { return !coeffs.empty(); }
};

bool operator==(const SystemDocument& a, const SystemDocument& b);

struct ParsedSystem {
  SystemSpec system;
  Perturbation perturbation;
};

// Throws ParseError on syntax errors and ValidationError on contract
// violations (forbidden constant/linear terms, lambda = 0, undeclared names).
SystemDocument parse_document(std::string_view text);
SystemDocument load_document(const std::filesystem::path& path);
// Canonical text; parse_document(print_document(d)) == d.
std::string print_document(const SystemDocument& doc);

// Requires a document without free coefficients.
ParsedSystem parse_system(std::string_view text);
ParsedSystem to_parsed_system(const SystemDocument& doc);

Perturbation perturbation_of(const SystemDocument& doc);

// G1 = sum a_jkl x^j y^k z^l over j+k+l = 2 (likewise G2 with the second
// prefix and G3 with the third); parameters whose names appear in `masked`
// are omitted. Only degree 2 is supported.
Perturbation standard_quadratic_perturbation(const std::array<std::string, 3>& prefixes, int degree = 2,
                                             const std::vector<std::string>& masked = {});

// Writes `p` into the G-slots of a document.
void set_perturbation(SystemDocument& doc, const Perturbation& p);
// Writes a numeric system into the P/Q/R slots (no free coefficients).
SystemDocument document_from(const SystemSpec& s, const Perturbation& p);

using Assignment = std::map<std::string, Rational>;

struct CatalogEntry {
  SystemDocument doc;
  std::string id() const { return doc.id; }
  const std::vector<Equation>& center_condition() const { return doc.conditions; }
  std::optional<int> expected_rank() const { return doc.expected_rank; }
  int focal_count(int fallback = 12) const { return doc.focal_count.value_or(fallback); }
};

// Completes `sample` through the solved-form conditions, checks every
// condition exactly and returns the numeric system. Throws
// ConditionViolation naming the offending equation.
SystemSpec instantiate_center(const CatalogEntry& entry, const Assignment& sample);
Assignment complete_sample(const CatalogEntry& entry, const Assignment& sample);

// Seeded generic sample: free coefficients uniform over p/q with
// p, q in [-20, 20] \ {0}; dependent coefficients from the conditions.
Assignment random_center_sample(const CatalogEntry& entry, std::uint64_t seed);

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& dir);

}  // namespace hopfcyc
