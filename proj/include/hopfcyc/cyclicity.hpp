#pragma once

#include "hopfcyc/algebraic.hpp"
#include "hopfcyc/focal.hpp"
#include "hopfcyc/mpoly.hpp"
#include "hopfcyc/qmatrix.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hopfcyc {

struct RankCertificate {
  int K = 0;
  QMatrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // parameter positions
  std::vector<std::string> pivot_names;

  int lower_bound_without_trace() const { return static_cast<int>(rank) - 1; }
  int lower_bound_with_trace() const { return static_cast<int>(rank); }
};

RankCertificate rank_certificate(const FocalSequence& f);

// Quadratic forms h_{k+1}, ..., h_{k+l} in the residual parameters obtained
// by solving L_1 = ... = L_k = 0 for the pivot parameters to first order.
struct HigherOrderProblem {
  int k = 0;
  std::vector<std::string> residual;
  std::vector<std::size_t> residual_positions;
  std::vector<MPoly> h;  // over `residual`, h[i] is h_{k+1+i}

  int target_index() const { return k + static_cast<int>(h.size()); }
};

// L_i for i > k is first replaced by L_i - sum_j c_ij L_j, where the c_ij
// express its linear part through those of L_1..L_k; the quadratic part of
// that combination restricted to the first-order solution is h_i.
// Throws std::invalid_argument when T < 2, when k + extra exceeds K or when
// the linear parts of L_1..L_k are dependent.
HigherOrderProblem reduce_to_quadratic_problem(const FocalSequence& f, const RankCertificate& cert, int extra);

// A direction in residual-parameter space with coordinates in Q(alpha).
struct LineCertificate {
  NumberFieldPtr field;
  // Irreducibility of the modulus, certified modulo these primes.
  std::optional<std::vector<unsigned long>> irreducible_mod;
  // The last eliminated coordinate equals alpha / alpha_scale.
  std::size_t final_variable = 0;
  Rational alpha_scale = 1;
  std::vector<std::string> names;
  std::vector<NumberFieldElement> eta;
  std::vector<int> vanishing;  // focal indices i with h_i(eta) = 0
  int target = 0;
  std::vector<NumberFieldElement> values;  // h_i(eta) for every form
  NumberFieldElement determinant;          // Jacobian of the vanishing forms
  std::vector<std::size_t> jacobian_columns;
  NumberFieldElement target_value;
  std::size_t dehomogenized = 0;  // residual index fixed to 1
  int total_bound = 0;            // k + l
};

struct LineVerification {
  bool ok = false;
  std::vector<NumberFieldElement> values;
  NumberFieldElement determinant;
  std::vector<std::size_t> jacobian_columns;
  NumberFieldElement target_value;
  std::string reason;
};

// Exact check in Q(alpha): the first l-1 forms vanish at eta, some maximal
// minor of their Jacobian (columns chosen lexicographically) is nonzero and
// the last form does not vanish.
LineVerification verify_line(const HigherOrderProblem& p, const std::vector<NumberFieldElement>& eta);

struct SolveOutcome {
  std::optional<LineCertificate> certificate;
  std::string reason;  // why nothing was found
  std::vector<std::string> log;
};

SolveOutcome solve_line(const HigherOrderProblem& p);

// Reads the machine-readable line report (alpha_minpoly, alpha_interval,
// residual, eta_<name> keys); throws std::invalid_argument.
struct LineInput {
  NumberFieldPtr field;
  std::vector<std::string> names;
  std::vector<NumberFieldElement> eta;
};
LineInput parse_line_input(std::string_view text);

// Value of p at a point with coordinates in Q(alpha).
NumberFieldElement evaluate(const MPoly& p, const std::vector<NumberFieldElement>& point);

std::string format_rank_report(const RankCertificate& c, const FocalSequence& f, bool machine);
std::string format_line_report(const HigherOrderProblem& p, const LineCertificate& c, bool machine);

}  // namespace hopfcyc
