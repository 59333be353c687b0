#pragma once

#include "hopfcyc/jet.hpp"
#include "hopfcyc/mpoly.hpp"
#include "hopfcyc/poly3.hpp"
#include "hopfcyc/qmatrix.hpp"
#include "hopfcyc/system.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hopfcyc {

// Monomial carrying L_k at degree 2k+2 in XH.
enum class ResonantForm {
  power_of_x,  // L_k x^{2k+2}
  radial,      // L_k (x^2+y^2)^{k+1}
};

// Which coefficient of the kernel direction (x^2+y^2)^{k+1} is fixed to 0
// at each resonant degree.
enum class KernelNormalization {
  zero_x_power,  // p of x^{2k+2}
  zero_y_power,  // p of y^{2k+2}
  circle_mean,   // mean of the degree-(2k+2) planar part over the unit circle
};

struct FocalOptions {
  ResonantForm resonant = ResonantForm::power_of_x;
  KernelNormalization kernel = KernelNormalization::zero_x_power;
  bool keep_series = false;
  // Upper bound on stored rational jet coefficients of H; 0 means unlimited.
  std::size_t max_stored_terms = 0;
};

// Thrown when the memory budget is exhausted.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, int last_completed_k)
      : std::runtime_error(what), last_completed_k_(last_completed_k) {}
  int last_completed_k() const { return last_completed_k_; }

 private:
  int last_completed_k_;
};

struct HSeries {
  Poly3 H;  // includes x^2 + y^2
  int computed_degree = 2;
};

struct FocalSequence {
  std::vector<JetPoly> L;  // L[0] is L_1
  int K = 0;
  int T = 0;
  JetSpacePtr space;
  SystemSpec system;
  Perturbation perturbation;
  ResonantForm resonant = ResonantForm::power_of_x;

  const JetPoly& operator[](int k) const { return L[static_cast<std::size_t>(k - 1)]; }
};

struct FocalResult {
  FocalSequence focal;
  std::optional<HSeries> series;
};

// Solves XH = sum_k L_k B_k degree by degree through degree 2K+2 with every
// coefficient a jet of order T in the perturbation parameters. The residual
// of the identity is checked exactly at each degree (std::logic_error on
// failure). Throws ValidationError for lambda = 0 and ResourceError when the
// memory budget is exceeded.
FocalResult focal_coefficients(const SystemSpec& s, const Perturbation& pert, int K, int T,
                               const FocalOptions& options = {});

// Row i is the gradient of L_{i+1} at the origin of parameter space.
QMatrix linear_part_matrix(const FocalSequence& f);

// Degree-2 slices of L_i (1-based indices) as polynomials over the
// parameters, in declaration order. Throws std::invalid_argument for T < 2.
std::vector<MPoly> quadratic_parts(const FocalSequence& f, const std::vector<int>& indices);

// Converts the degree-j slice of a jet into a polynomial over the parameters.
MPoly jet_slice(const JetPoly& p, int j);

}  // namespace hopfcyc
