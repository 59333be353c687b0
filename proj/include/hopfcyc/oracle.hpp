#pragma once

#include "hopfcyc/poly3.hpp"
#include "hopfcyc/system.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfcyc {

class OrbitEscapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoSectionPointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The perturbed field in floating point:
//   x' = lambda0 x - y + P + G1, y' = x + lambda0 y + Q + G2, z' = -lambda z + R + G3.
class NumericField {
 public:
  NumericField(const SystemSpec& s, const Perturbation& pert, std::span<const double> values, double lambda0 = 0);
  explicit NumericField(const SystemSpec& s) : NumericField(s, Perturbation{}, {}) {}

  // Nonlinear parts (P + G1, Q + G2, R + G3) at a point.
  std::array<long double, 3> nonlinear(long double x, long double y, long double z) const;
  long double lambda() const { return lambda_; }
  long double lambda0() const { return lambda0_; }
  // Center-manifold guess omega = h(rho, 0) / rho for the unperturbed part.
  double omega_guess(double rho0) const;

 private:
  struct Term {
    int i, j, k;
    long double c;
  };
  std::array<std::vector<Term>, 3> terms_;
  long double lambda_ = 1;
  long double lambda0_ = 0;
  QPoly3 cm_;
};

struct OracleOptions {
  double tolerance = 1e-12;
  long max_steps = 1000000;
  int max_newton = 50;
};

struct ReturnPoint {
  long double rho = 0;
  long double omega = 0;
  long steps = 0;
};

// Flow of d rho/d theta, d omega/d theta (x = rho cos, y = rho sin,
// z = rho omega) from theta = 0 to 2 pi.
ReturnPoint return_map(const NumericField& f, double rho0, double omega0, const OracleOptions& o = {});

struct DisplacementSample {
  double rho0 = 0;
  double omega_tilde = 0;
  double d = 0;
  double d2 = 0;
  long steps = 0;
  double tol = 0;
  int newton_iterations = 0;
};

// Newton on omega0 -> d2(rho0, omega0) from the center-manifold guess, then
// d = d1(rho0, omega_tilde).
DisplacementSample reduced_displacement(const NumericField& f, double rho0, const OracleOptions& o = {});

std::string csv_header();
std::string csv_row(const DisplacementSample& s);

}  // namespace hopfcyc
