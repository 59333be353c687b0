#pragma once

#include "hopfcyc/poly3.hpp"
#include "hopfcyc/system.hpp"

namespace hopfcyc {

// Jet of a center manifold z = h(x, y); h has terms of degree 2..order in x
// and y only.
struct CenterManifoldJet {
  QPoly3 h;
  int order = 0;
};

// Solves h_x (-y + P) + h_y (x + Q) = -lambda h + R on z = h degree by
// degree through `order`. Throws std::invalid_argument for order < 2 or
// lambda = 0.
CenterManifoldJet center_manifold_jet(const SystemSpec& s, int order);

// Invariance defect of z = h(x, y) truncated at max_degree.
QPoly3 invariance_residual(const SystemSpec& s, const QPoly3& h, int max_degree);

// xQ - yP, the numerator of the angular speed minus one.
QPoly3 angular_defect(const SystemSpec& s);

bool is_rigid_cylindrical(const SystemSpec& s);

struct RigidityVerdict {
  bool cylindrical = false;
  bool on_center_manifold = false;  // through degree `order` only
  int order = 0;
  QPoly3 obstruction;  // lowest-degree part of (xQ - yP)|_{z=h} when nonzero
};

// (xQ - yP)|_{z=h} has no terms of degree <= order.
bool is_rigid_on_cm(const SystemSpec& s, int order);
RigidityVerdict classify_rigidity(const SystemSpec& s, int order);

}  // namespace hopfcyc
