#pragma once

#include <vector>

namespace mcnn {

// Isolated-cell driving point F(v) = -v + 0.5 a (|v+1| - |v-1|) + i.
struct DrivingPoint {
  double slope = 0.0;  // a; also the template center gain a00
  double bias = 0.0;   // constant injected current i
};

enum class Stability { Stable, Unstable, BoundaryOfInvariantSet };

struct Equilibrium {
  double v = 0.0;
  Stability stability = Stability::Stable;
};

const char* to_string(Stability s);

double driving_point_flow(const DrivingPoint& dp, double v);  // F(v)

// Closed-form equilibria of F(v) = 0, sorted by v, duplicates within 1e-9
// merged. For slope == 1 the flow has an invariant interval instead of
// isolated points; its endpoints [bias-1, bias+1] are reported with
// BoundaryOfInvariantSet status.
std::vector<Equilibrium> driving_point_equilibria(const DrivingPoint& dp);

// Equilibrium reached as t -> inf from v0 under dv/dt = F(v). Requires
// slope != 1 (trajectories of the 1D flow cannot cross equilibria, so this is
// a basin lookup, not an integration).
double isolated_cell_limit(const DrivingPoint& dp, double v0);

// Three-valued sign output y = sgn(v) with sgn(0) = 0.
int sign_output(double v);

}  // namespace mcnn
