#include "mcnn/cell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcnn {

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::BoundaryOfInvariantSet: return "invariant-set-boundary";
  }
  return "?";
}

double driving_point_flow(const DrivingPoint& dp, double v) {
  return -v + 0.5 * dp.slope * (std::abs(v + 1.0) - std::abs(v - 1.0)) + dp.bias;
}

std::vector<Equilibrium> driving_point_equilibria(const DrivingPoint& dp) {
  const double a = dp.slope;
  const double i = dp.bias;
  std::vector<Equilibrium> out;

  if (a == 1.0) {
    // Degenerate middle segment: F = i on |v| <= 1. The interval
    // [i-1, i+1] is invariant; trajectories outside tend to its ends.
    out.push_back({i - 1.0, Stability::BoundaryOfInvariantSet});
    out.push_back({i + 1.0, Stability::BoundaryOfInvariantSet});
    return out;
  }

  // Middle segment |v| <= 1: F = (a-1) v + i.
  const double mid = i / (1.0 - a);
  if (std::abs(mid) <= 1.0)
    out.push_back({mid, a > 1.0 ? Stability::Unstable : Stability::Stable});
  // Right segment v >= 1: F = -v + a + i, slope -1.
  if (a + i > 1.0) out.push_back({a + i, Stability::Stable});
  // Left segment v <= -1: F = -v - a + i, slope -1.
  if (i - a < -1.0) out.push_back({i - a, Stability::Stable});

  std::sort(out.begin(), out.end(),
            [](const Equilibrium& l, const Equilibrium& r) { return l.v < r.v; });
  // Merge coincident roots (segment candidates can meet at |v| = 1).
  std::vector<Equilibrium> dedup;
  for (const auto& e : out) {
    if (!dedup.empty() && std::abs(e.v - dedup.back().v) < 1e-9) continue;
    dedup.push_back(e);
  }
  return dedup;
}

double isolated_cell_limit(const DrivingPoint& dp, double v0) {
  if (dp.slope == 1.0)
    throw std::invalid_argument("isolated_cell_limit requires slope != 1");
  const auto eq = driving_point_equilibria(dp);
  const double f0 = driving_point_flow(dp, v0);
  if (f0 == 0.0) return v0;
  if (f0 > 0.0) {
    // Flow increases; first equilibrium above v0.
    for (const auto& e : eq)
      if (e.v > v0) return e.v;
  } else {
    for (auto it = eq.rbegin(); it != eq.rend(); ++it)
      if (it->v < v0) return it->v;
  }
  // F(+-inf) has the sign of -v, so a bounding equilibrium always exists.
  throw std::logic_error("no equilibrium bounds the trajectory");
}

int sign_output(double v) {
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

}  // namespace mcnn
