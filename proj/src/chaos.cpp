#include "mcnn/chaos.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mcnn {

namespace {

inline double saturation(double x) {
  return 0.5 * (std::abs(x + 1.0) - std::abs(x - 1.0));
}

}  // namespace

double DriveSource::at(double t) const { return amplitude * std::sin(omega * t); }

DriveSource reference_drive() { return {4.04, std::numbers::pi / 2.0}; }

DriveSource memristor_drive() { return {4.0, 2.0 * std::numbers::pi / 3.0}; }

double coupling_memductance_a(double flux) {
  return (flux >= -2.0 && flux < 2.0) ? -1.2 : 0.0;
}

double coupling_memductance_b(double flux) {
  return (flux >= -2.0 && flux < 2.0) ? 1.2 : 0.0;
}

void step_reference(TwoCellState& s, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const double j = reference_drive().at(s.t);
  const double f1 = saturation(s.v1);
  const double f2 = saturation(s.v2);
  const double dv1 = -s.v1 + 2.0 * f1 - 1.2 * f2 + j;
  const double dv2 = -s.v2 + 1.2 * f1 + 2.0 * f2;
  s.v1 += dt * dv1;
  s.v2 += dt * dv2;
  s.t += dt;
}

void step_memristor_coupled(TwoCellState& s, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const double j = memristor_drive().at(s.t);
  const double wa = coupling_memductance_a(s.flux_a);
  const double wb = coupling_memductance_b(s.flux_b);
  const double dv1 =
      -s.v1 + (std::abs(s.v1 + 1.0) - std::abs(s.v1 - 1.0)) + wa * (s.v2 - s.v1) + j;
  const double dv2 =
      -s.v2 + (std::abs(s.v2 + 1.0) - std::abs(s.v2 - 1.0)) + wb * (s.v1 - s.v2);
  const double dfa = s.v2 - s.v1;
  const double dfb = s.v1 - s.v2;
  s.v1 += dt * dv1;
  s.v2 += dt * dv2;
  s.flux_a += dt * dfa;
  s.flux_b += dt * dfb;
  s.t += dt;
}

namespace {

template <typename Step>
Trajectory simulate(double t_end, double dt, bool memristor_coupled, Step step_fn) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
  Trajectory traj;
  traj.memristor_coupled = memristor_coupled;
  traj.dt = dt;
  const long n = std::lround(t_end / dt);
  traj.samples.reserve(static_cast<std::size_t>(n) + 1);
  TwoCellState s;
  for (long k = 0; k <= n; ++k) {
    s.t = static_cast<double>(k) * dt;  // keep the drive phase on the exact grid
    traj.samples.push_back({s.t, s.v1, s.v2, s.flux_a, s.flux_b});
    if (k < n) step_fn(s, dt);
  }
  return traj;
}

}  // namespace

Trajectory simulate_reference(double t_end, double dt) {
  return simulate(t_end, dt, false, [](TwoCellState& s, double h) { step_reference(s, h); });
}

Trajectory simulate_memristor_coupled(double t_end, double dt) {
  return simulate(t_end, dt, true,
                  [](TwoCellState& s, double h) { step_memristor_coupled(s, h); });
}

std::vector<std::array<double, 2>> poincare_section(const Trajectory& trajectory,
                                                    const DriveSource& drive) {
  if (!(drive.omega > 0.0)) throw std::invalid_argument("drive omega must be positive");
  if (trajectory.samples.empty() || !(trajectory.dt > 0.0))
    throw std::invalid_argument("empty trajectory");
  const double period = 2.0 * std::numbers::pi / drive.omega;
  const double steps = period / trajectory.dt;
  const long stride = std::lround(steps);
  if (stride < 1 || std::abs(steps - static_cast<double>(stride)) > 1e-9 * steps)
    throw std::invalid_argument("drive period is not an integer multiple of dt");

  std::vector<std::array<double, 2>> section;
  for (std::size_t k = 0; k < trajectory.samples.size();
       k += static_cast<std::size_t>(stride)) {
    const auto& s = trajectory.samples[k];
    section.push_back({s.v1, s.v2});
  }
  return section;
}

std::vector<PowerSample> power_series(const Trajectory& trajectory) {
  if (!trajectory.memristor_coupled)
    throw std::invalid_argument("power series needs a memristor-coupled trajectory");
  std::vector<PowerSample> series;
  series.reserve(trajectory.samples.size());
  for (const auto& s : trajectory.samples) {
    const double dv_a = s.v2 - s.v1;
    const double dv_b = s.v1 - s.v2;
    series.push_back({s.t, coupling_memductance_a(s.flux_a) * dv_a * dv_a,
                      coupling_memductance_b(s.flux_b) * dv_b * dv_b});
  }
  return series;
}

}  // namespace mcnn
