#pragma once

#include <array>
#include <vector>

namespace mcnn {

// Sinusoidal current source j(t) = amplitude * sin(omega t).
struct DriveSource {
  double amplitude = 0.0;
  double omega = 1.0;
  double at(double t) const;
};

DriveSource reference_drive();   // 4.04 sin(pi t / 2)
DriveSource memristor_drive();   // 4 sin(2 pi t / 3)

struct TwoCellState {
  double v1 = 0.0;
  double v2 = 0.0;
  double flux_a = 0.0;  // memristor-coupled system only
  double flux_b = 0.0;
  double t = 0.0;
};

// Coupling memductances of the two-cell system: A is active (W <= 0),
// B is passive (W >= 0); both gate on the flux window [-2, 2).
double coupling_memductance_a(double flux);
double coupling_memductance_b(double flux);

// Reference non-autonomous two-cell CNN,
//   dv1 = -v1 + 2 f(v1) - 1.2 f(v2) + j(t),  dv2 = -v2 + 1.2 f(v1) + 2 f(v2),
// f(x) = 0.5 (|x+1| - |x-1|), one explicit Euler step.
void step_reference(TwoCellState& state, double dt);

// Memristor-coupled two-cell CNN,
//   dv1 = -v1 + (|v1+1| - |v1-1|) + W_A(phi_A)(v2 - v1) + j(t)
//   dv2 = -v2 + (|v2+1| - |v2-1|) + W_B(phi_B)(v1 - v2)
//   dphi_A = v2 - v1,  dphi_B = v1 - v2.
// The resistor current i_R = -(|v+1| - |v-1|) enters the node balance with a
// minus sign, the same convention as the reference circuit.
void step_memristor_coupled(TwoCellState& state, double dt);

struct ChaosSample {
  double t = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double flux_a = 0.0;
  double flux_b = 0.0;
};

struct Trajectory {
  bool memristor_coupled = false;
  double dt = 0.0;
  std::vector<ChaosSample> samples;
};

// Simulate from the zero state, sampling every dt up to t_end inclusive.
Trajectory simulate_reference(double t_end, double dt);
Trajectory simulate_memristor_coupled(double t_end, double dt);

// Samples at multiples of the drive period 2 pi / omega. The period must be
// an integer multiple of the trajectory's dt (to 1e-9 relative).
std::vector<std::array<double, 2>> poincare_section(const Trajectory& trajectory,
                                                    const DriveSource& drive);

struct PowerSample {
  double t = 0.0;
  double p_a = 0.0;  // <= 0: power flows out of memristor A
  double p_b = 0.0;  // >= 0: power flows into cell 2 through memristor B
};

// Instantaneous coupling powers p = W(phi) (dv)^2 along a memristor-coupled
// trajectory. Rejects reference trajectories.
std::vector<PowerSample> power_series(const Trajectory& trajectory);

}  // namespace mcnn
