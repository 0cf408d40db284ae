#pragma once

#include <vector>

namespace mcnn {

// Flux-gated memductance profiles. W(phi) is piecewise constant with finitely
// many breakpoints; the constitutive relation q = h(phi) is its integral,
// anchored at h(0) = 0. Interval endpoint conventions follow the source
// equations verbatim (they differ between profiles).
enum class ProfileKind {
  Window,     // W = on_value on one flux interval, 0 outside
  TwinPeak,   // W = 1 on (inner, outer) and (-outer, -inner), 0 elsewhere
  RampStore,  // W = unit step: 1 for phi >= 0, 0 for phi < 0
  WaveBand,   // W = alpha on [-a, a); alpha - beta outside [-b, b); 0 between
  // Charge-controlled memristance M(q) = dg/dq, the dual v = M(q) i form.
  // Housed for completeness only; no lattice dynamics evaluates it, and the
  // flux-based queries below reject it.
  ChargeControlled,
};

struct MemductanceProfile {
  ProfileKind kind = ProfileKind::Window;

  // Window
  double lo = -1.0;
  double hi = 1.0;
  double on_value = 1.0;
  bool lo_closed = true;
  bool hi_closed = true;

  // TwinPeak: 0 < inner < outer
  double inner = 2.0;
  double outer = 10.0;

  // WaveBand: conductances alpha, beta and flux thresholds 0 < band_a < band_b
  double alpha = 1.0;
  double beta = 1.0;
  double band_a = 0.5;
  double band_b = 4000.0;

  static MemductanceProfile window(double lo, double hi, double on_value = 1.0,
                                   bool lo_closed = true, bool hi_closed = true);
  static MemductanceProfile twin_peak(double inner, double outer);
  static MemductanceProfile ramp_store();
  static MemductanceProfile wave_band(double alpha, double beta, double a, double b);

  void validate() const;  // throws std::invalid_argument on bad parameters
};

// Flux state of a single device; the charge is derived, q = h(phi).
struct MemristorState {
  double flux = 0.0;
};

double memristor_charge(const MemductanceProfile& profile, const MemristorState& state);

// Nonlinear resistor i_r = -0.5 a (|v+1| - |v-1|). The slope also serves as
// the template center gain a00 in the sign-output lattice dynamics.
struct ResistorParams {
  double slope = 0.0;
};

double eval_memductance(const MemductanceProfile& profile, double flux);
double eval_charge(const MemductanceProfile& profile, double flux);

// One explicit Euler step of dphi/dt = v. Rejects dt <= 0.
MemristorState integrate_flux(MemristorState state, double v, double dt);

double resistor_current(const ResistorParams& params, double v);

// One sample of a sinusoidally driven device: i = W(phi) v with v = sin(wt).
struct HysteresisSample {
  double t = 0.0;
  double v = 0.0;
  double flux = 0.0;
  double conductance = 0.0;
  double current = 0.0;
};

// Drive a device with v(t) = sin(omega t) from phi(0) = 0, sampling every dt
// up to t_end inclusive. Flux is integrated by explicit Euler between samples.
std::vector<HysteresisSample> hysteresis_trace(const MemductanceProfile& profile,
                                               double omega, double t_end, double dt);

}  // namespace mcnn
