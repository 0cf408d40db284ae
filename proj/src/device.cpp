#include "mcnn/device.hpp"

#include <cmath>
#include <stdexcept>

namespace mcnn {

MemductanceProfile MemductanceProfile::window(double lo, double hi, double on_value,
                                              bool lo_closed, bool hi_closed) {
  MemductanceProfile p;
  p.kind = ProfileKind::Window;
  p.lo = lo;
  p.hi = hi;
  p.on_value = on_value;
  p.lo_closed = lo_closed;
  p.hi_closed = hi_closed;
  p.validate();
  return p;
}

MemductanceProfile MemductanceProfile::twin_peak(double inner, double outer) {
  MemductanceProfile p;
  p.kind = ProfileKind::TwinPeak;
  p.inner = inner;
  p.outer = outer;
  p.validate();
  return p;
}

MemductanceProfile MemductanceProfile::ramp_store() {
  MemductanceProfile p;
  p.kind = ProfileKind::RampStore;
  return p;
}

MemductanceProfile MemductanceProfile::wave_band(double alpha, double beta,
                                                 double a, double b) {
  MemductanceProfile p;
  p.kind = ProfileKind::WaveBand;
  p.alpha = alpha;
  p.beta = beta;
  p.band_a = a;
  p.band_b = b;
  p.validate();
  return p;
}

void MemductanceProfile::validate() const {
  switch (kind) {
    case ProfileKind::Window:
      if (!(lo < hi)) throw std::invalid_argument("window profile requires lo < hi");
      if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(on_value))
        throw std::invalid_argument("window profile parameters must be finite");
      break;
    case ProfileKind::TwinPeak:
      if (!(0.0 < inner && inner < outer))
        throw std::invalid_argument("twin-peak profile requires 0 < inner < outer");
      break;
    case ProfileKind::RampStore:
      break;
    case ProfileKind::WaveBand:
      if (!(0.0 < band_a && band_a < band_b))
        throw std::invalid_argument("wave-band profile requires 0 < a < b");
      if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw std::invalid_argument("wave-band conductances must be finite");
      break;
    case ProfileKind::ChargeControlled:
      throw std::invalid_argument(
          "charge-controlled memristance has no memductance profile");
  }
}

double eval_memductance(const MemductanceProfile& p, double flux) {
  switch (p.kind) {
    case ProfileKind::Window: {
      const bool above = p.lo_closed ? flux >= p.lo : flux > p.lo;
      const bool below = p.hi_closed ? flux <= p.hi : flux < p.hi;
      return (above && below) ? p.on_value : 0.0;
    }
    case ProfileKind::TwinPeak: {
      const double m = std::abs(flux);
      return (m > p.inner && m < p.outer) ? 1.0 : 0.0;
    }
    case ProfileKind::RampStore:
      return flux >= 0.0 ? 1.0 : 0.0;
    case ProfileKind::WaveBand:
      if (flux >= -p.band_a && flux < p.band_a) return p.alpha;
      if (flux < -p.band_b || flux >= p.band_b) return p.alpha - p.beta;
      return 0.0;
    case ProfileKind::ChargeControlled:
      break;
  }
  throw std::invalid_argument("profile is not flux-controlled");
}

namespace {

inline double clamp(double x, double lo, double hi) {
  return x < lo ? lo : (x > hi ? hi : x);
}

}  // namespace

double eval_charge(const MemductanceProfile& p, double flux) {
  // h(phi) = integral of W from 0 to phi; piecewise linear, h(0) = 0.
  switch (p.kind) {
    case ProfileKind::Window:
      return p.on_value * (clamp(flux, p.lo, p.hi) - clamp(0.0, p.lo, p.hi));
    case ProfileKind::TwinPeak: {
      const double m = std::abs(flux);
      const double h = clamp(m, p.inner, p.outer) - p.inner;
      return flux >= 0.0 ? h : -h;  // odd, like Eq-level form
    }
    case ProfileKind::RampStore:
      return 0.5 * (std::abs(flux) + flux);
    case ProfileKind::WaveBand: {
      const double m = std::abs(flux);
      const double h = p.alpha * std::min(m, p.band_a) +
                       (p.alpha - p.beta) * std::max(0.0, m - p.band_b);
      return flux >= 0.0 ? h : -h;
    }
    case ProfileKind::ChargeControlled:
      break;
  }
  throw std::invalid_argument("profile is not flux-controlled");
}

double memristor_charge(const MemductanceProfile& profile, const MemristorState& state) {
  return eval_charge(profile, state.flux);
}

MemristorState integrate_flux(MemristorState state, double v, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  state.flux += v * dt;
  return state;
}

double resistor_current(const ResistorParams& params, double v) {
  return -0.5 * params.slope * (std::abs(v + 1.0) - std::abs(v - 1.0));
}

std::vector<HysteresisSample> hysteresis_trace(const MemductanceProfile& profile,
                                               double omega, double t_end, double dt) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
  profile.validate();

  const long n = std::lround(t_end / dt);
  std::vector<HysteresisSample> series;
  series.reserve(static_cast<std::size_t>(n) + 1);
  double flux = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double v = std::sin(omega * t);
    const double w = eval_memductance(profile, flux);
    series.push_back({t, v, flux, w, w * v});
    flux += v * dt;
  }
  return series;
}

}  // namespace mcnn
