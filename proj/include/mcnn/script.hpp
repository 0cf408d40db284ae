#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace mcnn {

enum class DecaySign { Preserve, Flip };

// Sever all coupling into each cell (sign-output dynamics only); the cells
// continue under dv/dt = -v + 0.5 a00 (|v+1| - |v-1|).
struct SwitchOffEvent {
  double t = 0.0;
};

// Power off at t_off (v and y clamp to 0, flux retained), back on at t_resume.
struct PowerOffEvent {
  double t_off = 0.0;
  double t_resume = 0.0;
};

// Close the storage switch on [t0, t0+duration): each cell integrates
// phi += dt * y while normal dynamics continue.
struct StoreWindowEvent {
  double t0 = 0.0;
  double duration = 0.0;
};

// Recovery hold on [t1, t1+duration): per cell
//   dv/dt = -v + 0.5 a00 (|v+1| - |v-1|) + (W_ramp(phi) E - J),  E = 1, J = 0.5,
// with phi held at its recovery-start value, so the injected current is +-0.5
// by the sign of the stored flux for the whole window.
struct RecoveryWindowEvent {
  double t1 = 0.0;
  double duration = 0.0;
};

// Marker for the switch back to normal dynamics; must coincide with the end
// of the recovery window.
struct ResumeAtEvent {
  double t = 0.0;
};

// At time t, a seeded random fraction of cells loses its flux magnitude:
// phi <- epsilon * sgn(phi) (Preserve) or -epsilon * sgn(phi) (Flip).
struct FluxDecayEvent {
  double t = 0.0;
  double fraction = 0.0;
  double epsilon = 0.001;
  DecaySign mode = DecaySign::Preserve;
  std::uint64_t seed = 0;
};

// Set the parallel parasitic conductance G of every cell's memristor.
struct SetParasiticEvent {
  double t = 0.0;
  double conductance = 0.0;
};

using ScriptEvent = std::variant<SwitchOffEvent, PowerOffEvent, StoreWindowEvent,
                                 RecoveryWindowEvent, ResumeAtEvent, FluxDecayEvent,
                                 SetParasiticEvent>;

double event_time(const ScriptEvent& e);

struct ExperimentScript {
  std::vector<ScriptEvent> events;

  bool empty() const { return events.empty(); }
  // Throws std::invalid_argument: unsorted times, overlapping store/recovery/
  // power windows, nonpositive durations, |epsilon| = 0, fraction outside
  // [0,1], or a resume marker not at the recovery end.
  void validate() const;
};

}  // namespace mcnn
