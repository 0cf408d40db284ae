#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcnn/lattice.hpp"

namespace mcnn {

enum class TemplateName {
  HoleFilling,
  HalfToning,
  Dilation,
  Erosion,
  Smoothing,
  Sharpening,
  GrayScaleEdge,
  ShadowProjection,
};

enum class InitRule { Zero, One, FromInput };
enum class OutputClass { Binary, BinaryFromGray };

struct NamedTemplate {
  TemplateName name;
  Template tmpl;
  InitRule init = InitRule::Zero;
  BoundaryCondition boundary;
  OutputClass output_class = OutputClass::Binary;
  // Memductance bound to this task's memristor-CNN experiments; absent for the
  // two switch-off tasks that run on the plain modified CNN.
  std::optional<MemductanceProfile> gate_profile;
};

NamedTemplate builtin_template(TemplateName name);
const std::vector<TemplateName>& all_template_names();
const char* to_string(TemplateName name);
TemplateName template_name_from_string(std::string_view text);
const char* to_string(InitRule r);
InitRule init_rule_from_string(std::string_view text);

Image initial_state_for(const NamedTemplate& nt, const Image& input);

// Grid bound to a named task: init rule, boundary, and (for memristive kinds)
// the task's gate profile unless overridden.
GridState grid_for_template(const NamedTemplate& nt, DynamicsKind kind,
                            const Image& input,
                            std::optional<MemductanceProfile> profile_override = std::nullopt,
                            double parasitic = 0.0);

// ---- named experiments -----------------------------------------------------

struct ImageHoldResult {
  Image y_before;  // output at the switch-off / comparison time
  Image y_after;   // output at t_end
  bool held = false;
};

// Run a task and check that the binary output at t_off is held until t_end.
// GrayScaleEdge and ShadowProjection run on the modified CNN with a switch-off
// at t_off; the four memristor tasks run on the memristor CNN, whose gate
// closes by itself, and t_off is just the comparison time. Throws if the
// output still contains zero (gray) cells at t_off.
ImageHoldResult image_holding_run(TemplateName name, const Image& input, double t_off,
                                  double t_end, double dt = 0.01);

struct SuspendResumeResult {
  Image y_recovered;      // output at the recovery-window end
  Image y_final;          // output of the interrupted run at t_end
  Image y_uninterrupted;  // output of the plain run at t_end
  std::vector<double> flux_at_recovery;  // stored flux when recovery began
  std::vector<double> v_at_recovery_end;
  std::vector<std::string> warnings;
  bool equal = false;  // y_final == y_uninterrupted
};

// Store the output average as flux on [store_t0, store_t0+store_duration),
// power off until recovery_t1, reconstruct each cell's sign from the stored
// flux over [recovery_t1, recovery_t1+recovery_duration), then resume until
// t_end. Only HoleFilling and HalfToning carry the storage circuit.
SuspendResumeResult suspend_resume_run(TemplateName name, const Image& input,
                                       double store_t0, double store_duration,
                                       double recovery_t1, double recovery_duration,
                                       double t_end, double dt = 0.01);

struct FluxDecayResult {
  Image y_final;
  Image y_uninterrupted;
  std::vector<std::uint8_t> decayed_cells;
  std::vector<std::string> warnings;
  bool match = false;
};

// Criterion-6 style suspend/resume where, at the end of the power-off period,
// a seeded random fraction of storage cells has decayed to |flux| = epsilon,
// preserving or flipping the sign.
FluxDecayResult flux_decay_run(TemplateName name, const Image& input, double store_t0,
                               double store_duration, double recovery_t1,
                               double recovery_duration, double t_end, double fraction,
                               double epsilon, DecaySign mode, std::uint64_t seed,
                               double dt = 0.01);

struct ParasiticResult {
  Image y_with_g;
  Image y_without_g;
  bool identical = false;
};

// Two memristor-CNN runs differing only in the parasitic conductance G.
ParasiticResult parasitic_comparison(TemplateName name, const Image& input, double g,
                                     double t_end, double dt = 0.01);

struct WaveResult {
  Image y_initial;
  std::vector<double> snapshot_times;
  std::vector<Image> snapshots;
  Image y_final;
};

// Hole-filling template on the inductor-augmented lattice: state and input
// start from the given binary image, boundary 0, flux and inductor current 0.
WaveResult wave_run(const Image& binary_input, const MemductanceProfile& wave_band,
                    double t_end, const std::vector<double>& snapshot_times,
                    double dt = 0.01);

}  // namespace mcnn
