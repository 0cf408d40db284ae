#include "mcnn/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace mcnn {

namespace {

Template cross_template(double center_a, double cross_a, double center_b,
                        double cross_b, double z) {
  Template t;
  t.a(0, 0) = center_a;
  t.a(-1, 0) = t.a(1, 0) = t.a(0, -1) = t.a(0, 1) = cross_a;
  t.b(0, 0) = center_b;
  t.b(-1, 0) = t.b(1, 0) = t.b(0, -1) = t.b(0, 1) = cross_b;
  t.threshold = z;
  return t;
}

}  // namespace

NamedTemplate builtin_template(TemplateName name) {
  NamedTemplate nt;
  nt.name = name;
  switch (name) {
    case TemplateName::HoleFilling:
      nt.tmpl = cross_template(3.0, 1.0, 4.0, 0.0, -1.0);
      nt.init = InitRule::One;
      nt.boundary = {0.0, 0.0};
      nt.output_class = OutputClass::Binary;
      nt.gate_profile = MemductanceProfile::ramp_store();
      break;
    case TemplateName::HalfToning:
      nt.tmpl = Template::from_rows({-0.07, -0.1, -0.07, -0.1, 1.15, -0.1, -0.07, -0.1, -0.07},
                                    {0.07, 0.1, 0.07, 0.1, 0.32, 0.1, 0.07, 0.1, 0.07}, 0.0);
      nt.init = InitRule::FromInput;
      nt.boundary = {0.0, 0.0};
      nt.output_class = OutputClass::BinaryFromGray;
      nt.gate_profile = MemductanceProfile::ramp_store();
      break;
    case TemplateName::Dilation:
      nt.tmpl = cross_template(2.0, 0.0, 1.0, 1.0, 4.5);
      nt.init = InitRule::Zero;
      nt.boundary = {-1.0, -1.0};
      nt.output_class = OutputClass::Binary;
      nt.gate_profile = MemductanceProfile::window(-1.0, 1.0);
      break;
    case TemplateName::Erosion:
      nt.tmpl = cross_template(2.0, 0.0, 1.0, 1.0, -4.5);
      nt.init = InitRule::Zero;
      nt.boundary = {-1.0, -1.0};
      nt.output_class = OutputClass::Binary;
      nt.gate_profile = MemductanceProfile::twin_peak(2.0, 10.0);
      break;
    case TemplateName::Smoothing:
      nt.tmpl = cross_template(2.0, 1.0, 0.0, 0.0, 0.0);
      nt.init = InitRule::FromInput;
      nt.boundary = {0.0, 0.0};
      nt.output_class = OutputClass::BinaryFromGray;
      nt.gate_profile = MemductanceProfile::twin_peak(2.0, 10.0);
      break;
    case TemplateName::Sharpening:
      nt.tmpl = cross_template(2.0, 0.0, 5.0, -1.0, 0.5);
      nt.init = InitRule::Zero;
      nt.boundary = {0.0, 0.0};
      nt.output_class = OutputClass::BinaryFromGray;
      nt.gate_profile = MemductanceProfile::window(-1.0, 1.0);
      break;
    case TemplateName::GrayScaleEdge:
      nt.tmpl = Template::from_rows({0, 0, 0, 0, 2, 0, 0, 0, 0},
                                    {-1, -1, -1, -1, 8, -1, -1, -1, -1}, -0.5);
      nt.init = InitRule::Zero;
      nt.boundary = {0.0, 0.0};
      nt.output_class = OutputClass::BinaryFromGray;
      break;
    case TemplateName::ShadowProjection:
      nt.tmpl = Template::from_rows({0, 0, 0, 0, 2, 2, 0, 0, 0},
                                    {0, 0, 0, 0, 2, 0, 0, 0, 0}, 0.0);
      nt.init = InitRule::One;
      nt.boundary = {0.0, 0.0};
      nt.output_class = OutputClass::Binary;
      break;
  }
  return nt;
}

const std::vector<TemplateName>& all_template_names() {
  static const std::vector<TemplateName> names = {
      TemplateName::HoleFilling,  TemplateName::HalfToning, TemplateName::Dilation,
      TemplateName::Erosion,      TemplateName::Smoothing,  TemplateName::Sharpening,
      TemplateName::GrayScaleEdge, TemplateName::ShadowProjection};
  return names;
}

const char* to_string(TemplateName name) {
  switch (name) {
    case TemplateName::HoleFilling: return "hole-filling";
    case TemplateName::HalfToning: return "half-toning";
    case TemplateName::Dilation: return "dilation";
    case TemplateName::Erosion: return "erosion";
    case TemplateName::Smoothing: return "smoothing";
    case TemplateName::Sharpening: return "sharpening";
    case TemplateName::GrayScaleEdge: return "gray-scale-edge";
    case TemplateName::ShadowProjection: return "shadow-projection";
  }
  return "?";
}

TemplateName template_name_from_string(std::string_view text) {
  for (TemplateName name : all_template_names())
    if (text == to_string(name)) return name;
  throw std::invalid_argument("unknown template name '" + std::string(text) + "'");
}

const char* to_string(InitRule r) {
  switch (r) {
    case InitRule::Zero: return "zero";
    case InitRule::One: return "one";
    case InitRule::FromInput: return "from-input";
  }
  return "?";
}

InitRule init_rule_from_string(std::string_view text) {
  if (text == "zero") return InitRule::Zero;
  if (text == "one") return InitRule::One;
  if (text == "from-input") return InitRule::FromInput;
  throw std::invalid_argument("unknown init rule '" + std::string(text) + "'");
}

Image initial_state_for(const NamedTemplate& nt, const Image& input) {
  switch (nt.init) {
    case InitRule::Zero: return Image(input.width, input.height, 0.0);
    case InitRule::One: return Image(input.width, input.height, 1.0);
    case InitRule::FromInput: return input;
  }
  return Image(input.width, input.height, 0.0);
}

GridState grid_for_template(const NamedTemplate& nt, DynamicsKind kind, const Image& input,
                            std::optional<MemductanceProfile> profile_override,
                            double parasitic) {
  std::optional<MemductanceProfile> profile = profile_override;
  const bool memristive =
      kind == DynamicsKind::MemristorCNN || kind == DynamicsKind::WaveCNN;
  if (memristive && !profile) profile = nt.gate_profile;
  if (memristive && !profile)
    throw std::invalid_argument(std::string(to_string(nt.name)) +
                                " has no bound memductance profile; pass one explicitly");
  return make_grid(kind, nt.tmpl, input, initial_state_for(nt, input), nt.boundary,
                   profile, parasitic);
}

namespace {

void require_no_gray(const Image& y, const char* when) {
  for (double val : y.values)
    if (val == 0.0)
      throw std::runtime_error(std::string("output still has gray cells at the ") + when +
                               "; the run has not converged (increase the time)");
}

}  // namespace

ImageHoldResult image_holding_run(TemplateName name, const Image& input, double t_off,
                                  double t_end, double dt) {
  if (!(t_off < t_end)) throw std::invalid_argument("t_off must precede t_end");
  if (name == TemplateName::HoleFilling || name == TemplateName::HalfToning)
    throw std::invalid_argument(
        "hole-filling and half-toning run through the suspend/resume protocol");
  const NamedTemplate nt = builtin_template(name);
  const bool modified =
      name == TemplateName::GrayScaleEdge || name == TemplateName::ShadowProjection;

  ExperimentScript script;
  if (modified) script.events.push_back(SwitchOffEvent{t_off});
  GridState grid = grid_for_template(
      nt, modified ? DynamicsKind::ModifiedCNN : DynamicsKind::MemristorCNN, input);

  RunOptions opts;
  opts.snapshot_times = {t_off};
  RunRecord rec = run(std::move(grid), script, t_end, dt, opts);

  ImageHoldResult result;
  result.y_before = rec.snapshots.at(0);
  result.y_after = rec.final_output;
  require_no_gray(result.y_before, "switch-off time");
  result.held = result.y_before == result.y_after;
  return result;
}

namespace {

void require_storage_task(TemplateName name) {
  if (name != TemplateName::HoleFilling && name != TemplateName::HalfToning)
    throw std::invalid_argument(
        "suspend/resume experiments are defined for hole-filling and half-toning");
}

ExperimentScript suspend_script(double store_t0, double store_duration, double recovery_t1,
                                double recovery_duration,
                                std::optional<FluxDecayEvent> decay) {
  ExperimentScript script;
  script.events.push_back(StoreWindowEvent{store_t0, store_duration});
  script.events.push_back(PowerOffEvent{store_t0 + store_duration, recovery_t1});
  if (decay) script.events.push_back(*decay);
  script.events.push_back(RecoveryWindowEvent{recovery_t1, recovery_duration});
  return script;
}

}  // namespace

SuspendResumeResult suspend_resume_run(TemplateName name, const Image& input,
                                       double store_t0, double store_duration,
                                       double recovery_t1, double recovery_duration,
                                       double t_end, double dt) {
  require_storage_task(name);
  const NamedTemplate nt = builtin_template(name);

  RunRecord interrupted = run(
      grid_for_template(nt, DynamicsKind::ModifiedCNN, input),
      suspend_script(store_t0, store_duration, recovery_t1, recovery_duration, std::nullopt),
      t_end, dt);
  RunRecord plain =
      run(grid_for_template(nt, DynamicsKind::ModifiedCNN, input), {}, t_end, dt);

  SuspendResumeResult result;
  result.y_recovered = interrupted.recovered_output;
  result.y_final = interrupted.final_output;
  result.y_uninterrupted = plain.final_output;
  result.flux_at_recovery = std::move(interrupted.flux_at_recovery_start);
  result.v_at_recovery_end = std::move(interrupted.v_at_recovery_end);
  result.warnings = std::move(interrupted.warnings);
  result.equal = result.y_final == result.y_uninterrupted;
  return result;
}

FluxDecayResult flux_decay_run(TemplateName name, const Image& input, double store_t0,
                               double store_duration, double recovery_t1,
                               double recovery_duration, double t_end, double fraction,
                               double epsilon, DecaySign mode, std::uint64_t seed,
                               double dt) {
  require_storage_task(name);
  const NamedTemplate nt = builtin_template(name);

  // Decay acts at the end of the power-off period, just before recovery.
  FluxDecayEvent decay{recovery_t1, fraction, epsilon, mode, seed};
  RunRecord interrupted =
      run(grid_for_template(nt, DynamicsKind::ModifiedCNN, input),
          suspend_script(store_t0, store_duration, recovery_t1, recovery_duration, decay),
          t_end, dt);
  RunRecord plain =
      run(grid_for_template(nt, DynamicsKind::ModifiedCNN, input), {}, t_end, dt);

  FluxDecayResult result;
  result.y_final = interrupted.final_output;
  result.y_uninterrupted = plain.final_output;
  result.decayed_cells = flux_decay_selection(input.size(), fraction, seed);
  result.warnings = std::move(interrupted.warnings);
  result.match = result.y_final == result.y_uninterrupted;
  return result;
}

ParasiticResult parasitic_comparison(TemplateName name, const Image& input, double g,
                                     double t_end, double dt) {
  if (g < 0.0) throw std::invalid_argument("parasitic conductance must be >= 0");
  const NamedTemplate nt = builtin_template(name);
  if (!nt.gate_profile)
    throw std::invalid_argument("parasitic comparison needs a memristor-CNN task");

  RunRecord with_g = run(
      grid_for_template(nt, DynamicsKind::MemristorCNN, input, std::nullopt, g),
      {}, t_end, dt);
  RunRecord without_g = run(
      grid_for_template(nt, DynamicsKind::MemristorCNN, input, std::nullopt, 0.0),
      {}, t_end, dt);

  ParasiticResult result;
  result.y_with_g = with_g.final_output;
  result.y_without_g = without_g.final_output;
  result.identical = result.y_with_g == result.y_without_g;
  return result;
}

WaveResult wave_run(const Image& binary_input, const MemductanceProfile& wave_band,
                    double t_end, const std::vector<double>& snapshot_times, double dt) {
  if (!is_binary(binary_input))
    throw std::invalid_argument("wave runs start from a binary image");
  if (wave_band.kind != ProfileKind::WaveBand)
    throw std::invalid_argument("wave runs require a wave-band profile");
  wave_band.validate();

  // Hole-filling template, but state and input both start from the image.
  NamedTemplate nt = builtin_template(TemplateName::HoleFilling);
  nt.init = InitRule::FromInput;
  GridState grid =
      grid_for_template(nt, DynamicsKind::WaveCNN, binary_input, wave_band);

  WaveResult result;
  result.y_initial = output_image(grid);
  RunOptions opts;
  opts.snapshot_times = snapshot_times;
  RunRecord rec = run(std::move(grid), {}, t_end, dt, opts);
  result.snapshot_times = rec.snapshot_times;
  result.snapshots = std::move(rec.snapshots);
  result.y_final = std::move(rec.final_output);
  return result;
}

}  // namespace mcnn
