#include "mcnn/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mcnn {

namespace {

// Recovery circuit constants (switch S_B in position 1).
constexpr double kRecoverySource = 1.0;  // E
constexpr double kRecoverySink = 0.5;    // J

inline double saturation(double x) {
  return 0.5 * (std::abs(x + 1.0) - std::abs(x - 1.0));
}

inline double sign3(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Step-grid comparison: boundary t has reached the target time. The epsilon
// absorbs accumulated rounding in t = k*dt without ever being a whole step.
inline bool reached(double t, double target) {
  return t >= target - 1e-9 * std::max(1.0, std::abs(target));
}

}  // namespace

const char* to_string(DynamicsKind k) {
  switch (k) {
    case DynamicsKind::StandardCNN: return "standard";
    case DynamicsKind::ModifiedCNN: return "modified";
    case DynamicsKind::MemristorCNN: return "memristor";
    case DynamicsKind::WaveCNN: return "wave";
  }
  return "?";
}

Template Template::from_rows(const std::array<double, 9>& a_rows,
                             const std::array<double, 9>& b_rows, double z) {
  Template t;
  t.feedback = a_rows;
  t.control = b_rows;
  t.threshold = z;
  return t;
}

GridState make_grid(DynamicsKind kind, const Template& tmpl, const Image& input,
                    const Image& initial_state, const BoundaryCondition& boundary,
                    std::optional<MemductanceProfile> profile, double parasitic) {
  if (input.width <= 0 || input.height <= 0)
    throw std::invalid_argument("grid input image is empty");
  if (initial_state.width != input.width || initial_state.height != input.height)
    throw std::invalid_argument("initial state and input shapes differ");
  const bool memristive = kind == DynamicsKind::MemristorCNN || kind == DynamicsKind::WaveCNN;
  if (memristive && !profile)
    throw std::invalid_argument("memristive dynamics require a memductance profile");
  if (kind == DynamicsKind::WaveCNN && profile->kind != ProfileKind::WaveBand)
    throw std::invalid_argument("wave dynamics require a wave-band profile");
  if (profile) profile->validate();
  if (parasitic < 0.0) throw std::invalid_argument("parasitic conductance must be >= 0");

  GridState s;
  s.kind = kind;
  s.rows = input.height;
  s.cols = input.width;
  s.v = initial_state.values;
  if (memristive) s.flux.assign(s.cells(), 0.0);
  if (kind == DynamicsKind::WaveCNN) s.inductor_i.assign(s.cells(), 0.0);
  s.input = input;
  s.tmpl = tmpl;
  s.boundary = boundary;
  s.profile = profile;
  s.parasitic = parasitic;
  return s;
}

double cell_output(const GridState& state, int i, int j) {
  const double v = state.v[state.idx(i, j)];
  return state.kind == DynamicsKind::StandardCNN ? saturation(v) : sign3(v);
}

Image output_image(const GridState& state) {
  Image y(state.cols, state.rows);
  if (state.kind == DynamicsKind::StandardCNN) {
    for (std::size_t k = 0; k < state.cells(); ++k) y.values[k] = saturation(state.v[k]);
  } else {
    for (std::size_t k = 0; k < state.cells(); ++k) y.values[k] = sign3(state.v[k]);
  }
  return y;
}

std::vector<std::uint8_t> gate_mask(const GridState& state) {
  std::vector<std::uint8_t> mask;
  if (!state.profile || state.flux.empty()) return mask;
  mask.resize(state.cells());
  for (std::size_t k = 0; k < state.cells(); ++k)
    mask[k] = eval_memductance(*state.profile, state.flux[k]) != 0.0 ? 1 : 0;
  return mask;
}

double neighborhood_sum(const GridState& s, int i, int j, bool include_center_feedback) {
  if (i < 0 || i >= s.rows || j < 0 || j >= s.cols)
    throw std::out_of_range("cell index outside the lattice");
  const double yb = s.kind == DynamicsKind::StandardCNN ? saturation(s.boundary.state_v)
                                                        : sign3(s.boundary.state_v);
  double acc_a = 0.0, acc_b = 0.0;
  for (int dk = -1; dk <= 1; ++dk) {
    for (int dl = -1; dl <= 1; ++dl) {
      const int k = i + dk, l = j + dl;
      const bool inside = k >= 0 && k < s.rows && l >= 0 && l < s.cols;
      const double y = inside ? cell_output(s, k, l) : yb;
      const double u = inside ? s.input.at(k, l) : s.boundary.input_u;
      const double a = (dk == 0 && dl == 0 && !include_center_feedback) ? 0.0 : s.tmpl.a(dk, dl);
      acc_a += a * y;
      acc_b += s.tmpl.b(dk, dl) * u;
    }
  }
  return acc_a + acc_b + s.tmpl.threshold;
}

int lattice_thread_cap() {
  const char* env = std::getenv("MCNN_THREADS");
  if (!env || !*env) return 0;
  const long n = std::strtol(env, nullptr, 10);
  return n > 0 ? static_cast<int>(n) : 0;
}

namespace {

int worker_count(std::size_t cells) {
#ifdef _OPENMP
  int n = lattice_thread_cap();
  if (n == 0) n = omp_get_max_threads();
  // A thread per ~2k cells is plenty for these stencils.
  const int useful = static_cast<int>(std::max<std::size_t>(1, cells / 2048));
  return std::max(1, std::min(n, useful));
#else
  (void)cells;
  return 1;
#endif
}

// Snapshot buffers: outputs and inputs with the fixed one-cell frame baked in,
// so the per-cell loops are branch-free.
struct Workspace {
  int rows = 0, cols = 0, stride = 0;
  std::vector<double> ypad;
  std::vector<double> upad;

  void init(const GridState& s) {
    rows = s.rows;
    cols = s.cols;
    stride = cols + 2;
    const double yb = s.kind == DynamicsKind::StandardCNN ? saturation(s.boundary.state_v)
                                                          : sign3(s.boundary.state_v);
    ypad.assign(static_cast<std::size_t>(rows + 2) * stride, yb);
    upad.assign(static_cast<std::size_t>(rows + 2) * stride, s.boundary.input_u);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        upad[static_cast<std::size_t>(i + 1) * stride + j + 1] = s.input.at(i, j);
  }

  void refresh_outputs(const GridState& s, int threads) {
    const bool sat = s.kind == DynamicsKind::StandardCNN;
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
    for (int i = 0; i < rows; ++i) {
      const double* vrow = &s.v[static_cast<std::size_t>(i) * cols];
      double* yrow = &ypad[static_cast<std::size_t>(i + 1) * stride + 1];
      if (sat)
        for (int j = 0; j < cols; ++j) yrow[j] = saturation(vrow[j]);
      else
        for (int j = 0; j < cols; ++j) yrow[j] = sign3(vrow[j]);
    }
#ifndef _OPENMP
    (void)threads;
#endif
  }
};

// Template sum at a padded location; identical accumulation order to
// neighborhood_sum so the fast path and the public operation agree bitwise.
inline double stencil_sum(const double* yc, const double* uc, int stride,
                          const Template& t, bool include_center) {
  double acc_a = 0.0, acc_b = 0.0;
  for (int dk = -1; dk <= 1; ++dk) {
    for (int dl = -1; dl <= 1; ++dl) {
      const int off = dk * stride + dl;
      const double a = (dk == 0 && dl == 0 && !include_center) ? 0.0 : t.a(dk, dl);
      acc_a += a * yc[off];
      acc_b += t.b(dk, dl) * uc[off];
    }
  }
  return acc_a + acc_b + t.threshold;
}

// One synchronous step over all cells. `storing` adds the storage-window flux
// integration phi += dt*y to a modified-CNN step.
void step_cells(GridState& s, double dt, Workspace& ws, bool storing) {
  const int threads = worker_count(s.cells());
  const bool severed = s.coupling_severed;
  const Template& t = s.tmpl;
  const double a00 = t.center_gain();
  const int cols = s.cols, stride = ws.stride;

  if (!(severed && s.kind == DynamicsKind::ModifiedCNN) || storing)
    ws.refresh_outputs(s, threads);

  switch (s.kind) {
    case DynamicsKind::StandardCNN: {
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
      for (int i = 0; i < s.rows; ++i) {
        const double* yc = &ws.ypad[static_cast<std::size_t>(i + 1) * stride + 1];
        const double* uc = &ws.upad[static_cast<std::size_t>(i + 1) * stride + 1];
        double* vrow = &s.v[static_cast<std::size_t>(i) * cols];
        for (int j = 0; j < cols; ++j) {
          const double x = vrow[j];
          const double dx = -x + stencil_sum(yc + j, uc + j, stride, t, true);
          vrow[j] = x + dt * dx;
        }
      }
      break;
    }
    case DynamicsKind::ModifiedCNN: {
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
      for (int i = 0; i < s.rows; ++i) {
        const double* yc = &ws.ypad[static_cast<std::size_t>(i + 1) * stride + 1];
        const double* uc = &ws.upad[static_cast<std::size_t>(i + 1) * stride + 1];
        double* vrow = &s.v[static_cast<std::size_t>(i) * cols];
        double* frow = storing ? &s.flux[static_cast<std::size_t>(i) * cols] : nullptr;
        for (int j = 0; j < cols; ++j) {
          const double v = vrow[j];
          const double sum = severed ? 0.0 : stencil_sum(yc + j, uc + j, stride, t, false);
          const double dv = -v + 0.5 * a00 * (std::abs(v + 1.0) - std::abs(v - 1.0)) + sum;
          if (storing) frow[j] += dt * yc[j];
          vrow[j] = v + dt * dv;
        }
      }
      break;
    }
    case DynamicsKind::MemristorCNN: {
      const MemductanceProfile prof = *s.profile;
      const double g = s.parasitic;
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
      for (int i = 0; i < s.rows; ++i) {
        const double* yc = &ws.ypad[static_cast<std::size_t>(i + 1) * stride + 1];
        const double* uc = &ws.upad[static_cast<std::size_t>(i + 1) * stride + 1];
        double* vrow = &s.v[static_cast<std::size_t>(i) * cols];
        double* frow = &s.flux[static_cast<std::size_t>(i) * cols];
        for (int j = 0; j < cols; ++j) {
          const double v = vrow[j];
          const double vm = stencil_sum(yc + j, uc + j, stride, t, false);
          const double w = eval_memductance(prof, frow[j]);
          const double dv =
              -v + 0.5 * a00 * (std::abs(v + 1.0) - std::abs(v - 1.0)) + (w + g) * vm;
          vrow[j] = v + dt * dv;
          frow[j] += dt * vm;
        }
      }
      break;
    }
    case DynamicsKind::WaveCNN: {
      const MemductanceProfile prof = *s.profile;
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
      for (int i = 0; i < s.rows; ++i) {
        const double* yc = &ws.ypad[static_cast<std::size_t>(i + 1) * stride + 1];
        const double* uc = &ws.upad[static_cast<std::size_t>(i + 1) * stride + 1];
        double* vrow = &s.v[static_cast<std::size_t>(i) * cols];
        double* frow = &s.flux[static_cast<std::size_t>(i) * cols];
        double* irow = &s.inductor_i[static_cast<std::size_t>(i) * cols];
        for (int j = 0; j < cols; ++j) {
          const double v = vrow[j];
          const double il = irow[j];
          const double vm = stencil_sum(yc + j, uc + j, stride, t, false);
          const double w = eval_memductance(prof, frow[j]);
          const double dv =
              il - v + 0.5 * a00 * (std::abs(v + 1.0) - std::abs(v - 1.0)) + w * vm;
          vrow[j] = v + dt * dv;
          irow[j] = il + dt * (-v);
          frow[j] += dt * vm;
        }
      }
      break;
    }
  }
  s.t += dt;
}

// Recovery hold: per-cell isolated dynamics plus the +-0.5 current decided by
// the sign of the stored flux (held fixed for the whole window).
void step_recovery(GridState& s, double dt) {
  const int threads = worker_count(s.cells());
  const double a00 = s.tmpl.center_gain();
  const auto ramp = MemductanceProfile::ramp_store();
  const int cols = s.cols;
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
  for (int i = 0; i < s.rows; ++i) {
    double* vrow = &s.v[static_cast<std::size_t>(i) * cols];
    const double* frow = &s.flux[static_cast<std::size_t>(i) * cols];
    for (int j = 0; j < cols; ++j) {
      const double v = vrow[j];
      const double inj = eval_memductance(ramp, frow[j]) * kRecoverySource - kRecoverySink;
      vrow[j] = v + dt * (-v + 0.5 * a00 * (std::abs(v + 1.0) - std::abs(v - 1.0)) + inj);
    }
  }
  s.t += dt;
}

void validate_step_args(const GridState& s, double dt, DynamicsKind expected) {
  if (s.kind != expected)
    throw std::invalid_argument("grid dynamics kind does not match the stepper");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if ((s.kind == DynamicsKind::MemristorCNN || s.kind == DynamicsKind::WaveCNN) && !s.profile)
    throw std::invalid_argument("missing memductance profile");
}

void single_step(GridState& s, double dt) {
  Workspace ws;
  ws.init(s);
  if (s.power == PowerState::Off) {
    s.t += dt;
    return;
  }
  step_cells(s, dt, ws, false);
}

}  // namespace

void step_standard(GridState& s, double dt) {
  validate_step_args(s, dt, DynamicsKind::StandardCNN);
  single_step(s, dt);
}

void step_modified(GridState& s, double dt) {
  validate_step_args(s, dt, DynamicsKind::ModifiedCNN);
  single_step(s, dt);
}

void step_memristor(GridState& s, double dt) {
  validate_step_args(s, dt, DynamicsKind::MemristorCNN);
  single_step(s, dt);
}

void step_wave(GridState& s, double dt) {
  validate_step_args(s, dt, DynamicsKind::WaveCNN);
  single_step(s, dt);
}

void step(GridState& s, double dt) {
  validate_step_args(s, dt, s.kind);
  single_step(s, dt);
}

double event_time(const ScriptEvent& e) {
  return std::visit([](const auto& ev) {
    using T = std::decay_t<decltype(ev)>;
    if constexpr (std::is_same_v<T, SwitchOffEvent>) return ev.t;
    else if constexpr (std::is_same_v<T, PowerOffEvent>) return ev.t_off;
    else if constexpr (std::is_same_v<T, StoreWindowEvent>) return ev.t0;
    else if constexpr (std::is_same_v<T, RecoveryWindowEvent>) return ev.t1;
    else if constexpr (std::is_same_v<T, ResumeAtEvent>) return ev.t;
    else if constexpr (std::is_same_v<T, FluxDecayEvent>) return ev.t;
    else return ev.t;
  }, e);
}

void ExperimentScript::validate() const {
  double prev = -std::numeric_limits<double>::infinity();
  struct Window { double begin, end; };
  std::vector<Window> windows;
  std::optional<double> recovery_end;
  for (const auto& e : events) {
    const double t = event_time(e);
    if (t < prev) throw std::invalid_argument("script events must be sorted by time");
    prev = t;
    if (const auto* po = std::get_if<PowerOffEvent>(&e)) {
      if (!(po->t_resume > po->t_off))
        throw std::invalid_argument("power-off window must have positive duration");
      windows.push_back({po->t_off, po->t_resume});
    } else if (const auto* st = std::get_if<StoreWindowEvent>(&e)) {
      if (!(st->duration > 0.0))
        throw std::invalid_argument("store window duration must be positive");
      windows.push_back({st->t0, st->t0 + st->duration});
    } else if (const auto* rc = std::get_if<RecoveryWindowEvent>(&e)) {
      if (!(rc->duration > 0.0))
        throw std::invalid_argument("recovery window duration must be positive");
      windows.push_back({rc->t1, rc->t1 + rc->duration});
      recovery_end = rc->t1 + rc->duration;
    } else if (const auto* fd = std::get_if<FluxDecayEvent>(&e)) {
      if (!(fd->fraction >= 0.0 && fd->fraction <= 1.0))
        throw std::invalid_argument("decay fraction must lie in [0, 1]");
      if (!(std::abs(fd->epsilon) > 0.0))
        throw std::invalid_argument("decay epsilon must be nonzero");
    } else if (const auto* ra = std::get_if<ResumeAtEvent>(&e)) {
      if (!recovery_end || std::abs(*recovery_end - ra->t) > 1e-9)
        throw std::invalid_argument("resume marker must coincide with the recovery end");
    }
  }
  std::sort(windows.begin(), windows.end(),
            [](const Window& l, const Window& r) { return l.begin < r.begin; });
  for (std::size_t k = 1; k < windows.size(); ++k)
    if (windows[k].begin < windows[k - 1].end - 1e-12)
      throw std::invalid_argument("script windows overlap");
}

std::vector<std::uint8_t> flux_decay_selection(std::size_t cells, double fraction,
                                               std::uint64_t seed) {
  std::vector<std::uint8_t> selected(cells, 0);
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < cells; ++k) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    selected[k] = u < fraction ? 1 : 0;
  }
  return selected;
}

namespace {

struct PhasePlan {
  struct Point {
    enum Kind { SwitchOff, PowerDown, PowerUp, StoreBegin, StoreEnd, RecoveryBegin,
                RecoveryEnd, Decay, Parasitic, Resume } kind;
    double t;
    FluxDecayEvent decay{};
    double conductance = 0.0;
    double recovery_duration = 0.0;
  };
  std::vector<Point> points;
};

PhasePlan compile_script(const ExperimentScript& script, const GridState& state,
                         double t_end) {
  script.validate();
  PhasePlan plan;
  const bool sign_dyn = state.kind != DynamicsKind::StandardCNN;
  for (const auto& e : script.events) {
    if (event_time(e) < 0.0 || event_time(e) > t_end)
      throw std::invalid_argument("script event time outside [0, t_end]");
    if (const auto* so = std::get_if<SwitchOffEvent>(&e)) {
      if (state.kind != DynamicsKind::ModifiedCNN)
        throw std::invalid_argument("switch-off events require the modified CNN");
      plan.points.push_back({PhasePlan::Point::SwitchOff, so->t, {}, 0.0, 0.0});
    } else if (const auto* po = std::get_if<PowerOffEvent>(&e)) {
      if (!sign_dyn)
        throw std::invalid_argument("power events require sign-output dynamics");
      if (po->t_resume > t_end)
        throw std::invalid_argument("script event time outside [0, t_end]");
      plan.points.push_back({PhasePlan::Point::PowerDown, po->t_off, {}, 0.0, 0.0});
      plan.points.push_back({PhasePlan::Point::PowerUp, po->t_resume, {}, 0.0, 0.0});
    } else if (const auto* st = std::get_if<StoreWindowEvent>(&e)) {
      if (state.kind != DynamicsKind::ModifiedCNN)
        throw std::invalid_argument("store windows require the modified CNN storage cell");
      if (st->t0 + st->duration > t_end)
        throw std::invalid_argument("store window extends past t_end");
      plan.points.push_back({PhasePlan::Point::StoreBegin, st->t0, {}, 0.0, 0.0});
      plan.points.push_back({PhasePlan::Point::StoreEnd, st->t0 + st->duration, {}, 0.0, 0.0});
    } else if (const auto* rc = std::get_if<RecoveryWindowEvent>(&e)) {
      if (state.kind != DynamicsKind::ModifiedCNN)
        throw std::invalid_argument("recovery windows require the modified CNN storage cell");
      if (rc->t1 + rc->duration > t_end)
        throw std::invalid_argument("recovery window extends past t_end");
      PhasePlan::Point p{PhasePlan::Point::RecoveryBegin, rc->t1, {}, 0.0, rc->duration};
      plan.points.push_back(p);
      plan.points.push_back({PhasePlan::Point::RecoveryEnd, rc->t1 + rc->duration, {}, 0.0, 0.0});
    } else if (const auto* fd = std::get_if<FluxDecayEvent>(&e)) {
      plan.points.push_back({PhasePlan::Point::Decay, fd->t, *fd, 0.0, 0.0});
    } else if (const auto* sp = std::get_if<SetParasiticEvent>(&e)) {
      if (state.kind != DynamicsKind::MemristorCNN)
        throw std::invalid_argument("parasitic conductance applies to the memristor CNN");
      plan.points.push_back({PhasePlan::Point::Parasitic, sp->t, {}, sp->conductance, 0.0});
    } else if (const auto* ra = std::get_if<ResumeAtEvent>(&e)) {
      plan.points.push_back({PhasePlan::Point::Resume, ra->t, {}, 0.0, 0.0});
    }
  }
  std::stable_sort(plan.points.begin(), plan.points.end(),
                   [](const auto& l, const auto& r) { return l.t < r.t; });
  return plan;
}

}  // namespace

RunRecord run(GridState state, const ExperimentScript& script, double t_end, double dt,
              const RunOptions& options) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
  if ((state.kind == DynamicsKind::MemristorCNN || state.kind == DynamicsKind::WaveCNN) &&
      !state.profile)
    throw std::invalid_argument("missing memductance profile");

  PhasePlan plan = compile_script(script, state, t_end);

  std::vector<double> snaps = options.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  for (double ts : snaps)
    if (ts < 0.0 || ts > t_end)
      throw std::invalid_argument("snapshot time outside [0, t_end]");

  // The storage memristor of the suspend/resume circuit.
  const bool needs_storage = std::any_of(
      script.events.begin(), script.events.end(), [](const ScriptEvent& e) {
        return std::holds_alternative<StoreWindowEvent>(e) ||
               std::holds_alternative<RecoveryWindowEvent>(e) ||
               std::holds_alternative<FluxDecayEvent>(e);
      });
  if (needs_storage && state.flux.empty()) state.flux.assign(state.cells(), 0.0);

  RunRecord rec;
  rec.snapshot_times = snaps;

  Workspace ws;
  ws.init(state);

  const long n_steps = std::lround(t_end / dt);
  std::size_t next_point = 0;
  std::size_t next_snap = 0;
  bool storing = false;
  bool recovering = false;

  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    state.t = t;

    while (next_point < plan.points.size() && reached(t, plan.points[next_point].t)) {
      const auto& p = plan.points[next_point++];
      switch (p.kind) {
        case PhasePlan::Point::SwitchOff:
          state.coupling_severed = true;
          break;
        case PhasePlan::Point::PowerDown:
          state.power = PowerState::Off;
          std::fill(state.v.begin(), state.v.end(), 0.0);
          break;
        case PhasePlan::Point::PowerUp:
          state.power = PowerState::On;
          break;
        case PhasePlan::Point::StoreBegin:
          storing = true;
          break;
        case PhasePlan::Point::StoreEnd:
          storing = false;
          break;
        case PhasePlan::Point::RecoveryBegin: {
          recovering = true;
          rec.has_recovery = true;
          rec.flux_at_recovery_start = state.flux;
          double min_mag = std::numeric_limits<double>::infinity();
          for (double f : state.flux)
            if (f != 0.0) min_mag = std::min(min_mag, std::abs(f));
          if (p.recovery_duration >= min_mag)
            rec.warnings.push_back(
                "recovery window is not shorter than the smallest stored |flux|; "
                "the recovered sign of such cells would flip if the source kept "
                "charging the storage memristor");
          break;
        }
        case PhasePlan::Point::RecoveryEnd:
          recovering = false;
          rec.v_at_recovery_end = state.v;
          rec.recovered_output = output_image(state);
          break;
        case PhasePlan::Point::Decay: {
          const auto selected =
              flux_decay_selection(state.cells(), p.decay.fraction, p.decay.seed);
          const double eps =
              p.decay.mode == DecaySign::Preserve ? p.decay.epsilon : -p.decay.epsilon;
          for (std::size_t c = 0; c < state.cells(); ++c)
            if (selected[c]) state.flux[c] = eps * sign3(state.flux[c]);
          break;
        }
        case PhasePlan::Point::Parasitic:
          state.parasitic = p.conductance;
          break;
        case PhasePlan::Point::Resume:
          break;
      }
    }

    while (next_snap < snaps.size() && reached(t, snaps[next_snap])) {
      rec.snapshots.push_back(output_image(state));
      if (state.profile) rec.snapshot_gate_masks.push_back(gate_mask(state));
      ++next_snap;
    }

    if (k >= n_steps) break;

    if (state.power == PowerState::Off) {
      state.t = t + dt;  // clamped at zero state; flux retained
    } else if (recovering) {
      step_recovery(state, dt);
    } else {
      step_cells(state, dt, ws, storing);
    }
  }

  rec.final_output = output_image(state);
  if (state.profile) rec.final_gate_mask = gate_mask(state);
  rec.final_state = std::move(state);
  return rec;
}

}  // namespace mcnn
