#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcnn/device.hpp"
#include "mcnn/image.hpp"
#include "mcnn/script.hpp"

namespace mcnn {

enum class DynamicsKind { StandardCNN, ModifiedCNN, MemristorCNN, WaveCNN };

const char* to_string(DynamicsKind k);

// 19-parameter template {A, B, z}, neighborhood radius 1. Offsets (dk, dl)
// range over {-1, 0, 1} x {-1, 0, 1}, row-major, dk down and dl right.
// In sign-output dynamics the center gain a(0,0) is the nonlinear resistor
// slope applied to the cell's own state, never to its own sign.
struct Template {
  std::array<double, 9> feedback{};  // A
  std::array<double, 9> control{};   // B
  double threshold = 0.0;            // z

  double a(int dk, int dl) const { return feedback[(dk + 1) * 3 + (dl + 1)]; }
  double& a(int dk, int dl) { return feedback[(dk + 1) * 3 + (dl + 1)]; }
  double b(int dk, int dl) const { return control[(dk + 1) * 3 + (dl + 1)]; }
  double& b(int dk, int dl) { return control[(dk + 1) * 3 + (dl + 1)]; }
  double center_gain() const { return a(0, 0); }

  static Template from_rows(const std::array<double, 9>& a_rows,
                            const std::array<double, 9>& b_rows, double z);
};

// Fixed state/input values of the one-cell virtual frame around the lattice.
struct BoundaryCondition {
  double state_v = 0.0;
  double input_u = 0.0;
};

enum class PowerState { On, Off };

struct GridState {
  DynamicsKind kind = DynamicsKind::ModifiedCNN;
  int rows = 0;  // M
  int cols = 0;  // N
  std::vector<double> v;           // per-cell state
  std::vector<double> flux;        // memristor flux; also the storage flux of
                                   // the suspend/resume circuit on a modified CNN
  std::vector<double> inductor_i;  // per-cell inductor current (WaveCNN)
  Image input;                     // u
  Template tmpl;
  BoundaryCondition boundary;
  std::optional<MemductanceProfile> profile;  // MemristorCNN / WaveCNN
  double parasitic = 0.0;                     // G, MemristorCNN
  PowerState power = PowerState::On;
  bool coupling_severed = false;  // switch S open (ModifiedCNN)
  double t = 0.0;

  std::size_t cells() const { return static_cast<std::size_t>(rows) * cols; }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * cols + j; }
};

// Assemble a grid; validates shapes and that memristive kinds carry a profile
// (WaveCNN additionally requires a WaveBand profile).
GridState make_grid(DynamicsKind kind, const Template& tmpl, const Image& input,
                    const Image& initial_state, const BoundaryCondition& boundary,
                    std::optional<MemductanceProfile> profile = std::nullopt,
                    double parasitic = 0.0);

// Cell output: saturation f(v) for the standard CNN, sgn(v) otherwise.
double cell_output(const GridState& state, int i, int j);
Image output_image(const GridState& state);

// Per-cell gate mask W(phi) != 0 (memristive kinds only).
std::vector<std::uint8_t> gate_mask(const GridState& state);

// Template sum at cell (i, j) from the current states: feedback terms over the
// neighborhood (center dropped unless include_center_feedback), control terms,
// plus the threshold. The boundary frame supplies out-of-range neighbors.
double neighborhood_sum(const GridState& state, int i, int j,
                        bool include_center_feedback);

// One synchronous explicit Euler step; every derivative reads the time-t
// snapshot (Jacobi). The step_* forms require the matching dynamics kind.
void step(GridState& state, double dt);
void step_standard(GridState& state, double dt);
void step_modified(GridState& state, double dt);
void step_memristor(GridState& state, double dt);
void step_wave(GridState& state, double dt);

struct RunOptions {
  std::vector<double> snapshot_times;
};

struct RunRecord {
  Image final_output;
  std::vector<std::uint8_t> final_gate_mask;
  std::vector<double> snapshot_times;
  std::vector<Image> snapshots;
  std::vector<std::vector<std::uint8_t>> snapshot_gate_masks;

  bool has_recovery = false;
  std::vector<double> flux_at_recovery_start;  // phi(T), after any decay event
  std::vector<double> v_at_recovery_end;
  Image recovered_output;

  std::vector<std::string> warnings;
  GridState final_state;
};

// Step the grid to t_end, applying each scripted event at the first step
// boundary >= its time and recording output snapshots the same way.
RunRecord run(GridState state, const ExperimentScript& script, double t_end,
              double dt, const RunOptions& options = {});

// Deterministic cell selection used by flux-decay events (row-major Bernoulli
// draws from a seeded mt19937_64; independent of the platform's distribution
// implementations).
std::vector<std::uint8_t> flux_decay_selection(std::size_t cells, double fraction,
                                               std::uint64_t seed);

// Lattice worker-thread cap from MCNN_THREADS (0 or unset = automatic).
int lattice_thread_cap();

}  // namespace mcnn
