// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with the measured values and its runtime.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "helpers.hpp"
#include "mcnn/cell.hpp"
#include "mcnn/chaos.hpp"
#include "mcnn/csv.hpp"
#include "mcnn/image_io.hpp"
#include "mcnn/protocols.hpp"

using namespace mcnn;
using mcnn::testing::flood_fill_oracle;
using mcnn::testing::full_ramp_grid;
using mcnn::testing::ramp_grid;
using mcnn::testing::ring_image;

namespace fs = std::filesystem;

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int criterion, const char* label, bool ok, const std::string& detail,
            double seconds) {
  std::printf("criterion %2d [%s]: %s  (%s; %.2f s)\n", criterion,
              label, ok ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
}

int mismatch_count(const Image& a, const Image& b) {
  int n = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a.values[k] != b.values[k]) ++n;
  return n;
}

}  // namespace

TEST_CASE("criterion 1: equilibrium tables") {
  Stopwatch sw;
  bool ok = true;
  const auto expect = [&](double a, double bias, std::vector<double> roots) {
    const auto eq = driving_point_equilibria(DrivingPoint{a, bias});
    if (eq.size() != roots.size()) {
      ok = false;
      return;
    }
    for (std::size_t k = 0; k < roots.size(); ++k)
      ok = ok && std::abs(eq[k].v - roots[k]) <= 1e-12;
  };
  expect(2.0, 0.0, {-2.0, 0.0, 2.0});
  expect(3.0, 0.5, {-2.5, -0.25, 3.5});
  expect(3.0, -0.5, {-3.5, 0.25, 2.5});
  expect(1.15, 0.5, {1.65});
  expect(1.15, -0.5, {-1.65});
  const double t = sw.seconds();
  report(1, "equilibria", ok && t < 1.0, "five driving-point tables to 1e-12", t);
  CHECK(ok);
  CHECK(t < 1.0);
}

TEST_CASE("criterion 2: pinched hysteresis") {
  Stopwatch sw;
  const double omega = 0.2, dt = 1e-3, t_end = 63.0;
  const auto profile = MemductanceProfile::window(0.5, 7.0, 1.0, false, false);
  const auto series = hysteresis_trace(profile, omega, t_end, dt);

  bool pinched = true;
  for (const auto& s : series)
    if (std::abs(s.v) < 1e-6 && std::abs(s.current) >= 1e-6) pinched = false;

  double t_on = -1.0;
  for (const auto& s : series)
    if (s.conductance != 0.0) {
      t_on = s.t;
      break;
    }
  const double expected_on = std::acos(0.9) / omega;
  const bool on_time_ok = std::abs(t_on - expected_on) <= 2.0 * dt;

  // analytic crossing times of 5 (1 - cos 0.2 t) against 0.5 and 7
  std::vector<double> crossings;
  const double period = 2.0 * M_PI / omega;
  for (int m = 0; m * period <= t_end + period; ++m) {
    for (double level : {0.9, -0.4}) {  // cos values at flux = 0.5 and 7
      const double base = std::acos(level) / omega;
      crossings.push_back(m * period + base);
      crossings.push_back(m * period + (period - base));
    }
  }
  bool window_ok = true;
  for (const auto& s : series) {
    double dist = 1e9;
    for (double c : crossings) dist = std::min(dist, std::abs(s.t - c));
    if (dist <= 2.0 * dt) continue;
    const double flux_exact = 5.0 * (1.0 - std::cos(omega * s.t));
    const bool on_exact = flux_exact > 0.5 && flux_exact < 7.0;
    if ((s.conductance != 0.0) != on_exact) window_ok = false;
  }

  const double t = sw.seconds();
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "first switch-on %.4f vs %.4f, pinched=%d, window=%d", t_on, expected_on,
                pinched ? 1 : 0, window_ok ? 1 : 0);
  report(2, "hysteresis", pinched && on_time_ok && window_ok && t < 5.0, detail, t);
  CHECK(pinched);
  CHECK(on_time_ok);
  CHECK(window_ok);
  CHECK(t < 5.0);
}

TEST_CASE("criterion 3: memristor gate timing") {
  Stopwatch sw;
  const double dt = 0.01;

  GridState dil = grid_for_template(builtin_template(TemplateName::Dilation),
                                    DynamicsKind::MemristorCNN, Image(16, 16, -1.0));
  double dil_off = -1.0;
  for (int k = 0; k < 500; ++k) {
    const bool was = eval_memductance(*dil.profile, dil.flux[dil.idx(8, 8)]) != 0.0;
    step_memristor(dil, dt);
    const bool now = eval_memductance(*dil.profile, dil.flux[dil.idx(8, 8)]) != 0.0;
    if (was && !now && dil_off < 0.0) dil_off = (k + 1) * dt;
  }

  GridState ero = grid_for_template(builtin_template(TemplateName::Erosion),
                                    DynamicsKind::MemristorCNN, Image(16, 16, 1.0));
  double ero_on = -1.0, ero_off = -1.0;
  for (int k = 0; k < 2500; ++k) {
    const bool was = eval_memductance(*ero.profile, ero.flux[ero.idx(8, 8)]) != 0.0;
    step_memristor(ero, dt);
    const bool now = eval_memductance(*ero.profile, ero.flux[ero.idx(8, 8)]) != 0.0;
    if (!was && now && ero_on < 0.0) ero_on = (k + 1) * dt;
    if (was && !now) ero_off = (k + 1) * dt;
  }

  const bool ok = std::abs(dil_off - 2.0) <= 2.0 * dt &&
                  std::abs(ero_on - 4.0) <= 2.0 * dt &&
                  std::abs(ero_off - 20.0) <= 2.0 * dt;
  const double t = sw.seconds();
  char detail[160];
  std::snprintf(detail, sizeof detail, "dilation off %.2f; erosion window [%.2f, %.2f]",
                dil_off, ero_on, ero_off);
  report(3, "gate timing", ok && t < 5.0, detail, t);
  CHECK(ok);
  CHECK(t < 5.0);
}

TEST_CASE("criterion 4: image holding") {
  Stopwatch sw;
  const Image gradient = encode_image(full_ramp_grid(64, 64));
  const auto edge = image_holding_run(TemplateName::GrayScaleEdge, gradient, 80.0, 150.0);

  const Image ring = ring_image(64, 16, 47);
  const auto shadow = image_holding_run(TemplateName::ShadowProjection, ring, 40.0, 50.0);

  const double t = sw.seconds();
  char detail[120];
  std::snprintf(detail, sizeof detail, "edge held=%d, shadow held=%d", edge.held ? 1 : 0,
                shadow.held ? 1 : 0);
  report(4, "image holding", edge.held && shadow.held && t < 30.0, detail, t);
  CHECK(edge.held);
  CHECK(shadow.held);
  CHECK(t < 30.0);
}

TEST_CASE("criterion 5: hole filling equals the flood-fill oracle") {
  Stopwatch sw;
  const Image ring = ring_image(32, 8, 23);
  GridState grid = grid_for_template(builtin_template(TemplateName::HoleFilling),
                                     DynamicsKind::ModifiedCNN, ring);
  const RunRecord rec = run(std::move(grid), {}, 150.0, 0.01);
  const Image oracle = flood_fill_oracle(ring);
  const bool ok = rec.final_output == oracle;
  const double t = sw.seconds();
  char detail[120];
  std::snprintf(detail, sizeof detail, "mismatched cells: %d",
                mismatch_count(rec.final_output, oracle));
  report(5, "hole filling", ok && t < 20.0, detail, t);
  CHECK(ok);
  CHECK(t < 20.0);
}

namespace {

bool sign_law_holds(const SuspendResumeResult& r) {
  for (std::size_t k = 0; k < r.flux_at_recovery.size(); ++k) {
    const int want = r.flux_at_recovery[k] >= 0.0 ? 1 : -1;
    if (sign_output(r.v_at_recovery_end[k]) != want) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("criterion 6: suspend/resume equivalence") {
  Stopwatch sw;
  const Image ring = ring_image(32, 8, 23);
  const auto hole =
      suspend_resume_run(TemplateName::HoleFilling, ring, 60.0, 10.0, 120.0, 10.0, 340.0);
  const bool hole_ok = hole.equal && sign_law_holds(hole);

  const Image gradient = encode_image(ramp_grid(64, 64, 16));
  const auto half =
      suspend_resume_run(TemplateName::HalfToning, gradient, 0.35, 0.25, 1.0, 0.1, 5.0);
  const bool half_ok = half.equal && sign_law_holds(half);

  const double t = sw.seconds();
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "hole: equal=%d law=%d (%d diff); half-toning: equal=%d law=%d (%d diff)",
                hole.equal ? 1 : 0, sign_law_holds(hole) ? 1 : 0,
                mismatch_count(hole.y_final, hole.y_uninterrupted), half.equal ? 1 : 0,
                sign_law_holds(half) ? 1 : 0,
                mismatch_count(half.y_final, half.y_uninterrupted));
  report(6, "suspend/resume", hole_ok && half_ok && t < 60.0, detail, t);
  CHECK(hole_ok);
  CHECK(half_ok);
  CHECK(t < 60.0);
}

TEST_CASE("criterion 7: flux decay") {
  Stopwatch sw;
  const Image ring = ring_image(32, 8, 23);
  const auto preserved =
      flux_decay_run(TemplateName::HoleFilling, ring, 60.0, 10.0, 120.0, 10.0, 340.0,
                     0.5, 0.001, DecaySign::Preserve, 12345, 0.01);

  const auto flipped_few =
      flux_decay_run(TemplateName::HoleFilling, ring, 60.0, 10.0, 120.0, 10.0, 340.0,
                     0.01, 0.001, DecaySign::Flip, 12345, 0.01);

  const Image gradient = encode_image(ramp_grid(64, 64, 16));
  const auto flipped_all =
      flux_decay_run(TemplateName::HalfToning, gradient, 0.35, 0.25, 1.0, 0.1, 5.0, 1.0,
                     0.001, DecaySign::Flip, 12345, 0.01);

  const double t = sw.seconds();
  char detail[240];
  std::snprintf(detail, sizeof detail,
                "hole 50%% preserve match=%d; hole 1%% flip match=%d (mismatch allowed); "
                "half-toning 100%% flip match=%d (%d diff cells)",
                preserved.match ? 1 : 0, flipped_few.match ? 1 : 0,
                flipped_all.match ? 1 : 0,
                mismatch_count(flipped_all.y_final, flipped_all.y_uninterrupted));
  report(7, "flux decay", preserved.match && flipped_all.match && t < 60.0, detail, t);
  CHECK(preserved.match);
  CHECK(t < 60.0);
  // Expected to fail: mid-gray cells dither into a multistable checkerboard
  // family with hysteresis (center gain 1.15 against neighbor coupling up to
  // 0.68), so a sign-inverted resume settles in a different dither phase.
  // The assertion is kept strict rather than weakened.
  CHECK(flipped_all.match);
}

TEST_CASE("criterion 8: parasitic invariance") {
  Stopwatch sw;
  const Image ring = ring_image(64, 16, 47);
  const auto dil = parasitic_comparison(TemplateName::Dilation, ring, 0.01, 20.0);

  PixelGrid grad = full_ramp_grid(64, 64);
  for (int i = 24; i < 40; ++i)
    for (int j = 24; j < 40; ++j) grad.at(i, j) = 0;  // a black block for structure
  const auto sharp =
      parasitic_comparison(TemplateName::Sharpening, encode_image(grad), 0.01, 20.0);

  const auto zero = parasitic_comparison(TemplateName::Dilation, ring, 0.0, 20.0);

  const double t = sw.seconds();
  char detail[140];
  std::snprintf(detail, sizeof detail, "dilation=%d sharpening=%d g=0 control=%d",
                dil.identical ? 1 : 0, sharp.identical ? 1 : 0, zero.identical ? 1 : 0);
  report(8, "parasitic", dil.identical && sharp.identical && zero.identical && t < 30.0,
         detail, t);
  CHECK(dil.identical);
  CHECK(sharp.identical);
  CHECK(zero.identical);
  CHECK(t < 30.0);
}

TEST_CASE("criterion 9: chaos properties") {
  Stopwatch sw;
  const double dt = 1e-3;
  const auto ref = simulate_reference(3000.0, dt);
  const auto mem = simulate_memristor_coupled(3000.0, dt);

  double bound = 0.0;
  for (const auto& s : ref.samples) bound = std::max({bound, std::abs(s.v1), std::abs(s.v2)});
  for (const auto& s : mem.samples) bound = std::max({bound, std::abs(s.v1), std::abs(s.v2)});
  const bool bounded = bound <= 10.0;

  bool power_ok = true;
  for (const auto& p : power_series(mem))
    if (p.p_a > 0.0 || p.p_b < 0.0) power_ok = false;

  int toggles_a = 0, toggles_b = 0;
  std::vector<double> gaps_a;
  double prev_a = coupling_memductance_a(0.0), prev_b = coupling_memductance_b(0.0);
  double last_toggle_a = 0.0;
  for (const auto& s : mem.samples) {
    if (s.t > 1000.0) break;
    const double wa = coupling_memductance_a(s.flux_a);
    const double wb = coupling_memductance_b(s.flux_b);
    if (wa != prev_a) {
      ++toggles_a;
      gaps_a.push_back(s.t - last_toggle_a);
      last_toggle_a = s.t;
    }
    if (wb != prev_b) ++toggles_b;
    prev_a = wa;
    prev_b = wb;
  }
  bool gaps_vary = false;
  for (std::size_t k = 1; k < gaps_a.size(); ++k)
    if (std::abs(gaps_a[k] - gaps_a[0]) > dt) gaps_vary = true;

  // pairwise-distinct section points at 1e-3 resolution (greedy max-norm)
  const auto section = poincare_section(mem, memristor_drive());
  std::vector<std::array<double, 2>> distinct;
  for (const auto& p : section) {
    bool close = false;
    for (const auto& q : distinct)
      if (std::abs(p[0] - q[0]) < 1e-3 && std::abs(p[1] - q[1]) < 1e-3) {
        close = true;
        break;
      }
    if (!close) distinct.push_back(p);
  }

  const bool ok = bounded && power_ok && toggles_a >= 10 && toggles_b >= 10 &&
                  gaps_vary && distinct.size() >= 100;
  const double t = sw.seconds();
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "bound %.2f, toggles A/B %d/%d, varying gaps=%d, distinct section "
                "points %zu, power signs=%d",
                bound, toggles_a, toggles_b, gaps_vary ? 1 : 0, distinct.size(),
                power_ok ? 1 : 0);
  report(9, "chaos", ok && t < 60.0, detail, t);
  CHECK(ok);
  CHECK(t < 60.0);
}

TEST_CASE("criterion 10: wave nontriviality and harmonic-core energy") {
  Stopwatch sw;
  const Image ring = ring_image(64, 16, 47);
  const auto wave =
      wave_run(ring, MemductanceProfile::wave_band(1.0, 1.0, 0.5, 4000.0), 2000.0, {});
  const bool changed = wave.y_final != wave.y_initial;
  double lo = 2.0, hi = -2.0;
  for (double y : wave.y_final.values) {
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  const bool nonconstant = lo != hi;

  // Decoupled harmonic-core energy drift per period. The only quantity the
  // a00 = 0 core conserves is the balance v^2 + iL^2 + dissipated power; the
  // a00 = 1 core is the true harmonic oscillator. Both are measured here.
  const auto balance_residual = [](double dt) {
    Template t;
    GridState s =
        make_grid(DynamicsKind::WaveCNN, t, Image(1, 1, 0.0), Image(1, 1, 1.0), {},
                  MemductanceProfile::wave_band(1.0, 1.0, 0.5, 4000.0));
    const double period = 4.0 * M_PI / std::sqrt(3.0);
    double dissipated = 0.0;
    for (long k = 0; k < std::lround(period / dt); ++k) {
      dissipated += 2.0 * dt * s.v[0] * s.v[0];
      step_wave(s, dt);
    }
    return std::abs(s.v[0] * s.v[0] + s.inductor_i[0] * s.inductor_i[0] + dissipated - 1.0);
  };
  const auto harmonic_drift = [](double dt) {
    Template t;
    t.a(0, 0) = 1.0;  // cancels the -v term inside |v| <= 1
    GridState s =
        make_grid(DynamicsKind::WaveCNN, t, Image(1, 1, 0.0), Image(1, 1, 0.5), {},
                  MemductanceProfile::wave_band(1.0, 1.0, 0.5, 4000.0));
    const double e0 = 0.25;
    for (long k = 0; k < std::lround(2.0 * M_PI / dt); ++k) step_wave(s, dt);
    return std::abs(s.v[0] * s.v[0] + s.inductor_i[0] * s.inductor_i[0] - e0) / e0;
  };
  const double drift = balance_residual(0.01);
  const bool energy_ok = drift < 0.01;

  const double t = sw.seconds();
  char detail[240];
  std::snprintf(detail, sizeof detail,
                "changed=%d nonconstant=%d; energy drift/period at dt=0.01: balance "
                "%.3f%% (dt=1e-3: %.3f%%), harmonic %.2f%% (dt=1e-3: %.2f%%)",
                changed ? 1 : 0, nonconstant ? 1 : 0, 100.0 * drift,
                100.0 * balance_residual(0.001), 100.0 * harmonic_drift(0.01),
                100.0 * harmonic_drift(0.001));
  report(10, "waves", changed && nonconstant && energy_ok && t < 120.0, detail, t);
  CHECK(changed);
  CHECK(nonconstant);
  CHECK(t < 120.0);
  // Expected to fail: Jacobi forward Euler drifts O(dt) per period with a
  // constant near 1.5 (energy balance) to 6.5 (pure rotation), so the 1%
  // bound only holds near dt = 0.001, as the printed measurements show. The
  // O(dt) law itself is property-tested in the lattice suite.
  CHECK(energy_ok);
}

TEST_CASE("criterion 11: byte-identical runs across thread counts") {
  Stopwatch sw;
#ifndef MCNN_CLI_PATH
  FAIL("CLI path not configured");
#else
  const fs::path work = fs::path("acceptance_tmp");
  fs::remove_all(work);
  fs::create_directories(work);

  const Image ring = ring_image(32, 8, 23);
  write_pgm(decode_output(ring, true), (work / "ring.pgm").string());
  {
    std::ofstream cfg(work / "run.cfg");
    cfg << "template = hole-filling\n"
        << "image = " << (work / "ring.pgm").string() << "\n"
        << "t_end = 150\n"
        << "snapshots = 60 150\n"
        << "out = " << (work / "run_out").string() << "\n";
  }

  // identical config both times; only the worker count changes
  const auto run_cli = [&](const char* threads, const char* keep_as) {
    std::string cmd = std::string("MCNN_THREADS=") + threads + " '" + MCNN_CLI_PATH +
                      "' simulate --config '" + (work / "run.cfg").string() + "'";
    const int rc = std::system(cmd.c_str());
    if (rc == 0) fs::rename(work / "run_out", work / keep_as);
    return rc;
  };
  const int rc1 = run_cli("1", "t1");
  const int rc4 = run_cli("4", "t4");

  bool identical = rc1 == 0 && rc4 == 0;
  int files = 0;
  if (identical) {
    for (const auto& entry : fs::directory_iterator(work / "t1")) {
      ++files;
      const fs::path other = work / "t4" / entry.path().filename();
      if (!fs::exists(other)) {
        identical = false;
        break;
      }
      std::ifstream a(entry.path(), std::ios::binary), b(other, std::ios::binary);
      std::string sa((std::istreambuf_iterator<char>(a)), {});
      std::string sb((std::istreambuf_iterator<char>(b)), {});
      if (sa != sb) identical = false;
    }
    for (const auto& entry : fs::directory_iterator(work / "t4"))
      if (!fs::exists(work / "t1" / entry.path().filename())) identical = false;
  }

  const double t = sw.seconds();
  char detail[120];
  std::snprintf(detail, sizeof detail, "exit codes %d/%d, %d files compared", rc1, rc4,
                files);
  report(11, "determinism", identical && files > 0, detail, t);
  CHECK(identical);
  CHECK(files > 0);
#endif
}
