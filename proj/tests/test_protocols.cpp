#include <doctest.h>

#include <stdexcept>

#include <array>
#include <cmath>

#include "helpers.hpp"
#include "mcnn/cell.hpp"
#include "mcnn/protocols.hpp"

using namespace mcnn;
using mcnn::testing::flood_fill_oracle;
using mcnn::testing::ramp_grid;
using mcnn::testing::ring_image;

namespace {

void check_rows(const Template& t, const std::array<double, 9>& a,
                const std::array<double, 9>& b, double z) {
  for (int k = 0; k < 9; ++k) {
    CHECK(t.feedback[k] == a[k]);
    CHECK(t.control[k] == b[k]);
  }
  CHECK(t.threshold == z);
}

}  // namespace

TEST_CASE("built-in template catalogue matches the published tables") {
  auto nt = builtin_template(TemplateName::HoleFilling);
  check_rows(nt.tmpl, {0, 1, 0, 1, 3, 1, 0, 1, 0}, {0, 0, 0, 0, 4, 0, 0, 0, 0}, -1.0);
  CHECK(nt.init == InitRule::One);
  CHECK(nt.boundary.state_v == 0.0);
  CHECK(nt.gate_profile->kind == ProfileKind::RampStore);

  nt = builtin_template(TemplateName::HalfToning);
  check_rows(nt.tmpl, {-0.07, -0.1, -0.07, -0.1, 1.15, -0.1, -0.07, -0.1, -0.07},
             {0.07, 0.1, 0.07, 0.1, 0.32, 0.1, 0.07, 0.1, 0.07}, 0.0);
  CHECK(nt.init == InitRule::FromInput);

  nt = builtin_template(TemplateName::Dilation);
  check_rows(nt.tmpl, {0, 0, 0, 0, 2, 0, 0, 0, 0}, {0, 1, 0, 1, 1, 1, 0, 1, 0}, 4.5);
  CHECK(nt.boundary.state_v == -1.0);
  CHECK(nt.boundary.input_u == -1.0);
  CHECK(nt.gate_profile->kind == ProfileKind::Window);

  nt = builtin_template(TemplateName::Erosion);
  check_rows(nt.tmpl, {0, 0, 0, 0, 2, 0, 0, 0, 0}, {0, 1, 0, 1, 1, 1, 0, 1, 0}, -4.5);
  CHECK(nt.boundary.state_v == -1.0);
  CHECK(nt.gate_profile->kind == ProfileKind::TwinPeak);

  nt = builtin_template(TemplateName::Smoothing);
  check_rows(nt.tmpl, {0, 1, 0, 1, 2, 1, 0, 1, 0}, {0, 0, 0, 0, 0, 0, 0, 0, 0}, 0.0);
  CHECK(nt.init == InitRule::FromInput);

  nt = builtin_template(TemplateName::Sharpening);
  check_rows(nt.tmpl, {0, 0, 0, 0, 2, 0, 0, 0, 0}, {0, -1, 0, -1, 5, -1, 0, -1, 0}, 0.5);

  nt = builtin_template(TemplateName::GrayScaleEdge);
  check_rows(nt.tmpl, {0, 0, 0, 0, 2, 0, 0, 0, 0}, {-1, -1, -1, -1, 8, -1, -1, -1, -1},
             -0.5);
  CHECK(!nt.gate_profile);

  nt = builtin_template(TemplateName::ShadowProjection);
  check_rows(nt.tmpl, {0, 0, 0, 0, 2, 2, 0, 0, 0}, {0, 0, 0, 0, 2, 0, 0, 0, 0}, 0.0);
  CHECK(nt.init == InitRule::One);

  CHECK(all_template_names().size() == 8);
  CHECK(template_name_from_string("half-toning") == TemplateName::HalfToning);
  CHECK_THROWS_AS(template_name_from_string("sobel"), std::invalid_argument);
}

TEST_CASE("dilation gate: flux ramps at -0.5 and switches off at t = 2") {
  const double dt = 0.01;
  GridState s = grid_for_template(builtin_template(TemplateName::Dilation),
                                  DynamicsKind::MemristorCNN, Image(16, 16, -1.0));
  double t_off = -1.0;
  for (int k = 0; k < 500; ++k) {
    const bool was_on = eval_memductance(*s.profile, s.flux[s.idx(8, 8)]) != 0.0;
    step_memristor(s, dt);
    const bool is_on = eval_memductance(*s.profile, s.flux[s.idx(8, 8)]) != 0.0;
    if (was_on && !is_on && t_off < 0.0) t_off = (k + 1) * dt;
    if (std::abs((k + 1) * dt - 1.0) < 1e-12)
      CHECK(s.flux[s.idx(8, 8)] == doctest::Approx(-0.5));  // phi = -0.5 t
  }
  CHECK(std::abs(t_off - 2.0) <= 2.0 * dt);
}

TEST_CASE("erosion gate: on-window [4, 20] under a twin-peak memductance") {
  const double dt = 0.01;
  GridState s = grid_for_template(builtin_template(TemplateName::Erosion),
                                  DynamicsKind::MemristorCNN, Image(16, 16, 1.0));
  double t_on = -1.0, t_off = -1.0;
  for (int k = 0; k < 2500; ++k) {
    const bool was_on = eval_memductance(*s.profile, s.flux[s.idx(8, 8)]) != 0.0;
    step_memristor(s, dt);
    const bool is_on = eval_memductance(*s.profile, s.flux[s.idx(8, 8)]) != 0.0;
    if (!was_on && is_on && t_on < 0.0) t_on = (k + 1) * dt;
    if (was_on && !is_on) t_off = (k + 1) * dt;
  }
  CHECK(std::abs(t_on - 4.0) <= 2.0 * dt);
  CHECK(std::abs(t_off - 20.0) <= 2.0 * dt);
}

TEST_CASE("image holding on small lattices") {
  const Image ring = ring_image(24, 6, 17);
  auto shadow = image_holding_run(TemplateName::ShadowProjection, ring, 30.0, 40.0);
  CHECK(shadow.held);
  CHECK(is_ternary(shadow.y_after));

  const Image grad = encode_image(mcnn::testing::full_ramp_grid(24, 24));
  auto edge = image_holding_run(TemplateName::GrayScaleEdge, grad, 40.0, 80.0);
  CHECK(edge.held);

  auto dil = image_holding_run(TemplateName::Dilation, ring, 10.0, 20.0);
  CHECK(dil.held);

  auto ero = image_holding_run(TemplateName::Erosion, ring, 30.0, 50.0);
  CHECK(ero.held);

  PixelGrid noisy = mcnn::testing::full_ramp_grid(24, 24);
  for (int k = 0; k < 24; ++k) noisy.at(k, (5 * k + 3) % 24) = k % 2 ? 0 : 255;
  auto smooth = image_holding_run(TemplateName::Smoothing, encode_image(noisy), 40.0, 60.0);
  CHECK(smooth.held);

  CHECK_THROWS_AS(image_holding_run(TemplateName::HoleFilling, ring, 10.0, 20.0),
                  std::invalid_argument);

  // all cells still gray at t_off = 0 signals non-convergence
  CHECK_THROWS_AS(image_holding_run(TemplateName::GrayScaleEdge, grad, 0.0, 10.0),
                  std::runtime_error);
  CHECK_THROWS_AS(image_holding_run(TemplateName::GrayScaleEdge, grad, 10.0, 10.0),
                  std::invalid_argument);
}

TEST_CASE("hole filling converges to the flood-fill oracle") {
  const Image ring = ring_image(16, 4, 11);
  GridState s = grid_for_template(builtin_template(TemplateName::HoleFilling),
                                  DynamicsKind::ModifiedCNN, ring);
  RunRecord rec = run(s, {}, 80.0, 0.01);
  CHECK(rec.final_output == flood_fill_oracle(ring));
}

TEST_CASE("flood-fill oracle sanity") {
  Image img(5, 5, -1.0);
  for (int k = 1; k <= 3; ++k) {
    img.at(1, k) = 1.0;
    img.at(3, k) = 1.0;
    img.at(k, 1) = 1.0;
    img.at(k, 3) = 1.0;
  }
  const Image filled = flood_fill_oracle(img);
  CHECK(filled.at(2, 2) == 1.0);
  CHECK(filled.at(0, 0) == -1.0);
  Image open = img;
  open.at(1, 2) = -1.0;  // break the contour
  CHECK(flood_fill_oracle(open).at(2, 2) == -1.0);
}

TEST_CASE("suspend/resume on a small ring") {
  const Image ring = ring_image(16, 4, 11);
  const auto r = suspend_resume_run(TemplateName::HoleFilling, ring, 30.0, 5.0, 60.0,
                                    4.0, 170.0);
  CHECK(r.equal);
  CHECK(r.warnings.empty());

  // recovery sign law, exact
  REQUIRE(r.flux_at_recovery.size() == ring.size());
  REQUIRE(r.v_at_recovery_end.size() == ring.size());
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const int want = r.flux_at_recovery[k] >= 0.0 ? 1 : -1;
    CHECK(sign_output(r.v_at_recovery_end[k]) == want);
  }

  // store-window flux: converged cells hold y = +-1, so |phi(T)| = T within dt
  for (std::size_t k = 0; k < ring.size(); ++k)
    CHECK(std::abs(std::abs(r.flux_at_recovery[k]) - 5.0) <= 0.01 + 1e-9);

  CHECK_THROWS_AS(suspend_resume_run(TemplateName::Dilation, ring, 30.0, 5.0, 60.0, 4.0,
                                     170.0),
                  std::invalid_argument);
}

TEST_CASE("flux decay on a small ring") {
  const Image ring = ring_image(16, 4, 11);
  const auto preserved =
      flux_decay_run(TemplateName::HoleFilling, ring, 30.0, 5.0, 60.0, 4.0, 170.0, 0.5,
                     0.001, DecaySign::Preserve, 2024, 0.01);
  CHECK(preserved.match);
  CHECK(!preserved.warnings.empty());  // decayed |flux| < recovery duration

  std::size_t n_dec = 0;
  for (auto b : preserved.decayed_cells) n_dec += b;
  CHECK(n_dec > 0);
  CHECK(n_dec < ring.size());
}

TEST_CASE("parasitic conductance leaves the dilation output unchanged") {
  const Image ring = ring_image(32, 8, 23);
  const auto r = parasitic_comparison(TemplateName::Dilation, ring, 0.01, 10.0);
  CHECK(r.identical);
  const auto zero = parasitic_comparison(TemplateName::Dilation, ring, 0.0, 10.0);
  CHECK(zero.identical);
}

TEST_CASE("wave run: decoupled band keeps identical cells identical") {
  const Image ring = ring_image(16, 4, 11);
  const auto r = wave_run(ring, MemductanceProfile::wave_band(0.0, 0.0, 0.5, 4000.0),
                          5.0, {}, 0.01);
  // two interior background cells far from the ring started identically
  const auto& y = r.y_final;
  CHECK(y.at(1, 1) == y.at(1, 2));
  CHECK(y.at(14, 14) == y.at(1, 1));
}

TEST_CASE("wave run: band parameters produce a changing, nonconstant pattern") {
  const Image ring = ring_image(32, 8, 23);
  const auto r = wave_run(ring, MemductanceProfile::wave_band(1.0, 1.0, 0.5, 4000.0),
                          200.0, {}, 0.01);
  CHECK(r.y_final != r.y_initial);
  double lo = 2.0, hi = -2.0;
  for (double y : r.y_final.values) {
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  CHECK(lo != hi);

  Image gray(8, 8, 0.5);
  CHECK_THROWS_AS(wave_run(gray, MemductanceProfile::wave_band(1.0, 1.0, 0.5, 4000.0),
                           1.0, {}, 0.01),
                  std::invalid_argument);
}
