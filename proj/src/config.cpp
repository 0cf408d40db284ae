#include "mcnn/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mcnn/csv.hpp"

namespace mcnn {

DynamicsKind dynamics_from_string(std::string_view text) {
  if (text == "standard") return DynamicsKind::StandardCNN;
  if (text == "modified") return DynamicsKind::ModifiedCNN;
  if (text == "memristor") return DynamicsKind::MemristorCNN;
  if (text == "wave") return DynamicsKind::WaveCNN;
  throw std::invalid_argument("unknown dynamics '" + std::string(text) + "'");
}

namespace {

struct Parser {
  int line_no = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + what);
  }

  double number(const std::string& text) const {
    try {
      std::size_t pos = 0;
      const double v = std::stod(text, &pos);
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos != text.size()) fail("trailing characters after number '" + text + "'");
      return v;
    } catch (const std::invalid_argument&) {
      fail("expected a number, got '" + text + "'");
    } catch (const std::out_of_range&) {
      fail("number out of range '" + text + "'");
    }
  }

  std::vector<double> numbers(const std::string& text, std::size_t expect = 0) const {
    std::istringstream in(text);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
      if (!tok.empty() && tok.back() == ',') tok.pop_back();
      if (tok.empty()) continue;
      out.push_back(number(tok));
    }
    if (expect && out.size() != expect)
      fail("expected " + std::to_string(expect) + " numbers, got " +
           std::to_string(out.size()));
    return out;
  }

  std::uint64_t unsigned_number(const std::string& text) const {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size())
      fail("expected an unsigned integer, got '" + text + "'");
    return v;
  }
};

std::string trim(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.erase(s.begin());
  while (!s.empty() && is_space(s.back())) s.pop_back();
  return s;
}

struct ProfileDraft {
  std::optional<std::string> kind;
  std::optional<double> lo, hi, on;
  std::optional<bool> lo_open, hi_open;
  std::optional<double> inner, outer;
  std::optional<double> alpha, beta, a, b;
};

MemductanceProfile finish_profile(const ProfileDraft& d, const Parser& p) {
  if (!d.kind) p.fail("[profile] section needs a 'kind'");
  const std::string& kind = *d.kind;
  if (kind == "window")
    return MemductanceProfile::window(d.lo.value_or(-1.0), d.hi.value_or(1.0),
                                      d.on.value_or(1.0), !d.lo_open.value_or(false),
                                      !d.hi_open.value_or(false));
  if (kind == "twin-peak")
    return MemductanceProfile::twin_peak(d.inner.value_or(2.0), d.outer.value_or(10.0));
  if (kind == "ramp-store") return MemductanceProfile::ramp_store();
  if (kind == "wave-band")
    return MemductanceProfile::wave_band(d.alpha.value_or(1.0), d.beta.value_or(1.0),
                                         d.a.value_or(0.5), d.b.value_or(4000.0));
  p.fail("unknown profile kind '" + kind + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  Parser p;
  std::string section = "run";
  ProfileDraft profile;
  bool has_profile_section = false;
  std::optional<std::array<double, 9>> tmpl_a, tmpl_b;
  std::optional<double> tmpl_z;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') p.fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "template" && section != "boundary" &&
          section != "profile" && section != "events")
        p.fail("unknown section [" + section + "]");
      if (section == "profile") has_profile_section = true;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) p.fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) p.fail("empty key");
    if (value.empty()) p.fail("empty value for key '" + key + "'");

    if (section == "run") {
      if (key == "dynamics") {
        try {
          cfg.dynamics = dynamics_from_string(value);
        } catch (const std::invalid_argument& e) {
          p.fail(e.what());
        }
      } else if (key == "template") {
        try {
          cfg.template_name = template_name_from_string(value);
        } catch (const std::invalid_argument& e) {
          p.fail(e.what());
        }
      } else if (key == "image") {
        cfg.image_path = value;
      } else if (key == "dt") {
        cfg.dt = p.number(value);
        if (!(cfg.dt > 0.0)) p.fail("dt must be positive");
      } else if (key == "t_end") {
        cfg.t_end = p.number(value);
        if (*cfg.t_end < 0.0) p.fail("t_end must be nonnegative");
      } else if (key == "snapshots") {
        cfg.snapshot_times = p.numbers(value);
      } else if (key == "seed") {
        cfg.seed = p.unsigned_number(value);
      } else if (key == "out") {
        cfg.out_dir = value;
      } else if (key == "init") {
        try {
          cfg.init = init_rule_from_string(value);
        } catch (const std::invalid_argument& e) {
          p.fail(e.what());
        }
      } else if (key == "parasitic") {
        cfg.parasitic = p.number(value);
        if (cfg.parasitic < 0.0) p.fail("parasitic conductance must be >= 0");
      } else {
        p.fail("unknown key '" + key + "' in section [run]");
      }
    } else if (section == "template") {
      if (key == "a") {
        const auto vals = p.numbers(value, 9);
        tmpl_a.emplace();
        std::copy(vals.begin(), vals.end(), tmpl_a->begin());
      } else if (key == "b") {
        const auto vals = p.numbers(value, 9);
        tmpl_b.emplace();
        std::copy(vals.begin(), vals.end(), tmpl_b->begin());
      } else if (key == "z") {
        tmpl_z = p.number(value);
      } else {
        p.fail("unknown key '" + key + "' in section [template]");
      }
    } else if (section == "boundary") {
      if (key == "v") cfg.boundary_v = p.number(value);
      else if (key == "u") cfg.boundary_u = p.number(value);
      else p.fail("unknown key '" + key + "' in section [boundary]");
    } else if (section == "profile") {
      if (key == "kind") profile.kind = value;
      else if (key == "lo") profile.lo = p.number(value);
      else if (key == "hi") profile.hi = p.number(value);
      else if (key == "on") profile.on = p.number(value);
      else if (key == "lo-open") profile.lo_open = p.number(value) != 0.0;
      else if (key == "hi-open") profile.hi_open = p.number(value) != 0.0;
      else if (key == "inner") profile.inner = p.number(value);
      else if (key == "outer") profile.outer = p.number(value);
      else if (key == "alpha") profile.alpha = p.number(value);
      else if (key == "beta") profile.beta = p.number(value);
      else if (key == "a") profile.a = p.number(value);
      else if (key == "b") profile.b = p.number(value);
      else p.fail("unknown key '" + key + "' in section [profile]");
    } else if (section == "events") {
      if (key == "switch-off") {
        cfg.script.events.push_back(SwitchOffEvent{p.number(value)});
      } else if (key == "power-off") {
        const auto v = p.numbers(value, 2);
        cfg.script.events.push_back(PowerOffEvent{v[0], v[1]});
      } else if (key == "store") {
        const auto v = p.numbers(value, 2);
        cfg.script.events.push_back(StoreWindowEvent{v[0], v[1]});
      } else if (key == "recovery") {
        const auto v = p.numbers(value, 2);
        cfg.script.events.push_back(RecoveryWindowEvent{v[0], v[1]});
      } else if (key == "resume") {
        cfg.script.events.push_back(ResumeAtEvent{p.number(value)});
      } else if (key == "flux-decay") {
        std::istringstream ev(value);
        std::string t_s, frac_s, eps_s, mode_s;
        if (!(ev >> t_s >> frac_s >> eps_s >> mode_s))
          p.fail("flux-decay needs: <t> <fraction> <epsilon> <preserve|flip>");
        DecaySign mode;
        if (mode_s == "preserve") mode = DecaySign::Preserve;
        else if (mode_s == "flip") mode = DecaySign::Flip;
        else p.fail("flux-decay sign mode must be 'preserve' or 'flip'");
        cfg.script.events.push_back(FluxDecayEvent{p.number(t_s), p.number(frac_s),
                                                   p.number(eps_s), mode, cfg.seed});
      } else if (key == "parasitic-at") {
        const auto v = p.numbers(value, 2);
        cfg.script.events.push_back(SetParasiticEvent{v[0], v[1]});
      } else {
        p.fail("unknown key '" + key + "' in section [events]");
      }
    }
  }

  if (tmpl_a || tmpl_b || tmpl_z) {
    if (cfg.template_name)
      throw std::invalid_argument("config: give either a named template or an inline one");
    Template t;
    if (tmpl_a) t.feedback = *tmpl_a;
    if (tmpl_b) t.control = *tmpl_b;
    t.threshold = tmpl_z.value_or(0.0);
    cfg.inline_template = t;
  }
  if (has_profile_section) cfg.profile = finish_profile(profile, p);

  // Decay events pick up the run seed; keep them consistent if seed came later.
  for (auto& e : cfg.script.events)
    if (auto* fd = std::get_if<FluxDecayEvent>(&e)) fd->seed = cfg.seed;

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

GridState grid_from_config(const RunConfig& cfg, const Image& input) {
  Template tmpl;
  InitRule init = InitRule::Zero;
  BoundaryCondition boundary{0.0, 0.0};
  std::optional<MemductanceProfile> profile = cfg.profile;

  if (cfg.template_name) {
    NamedTemplate nt = builtin_template(*cfg.template_name);
    tmpl = nt.tmpl;
    init = nt.init;
    boundary = nt.boundary;
    if (!profile) profile = nt.gate_profile;
  } else if (cfg.inline_template) {
    tmpl = *cfg.inline_template;
  } else {
    throw std::invalid_argument("config names no template");
  }
  if (cfg.init) init = *cfg.init;
  if (cfg.boundary_v) boundary.state_v = *cfg.boundary_v;
  if (cfg.boundary_u) boundary.input_u = *cfg.boundary_u;

  Image initial(input.width, input.height,
                init == InitRule::One ? 1.0 : 0.0);
  if (init == InitRule::FromInput) initial = input;

  const bool memristive = cfg.dynamics == DynamicsKind::MemristorCNN ||
                          cfg.dynamics == DynamicsKind::WaveCNN;
  return make_grid(cfg.dynamics, tmpl, input, initial, boundary,
                   memristive ? profile : std::nullopt, cfg.parasitic);
}

std::vector<std::pair<std::string, std::string>> manifest_entries(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("dynamics", to_string(cfg.dynamics));
  if (cfg.template_name) m.emplace_back("template", to_string(*cfg.template_name));
  if (cfg.inline_template) {
    std::ostringstream a, b;
    for (int k = 0; k < 9; ++k) {
      a << (k ? " " : "") << format_double(cfg.inline_template->feedback[k]);
      b << (k ? " " : "") << format_double(cfg.inline_template->control[k]);
    }
    m.emplace_back("template.a", a.str());
    m.emplace_back("template.b", b.str());
    m.emplace_back("template.z", format_double(cfg.inline_template->threshold));
  }
  if (cfg.init) m.emplace_back("init", to_string(*cfg.init));
  m.emplace_back("image", cfg.image_path);
  if (cfg.boundary_v) m.emplace_back("boundary.v", format_double(*cfg.boundary_v));
  if (cfg.boundary_u) m.emplace_back("boundary.u", format_double(*cfg.boundary_u));
  m.emplace_back("dt", format_double(cfg.dt));
  if (cfg.t_end) m.emplace_back("t_end", format_double(*cfg.t_end));
  if (!cfg.snapshot_times.empty()) {
    std::ostringstream s;
    for (std::size_t k = 0; k < cfg.snapshot_times.size(); ++k)
      s << (k ? " " : "") << format_double(cfg.snapshot_times[k]);
    m.emplace_back("snapshots", s.str());
  }
  m.emplace_back("seed", std::to_string(cfg.seed));
  m.emplace_back("parasitic", format_double(cfg.parasitic));
  m.emplace_back("out", cfg.out_dir);
  if (cfg.profile) {
    const auto& pr = *cfg.profile;
    switch (pr.kind) {
      case ProfileKind::Window:
        m.emplace_back("profile", "window");
        m.emplace_back("profile.lo", format_double(pr.lo));
        m.emplace_back("profile.hi", format_double(pr.hi));
        m.emplace_back("profile.on", format_double(pr.on_value));
        m.emplace_back("profile.lo-open", pr.lo_closed ? "0" : "1");
        m.emplace_back("profile.hi-open", pr.hi_closed ? "0" : "1");
        break;
      case ProfileKind::TwinPeak:
        m.emplace_back("profile", "twin-peak");
        m.emplace_back("profile.inner", format_double(pr.inner));
        m.emplace_back("profile.outer", format_double(pr.outer));
        break;
      case ProfileKind::RampStore:
        m.emplace_back("profile", "ramp-store");
        break;
      case ProfileKind::WaveBand:
        m.emplace_back("profile", "wave-band");
        m.emplace_back("profile.alpha", format_double(pr.alpha));
        m.emplace_back("profile.beta", format_double(pr.beta));
        m.emplace_back("profile.a", format_double(pr.band_a));
        m.emplace_back("profile.b", format_double(pr.band_b));
        break;
      case ProfileKind::ChargeControlled:
        m.emplace_back("profile", "charge-controlled");
        break;
    }
  }
  int ev_index = 0;
  for (const auto& e : cfg.script.events) {
    std::ostringstream key, val;
    key << "event." << ev_index++;
    if (const auto* so = std::get_if<SwitchOffEvent>(&e))
      val << "switch-off " << format_double(so->t);
    else if (const auto* po = std::get_if<PowerOffEvent>(&e))
      val << "power-off " << format_double(po->t_off) << ' ' << format_double(po->t_resume);
    else if (const auto* st = std::get_if<StoreWindowEvent>(&e))
      val << "store " << format_double(st->t0) << ' ' << format_double(st->duration);
    else if (const auto* rc = std::get_if<RecoveryWindowEvent>(&e))
      val << "recovery " << format_double(rc->t1) << ' ' << format_double(rc->duration);
    else if (const auto* ra = std::get_if<ResumeAtEvent>(&e))
      val << "resume " << format_double(ra->t);
    else if (const auto* fd = std::get_if<FluxDecayEvent>(&e))
      val << "flux-decay " << format_double(fd->t) << ' ' << format_double(fd->fraction)
          << ' ' << format_double(fd->epsilon) << ' '
          << (fd->mode == DecaySign::Preserve ? "preserve" : "flip");
    else if (const auto* sp = std::get_if<SetParasiticEvent>(&e))
      val << "parasitic-at " << format_double(sp->t) << ' '
          << format_double(sp->conductance);
    m.emplace_back(key.str(), val.str());
  }
  return m;
}

}  // namespace mcnn
