// Copyright 2026 The Gaitsense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gaitsense/config.h"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gaitsense/errors.h"

namespace gaitsense {
namespace {

using nlohmann::json;

// Reads the fields of one JSON object into a struct. Each field access marks
// the key as known; Finish() rejects the rest.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  void operator()(const char* key, double& v) {
    if (const json* x = Find(key)) {
      if (!x->is_number()) Fail(key, "a number");
      v = x->get<double>();
    }
  }
  void operator()(const char* key, int& v) {
    if (const json* x = Find(key)) {
      if (!x->is_number_integer()) Fail(key, "an integer");
      v = x->get<int>();
    }
  }
  void operator()(const char* key, std::uint64_t& v) {
    if (const json* x = Find(key)) {
      if (!x->is_number_unsigned()) Fail(key, "a non-negative integer");
      v = x->get<std::uint64_t>();
    }
  }
  void operator()(const char* key, std::string& v) {
    if (const json* x = Find(key)) {
      if (!x->is_string()) Fail(key, "a string");
      v = x->get<std::string>();
    }
  }
  void operator()(const char* key, std::array<double, 3>& v) {
    if (const json* x = Find(key)) {
      if (!x->is_array() || x->size() != 3) Fail(key, "an array of 3 numbers");
      for (int i = 0; i < 3; ++i) {
        if (!(*x)[i].is_number()) Fail(key, "an array of 3 numbers");
        v[i] = (*x)[i].get<double>();
      }
    }
  }
  template <typename T, typename F>
  void Object(const char* key, T& v, F visit) {
    if (const json* x = Find(key)) {
      Reader sub(*x, path_ + "." + key);
      visit(sub, v);
      sub.Finish();
    }
  }

  const json* Find(const char* key) {
    known_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }
  const std::string& path() const { return path_; }

  void Finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!known_.count(it.key())) {
        throw ConfigError(path_ + ": unknown key '" + it.key() + "'");
      }
    }
  }

 private:
  [[noreturn]] void Fail(const char* key, const char* what) const {
    throw ConfigError(path_ + "." + key + ": expected " + what);
  }

  const json& j_;
  std::string path_;
  std::set<std::string> known_;
};

class Writer {
 public:
  template <typename T>
  void operator()(const char* key, const T& v) {
    j_[key] = v;
  }
  template <typename T, typename F>
  void Object(const char* key, const T& v, F visit) {
    Writer sub;
    visit(sub, v);
    j_[key] = std::move(sub.j_);
  }
  json& j() { return j_; }

 private:
  json j_ = json::object();
};

// One field list per struct serves both directions.
template <typename V, typename T>
void VisitCrawl(V& v, T& p) {
  v("stride_frequency", p.stride_frequency);
  v("step_length", p.step_length);
  v("penetration_speed", p.penetration_speed);
  v("body_height", p.body_height);
  v("max_penetration_force", p.max_penetration_force);
  v("max_penetration_depth", p.max_penetration_depth);
  v("transition_duration", p.transition_duration);
  v("recirculation_duration", p.recirculation_duration);
  v("recirculation_apex", p.recirculation_apex);
  v("hover_height", p.hover_height);
  v("stability_margin_min", p.stability_margin_min);
  v("transition_margin", p.transition_margin);
  v("contact_force", p.contact_force);
}

template <typename V, typename T>
void VisitTrot(V& v, T& p) {
  v("stride_frequency", p.stride_frequency);
  v("duty_factor", p.duty_factor);
  v("step_length", p.step_length);
  v("body_height", p.body_height);
  v("swing_apex", p.swing_apex);
  v("touchdown_speed", p.touchdown_speed);
  v("touchdown_speed_jitter", p.touchdown_speed_jitter);
  v("impact_acceleration", p.impact_acceleration);
  v("impact_acceleration_jitter", p.impact_acceleration_jitter);
  v("arrest_force", p.arrest_force);
  v("max_arrest_time", p.max_arrest_time);
  v("max_depth", p.max_depth);
  v("settle_time", p.settle_time);
  v("load_rise_time", p.load_rise_time);
  v("unload_time", p.unload_time);
  v("bounce_amplitude", p.bounce_amplitude);
  v("bounce_jitter", p.bounce_jitter);
  v("bounce_frequency", p.bounce_frequency);
  v("bounce_decay", p.bounce_decay);
  v("body_oscillation", p.body_oscillation);
}

template <typename V, typename T>
void VisitActuator(V& v, T& a) {
  v("gear_ratio", a.gear_ratio);
  v("torque_noise_std", a.torque_noise_std);
  v("torque_constant_error", a.torque_constant_error);
  v("coulomb_friction", a.coulomb_friction);
  v("compensation_factor", a.compensation_factor);
  v("leg_mass", a.leg_mass);
}

template <typename V, typename T>
void VisitCrust(V& v, T& c) {
  v("coverage", c.coverage);
  v("rupture_force_std", c.rupture_force_std);
  v("drop_std", c.drop_std);
}

template <typename V, typename T>
void VisitAnalysis(V& v, T& a) {
  v("contact_threshold", a.contact.threshold);
  v("contact_debounce_ticks", a.contact.debounce_ticks);
  v("band_low", a.interval.f_lo);
  v("band_high", a.interval.f_hi);
  v("band_max_gap", a.interval.max_gap);
  v("band_min_run", a.interval.min_run);
  v("min_samples", a.n_min);
  v("filter_order", a.rupture.order);
  v("filter_window", a.rupture.window);
  v("prominence", a.rupture.prominence);
  v("history_capacity", a.history_capacity);
  v("drift_std", a.drift_std);
  v("drift_seed", a.drift_seed);
  v("unload_guard", a.unload_guard);
  v("peak_half_width", a.peak_half_width);
  v("peak_min_drop", a.peak_min_drop);
  v("peak_drop_window", a.peak_drop_window);
}

template <typename V, typename T>
void VisitGranular(V& v, T& g) {
  v("penetration_resistance", g.penetration_resistance);
  v("plateau_force", g.plateau_force);
  v("inertial_coeff", g.inertial_coeff);
}

json MaterialToJson(const Material& m) {
  Writer w;
  w("kind", std::string(MaterialKindName(m)));
  if (const auto* r = std::get_if<RigidMaterial>(&m)) {
    w("stiffness", r->stiffness);
  } else if (const auto* g = std::get_if<GranularMaterial>(&m)) {
    VisitGranular(w, *g);
  } else {
    const auto& c = std::get<CrustMaterial>(m);
    w("crust_stiffness", c.crust_stiffness);
    w("rupture_force", c.rupture_force);
    w("post_rupture_drop", c.post_rupture_drop);
    w.Object("substrate", c.substrate,
             [](Writer& s, const GranularMaterial& g) { VisitGranular(s, g); });
  }
  return w.j();
}

Material MaterialFromJson(const json& j, const std::string& path) {
  Reader r(j, path);
  std::string kind;
  r("kind", kind);
  Material out;
  if (kind == "rigid") {
    RigidMaterial m;
    r("stiffness", m.stiffness);
    out = m;
  } else if (kind == "granular") {
    GranularMaterial m;
    VisitGranular(r, m);
    out = m;
  } else if (kind == "crust_on_granular") {
    CrustMaterial m;
    r("crust_stiffness", m.crust_stiffness);
    r("rupture_force", m.rupture_force);
    r("post_rupture_drop", m.post_rupture_drop);
    r.Object("substrate", m.substrate,
             [](Reader& s, GranularMaterial& g) { VisitGranular(s, g); });
    out = m;
  } else {
    throw ConfigError(path + ".kind: expected rigid, granular or "
                      "crust_on_granular, got '" + kind + "'");
  }
  r.Finish();
  return out;
}

json TransectToJson(const Config& c) {
  json units = json::array();
  for (const TerrainUnit& u : c.scenario.transect.units) {
    units.push_back({{"x_start", u.x_start},
                     {"x_end", u.x_end},
                     {"label", u.label},
                     {"material", MaterialToJson(u.material)}});
  }
  return {{"preset", c.preset},
          {"blend_width", c.scenario.transect.blend_width},
          {"units", units}};
}

void TransectFromJson(const json& j, Config& c) {
  Reader r(j, "transect");
  std::string preset = c.preset;
  r("preset", preset);
  double blend = c.scenario.transect.blend_width;
  r("blend_width", blend);
  const json* units = r.Find("units");
  r.Finish();
  if (units == nullptr || units->empty()) {
    SetPreset(c, preset);
  } else {
    if (!units->is_array()) throw ConfigError("transect.units: expected array");
    c.preset = preset;
    c.scenario.transect.units.clear();
    for (std::size_t i = 0; i < units->size(); ++i) {
      const std::string path = "transect.units[" + std::to_string(i) + "]";
      Reader u((*units)[i], path);
      TerrainUnit unit;
      u("x_start", unit.x_start);
      u("x_end", unit.x_end);
      u("label", unit.label);
      const json* m = u.Find("material");
      if (m == nullptr) throw ConfigError(path + ": missing material");
      unit.material = MaterialFromJson(*m, path + ".material");
      u.Finish();
      c.scenario.transect.units.push_back(std::move(unit));
    }
  }
  c.scenario.transect.blend_width = blend;
}

}  // namespace

Config DefaultConfig() { return Config{}; }

void SetPreset(Config& config, std::string_view preset) {
  try {
    config.scenario.transect = PresetSpec(preset);
  } catch (const MalformedSpec& e) {
    throw ConfigError(std::string("transect.preset: ") + e.what());
  }
  config.preset = std::string(preset);
}

json ConfigToJson(const Config& c) {
  Writer w;
  w.j()["transect"] = TransectToJson(c);
  w("gait", std::string(GaitName(c.scenario.gait)));
  w("strides", c.scenario.strides);
  w("start_x", c.scenario.start_x);
  w("seed", c.scenario.seed);
  w("trials", c.trials);
  w.Object("crawl", c.scenario.crawl,
           [](Writer& s, const CrawlParams& p) { VisitCrawl(s, p); });
  w.Object("trot", c.scenario.trot,
           [](Writer& s, const TrotParams& p) { VisitTrot(s, p); });
  w.Object("actuator", c.scenario.actuator,
           [](Writer& s, const ActuatorModel& a) { VisitActuator(s, a); });
  w.Object("crust_variability", c.scenario.crust,
           [](Writer& s, const CrustVariability& v) { VisitCrust(s, v); });
  w.Object("analysis", c.analysis,
           [](Writer& s, const AnalysisConfig& a) { VisitAnalysis(s, a); });
  return w.j();
}

Config ConfigFromJson(const json& j) {
  Config c;
  Reader r(j, "config");
  if (const json* t = r.Find("transect")) TransectFromJson(*t, c);
  std::string gait(GaitName(c.scenario.gait));
  r("gait", gait);
  const auto parsed = ParseGait(gait);
  if (!parsed) throw ConfigError("config.gait: unknown gait '" + gait + "'");
  c.scenario.gait = *parsed;
  r("strides", c.scenario.strides);
  r("start_x", c.scenario.start_x);
  r("seed", c.scenario.seed);
  r("trials", c.trials);
  r.Object("crawl", c.scenario.crawl,
           [](Reader& s, CrawlParams& p) { VisitCrawl(s, p); });
  r.Object("trot", c.scenario.trot,
           [](Reader& s, TrotParams& p) { VisitTrot(s, p); });
  r.Object("actuator", c.scenario.actuator,
           [](Reader& s, ActuatorModel& a) { VisitActuator(s, a); });
  r.Object("crust_variability", c.scenario.crust,
           [](Reader& s, CrustVariability& v) { VisitCrust(s, v); });
  r.Object("analysis", c.analysis,
           [](Reader& s, AnalysisConfig& a) { VisitAnalysis(s, a); });
  r.Finish();

  if (c.trials < 1) throw ConfigError("config.trials: must be >= 1");
  try {
    ValidateScenario(c.scenario);
    // Both gaits' parameters are echoed into reports, so both must be sane.
    ValidateCrawlParams(c.scenario.crawl);
    ValidateTrotParams(c.scenario.trot);
  } catch (const ScenarioError& e) {
    throw ConfigError(e.what());
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
  try {
    ValidateAnalysisConfig(c.analysis);
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("analysis: ") + e.what());
  }
  return c;
}

Config LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return ConfigFromJson(j);
}

std::string Sha256Hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string ConfigHash(const Config& config) {
  return Sha256Hex(ConfigToJson(config).dump());
}

}  // namespace gaitsense
