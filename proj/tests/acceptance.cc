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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gaitsense/analysis.h"
#include "gaitsense/cli.h"
#include "gaitsense/config.h"
#include "gaitsense/errors.h"
#include "gaitsense/evaluation.h"
#include "gaitsense/geometry.h"
#include "gaitsense/rng.h"
#include "gaitsense/rupture.h"
#include "gaitsense/simulator.h"
#include "gaitsense/strength.h"

namespace gs = gaitsense;
namespace fs = std::filesystem;

namespace {

constexpr int kBatches = 10;
constexpr int kTrialsPerBatch = 4;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void Report(int id, const char* name, const Outcome& o) {
  std::printf("criterion %d %-34s %s  %s\n", id, name,
              o.pass ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string Fmt(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

// Tick logs are large, so each trial is reduced to what the checks need as
// soon as it has been analyzed.
struct Trial {
  gs::GaitKind gait = gs::GaitKind::kCrawl;
  std::vector<gs::StepResult> steps;
  double min_com_margin = 0.0;
  int contacts = 0;
  int zero_depth_contacts = 0;
  double worst_period = 0.0;  // relative error against 20 s
  double worst_speed = 0.0;   // m/s away from 0.08
  int speed_samples = 0;
};

Trial Run(const gs::Scenario& s, int trial) {
  const gs::TrialLog log = gs::RunTrial(s, trial);
  Trial t;
  t.gait = log.gait;
  t.steps = gs::AnalyzeTrial(log);
  t.min_com_margin = log.min_com_margin;
  for (const gs::StepResult& r : t.steps) {
    if (r.contact_tick < 0) continue;
    ++t.contacts;
    const auto d =
        gs::StepDepthSeries(log, r, r.contact_tick, r.contact_tick + 1);
    if (d[0] == 0.0) ++t.zero_depth_contacts;
  }
  if (log.gait != gs::GaitKind::kCrawl) return t;

  // Stride period from successive lift-offs of each leg.
  std::map<int, int> last;
  for (const gs::StepRecord& step : log.steps) {
    const int l = gs::Index(step.leg);
    if (last.count(l)) {
      const double period = (step.begin - last[l]) * gs::kTickSeconds;
      t.worst_period = std::max(t.worst_period, std::abs(period / 20.0 - 1.0));
    }
    last[l] = step.begin;
  }
  // Toe speed while penetrating and before the ground pushes back.
  for (const gs::StepRecord& step : log.steps) {
    const auto& samples = log.leg(step.leg);
    const int end = step.contact_tick >= 0 ? step.contact_tick : step.end;
    for (int i = step.begin + 1; i < end; ++i) {
      if (samples[i].phase != gs::Phase::kPenetration ||
          samples[i - 1].phase != gs::Phase::kPenetration) {
        continue;
      }
      const double v =
          (samples[i].toe - samples[i - 1].toe).norm() / gs::kTickSeconds;
      t.worst_speed = std::max(t.worst_speed, std::abs(v - 0.08));
      ++t.speed_samples;
    }
  }
  return t;
}

gs::Scenario MakeScenario(const char* preset, gs::GaitKind gait,
                          std::uint64_t seed = 1) {
  gs::Scenario s;
  s.transect = gs::PresetSpec(preset);
  s.gait = gait;
  s.seed = seed;
  return s;
}

// Per-TU k values (N/cm) over a set of trials.
std::map<int, std::vector<double>> KByTu(const std::vector<Trial>& trials) {
  std::map<int, std::vector<double>> out;
  for (const Trial& t : trials) {
    for (const gs::StepResult& r : t.steps) {
      if (r.estimate) out[r.tu_id].push_back(r.estimate->k_n_per_cm);
    }
  }
  return out;
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double Variance(const std::vector<double>& v) {
  if (v.size() < 2) return std::nan("");
  const double m = Mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / (v.size() - 1);
}

gs::ConfusionMatrix Score(const std::vector<Trial>& trials) {
  std::vector<char> flags;
  std::vector<gs::StepLabel> labels;
  for (const Trial& t : trials) {
    for (const gs::StepResult& r : t.steps) {
      if (r.contact_tick < 0) continue;
      flags.push_back(r.rupture_flag);
      labels.push_back(r.label);
    }
  }
  std::vector<bool> b(flags.begin(), flags.end());
  std::unique_ptr<bool[]> packed(new bool[b.size()]);
  std::copy(b.begin(), b.end(), packed.get());
  return gs::Confusion(std::span<const bool>(packed.get(), b.size()), labels);
}

// Shared runs: kBatches seeded batches of crawl and trot on exp1, one trial
// per gait on the other presets, and the exp2 batch.
struct Runs {
  std::vector<std::vector<Trial>> crawl_exp1;
  std::vector<std::vector<Trial>> trot_exp1;
  std::vector<Trial> others;  // exp2 and mt-hood, both gaits
  std::vector<Trial> crawl_exp2;
  std::vector<Trial> trot_exp2;
};

Runs RunAll() {
  Runs r;
  for (int b = 0; b < kBatches; ++b) {
    const auto seed = static_cast<std::uint64_t>(b + 1);
    std::vector<Trial> crawl, trot;
    const gs::Scenario cs = MakeScenario("exp1-compaction", gs::GaitKind::kCrawl, seed);
    const gs::Scenario ts = MakeScenario("exp1-compaction", gs::GaitKind::kTrot, seed);
    for (int t = 0; t < kTrialsPerBatch; ++t) {
      crawl.push_back(Run(cs, t));
      trot.push_back(Run(ts, t));
    }
    r.crawl_exp1.push_back(std::move(crawl));
    r.trot_exp1.push_back(std::move(trot));
  }
  for (int t = 0; t < kTrialsPerBatch; ++t) {
    r.crawl_exp2.push_back(
        Run(MakeScenario("exp2-crust", gs::GaitKind::kCrawl), t));
    r.trot_exp2.push_back(
        Run(MakeScenario("exp2-crust", gs::GaitKind::kTrot), t));
  }
  r.others.push_back(
      Run(MakeScenario("mt-hood-transect", gs::GaitKind::kCrawl), 0));
  r.others.push_back(
      Run(MakeScenario("mt-hood-transect", gs::GaitKind::kTrot), 0));
  return r;
}

template <typename F>
void ForEachTrial(const Runs& r, F f) {
  for (const auto& batch : r.crawl_exp1) for (const Trial& t : batch) f(t);
  for (const auto& batch : r.trot_exp1) for (const Trial& t : batch) f(t);
  for (const Trial& t : r.crawl_exp2) f(t);
  for (const Trial& t : r.trot_exp2) f(t);
  for (const Trial& t : r.others) f(t);
}

Outcome PlaneAndContactDepth(const Runs& runs) {
  gs::RandomStream rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    gs::Vec3 n(rng.Uniform(-0.5, 0.5), rng.Uniform(-0.5, 0.5), 1.0);
    n.normalize();
    const gs::Vec3 u = n.cross(gs::Vec3::UnitX()).normalized();
    const gs::Vec3 v = n.cross(u);
    const gs::Point3 o(rng.Uniform(-1, 1), rng.Uniform(-1, 1),
                       rng.Uniform(-0.2, 0.2));
    std::vector<gs::Point3> pts;
    for (int k = 0; k < 6; ++k) {
      pts.push_back(o + rng.Uniform(-0.4, 0.4) * u + rng.Uniform(-0.4, 0.4) * v);
    }
    worst = std::max(worst, gs::AngleBetween(
        gs::FitPlaneThreePoints(pts[0], pts[1], pts[2]).normal, n));
    worst = std::max(worst,
                     gs::AngleBetween(gs::FitPlaneLeastSquares(pts).normal, n));
  }

  int steps = 0, zero = 0;
  ForEachTrial(runs, [&](const Trial& t) {
    steps += t.contacts;
    zero += t.zero_depth_contacts;
  });
  return {worst < 1e-9 && steps > 0 && zero == steps,
          Fmt("max normal error %.2e rad; depth exactly 0 at %d/%d contacts",
              worst, zero, steps)};
}

Outcome StrengthRecovery(const Runs& runs) {
  const double target[] = {6.8, 3.4, 21.3};
  gs::Scenario quiet = MakeScenario("exp1-compaction", gs::GaitKind::kCrawl);
  quiet.actuator.torque_noise_std = 0.0;
  quiet.actuator.torque_constant_error = 0.0;
  quiet.actuator.coulomb_friction = 0.0;
  const auto clean = KByTu({Run(quiet, 0)});
  double worst_clean = 0.0;
  for (int tu = 1; tu <= 3; ++tu) {
    const auto it = clean.find(tu);
    const double err = it == clean.end()
                           ? 1.0
                           : std::abs(Mean(it->second) / target[tu - 1] - 1.0);
    worst_clean = std::max(worst_clean, err);
  }

  double worst_noisy = 0.0;
  int ordered = 0;
  for (const auto& batch : runs.crawl_exp1) {
    const auto k = KByTu(batch);
    double m[4] = {0, 0, 0, 0};
    for (int tu = 1; tu <= 3; ++tu) {
      const auto it = k.find(tu);
      m[tu] = it == k.end() ? 0.0 : Mean(it->second);
      worst_noisy = std::max(worst_noisy, std::abs(m[tu] / target[tu - 1] - 1.0));
    }
    if (m[1] > m[2] && m[3] > m[1]) ++ordered;
  }
  return {worst_clean < 0.005 && worst_noisy < 0.10 && ordered == kBatches,
          Fmt("zero noise worst %.3f%%; default noise worst %.2f%%; "
              "ordering held in %d/%d batches",
              100 * worst_clean, 100 * worst_noisy, ordered, kBatches)};
}

Outcome GaitComparison(const Runs& runs) {
  int good = 0;
  for (int b = 0; b < kBatches; ++b) {
    const auto crawl = KByTu(runs.crawl_exp1[b]);
    const auto trot = KByTu(runs.trot_exp1[b]);
    bool ok = true;
    for (int tu = 1; tu <= 3; ++tu) {
      const auto c = crawl.find(tu);
      const auto t = trot.find(tu);
      if (c == crawl.end() || t == trot.end()) {
        ok = false;
        continue;
      }
      ok = ok && Mean(t->second) > Mean(c->second) &&
           Variance(t->second) >= Variance(c->second);
    }
    good += ok;
  }
  return {good >= 9,
          Fmt("trot mean and variance above crawl on every TU in %d/%d "
              "batches",
              good, kBatches)};
}

std::vector<double> Ramp(double drop) {
  // 20 N/s ramp from 5 N with a step loss of `drop` at 0.75 s.
  std::vector<double> f(1500);
  for (int i = 0; i < 1500; ++i) {
    f[i] = 5.0 + 20.0 * i * 1e-3 - (i >= 750 ? drop : 0.0);
  }
  return f;
}

bool Detects(double drop) {
  const gs::DetectorConfig cfg;
  return !gs::DetectRuptures(gs::SmoothForce(Ramp(drop), cfg), {}, cfg).empty();
}

Outcome RuptureDetector() {
  const bool six = Detects(6.0);
  const bool four = Detects(4.0);
  gs::RandomStream rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    double c[5];
    for (double& x : c) x = rng.Uniform(-10, 10);
    std::vector<double> y(400);
    for (int i = 0; i < 400; ++i) {
      const double t = (i - 200) / 200.0;
      y[i] = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4])));
    }
    const auto s = gs::SmoothForce(y, gs::DetectorConfig{});
    for (int i = 0; i < 400; ++i) worst = std::max(worst, std::abs(s[i] - y[i]));
  }
  bool monotone = true;
  bool seen = false;
  for (double d = 0.25; d <= 20.0; d += 0.25) {
    const bool hit = Detects(d);
    if (seen && !hit) monotone = false;
    seen = seen || hit;
  }
  return {six && !four && worst < 1e-9 && monotone,
          Fmt("6 N %s, 4 N %s; quartic error %.1e; monotone %s",
              six ? "detected" : "missed", four ? "detected" : "rejected",
              worst, monotone ? "yes" : "no")};
}

Outcome CrustDetection(const Runs& runs) {
  const gs::ConfusionMatrix c = Score(runs.crawl_exp2);
  const gs::ConfusionMatrix t = Score(runs.trot_exp2);
  const bool pass = c.Specificity() >= 0.90 && c.Sensitivity() >= 0.60 &&
                    t.Specificity() <= 0.50 && t.Sensitivity() == 1.0;
  return {pass, Fmt("crawl spec %.3f sens %.3f; trot spec %.3f sens %.3f",
                    c.Specificity(), c.Sensitivity(), t.Specificity(),
                    t.Sensitivity())};
}

Outcome GaitTiming(const Runs& runs) {
  double worst_period = 0.0, worst_speed = 0.0;
  int speed_samples = 0;
  ForEachTrial(runs, [&](const Trial& t) {
    worst_period = std::max(worst_period, t.worst_period);
    worst_speed = std::max(worst_speed, t.worst_speed);
    speed_samples += t.speed_samples;
  });
  // Trot contact to first force peak on granular ground.
  double lo = 1e9, hi = -1e9;
  auto peaks = [&](const Trial& t) {
    if (t.gait != gs::GaitKind::kTrot) return;
    for (const gs::StepResult& r : t.steps) {
      if (r.surface != gs::SurfaceKind::kGranular) continue;
      const double ms = r.ContactToPeakMs();
      if (std::isnan(ms)) continue;
      lo = std::min(lo, ms);
      hi = std::max(hi, ms);
    }
  };
  for (const auto& batch : runs.trot_exp1) for (const Trial& t : batch) peaks(t);
  for (const Trial& t : runs.others) peaks(t);
  const bool pass = worst_period < 0.01 && speed_samples > 0 &&
                    worst_speed <= 1e-6 && lo >= 10.0 && hi <= 80.0;
  return {pass, Fmt("period error %.3f%%; speed error %.1e m/s over %d ticks; "
                    "contact-to-peak %.0f..%.0f ms",
                    100 * worst_period, worst_speed, speed_samples, lo, hi)};
}

Outcome StaticStability(const Runs& runs) {
  double worst = 1e9;
  int trials = 0;
  ForEachTrial(runs, [&](const Trial& t) {
    if (t.gait != gs::GaitKind::kCrawl) return;
    worst = std::min(worst, t.min_com_margin);
    ++trials;
  });
  gs::Scenario bad = MakeScenario("exp1-compaction", gs::GaitKind::kCrawl);
  bad.crawl.transition_margin = 0.01;  // plans inside the 2 cm limit
  bad.strides = 1;
  bool raised = false;
  try {
    gs::RunTrial(bad, 0);
  } catch (const gs::InstabilityError&) {
    raised = true;
  }
  return {worst > 0.0 && raised,
          Fmt("min margin %.4f m over %d crawl trials; violation %s", worst,
              trials, raised ? "raised InstabilityError" : "not raised")};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome Determinism() {
  const fs::path root = fs::temp_directory_path() / "gaitsense_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  gs::Config crawl;
  crawl.scenario.strides = 2;
  crawl.trials = 2;
  {
    std::ofstream f(root / "crawl.json");
    f << gs::ConfigToJson(crawl).dump(2);
  }
  std::ostringstream out, err;
  std::string reports[2];
  bool ok = true;
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = root / ("run" + std::to_string(run));
    const std::string c = (dir / "crawl").string();
    const std::string t = (dir / "trot").string();
    const std::vector<std::vector<std::string>> cmds = {
        {"simulate", "--config", (root / "crawl.json").string(), "--out", c},
        {"simulate", "--preset", "exp2-crust", "--gait", "trot", "--trials",
         "2", "--seed", "3", "--out", t},
        {"analyze", c},
        {"analyze", t},
        {"evaluate", c, t, "--out", (dir / "report").string()},
    };
    for (const auto& cmd : cmds) ok = ok && gs::RunCli(cmd, out, err) == 0;
    for (const char* f : {"report.json", "k_vs_position.csv", "tu_summary.csv",
                          "confusion.csv", "force_depth.csv"}) {
      reports[run] += Slurp(dir / "report" / f);
    }
  }
  fs::remove_all(root);
  const bool same = ok && !reports[0].empty() && reports[0] == reports[1];
  return {same, ok ? Fmt("%zu report bytes, repeat %s", reports[0].size(),
                         same ? "identical" : "differs")
                   : "pipeline failed: " + err.str()};
}

Outcome PublishedRates() {
  const double a = gs::ConfusionFromCounts(0, 0, 73, 3).Specificity();
  const double b = gs::ConfusionFromCounts(11, 4, 0, 0).Sensitivity();
  const double c = gs::ConfusionFromCounts(0, 0, 64, 56).Specificity();
  const bool pass = std::abs(a - 0.959) < 5e-4 && std::abs(b - 0.636) < 5e-4 &&
                    std::abs(c - 0.125) < 5e-4;
  return {pass, Fmt("%.3f, %.3f, %.3f", a, b, c)};
}

}  // namespace

int main() {
  const Runs runs = RunAll();
  Report(1, "ground plane and contact depth", PlaneAndContactDepth(runs));
  Report(2, "crawl strength recovery", StrengthRecovery(runs));
  Report(3, "trot bias and variance", GaitComparison(runs));
  Report(4, "rupture detector", RuptureDetector());
  Report(5, "crust detection by gait", CrustDetection(runs));
  Report(6, "gait timing", GaitTiming(runs));
  Report(7, "crawl static stability", StaticStability(runs));
  Report(8, "end-to-end determinism", Determinism());
  Report(9, "published confusion rates", PublishedRates());
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures == 0 ? 0 : 1;
}
