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

#include "gaitsense/report.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <utility>

#include "gaitsense/csv.h"
#include "gaitsense/errors.h"

namespace gaitsense {
namespace {

using nlohmann::json;

// NaN has no JSON spelling; null it explicitly so the intent is visible.
json Num(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

json StatsJson(const KStats& s) {
  return {{"n", s.n},
          {"mean_n_per_cm", Num(s.mean)},
          {"std_n_per_cm", Num(s.std)},
          {"single", s.single}};
}

json ConfusionJson(const ConfusionMatrix& c) {
  return {{"tp", c.tp},
          {"tn", c.tn},
          {"fp", c.fp},
          {"fn", c.fn},
          {"total", c.total()},
          {"sensitivity", Num(c.Sensitivity())},
          {"specificity", Num(c.Specificity())}};
}

double SampleVariance(const std::vector<double>& v) {
  if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / (v.size() - 1);
}

// Batches pooled by (experiment, gait).
struct Group {
  std::string experiment;
  GaitKind gait;
  const Batch* first = nullptr;
  std::vector<std::string> hashes;
  int trials = 0;
  std::vector<EstimateRow> rows;
};

std::vector<Group> GroupBatches(std::span<const Batch> batches) {
  std::map<std::pair<std::string, int>, Group> groups;
  for (const Batch& b : batches) {
    Group& g = groups[{b.experiment, static_cast<int>(b.gait)}];
    if (g.first == nullptr) {
      g.experiment = b.experiment;
      g.gait = b.gait;
      g.first = &b;
    }
    if (std::find(g.hashes.begin(), g.hashes.end(), b.config_hash) ==
        g.hashes.end()) {
      g.hashes.push_back(b.config_hash);
    }
    // Trial indices restart in each batch; offset them to stay unique.
    for (EstimateRow r : b.rows) {
      r.trial += g.trials;
      g.rows.push_back(std::move(r));
    }
    g.trials += b.trials;
  }
  std::vector<Group> out;
  for (auto& [key, g] : groups) out.push_back(std::move(g));
  return out;
}

std::vector<double> TuValues(std::span<const EstimateRow> rows, int tu) {
  std::vector<double> v;
  for (const EstimateRow& r : rows) {
    if (r.has_estimate() && r.tu_id == tu) v.push_back(NPerMToNPerCm(r.k));
  }
  return v;
}

json GaitSection(const Group& g) {
  const TransectProfile profile =
      BatchProfile(g.rows, g.first->transect);
  json units = json::array();
  for (const TuAggregate& a : profile.units) {
    json per_leg = json::object();
    for (Leg leg : kAllLegs) {
      const KStats& s = a.per_leg[Index(leg)];
      if (s.n > 0) per_leg[std::string(LegName(leg))] = StatsJson(s);
    }
    units.push_back({{"tu_id", a.tu_id},
                     {"label", a.label},
                     {"pooled", StatsJson(a.pooled)},
                     {"per_leg", per_leg}});
  }
  std::map<std::string, int> status;
  int scored = 0;
  for (const EstimateRow& r : g.rows) {
    ++status[r.status];
    if (r.scored()) ++scored;
  }
  json section = {
      {"config_hashes", g.hashes},
      {"trials", g.trials},
      {"steps", static_cast<int>(g.rows.size())},
      {"scored_steps", scored},
      {"step_status", status},
      {"strength", {{"units", units}, {"warnings", profile.warnings}}},
      {"rupture", ConfusionJson(BatchConfusion(g.rows))},
  };
  if (g.gait == GaitKind::kTrot) {
    std::map<int, std::vector<double>> ctp;
    for (const EstimateRow& r : g.rows) {
      const double ms = r.ContactToPeakMs();
      if (!std::isnan(ms)) ctp[r.tu_id].push_back(ms);
    }
    json peaks = json::array();
    for (const auto& [tu, v] : ctp) {
      double sum = 0.0;
      for (double x : v) sum += x;
      peaks.push_back({{"tu_id", tu},
                       {"n", static_cast<int>(v.size())},
                       {"min_ms", *std::min_element(v.begin(), v.end())},
                       {"max_ms", *std::max_element(v.begin(), v.end())},
                       {"mean_ms", sum / v.size()}});
    }
    section["contact_to_peak"] = peaks;
  }
  return section;
}

json Comparison(const Group& crawl, const Group& trot) {
  std::set<int> tus;
  for (const EstimateRow& r : crawl.rows) {
    if (r.has_estimate()) tus.insert(r.tu_id);
  }
  json out = json::array();
  for (int tu : tus) {
    const std::vector<double> c = TuValues(crawl.rows, tu);
    const std::vector<double> t = TuValues(trot.rows, tu);
    if (t.empty()) continue;
    double cm = 0.0, tm = 0.0;
    for (double x : c) cm += x;
    for (double x : t) tm += x;
    cm /= c.size();
    tm /= t.size();
    const double cv = SampleVariance(c);
    const double tv = SampleVariance(t);
    out.push_back({{"tu_id", tu},
                   {"crawl_mean_n_per_cm", cm},
                   {"trot_mean_n_per_cm", tm},
                   {"crawl_variance", Num(cv)},
                   {"trot_variance", Num(tv)},
                   {"trot_overestimates", tm > cm},
                   {"trot_more_variable", !std::isnan(cv) &&
                                              !std::isnan(tv) && tv >= cv}});
  }
  return out;
}

}  // namespace

double EstimateRow::ContactToPeakMs() const {
  if (contact_tick < 0 || peak_tick < 0) return kNaN;
  return (peak_tick - contact_tick) * kTickSeconds * 1e3;
}

EstimateRow MakeEstimateRow(const StepResult& r) {
  EstimateRow row;
  row.trial = r.trial;
  row.step = r.step;
  row.leg = r.leg;
  row.gait = r.gait;
  row.foothold_x = r.foothold_x;
  row.tu_id = r.tu_id;
  row.surface = r.surface;
  row.label = r.label;
  row.rupture_truth = r.rupture_truth;
  row.contact_tick = r.contact_tick;
  row.peak_tick = r.peak_tick;
  row.status = r.status;
  if (r.estimate) {
    row.k = NPerCmToNPerM(r.estimate->k_n_per_cm);
    row.intercept = r.estimate->intercept;
    row.r_squared = r.estimate->r_squared;
    row.n_samples = r.estimate->n_samples;
    row.depth_span = r.estimate->depth_span;
    row.interval_begin = r.interval_begin;
    row.interval_end = r.interval_end;
  }
  row.rupture_flag = r.rupture_flag;
  row.n_events = static_cast<int>(r.events.size());
  const RuptureEvent* biggest = nullptr;
  for (const RuptureEvent& e : r.events) {
    if (biggest == nullptr || e.magnitude > biggest->magnitude) biggest = &e;
  }
  if (biggest != nullptr) {
    row.max_drop = biggest->magnitude;
    row.max_drop_slope = biggest->slope;
    row.rupture_depth = biggest->depth;
  }
  return row;
}

ConfusionMatrix BatchConfusion(std::span<const EstimateRow> rows) {
  std::vector<bool> flags;
  std::vector<StepLabel> labels;
  for (const EstimateRow& r : rows) {
    if (!r.scored()) continue;
    flags.push_back(r.rupture_flag);
    labels.push_back(r.label);
  }
  // std::vector<bool> has no contiguous storage.
  std::unique_ptr<bool[]> packed(new bool[flags.size()]);
  std::copy(flags.begin(), flags.end(), packed.get());
  return Confusion(std::span<const bool>(packed.get(), flags.size()), labels);
}

TransectProfile BatchProfile(std::span<const EstimateRow> rows,
                             const TransectSpec& transect) {
  std::vector<PenetrationEstimate> estimates;
  for (const EstimateRow& r : rows) {
    if (!r.has_estimate()) continue;
    PenetrationEstimate e;
    e.k_n_per_cm = NPerMToNPerCm(r.k);
    e.intercept = r.intercept;
    e.r_squared = r.r_squared;
    e.n_samples = r.n_samples;
    e.depth_span = r.depth_span;
    e.leg = r.leg;
    e.x = r.foothold_x;
    e.tu_id = r.tu_id;
    estimates.push_back(e);
  }
  return ProfileTransect(estimates, BuildTransect(transect));
}

json BuildReport(std::span<const Batch> batches) {
  std::size_t total = 0;
  for (const Batch& b : batches) total += b.rows.size();
  if (total == 0) throw EmptyReport("no analysed steps to report");

  const std::vector<Group> groups = GroupBatches(batches);
  json experiments = json::array();
  json configs = json::object();
  for (const Batch& b : batches) configs[b.config_hash] = b.config;

  for (std::size_t i = 0; i < groups.size();) {
    const std::string& name = groups[i].experiment;
    const Group* crawl = nullptr;
    const Group* trot = nullptr;
    for (; i < groups.size() && groups[i].experiment == name; ++i) {
      (groups[i].gait == GaitKind::kCrawl ? crawl : trot) = &groups[i];
    }
    const Group* any = crawl != nullptr ? crawl : trot;
    json units = json::array();
    const Transect transect = BuildTransect(any->first->transect);
    for (const TerrainUnit& u : transect.units()) {
      units.push_back({{"tu_id", u.id},
                       {"label", u.label},
                       {"x_start", u.x_start},
                       {"x_end", u.x_end},
                       {"material", std::string(MaterialKindName(u.material))}});
    }
    json exp = {{"name", name}, {"units", units}};
    json gaits = json::object();
    json omitted = json::array();
    if (crawl != nullptr) {
      gaits["crawl"] = GaitSection(*crawl);
    } else {
      omitted.push_back("crawl: no trials in input");
    }
    if (trot != nullptr) {
      gaits["trot"] = GaitSection(*trot);
    } else {
      omitted.push_back("trot: no trials in input");
    }
    exp["gaits"] = gaits;
    exp["omitted"] = omitted;
    if (crawl != nullptr && trot != nullptr) {
      exp["gait_comparison"] = Comparison(*crawl, *trot);
    }
    experiments.push_back(std::move(exp));
  }
  return {{"experiments", experiments}, {"configs", configs}};
}

ReportTables BuildTables(std::span<const Batch> batches) {
  ReportTables t;
  t.k_vs_position =
      "experiment,gait,trial,step,leg,x_m,tu_id,k_n_per_cm,r_squared\n";
  t.tu_summary =
      "experiment,gait,tu_id,label,n,mean_n_per_cm,std_n_per_cm\n";
  t.confusion =
      "experiment,gait,tp,tn,fp,fn,sensitivity,specificity\n";
  for (const Group& g : GroupBatches(batches)) {
    const std::string prefix =
        g.experiment + "," + std::string(GaitName(g.gait)) + ",";
    std::vector<const EstimateRow*> rows;
    for (const EstimateRow& r : g.rows) {
      if (r.has_estimate()) rows.push_back(&r);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const EstimateRow* a, const EstimateRow* b) {
                       return a->foothold_x < b->foothold_x;
                     });
    for (const EstimateRow* r : rows) {
      std::string& s = t.k_vs_position;
      s += prefix;
      AppendNumber(s, static_cast<long long>(r->trial));
      s += ',';
      AppendNumber(s, static_cast<long long>(r->step));
      s += ',';
      s += LegName(r->leg);
      s += ',';
      AppendNumber(s, r->foothold_x);
      s += ',';
      AppendNumber(s, static_cast<long long>(r->tu_id));
      s += ',';
      AppendNumber(s, NPerMToNPerCm(r->k));
      s += ',';
      AppendNumber(s, r->r_squared);
      s += '\n';
    }
    for (const TuAggregate& a : BatchProfile(g.rows, g.first->transect).units) {
      std::string& s = t.tu_summary;
      s += prefix;
      AppendNumber(s, static_cast<long long>(a.tu_id));
      s += ',' + a.label + ',';
      AppendNumber(s, static_cast<long long>(a.pooled.n));
      s += ',';
      AppendNumber(s, a.pooled.mean);
      s += ',';
      AppendNumber(s, a.pooled.std);
      s += '\n';
    }
    const ConfusionMatrix c = BatchConfusion(g.rows);
    std::string& s = t.confusion;
    s += prefix;
    for (int v : {c.tp, c.tn, c.fp, c.fn}) {
      AppendNumber(s, static_cast<long long>(v));
      s += ',';
    }
    AppendNumber(s, c.Sensitivity());
    s += ',';
    AppendNumber(s, c.Specificity());
    s += '\n';
  }
  return t;
}

}  // namespace gaitsense
