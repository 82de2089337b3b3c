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

#include "gaitsense/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gaitsense/analysis.h"
#include "gaitsense/config.h"
#include "gaitsense/csv.h"
#include "gaitsense/errors.h"
#include "gaitsense/log_io.h"
#include "gaitsense/report.h"
#include "gaitsense/simulator.h"

namespace gaitsense {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Carries an exit code out of a command.
struct Exit {
  int code;
  std::string message;
};

fs::path OutRoot() {
  const char* root = std::getenv(kOutRootEnv);
  return root != nullptr && *root != '\0' ? fs::path(root) : fs::path(".");
}

fs::path Resolve(const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? p : OutRoot() / p;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Exit{kExitUsage, "cannot write " + path.string()};
}

std::string TrialStem(int trial) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "trial_%03d", trial);
  return buf;
}

json ReadManifest(const fs::path& dir) {
  const fs::path path = dir / "manifest.json";
  std::ifstream in(path);
  if (!in) throw Exit{kExitMalformedLog, "no manifest in " + dir.string()};
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Exit{kExitMalformedLog, path.string() + ": " + e.what()};
  }
}

// The manifest's config, checked against its recorded hash.
Config ManifestConfig(const json& manifest, const fs::path& dir) {
  try {
    const Config c = ConfigFromJson(manifest.at("config"));
    if (ConfigHash(c) != manifest.at("config_hash").get<std::string>()) {
      throw Exit{kExitMismatch,
                 dir.string() + ": manifest config does not match its hash"};
    }
    return c;
  } catch (const ConfigError& e) {
    throw Exit{kExitMalformedLog, dir.string() + ": " + e.what()};
  } catch (const json::exception& e) {
    throw Exit{kExitMalformedLog, dir.string() + ": bad manifest: " + e.what()};
  }
}

struct SimulateOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string preset;
  std::string gait;
  std::string out;
};

void Simulate(const SimulateOptions& o, std::ostream& out) {
  Config c;
  try {
    if (!o.config.empty()) c = LoadConfig(o.config);
    if (!o.preset.empty()) SetPreset(c, o.preset);
    if (!o.gait.empty()) {
      const auto g = ParseGait(o.gait);
      if (!g) throw ConfigError("unknown gait '" + o.gait + "'");
      c.scenario.gait = *g;
    }
    if (o.seed) c.scenario.seed = *o.seed;
    if (o.trials) c.trials = *o.trials;
    c = ConfigFromJson(ConfigToJson(c));  // revalidate the overrides
  } catch (const ConfigError& e) {
    throw Exit{kExitConfig, e.what()};
  }

  const std::string gait(GaitName(c.scenario.gait));
  const fs::path dir = Resolve(
      o.out.empty() ? c.preset + "_" + gait + "_seed" +
                          std::to_string(c.scenario.seed)
                    : o.out);
  fs::create_directories(dir);

  json trials = json::array();
  for (int t = 0; t < c.trials; ++t) {
    TrialLog log;
    try {
      log = RunTrial(c.scenario, t);
    } catch (const Error& e) {
      throw Exit{kExitSimulation, "trial " + std::to_string(t) + ": " +
                                      e.what()};
    }
    const std::string stem = TrialStem(t);
    const fs::path ticks = dir / (stem + ".csv");
    const fs::path steps = dir / (stem + ".steps.csv");
    {
      std::ofstream f(ticks, std::ios::binary);
      WriteTickLog(log, f);
      std::ofstream g(steps, std::ios::binary);
      WriteStepLog(log, g);
      if (!f || !g) throw Exit{kExitUsage, "cannot write " + dir.string()};
    }
    json entry = {{"trial", t},
                  {"seed", c.scenario.seed},
                  {"ticks", ticks.filename().string()},
                  {"steps", steps.filename().string()},
                  {"ticks_sha256", Sha256File(ticks)},
                  {"steps_sha256", Sha256File(steps)},
                  {"num_ticks", log.num_ticks()},
                  {"num_steps", static_cast<int>(log.steps.size())}};
    if (c.scenario.gait == GaitKind::kCrawl) {
      entry["min_com_margin_m"] = log.min_com_margin;
    }
    trials.push_back(entry);
    out << stem << ": " << log.steps.size() << " steps\n";
  }
  const json manifest = {{"config", ConfigToJson(c)},
                         {"config_hash", ConfigHash(c)},
                         {"experiment", c.preset},
                         {"gait", gait},
                         {"seed", c.scenario.seed},
                         {"trials", trials}};
  WriteText(dir / "manifest.json", manifest.dump(2) + "\n");
  out << "wrote " << c.trials << " trial(s) to " << dir.string() << "\n";
}

void Analyze(const std::string& log_dir, const std::string& out_dir,
             std::ostream& out) {
  const fs::path dir(log_dir);
  const json manifest = ReadManifest(dir);
  const Config c = ManifestConfig(manifest, dir);
  const std::string hash = manifest["config_hash"].get<std::string>();

  std::vector<EstimateRow> rows;
  std::string fd = "trial,step,leg,tu_id,depth_m,force_n\n";
  try {
    for (const json& t : manifest.at("trials")) {
      const int trial = t.at("trial").get<int>();
      const fs::path ticks = dir / t.at("ticks").get<std::string>();
      const fs::path steps = dir / t.at("steps").get<std::string>();
      if (Sha256File(ticks) != t.at("ticks_sha256").get<std::string>() ||
          Sha256File(steps) != t.at("steps_sha256").get<std::string>()) {
        throw LogFormatError(ticks.filename().string() +
                             ": contents do not match the manifest hash");
      }
      const TrialLog log = ReadTrialLog(ticks, steps, c.scenario.gait,
                                        t.at("seed").get<std::uint64_t>(),
                                        trial);
      for (const StepResult& r : AnalyzeTrial(log, c.analysis)) {
        rows.push_back(MakeEstimateRow(r));
        if (!r.estimate) continue;
        const std::vector<double> depth =
            StepDepthSeries(log, r, r.interval_begin, r.interval_end);
        const auto& samples = log.leg(r.leg);
        for (int i = r.interval_begin; i < r.interval_end; ++i) {
          AppendNumber(fd, static_cast<long long>(trial));
          fd += ',';
          AppendNumber(fd, static_cast<long long>(r.step));
          fd += ',';
          fd += LegName(r.leg);
          fd += ',';
          AppendNumber(fd, static_cast<long long>(r.tu_id));
          fd += ',';
          AppendNumber(fd, depth[i - r.interval_begin], 9);
          fd += ',';
          AppendNumber(fd, samples[i].fz_est, 9);
          fd += '\n';
        }
      }
    }
  } catch (const json::exception& e) {
    throw Exit{kExitMalformedLog, dir.string() + ": bad manifest: " + e.what()};
  } catch (const LogFormatError& e) {
    throw Exit{kExitMalformedLog, e.what()};
  }

  const fs::path target = out_dir.empty() ? dir : Resolve(out_dir);
  fs::create_directories(target);
  std::ostringstream est;
  WriteEstimates(est, hash, rows);
  WriteText(target / "estimates.csv", est.str());
  WriteText(target / "force_depth.csv", fd);
  int ok = 0, flagged = 0;
  for (const EstimateRow& r : rows) {
    ok += r.has_estimate();
    flagged += r.rupture_flag;
  }
  out << rows.size() << " steps, " << ok << " estimates, " << flagged
      << " flagged ruptures -> " << (target / "estimates.csv").string()
      << "\n";
}

void Evaluate(const std::vector<std::string>& log_dirs,
              std::vector<std::string> estimates, const std::string& out_dir,
              std::ostream& out) {
  if (!estimates.empty() && estimates.size() != log_dirs.size()) {
    throw Exit{kExitMismatch, "need one estimates file per log directory"};
  }
  std::vector<Batch> batches;
  std::string fd = "experiment,gait,trial,step,leg,tu_id,depth_m,force_n\n";
  for (std::size_t i = 0; i < log_dirs.size(); ++i) {
    const fs::path dir(log_dirs[i]);
    const json manifest = ReadManifest(dir);
    const Config c = ManifestConfig(manifest, dir);
    const fs::path est_path =
        estimates.empty() ? dir / "estimates.csv" : fs::path(estimates[i]);
    EstimatesFile est;
    try {
      est = ReadEstimates(est_path);
    } catch (const LogFormatError& e) {
      throw Exit{kExitMalformedLog, e.what()};
    }
    const std::string hash = manifest["config_hash"].get<std::string>();
    if (est.config_hash != hash) {
      throw Exit{kExitMismatch, est_path.string() +
                                    ": config hash differs from the logs in " +
                                    dir.string()};
    }
    // Rows must be exactly the logged steps, with the same truth.
    std::map<std::pair<int, int>, const EstimateRow*> by_step;
    for (const EstimateRow& r : est.rows) {
      if (r.gait != c.scenario.gait) {
        throw Exit{kExitMismatch, est_path.string() + ": gait differs"};
      }
      by_step[{r.trial, r.step}] = &r;
    }
    std::size_t expected = 0;
    try {
      for (const json& t : manifest.at("trials")) {
        const int trial = t.at("trial").get<int>();
        const fs::path steps = dir / t.at("steps").get<std::string>();
        std::ifstream in(steps);
        std::string line;
        std::getline(in, line);
        int step = 0;
        while (std::getline(in, line)) {
          const auto f = SplitCsv(line);
          auto it = by_step.find({trial, step});
          if (f.size() != 8 || it == by_step.end() ||
              it->second->tu_id != std::atoi(std::string(f[4]).c_str()) ||
              SurfaceKindName(it->second->surface) != f[5] ||
              it->second->rupture_truth != (f[6] == "1")) {
            throw Exit{kExitMismatch,
                       est_path.string() + ": trial " + std::to_string(trial) +
                           " step " + std::to_string(step) +
                           " does not match the logs"};
          }
          ++step;
        }
        expected += step;
      }
    } catch (const json::exception& e) {
      throw Exit{kExitMalformedLog, dir.string() + ": " + e.what()};
    }
    if (expected != est.rows.size()) {
      throw Exit{kExitMismatch, est_path.string() + ": " +
                                    std::to_string(est.rows.size()) +
                                    " rows for " + std::to_string(expected) +
                                    " logged steps"};
    }

    Batch b;
    b.experiment = c.preset;
    b.transect = c.scenario.transect;
    b.gait = c.scenario.gait;
    b.config_hash = hash;
    b.config = manifest["config"];
    b.trials = c.trials;
    b.rows = std::move(est.rows);
    batches.push_back(std::move(b));

    const fs::path fd_path = est_path.parent_path() / "force_depth.csv";
    std::ifstream in(fd_path);
    std::string line;
    std::getline(in, line);
    const std::string prefix =
        c.preset + "," + std::string(GaitName(c.scenario.gait)) + ",";
    while (std::getline(in, line)) fd += prefix + line + "\n";
  }

  json report;
  try {
    report = BuildReport(batches);
  } catch (const EmptyReport& e) {
    throw Exit{kExitMismatch, e.what()};
  }
  const ReportTables tables = BuildTables(batches);
  const fs::path target = Resolve(out_dir.empty() ? "report" : out_dir);
  fs::create_directories(target);
  WriteText(target / "report.json", report.dump(2) + "\n");
  WriteText(target / "k_vs_position.csv", tables.k_vs_position);
  WriteText(target / "tu_summary.csv", tables.tu_summary);
  WriteText(target / "confusion.csv", tables.confusion);
  WriteText(target / "force_depth.csv", fd);
  out << "report -> " << (target / "report.json").string() << "\n";
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Proprioceptive terrain sensing with a simulated quadruped",
               "gaitsense"};
  app.require_subcommand(1);

  auto* defaults = app.add_subcommand("defaults", "Print the default config");

  SimulateOptions sim;
  std::uint64_t seed = 0;
  int trials = 0;
  auto* simulate = app.add_subcommand("simulate", "Run trials, write logs");
  simulate->add_option("--config", sim.config, "JSON config file");
  auto* seed_opt = simulate->add_option("--seed", seed, "Base seed");
  auto* trials_opt =
      simulate->add_option("--trials", trials, "Number of trials");
  simulate->add_option("--preset", sim.preset, "Transect preset");
  simulate->add_option("--gait", sim.gait, "crawl or trot");
  simulate->add_option("--out", sim.out, "Output directory");

  std::string log_dir, analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Per-step estimates");
  analyze->add_option("logs", log_dir, "Directory written by simulate")
      ->required();
  analyze->add_option("--out", analyze_out,
                      "Output directory (default: the log directory)");

  std::vector<std::string> eval_logs, eval_estimates;
  std::string eval_out;
  auto* evaluate = app.add_subcommand("evaluate", "Build the report");
  evaluate->add_option("logs", eval_logs, "Analysed log directories")
      ->required();
  evaluate->add_option("--estimates", eval_estimates,
                       "Estimates files, one per log directory");
  evaluate->add_option("--out", eval_out, "Report directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (defaults->parsed()) {
      out << ConfigToJson(DefaultConfig()).dump(2) << "\n";
    } else if (simulate->parsed()) {
      if (seed_opt->count() > 0) sim.seed = seed;
      if (trials_opt->count() > 0) sim.trials = trials;
      Simulate(sim, out);
    } else if (analyze->parsed()) {
      Analyze(log_dir, analyze_out, out);
    } else if (evaluate->parsed()) {
      Evaluate(eval_logs, eval_estimates, eval_out, out);
    }
  } catch (const Exit& e) {
    err << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace gaitsense
