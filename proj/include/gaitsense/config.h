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

#ifndef GAITSENSE_CONFIG_H_
#define GAITSENSE_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "gaitsense/analysis.h"
#include "gaitsense/simulator.h"

namespace gaitsense {

// Everything a batch needs: one scenario, the number of trials and the
// analysis thresholds.
struct Config {
  Scenario scenario;
  // Name of the transect. A preset name when the units came from a preset.
  std::string preset = "exp1-compaction";
  int trials = 4;
  AnalysisConfig analysis;
};

Config DefaultConfig();

// Canonical form: every field written, transect units expanded, SI units.
nlohmann::json ConfigToJson(const Config& config);

// Missing keys keep their defaults, unknown keys and wrong types are
// rejected. A transect given only by preset name is expanded. Throws
// ConfigError, including for values the scenario or analysis would reject.
Config ConfigFromJson(const nlohmann::json& json);

// Throws ConfigError when the file is missing or not JSON.
Config LoadConfig(const std::filesystem::path& path);

// Switches to a named preset, replacing the transect units.
void SetPreset(Config& config, std::string_view preset);

std::string Sha256Hex(std::string_view data);

// Hash of the canonical dump; identifies a batch's configuration.
std::string ConfigHash(const Config& config);

}  // namespace gaitsense

#endif  // GAITSENSE_CONFIG_H_
