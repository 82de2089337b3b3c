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

#include "gaitsense/log_io.h"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "gaitsense/csv.h"
#include "gaitsense/errors.h"

namespace gaitsense {
namespace {

constexpr int kDigits = 9;
constexpr std::size_t kFlushBytes = 1 << 20;

std::string ReadWhole(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LogFormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

// Line cursor that insists every line, the last included, ends in '\n'; a
// missing terminator means the file was cut short.
class Lines {
 public:
  Lines(std::string_view text, std::string name)
      : text_(text), name_(std::move(name)) {}

  bool Next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const std::size_t nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) Fail("truncated final line");
    line = text_.substr(pos_, nl - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = nl + 1;
    ++number_;
    return true;
  }
  [[noreturn]] void Fail(const std::string& what) const {
    throw LogFormatError(name_ + ":" + std::to_string(number_ + 1) + ": " +
                         what);
  }

 private:
  std::string_view text_;
  std::string name_;
  std::size_t pos_ = 0;
  int number_ = 0;
};

template <typename T>
T Field(const Lines& lines, std::string_view f, const char* what) {
  T v{};
  if (!ParseNumber(f, v)) {
    lines.Fail(std::string("bad ") + what + " '" + std::string(f) + "'");
  }
  return v;
}

bool Flag(const Lines& lines, std::string_view f) {
  if (f == "0") return false;
  if (f == "1") return true;
  lines.Fail("bad flag '" + std::string(f) + "'");
}

void Header(Lines& lines, std::string_view expected) {
  std::string_view line;
  if (!lines.Next(line)) lines.Fail("empty file");
  if (line != expected) lines.Fail("unexpected header");
}

void Put(std::string& s, double v, int digits = kDigits) {
  AppendNumber(s, v, digits);
  s += ',';
}
void Put(std::string& s, long long v) {
  AppendNumber(s, v);
  s += ',';
}

}  // namespace

void WriteTickLog(const TrialLog& log, std::ostream& out) {
  std::string buf;
  buf.reserve(kFlushBytes + 4096);
  buf += kTickLogHeader;
  buf += '\n';
  for (int t = 0; t < log.num_ticks(); ++t) {
    for (Leg leg : kAllLegs) {
      const TickSample& s = log.leg(leg)[t];
      Put(buf, static_cast<long long>(t));
      buf += LegName(leg);
      buf += ',';
      buf += PhaseName(s.phase);
      buf += ',';
      for (int i = 0; i < 3; ++i) Put(buf, s.q[i]);
      for (int i = 0; i < 3; ++i) Put(buf, s.dq[i]);
      for (int i = 0; i < 3; ++i) Put(buf, s.tau[i]);
      for (int i = 0; i < 3; ++i) Put(buf, s.toe[i]);
      Put(buf, s.fz_est);
      Put(buf, static_cast<long long>(s.tu_id));
      buf += s.rupture ? '1' : '0';
      buf += '\n';
    }
    if (buf.size() > kFlushBytes) {
      out.write(buf.data(), buf.size());
      buf.clear();
    }
  }
  out.write(buf.data(), buf.size());
}

void WriteStepLog(const TrialLog& log, std::ostream& out) {
  std::string buf(kStepLogHeader);
  buf += '\n';
  for (const StepRecord& s : log.steps) {
    buf += LegName(s.leg);
    buf += ',';
    Put(buf, static_cast<long long>(s.begin));
    Put(buf, static_cast<long long>(s.end));
    Put(buf, s.foothold_x, 0);
    Put(buf, static_cast<long long>(s.tu_id));
    buf += SurfaceKindName(s.surface);
    buf += ',';
    buf += s.ruptured ? "1," : "0,";
    AppendNumber(buf, static_cast<long long>(s.contact_tick));
    buf += '\n';
  }
  out << buf;
}

TrialLog ReadTrialLog(const std::filesystem::path& ticks,
                      const std::filesystem::path& steps, GaitKind gait,
                      std::uint64_t seed, int trial) {
  TrialLog log;
  log.gait = gait;
  log.seed = seed;
  log.trial = trial;

  const std::string text = ReadWhole(ticks);
  Lines lines(text, ticks.filename().string());
  Header(lines, kTickLogHeader);
  std::string_view line;
  long long row = 0;
  while (lines.Next(line)) {
    const auto f = SplitCsv(line);
    if (f.size() != 18) lines.Fail("expected 18 fields");
    const int t = Field<int>(lines, f[0], "t_ms");
    const auto leg = ParseLeg(f[1]);
    if (t != row / kNumLegs || !leg || Index(*leg) != row % kNumLegs) {
      lines.Fail("rows out of order");
    }
    const auto phase = ParsePhase(f[2]);
    if (!phase) lines.Fail("bad phase '" + std::string(f[2]) + "'");
    TickSample s;
    s.phase = *phase;
    for (int i = 0; i < 3; ++i) {
      s.q[i] = Field<double>(lines, f[3 + i], "q");
      s.dq[i] = Field<double>(lines, f[6 + i], "dq");
      s.tau[i] = Field<double>(lines, f[9 + i], "tau");
      s.toe[i] = Field<double>(lines, f[12 + i], "toe");
    }
    s.fz_est = Field<double>(lines, f[15], "fz_est");
    s.tu_id = Field<int>(lines, f[16], "tu_id");
    s.rupture = Flag(lines, f[17]);
    log.legs[Index(*leg)].push_back(s);
    ++row;
  }
  if (row == 0 || row % kNumLegs != 0) lines.Fail("incomplete final tick");

  const std::string step_text = ReadWhole(steps);
  Lines step_lines(step_text, steps.filename().string());
  Header(step_lines, kStepLogHeader);
  while (step_lines.Next(line)) {
    const auto f = SplitCsv(line);
    if (f.size() != 8) step_lines.Fail("expected 8 fields");
    StepRecord s;
    const auto leg = ParseLeg(f[0]);
    if (!leg) step_lines.Fail("bad leg");
    s.leg = *leg;
    s.begin = Field<int>(step_lines, f[1], "begin");
    s.end = Field<int>(step_lines, f[2], "end");
    s.foothold_x = Field<double>(step_lines, f[3], "foothold_x");
    s.tu_id = Field<int>(step_lines, f[4], "tu_id");
    const auto surface = ParseSurfaceKind(f[5]);
    if (!surface) step_lines.Fail("bad surface");
    s.surface = *surface;
    s.ruptured = Flag(step_lines, f[6]);
    s.contact_tick = Field<int>(step_lines, f[7], "contact");
    if (s.begin < 0 || s.end <= s.begin || s.end > log.num_ticks()) {
      step_lines.Fail("step outside the tick log");
    }
    log.steps.push_back(s);
  }
  return log;
}

void WriteEstimates(std::ostream& out, std::string_view config_hash,
                    std::span<const EstimateRow> rows) {
  std::string s = "# config_hash=";
  s += config_hash;
  s += '\n';
  s += kEstimatesHeader;
  s += '\n';
  auto ms = [](int tick) {
    return tick < 0 ? EstimateRow::kNaN : tick * kTickSeconds * 1e3;
  };
  for (const EstimateRow& r : rows) {
    Put(s, static_cast<long long>(r.trial));
    Put(s, static_cast<long long>(r.step));
    s += LegName(r.leg);
    s += ',';
    s += GaitName(r.gait);
    s += ',';
    Put(s, r.foothold_x, 0);
    Put(s, static_cast<long long>(r.tu_id));
    s += SurfaceKindName(r.surface);
    s += ',';
    s += StepLabelName(r.label);
    s += ',';
    s += r.rupture_truth ? "1," : "0,";
    Put(s, ms(r.contact_tick), 0);
    Put(s, ms(r.peak_tick), 0);
    s += r.status;
    s += ',';
    Put(s, r.k, 0);
    Put(s, NPerMToNPerCm(r.k), 0);
    Put(s, r.intercept, 0);
    Put(s, r.r_squared, 0);
    Put(s, static_cast<long long>(r.n_samples));
    Put(s, r.depth_span, 0);
    Put(s, ms(r.interval_begin), 0);
    Put(s, ms(r.interval_end), 0);
    s += r.rupture_flag ? "1," : "0,";
    Put(s, static_cast<long long>(r.n_events));
    Put(s, r.max_drop, 0);
    Put(s, r.max_drop_slope, 0);
    AppendNumber(s, r.rupture_depth);
    s += '\n';
  }
  out << s;
}

EstimatesFile ReadEstimates(const std::filesystem::path& path) {
  const std::string text = ReadWhole(path);
  Lines lines(text, path.filename().string());
  EstimatesFile out;
  std::string_view line;
  constexpr std::string_view kPrefix = "# config_hash=";
  if (!lines.Next(line) || line.substr(0, kPrefix.size()) != kPrefix) {
    lines.Fail("missing config hash line");
  }
  out.config_hash = std::string(line.substr(kPrefix.size()));
  Header(lines, kEstimatesHeader);
  auto tick = [&](std::string_view f) {
    const double v = Field<double>(lines, f, "time");
    return std::isnan(v) ? -1
                         : static_cast<int>(std::lround(v / 1e3 / kTickSeconds));
  };
  while (lines.Next(line)) {
    const auto f = SplitCsv(line);
    if (f.size() != 25) lines.Fail("expected 25 fields");
    EstimateRow r;
    r.trial = Field<int>(lines, f[0], "trial");
    r.step = Field<int>(lines, f[1], "step");
    const auto leg = ParseLeg(f[2]);
    const auto gait = ParseGait(f[3]);
    const auto surface = ParseSurfaceKind(f[6]);
    const auto label = ParseStepLabel(f[7]);
    if (!leg || !gait || !surface || !label) lines.Fail("bad enum field");
    r.leg = *leg;
    r.gait = *gait;
    r.foothold_x = Field<double>(lines, f[4], "foothold_x");
    r.tu_id = Field<int>(lines, f[5], "tu_id");
    r.surface = *surface;
    r.label = *label;
    r.rupture_truth = Flag(lines, f[8]);
    r.contact_tick = tick(f[9]);
    r.peak_tick = tick(f[10]);
    r.status = std::string(f[11]);
    r.k = Field<double>(lines, f[12], "k");
    r.intercept = Field<double>(lines, f[14], "intercept");
    r.r_squared = Field<double>(lines, f[15], "r_squared");
    r.n_samples = Field<int>(lines, f[16], "n_samples");
    r.depth_span = Field<double>(lines, f[17], "depth_span");
    r.interval_begin = tick(f[18]);
    r.interval_end = tick(f[19]);
    r.rupture_flag = Flag(lines, f[20]);
    r.n_events = Field<int>(lines, f[21], "n_events");
    r.max_drop = Field<double>(lines, f[22], "max_drop");
    r.max_drop_slope = Field<double>(lines, f[23], "slope");
    r.rupture_depth = Field<double>(lines, f[24], "rupture_depth");
    out.rows.push_back(std::move(r));
  }
  return out;
}

std::string Sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LogFormatError("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx.get(), buf.data(), in.gcount());
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  std::string hex;
  char pair[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(pair, sizeof pair, "%02x", digest[i]);
    hex += pair;
  }
  return hex;
}

}  // namespace gaitsense
