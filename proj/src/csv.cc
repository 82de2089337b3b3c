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

#include "gaitsense/csv.h"

#include <charconv>
#include <cmath>

namespace gaitsense {

void AppendNumber(std::string& out, double value, int precision) {
  if (std::isnan(value)) {
    out += "nan";
    return;
  }
  char buf[64];
  const auto res =
      precision > 0
          ? std::to_chars(buf, buf + sizeof buf, value,
                          std::chars_format::general, precision)
          : std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

void AppendNumber(std::string& out, long long value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

bool ParseNumber(std::string_view field, double& value) {
  if (field.empty()) return false;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  return res.ec == std::errc() && res.ptr == field.data() + field.size();
}

bool ParseNumber(std::string_view field, int& value) {
  if (field.empty()) return false;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  return res.ec == std::errc() && res.ptr == field.data() + field.size();
}

}  // namespace gaitsense
