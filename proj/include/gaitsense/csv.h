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

#ifndef GAITSENSE_CSV_H_
#define GAITSENSE_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace gaitsense {

// Shortest round-trip text when precision is 0, else that many significant
// digits. NaN prints as "nan".
void AppendNumber(std::string& out, double value, int precision = 0);
void AppendNumber(std::string& out, long long value);

// Comma split without quoting; fields never contain commas.
std::vector<std::string_view> SplitCsv(std::string_view line);

// Strict parsers: the whole field must be consumed. Return false on error.
bool ParseNumber(std::string_view field, double& value);
bool ParseNumber(std::string_view field, int& value);

}  // namespace gaitsense

#endif  // GAITSENSE_CSV_H_
