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

#ifndef GAITSENSE_ERRORS_H_
#define GAITSENSE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace gaitsense {

// Base of every error raised by the library. Each failure mode named by an
// operation contract gets its own subclass so callers can catch selectively.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GAITSENSE_DEFINE_ERROR(Name)          \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

// geometry
GAITSENSE_DEFINE_ERROR(DegenerateContacts);
// robot model
GAITSENSE_DEFINE_ERROR(SingularConfiguration);
GAITSENSE_DEFINE_ERROR(Unreachable);
// terrain
GAITSENSE_DEFINE_ERROR(OutOfTransect);
GAITSENSE_DEFINE_ERROR(MalformedSpec);
// gait engine
GAITSENSE_DEFINE_ERROR(UnstablePlan);
GAITSENSE_DEFINE_ERROR(TooFewContacts);
GAITSENSE_DEFINE_ERROR(InvalidParameter);
// simulator
GAITSENSE_DEFINE_ERROR(ScenarioError);
GAITSENSE_DEFINE_ERROR(InstabilityError);
// ground estimation
GAITSENSE_DEFINE_ERROR(NoContact);
GAITSENSE_DEFINE_ERROR(InsufficientHistory);
// strength analysis
GAITSENSE_DEFINE_ERROR(IntervalNotFound);
GAITSENSE_DEFINE_ERROR(TooFewSamples);
// rupture analysis
GAITSENSE_DEFINE_ERROR(SeriesTooShort);
// evaluation
GAITSENSE_DEFINE_ERROR(LengthMismatch);
GAITSENSE_DEFINE_ERROR(EmptyReport);
// files and configuration
GAITSENSE_DEFINE_ERROR(ConfigError);
GAITSENSE_DEFINE_ERROR(LogFormatError);
GAITSENSE_DEFINE_ERROR(InputMismatch);

#undef GAITSENSE_DEFINE_ERROR

}  // namespace gaitsense

#endif  // GAITSENSE_ERRORS_H_
