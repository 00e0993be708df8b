// Copyright 2023 The Authors.
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

#ifndef FLATGEOM_ERROR_H_
#define FLATGEOM_ERROR_H_

#include <stdexcept>
#include <string>

namespace flatgeom {

// Values match fg_status in flatgeom.h.
enum class ErrorCode {
  kInvalidArgument = 1,
  kParse = 2,
  kInvalidElement = 3,
  kGroundTooLarge = 4,
  kNoLargeCircuit = 5,
  kNotIndependent = 6,
  kEmptyCollection = 7,
  kInvalidSequence = 8,
  kInvalidConfig = 9,
  kNotExtendable = 10,
  kIncoherentSchedule = 11,
  kProfileInvalid = 12,
  kInvalidStructure = 13,
  kInternal = 14,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flatgeom

#endif  // FLATGEOM_ERROR_H_
