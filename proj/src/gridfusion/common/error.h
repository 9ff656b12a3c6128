/*
 * Copyright 2026 The Gridfusion Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GRIDFUSION_COMMON_ERROR_H_
#define GRIDFUSION_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace gridfusion {

// Mirrors gf_status in the C API; the values must stay in sync.
enum class ErrorCode {
  kInvalidArgument = 1,
  kGeometryMismatch = 2,
  kParse = 3,
  kIo = 4,
  kNumeric = 5,
  kScenarioMismatch = 6,
  kUndefined = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gridfusion

#endif  // GRIDFUSION_COMMON_ERROR_H_
