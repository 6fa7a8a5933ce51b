// Copyright 2026 The hdrpack Authors.
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

#ifndef HDRPACK_ERROR_H_
#define HDRPACK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdrpack {

// Every failure raised by the library carries one of these classes. The
// numeric values double as process exit codes for the command-line tool.
enum class ErrorCode : int {
  kInvalidArgument = 2,  // caller violated a precondition
  kIo = 3,               // file could not be opened, read or written
  kMalformedInput = 4,   // interchange image file does not parse
  kCorruptStream = 5,    // codestream is truncated or internally inconsistent
  kUnsupported = 6,      // recognised but unimplemented feature or id
  kChecksum = 7,         // CRC mismatch
  kMismatch = 8,         // verification found a differing sample
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& what);

// Throws kCorruptStream unless `cond` holds.
inline void CheckStream(bool cond, const char* what) {
  if (!cond) Fail(ErrorCode::kCorruptStream, what);
}

inline void CheckArg(bool cond, const char* what) {
  if (!cond) Fail(ErrorCode::kInvalidArgument, what);
}

}  // namespace hdrpack

#endif  // HDRPACK_ERROR_H_
