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

#include "hdrpack/error.h"

namespace hdrpack {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kMalformedInput: return "malformed-input";
    case ErrorCode::kCorruptStream: return "corrupt-stream";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kChecksum: return "checksum";
    case ErrorCode::kMismatch: return "mismatch";
  }
  return "unknown";
}

void Fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace hdrpack
