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

// Baseline sequential JPEG, 8-bit, 4:4:4, standard Huffman tables.
//
// Both directions use exact 64-bit integer DCT arithmetic with a single
// final rounding, so decoding is a pure function of the input bytes on every
// platform. The codec's losslessness depends on the encoder and decoder
// computing the same base-layer reconstruction.

#ifndef HDRPACK_JPEG_H_
#define HDRPACK_JPEG_H_

#include "hdrpack/byte_io.h"
#include "hdrpack/image.h"

namespace hdrpack {

struct JpegCodestream {
  Bytes bytes;
  int quality = 0;
};

// Emits SOI, APP0 (JFIF), DQT, SOF0, DHT, SOS, entropy data, EOI.
// `quality` is clamped to [0,100].
JpegCodestream JpegEncode(const LdrImage& ldr, int quality);

// Decodes baseline/extended-sequential Huffman streams with 8-bit samples,
// one or three components, all sampling factors 1, a single interleaved scan
// and optional restart intervals. APPn and COM segments are skipped. Other
// streams fail with kUnsupported; malformed ones with kCorruptStream.
LdrImage JpegDecode(ByteSpan bytes);

}  // namespace hdrpack

#endif  // HDRPACK_JPEG_H_
