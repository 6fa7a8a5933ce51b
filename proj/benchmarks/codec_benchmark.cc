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

#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "hdrpack/backend.h"
#include "hdrpack/codec.h"
#include "hdrpack/half.h"
#include "hdrpack/histogram_pack.h"
#include "hdrpack/jpeg.h"
#include "hdrpack/tone_map.h"

namespace hdrpack {
namespace {

// Smooth HDR scene over ~12 stops with mild noise.
HdrImage SyntheticHdr(uint32_t side) {
  std::mt19937_64 rng(1);
  std::normal_distribution<float> noise(1.0f, 0.01f);
  HdrImage img = HdrImage::Make(side, side, PixelType::kHalfFloat, 16);
  for (int c = 0; c < kNumComponents; ++c) {
    for (uint32_t y = 0; y < side; ++y) {
      for (uint32_t x = 0; x < side; ++x) {
        const float t = static_cast<float>(x + y) / (2.0f * side);
        const float v = std::exp2(12.0f * t - 6.0f) * (0.6f + 0.4f * std::sin(0.05f * x + c)) * noise(rng);
        img.planes[c].at(x, y) = HalfToCode(FloatToHalf(std::max(v, 0.0f)));
      }
    }
  }
  return img;
}

void BM_Encode(benchmark::State& state) {
  const HdrImage img = SyntheticHdr(static_cast<uint32_t>(state.range(0)));
  EncodeParams params;
  params.quality = static_cast<int>(state.range(1));
  size_t bytes = 0;
  for (auto _ : state) {
    const EncodeResult r = Encode(img, params);
    bytes = r.container.size();
    benchmark::DoNotOptimize(bytes);
  }
  state.SetItemsProcessed(state.iterations() * img.width * img.height);
  state.counters["bpp"] = 8.0 * static_cast<double>(bytes) / (img.width * img.height);
}
BENCHMARK(BM_Encode)->Args({256, 80})->Args({512, 80})->Args({512, 20})->Unit(benchmark::kMillisecond);

void BM_Decode(benchmark::State& state) {
  const HdrImage img = SyntheticHdr(static_cast<uint32_t>(state.range(0)));
  const Bytes container = Encode(img).container;
  for (auto _ : state) benchmark::DoNotOptimize(Decode(container));
  state.SetItemsProcessed(state.iterations() * img.width * img.height);
}
BENCHMARK(BM_Decode)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_JpegEncode(benchmark::State& state) {
  const HdrImage hdr = SyntheticHdr(512);
  const LdrImage ldr = ToneMap(hdr, BuildToneMap(hdr));
  for (auto _ : state) benchmark::DoNotOptimize(JpegEncode(ldr, 80));
  state.SetItemsProcessed(state.iterations() * ldr.width * ldr.height);
}
BENCHMARK(BM_JpegEncode)->Unit(benchmark::kMillisecond);

void BM_JpegDecode(benchmark::State& state) {
  const HdrImage hdr = SyntheticHdr(512);
  const Bytes jpeg = JpegEncode(ToneMap(hdr, BuildToneMap(hdr)), 80).bytes;
  for (auto _ : state) benchmark::DoNotOptimize(JpegDecode(jpeg));
  state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(BM_JpegDecode)->Unit(benchmark::kMillisecond);

void BM_BuildPacking(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<int32_t> samples(512 * 512);
  for (auto& s : samples) s = static_cast<int32_t>(rng() % 20000) * 3 - 30000;
  for (auto _ : state) {
    const SparseHistogram h = BuildHistogram(samples);
    benchmark::DoNotOptimize(BuildPacking(h));
  }
  state.SetItemsProcessed(state.iterations() * samples.size());
}
BENCHMARK(BM_BuildPacking)->Unit(benchmark::kMillisecond);

void BM_Backend(benchmark::State& state) {
  IndexPlane p(512, 512);
  for (uint32_t y = 0; y < 512; ++y) {
    for (uint32_t x = 0; x < 512; ++x) p.at(x, y) = 2000 + 3 * x + 2 * y + (x * y) % 7;
  }
  const auto id = static_cast<BackendId>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(DecodePlane(EncodePlane(p, id)));
  state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(BM_Backend)
    ->Arg(static_cast<int>(BackendId::kStore))
    ->Arg(static_cast<int>(BackendId::kMedRice))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace hdrpack

BENCHMARK_MAIN();
