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

#include "hdrpack/histogram_pack.h"

#include <algorithm>
#include <numeric>

#include "hdrpack/error.h"

namespace hdrpack {
namespace {

// Ranges up to this many values are counted and looked up densely.
constexpr int64_t kDenseRangeLimit = int64_t{1} << 24;

}  // namespace

SparseHistogram::SparseHistogram(std::vector<Bin> bins) : bins_(std::move(bins)) {
  for (size_t i = 0; i < bins_.size(); ++i) {
    CheckArg(bins_[i].count > 0, "histogram bins must have positive counts");
    CheckArg(i == 0 || bins_[i - 1].value < bins_[i].value,
             "histogram bins must be strictly increasing");
  }
}

uint64_t SparseHistogram::total() const {
  return std::accumulate(bins_.begin(), bins_.end(), uint64_t{0},
                         [](uint64_t acc, const Bin& b) { return acc + b.count; });
}

uint64_t SparseHistogram::count(int32_t value) const {
  auto it = std::lower_bound(bins_.begin(), bins_.end(), value,
                             [](const Bin& b, int32_t v) { return b.value < v; });
  return (it != bins_.end() && it->value == value) ? it->count : 0;
}

SparseHistogram BuildHistogram(std::span<const int32_t> samples) {
  CheckArg(!samples.empty(), "cannot build a histogram of an empty plane");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const int64_t lo = *lo_it;
  const int64_t range = int64_t{*hi_it} - lo + 1;

  std::vector<SparseHistogram::Bin> bins;
  if (range <= kDenseRangeLimit) {
    std::vector<uint64_t> counts(static_cast<size_t>(range), 0);
    for (int32_t s : samples) ++counts[static_cast<size_t>(s - lo)];
    for (int64_t i = 0; i < range; ++i) {
      if (counts[i] != 0) bins.push_back({static_cast<int32_t>(lo + i), counts[i]});
    }
  } else {
    std::vector<int32_t> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size();) {
      size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      bins.push_back({sorted[i], j - i});
      i = j;
    }
  }
  return SparseHistogram(std::move(bins));
}

SparsenessReport Sparseness(const SparseHistogram& h) {
  CheckArg(!h.empty(), "sparseness of an empty histogram is undefined");
  SparsenessReport r;
  r.occupied = h.occupied();
  r.range = static_cast<uint64_t>(int64_t{h.max_value()} - h.min_value() + 1);
  r.alpha = static_cast<double>(r.occupied) / static_cast<double>(r.range);
  return r;
}

PackingMap::PackingMap(const UnpackingTable& table) : sorted_(table.values) {
  for (size_t i = 1; i < sorted_.size(); ++i) {
    CheckArg(sorted_[i - 1] < sorted_[i], "unpacking table must be strictly increasing");
  }
  if (sorted_.empty()) return;
  base_ = sorted_.front();
  const int64_t range = int64_t{sorted_.back()} - base_ + 1;
  if (range <= kDenseRangeLimit) {
    dense_.assign(static_cast<size_t>(range), kAbsent);
    for (size_t i = 0; i < sorted_.size(); ++i) {
      dense_[static_cast<size_t>(sorted_[i] - base_)] = static_cast<uint32_t>(i);
    }
  }
}

bool PackingMap::Lookup(int32_t value, uint32_t* index) const {
  if (!dense_.empty()) {
    const int64_t off = int64_t{value} - base_;
    if (off < 0 || off >= static_cast<int64_t>(dense_.size())) return false;
    const uint32_t i = dense_[static_cast<size_t>(off)];
    if (i == kAbsent) return false;
    *index = i;
    return true;
  }
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), value);
  if (it == sorted_.end() || *it != value) return false;
  *index = static_cast<uint32_t>(it - sorted_.begin());
  return true;
}

std::pair<PackingMap, UnpackingTable> BuildPacking(const SparseHistogram& h) {
  CheckArg(!h.empty(), "cannot pack an empty histogram");
  // Walking the occupied values in increasing order, each one receives the
  // previous index plus one; unoccupied gaps contribute nothing.
  UnpackingTable table;
  table.values.reserve(h.occupied());
  for (const auto& bin : h.bins()) table.values.push_back(bin.value);
  PackingMap map(table);
  return {std::move(map), std::move(table)};
}

IndexPlane PackPlane(const PlaneI32& plane, const PackingMap& map) {
  IndexPlane out(plane.width(), plane.height());
  auto dst = out.samples();
  auto src = plane.samples();
  for (size_t i = 0; i < src.size(); ++i) {
    if (!map.Lookup(src[i], &dst[i])) {
      Fail(ErrorCode::kInvalidArgument, "plane value absent from packing map");
    }
  }
  return out;
}

PlaneI32 UnpackPlane(const IndexPlane& index, const UnpackingTable& table) {
  PlaneI32 out(index.width(), index.height());
  auto dst = out.samples();
  auto src = index.samples();
  const size_t n = table.size();
  for (size_t i = 0; i < src.size(); ++i) {
    CheckStream(src[i] < n, "index exceeds unpacking table");
    dst[i] = table.values[src[i]];
  }
  return out;
}

}  // namespace hdrpack
