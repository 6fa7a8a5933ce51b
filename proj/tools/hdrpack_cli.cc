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

// hdrpack command-line tool. Exit status is 0 on success, otherwise the
// numeric ErrorCode of the failure (2 for usage errors).

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "hdrpack/codec.h"
#include "hdrpack/container.h"
#include "hdrpack/error.h"
#include "hdrpack/image_io.h"
#include "hdrpack/tone_map.h"

namespace hdrpack {
namespace {

using nlohmann::json;

struct InputOptions {
  std::string format;  // empty: from the file extension
  bool allow_nan = false;
  uint32_t width = 0;
  uint32_t height = 0;
  int channels = 3;
  int bit_depth = 16;
  std::string pixel_type = "integer";
};

struct CodecOptions {
  int quality = kDefaultQuality;
  std::string backend = "medrice";
  std::string color = "rct";
  bool no_verify = false;
};

void AddInputOptions(CLI::App* cmd, InputOptions* o) {
  cmd->add_option("--format", o->format, "Input format: pfm, ppm16, pgm16, raw");
  cmd->add_flag("--allow-nan", o->allow_nan, "Accept NaN samples in PFM input");
  cmd->add_option("--width", o->width, "Raw input width");
  cmd->add_option("--height", o->height, "Raw input height");
  cmd->add_option("--channels", o->channels, "Raw input channels (1 or 3)")->check(CLI::IsMember({1, 3}));
  cmd->add_option("--bit-depth", o->bit_depth, "Raw input bit depth")->check(CLI::Range(1, 16));
  cmd->add_option("--pixel-type", o->pixel_type, "Raw input pixel type")
      ->check(CLI::IsMember({"integer", "half"}));
}

void AddCodecOptions(CLI::App* cmd, CodecOptions* o) {
  cmd->add_option("--q", o->quality, "Base-layer JPEG quality")->check(CLI::Range(0, 100));
  cmd->add_option("--backend", o->backend, "Lossless backend")
      ->check(CLI::IsMember({"store", "medrice"}));
  cmd->add_option("--color", o->color, "Residual colour transform")
      ->check(CLI::IsMember({"identity", "rct"}));
  cmd->add_flag("--no-verify", o->no_verify, "Skip the decode-and-compare check");
}

ImageFormat ResolveFormat(const std::string& flag, const std::string& path) {
  if (!flag.empty()) {
    const auto f = ParseImageFormat(flag);
    if (!f) Fail(ErrorCode::kInvalidArgument, "unknown format '" + flag + "'");
    return *f;
  }
  const auto f = ImageFormatFromPath(path);
  if (!f) Fail(ErrorCode::kInvalidArgument, "cannot infer image format of " + path + "; use --format");
  return *f;
}

HdrImage LoadImage(const std::string& path, const InputOptions& o) {
  ReadOptions ro;
  ro.allow_nan = o.allow_nan;
  ro.width = o.width;
  ro.height = o.height;
  ro.channels = o.channels;
  ro.bit_depth = o.bit_depth;
  ro.pixel_type = o.pixel_type == "half" ? PixelType::kHalfFloat : PixelType::kInteger;
  return ReadImage(path, ResolveFormat(o.format, path), ro);
}

EncodeParams ToParams(const CodecOptions& o) {
  EncodeParams p;
  p.quality = o.quality;
  p.backend = *ParseBackend(o.backend);
  p.transform = o.color == "rct" ? ColorTransform::kReversibleYCbCr : ColorTransform::kIdentity;
  return p;
}

std::string DescribeDifference(const Comparison& cmp) {
  if (cmp.shape_mismatch) return "image shape or pixel type differs";
  const SampleDifference& d = *cmp.first_difference;
  std::ostringstream os;
  os << "first difference at component " << d.component << " (x=" << d.x << ", y=" << d.y
     << "): expected " << d.expected << ", got " << d.actual;
  return os.str();
}

// Decodes `container` and requires bit-exact equality with `original`.
void VerifyOrThrow(const HdrImage& original, const Bytes& container) {
  const Comparison cmp = CompareImages(original, Decode(container));
  if (!cmp.equal) Fail(ErrorCode::kMismatch, "lossless verification failed: " + DescribeDifference(cmp));
}

// Writes to `path`, or stdout when it is empty or "-".
void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot create " + path);
  out << text;
  if (!out) Fail(ErrorCode::kIo, "write error on " + path);
}

std::string Fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// The bpp columns partition the total: base + extension + table + overhead.
json StatsJson(const std::string& name, const EncodeStats& s, const EncodeParams& p) {
  json j;
  j["image"] = name;
  j["width"] = s.width;
  j["height"] = s.height;
  j["q"] = s.quality;
  j["backend"] = BackendName(p.backend);
  j["color"] = p.transform == ColorTransform::kReversibleYCbCr ? "rct" : "identity";
  j["bytes"] = {{"total", s.total_bytes},
                {"base", s.base_bytes},
                {"extension", s.plane_bytes},
                {"tables", s.table_bytes},
                {"overhead", s.overhead_bytes}};
  j["bpp"] = {{"total", s.Bpp(s.total_bytes)},
              {"base", s.Bpp(s.base_bytes)},
              {"extension", s.Bpp(s.plane_bytes)},
              {"tables", s.Bpp(s.table_bytes)},
              {"overhead", s.Bpp(s.overhead_bytes)}};
  j["table_ratio_pct"] = s.TableRatioPercent();
  static const char* kNames[] = {"Y", "Cb", "Cr"};
  static const char* kRgb[] = {"R", "G", "B"};
  json comps = json::array();
  for (int c = 0; c < kNumComponents; ++c) {
    const ComponentStats& cs = s.components[c];
    comps.push_back({
        {"component", p.transform == ColorTransform::kReversibleYCbCr ? kNames[c] : kRgb[c]},
        {"pre", {{"occupied", cs.before.occupied}, {"range", cs.before.range}, {"alpha", cs.before.alpha}}},
        {"post", {{"occupied", cs.after.occupied}, {"range", cs.after.range}, {"alpha", cs.after.alpha}}},
        {"table_bytes", cs.table_bytes},
        {"plane_bytes", cs.plane_bytes},
        {"store_packed_bytes", cs.store_packed_bytes},
        {"store_unpacked_bytes", cs.store_unpacked_bytes},
    });
  }
  j["components"] = comps;
  return j;
}

constexpr const char* kStatsCsvHeader =
    "image,q,backend,color,component,occupied_pre,range_pre,alpha_pre,occupied_post,range_post,"
    "alpha_post,table_bytes,plane_bytes,store_packed_bytes,store_unpacked_bytes,base_bpp,"
    "extension_bpp,table_bpp,overhead_bpp,total_bpp,table_ratio_pct\n";

std::string StatsCsvRows(const json& j) {
  std::ostringstream os;
  for (const json& c : j["components"]) {
    os << j["image"].get<std::string>() << ',' << j["q"].get<int>() << ','
       << j["backend"].get<std::string>() << ',' << j["color"].get<std::string>() << ','
       << c["component"].get<std::string>() << ',' << c["pre"]["occupied"].get<uint64_t>() << ','
       << c["pre"]["range"].get<uint64_t>() << ',' << Fixed(c["pre"]["alpha"].get<double>()) << ','
       << c["post"]["occupied"].get<uint64_t>() << ',' << c["post"]["range"].get<uint64_t>() << ','
       << Fixed(c["post"]["alpha"].get<double>()) << ',' << c["table_bytes"].get<uint64_t>() << ','
       << c["plane_bytes"].get<uint64_t>() << ',' << c["store_packed_bytes"].get<uint64_t>() << ','
       << c["store_unpacked_bytes"].get<uint64_t>() << ',' << Fixed(j["bpp"]["base"].get<double>())
       << ',' << Fixed(j["bpp"]["extension"].get<double>()) << ','
       << Fixed(j["bpp"]["tables"].get<double>()) << ',' << Fixed(j["bpp"]["overhead"].get<double>())
       << ',' << Fixed(j["bpp"]["total"].get<double>()) << ','
       << Fixed(j["table_ratio_pct"].get<double>()) << '\n';
  }
  return os.str();
}

std::string StatsText(const json& j) {
  std::ostringstream os;
  os << j["image"].get<std::string>() << ": " << j["width"] << "x" << j["height"] << ", q=" << j["q"]
     << ", backend=" << j["backend"].get<std::string>() << ", color=" << j["color"].get<std::string>()
     << "\n";
  os << "  total " << j["bytes"]["total"] << " bytes, " << Fixed(j["bpp"]["total"].get<double>(), 4)
     << " bpp (base " << Fixed(j["bpp"]["base"].get<double>(), 4) << ", extension "
     << Fixed(j["bpp"]["extension"].get<double>(), 4) << ", tables "
     << Fixed(j["bpp"]["tables"].get<double>(), 4) << ", overhead "
     << Fixed(j["bpp"]["overhead"].get<double>(), 4) << ")\n";
  os << "  table ratio " << Fixed(j["table_ratio_pct"].get<double>(), 4) << "%\n";
  for (const json& c : j["components"]) {
    os << "  " << c["component"].get<std::string>() << ": |X|=" << c["pre"]["occupied"]
       << " D=" << c["pre"]["range"] << " alpha=" << Fixed(c["pre"]["alpha"].get<double>(), 4)
       << " -> alpha=" << Fixed(c["post"]["alpha"].get<double>(), 4) << ", table "
       << c["table_bytes"] << " B, plane " << c["plane_bytes"] << " B\n";
  }
  return os.str();
}

std::string BaseName(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

// --- subcommands -----------------------------------------------------------

int CmdEncode(const std::string& in, const std::string& out, const InputOptions& io,
              const CodecOptions& co, bool as_json) {
  const HdrImage img = LoadImage(in, io);
  const EncodeParams params = ToParams(co);
  const EncodeResult r = Encode(img, params);
  if (!co.no_verify) VerifyOrThrow(img, r.container);
  WriteFile(out, r.container);
  const json j = StatsJson(BaseName(in), r.stats, params);
  std::cout << (as_json ? j.dump(2) + "\n" : StatsText(j));
  return 0;
}

int CmdDecode(const std::string& in, const std::string& out, const std::string& format) {
  const HdrImage img = Decode(ReadFile(in));
  WriteImage(img, out, ResolveFormat(format, out));
  return 0;
}

int CmdVerify(const std::string& original, const std::string& container, const InputOptions& io) {
  const HdrImage img = LoadImage(original, io);
  const Comparison cmp = CompareImages(img, Decode(ReadFile(container)));
  if (cmp.equal) {
    std::cout << "PASS: " << container << " decodes bit-exactly to " << original << "\n";
    return 0;
  }
  std::cout << "FAIL: " << DescribeDifference(cmp) << "\n";
  return static_cast<int>(ErrorCode::kMismatch);
}

int CmdStrip(const std::string& in, const std::string& out) {
  WriteFile(out, StripExtension(ReadFile(in)));
  return 0;
}

int CmdInspect(const std::string& in, bool as_json) {
  const Bytes file = ReadFile(in);
  const Demuxed d = Demux(file);
  const ExtensionHeader& h = d.header;
  json j;
  j["file_bytes"] = file.size();
  j["base_bytes"] = d.jpeg.size();
  j["payload_bytes"] = d.payload_size;
  j["chunks"] = d.chunk_count;
  j["version"] = h.version;
  j["pixel_type"] = h.pixel_type == PixelType::kHalfFloat ? "half" : "integer";
  j["bit_depth"] = h.bit_depth;
  j["width"] = h.width;
  j["height"] = h.height;
  j["q"] = h.quality;
  j["color"] = h.transform == ColorTransform::kReversibleYCbCr ? "rct" : "identity";
  j["backend"] = BackendName(h.backend);
  j["table_compressor"] = static_cast<int>(h.table_compressor);
  j["base_crc"] = h.base_crc;
  j["image_crc"] = h.image_crc;
  static const char* kParts[] = {"curve", "table0", "table1", "table2", "plane0", "plane1", "plane2"};
  json dir = json::array();
  for (size_t i = 0; i < d.directory.size(); ++i) {
    dir.push_back({{"part", kParts[i]}, {"offset", d.directory[i].offset}, {"length", d.directory[i].length}});
  }
  j["directory"] = dir;
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << in << ": " << h.width << "x" << h.height << " " << j["pixel_type"].get<std::string>()
            << " " << int{h.bit_depth} << "-bit, q=" << int{h.quality} << ", color="
            << j["color"].get<std::string>() << ", backend=" << j["backend"].get<std::string>() << "\n"
            << "  file " << file.size() << " B, base layer " << d.jpeg.size() << " B, extension payload "
            << d.payload_size << " B in " << d.chunk_count << " APP11 chunk(s)\n";
  for (const json& e : dir) {
    std::cout << "  " << e["part"].get<std::string>() << ": offset " << e["offset"] << ", " << e["length"]
              << " B\n";
  }
  return 0;
}

int CmdStats(const std::vector<std::string>& inputs, const InputOptions& io, const CodecOptions& co,
             const std::string& csv, bool as_json) {
  const EncodeParams params = ToParams(co);
  std::string csv_text = kStatsCsvHeader;
  json all = json::array();
  for (const std::string& in : inputs) {
    const HdrImage img = LoadImage(in, io);
    const EncodeResult r = Encode(img, params);
    if (!co.no_verify) VerifyOrThrow(img, r.container);
    const json j = StatsJson(BaseName(in), r.stats, params);
    csv_text += StatsCsvRows(j);
    all.push_back(j);
  }
  if (as_json) {
    Emit(csv, all.dump(2) + "\n");
  } else {
    Emit(csv, csv_text);
  }
  return 0;
}

constexpr const char* kSweepCsvHeader =
    "image,backend,color,q,total_bytes,base_bytes,extension_bytes,table_bytes,overhead_bytes,"
    "total_bpp,base_bpp,extension_bpp,table_bpp,overhead_bpp,table_ratio_pct,verified\n";

std::vector<int> ParseQList(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v < 0 || v > 100) Fail(ErrorCode::kInvalidArgument, "bad q value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) Fail(ErrorCode::kInvalidArgument, "empty q list");
  return out;
}

int CmdSweep(const std::vector<std::string>& inputs, const InputOptions& io, const CodecOptions& co,
             const std::string& q_list, const std::vector<std::string>& backends, const std::string& csv,
             unsigned threads) {
  const std::vector<int> qs = ParseQList(q_list);
  struct Point {
    size_t image;
    std::string backend;
    int q;
  };
  std::vector<HdrImage> images;
  for (const std::string& in : inputs) images.push_back(LoadImage(in, io));
  std::vector<Point> points;
  for (size_t i = 0; i < images.size(); ++i) {
    for (const std::string& b : backends) {
      for (int q : qs) points.push_back({i, b, q});
    }
  }

  std::vector<std::string> rows(points.size());
  std::atomic<size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr first_error;
  auto worker = [&] {
    while (true) {
      const size_t k = next.fetch_add(1);
      if (k >= points.size()) return;
      try {
        const Point& pt = points[k];
        CodecOptions o = co;
        o.backend = pt.backend;
        o.quality = pt.q;
        const EncodeParams params = ToParams(o);
        const EncodeResult r = Encode(images[pt.image], params);
        if (!co.no_verify) VerifyOrThrow(images[pt.image], r.container);
        const EncodeStats& s = r.stats;
        std::ostringstream os;
        os << BaseName(inputs[pt.image]) << ',' << pt.backend << ',' << co.color << ',' << pt.q << ','
           << s.total_bytes << ',' << s.base_bytes << ',' << s.plane_bytes << ',' << s.table_bytes << ','
           << s.overhead_bytes << ',' << Fixed(s.Bpp(s.total_bytes)) << ',' << Fixed(s.Bpp(s.base_bytes))
           << ',' << Fixed(s.Bpp(s.plane_bytes)) << ',' << Fixed(s.Bpp(s.table_bytes)) << ','
           << Fixed(s.Bpp(s.overhead_bytes)) << ',' << Fixed(s.TableRatioPercent()) << ','
           << (co.no_verify ? 0 : 1) << '\n';
        rows[k] = os.str();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        next = points.size();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::string text = kSweepCsvHeader;
  for (const std::string& r : rows) text += r;
  Emit(csv, text);
  return 0;
}

int Run(int argc, char** argv) {
  CLI::App app{"hdrpack: two-layer lossless HDR image codec with histogram packing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hdrpack 0.1.0");

  InputOptions io;
  CodecOptions co;
  std::string in, out, second, format, csv, q_list = "0,10,20,30,40,50,60,70,80,90,100";
  std::vector<std::string> inputs;
  std::vector<std::string> backends = {"medrice"};
  bool as_json = false;
  unsigned threads = 0;

  auto* encode = app.add_subcommand("encode", "Encode an HDR image into a container");
  encode->add_option("input", in, "Input image")->required();
  encode->add_option("output", out, "Output container")->required();
  AddInputOptions(encode, &io);
  AddCodecOptions(encode, &co);
  encode->add_flag("--json", as_json, "Print the stats report as JSON");

  auto* decode = app.add_subcommand("decode", "Decode a container to an HDR image");
  decode->add_option("input", in, "Input container")->required();
  decode->add_option("output", out, "Output image")->required();
  decode->add_option("--format", format, "Output format: pfm, ppm16, pgm16, raw");

  auto* verify = app.add_subcommand("verify", "Check that a container decodes to an image bit-exactly");
  verify->add_option("original", in, "Original image")->required();
  verify->add_option("container", second, "Container")->required();
  AddInputOptions(verify, &io);

  auto* strip = app.add_subcommand("strip", "Remove the extension layer, leaving a plain JPEG");
  strip->add_option("input", in, "Input container")->required();
  strip->add_option("output", out, "Output JPEG")->required();

  auto* inspect = app.add_subcommand("inspect", "Print container header and directory");
  inspect->add_option("input", in, "Input container")->required();
  inspect->add_flag("--json", as_json, "JSON output");

  auto* stats = app.add_subcommand("stats", "Per-component sparseness and bitrate report");
  stats->add_option("inputs", inputs, "Input images")->required();
  AddInputOptions(stats, &io);
  AddCodecOptions(stats, &co);
  stats->add_option("--csv", csv, "Write the report here instead of stdout");
  stats->add_flag("--json", as_json, "JSON instead of CSV");

  auto* sweep = app.add_subcommand("sweep", "Bitrate versus quality sweep as CSV");
  sweep->add_option("inputs", inputs, "Input images")->required();
  AddInputOptions(sweep, &io);
  AddCodecOptions(sweep, &co);
  sweep->add_option("--q-list", q_list, "Comma-separated qualities")->capture_default_str();
  sweep->add_option("--backends", backends, "Backends to sweep")
      ->delimiter(',')
      ->check(CLI::IsMember({"store", "medrice"}));
  sweep->add_option("--csv", csv, "Write the CSV here instead of stdout");
  sweep->add_option("--threads", threads, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorCode::kInvalidArgument);
  }

  try {
    if (*encode) return CmdEncode(in, out, io, co, as_json);
    if (*decode) return CmdDecode(in, out, format);
    if (*verify) return CmdVerify(in, second, io);
    if (*strip) return CmdStrip(in, out);
    if (*inspect) return CmdInspect(in, as_json);
    if (*stats) return CmdStats(inputs, io, co, csv, as_json);
    if (*sweep) return CmdSweep(inputs, io, co, q_list, backends, csv, threads);
  } catch (const Error& e) {
    std::cerr << "hdrpack: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    std::cerr << "hdrpack: out of memory\n";
    return static_cast<int>(ErrorCode::kCorruptStream);
  }
  return static_cast<int>(ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace hdrpack

int main(int argc, char** argv) { return hdrpack::Run(argc, argv); }
