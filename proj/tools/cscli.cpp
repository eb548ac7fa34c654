// Command-line front end: key generation, frame encode, decode at each
// authorization level, and measurement-rate sweeps in the three-column
// report layout. stdout carries data and paths; stderr carries diagnostics.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cscodec/errors.hpp"
#include "cscodec/keys.hpp"
#include "cscodec/mask_codec.hpp"
#include "cscodec/metrics.hpp"
#include "cscodec/pgm.hpp"
#include "cscodec/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitNotConverged = 5;

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cs::IoError("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return bytes;
}

void write_file_atomic(const std::string& path, const std::vector<uint8_t>& bytes) {
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw cs::IoError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw cs::IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw cs::IoError("cannot rename " + tmp.string() + " to " + path);
}

// Region list: one "x,y,w,h" per line, '#' comments, blank lines ignored.
std::vector<cs::Rect> parse_region_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cs::IoError("cannot open region file " + path);
  std::vector<cs::Rect> rects;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    long x, y, w, h;
    if (!(ss >> x >> y >> w >> h) || x < 0 || y < 0 || w < 0 || h < 0 ||
        x > 65535 || y > 65535 || w > 65535 || h > 65535) {
      throw cs::FormatError(path + ":" + std::to_string(lineno) + ": bad rect line");
    }
    rects.push_back(cs::Rect{static_cast<uint16_t>(x), static_cast<uint16_t>(y),
                             static_cast<uint16_t>(w), static_cast<uint16_t>(h)});
  }
  return rects;
}

std::string db_str(const std::optional<double>& v) {
  if (!v) return "n/a";
  if (std::isinf(*v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v);
  return buf;
}

void print_psnr_report(const cs::PsnrReport& report) {
  std::cout << "psnr_concealed_db " << db_str(report.concealed_db) << "\n";
  std::cout << "psnr_outside_db " << db_str(report.outside_db) << "\n";
  std::cout << "psnr_whole_db " << db_str(report.whole_db) << "\n";
}

struct KeygenArgs {
  std::string kind;
  uint64_t seed = 0;
  uint32_t n = 0;
  uint32_t m = 0;
  uint32_t t = 0;
  double mr = 0.0;
  double p = 0.5;
  std::string out;
};

int run_keygen(const KeygenArgs& args) {
  std::vector<uint8_t> bytes;
  if (args.kind == "a") {
    uint32_t m = args.m;
    if (m == 0) {
      if (!(args.mr > 0.0 && args.mr <= 1.0)) {
        std::cerr << "keygen: need --m or --mr in (0,1]\n";
        return kExitUsage;
      }
      m = static_cast<uint32_t>(std::lround(args.mr * args.n));
    }
    const cs::SensingKey key = cs::keygen_a(args.seed, args.n, m);
    bytes = cs::serialize_key(key);
    std::cout << "m " << key.m << "\n";
  } else if (args.kind == "b") {
    const cs::EmbeddingKey key = cs::keygen_b(args.seed, args.m, args.t);
    bytes = cs::serialize_key(key);
    std::cout << "t " << key.t << "\nP " << (key.m - key.t) << "\n";
  } else if (args.kind == "mask") {
    if (!(args.p >= 0.0 && args.p <= 1.0)) {
      std::cerr << "keygen: --p must be in [0,1]\n";
      return kExitUsage;
    }
    bytes = cs::serialize_key(cs::MaskSeed{args.seed, args.p});
  } else {
    std::cerr << "keygen: unknown kind '" << args.kind << "'\n";
    return kExitUsage;
  }
  write_file_atomic(args.out, bytes);
  std::cout << args.out << "\n";
  return 0;
}

struct EncodeArgs {
  std::string key_a, key_b, input, region, mask_key, out;
  uint64_t seed = 0;
  double p = 0.5;
  double ratio = cs::kDefaultEmbeddingRatio;
  int levels = 4;
};

int run_encode(const EncodeArgs& args) {
  const cs::SensingKey key_a = cs::deserialize_sensing_key(read_file(args.key_a));
  const cs::EmbeddingKey key_b = cs::deserialize_embedding_key(read_file(args.key_b));
  const cs::Frame frame = cs::read_pgm(args.input);
  std::vector<cs::Rect> rects;
  if (!args.region.empty()) rects = parse_region_file(args.region);
  cs::MaskSeed mask_seed{args.seed, args.p};
  if (!args.mask_key.empty()) mask_seed = cs::deserialize_mask_seed(read_file(args.mask_key));

  const cs::EncryptedPayload payload =
      cs::encode(frame, key_a, key_b, rects, mask_seed, args.ratio, args.levels);
  write_file_atomic(args.out, cs::serialize_payload(payload));
  std::cout << "region_size " << payload.region_size << "\n";
  std::cout << "amplitude " << payload.amplitude << "\n";
  std::cout << "ratio " << (payload.region_size > 0 ? args.ratio : 0.0) << "\n";
  std::cout << args.out << "\n";
  return 0;
}

struct DecodeArgs {
  std::string key_a, key_b, input, out, reference, level = "semi";
  uint64_t seed = 0;
};

int run_decode(const DecodeArgs& args) {
  const cs::EncryptedPayload payload = cs::deserialize_payload(read_file(args.input));

  cs::DecodeResult result;
  if (args.level == "semi") {
    const cs::SensingKey key_a = cs::deserialize_sensing_key(read_file(args.key_a));
    result = cs::decode_semi(payload, key_a);
  } else if (args.level == "full") {
    if (args.key_b.empty()) {
      std::cerr << "decode: --level full requires --key-b\n";
      return kExitUsage;
    }
    const cs::SensingKey key_a = cs::deserialize_sensing_key(read_file(args.key_a));
    const cs::EmbeddingKey key_b = cs::deserialize_embedding_key(read_file(args.key_b));
    result = cs::decode_full(payload, key_a, key_b);
  } else if (args.level == "eavesdrop") {
    result = cs::decode_eavesdrop(payload, args.seed);
  } else {
    std::cerr << "decode: unknown level '" << args.level << "'\n";
    return kExitUsage;
  }

  cs::write_pgm(args.out, result.image);
  std::cout << args.out << "\n";

  if (args.level == "full") {
    std::ostringstream mask;
    for (uint8_t f : result.flips.flags) mask << int(f) << "\n";
    const std::string mask_path = args.out + ".mask.txt";
    const std::string text = mask.str();
    write_file_atomic(mask_path, std::vector<uint8_t>(text.begin(), text.end()));
    std::cout << mask_path << "\n";
    std::cout << "ambiguous " << result.ambiguous << "\n";
  }

  if (!args.reference.empty()) {
    const cs::Frame ref = cs::read_pgm(args.reference);
    const cs::RegionSet region = cs::region_from_rects(
        payload.rects, payload.orig_w, payload.orig_h, payload.orig_w);
    print_psnr_report(cs::psnr_report(ref.pixels, result.image.pixels, payload.orig_w,
                                      payload.orig_h, region.indices));
  }

  for (const auto& report : result.reports) {
    if (!report.converged) {
      std::cerr << "decode: solver did not converge (" << report.iterations
                << " iterations, residual " << report.residual_norm << ")\n";
      return kExitNotConverged;
    }
  }
  return 0;
}

struct EvalArgs {
  std::string corpus, out;
  std::vector<double> mrs{0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  uint32_t t = 2048;
  double p = 0.5;
  double ratio = cs::kDefaultEmbeddingRatio;
  int levels = 4;
  uint64_t seed = 1;       // sensing key seed
  uint64_t seed_b = 2;     // embedding key seed
  uint64_t mask_seed = 3;
  int jobs = 1;
};

struct EvalRow {
  double mr = 0.0;
  double a_concealed = 0.0, a_outside = 0.0, a_whole = 0.0;
  double b_concealed = 0.0, b_outside = 0.0, b_whole = 0.0;
};

int run_eval(const EvalArgs& args) {
  std::vector<fs::path> frames;
  for (const auto& entry : fs::directory_iterator(args.corpus)) {
    if (entry.path().extension() == ".pgm") frames.push_back(entry.path());
  }
  std::sort(frames.begin(), frames.end());
  if (frames.empty()) {
    std::cerr << "eval: no .pgm frames in " << args.corpus << "\n";
    return kExitUsage;
  }

  struct FrameResult {
    bool ok = false;
    cs::PsnrReport semi, full;
  };
  // results[mr_index][frame_index]
  std::vector<std::vector<FrameResult>> results(
      args.mrs.size(), std::vector<FrameResult>(frames.size()));

  auto eval_frame = [&](size_t mi, size_t fi) {
    try {
      const cs::Frame frame = cs::read_pgm(frames[fi].string());
      fs::path rect_path = frames[fi];
      rect_path.replace_extension(".rects");
      std::vector<cs::Rect> rects;
      if (fs::exists(rect_path)) rects = parse_region_file(rect_path.string());

      const uint32_t side = cs::padded_side_for(frame.width, frame.height, args.levels);
      const uint32_t n = side * side;
      const auto m = static_cast<uint32_t>(std::lround(args.mrs[mi] * n));
      const cs::SensingKey key_a = cs::keygen_a(args.seed, n, m);
      const cs::EmbeddingKey key_b = cs::keygen_b(args.seed_b, m, args.t);

      const cs::EncryptedPayload payload = cs::encode(
          frame, key_a, key_b, rects, cs::MaskSeed{args.mask_seed, args.p}, args.ratio,
          args.levels);
      const cs::DecodeResult semi = cs::decode_semi(payload, key_a);
      const cs::DecodeResult full = cs::decode_full(payload, key_a, key_b);

      const cs::RegionSet region =
          cs::region_from_rects(rects, frame.width, frame.height, frame.width);
      FrameResult r;
      r.semi = cs::psnr_report(frame.pixels, semi.image.pixels, frame.width,
                               frame.height, region.indices);
      r.full = cs::psnr_report(frame.pixels, full.image.pixels, frame.width,
                               frame.height, region.indices);
      r.ok = true;
      results[mi][fi] = r;
    } catch (const std::exception& e) {
      std::cerr << "eval: " << frames[fi].filename().string() << " @ MR " << args.mrs[mi]
                << ": " << e.what() << "\n";
    }
  };

  std::vector<std::pair<size_t, size_t>> tasks;
  for (size_t mi = 0; mi < args.mrs.size(); ++mi) {
    for (size_t fi = 0; fi < frames.size(); ++fi) tasks.emplace_back(mi, fi);
  }
  const int jobs = std::max(1, args.jobs);
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  for (int j = 0; j < jobs; ++j) {
    workers.emplace_back([&] {
      for (;;) {
        const size_t k = next.fetch_add(1);
        if (k >= tasks.size()) return;
        eval_frame(tasks[k].first, tasks[k].second);
      }
    });
  }
  for (auto& w : workers) w.join();

  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };

  std::vector<EvalRow> rows;
  for (size_t mi = 0; mi < args.mrs.size(); ++mi) {
    std::vector<double> ac, ao, aw, bc, bo, bw;
    for (const FrameResult& r : results[mi]) {
      if (!r.ok) continue;
      if (r.semi.concealed_db) ac.push_back(*r.semi.concealed_db);
      if (r.full.concealed_db) bc.push_back(*r.full.concealed_db);
      ao.push_back(r.semi.outside_db);
      bo.push_back(r.full.outside_db);
      aw.push_back(r.semi.whole_db);
      bw.push_back(r.full.whole_db);
    }
    rows.push_back(EvalRow{args.mrs[mi], mean(ac), mean(ao), mean(aw), mean(bc),
                           mean(bo), mean(bw)});
  }

  std::ostringstream table, csv;
  table << "        Concealed Region    Outside Region      Whole Frame\n";
  table << "MRs     User A   User B     User A   User B     User A   User B\n";
  csv << "mr,user,concealed_db,outside_db,whole_db\n";
  for (const EvalRow& r : rows) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "%-7.2f %-8.2f %-10.2f %-8.2f %-10.2f %-8.2f %-8.2f\n", r.mr,
                  r.a_concealed, r.b_concealed, r.a_outside, r.b_outside, r.a_whole,
                  r.b_whole);
    table << line;
    char arow[128], brow[128];
    std::snprintf(arow, sizeof(arow), "%.2f,A,%.4f,%.4f,%.4f\n", r.mr, r.a_concealed,
                  r.a_outside, r.a_whole);
    std::snprintf(brow, sizeof(brow), "%.2f,B,%.4f,%.4f,%.4f\n", r.mr, r.b_concealed,
                  r.b_outside, r.b_whole);
    csv << arow << brow;
  }

  const std::string table_path = args.out + ".txt";
  const std::string csv_path = args.out + ".csv";
  const std::string t = table.str(), c = csv.str();
  write_file_atomic(table_path, std::vector<uint8_t>(t.begin(), t.end()));
  write_file_atomic(csv_path, std::vector<uint8_t>(c.begin(), c.end()));
  std::cout << table_path << "\n" << csv_path << "\n";
  std::cout << t;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressive sensing codec with reversible region concealment"};
  app.require_subcommand(1);

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "Generate a key file");
  keygen->add_option("--kind", kg.kind, "a | b | mask")->required();
  keygen->add_option("--seed", kg.seed, "key seed")->required();
  keygen->add_option("--n", kg.n, "signal length (power of two)");
  keygen->add_option("--m", kg.m, "measurement count");
  keygen->add_option("--mr", kg.mr, "measurement rate in (0,1], alternative to --m");
  keygen->add_option("--t", kg.t, "embedding capacity T");
  keygen->add_option("--p", kg.p, "mask survival probability");
  keygen->add_option("-o,--out", kg.out, "output key file")->required();

  EncodeArgs en;
  auto* encode = app.add_subcommand("encode", "Sense + encrypt + embed one frame");
  encode->add_option("--key-a", en.key_a, "sensing key file")->required();
  encode->add_option("--key-b", en.key_b, "embedding key file")->required();
  encode->add_option("-i,--input", en.input, "input P5 graymap")->required();
  encode->add_option("--region", en.region, "region list file (x,y,w,h per line)");
  encode->add_option("--mask-key", en.mask_key, "mask seed key file");
  encode->add_option("--seed", en.seed, "mask seed (when no --mask-key)");
  encode->add_option("--p", en.p, "mask survival probability");
  encode->add_option("--ratio", en.ratio, "embedding power ratio");
  encode->add_option("--levels", en.levels, "wavelet levels");
  encode->add_option("-o,--out", en.out, "output payload file")->required();

  DecodeArgs de;
  auto* decode = app.add_subcommand("decode", "Reconstruct a frame from a payload");
  decode->add_option("-i,--input", de.input, "payload file")->required();
  decode->add_option("--key-a", de.key_a, "sensing key file");
  decode->add_option("--key-b", de.key_b, "embedding key file");
  decode->add_option("--level", de.level, "semi | full | eavesdrop");
  decode->add_option("--seed", de.seed, "wrong seed for eavesdrop decode");
  decode->add_option("--reference", de.reference, "reference P5 for PSNR report");
  decode->add_option("-o,--out", de.out, "output P5 graymap")->required();

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Sweep measurement rates over a corpus");
  eval->add_option("--corpus", ev.corpus, "directory of .pgm frames (+ .rects)")->required();
  eval->add_option("--mrs", ev.mrs, "measurement rates to sweep");
  eval->add_option("--t", ev.t, "embedding capacity T");
  eval->add_option("--p", ev.p, "mask survival probability");
  eval->add_option("--ratio", ev.ratio, "embedding power ratio");
  eval->add_option("--levels", ev.levels, "wavelet levels");
  eval->add_option("--seed", ev.seed, "sensing key seed");
  eval->add_option("--seed-b", ev.seed_b, "embedding key seed");
  eval->add_option("--mask-seed", ev.mask_seed, "mask seed");
  eval->add_option("--jobs", ev.jobs, "parallel frame workers");
  eval->add_option("-o,--out", ev.out, "report path prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*keygen) return run_keygen(kg);
    if (*encode) return run_encode(en);
    if (*decode) return run_decode(de);
    if (*eval) return run_eval(ev);
  } catch (const cs::CapacityExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const cs::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const cs::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
