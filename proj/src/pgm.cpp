#include "cscodec/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cscodec/errors.hpp"

namespace cs {

namespace {

// Skips whitespace and '#' comment lines between header tokens.
int next_token(std::istream& in) {
  std::string tok;
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    break;
  }
  if (!(in >> tok)) throw FormatError("pgm: truncated header");
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw FormatError("pgm: bad header token '" + tok + "'");
  }
}

}  // namespace

Frame read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5') throw FormatError("pgm: not a P5 file: " + path);
  const int width = next_token(in);
  const int height = next_token(in);
  const int maxval = next_token(in);
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535) {
    throw FormatError("pgm: bad dimensions in " + path);
  }
  in.get();  // single whitespace after maxval

  Frame frame;
  frame.width = static_cast<uint32_t>(width);
  frame.height = static_cast<uint32_t>(height);
  const size_t n = static_cast<size_t>(width) * height;
  frame.pixels.resize(n);
  const int bytes_per = maxval > 255 ? 2 : 1;
  std::vector<uint8_t> raw(n * bytes_per);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw FormatError("pgm: truncated pixel data in " + path);
  }
  for (size_t i = 0; i < n; ++i) {
    const int v = bytes_per == 1 ? raw[i] : (raw[2 * i] << 8) | raw[2 * i + 1];
    frame.pixels[i] = static_cast<double>(v) / maxval;
  }
  return frame;
}

void write_pgm(const std::string& path, const Frame& frame, int maxval) {
  if (maxval <= 0 || maxval > 65535) throw InvalidDimensions("pgm: bad maxval");
  if (frame.pixels.size() != static_cast<size_t>(frame.width) * frame.height) {
    throw LengthMismatch("pgm: pixel count does not match dimensions");
  }
  std::ostringstream out;
  out << "P5\n" << frame.width << " " << frame.height << "\n" << maxval << "\n";
  const int bytes_per = maxval > 255 ? 2 : 1;
  for (double v : frame.pixels) {
    const double clipped = std::clamp(v, 0.0, 1.0);
    const int q = static_cast<int>(std::lround(clipped * maxval));
    if (bytes_per == 2) out.put(static_cast<char>((q >> 8) & 0xff));
    out.put(static_cast<char>(q & 0xff));
  }

  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + tmp.string());
    const std::string data = out.str();
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path);
}

}  // namespace cs
