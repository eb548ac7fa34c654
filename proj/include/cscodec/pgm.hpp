#pragma once

#include <cstdint>
#include <string>

#include "cscodec/transforms.hpp"

namespace cs {

// Grayscale frame with normalized [0,1] pixels, row-major.
struct Frame {
  uint32_t width = 0;
  uint32_t height = 0;
  Vec pixels;
};

// Binary portable graymap (P5), 8- or 16-bit, normalized by maxval on read
// and quantized by round(v * maxval) on write. Writes go to a temporary file
// in the target directory followed by an atomic rename.
Frame read_pgm(const std::string& path);
void write_pgm(const std::string& path, const Frame& frame, int maxval = 255);

}  // namespace cs
