#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ed::pnm {

/// "P6\n<width> <height>\n255\n" followed by row-major RGB triples, top row first.
std::string encode_ppm(int width, int height, const std::vector<std::uint8_t>& rgb);

/// Throws Error(Io) with the path on failure.
void write_file(const std::filesystem::path& path, const std::string& bytes);

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> nonzero;  // 1 where any channel of the pixel is nonzero
};

/// Reads binary P5/P6 or ASCII P2/P3 files with maxval <= 255; comments are allowed in
/// the header. Throws Error(Io) for unreadable or malformed files.
GrayImage read_nonzero(const std::filesystem::path& path);

}  // namespace ed::pnm
