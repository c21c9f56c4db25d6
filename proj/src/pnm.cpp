#include "entire_dynamics/pnm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>

#include "entire_dynamics/error.hpp"

namespace ed::pnm {

std::string encode_ppm(int width, int height, const std::vector<std::uint8_t>& rgb) {
  std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

namespace {

class HeaderReader {
 public:
  HeaderReader(const std::string& bytes, const std::filesystem::path& path) : bytes_(bytes), path_(path) {}

  std::string token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    if (start == pos_) fail("truncated header");
    return bytes_.substr(start, pos_ - start);
  }

  int integer() {
    const std::string t = token();
    for (char ch : t) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) fail("expected an integer, got '" + t + "'");
    }
    return std::stoi(t);
  }

  // Binary payloads start after exactly one whitespace byte following maxval.
  std::size_t payload_start() {
    if (pos_ >= bytes_.size()) fail("missing pixel data");
    return pos_ + 1;
  }

  std::size_t position() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Io, "malformed PNM file '" + path_.string() + "': " + what);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& bytes_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_nonzero(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
  const std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());

  HeaderReader header(bytes, path);
  const std::string magic = header.token();
  if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6") header.fail("unsupported magic '" + magic + "'");
  const bool color = magic == "P3" || magic == "P6";
  const bool binary = magic == "P5" || magic == "P6";

  GrayImage image;
  image.width = header.integer();
  image.height = header.integer();
  const int maxval = header.integer();
  if (image.width <= 0 || image.height <= 0) header.fail("non-positive dimensions");
  if (maxval <= 0 || maxval > 255) header.fail("only 8-bit images are supported");

  const std::size_t channels = color ? 3 : 1;
  const std::size_t count = static_cast<std::size_t>(image.width) * image.height;
  image.nonzero.assign(count, 0);
  if (binary) {
    const std::size_t start = header.payload_start();
    if (bytes.size() < start + count * channels) header.fail("pixel data truncated");
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t c = 0; c < channels; ++c) {
        if (bytes[start + i * channels + c] != 0) image.nonzero[i] = 1;
      }
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t c = 0; c < channels; ++c) {
        if (header.integer() != 0) image.nonzero[i] = 1;
      }
    }
  }
  return image;
}

}  // namespace ed::pnm
