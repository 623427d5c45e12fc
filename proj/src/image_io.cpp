#include "cstar/image_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace cstar {

std::vector<std::uint8_t> encode_ppm(const Image& im) {
  char header[64];
  const int n = std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n",
                              im.width, im.height);
  std::vector<std::uint8_t> out;
  out.reserve(n + im.rgb.size());
  out.insert(out.end(), header, header + n);
  out.insert(out.end(), im.rgb.begin(), im.rgb.end());
  return out;
}

std::vector<std::uint8_t> encode_pbm(int width, int height,
                                     const std::vector<std::uint8_t>& cells) {
  if (cells.size() != static_cast<size_t>(width) * height) {
    throw std::invalid_argument("encode_pbm: cell count mismatch");
  }
  char header[64];
  const int n =
      std::snprintf(header, sizeof(header), "P4\n%d %d\n", width, height);
  const int row_bytes = (width + 7) / 8;
  std::vector<std::uint8_t> out;
  out.reserve(n + static_cast<size_t>(row_bytes) * height);
  out.insert(out.end(), header, header + n);
  for (int r = 0; r < height; ++r) {
    for (int b = 0; b < row_bytes; ++b) {
      std::uint8_t byte = 0;
      for (int k = 0; k < 8; ++k) {
        const int c = b * 8 + k;
        if (c < width && cells[static_cast<size_t>(r) * width + c]) {
          byte |= static_cast<std::uint8_t>(0x80 >> k);
        }
      }
      out.push_back(byte);
    }
  }
  return out;
}

void decode_pbm(const std::vector<std::uint8_t>& bytes, int* width,
                int* height, std::vector<std::uint8_t>* cells) {
  size_t pos = 0;
  const auto next_token = [&]() -> std::string {
    std::string tok;
    while (pos < bytes.size()) {
      const char c = static_cast<char>(bytes[pos]);
      if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        if (!tok.empty()) return tok;
        ++pos;
      } else {
        tok.push_back(c);
        ++pos;
      }
    }
    return tok;
  };
  if (next_token() != "P4") throw std::runtime_error("decode_pbm: not P4");
  const int w = std::stoi(next_token());
  const int h = std::stoi(next_token());
  ++pos;  // single whitespace after the header
  const int row_bytes = (w + 7) / 8;
  if (bytes.size() - pos < static_cast<size_t>(row_bytes) * h) {
    throw std::runtime_error("decode_pbm: truncated data");
  }
  cells->assign(static_cast<size_t>(w) * h, 0);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::uint8_t byte = bytes[pos + static_cast<size_t>(r) * row_bytes + c / 8];
      (*cells)[static_cast<size_t>(r) * w + c] =
          (byte >> (7 - c % 8)) & 1u ? 1 : 0;
    }
  }
  *width = w;
  *height = h;
}

void atomic_write_file(const std::string& path,
                       const std::vector<std::uint8_t>& bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

void atomic_write_file(const std::string& path, const std::string& text) {
  atomic_write_file(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

}  // namespace cstar
