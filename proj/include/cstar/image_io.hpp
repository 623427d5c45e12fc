#ifndef CSTAR_IMAGE_IO_HPP
#define CSTAR_IMAGE_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cstar {

// 8-bit RGB image, row-major, top row first.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 * width * height

  static Image blank(int w, int h) {
    Image im;
    im.width = w;
    im.height = h;
    im.rgb.assign(static_cast<size_t>(w) * h * 3, 0);
    return im;
  }
  std::uint8_t* px(int row, int col) {
    return rgb.data() + (static_cast<size_t>(row) * width + col) * 3;
  }
};

// Binary PPM (P6, maxval 255).
std::vector<std::uint8_t> encode_ppm(const Image& im);

// Binary PBM (P4), MSB-first packed rows; bit 1 = set cell.
std::vector<std::uint8_t> encode_pbm(int width, int height,
                                     const std::vector<std::uint8_t>& cells);
void decode_pbm(const std::vector<std::uint8_t>& bytes, int* width,
                int* height, std::vector<std::uint8_t>* cells);

// Writes via a temp file in the same directory plus rename.
void atomic_write_file(const std::string& path,
                       const std::vector<std::uint8_t>& bytes);
void atomic_write_file(const std::string& path, const std::string& text);

std::vector<std::uint8_t> read_file(const std::string& path);

}  // namespace cstar

#endif  // CSTAR_IMAGE_IO_HPP
