#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "anitv/grid.hpp"

namespace anitv {

// P2 (ASCII) or P5 (binary) grayscale image, maxval up to 65535.
struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> pixels;  // row major, top row first
};

PgmImage read_pgm(std::istream& in);
PgmImage read_pgm_file(const std::string& path);
// `comment`, when nonempty, is written as a '#' line after the magic number
void write_pgm(std::ostream& out, const PgmImage& img, bool binary = true,
               const std::string& comment = {});
void write_pgm_file(const std::string& path, const PgmImage& img, bool binary = true,
                    const std::string& comment = {});

// Image pixels mapped affinely to [0,1] (value = pixel / maxval) on a
// rectangular domain with mesh h; the mapping is recorded so writes can
// invert it.  Image row 0 becomes the top row of cells (highest y).
struct GridImage {
  GridFunction fn;
  int maxval = 255;
  double scale = 1.0;   // value = scale * pixel + offset
  double offset = 0.0;
};

GridImage grid_from_pgm(const PgmImage& img, double h);
PgmImage pgm_from_grid(const GridFunction& u, int maxval = 255);

// one line per cell: x_1,...,x_N,value (cell centers)
void write_cell_csv(std::ostream& out, const GridFunction& u);

}  // namespace anitv
