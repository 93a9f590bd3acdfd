#include "anitv/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace anitv {

namespace {

// next whitespace-separated token, skipping '#' comments
std::string pgm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) throw std::runtime_error("pgm: unexpected end of file");
  return tok;
}

int pgm_int(std::istream& in) {
  const std::string tok = pgm_token(in);
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw std::runtime_error("pgm: expected integer, got '" + tok + "'");
  }
}

}  // namespace

PgmImage read_pgm(std::istream& in) {
  const std::string magic = pgm_token(in);
  if (magic != "P2" && magic != "P5")
    throw std::runtime_error("pgm: unsupported magic '" + magic + "'");
  PgmImage img;
  img.width = pgm_int(in);
  img.height = pgm_int(in);
  img.maxval = pgm_int(in);
  if (img.width < 1 || img.height < 1)
    throw std::runtime_error("pgm: bad dimensions");
  if (img.maxval < 1 || img.maxval > 65535)
    throw std::runtime_error("pgm: maxval out of range");
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  img.pixels.resize(n);
  if (magic == "P2") {
    for (auto& p : img.pixels) {
      const int v = pgm_int(in);
      if (v < 0 || v > img.maxval) throw std::runtime_error("pgm: pixel out of range");
      p = static_cast<std::uint16_t>(v);
    }
  } else {
    // single whitespace after maxval, then raw bytes (2 per pixel if maxval > 255)
    const bool wide = img.maxval > 255;
    for (auto& p : img.pixels) {
      if (wide) {
        const int hi = in.get(), lo = in.get();
        if (hi == EOF || lo == EOF) throw std::runtime_error("pgm: truncated data");
        p = static_cast<std::uint16_t>((hi << 8) | lo);
      } else {
        const int v = in.get();
        if (v == EOF) throw std::runtime_error("pgm: truncated data");
        p = static_cast<std::uint16_t>(v);
      }
      if (p > img.maxval) throw std::runtime_error("pgm: pixel out of range");
    }
  }
  return img;
}

PgmImage read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open pgm file: " + path);
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const PgmImage& img, bool binary,
               const std::string& comment) {
  if (static_cast<std::size_t>(img.width) * img.height != img.pixels.size())
    throw std::invalid_argument("pgm: pixel count mismatch");
  out << (binary ? "P5" : "P2") << "\n";
  if (!comment.empty()) out << "# " << comment << "\n";
  out << img.width << " " << img.height << "\n"
      << img.maxval << "\n";
  if (binary) {
    const bool wide = img.maxval > 255;
    for (std::uint16_t p : img.pixels) {
      if (wide) out.put(static_cast<char>(p >> 8));
      out.put(static_cast<char>(p & 0xff));
    }
  } else {
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      out << img.pixels[i];
      out << (((i + 1) % img.width == 0) ? '\n' : ' ');
    }
  }
}

void write_pgm_file(const std::string& path, const PgmImage& img, bool binary,
                    const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_pgm(out, img, binary, comment);
}

GridImage grid_from_pgm(const PgmImage& img, double h) {
  const GridDomain dom = GridDomain::box(
      h, {0.0, 0.0}, {img.width * h, img.height * h});
  if (dom.extent()[0] != img.width || dom.extent()[1] != img.height)
    throw std::runtime_error("pgm: domain cell grid does not match image size");
  GridImage gi{GridFunction::constant(dom, 0.0), img.maxval,
               1.0 / img.maxval, 0.0};
  // dimension 0 is x (columns), dimension 1 is y; image row 0 sits at the top
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      const std::int64_t flat = dom.flat_index({c, img.height - 1 - r});
      gi.fn[flat] =
          gi.scale * img.pixels[static_cast<std::size_t>(r) * img.width + c] +
          gi.offset;
    }
  }
  return gi;
}

PgmImage pgm_from_grid(const GridFunction& u, int maxval) {
  const GridDomain& dom = u.domain();
  if (dom.dim() != 2) throw std::invalid_argument("pgm: 2D grids only");
  PgmImage img;
  img.width = static_cast<int>(dom.extent()[0]);
  img.height = static_cast<int>(dom.extent()[1]);
  img.maxval = maxval;
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      const std::int64_t flat =
          dom.flat_index({dom.cell_min()[0] + c,
                          dom.cell_min()[1] + img.height - 1 - r});
      const double v = std::clamp(u[flat], 0.0, 1.0);
      img.pixels[static_cast<std::size_t>(r) * img.width + c] =
          static_cast<std::uint16_t>(std::lround(v * maxval));
    }
  }
  return img;
}

void write_cell_csv(std::ostream& out, const GridFunction& u) {
  const GridDomain& dom = u.domain();
  out.precision(17);
  for (int i = 0; i < dom.dim(); ++i) out << "x_" << (i + 1) << ",";
  out << "value\n";
  for (std::int64_t f = 0; f < dom.cell_count(); ++f) {
    if (!dom.inside(f)) continue;
    const auto center = dom.cell_center(f);
    for (double x : center) out << x << ",";
    out << u[f] << "\n";
  }
}

}  // namespace anitv
