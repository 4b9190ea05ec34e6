#include "sphereflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "sphereflow/errors.hpp"

namespace sphereflow {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

void write_scalar_field_csv(std::ostream& os, const ScalarField& f) {
  const Grid& g = f.grid();
  const auto th = g.thetas();
  const auto ph = g.phis();
  os << "theta,phi,value\n";
  for (int i = 0; i < g.nlat(); ++i) {
    for (int j = 0; j < g.nlon(); ++j) {
      os << format_real(th[i]) << ',' << format_real(ph[j]) << ',' << format_real(f(i, j)) << '\n';
    }
  }
}

void write_scalar_field_csv(const std::filesystem::path& path, const ScalarField& f) {
  auto out = open_output(path);
  write_scalar_field_csv(out, f);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

ScalarField read_scalar_field_csv(const std::filesystem::path& path, const GridPtr& grid) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || line != "theta,phi,value") {
    throw Error(ErrorCode::kIoError, "missing header theta,phi,value in " + path.string());
  }
  ScalarField f(grid);
  const auto th = grid->thetas();
  const auto ph = grid->phis();
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 3 || k >= grid->size()) {
      throw Error(ErrorCode::kIoError, "malformed row in " + path.string());
    }
    const int i = static_cast<int>(k / grid->nlon());
    const int j = static_cast<int>(k % grid->nlon());
    if (std::abs(std::stod(cells[0]) - th[i]) > 1e-12 ||
        std::abs(std::stod(cells[1]) - ph[j]) > 1e-12) {
      throw Error(ErrorCode::kGridMismatch, "coordinates in " + path.string() + " do not match grid");
    }
    f(i, j) = std::stod(cells[2]);
    ++k;
  }
  if (k != grid->size()) throw Error(ErrorCode::kIoError, "truncated field file " + path.string());
  return f;
}

void write_spectral_field_csv(std::ostream& os, const SpectralField& c) {
  os << "l,m,re,im\n";
  for (int l = 0; l <= c.lmax(); ++l) {
    for (int m = -l; m <= l; ++m) {
      os << l << ',' << m << ',' << format_real(c(l, m).real()) << ','
         << format_real(c(l, m).imag()) << '\n';
    }
  }
}

void write_spectral_field_csv(const std::filesystem::path& path, const SpectralField& c) {
  auto out = open_output(path);
  write_spectral_field_csv(out, c);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

SpectralField read_spectral_field_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || line != "l,m,re,im") {
    throw Error(ErrorCode::kIoError, "missing header l,m,re,im in " + path.string());
  }
  struct Row {
    int l, m;
    Complex value;
  };
  std::vector<Row> rows;
  int lmax = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 4) throw Error(ErrorCode::kIoError, "malformed row in " + path.string());
    Row r{std::stoi(cells[0]), std::stoi(cells[1]),
          Complex(std::stod(cells[2]), std::stod(cells[3]))};
    if (r.l < 0 || std::abs(r.m) > r.l) {
      throw Error(ErrorCode::kIoError, "invalid (l, m) in " + path.string());
    }
    lmax = std::max(lmax, r.l);
    rows.push_back(r);
  }
  SpectralField c(lmax);
  for (const auto& r : rows) c(r.l, r.m) = r.value;
  return c;
}

}  // namespace sphereflow
