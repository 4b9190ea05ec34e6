#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sphereflow/grid.hpp"
#include "sphereflow/spharm.hpp"

namespace sphereflow {

/// Fixed 17-significant-digit rendering used by every CSV writer.
std::string format_real(double x);

/// Header `theta,phi,value`, rows theta-major.
void write_scalar_field_csv(std::ostream& os, const ScalarField& f);
void write_scalar_field_csv(const std::filesystem::path& path, const ScalarField& f);
/// Reads values back onto `grid`; the coordinates in the file must match it.
ScalarField read_scalar_field_csv(const std::filesystem::path& path, const GridPtr& grid);

/// Header `l,m,re,im`, one row per (l, m), -l <= m <= l.
void write_spectral_field_csv(std::ostream& os, const SpectralField& c);
void write_spectral_field_csv(const std::filesystem::path& path, const SpectralField& c);
/// Missing (l, m) rows read as zero; lmax is the largest l present.
SpectralField read_spectral_field_csv(const std::filesystem::path& path);

/// Opens `path` for writing or throws kIoError.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace sphereflow
