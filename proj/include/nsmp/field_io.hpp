#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "nsmp/field.hpp"

namespace nsmp {

/// Binary field layout, little-endian:
///
///   offset  size  content
///        0     8  magic "NSMPFLD1"
///        8     4  int32 component count (1 or 3)
///       12    12  int32 nx, ny, nz
///       24     4  int32 boundary (0 periodic, 1 noslip)
///       28     4  int32 scheme (0 spectral, 1 finite difference)
///       32     8  reserved, zero
///       40    24  float64 lx, ly, lz
///       64     -  float64 values, component-major, each x-fastest row-major
inline constexpr std::size_t kFieldHeaderBytes = 64;

std::size_t field_record_bytes(const GridSpec& g, int components);

void write_field(std::ostream& os, const ScalarField& s);
void write_field(std::ostream& os, const VectorField& v);

/// Reads one record; components.size() is 1 or 3.
struct FieldRecord {
  GridSpec grid;
  std::vector<ScalarField> components;
};
FieldRecord read_field(std::istream& is);

ScalarField read_scalar_field(std::istream& is);
VectorField read_vector_field(std::istream& is);

void save_field(const std::filesystem::path& path, const ScalarField& s);
void save_field(const std::filesystem::path& path, const VectorField& v);
FieldRecord load_field(const std::filesystem::path& path);

/// One row per node: i,j,k,x,y,z followed by the component values.
void write_field_csv(std::ostream& os, const ScalarField& s);
void write_field_csv(std::ostream& os, const VectorField& v);

}  // namespace nsmp
