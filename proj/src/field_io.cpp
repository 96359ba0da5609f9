#include "nsmp/field_io.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "nsmp/errors.hpp"

namespace nsmp {
namespace {

static_assert(std::endian::native == std::endian::little, "field files assume a little-endian host");

constexpr char kMagic[8] = {'N', 'S', 'M', 'P', 'F', 'L', 'D', '1'};

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw Error("truncated field record");
  return v;
}

void write_record(std::ostream& os, const GridSpec& g, std::span<const ScalarField* const> comps) {
  os.write(kMagic, sizeof(kMagic));
  put<std::int32_t>(os, static_cast<std::int32_t>(comps.size()));
  for (int a = 0; a < 3; ++a) put<std::int32_t>(os, g.n[a]);
  put<std::int32_t>(os, g.bc == Boundary::Periodic ? 0 : 1);
  put<std::int32_t>(os, g.scheme == Scheme::Spectral ? 0 : 1);
  put<std::int64_t>(os, 0);
  for (int a = 0; a < 3; ++a) put<double>(os, g.length[a]);
  for (const ScalarField* c : comps)
    os.write(reinterpret_cast<const char*>(c->values().data()),
             static_cast<std::streamsize>(sizeof(double) * c->size()));
  if (!os) throw Error("failed to write field record");
}

void write_csv(std::ostream& os, const GridSpec& g, std::span<const ScalarField* const> comps) {
  os << "i,j,k,x,y,z";
  for (std::size_t c = 0; c < comps.size(); ++c) os << ",c" << c;
  os << '\n';
  char buf[32];
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        os << i << ',' << j << ',' << k;
        for (double x : {g.coord(0, i), g.coord(1, j), g.coord(2, k)}) {
          std::snprintf(buf, sizeof(buf), "%.17g", x);
          os << ',' << buf;
        }
        for (const ScalarField* c : comps) {
          std::snprintf(buf, sizeof(buf), "%.17g", c->at(i, j, k));
          os << ',' << buf;
        }
        os << '\n';
      }
}

}  // namespace

std::size_t field_record_bytes(const GridSpec& g, int components) {
  return kFieldHeaderBytes + sizeof(double) * g.size() * static_cast<std::size_t>(components);
}

void write_field(std::ostream& os, const ScalarField& s) {
  const ScalarField* comps[] = {&s};
  write_record(os, s.grid(), comps);
}

void write_field(std::ostream& os, const VectorField& v) {
  const ScalarField* comps[] = {&v[0], &v[1], &v[2]};
  write_record(os, v.grid(), comps);
}

FieldRecord read_field(std::istream& is) {
  char magic[8];
  if (!is.read(magic, sizeof(magic))) throw Error("truncated field record");
  if (std::memcmp(magic, kMagic, sizeof(magic)) != 0) throw Error("not a field record (bad magic)");
  const auto ncomp = get<std::int32_t>(is);
  if (ncomp != 1 && ncomp != 3) throw Error("field record must have 1 or 3 components");
  GridSpec g;
  for (int a = 0; a < 3; ++a) g.n[a] = get<std::int32_t>(is);
  g.bc = get<std::int32_t>(is) == 0 ? Boundary::Periodic : Boundary::NoSlipBox;
  g.scheme = get<std::int32_t>(is) == 0 ? Scheme::Spectral : Scheme::FiniteDifference;
  (void)get<std::int64_t>(is);
  for (int a = 0; a < 3; ++a) g.length[a] = get<double>(is);
  g.validate();
  FieldRecord rec{g, {}};
  for (int c = 0; c < ncomp; ++c) {
    std::vector<double> values(g.size());
    if (!is.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(sizeof(double) * values.size())))
      throw Error("truncated field values");
    rec.components.emplace_back(g, std::move(values));
  }
  return rec;
}

ScalarField read_scalar_field(std::istream& is) {
  FieldRecord rec = read_field(is);
  if (rec.components.size() != 1) throw Error("expected a scalar field record");
  return std::move(rec.components[0]);
}

VectorField read_vector_field(std::istream& is) {
  FieldRecord rec = read_field(is);
  if (rec.components.size() != 3) throw Error("expected a vector field record");
  return VectorField(std::move(rec.components[0]), std::move(rec.components[1]), std::move(rec.components[2]));
}

void save_field(const std::filesystem::path& path, const ScalarField& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write_field(os, s);
}

void save_field(const std::filesystem::path& path, const VectorField& v) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write_field(os, v);
}

FieldRecord load_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  return read_field(is);
}

void write_field_csv(std::ostream& os, const ScalarField& s) {
  const ScalarField* comps[] = {&s};
  write_csv(os, s.grid(), comps);
}

void write_field_csv(std::ostream& os, const VectorField& v) {
  const ScalarField* comps[] = {&v[0], &v[1], &v[2]};
  write_csv(os, v.grid(), comps);
}

}  // namespace nsmp
