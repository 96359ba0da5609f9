#include "nsmp/field.hpp"

#include <algorithm>
#include <cmath>

#include "nsmp/errors.hpp"

namespace nsmp {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw GridMismatch("fields live on different grids");
}

ScalarField::ScalarField(const GridSpec& grid, double value) : grid_(grid), values_(grid.size(), value) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw GridMismatch("value count does not match grid size");
}

ScalarField ScalarField::sample(const GridSpec& grid, const std::function<double(double, double, double)>& f) {
  ScalarField s(grid);
  for (int k = 0; k < grid.n[2]; ++k)
    for (int j = 0; j < grid.n[1]; ++j)
      for (int i = 0; i < grid.n[0]; ++i)
        s.at(i, j, k) = f(grid.coord(0, i), grid.coord(1, j), grid.coord(2, k));
  return s;
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double a) {
  for (double& v : values_) v *= a;
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }

VectorField::VectorField(const GridSpec& grid) : c_{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

VectorField::VectorField(ScalarField x, ScalarField y, ScalarField z)
    : c_{std::move(x), std::move(y), std::move(z)} {
  require_same_grid(c_[0].grid(), c_[1].grid());
  require_same_grid(c_[0].grid(), c_[2].grid());
}

VectorField VectorField::sample(const GridSpec& grid,
                                const std::function<std::array<double, 3>(double, double, double)>& f) {
  VectorField v(grid);
  for (int k = 0; k < grid.n[2]; ++k)
    for (int j = 0; j < grid.n[1]; ++j)
      for (int i = 0; i < grid.n[0]; ++i) {
        const auto u = f(grid.coord(0, i), grid.coord(1, j), grid.coord(2, k));
        for (int a = 0; a < 3; ++a) v[a].at(i, j, k) = u[a];
      }
  return v;
}

bool VectorField::all_finite() const {
  return c_[0].all_finite() && c_[1].all_finite() && c_[2].all_finite();
}

double VectorField::max_abs() const {
  return std::max({c_[0].max_abs(), c_[1].max_abs(), c_[2].max_abs()});
}

double VectorField::max_magnitude() const {
  double m = 0.0;
  for (std::size_t i = 0; i < c_[0].size(); ++i)
    m = std::max(m, std::sqrt(c_[0][i] * c_[0][i] + c_[1][i] * c_[1][i] + c_[2][i] * c_[2][i]));
  return m;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int a = 0; a < 3; ++a) c_[a] += o.c_[a];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  for (int a = 0; a < 3; ++a) c_[a] -= o.c_[a];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(VectorField a, double s) { return a *= s; }
VectorField operator*(double s, VectorField a) { return a *= s; }

void zero_boundary(ScalarField& s) {
  const GridSpec& g = s.grid();
  if (g.bc != Boundary::NoSlipBox) return;
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i)
        if (g.on_boundary(i, j, k)) s.at(i, j, k) = 0.0;
}

void zero_boundary(VectorField& v) {
  for (int a = 0; a < 3; ++a) zero_boundary(v[a]);
}

double boundary_max_abs(const ScalarField& s) {
  const GridSpec& g = s.grid();
  double m = 0.0;
  if (g.bc != Boundary::NoSlipBox) return m;
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i)
        if (g.on_boundary(i, j, k)) m = std::max(m, std::abs(s.at(i, j, k)));
  return m;
}

}  // namespace nsmp
