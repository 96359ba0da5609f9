#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nsmp/grid.hpp"

namespace nsmp {

/// Real samples of a function on every node of a grid.
class ScalarField {
public:
  ScalarField() = default;
  explicit ScalarField(const GridSpec& grid, double value = 0.0);
  ScalarField(const GridSpec& grid, std::vector<double> values);

  /// Samples f(x, y, z) at every node.
  static ScalarField sample(const GridSpec& grid, const std::function<double(double, double, double)>& f);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& at(int i, int j, int k) { return values_[grid_.index(i, j, k)]; }
  double at(int i, int j, int k) const { return values_[grid_.index(i, j, k)]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;
  double max() const;
  double min() const;
  /// Largest absolute value.
  double max_abs() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double a);
  /// Pointwise product.
  ScalarField& operator*=(const ScalarField& o);

private:
  GridSpec grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, const ScalarField& b);

/// Three scalar components sharing one grid.
class VectorField {
public:
  VectorField() = default;
  explicit VectorField(const GridSpec& grid);
  VectorField(ScalarField x, ScalarField y, ScalarField z);

  static VectorField sample(const GridSpec& grid,
                            const std::function<std::array<double, 3>(double, double, double)>& f);

  const GridSpec& grid() const { return c_[0].grid(); }
  ScalarField& operator[](int a) { return c_[a]; }
  const ScalarField& operator[](int a) const { return c_[a]; }

  bool all_finite() const;
  /// max over components and nodes of |U_a|.
  double max_abs() const;
  /// max over nodes of the Euclidean length.
  double max_magnitude() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double a);

private:
  std::array<ScalarField, 3> c_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(VectorField a, double s);
VectorField operator*(double s, VectorField a);

/// Throws GridMismatch unless both grids are identical.
void require_same_grid(const GridSpec& a, const GridSpec& b);

/// Sets every wall node of a NoSlipBox field to zero; no-op on periodic grids.
void zero_boundary(ScalarField& s);
void zero_boundary(VectorField& v);

/// Largest |value| over wall nodes (0 on periodic grids).
double boundary_max_abs(const ScalarField& s);

}  // namespace nsmp
