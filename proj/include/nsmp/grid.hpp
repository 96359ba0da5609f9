#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace nsmp {

enum class Boundary { Periodic, NoSlipBox };
enum class Scheme { Spectral, FiniteDifference };

std::string to_string(Boundary bc);
std::string to_string(Scheme scheme);
Boundary boundary_from_string(const std::string& s);
Scheme scheme_from_string(const std::string& s);

/// Collocated structured grid over the box [0,lx]x[0,ly]x[0,lz].
///
/// Periodic grids place n nodes at x_i = i*l/n. NoSlipBox grids include both
/// walls, x_i = i*l/(n-1). A direction with n = 1 (periodic only) is an
/// invariant direction: derivatives along it vanish identically.
struct GridSpec {
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> length{1.0, 1.0, 1.0};
  Boundary bc = Boundary::Periodic;
  Scheme scheme = Scheme::Spectral;

  /// Throws InvalidGrid when the invariants do not hold.
  void validate() const;

  bool active(int axis) const { return n[axis] > 1; }
  int active_dims() const;
  double spacing(int axis) const;
  /// Smallest spacing over active directions.
  double min_spacing() const;
  /// Largest spacing over active directions.
  double max_spacing() const;
  double coord(int axis, int i) const { return i * spacing(axis); }
  double volume() const { return length[0] * length[1] * length[2]; }

  std::size_t size() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) *
           static_cast<std::size_t>(n[2]);
  }
  /// Row-major, x fastest.
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(n[0]) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(n[1]) * static_cast<std::size_t>(k));
  }
  std::array<int, 3> unravel(std::size_t idx) const {
    const int i = static_cast<int>(idx % static_cast<std::size_t>(n[0]));
    idx /= static_cast<std::size_t>(n[0]);
    const int j = static_cast<int>(idx % static_cast<std::size_t>(n[1]));
    const int k = static_cast<int>(idx / static_cast<std::size_t>(n[1]));
    return {i, j, k};
  }
  /// True for wall nodes of a NoSlipBox grid; never true on periodic grids.
  bool on_boundary(int i, int j, int k) const;

  bool operator==(const GridSpec&) const = default;
};

/// Convenience constructors.
GridSpec periodic_grid(std::array<int, 3> n, std::array<double, 3> length,
                       Scheme scheme = Scheme::Spectral);
GridSpec noslip_grid(std::array<int, 3> n, std::array<double, 3> length);

}  // namespace nsmp
