#include "nsmp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsmp/errors.hpp"

namespace nsmp {

std::string to_string(Boundary bc) {
  return bc == Boundary::Periodic ? "periodic" : "noslip";
}

std::string to_string(Scheme scheme) {
  return scheme == Scheme::Spectral ? "spectral" : "fd";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "noslip" || s == "noslip-box") return Boundary::NoSlipBox;
  throw InvalidGrid("unknown boundary kind '" + s + "'");
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "spectral") return Scheme::Spectral;
  if (s == "fd" || s == "finite-difference") return Scheme::FiniteDifference;
  throw InvalidGrid("unknown scheme '" + s + "'");
}

void GridSpec::validate() const {
  if (scheme == Scheme::Spectral && bc != Boundary::Periodic)
    throw InvalidGrid("spectral scheme requires a periodic grid");
  for (int a = 0; a < 3; ++a) {
    if (!(length[a] > 0.0) || !std::isfinite(length[a]))
      throw InvalidGrid("edge lengths must be positive and finite");
    if (n[a] < 1) throw InvalidGrid("node counts must be positive");
    if (n[a] == 1 && bc != Boundary::Periodic)
      throw InvalidGrid("a single-node direction is only allowed on periodic grids");
    if (n[a] > 1 && n[a] < 4) throw InvalidGrid("active directions need at least 4 nodes");
  }
  if (active_dims() == 0) throw InvalidGrid("grid has no active direction");
}

int GridSpec::active_dims() const {
  return static_cast<int>(active(0)) + static_cast<int>(active(1)) + static_cast<int>(active(2));
}

double GridSpec::spacing(int axis) const {
  if (bc == Boundary::Periodic || n[axis] == 1) return length[axis] / n[axis];
  return length[axis] / (n[axis] - 1);
}

double GridSpec::min_spacing() const {
  double h = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a)
    if (active(a)) h = std::min(h, spacing(a));
  return h;
}

double GridSpec::max_spacing() const {
  double h = 0.0;
  for (int a = 0; a < 3; ++a)
    if (active(a)) h = std::max(h, spacing(a));
  return h;
}

bool GridSpec::on_boundary(int i, int j, int k) const {
  if (bc != Boundary::NoSlipBox) return false;
  return i == 0 || j == 0 || k == 0 || i == n[0] - 1 || j == n[1] - 1 || k == n[2] - 1;
}

GridSpec periodic_grid(std::array<int, 3> n, std::array<double, 3> length, Scheme scheme) {
  GridSpec g{n, length, Boundary::Periodic, scheme};
  g.validate();
  return g;
}

GridSpec noslip_grid(std::array<int, 3> n, std::array<double, 3> length) {
  GridSpec g{n, length, Boundary::NoSlipBox, Scheme::FiniteDifference};
  g.validate();
  return g;
}

}  // namespace nsmp
