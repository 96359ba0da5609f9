#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "nsmp/field.hpp"

/// Fourier and cosine transforms on the grid, backed by FFTW.
///
/// Plans are created with FFTW_ESTIMATE (deterministic) and cached per grid
/// shape behind a mutex; execution uses the new-array interface and is safe
/// to call from several threads.
namespace nsmp::spectral {

using Complex = std::complex<double>;

/// Half spectrum of a real field, layout (nz, ny, nx/2+1) with x fastest.
struct Spectrum {
  GridSpec grid;
  int nxh = 0;
  std::vector<Complex> data;

  std::size_t index(int m, int j, int k) const {
    return static_cast<std::size_t>(m) +
           static_cast<std::size_t>(nxh) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(grid.n[1]) * static_cast<std::size_t>(k));
  }
  /// Calls f(m, j, k, idx) over every stored coefficient.
  template <class F>
  void for_each(F&& f) const {
    for (int k = 0; k < grid.n[2]; ++k)
      for (int j = 0; j < grid.n[1]; ++j)
        for (int m = 0; m < nxh; ++m) f(m, j, k, index(m, j, k));
  }
};

Spectrum forward(const ScalarField& s);
/// Normalized inverse: inverse(forward(s)) == s.
ScalarField inverse(const Spectrum& s);

/// Signed integer mode number along `axis` for storage index `idx`.
int mode(const GridSpec& g, int axis, int idx);
bool is_nyquist(const GridSpec& g, int axis, int idx);
/// Physical wavenumber 2*pi*m/l.
double wavenumber(const GridSpec& g, int axis, int idx);
/// Symbol s of the first derivative (d/dx -> i*s): k for Spectral with the
/// Nyquist mode zeroed, sin(k h)/h for periodic finite differences.
double first_symbol(const GridSpec& g, int axis, int idx);
/// Symbol of the second derivative: -k^2 (Spectral) or -(2-2cos(kh))/h^2.
double second_symbol(const GridSpec& g, int axis, int idx);

/// Zeroes every mode with |m| > n/3 in some direction (2/3 rule).
ScalarField dealias(const ScalarField& s);

/// Unnormalized DCT-I (FFTW REDFT00) over all three directions; every
/// direction must have at least two nodes. Applying it twice multiplies by
/// prod_a 2(n_a - 1).
ScalarField dct1(const ScalarField& s);

}  // namespace nsmp::spectral
