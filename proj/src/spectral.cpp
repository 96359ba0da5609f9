#include "nsmp/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "nsmp/errors.hpp"

namespace nsmp::spectral {
namespace {

enum class PlanKind { Forward, Inverse, Dct1 };

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> allocate(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

class PlanCache {
public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const GridSpec& g, PlanKind kind) {
    const auto key = std::make_tuple(g.n[0], g.n[1], g.n[2], static_cast<int>(kind));
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t nreal = g.size();
    const std::size_t ncplx = static_cast<std::size_t>(g.n[0] / 2 + 1) * g.n[1] * g.n[2];
    auto r = allocate<double>(nreal);
    auto c = allocate<fftw_complex>(ncplx);
    fftw_plan plan = nullptr;
    switch (kind) {
      case PlanKind::Forward:
        plan = fftw_plan_dft_r2c_3d(g.n[2], g.n[1], g.n[0], r.get(), c.get(), FFTW_ESTIMATE);
        break;
      case PlanKind::Inverse:
        plan = fftw_plan_dft_c2r_3d(g.n[2], g.n[1], g.n[0], c.get(), r.get(), FFTW_ESTIMATE);
        break;
      case PlanKind::Dct1: {
        auto out = allocate<double>(nreal);
        plan = fftw_plan_r2r_3d(g.n[2], g.n[1], g.n[0], r.get(), out.get(), FFTW_REDFT00, FFTW_REDFT00,
                                FFTW_REDFT00, FFTW_ESTIMATE);
        break;
      }
    }
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

}  // namespace

Spectrum forward(const ScalarField& s) {
  const GridSpec& g = s.grid();
  Spectrum out{g, g.n[0] / 2 + 1, {}};
  const std::size_t ncplx = static_cast<std::size_t>(out.nxh) * g.n[1] * g.n[2];
  auto in = allocate<double>(g.size());
  auto c = allocate<fftw_complex>(ncplx);
  std::memcpy(in.get(), s.values().data(), sizeof(double) * g.size());
  fftw_execute_dft_r2c(PlanCache::instance().get(g, PlanKind::Forward), in.get(), c.get());
  out.data.resize(ncplx);
  for (std::size_t i = 0; i < ncplx; ++i) out.data[i] = Complex(c[i][0], c[i][1]);
  return out;
}

ScalarField inverse(const Spectrum& s) {
  const GridSpec& g = s.grid;
  const std::size_t ncplx = s.data.size();
  auto c = allocate<fftw_complex>(ncplx);
  for (std::size_t i = 0; i < ncplx; ++i) {
    c[i][0] = s.data[i].real();
    c[i][1] = s.data[i].imag();
  }
  auto r = allocate<double>(g.size());
  fftw_execute_dft_c2r(PlanCache::instance().get(g, PlanKind::Inverse), c.get(), r.get());
  const double scale = 1.0 / static_cast<double>(g.size());
  std::vector<double> values(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) values[i] = r[i] * scale;
  return ScalarField(g, std::move(values));
}

int mode(const GridSpec& g, int axis, int idx) {
  if (axis == 0) return idx;
  const int n = g.n[axis];
  return idx <= n / 2 ? idx : idx - n;
}

bool is_nyquist(const GridSpec& g, int axis, int idx) {
  const int n = g.n[axis];
  return n % 2 == 0 && n > 1 && std::abs(mode(g, axis, idx)) == n / 2;
}

double wavenumber(const GridSpec& g, int axis, int idx) {
  return 2.0 * std::numbers::pi * mode(g, axis, idx) / g.length[axis];
}

double first_symbol(const GridSpec& g, int axis, int idx) {
  if (g.scheme == Scheme::Spectral) return is_nyquist(g, axis, idx) ? 0.0 : wavenumber(g, axis, idx);
  const double h = g.spacing(axis);
  return std::sin(wavenumber(g, axis, idx) * h) / h;
}

double second_symbol(const GridSpec& g, int axis, int idx) {
  const double k = wavenumber(g, axis, idx);
  if (g.scheme == Scheme::Spectral) return -k * k;
  const double h = g.spacing(axis);
  return -(2.0 - 2.0 * std::cos(k * h)) / (h * h);
}

ScalarField dealias(const ScalarField& s) {
  Spectrum sp = forward(s);
  const GridSpec& g = s.grid();
  sp.for_each([&](int m, int j, int k, std::size_t idx) {
    const int idx3[3] = {m, j, k};
    for (int a = 0; a < 3; ++a)
      if (3 * std::abs(mode(g, a, idx3[a])) > g.n[a]) {
        sp.data[idx] = 0.0;
        return;
      }
  });
  return inverse(sp);
}

ScalarField dct1(const ScalarField& s) {
  const GridSpec& g = s.grid();
  for (int a = 0; a < 3; ++a)
    if (g.n[a] < 2) throw InvalidGrid("DCT-I needs at least two nodes per direction");
  auto in = allocate<double>(g.size());
  auto out = allocate<double>(g.size());
  std::memcpy(in.get(), s.values().data(), sizeof(double) * g.size());
  fftw_execute_r2r(PlanCache::instance().get(g, PlanKind::Dct1), in.get(), out.get());
  return ScalarField(g, std::vector<double>(out.get(), out.get() + g.size()));
}

}  // namespace nsmp::spectral
