#pragma once

// Complex field samples on a uniform 1-D grid at a fixed time, plus the
// radix-2 FFT used by operator application and the spectral oracle. The grid
// length must be a power of two; fields entering spectral paths must decay at
// both boundaries (periodic-wraparound guard).

#include <filesystem>
#include <string>
#include <vector>

#include "wavekit/common.hpp"
#include "wavekit/errors.hpp"

namespace wavekit {

struct GridField {
  std::vector<Cplx> samples;
  double x_min = 0.0;
  double dx = 1.0;
  double time = 0.0;

  int size() const { return static_cast<int>(samples.size()); }
  double x_at(int j) const { return x_min + dx * j; }

  static GridField zeros(int m, double x_min, double dx, double time = 0.0) {
    GridField f;
    f.samples.assign(static_cast<std::size_t>(m), Cplx{0.0, 0.0});
    f.x_min = x_min;
    f.dx = dx;
    f.time = time;
    return f;
  }
};

inline bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

inline void require_grid_contract(const GridField& f) {
  if (!is_power_of_two(f.size())) throw GridError("GridField: sample count must be a power of two");
  if (f.dx <= 0.0) throw GridError("GridField: dx must be positive");
}

double max_abs(const GridField& f);

// |samples| at both ends must be < tol * max|samples|
void require_boundary_decay(const GridField& f, double tol = 1e-12);

// in-place radix-2 FFT; forward computes sum_j a_j e^{-2pi i mj/M} (no
// normalization), inverse applies the conjugate transform and divides by M
void fft_pow2(std::vector<Cplx>& a, bool inverse);

// physical wavenumber of FFT bin m on a grid with spacing dx
// (bins 0..M/2-1 positive, M/2..M-1 negative)
std::vector<double> fft_wavenumbers(int m, double dx);

// field IO: CSV (x, Re psi) with '#' headers; binary f64 header {M, x_min, dx, t}
void write_field_csv(const std::filesystem::path& path, const GridField& f,
                     const std::string& note = "");
GridField read_field_csv(const std::filesystem::path& path);
void write_field_binary(const std::filesystem::path& path, const GridField& f);
GridField read_field_binary(const std::filesystem::path& path);

}  // namespace wavekit
