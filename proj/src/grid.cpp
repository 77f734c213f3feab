#include "wavekit/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "wavekit/io_util.hpp"

namespace wavekit {

double max_abs(const GridField& f) {
  double m = 0.0;
  for (const Cplx& v : f.samples) m = std::max(m, std::abs(v));
  return m;
}

void require_boundary_decay(const GridField& f, double tol) {
  require_grid_contract(f);
  const double peak = max_abs(f);
  if (peak == 0.0) return;
  const double lo = std::abs(f.samples.front());
  const double hi = std::abs(f.samples.back());
  if (lo >= tol * peak || hi >= tol * peak)
    throw BoundaryError("GridField: boundary samples exceed decay tolerance (domain too small)");
}

void fft_pow2(std::vector<Cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(static_cast<int>(n))) throw GridError("fft_pow2: length must be a power of two");
  if (n == 1) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  // index-addressed twiddles: a multiplicative recurrence would accumulate
  // O(len eps) phase error across a stage
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<Cplx> tw(n / 2);
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double ang = sign * 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    tw[i] = Cplx(std::cos(ang), std::sin(ang));
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Cplx w = tw[j * stride];
        const Cplx u = a[i + j];
        const Cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }

  if (inverse) {
    const double s = 1.0 / static_cast<double>(n);
    for (Cplx& v : a) v *= s;
  }
}

std::vector<double> fft_wavenumbers(int m, double dx) {
  std::vector<double> k(static_cast<std::size_t>(m));
  const double dk = 2.0 * kPi / (m * dx);
  for (int i = 0; i < m; ++i) {
    const int bin = (i < m / 2) ? i : i - m;
    k[static_cast<std::size_t>(i)] = dk * bin;
  }
  return k;
}

void write_field_csv(const std::filesystem::path& path, const GridField& f,
                     const std::string& note) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  if (!note.empty()) out << "# " << note << "\n";
  out << "# t = " << fmt_g17(f.time) << "\n";
  out << "# x,psi\n";
  for (int j = 0; j < f.size(); ++j)
    out << fmt_g17(f.x_at(j)) << "," << fmt_g17(f.samples[static_cast<std::size_t>(j)].real())
        << "\n";
}

GridField read_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::vector<double> xs, vs;
  std::string line;
  double t = 0.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (std::sscanf(line.c_str(), "# t = %lf", &t) == 1) continue;
      continue;
    }
    double x = 0.0, v = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf", &x, &v) != 2)
      throw IoError("malformed CSV line in " + path.string());
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 2) throw IoError("field CSV too short: " + path.string());
  GridField f;
  f.x_min = xs.front();
  f.dx = xs[1] - xs[0];
  f.time = t;
  f.samples.reserve(vs.size());
  for (double v : vs) f.samples.emplace_back(v, 0.0);
  return f;
}

void write_field_binary(const std::filesystem::path& path, const GridField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  const double header[4] = {static_cast<double>(f.size()), f.x_min, f.dx, f.time};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  std::vector<double> re(f.samples.size());
  for (std::size_t i = 0; i < f.samples.size(); ++i) re[i] = f.samples[i].real();
  out.write(reinterpret_cast<const char*>(re.data()),
            static_cast<std::streamsize>(re.size() * sizeof(double)));
}

GridField read_field_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  double header[4];
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  if (!in) throw IoError("truncated binary field header: " + path.string());
  const int m = static_cast<int>(header[0]);
  GridField f = GridField::zeros(m, header[1], header[2], header[3]);
  std::vector<double> re(static_cast<std::size_t>(m));
  in.read(reinterpret_cast<char*>(re.data()), static_cast<std::streamsize>(re.size() * sizeof(double)));
  if (!in) throw IoError("truncated binary field data: " + path.string());
  for (int j = 0; j < m; ++j) f.samples[static_cast<std::size_t>(j)] = Cplx(re[static_cast<std::size_t>(j)], 0.0);
  return f;
}

}  // namespace wavekit
