#pragma once

#include <complex>
#include <vector>

namespace wavekit {

using Cplx = std::complex<double>;
using Vec  = std::vector<double>;
using CVec = std::vector<Cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Cplx kImag{0.0, 1.0};

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wavekit
