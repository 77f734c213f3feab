#pragma once

// 17-significant-digit float formatting shared by all emitters; fixed format
// keeps reruns byte-identical.

#include <cstdio>
#include <string>

namespace wavekit {

inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace wavekit
