#pragma once

#include <cstdio>
#include <string>

namespace thermo {

// Machine artifacts carry 17 significant digits (round-trip exact); human
// tables carry 7.
inline std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

inline std::string fmt7(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.7g", value);
  return buf;
}

}  // namespace thermo
