#pragma once

#include <charconv>
#include <complex>
#include <string>

namespace opuc {

// Shortest round-trip decimal form (never more than 17 significant digits).
inline std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// "re+imj" / "re-imj", parseable as a python/numpy complex literal.
inline std::string format_complex(std::complex<double> z) {
  std::string s = format_double(z.real());
  std::string im = format_double(z.imag());
  if (!im.empty() && im[0] != '-') s += '+';
  s += im;
  s += 'j';
  return s;
}

}  // namespace opuc
