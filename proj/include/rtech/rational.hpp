#pragma once

// Exact rational coefficients.  GMP's mpq_class does the heavy lifting; this
// header only adds parsing/printing helpers so the rest of the library never
// touches the GMP API directly.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace rtech {

using Rat = mpq_class;

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Accepts "p" or "p/r" with optional sign; throws on malformed input or a
// zero denominator.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
      throw std::invalid_argument("parse_rat: bad character in '" + s + "'");
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("parse_rat: cannot parse '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("parse_rat: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline long rat_to_long(const Rat& r) {
  if (r.get_den() != 1 || !r.get_num().fits_slong_p())
    throw std::domain_error("rat_to_long: " + rat_str(r) + " is not a small integer");
  return r.get_num().get_si();
}

}  // namespace rtech
