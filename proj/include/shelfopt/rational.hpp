#ifndef SHELFOPT_RATIONAL_HPP
#define SHELFOPT_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace shelfopt {

/// Exact bay quantity, e.g. 3/2 for one and a half bays.
using Bays = boost::rational<std::int64_t>;

/// Parses "3", "1.5", "-2" or "3/2" into an exact rational.
/// Throws InvalidInput on anything else.
Bays parse_bays(std::string_view text);

/// Canonical text form: "3", "3/2".
std::string to_string(const Bays &b);

inline double to_double(const Bays &b) {
  return boost::rational_cast<double>(b);
}

/// Greatest common divisor of two non-negative rationals (gcd of numerators
/// over lcm of denominators). gcd(0, b) = b.
Bays rational_gcd(const Bays &a, const Bays &b);

/// True when `value` is an integer multiple of `step` (step > 0).
bool is_multiple_of(const Bays &value, const Bays &step);

} // namespace shelfopt

#endif
