#include "shelfopt/rational.hpp"

#include <charconv>
#include <numeric>

#include "shelfopt/error.hpp"

namespace shelfopt {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw InvalidInput("invalid bay quantity '" + std::string(whole) + "'");
  return v;
}

} // namespace

Bays parse_bays(std::string_view text) {
  while (!text.empty() && text.front() == ' ')
    text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ')
    text.remove_suffix(1);
  if (text.empty())
    throw InvalidInput("empty bay quantity");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0)
      throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    return Bays(parse_int(text.substr(0, slash), text), den);
  }

  const auto dot = text.find('.');
  if (dot == std::string_view::npos)
    return Bays(parse_int(text, text));

  const bool negative = text.front() == '-';
  std::string_view int_part = text.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
  std::string_view frac_part = text.substr(dot + 1);
  if (frac_part.size() > 15 || (int_part.empty() && frac_part.empty()))
    throw InvalidInput("invalid bay quantity '" + std::string(text) + "'");
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i)
    scale *= 10;
  const std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
  const std::int64_t frac = frac_part.empty() ? 0 : parse_int(frac_part, text);
  if (whole < 0 || frac < 0)
    throw InvalidInput("invalid bay quantity '" + std::string(text) + "'");
  Bays value(whole * scale + frac, scale);
  return negative ? -value : value;
}

std::string to_string(const Bays &b) {
  if (b.denominator() == 1)
    return std::to_string(b.numerator());
  return std::to_string(b.numerator()) + "/" + std::to_string(b.denominator());
}

Bays rational_gcd(const Bays &a, const Bays &b) {
  if (a.numerator() == 0)
    return abs(b);
  if (b.numerator() == 0)
    return abs(a);
  const std::int64_t den = std::lcm(a.denominator(), b.denominator());
  const std::int64_t na = a.numerator() * (den / a.denominator());
  const std::int64_t nb = b.numerator() * (den / b.denominator());
  return Bays(std::gcd(na, nb), den);
}

bool is_multiple_of(const Bays &value, const Bays &step) {
  return (value / step).denominator() == 1;
}

} // namespace shelfopt
