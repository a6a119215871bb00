#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <nlohmann/json.hpp>

#include <string>

#include "pathcrystal/common.hpp"

namespace pathcrystal {

// All arithmetic in the library is exact. Integers are arbitrary precision,
// rationals are normalized fractions over them. No floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numer(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denom(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return denom(r) == 1; }

// Floor of p/q for any sign.
inline Int floor_rat(const Rat& r) {
  Int p = numer(r), q = denom(r);
  Int t = p / q;
  if (p % q != 0 && p < 0) --t;
  return t;
}

inline long to_long(const Int& n) {
  return static_cast<long>(n);
}

inline std::string rat_to_string(const Rat& r) {
  if (is_integer(r)) return numer(r).str();
  return numer(r).str() + "/" + denom(r).str();
}

// Integers serialize as JSON numbers, proper fractions as "p/q" strings
// in lowest terms.
inline nlohmann::json rat_to_json(const Rat& r) {
  if (is_integer(r)) {
    const Int n = numer(r);
    return nlohmann::json(static_cast<std::int64_t>(n));
  }
  return nlohmann::json(rat_to_string(r));
}

inline Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  const Int p(s.substr(0, slash));
  const Int q(s.substr(slash + 1));
  require(q != 0, "rational with zero denominator: " + s);
  return Rat(p, q);
}

inline Rat rat_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<std::int64_t>()));
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw std::invalid_argument("expected integer or \"p/q\" string");
}

}  // namespace pathcrystal
