#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "pathcrystal/common.hpp"
#include "pathcrystal/rational.hpp"

namespace pathcrystal {

/// Dense polynomial in one variable q, lowest degree first, trailing zeros
/// trimmed; the zero polynomial is the empty sequence. Coefficients are
/// exact integers for counting, exact rationals for cyclotomic remainders.
template <typename T>
struct Poly {
  std::vector<T> c;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }

  static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
  static Poly monomial(long deg, T v = T(1)) {
    std::vector<T> cs(deg + 1, T(0));
    cs[deg] = std::move(v);
    return Poly(std::move(cs));
  }

  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }  // -1 for zero
  T coeff(long j) const {
    if (j < 0 || j >= static_cast<long>(c.size())) return T(0);
    return c[j];
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool operator==(const Poly&) const = default;
};

using QPoly = Poly<Int>;
using QPolyRat = Poly<Rat>;

template <typename T>
Poly<T> operator+(const Poly<T>& a, const Poly<T>& b) {
  std::vector<T> c(std::max(a.c.size(), b.c.size()), T(0));
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.coeff(j) + b.coeff(j);
  return Poly<T>(std::move(c));
}

template <typename T>
Poly<T> operator-(const Poly<T>& a, const Poly<T>& b) {
  std::vector<T> c(std::max(a.c.size(), b.c.size()), T(0));
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.coeff(j) - b.coeff(j);
  return Poly<T>(std::move(c));
}

template <typename T>
Poly<T> operator*(const Poly<T>& a, const Poly<T>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<T> c(a.c.size() + b.c.size() - 1, T(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return Poly<T>(std::move(c));
}

template <typename T>
Poly<T> scale(const Poly<T>& a, const T& v) {
  std::vector<T> c = a.c;
  for (auto& x : c) x *= v;
  return Poly<T>(std::move(c));
}

/// Long division by a monic divisor; exact in Z[q] whenever it is used here.
/// Returns (quotient, remainder).
template <typename T>
std::pair<Poly<T>, Poly<T>> divmod_monic(const Poly<T>& a, const Poly<T>& d) {
  require(!d.is_zero() && d.c.back() == 1, "divisor must be monic");
  std::vector<T> rem = a.c;
  const long dd = d.degree();
  if (a.degree() < dd) return {Poly<T>{}, a};
  std::vector<T> quo(a.degree() - dd + 1, T(0));
  for (long j = a.degree(); j >= dd; --j) {
    T lead = rem[j];
    if (lead == 0) continue;
    quo[j - dd] = lead;
    for (long k = 0; k <= dd; ++k) rem[j - dd + k] -= lead * d.c[k];
  }
  return {Poly<T>(std::move(quo)), Poly<T>(std::move(rem))};
}

template <typename T>
T poly_eval(const Poly<T>& a, const T& x) {
  T acc(0);
  for (std::size_t j = a.c.size(); j-- > 0;) acc = acc * x + a.c[j];
  return acc;
}

template <typename T>
std::string poly_to_string(const Poly<T>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (std::size_t j = 0; j < a.c.size(); ++j) {
    if (a.c[j] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string cs;
    if constexpr (std::is_same_v<T, Rat>) cs = rat_to_string(a.c[j]);
    else cs = a.c[j].str();
    if (j == 0) out += cs;
    else {
      out += (cs == "1" ? "" : cs + "*");
      out += "q";
      if (j > 1) out += "^" + std::to_string(j);
    }
  }
  return out;
}

inline QPolyRat to_rational(const QPoly& p) {
  std::vector<Rat> c;
  c.reserve(p.c.size());
  for (const auto& x : p.c) c.emplace_back(x);
  return QPolyRat(std::move(c));
}

// ---------------------------------------------------------------------------
// Elementary number theory.
// ---------------------------------------------------------------------------

inline std::vector<std::pair<long, int>> factorize(long n) {
  require(n >= 1, "factorize: n must be positive");
  std::vector<std::pair<long, int>> fac;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      fac.emplace_back(p, e);
    }
  if (n > 1) fac.emplace_back(n, 1);
  return fac;
}

inline long euler_phi(long d) {
  require(d >= 1, "euler_phi: d must be positive");
  long out = d;
  for (const auto& [p, e] : factorize(d)) out = out / p * (p - 1);
  return out;
}

inline long moebius(long d) {
  require(d >= 1, "moebius: d must be positive");
  long out = 1;
  for (const auto& [p, e] : factorize(d)) {
    if (e > 1) return 0;
    out = -out;
  }
  return out;
}

/// phi_r(d) = phi(d) mu(d / gcd(d,r)) / phi(d / gcd(d,r)); always an integer.
inline long phi_r(long d, long r) {
  require(d >= 1, "phi_r: d must be positive");
  const long g = std::gcd(d, r);  // gcd(d, 0) = d
  const long q = d / g;
  const long num = euler_phi(d) * moebius(q);
  internal_check(num % euler_phi(q) == 0, "phi_r: non-integral quotient");
  return num / euler_phi(q);
}

inline std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// q-integers, q-multinomials and cyclotomic polynomials.
// ---------------------------------------------------------------------------

/// [n]_{q^r} = 1 + q^r + ... + q^{(n-1)r}.
inline QPoly q_int(long n, long r = 1) {
  require(n >= 0 && r >= 1, "q_int: bad arguments");
  std::vector<Int> c(n == 0 ? 0 : (n - 1) * r + 1, Int(0));
  for (long j = 0; j < n; ++j) c[j * r] = 1;
  return QPoly(std::move(c));
}

inline QPoly q_factorial(long n) {
  QPoly out = QPoly::constant(Int(1));
  for (long k = 1; k <= n; ++k) out = out * q_int(k);
  return out;
}

/// The q-multinomial [m]! / ([k_0]! ... [k_l]!), computed by repeated exact
/// division; zero when the parts do not sum to m.
inline QPoly q_multinomial(long m, const std::vector<long>& parts) {
  require(m >= 0, "q_multinomial: m must be non-negative");
  long total = 0;
  for (long k : parts) {
    require(k >= 0, "q_multinomial: parts must be non-negative");
    total += k;
  }
  if (total != m) return {};
  QPoly out = q_factorial(m);
  for (long k : parts) {
    auto [quo, rem] = divmod_monic(out, q_factorial(k));
    internal_check(rem.is_zero(), "q_multinomial: inexact division");
    out = std::move(quo);
  }
  return out;
}

/// Plain multinomial with the convention that any non-integral argument
/// (used with rational entries k_i/d) gives zero.
inline Int multinomial(long m, const std::vector<long>& parts) {
  long total = 0;
  for (long k : parts) {
    if (k < 0) return 0;
    total += k;
  }
  if (total != m) return 0;
  Int out = 1;
  long seen = 0;
  for (long k : parts)
    for (long j = 1; j <= k; ++j) {
      out = out * Int(++seen);
      out /= Int(j);  // exact: prefix products of binomials
    }
  return out;
}

/// Reduction modulo q^m - 1: coefficient j of the result collects all
/// coefficients of p in degrees congruent to j.
template <typename T>
Poly<T> reduce_mod_qm1(const Poly<T>& p, long m) {
  require(m >= 1, "reduce_mod_qm1: m must be positive");
  std::vector<T> c(m, T(0));
  for (long j = 0; j < static_cast<long>(p.c.size()); ++j) c[j % m] += p.c[j];
  return Poly<T>(std::move(c));
}

/// The d-th cyclotomic polynomial, by exact division of q^d - 1 by the
/// cyclotomic polynomials of the proper divisors.
inline QPoly cyclotomic(long d) {
  require(d >= 1, "cyclotomic: d must be positive");
  QPoly num = QPoly::monomial(d, Int(1)) - QPoly::constant(Int(1));
  for (long dp : divisors(d)) {
    if (dp == d) continue;
    auto [quo, rem] = divmod_monic(num, cyclotomic(dp));
    internal_check(rem.is_zero(), "cyclotomic: inexact division");
    num = std::move(quo);
  }
  return num;
}

/// psi_d: the remainder modulo Phi_d, i.e. the image in Q[q]/(Phi_d(q)).
inline QPolyRat project_cyclotomic(const QPolyRat& p, long d) {
  const QPolyRat phi = to_rational(cyclotomic(d));
  return divmod_monic(p, phi).second;
}

inline QPolyRat project_cyclotomic(const QPoly& p, long d) {
  return project_cyclotomic(to_rational(p), d);
}

}  // namespace pathcrystal
