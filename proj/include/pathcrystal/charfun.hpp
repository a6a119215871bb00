#pragma once

#include <nlohmann/json.hpp>

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "pathcrystal/common.hpp"
#include "pathcrystal/letters.hpp"
#include "pathcrystal/qpoly.hpp"

namespace pathcrystal {

// Residue bookkeeping: B^s denotes the words of the given weight tuple with
// N = s (mod m). count_by_residue entry n holds #B^{-n}; every public
// surface that takes a component residue s converts with n = -s (mod m)
// right here and nowhere else.

inline long residue_mod(long v, long m) {
  const long r = v % m;
  return r < 0 ? r + m : r;
}

/// Entry n is the coefficient of q^n in the q-multinomial reduced modulo
/// q^m - 1, which counts the words with N = -n (mod m).
inline std::vector<Int> count_by_residue(const CartanData& cd, long m,
                                         const std::vector<long>& tuple) {
  require(static_cast<int>(tuple.size()) == cd.n(), "tuple length must be l+1");
  require(std::accumulate(tuple.begin(), tuple.end(), 0L) == m,
          "tuple must sum to m");
  const QPoly reduced = reduce_mod_qm1(q_multinomial(m, tuple), m);
  std::vector<Int> out(m, Int(0));
  for (long n = 0; n < m; ++n) out[n] = reduced.coeff(n);
  return out;
}

/// #B^n in closed form: (1/m) sum_{d | gcd(tuple)} phi_{-n}(d) multinomial.
inline Int closed_count(const CartanData& cd, long m, const std::vector<long>& tuple,
                        long n) {
  require(static_cast<int>(tuple.size()) == cd.n(), "tuple length must be l+1");
  require(std::accumulate(tuple.begin(), tuple.end(), 0L) == m,
          "tuple must sum to m");
  long g = 0;
  for (long k : tuple) g = std::gcd(g, k);
  Int acc = 0;
  for (long d : divisors(g)) {
    std::vector<long> scaled;
    for (long k : tuple) scaled.push_back(k / d);
    acc += Int(phi_r(d, -n)) * multinomial(m / d, scaled);
  }
  internal_check(acc % m == 0, "closed_count: division by m is not exact");
  const Int out = acc / m;
  internal_check(out >= 0, "closed_count: negative count");
  return out;
}

/// #B^s for a component residue s (the one conversion point to the
/// coefficient index of count_by_residue).
inline Int count_words_with_residue(const CartanData& cd, long m,
                                    const std::vector<long>& tuple, long s) {
  return count_by_residue(cd, m, tuple)[residue_mod(-s, m)];
}

/// Brute-force #B^s by enumeration; the oracle for everything above.
inline Int brute_count_with_residue(const CartanData& cd, long m,
                                    const std::vector<long>& tuple, long s,
                                    std::size_t budget = 4'000'000) {
  WordFilter filter;
  filter.tuple = tuple;
  filter.residue = residue_mod(s, m);
  return Int(enumerate_words(cd, m, filter, budget).size());
}

/// C~(tuple; d) = (d/m) sum_{dd'|m} mu(d') multinomial(m/(dd'); tuple/(dd')),
/// multinomials with non-integral entries vanishing.
inline Rat c_tilde(const CartanData& cd, long m, const std::vector<long>& tuple, long d) {
  require(static_cast<int>(tuple.size()) == cd.n(), "tuple length must be l+1");
  require(d >= 1 && m % d == 0, "c_tilde: d must divide m");
  Int acc = 0;
  for (long dp = 1; d * dp <= m; ++dp) {
    if (m % (d * dp) != 0) continue;
    const long dd = d * dp;
    bool integral = true;
    std::vector<long> scaled;
    for (long k : tuple) {
      if (k % dd != 0) { integral = false; break; }
      scaled.push_back(k / dd);
    }
    if (!integral) continue;
    acc += Int(moebius(dp)) * multinomial(m / dd, scaled);
  }
  return Rat(Int(d) * acc, Int(m));
}

// ---------------------------------------------------------------------------
// Component characters.
// ---------------------------------------------------------------------------

/// Weight multiplicities of one component over a z-window: the count at
/// (tuple, z) is the number of affinized elements of that classical weight
/// and z-exponent in component n.
struct CharacterWindow {
  int ell = 1;
  long m = 1;
  long component = 0;
  long zmin = 0, zmax = -1;
  struct Entry {
    std::vector<long> tuple;
    long z;
    Int count;
  };
  std::vector<Entry> entries;

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : entries)
      rows.push_back({{"tuple", e.tuple},
                      {"z", e.z},
                      {"count", static_cast<std::int64_t>(e.count)}});
    return nlohmann::json{{"l", ell},
                          {"m", m},
                          {"component", component},
                          {"window", {zmin, zmax}},
                          {"entries", rows}};
  }
};

/// Fills the window from the closed form; the q-polynomial route is computed
/// alongside and any disagreement is an internal error.
inline CharacterWindow component_character(const CartanData& cd, long m, long n,
                                           long zmin, long zmax) {
  require(m >= 1, "m must be at least 1");
  require(n >= 0 && n < m, "component residue out of range");
  CharacterWindow win;
  win.ell = cd.ell;
  win.m = m;
  win.component = n;
  win.zmin = zmin;
  win.zmax = zmax;
  for (const auto& tuple : enumerate_tuples(cd.n(), m)) {
    const auto by_coeff = count_by_residue(cd, m, tuple);
    for (long z = zmin; z <= zmax; ++z) {
      const long s = residue_mod(n - z, m);  // #B^{n-k} at z = k
      const Int closed = closed_count(cd, m, tuple, s);
      const Int viapoly = by_coeff[residue_mod(-s, m)];
      internal_check(closed == viapoly,
                     "component_character: closed form and q-polynomial disagree");
      win.entries.push_back({tuple, z, closed});
    }
  }
  return win;
}

inline std::string character_table_text(const CharacterWindow& win) {
  std::ostringstream os;
  os << "component " << win.component << " of the affinized tensor power, l="
     << win.ell << " m=" << win.m << ", z in [" << win.zmin << ", " << win.zmax
     << "]\n";
  os << "tuple";
  for (long z = win.zmin; z <= win.zmax; ++z) os << '\t' << "z=" << z;
  os << '\n';
  const long width = win.zmax - win.zmin + 1;
  for (std::size_t row = 0; row < win.entries.size(); row += width) {
    os << '(';
    const auto& t = win.entries[row].tuple;
    for (std::size_t j = 0; j < t.size(); ++j) os << (j ? "," : "") << t[j];
    os << ')';
    for (long k = 0; k < width; ++k) os << '\t' << win.entries[row + k].count.str();
    os << '\n';
  }
  return os.str();
}

}  // namespace pathcrystal
