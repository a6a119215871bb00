#pragma once

#include <nlohmann/json.hpp>

#include <numeric>
#include <optional>
#include <vector>

#include "pathcrystal/common.hpp"
#include "pathcrystal/rational.hpp"

namespace pathcrystal {

/// Residue in Z/(l+1)Z used to index simple roots, letters and fundamental
/// weights. Arithmetic always reduces modulo the rank.
struct CyclicIndex {
  int modulus;  // l + 1
  int value;    // in [0, modulus)

  CyclicIndex(int mod, long v) : modulus(mod) {
    require(mod >= 2, "cyclic index modulus must be at least 2");
    long r = v % mod;
    if (r < 0) r += mod;
    value = static_cast<int>(r);
  }

  CyclicIndex operator+(long k) const { return CyclicIndex(modulus, value + k); }
  CyclicIndex operator-(long k) const { return CyclicIndex(modulus, value - k); }
  bool operator==(const CyclicIndex& o) const = default;
};

/// A weight of the affine type-A lattice, stored on the fixed basis
/// {Lambda_0, ..., Lambda_l, delta}. Coefficients are exact rationals;
/// lattice points are exactly the weights with integer coefficients.
struct Weight {
  std::vector<Rat> lam;  // coefficients of Lambda_0..Lambda_l
  Rat dlt;               // coefficient of delta

  Weight() = default;
  explicit Weight(int ell) : lam(ell + 1, Rat(0)), dlt(0) {}

  int ell() const { return static_cast<int>(lam.size()) - 1; }

  bool is_zero() const {
    for (const auto& c : lam)
      if (c != 0) return false;
    return dlt == 0;
  }

  bool is_lattice() const {
    for (const auto& c : lam)
      if (!is_integer(c)) return false;
    return is_integer(dlt);
  }

  Weight& operator+=(const Weight& o) {
    require(lam.size() == o.lam.size(), "weight rank mismatch");
    for (std::size_t i = 0; i < lam.size(); ++i) lam[i] += o.lam[i];
    dlt += o.dlt;
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    require(lam.size() == o.lam.size(), "weight rank mismatch");
    for (std::size_t i = 0; i < lam.size(); ++i) lam[i] -= o.lam[i];
    dlt -= o.dlt;
    return *this;
  }
  Weight& operator*=(const Rat& c) {
    for (auto& x : lam) x *= c;
    dlt *= c;
    return *this;
  }

  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(const Rat& c, Weight a) { return a *= c; }
  friend Weight operator-(Weight a) {
    for (auto& x : a.lam) x = -x;
    a.dlt = -a.dlt;
    return a;
  }

  bool operator==(const Weight& o) const = default;

  // Lexicographic order on (lam, dlt); used only for canonical sorting.
  bool operator<(const Weight& o) const {
    if (lam != o.lam) return lam < o.lam;
    return dlt < o.dlt;
  }
};

/// Cartan data of affine sl_{l+1}: the cyclic Cartan matrix
/// a_ij = 2 d(i,j) - d(i,j-1) - d(i-1,j) with indices mod l+1.
struct CartanData {
  int ell;
  std::vector<std::vector<int>> a;

  explicit CartanData(int l) : ell(l) {
    require(l >= 1, "rank l must be at least 1");
    const int n = l + 1;
    a.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int v = 2 * kron(i, j) - kron(i, mod(j - 1)) - kron(mod(i - 1), j);
        a[i][j] = v;
      }
  }

  int n() const { return ell + 1; }
  int mod(long k) const { return CyclicIndex(n(), k).value; }
  int cartan(int i, int j) const { return a[mod(i)][mod(j)]; }

  Weight zero() const { return Weight(ell); }

  Weight fundamental(long i) const {
    Weight w(ell);
    w.lam[mod(i)] = 1;
    return w;
  }

  Weight delta() const {
    Weight w(ell);
    w.dlt = 1;
    return w;
  }

private:
  static int kron(int i, int j) { return i == j ? 1 : 0; }
};

/// alpha_i^vee(w): the coefficient of Lambda_i; delta pairs to zero.
inline Rat pair(const CartanData& cd, long i, const Weight& w) {
  require(w.ell() == cd.ell, "weight rank mismatch");
  return w.lam[cd.mod(i)];
}

/// alpha_i = 2 Lambda_i - Lambda_{i-1} - Lambda_{i+1} + [i=0] delta.
/// The delta coefficient is pinned by alpha_0 = delta - (alpha_1+...+alpha_l).
inline Weight simple_root(const CartanData& cd, long i) {
  const int j = cd.mod(i);
  Weight w(cd.ell);
  w.lam[j] += 2;
  w.lam[cd.mod(j - 1)] -= 1;
  w.lam[cd.mod(j + 1)] -= 1;
  if (j == 0) w.dlt = 1;
  return w;
}

/// Classical part of alpha_i (delta coefficient dropped); this is the weight
/// shift of the finite crystals, whose weights live modulo delta.
inline Weight classical_simple_root(const CartanData& cd, long i) {
  Weight w = simple_root(cd, i);
  w.dlt = 0;
  return w;
}

/// s_i(w) = w - alpha_i^vee(w) alpha_i.
inline Weight reflect(const CartanData& cd, long i, const Weight& w) {
  return w - pair(cd, i, w) * simple_root(cd, i);
}

/// Weight of a word with letter multiplicities (k_0,...,k_l):
/// sum k_i (Lambda_{i+1} - Lambda_i), no delta part.
inline Weight tuple_to_weight(const CartanData& cd, const std::vector<long>& k) {
  require(static_cast<int>(k.size()) == cd.n(), "tuple length must be l+1");
  Weight w(cd.ell);
  for (int i = 0; i < cd.n(); ++i) {
    w.lam[cd.mod(i + 1)] += k[i];
    w.lam[i] -= k[i];
  }
  return w;
}

/// Inverse of tuple_to_weight on classical weights of B_l(m): solves
/// alpha_i^vee(nu) = k_{i-1} - k_i together with sum k_i = m. Returns nothing
/// when the solution is non-integral or has a negative entry.
inline std::optional<std::vector<long>> weight_to_tuple(const CartanData& cd,
                                                        const Weight& nu,
                                                        long m) {
  require(nu.dlt == 0, "weight_to_tuple requires a zero delta coefficient");
  // (l+1) k_l = m - (a_1 + 2 a_2 + ... + l a_l) with a_i = alpha_i^vee(nu).
  Rat acc(0);
  for (int i = 1; i <= cd.ell; ++i) acc += Rat(i) * pair(cd, i, nu);
  const Rat kl = (Rat(m) - acc) / Rat(cd.n());
  if (!is_integer(kl)) return std::nullopt;

  std::vector<Rat> k(cd.n());
  k[cd.ell] = kl;
  for (int i = cd.ell - 1; i >= 0; --i) k[i] = k[i + 1] + pair(cd, i + 1, nu);

  std::vector<long> out(cd.n());
  Int total = 0;
  for (int i = 0; i < cd.n(); ++i) {
    if (!is_integer(k[i]) || k[i] < 0) return std::nullopt;
    out[i] = to_long(numer(k[i]));
    total += numer(k[i]);
  }
  if (total != m) return std::nullopt;
  // The remaining equation alpha_0^vee(nu) = k_l - k_0 must hold as well;
  // it fails exactly when nu is not a weight of B_l(m).
  if (pair(cd, 0, nu) != k[cd.ell] - k[0]) return std::nullopt;
  return out;
}

inline nlohmann::json weight_to_json(const Weight& w) {
  nlohmann::json lam = nlohmann::json::array();
  for (const auto& c : w.lam) lam.push_back(rat_to_json(c));
  return nlohmann::json{{"lam", lam}, {"dlt", rat_to_json(w.dlt)}};
}

inline Weight weight_from_json(const nlohmann::json& j) {
  Weight w;
  for (const auto& c : j.at("lam")) w.lam.push_back(rat_from_json(c));
  require(!w.lam.empty(), "weight needs at least one Lambda coefficient");
  w.dlt = rat_from_json(j.at("dlt"));
  return w;
}

}  // namespace pathcrystal
