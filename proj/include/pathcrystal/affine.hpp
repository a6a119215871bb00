#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <vector>

#include "pathcrystal/common.hpp"
#include "pathcrystal/crystal.hpp"
#include "pathcrystal/letters.hpp"
#include "pathcrystal/weight.hpp"

namespace pathcrystal {

/// An element b (x) z^k of the affinization: a word with an integer
/// z-exponent. Its weight is wt(word) + z delta.
struct AffineElement {
  Word word;
  long z = 0;
  bool operator==(const AffineElement&) const = default;
  bool operator<(const AffineElement& o) const {
    if (word != o.word) return word < o.word;
    return z < o.z;
  }
};

inline nlohmann::json affine_to_json(const AffineElement& x) {
  return nlohmann::json{{"word", x.word}, {"z", x.z}};
}

/// The affinization of the word crystal: index-0 operators shift the
/// z-exponent (e_0 up, f_0 down), eps is unchanged from the word.
struct AffineCrystal {
  WordCrystal words;
  using Elem = AffineElement;

  AffineCrystal(int ell, long m) : words(ell, m) {}

  int rank() const { return words.rank(); }
  const CartanData& cd() const { return words.cd(); }
  long m() const { return words.m; }

  std::optional<AffineElement> e(int i, const AffineElement& x) const {
    auto w = words.e(i, x.word);
    if (!w) return std::nullopt;
    return AffineElement{std::move(*w), x.z + (cd().mod(i) == 0 ? 1 : 0)};
  }
  std::optional<AffineElement> f(int i, const AffineElement& x) const {
    auto w = words.f(i, x.word);
    if (!w) return std::nullopt;
    return AffineElement{std::move(*w), x.z - (cd().mod(i) == 0 ? 1 : 0)};
  }
  long eps(int i, const AffineElement& x) const { return words.eps(i, x.word); }
  Weight wt(const AffineElement& x) const {
    Weight w = words.wt(x.word);
    w.dlt += x.z;
    return w;
  }
  long phi(int i, const AffineElement& x) const {
    return eps(i, x) + pair_long(cd(), i, wt(x));
  }
  nlohmann::json to_json(const AffineElement& x) const { return affine_to_json(x); }

  AffineElement source(long z) const { return AffineElement{words.source(), z}; }
};

/// The indecomposable component containing b (x) z^k is labelled by
/// N(word) + k modulo m, in {0,...,m-1}.
inline long component_of(const AffineElement& x) {
  const long m = static_cast<long>(x.word.size());
  const long n = (word_stats(x.word).N + x.z) % m;
  return n < 0 ? n + m : n;
}

/// All elements of the component with the given residue whose z-exponent
/// lies in [zmin, zmax], ordered by z and then by word.
inline std::vector<AffineElement> enumerate_component(const CartanData& cd, long m,
                                                      long n, long zmin, long zmax,
                                                      std::size_t budget = 4'000'000) {
  require(m >= 1, "m must be at least 1");
  require(n >= 0 && n < m, "component residue out of range");
  std::vector<AffineElement> out;
  if (zmin > zmax) return out;
  const auto words = enumerate_words(cd, m, {}, budget);
  for (long z = zmin; z <= zmax; ++z)
    for (const auto& w : words)
      if (component_of({w, z}) == n) out.push_back({w, z});
  return out;
}

/// The monomial (e_1^m ... e_l^m e_0^m)^r, which moves b_0^{(x)m} (x) z^k
/// up to z^{k+rm}; with Gen::F it is (f_0^m f_l^m ... f_1^m)^r, moving down.
inline Monomial ladder_monomial(const CartanData& cd, long m, long r, Gen kind) {
  Monomial sweep;
  if (kind == Gen::E) {
    for (int i = 1; i <= cd.ell; ++i) sweep.push_back({Gen::E, i, m});
    sweep.push_back({Gen::E, 0, m});
  } else {
    sweep.push_back({Gen::F, 0, m});
    for (int i = cd.ell; i >= 1; --i) sweep.push_back({Gen::F, i, m});
  }
  Monomial mono;
  for (long rep = 0; rep < r; ++rep) mono.insert(mono.end(), sweep.begin(), sweep.end());
  return mono;
}

}  // namespace pathcrystal
