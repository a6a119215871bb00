#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "pathcrystal/common.hpp"
#include "pathcrystal/crystal.hpp"
#include "pathcrystal/weight.hpp"

namespace pathcrystal {

/// A word c_1..c_m over the alphabet {0,...,l}, stored left-to-right in
/// tensor order: c_1 is the leftmost factor (Kashiwara k = 1).
using Word = std::vector<int>;

inline nlohmann::json word_to_json(const Word& w) { return nlohmann::json(w); }

/// The (l+1)-letter crystal: e_i b_j = [i=j] b_{j-1}, f_i b_j = [j=i-1] b_i,
/// eps_i(b_j) = [i=j], wt b_j = Lambda_{j+1} - Lambda_j (indices cyclic,
/// weights taken modulo delta).
struct LetterCrystal {
  CartanData cartan;
  using Elem = int;

  explicit LetterCrystal(int ell) : cartan(ell) {}

  int rank() const { return cartan.ell; }
  const CartanData& cd() const { return cartan; }

  std::optional<int> e(int i, int j) const {
    if (cartan.mod(i) != cartan.mod(j)) return std::nullopt;
    return cartan.mod(j - 1);
  }
  std::optional<int> f(int i, int j) const {
    if (cartan.mod(i - 1) != cartan.mod(j)) return std::nullopt;
    return cartan.mod(i);
  }
  long eps(int i, int j) const { return cartan.mod(i) == cartan.mod(j) ? 1 : 0; }
  Weight wt(int j) const {
    Weight w(cartan.ell);
    w.lam[cartan.mod(j + 1)] += 1;
    w.lam[cartan.mod(j)] -= 1;
    return w;
  }
  long phi(int i, int j) const { return eps(i, j) + pair_long(cartan, i, wt(j)); }
  nlohmann::json to_json(int j) const { return nlohmann::json(j); }
};

/// Words of fixed length m as the m-fold tensor power of the letter crystal.
/// The operations follow the tensor rules of the generic engine; here the
/// Kashiwara functions are evaluated in plain integer arithmetic since the
/// letter statistics are 0/1 (the generic route is cross-checked in tests).
struct WordCrystal {
  LetterCrystal letters;
  long m;
  using Elem = Word;

  WordCrystal(int ell, long m_) : letters(ell), m(m_) {
    require(m_ >= 1, "word length m must be at least 1");
  }

  int rank() const { return letters.rank(); }
  const CartanData& cd() const { return letters.cartan; }

  // r^i_k = eps_i(c_k) - sum_{j<k} alpha_i^vee(wt c_j), with
  // eps_i(c) = [i=c] and alpha_i^vee(wt c) = [i=c+1] - [i=c].
  std::vector<long> kashiwara(int i, const Word& w) const {
    const int ii = cd().mod(i);
    std::vector<long> r(w.size());
    long shift = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      r[k] = (w[k] == ii ? 1 : 0) - shift;
      shift += (cd().mod(w[k] + 1) == ii ? 1 : 0) - (w[k] == ii ? 1 : 0);
    }
    return r;
  }

  long eps(int i, const Word& w) const {
    const auto r = kashiwara(i, w);
    return *std::max_element(r.begin(), r.end());
  }

  std::optional<Word> e(int i, const Word& w) const {
    const auto r = kashiwara(i, w);
    const long mx = *std::max_element(r.begin(), r.end());
    const std::size_t k = std::find(r.begin(), r.end(), mx) - r.begin();
    auto up = letters.e(i, w[k]);
    if (!up) return std::nullopt;
    Word out = w;
    out[k] = *up;
    return out;
  }

  std::optional<Word> f(int i, const Word& w) const {
    const auto r = kashiwara(i, w);
    const long mx = *std::max_element(r.begin(), r.end());
    std::size_t k = w.size();
    for (std::size_t j = w.size(); j-- > 0;)
      if (r[j] == mx) { k = j; break; }
    auto down = letters.f(i, w[k]);
    if (!down) return std::nullopt;
    Word out = w;
    out[k] = *down;
    return out;
  }

  Weight wt(const Word& w) const { return tensor_wt(letters, w); }
  long phi(int i, const Word& w) const {
    const int ii = cd().mod(i);
    long p = 0;
    for (int c : w) p += (cd().mod(c + 1) == ii ? 1 : 0) - (c == ii ? 1 : 0);
    return eps(i, w) + p;
  }
  nlohmann::json to_json(const Word& w) const { return word_to_json(w); }

  Word source() const { return Word(m, 0); }  // b_0^{(x)m}
};

// ---------------------------------------------------------------------------
// Word statistics.
//
// The descent statistics read the word through subscripts i_r = c_{m-r+1},
// i.e. i_1 is the rightmost letter. This is the single place where that
// conversion happens (rho below shares it through word_stats).
// ---------------------------------------------------------------------------

struct WordStats {
  std::vector<long> desc;       // subset of [1, m-1]
  std::vector<long> maj_tilde;  // 0 = n_0 < n_1 < ... < n_k = m
  long N = 0;                   // sum_r r (n_r - n_{r-1})
  long Maj = 0;                 // sum of the descent positions
};

inline WordStats word_stats(const Word& w) {
  require(!w.empty(), "word must be non-empty");
  const long m = static_cast<long>(w.size());
  WordStats st;
  // i_r > i_{r+1}  <=>  c_{m-r+1} > c_{m-r}, letters compared as integers.
  for (long r = 1; r < m; ++r)
    if (w[m - r] > w[m - r - 1]) st.desc.push_back(r);
  st.maj_tilde.push_back(0);
  for (long d : st.desc) st.maj_tilde.push_back(d);
  st.maj_tilde.push_back(m);
  for (std::size_t r = 1; r < st.maj_tilde.size(); ++r)
    st.N += static_cast<long>(r) * (st.maj_tilde[r] - st.maj_tilde[r - 1]);
  for (long d : st.desc) st.Maj += d;
  return st;
}

inline nlohmann::json stats_to_json(const WordStats& st) {
  return nlohmann::json{{"desc", st.desc}, {"N", st.N}, {"Maj", st.Maj}};
}

/// rho_s(b): the unique r with n_{r-1} < m-s+1 <= n_r, for 1 <= s <= m.
inline long rho(const Word& w, long s) {
  const long m = static_cast<long>(w.size());
  require(s >= 1 && s <= m, "rho: s out of range");
  const auto nt = word_stats(w).maj_tilde;
  const long target = m - s + 1;
  for (std::size_t r = 1; r < nt.size(); ++r)
    if (nt[r - 1] < target && target <= nt[r]) return static_cast<long>(r);
  throw cross_check_error("rho: no interval found");  // unreachable
}

/// Letter multiplicities (k_0,...,k_l) of a word.
inline std::vector<long> word_tuple(const CartanData& cd, const Word& w) {
  std::vector<long> k(cd.n(), 0);
  for (int c : w) {
    require(c >= 0 && c < cd.n(), "letter out of range");
    ++k[c];
  }
  return k;
}

// ---------------------------------------------------------------------------
// Enumeration.
// ---------------------------------------------------------------------------

struct WordFilter {
  std::optional<std::vector<long>> tuple;  // letter multiplicities
  std::optional<long> residue;             // N mod m
};

/// All words of length m in lexicographic order, optionally filtered by
/// letter multiplicities and/or the residue of N modulo m.
inline std::vector<Word> enumerate_words(const CartanData& cd, long m,
                                         const WordFilter& filter = {},
                                         std::size_t budget = 4'000'000) {
  require(m >= 1, "m must be at least 1");
  double total = 1;
  for (long j = 0; j < m; ++j) total *= cd.n();
  if (total > static_cast<double>(budget))
    throw budget_error("enumerate_words: (l+1)^m exceeds the budget");

  std::vector<Word> out;
  Word w(m, 0);
  for (;;) {
    bool keep = true;
    if (filter.tuple && word_tuple(cd, w) != *filter.tuple) keep = false;
    if (keep && filter.residue) {
      const long n = word_stats(w).N % m;
      const long want = ((*filter.residue % m) + m) % m;
      if (((n % m) + m) % m != want) keep = false;
    }
    if (keep) out.push_back(w);
    long pos = m - 1;
    while (pos >= 0 && w[pos] == cd.ell) w[pos--] = 0;
    if (pos < 0) break;
    ++w[pos];
  }
  return out;
}

/// All tuples (k_0,...,k_l) of non-negative integers summing to m, in
/// lexicographic order.
inline std::vector<std::vector<long>> enumerate_tuples(int parts, long m) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur(parts, 0);
  auto rec = [&](auto&& self, int pos, long left) -> void {
    if (pos == parts - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (long v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, m);
  return out;
}

// ---------------------------------------------------------------------------
// Dominant words and raising.
// ---------------------------------------------------------------------------

/// B_l(m)^lambda: the words with eps_i <= alpha_i^vee(lambda) for every i.
inline std::vector<Word> dominant_subset(const CartanData& cd, long m, const Weight& lambda) {
  require(lambda.is_lattice(), "lambda must be a lattice point");
  WordCrystal wc(cd.ell, m);
  std::vector<Word> out;
  for (const auto& w : enumerate_words(cd, m)) {
    bool ok = true;
    for (int i = 0; i <= cd.ell && ok; ++i)
      if (wc.eps(i, w) > pair_long(cd, i, lambda)) ok = false;
    if (ok) out.push_back(w);
  }
  return out;
}

/// b(i,m) = b_i (x) b_{i+1} (x) ... (x) b_{i+m-1}, indices cyclic.
inline Word b_im(const CartanData& cd, long i, long m) {
  require(m >= 1, "m must be at least 1");
  Word w;
  for (long t = 0; t < m; ++t) w.push_back(cd.mod(i + t));
  return w;
}

inline bool is_dominant(const CartanData& cd, const Weight& lambda) {
  for (int i = 0; i <= cd.ell; ++i)
    if (pair(cd, i, lambda) < 0) return false;
  return true;
}

/// lambda in Z delta means every pairing vanishes; such weights generate the
/// trivial path crystal and are rejected by the raising algorithms.
inline bool is_zdelta(const CartanData& cd, const Weight& lambda) {
  for (int i = 0; i <= cd.ell; ++i)
    if (pair(cd, i, lambda) != 0) return false;
  return true;
}

struct RaiseResult {
  Monomial monomial;  // over the e_i, written order, applied right-to-left
  Word word;          // the dominant word reached
};

/// Transforms w into an element of B_l(m)^lambda by the constructive
/// procedure: find the longest dominant prefix, then fix the first failing
/// letter by the cyclic loop of e-steps, each with exponent
/// eps_{i_r}(u_{r-1}) - alpha_{i_r}^vee(lambda) > 0.
inline RaiseResult raise_to_dominant(const CartanData& cd, const Word& w, const Weight& lambda) {
  require(lambda.is_lattice() && is_dominant(cd, lambda),
          "raise_to_dominant: lambda must be a dominant lattice point");
  require(!is_zdelta(cd, lambda), "raise_to_dominant: lambda must not be a multiple of delta");
  const long m = static_cast<long>(w.size());
  WordCrystal wc(cd.ell, m);

  auto prefix_dominant = [&](const Word& u, long s) {
    if (s == 0) return true;
    const Word pre(u.begin(), u.begin() + s);
    for (int j = 0; j <= cd.ell; ++j)
      if (wc.eps(j, pre) > pair_long(cd, j, lambda)) return false;
    return true;
  };
  auto longest_dominant_prefix = [&](const Word& u) {
    long s = 0;
    while (s < m && prefix_dominant(u, s + 1)) ++s;
    return s;
  };

  RaiseResult res;
  res.word = w;
  long s = longest_dominant_prefix(res.word);
  while (s < m) {
    for (int spin = 0;; ++spin) {
      internal_check(spin <= cd.ell, "raise_to_dominant: letter loop did not close");
      const int i = res.word[s];
      const long exp = wc.eps(i, res.word) - pair_long(cd, i, lambda);
      internal_check(exp > 0, "raise_to_dominant: non-positive exponent");
      for (long t = 0; t < exp; ++t) {
        auto up = wc.e(i, res.word);
        internal_check(up.has_value(), "raise_to_dominant: e vanished below eps");
        res.word = std::move(*up);
      }
      monomial_push_left(res.monomial, Gen::E, i, exp);
      internal_check(res.word[s] == cd.mod(i - 1),
                     "raise_to_dominant: failing letter did not step down");
      if (prefix_dominant(res.word, s + 1)) break;
    }
    const long s2 = longest_dominant_prefix(res.word);
    internal_check(s2 > s, "raise_to_dominant: dominant prefix did not grow");
    s = s2;
  }
  return res;
}

struct SourceMonomial {
  Monomial monomial;  // over the f_i, sends b_0^{(x)m} to the word
  long n_f = 0;       // total exponent on index 0
};

/// Shortest monomial over F taking b_0^{(x)m} to w, found by deterministic
/// BFS (layers in encoding order, generators in the order f_0..f_l).
inline SourceMonomial f_monomial_from_source(const CartanData& cd, const Word& w,
                                             std::size_t budget = 4'000'000) {
  const long m = static_cast<long>(w.size());
  WordCrystal wc(cd.ell, m);
  const Word src = wc.source();

  std::map<Word, std::pair<Word, int>> parent;  // child -> (parent, index i)
  parent.emplace(src, std::make_pair(Word{}, -1));
  std::vector<Word> layer{src};
  bool found = (w == src);
  while (!found && !layer.empty()) {
    std::sort(layer.begin(), layer.end());
    std::vector<Word> next;
    for (const auto& u : layer) {
      for (int i = 0; i <= cd.ell && !found; ++i) {
        auto v = wc.f(i, u);
        if (!v || parent.count(*v)) continue;
        if (parent.size() >= budget)
          throw budget_error("f_monomial_from_source: budget exceeded");
        parent.emplace(*v, std::make_pair(u, i));
        next.push_back(*v);
        if (*v == w) found = true;
      }
      if (found) break;
    }
    layer = std::move(next);
  }
  internal_check(parent.count(w) > 0, "f_monomial_from_source: word not reached");

  SourceMonomial out;
  Word cur = w;
  while (cur != src) {
    const auto& [par, i] = parent.at(cur);
    // Walking back from w visits the generators in reverse application
    // order, which is exactly the written (left-to-right) order.
    if (!out.monomial.empty() && out.monomial.back().index == i)
      out.monomial.back().exponent += 1;
    else
      out.monomial.push_back(MonomialFactor{Gen::F, i, 1});
    cur = par;
  }
  out.n_f = monomial_exponent_on(out.monomial, Gen::F, 0);
  return out;
}

}  // namespace pathcrystal
