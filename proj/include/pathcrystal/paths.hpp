#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <vector>

#include "pathcrystal/affine.hpp"
#include "pathcrystal/common.hpp"
#include "pathcrystal/crystal.hpp"
#include "pathcrystal/letters.hpp"
#include "pathcrystal/rational.hpp"
#include "pathcrystal/weight.hpp"

namespace pathcrystal {

// ---------------------------------------------------------------------------
// Piecewise-linear paths.
//
// A path is kept in canonical form: consecutive segments never point along
// the same ray, zero-length segments are dropped, and breakpoint times are
// the cumulative L1 arc parameter. Two paths are reparametrization
// equivalent exactly when their canonical forms are equal.
// ---------------------------------------------------------------------------

struct Breakpoint {
  Rat t;
  Weight v;
  bool operator==(const Breakpoint&) const = default;
  bool operator<(const Breakpoint& o) const {
    if (t != o.t) return t < o.t;
    return v < o.v;
  }
};

struct PLPath {
  std::vector<Breakpoint> breaks;  // first (0, 0), last (1, lattice point)

  const Weight& endpoint() const { return breaks.back().v; }
  bool operator==(const PLPath&) const = default;
  bool operator<(const PLPath& o) const { return breaks < o.breaks; }
};

inline nlohmann::json path_to_json(const PLPath& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : p.breaks)
    arr.push_back({{"t", rat_to_json(b.t)}, {"v", weight_to_json(b.v)}});
  return nlohmann::json{{"breaks", arr}};
}

inline PLPath path_from_json(const nlohmann::json& j) {
  PLPath p;
  for (const auto& b : j.at("breaks"))
    p.breaks.push_back({rat_from_json(b.at("t")), weight_from_json(b.at("v"))});
  return p;
}

namespace detail {

inline Rat l1_norm(const Weight& w) {
  Rat acc(0);
  for (const auto& c : w.lam) acc += c < 0 ? -c : c;
  acc += w.dlt < 0 ? -w.dlt : w.dlt;
  return acc;
}

// u and w span the same ray when u = c w with c > 0.
inline bool same_ray(const Weight& u, const Weight& w) {
  Rat c(0);
  for (std::size_t j = 0; j <= u.lam.size(); ++j) {
    const Rat& uw = j < u.lam.size() ? u.lam[j] : u.dlt;
    const Rat& ww = j < w.lam.size() ? w.lam[j] : w.dlt;
    if (ww == 0) {
      if (uw != 0) return false;
      continue;
    }
    if (c == 0) {
      c = uw / ww;
      if (c <= 0) return false;
    } else if (uw != c * ww) {
      return false;
    }
  }
  return c != 0;
}

}  // namespace detail

/// Canonical form of a raw breakpoint list. Rejects non-monotone times,
/// a nonzero start, or a non-lattice endpoint.
inline PLPath canonicalize(const std::vector<Breakpoint>& raw) {
  require(raw.size() >= 2, "path needs at least two breakpoints");
  require(raw.front().t == 0 && raw.back().t == 1, "path must run over [0,1]");
  require(raw.front().v.is_zero(), "path must start at the origin");
  require(raw.back().v.is_lattice(), "path endpoint must be a lattice point");
  for (std::size_t j = 1; j < raw.size(); ++j)
    require(raw[j - 1].t < raw[j].t, "breakpoint times must strictly increase");

  // Displacements of the non-trivial segments, consecutive same-ray ones merged.
  std::vector<Weight> disp;
  for (std::size_t j = 1; j < raw.size(); ++j) {
    Weight d = raw[j].v - raw[j - 1].v;
    if (d.is_zero()) continue;
    if (!disp.empty() && detail::same_ray(disp.back(), d))
      disp.back() += d;
    else
      disp.push_back(std::move(d));
  }

  PLPath out;
  const int ell = raw.front().v.ell();
  if (disp.empty()) {  // the constant path at the origin
    out.breaks.push_back({Rat(0), Weight(ell)});
    out.breaks.push_back({Rat(1), Weight(ell)});
    return out;
  }
  Rat total(0);
  for (const auto& d : disp) total += detail::l1_norm(d);
  Weight pos(ell);
  Rat acc(0);
  out.breaks.push_back({Rat(0), pos});
  for (const auto& d : disp) {
    acc += detail::l1_norm(d);
    pos += d;
    out.breaks.push_back({acc / total, pos});
  }
  return out;
}

inline PLPath straight_path(const CartanData& cd, const Weight& mu) {
  require(mu.is_lattice(), "straight_path: endpoint must be a lattice point");
  require(mu.ell() == cd.ell, "straight_path: rank mismatch");
  return canonicalize({{Rat(0), cd.zero()}, {Rat(1), mu}});
}

inline PLPath trivial_path(const CartanData& cd) { return straight_path(cd, cd.zero()); }

/// Values of the Littelmann function h^i(tau) = -alpha_i^vee(p(tau)) at the
/// breakpoints; h is linear in between.
inline std::vector<Rat> h_func(const CartanData& cd, const PLPath& p, int i) {
  std::vector<Rat> h;
  h.reserve(p.breaks.size());
  for (const auto& b : p.breaks) h.push_back(-pair(cd, i, b.v));
  return h;
}

/// eps_i as the largest integer value attained by h^i. Since h is continuous
/// with h(0) = 0, that is floor of the global maximum.
inline long path_eps(const CartanData& cd, const PLPath& p, int i) {
  const auto h = h_func(cd, p, i);
  Rat mx = h.front();
  for (const auto& v : h) mx = std::max(mx, v);
  internal_check(mx >= 0, "path_eps: h(0) = 0 should bound the maximum below");
  return to_long(floor_rat(mx));
}

/// Every local maximum of h^i (over the whole crystal of interest) must be
/// an integer; checked at breakpoints, where piecewise-linear maxima live.
inline bool integrality_check(const CartanData& cd, const PLPath& p) {
  for (int i = 0; i <= cd.ell; ++i) {
    const auto h = h_func(cd, p, i);
    Rat mx = h.front();
    for (const auto& v : h) mx = std::max(mx, v);
    if (!is_integer(mx)) return false;
  }
  return true;
}

inline Weight path_value_at(const PLPath& p, const Rat& tau) {
  require(tau >= 0 && tau <= 1, "path parameter out of range");
  for (std::size_t j = 1; j < p.breaks.size(); ++j) {
    if (tau > p.breaks[j].t) continue;
    const auto& a = p.breaks[j - 1];
    const auto& b = p.breaks[j];
    const Rat frac = (tau - a.t) / (b.t - a.t);
    return a.v + frac * (b.v - a.v);
  }
  return p.breaks.back().v;  // tau == 1
}

namespace detail {

struct HPoint {
  Rat t;
  Rat h;
};

// Earliest parameter in [from, 1] at which h equals the target; scans the
// segments left to right and solves the linear crossing exactly.
inline std::optional<Rat> first_time_at(const CartanData& cd, const PLPath& p, int i,
                                        const Rat& target, const Rat& from) {
  std::vector<HPoint> pts;
  pts.push_back({from, -pair(cd, i, path_value_at(p, from))});
  for (const auto& b : p.breaks)
    if (b.t > from) pts.push_back({b.t, -pair(cd, i, b.v)});
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (pts[j].h == target) return pts[j].t;
    if (j + 1 < pts.size()) {
      const auto& a = pts[j];
      const auto& b = pts[j + 1];
      if ((a.h < target && target < b.h) || (a.h > target && target > b.h))
        return a.t + (target - a.h) / (b.h - a.h) * (b.t - a.t);
    }
  }
  return std::nullopt;
}

// Latest parameter in [0, upto] at which h equals the target.
inline std::optional<Rat> last_time_at(const CartanData& cd, const PLPath& p, int i,
                                       const Rat& target, const Rat& upto) {
  std::vector<HPoint> pts;
  for (const auto& b : p.breaks)
    if (b.t < upto) pts.push_back({b.t, -pair(cd, i, b.v)});
  pts.push_back({upto, -pair(cd, i, path_value_at(p, upto))});
  for (std::size_t j = pts.size(); j-- > 0;) {
    if (pts[j].h == target) return pts[j].t;
    if (j > 0) {
      const auto& a = pts[j - 1];
      const auto& b = pts[j];
      if ((a.h < target && target < b.h) || (a.h > target && target > b.h))
        return a.t + (target - a.h) / (b.h - a.h) * (b.t - a.t);
    }
  }
  return std::nullopt;
}

// Applies the three-piece operator: identity up to lo, the reflection
// s_i pinned at p(lo) between lo and hi, translation by `shift` after hi.
inline PLPath three_piece(const CartanData& cd, const PLPath& p, int i, const Rat& lo,
                          const Rat& hi, const Weight& shift) {
  const Weight vlo = path_value_at(p, lo);
  std::vector<Breakpoint> aug;
  auto push = [&](const Rat& t, const Weight& v) {
    if (!aug.empty() && aug.back().t == t) return;
    aug.push_back({t, v});
  };
  std::vector<Rat> times;
  for (const auto& b : p.breaks) times.push_back(b.t);
  times.push_back(lo);
  times.push_back(hi);
  std::sort(times.begin(), times.end());
  for (const auto& t : times) {
    const Weight v = path_value_at(p, t);
    if (t <= lo)
      push(t, v);
    else if (t <= hi)
      push(t, reflect(cd, i, v - vlo) + vlo);
    else
      push(t, v + shift);
  }
  return canonicalize(aug);
}

}  // namespace detail

/// Root operator e_i on paths: raises the endpoint by alpha_i, reflecting
/// the stretch between the last visit to eps-1 before the first maximum.
/// Absent exactly when eps_i = 0.
inline std::optional<PLPath> path_e(const CartanData& cd, const PLPath& p, int i) {
  const long eps = path_eps(cd, p, i);
  if (eps == 0) return std::nullopt;
  const auto e_plus = detail::first_time_at(cd, p, i, Rat(eps), Rat(0));
  internal_check(e_plus.has_value(), "path_e: eps level not attained");
  const auto e_minus = detail::last_time_at(cd, p, i, Rat(eps - 1), *e_plus);
  internal_check(e_minus.has_value(), "path_e: eps-1 level not attained");
  return detail::three_piece(cd, p, i, *e_minus, *e_plus, simple_root(cd, i));
}

/// Root operator f_i on paths: lowers the endpoint by alpha_i. Absent
/// exactly when the last maximum of h^i sits at tau = 1.
inline std::optional<PLPath> path_f(const CartanData& cd, const PLPath& p, int i) {
  const long eps = path_eps(cd, p, i);
  const auto f_plus = detail::last_time_at(cd, p, i, Rat(eps), Rat(1));
  internal_check(f_plus.has_value(), "path_f: eps level not attained");
  if (*f_plus == 1) return std::nullopt;
  const auto f_minus = detail::first_time_at(cd, p, i, Rat(eps - 1), *f_plus);
  internal_check(f_minus.has_value(), "path_f: eps-1 level not attained");
  return detail::three_piece(cd, p, i, *f_plus, *f_minus, -simple_root(cd, i));
}

/// Concatenation p1 * p2 (written p1 (x) p2): p1 over [0,1/2], then p2
/// translated by p1's endpoint. Canonicalization removes the dependence on
/// the internal split point.
inline PLPath concat(const PLPath& p1, const PLPath& p2) {
  std::vector<Breakpoint> raw;
  for (const auto& b : p1.breaks) raw.push_back({b.t / 2, b.v});
  const Weight& end = p1.endpoint();
  for (const auto& b : p2.breaks) {
    if (b.t == 0) continue;  // junction point already present
    raw.push_back({Rat(1, 2) + b.t / 2, b.v + end});
  }
  return canonicalize(raw);
}

// ---------------------------------------------------------------------------
// The embedding of the affinized tensor power into the path crystal.
// ---------------------------------------------------------------------------

/// kappa_0 = 0 and
/// kappa_s = kappa_{s-1} - (rho_s - 1) + (N + z - m)/m, s = 1..m;
/// the final value always equals the z-exponent.
inline std::vector<Rat> kappa_seq(const AffineElement& x) {
  const long m = static_cast<long>(x.word.size());
  const auto st = word_stats(x.word);
  const Rat step((st.N + x.z - m), m);
  std::vector<Rat> kappa{Rat(0)};
  for (long s = 1; s <= m; ++s)
    kappa.push_back(kappa.back() - Rat(rho(x.word, s) - 1) + step);
  internal_check(kappa.back() == x.z, "kappa_seq: kappa_m != z");
  return kappa;
}

/// psi(b (x) z^n): the path through the partial sums of the letter weights
/// with delta corrections kappa_s, at uniform times s/m, in canonical form.
inline PLPath psi_embed(const CartanData& cd, const AffineElement& x) {
  const long m = static_cast<long>(x.word.size());
  const auto kappa = kappa_seq(x);
  LetterCrystal letters(cd.ell);
  std::vector<Breakpoint> raw;
  Weight acc(cd.ell);
  raw.push_back({Rat(0), acc});
  for (long s = 1; s <= m; ++s) {
    acc += letters.wt(x.word[s - 1]);
    Weight v = acc;
    v.dlt += kappa[s];
    raw.push_back({Rat(s, m), v});
  }
  return canonicalize(raw);
}

/// lambda-dominance: alpha_i^vee(lambda + p(tau)) >= 0 everywhere; checking
/// the breakpoints suffices by piecewise linearity.
inline bool is_lambda_dominant(const CartanData& cd, const PLPath& p, const Weight& lambda) {
  require(lambda.is_lattice() && is_dominant(cd, lambda),
          "is_lambda_dominant: lambda must be a dominant lattice point");
  for (const auto& b : p.breaks)
    for (int i = 0; i <= cd.ell; ++i)
      if (pair(cd, i, lambda + b.v) < 0) return false;
  return true;
}

/// Littelmann's path crystal over the affine lattice.
struct PathCrystal {
  CartanData cartan;
  using Elem = PLPath;

  explicit PathCrystal(int ell) : cartan(ell) {}

  int rank() const { return cartan.ell; }
  const CartanData& cd() const { return cartan; }

  std::optional<PLPath> e(int i, const PLPath& p) const { return path_e(cartan, p, i); }
  std::optional<PLPath> f(int i, const PLPath& p) const { return path_f(cartan, p, i); }
  long eps(int i, const PLPath& p) const { return path_eps(cartan, p, i); }
  Weight wt(const PLPath& p) const { return p.endpoint(); }
  long phi(int i, const PLPath& p) const { return eps(i, p) + pair_long(cartan, i, wt(p)); }
  nlohmann::json to_json(const PLPath& p) const { return path_to_json(p); }
};

}  // namespace pathcrystal
