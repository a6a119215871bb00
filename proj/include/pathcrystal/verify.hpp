#pragma once

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pathcrystal/affine.hpp"
#include "pathcrystal/charfun.hpp"
#include "pathcrystal/common.hpp"
#include "pathcrystal/crystal.hpp"
#include "pathcrystal/decomp.hpp"
#include "pathcrystal/letters.hpp"
#include "pathcrystal/paths.hpp"
#include "pathcrystal/qpoly.hpp"
#include "pathcrystal/weight.hpp"

namespace pathcrystal {

/// Result of one named verification suite. Runs stop at the first
/// counterexample so the failure is always reported concretely.
struct SuiteReport {
  std::string suite;
  bool pass = true;
  long checks = 0;
  std::string counterexample;

  nlohmann::json to_json() const {
    return nlohmann::json{{"suite", suite},
                          {"pass", pass},
                          {"checks", checks},
                          {"counterexample", counterexample}};
  }
};

namespace detail {

inline bool fail(SuiteReport& rep, const std::string& what) {
  rep.pass = false;
  rep.counterexample = what;
  return false;
}

}  // namespace detail

/// Counting identity: brute-force enumeration, the reduced q-multinomial
/// coefficient and the closed form agree for every tuple and residue.
inline SuiteReport verify_counting(int l_max = 3, long m_max = 6) {
  SuiteReport rep{"counting"};
  for (int ell = 1; ell <= l_max; ++ell) {
    const CartanData cd(ell);
    for (long m = 1; m <= m_max; ++m) {
      // One enumeration pass, bucketed by (tuple, N mod m).
      std::map<std::pair<std::vector<long>, long>, Int> brute;
      for (const auto& w : enumerate_words(cd, m))
        ++brute[{word_tuple(cd, w), residue_mod(word_stats(w).N, m)}];
      for (const auto& tuple : enumerate_tuples(cd.n(), m)) {
        const auto coeffs = count_by_residue(cd, m, tuple);
        for (long s = 0; s < m; ++s) {
          const Int via_brute = brute.count({tuple, s}) ? brute[{tuple, s}] : Int(0);
          const Int via_poly = coeffs[residue_mod(-s, m)];
          const Int via_closed = closed_count(cd, m, tuple, s);
          ++rep.checks;
          if (via_brute != via_poly || via_poly != via_closed) {
            std::ostringstream os;
            os << "l=" << ell << " m=" << m << " tuple=" << nlohmann::json(tuple)
               << " s=" << s << ": brute=" << via_brute << " qpoly=" << via_poly
               << " closed=" << via_closed;
            detail::fail(rep, os.str());
            return rep;
          }
        }
      }
    }
  }
  return rep;
}

/// Maj = -N (mod m) for every word, and N steps by -[i=0] under e_i and
/// +[i=0] under f_i.
inline SuiteReport verify_maj_n(int l_max = 3, long m_max = 5) {
  SuiteReport rep{"maj-n"};
  for (int ell = 1; ell <= l_max; ++ell) {
    const CartanData cd(ell);
    for (long m = 1; m <= m_max; ++m) {
      WordCrystal wc(ell, m);
      for (const auto& w : enumerate_words(cd, m)) {
        const auto st = word_stats(w);
        ++rep.checks;
        if (residue_mod(st.Maj + st.N, m) != 0) {
          detail::fail(rep, "Maj != -N (mod m) at " + word_to_json(w).dump());
          return rep;
        }
        for (int i = 0; i <= ell; ++i) {
          if (auto up = wc.e(i, w)) {
            ++rep.checks;
            const long want = residue_mod(st.N - (i == 0 ? 1 : 0), m);
            if (residue_mod(word_stats(*up).N, m) != want) {
              detail::fail(rep, "N(e_" + std::to_string(i) + " w) residue wrong at " +
                                    word_to_json(w).dump());
              return rep;
            }
          }
          if (auto down = wc.f(i, w)) {
            ++rep.checks;
            const long want = residue_mod(st.N + (i == 0 ? 1 : 0), m);
            if (residue_mod(word_stats(*down).N, m) != want) {
              detail::fail(rep, "N(f_" + std::to_string(i) + " w) residue wrong at " +
                                    word_to_json(w).dump());
              return rep;
            }
          }
        }
      }
    }
  }
  return rep;
}

/// Component structure: the residue class is stable under all operators,
/// breadth-first search from b_0^{(x)m} (x) z^n inside a window padded by 2m
/// covers the whole residue class of the inner window, and the ladder
/// monomials shift z by exactly +-rm.
inline SuiteReport verify_components(int l_max = 3, long m_max = 4) {
  SuiteReport rep{"components"};
  for (int ell = 1; ell <= l_max; ++ell) {
    const CartanData cd(ell);
    for (long m = 1; m <= m_max; ++m) {
      AffineCrystal ac(ell, m);
      const long zin = 2 * m;  // inner window [-2m, 2m], width 4m

      for (const auto& w : enumerate_words(cd, m))
        for (long z = -zin; z <= zin; ++z) {
          const AffineElement x{w, z};
          const long n = component_of(x);
          for (int i = 0; i <= ell; ++i) {
            if (auto up = ac.e(i, x)) {
              ++rep.checks;
              if (component_of(*up) != n) {
                detail::fail(rep, "component moved under e at " + affine_to_json(x).dump());
                return rep;
              }
            }
            if (auto down = ac.f(i, x)) {
              ++rep.checks;
              if (component_of(*down) != n) {
                detail::fail(rep, "component moved under f at " + affine_to_json(x).dump());
                return rep;
              }
            }
          }
        }

      for (long n = 0; n < m; ++n) {
        OrbitOptions<AffineCrystal> opt;
        opt.region = [&](const AffineElement& x) {
          return x.z >= -zin - 2 * m && x.z <= zin + 2 * m;
        };
        opt.region_desc = {{"kind", "zwin"}, {"min", -zin - 2 * m}, {"max", zin + 2 * m}};
        const auto orb = orbit_bfs(ac, {ac.source(n)}, GenSet::EF, opt);
        for (const auto& x : enumerate_component(cd, m, n, -zin, zin)) {
          ++rep.checks;
          const long idx = orb.graph.index_of(elem_key(ac, x));
          if (idx < 0 || orb.graph.nodes[idx].boundary) {
            detail::fail(rep, "padded BFS missed " + affine_to_json(x).dump());
            return rep;
          }
        }
      }

      for (long r = 1; r <= 2; ++r)
        for (long k = -1; k <= 1; ++k) {
          const auto up = apply_monomial(ac, ac.source(k), ladder_monomial(cd, m, r, Gen::E));
          const auto down = apply_monomial(ac, ac.source(k), ladder_monomial(cd, m, r, Gen::F));
          ++rep.checks;
          if (!up || !(*up == ac.source(k + r * m))) {
            detail::fail(rep, "e-ladder failed at z=" + std::to_string(k));
            return rep;
          }
          if (!down || !(*down == ac.source(k - r * m))) {
            detail::fail(rep, "f-ladder failed at z=" + std::to_string(k));
            return rep;
          }
        }
    }
  }
  return rep;
}

/// Test instrumentation: an affinization whose e_0 forgets the z-shift.
/// Used to confirm that the morphism check catches a broken delta grading.
struct NoShiftAffineCrystal {
  AffineCrystal inner;
  using Elem = AffineElement;
  int rank() const { return inner.rank(); }
  const CartanData& cd() const { return inner.cd(); }
  std::optional<AffineElement> e(int i, const AffineElement& x) const {
    auto w = inner.words.e(i, x.word);
    if (!w) return std::nullopt;
    return AffineElement{std::move(*w), x.z};  // missing +[i=0]
  }
  std::optional<AffineElement> f(int i, const AffineElement& x) const { return inner.f(i, x); }
  long eps(int i, const AffineElement& x) const { return inner.eps(i, x); }
  long phi(int i, const AffineElement& x) const { return inner.phi(i, x); }
  Weight wt(const AffineElement& x) const { return inner.wt(x); }
  nlohmann::json to_json(const AffineElement& x) const { return inner.to_json(x); }
};

/// psi is a strict injective morphism on the sampled window: eps, wt and the
/// operators commute (absent matching absent), kappa_m = z everywhere, the
/// source maps to the straight path, and no two elements share an image.
/// With drop_e0_shift the domain crystal is deliberately broken, so the
/// check must fail; that path exists to exercise the failure reporting.
inline SuiteReport verify_psi_morphism(int l_max = 2, long m_max = 4, long zmin = -2,
                                       long zmax = 2, bool drop_e0_shift = false) {
  SuiteReport rep{"psi-morphism"};
  for (int ell = 1; ell <= l_max; ++ell) {
    const CartanData cd(ell);
    for (long m = 1; m <= m_max; ++m) {
      AffineCrystal ac(ell, m);
      PathCrystal pc(ell);
      std::vector<AffineElement> sample;
      for (long z = zmin; z <= zmax; ++z)
        for (const auto& w : enumerate_words(cd, m)) sample.push_back({w, z});

      auto psi = [&](const AffineElement& x) {
        return std::optional<PLPath>(psi_embed(cd, x));
      };

      MorphismReport mor;
      if (drop_e0_shift) {
        NoShiftAffineCrystal broken{ac};
        mor = check_morphism(broken, pc, psi, sample);
      } else {
        mor = check_morphism(ac, pc, psi, sample);
      }
      rep.checks += mor.checked;
      if (!mor.pass()) {
        detail::fail(rep, "l=" + std::to_string(ell) + " m=" + std::to_string(m) + ": " +
                              mor.counterexample);
        return rep;
      }

      std::set<std::string> images;
      for (const auto& x : sample) {
        const auto kappa = kappa_seq(x);  // asserts kappa_m = z internally
        ++rep.checks;
        if (kappa.back() != x.z) {
          detail::fail(rep, "kappa_m != z at " + affine_to_json(x).dump());
          return rep;
        }
        if (!images.insert(elem_key(pc, psi_embed(cd, x))).second) {
          detail::fail(rep, "psi not injective at " + affine_to_json(x).dump());
          return rep;
        }
      }

      for (long n = zmin; n <= zmax; ++n) {
        Weight mu = cd.fundamental(1) - cd.fundamental(0);
        mu *= Rat(m);
        mu.dlt += n;
        ++rep.checks;
        if (!(psi_embed(cd, ac.source(n)) == straight_path(cd, mu))) {
          detail::fail(rep, "psi(source) is not the straight path at n=" + std::to_string(n));
          return rep;
        }
      }
    }
  }
  return rep;
}

/// Character identity at the crystal level: the formula-driven window equals
/// the histogram of the enumerated component.
inline SuiteReport verify_characters(int l_max = 3, long m_max = 4) {
  SuiteReport rep{"characters"};
  for (int ell = 1; ell <= l_max; ++ell) {
    const CartanData cd(ell);
    for (long m = 1; m <= m_max; ++m)
      for (long n = 0; n < m; ++n) {
        const long zin = 2 * m;
        const auto win = component_character(cd, m, n, -zin, zin);
        std::map<std::pair<std::vector<long>, long>, Int> hist;
        for (const auto& x : enumerate_component(cd, m, n, -zin, zin))
          ++hist[{word_tuple(cd, x.word), x.z}];
        Int total_formula = 0, total_brute = 0;
        for (const auto& e : win.entries) {
          ++rep.checks;
          const Int brute = hist.count({e.tuple, e.z}) ? hist[{e.tuple, e.z}] : Int(0);
          total_formula += e.count;
          total_brute += brute;
          if (brute != e.count) {
            std::ostringstream os;
            os << "l=" << ell << " m=" << m << " n=" << n << " tuple="
               << nlohmann::json(e.tuple) << " z=" << e.z << ": character " << e.count
               << " vs enumeration " << brute;
            detail::fail(rep, os.str());
            return rep;
          }
        }
        if (total_formula != total_brute) {
          detail::fail(rep, "window totals disagree");
          return rep;
        }
      }
  }
  return rep;
}

/// Dominance: the four equivalent readings of lambda-dominance agree on
/// psi-images, B_l(m)^{Lambda_i} = {b(i,m)}, and the raising procedure
/// terminates with positive exponents matching its defining formula on
/// randomized cases.
inline SuiteReport verify_dominance(int l_max = 3, long m_max = 5, long raise_cases = 200) {
  SuiteReport rep{"dominance"};

  // Four-way equivalence on psi-images, small scale.
  for (int ell = 1; ell <= std::min(l_max, 2); ++ell) {
    const CartanData cd(ell);
    std::vector<Weight> lambdas;
    for (int i = 0; i <= ell; ++i) lambdas.push_back(cd.fundamental(i));
    lambdas.push_back(cd.fundamental(0) + cd.fundamental(1));
    for (long m = 1; m <= std::min<long>(m_max, 3); ++m) {
      PathCrystal pc(ell);
      for (const auto& lambda : lambdas) {
        const PLPath b_lambda = straight_path(cd, lambda);
        WordCrystal wc(ell, m);
        for (long z = -1; z <= 1; ++z)
          for (const auto& w : enumerate_words(cd, m)) {
            const PLPath p = psi_embed(cd, {w, z});
            const PLPath joined = concat(b_lambda, p);
            bool i_eps_zero = true, ii_bounded = true, iv_dominant_chamber = true;
            for (int i = 0; i <= ell; ++i) {
              if (path_eps(cd, joined, i) != 0) i_eps_zero = false;
              if (path_eps(cd, p, i) > pair_long(cd, i, lambda)) ii_bounded = false;
            }
            for (const auto& bp : joined.breaks)
              for (int i = 0; i <= ell; ++i)
                if (pair(cd, i, bp.v) < 0) iv_dominant_chamber = false;
            const bool iii_dominant = is_lambda_dominant(cd, p, lambda);
            ++rep.checks;
            if (i_eps_zero != ii_bounded || ii_bounded != iii_dominant ||
                iii_dominant != iv_dominant_chamber) {
              detail::fail(rep, "four-way dominance split at " +
                                    affine_to_json({w, z}).dump());
              return rep;
            }
          }
      }
    }
  }

  // The fundamental dominant subsets are singletons.
  for (int ell = 1; ell <= l_max; ++ell) {
    const CartanData cd(ell);
    for (long m = 1; m <= m_max; ++m)
      for (int i = 0; i <= ell; ++i) {
        ++rep.checks;
        const auto dom = dominant_subset(cd, m, cd.fundamental(i));
        if (dom.size() != 1 || dom[0] != b_im(cd, i, m)) {
          detail::fail(rep, "B^{Lambda_i} is not {b(i,m)} at l=" + std::to_string(ell) +
                                " m=" + std::to_string(m) + " i=" + std::to_string(i));
          return rep;
        }
      }
  }

  // Randomized raising with replay of the exponent formula.
  std::mt19937 rng(20020815);
  for (long t = 0; t < raise_cases; ++t) {
    const int ell = 1 + static_cast<int>(rng() % l_max);
    const long m = 1 + static_cast<long>(rng() % m_max);
    const CartanData cd(ell);
    WordCrystal wc(ell, m);
    Word w(m);
    for (auto& c : w) c = static_cast<int>(rng() % (ell + 1));
    Weight lambda(ell);
    bool nonzero = false;
    for (auto& c : lambda.lam) {
      c = static_cast<long>(rng() % 4);  // pairings bounded by 3
      if (c != 0) nonzero = true;
    }
    if (!nonzero) lambda.lam[rng() % (ell + 1)] = 1;

    const auto rr = raise_to_dominant(cd, w, lambda);
    Word u = w;
    for (std::size_t j = rr.monomial.size(); j-- > 0;) {
      const auto& g = rr.monomial[j];
      ++rep.checks;
      if (g.kind != Gen::E || g.exponent <= 0 ||
          g.exponent != wc.eps(g.index, u) - pair_long(cd, g.index, lambda)) {
        detail::fail(rep, "raise exponent formula mismatch at " + word_to_json(w).dump());
        return rep;
      }
      for (long s = 0; s < g.exponent; ++s) {
        auto up = wc.e(g.index, u);
        if (!up) {
          detail::fail(rep, "raise replay vanished at " + word_to_json(w).dump());
          return rep;
        }
        u = std::move(*up);
      }
    }
    ++rep.checks;
    bool dominant = (u == rr.word);
    for (int i = 0; i <= ell && dominant; ++i)
      if (wc.eps(i, u) > pair_long(cd, i, lambda)) dominant = false;
    if (!dominant) {
      detail::fail(rep, "raise did not land in the dominant subset at " +
                            word_to_json(w).dump());
      return rep;
    }
  }
  return rep;
}

/// Truncated decomposition checks for small lambda.
inline SuiteReport verify_decomposition_suite(long depth = 4, long sample_depth = 3) {
  SuiteReport rep{"decomposition"};
  for (int ell = 1; ell <= 2; ++ell) {
    const CartanData cd(ell);
    std::vector<Weight> lambdas{cd.fundamental(0), cd.fundamental(1),
                                cd.fundamental(0) + cd.fundamental(1)};
    for (long m = 1; m <= 3; ++m)
      for (const auto& lambda : lambdas) {
        const auto v = verify_decomposition(cd, lambda, m, -1, 1, depth, sample_depth);
        ++rep.checks;
        if (!v.pass()) {
          detail::fail(rep, "l=" + std::to_string(ell) + " m=" + std::to_string(m) +
                                ": " + v.detail);
          return rep;
        }
      }
  }
  return rep;
}

/// Appendix polynomial identities: the Moebius resummation of the closed
/// counts, the cyclotomic projections, and the factorisation of q^m - 1.
inline SuiteReport verify_polynomials(long a30_m_max = 8, long a50_d_max = 4,
                                      long a50_md_max = 12, long cyclo_m_max = 24) {
  SuiteReport rep{"polynomials"};

  // sum_n C(tuple; n) q^n = sum_{d|m} C~(tuple; d) [m/d]_{q^d}.
  for (int parts = 2; parts <= 4; ++parts) {
    const CartanData cd(parts - 1);
    for (long m = 1; m <= a30_m_max; ++m)
      for (const auto& tuple : enumerate_tuples(parts, m)) {
        std::vector<Rat> lhs(m, Rat(0));
        for (long n = 0; n < m; ++n)
          lhs[n] = Rat(closed_count(cd, m, tuple, residue_mod(-n, m)));
        QPolyRat rhs;
        for (long d : divisors(m))
          rhs = rhs + scale(to_rational(q_int(m / d, d)), c_tilde(cd, m, tuple, d));
        ++rep.checks;
        if (!(QPolyRat(lhs) == rhs)) {
          detail::fail(rep, "Moebius resummation failed for tuple " +
                                nlohmann::json(tuple).dump() + " m=" + std::to_string(m));
          return rep;
        }
      }
  }

  // sum_{r|m} C~(tuple; r) psi_d([m/r]_{q^r}) collapses to one multinomial.
  for (int parts = 2; parts <= 4; ++parts) {
    const CartanData cd(parts - 1);
    for (long m = 1; m <= 12; ++m)
      for (long d : divisors(m))
        for (const auto& tuple : enumerate_tuples(parts, m)) {
          QPolyRat lhs;
          for (long r : divisors(m))
            lhs = lhs + scale(project_cyclotomic(q_int(m / r, r), d),
                              c_tilde(cd, m, tuple, r));
          lhs = project_cyclotomic(lhs, d);
          bool scaled_ok = true;
          std::vector<long> scaled;
          for (long k : tuple) {
            if (k % d != 0) { scaled_ok = false; break; }
            scaled.push_back(k / d);
          }
          const Int want = scaled_ok ? multinomial(m / d, scaled) : Int(0);
          ++rep.checks;
          if (!(lhs == QPolyRat::constant(Rat(want)))) {
            detail::fail(rep, "cyclotomic projection identity failed at m=" +
                                  std::to_string(m) + " d=" + std::to_string(d));
            return rep;
          }
        }
  }

  // psi_d of q-multinomials: vanishing off the d-divisible stratum and the
  // binomial collapse on it.
  for (long d = 2; d <= a50_d_max; ++d)
    for (long mm = 1; mm * d <= a50_md_max; ++mm) {
      for (int parts = 2; parts <= 3; ++parts)
        for (const auto& tuple : enumerate_tuples(parts, mm * d)) {
          long g = 0;
          for (long k : tuple) g = std::gcd(g, k);
          if (g % d != 0) {
            ++rep.checks;
            if (!project_cyclotomic(q_multinomial(mm * d, tuple), d).is_zero()) {
              detail::fail(rep, "psi_d did not annihilate " + nlohmann::json(tuple).dump());
              return rep;
            }
          }
        }
      for (int parts = 2; parts <= 3; ++parts)
        for (const auto& small : enumerate_tuples(parts, mm)) {
          std::vector<long> scaled;
          for (long k : small) scaled.push_back(k * d);
          ++rep.checks;
          const auto proj = project_cyclotomic(q_multinomial(mm * d, scaled), d);
          if (!(proj == QPolyRat::constant(Rat(multinomial(mm, small))))) {
            detail::fail(rep, "psi_d binomial collapse failed at " +
                                  nlohmann::json(small).dump() + " d=" + std::to_string(d));
            return rep;
          }
        }
    }

  for (long m = 1; m <= cyclo_m_max; ++m) {
    QPoly prod = QPoly::constant(Int(1));
    for (long d : divisors(m)) prod = prod * cyclotomic(d);
    ++rep.checks;
    if (!(prod == QPoly::monomial(m, Int(1)) - QPoly::constant(Int(1)))) {
      detail::fail(rep, "cyclotomic product != q^m - 1 at m=" + std::to_string(m));
      return rep;
    }
  }
  return rep;
}

/// No word is a highest or lowest weight element: some eps and some phi are
/// positive everywhere, and the coroot pairings of every word weight sum to
/// zero.
inline SuiteReport verify_no_extremes(int l_max = 3, long m_max = 5) {
  SuiteReport rep{"no-extremes"};
  for (int ell = 1; ell <= l_max; ++ell) {
    const CartanData cd(ell);
    for (long m = 1; m <= m_max; ++m) {
      WordCrystal wc(ell, m);
      for (const auto& w : enumerate_words(cd, m)) {
        bool has_e = false, has_f = false;
        long pairing_sum = 0;
        for (int i = 0; i <= ell; ++i) {
          if (wc.eps(i, w) > 0) has_e = true;
          if (wc.phi(i, w) > 0) has_f = true;
          pairing_sum += pair_long(cd, i, wc.wt(w));
        }
        ++rep.checks;
        if (!has_e || !has_f || pairing_sum != 0) {
          detail::fail(rep, "extremal word found: " + word_to_json(w).dump());
          return rep;
        }
      }
    }
  }
  return rep;
}

/// Registry used by the command line front end.
inline std::vector<std::string> suite_names() {
  return {"counting",     "maj-n",       "components", "psi-morphism", "characters",
          "dominance",    "decomposition", "polynomials", "no-extremes"};
}

inline SuiteReport run_suite(const std::string& name, std::optional<int> l_max,
                             std::optional<long> m_max, bool mutate_drop_e0 = false) {
  if (name == "counting") return verify_counting(l_max.value_or(3), m_max.value_or(6));
  if (name == "maj-n") return verify_maj_n(l_max.value_or(3), m_max.value_or(5));
  if (name == "components") return verify_components(l_max.value_or(3), m_max.value_or(4));
  if (name == "psi-morphism")
    return verify_psi_morphism(l_max.value_or(2), m_max.value_or(4), -2, 2, mutate_drop_e0);
  if (name == "characters") return verify_characters(l_max.value_or(3), m_max.value_or(4));
  if (name == "dominance") return verify_dominance(l_max.value_or(3), m_max.value_or(5));
  if (name == "decomposition") return verify_decomposition_suite();
  if (name == "polynomials") return verify_polynomials();
  if (name == "no-extremes") return verify_no_extremes(l_max.value_or(3), m_max.value_or(5));
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace pathcrystal
