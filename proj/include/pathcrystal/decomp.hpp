#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "pathcrystal/affine.hpp"
#include "pathcrystal/common.hpp"
#include "pathcrystal/crystal.hpp"
#include "pathcrystal/letters.hpp"
#include "pathcrystal/paths.hpp"
#include "pathcrystal/weight.hpp"

namespace pathcrystal {

/// Tensor product B(lambda) (x) affinized tensor power, with the affine side
/// kept as its psi-preimage. Prop-L20 commutation makes the statistics agree
/// with the genuine concatenation of paths.
using TensorPA = Tensor2<PathCrystal, AffineCrystal>;

inline TensorPA make_tensor_pa(int ell, long m) {
  return TensorPA{PathCrystal(ell), AffineCrystal(ell, m)};
}

inline void require_admissible_lambda(const CartanData& cd, const Weight& lambda) {
  require(lambda.is_lattice(), "lambda must be a lattice point");
  require(is_dominant(cd, lambda), "lambda must be dominant");
  require(!is_zdelta(cd, lambda), "lambda must not be a multiple of delta");
}

/// Truncated highest weight path crystal B(lambda): the F-orbit of the
/// straight path to lambda. Every element of weight lambda - beta with
/// height(beta) <= depth is present.
inline OrbitResult<PathCrystal> highest_path_crystal(const CartanData& cd,
                                                     const Weight& lambda, long depth,
                                                     std::size_t budget = 1'000'000) {
  require_admissible_lambda(cd, lambda);
  require(depth >= 0, "depth must be non-negative");
  PathCrystal pc(cd.ell);
  OrbitOptions<PathCrystal> opt;
  opt.depth = depth;
  opt.node_budget = budget;
  return orbit_bfs(pc, {straight_path(cd, lambda)}, GenSet::F_only, opt);
}

/// The lambda-dominant elements of the affinization within a z-window:
/// the dominant words of B_l(m) paired with every z in the window. Their
/// psi-images are checked to be lambda-dominant paths.
inline std::vector<AffineElement> lambda_dominant_affine(const CartanData& cd,
                                                         const Weight& lambda, long m,
                                                         long zmin, long zmax) {
  require_admissible_lambda(cd, lambda);
  std::vector<AffineElement> out;
  const auto words = dominant_subset(cd, m, lambda);
  for (long z = zmin; z <= zmax; ++z)
    for (const auto& w : words) {
      AffineElement x{w, z};
      internal_check(is_lambda_dominant(cd, psi_embed(cd, x), lambda),
                     "lambda_dominant_affine: psi image is not lambda-dominant");
      out.push_back(std::move(x));
    }
  return out;
}

struct DecompositionReport {
  Weight lambda;
  int ell = 1;
  long m = 1;
  long zmin = 0, zmax = -1;
  struct Summand {
    Word word;
    long z;
    Weight highest;  // lambda + wt(word) + z delta
  };
  std::vector<Summand> summands;
  bool verified = false;

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& s : summands)
      rows.push_back({{"word", s.word}, {"z", s.z}, {"highest", weight_to_json(s.highest)}});
    return nlohmann::json{{"lambda", weight_to_json(lambda)},
                          {"l", ell},
                          {"m", m},
                          {"window", {zmin, zmax}},
                          {"summands", rows},
                          {"verified", verified}};
  }
};

/// B(lambda) (x) B-hat decomposes into one highest weight crystal per
/// lambda-dominant element; each summand is B(lambda + wt).
inline DecompositionReport decompose(const CartanData& cd, const Weight& lambda, long m,
                                     long zmin, long zmax) {
  require_admissible_lambda(cd, lambda);
  DecompositionReport rep;
  rep.lambda = lambda;
  rep.ell = cd.ell;
  rep.m = m;
  rep.zmin = zmin;
  rep.zmax = zmax;
  WordCrystal wc(cd.ell, m);
  for (const auto& x : lambda_dominant_affine(cd, lambda, m, zmin, zmax)) {
    Weight hi = lambda + wc.wt(x.word);
    hi.dlt += x.z;
    rep.summands.push_back({x.word, x.z, std::move(hi)});
  }
  return rep;
}

/// For a fundamental weight the decomposition is explicit:
/// B(Lambda_i) (x) B-hat = union of B(Lambda_{i+m} + k delta) over the
/// window. Cross-checked against the generic route.
inline DecompositionReport fundamental_decompose(const CartanData& cd, long i, long m,
                                                 long zmin, long zmax) {
  const Weight lambda = cd.fundamental(i);
  DecompositionReport rep = decompose(cd, lambda, m, zmin, zmax);

  // Predicted highest weights Lambda_{i+m} + k delta, one per z in window.
  std::vector<Weight> predicted;
  for (long k = zmin; k <= zmax; ++k) {
    Weight w = cd.fundamental(i + m);
    w.dlt += k;
    predicted.push_back(std::move(w));
  }
  std::vector<Weight> got;
  for (const auto& s : rep.summands) got.push_back(s.highest);
  auto sorter = [](const Weight& a, const Weight& b) { return a < b; };
  std::sort(predicted.begin(), predicted.end(), sorter);
  std::sort(got.begin(), got.end(), sorter);
  internal_check(predicted == got,
                 "fundamental_decompose: explicit and generic summands disagree");
  return rep;
}

// ---------------------------------------------------------------------------
// Highest tensor pairs and raising.
// ---------------------------------------------------------------------------

/// Scans the truncated B(lambda) orbit against all windowed affine elements
/// and returns the pairs with every tensor eps zero. These are exactly
/// (straight path to lambda, x) for the lambda-dominant x in the window.
inline std::vector<TensorPA::Elem> tensor_highest_elements(
    const CartanData& cd, const Weight& lambda, long m, long depth, long zmin, long zmax,
    std::size_t budget = 1'000'000) {
  require_admissible_lambda(cd, lambda);
  const auto blam = highest_path_crystal(cd, lambda, depth, budget);
  const TensorPA tc = make_tensor_pa(cd.ell, m);
  std::vector<TensorPA::Elem> out;
  for (const auto& left : blam.elems)
    for (long z = zmin; z <= zmax; ++z)
      for (const auto& w : enumerate_words(cd, m)) {
        TensorPA::Elem x{left, AffineElement{w, z}};
        bool highest = true;
        for (int i = 0; i <= cd.ell && highest; ++i)
          if (tc.eps(i, x) != 0) highest = false;
        if (highest) out.push_back(std::move(x));
      }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return elem_key(tc, a) < elem_key(tc, b);
  });
  return out;
}

struct TensorRaise {
  Monomial monomial;      // over the e_i, written order
  TensorPA::Elem highest; // (straight path to lambda, lambda-dominant element)
};

/// Raises an arbitrary tensor pair to a highest pair: first the B(lambda)
/// component is raised to the straight path (each step uses
/// e_j^{k+1}(b (x) p) = e_j b (x) e_j^k p with k = max(0, eps_j(p) - phi_j(b))),
/// then the path side is raised by the dominant-word procedure, which keeps
/// the left component fixed.
inline TensorRaise raise_tensor(const CartanData& cd, const Weight& lambda,
                                const TensorPA::Elem& start, long step_budget = 100000) {
  require_admissible_lambda(cd, lambda);
  const long m = static_cast<long>(start.second.word.size());
  const TensorPA tc = make_tensor_pa(cd.ell, m);
  const PLPath b_lambda = straight_path(cd, lambda);

  TensorRaise res;
  res.highest = start;
  long steps = 0;
  auto apply_e = [&](int i, long count) {
    for (long t = 0; t < count; ++t) {
      if (++steps > step_budget) throw budget_error("raise_tensor: step budget exceeded");
      auto y = tc.e(i, res.highest);
      internal_check(y.has_value(), "raise_tensor: e vanished unexpectedly");
      res.highest = std::move(*y);
    }
    if (count > 0) monomial_push_left(res.monomial, Gen::E, i, count);
  };

  // Raise the left component to the unique highest weight path of B(lambda).
  while (!(res.highest.first == b_lambda)) {
    int pick = -1;
    for (int i = 0; i <= cd.ell; ++i)
      if (tc.lhs.eps(i, res.highest.first) > 0) { pick = i; break; }
    internal_check(pick >= 0,
                   "raise_tensor: left component is highest weight but not b_lambda");
    const long k = std::max(
        0L, tc.rhs.eps(pick, res.highest.second) - tc.lhs.phi(pick, res.highest.first));
    apply_e(pick, k + 1);
  }

  // Raise the affine side to a dominant word; the left factor never moves.
  const RaiseResult rr = raise_to_dominant(cd, res.highest.second.word, lambda);
  for (std::size_t j = rr.monomial.size(); j-- > 0;) {
    apply_e(rr.monomial[j].index, rr.monomial[j].exponent);
    internal_check(res.highest.first == b_lambda,
                   "raise_tensor: left component moved while raising the path side");
  }
  internal_check(rr.word == res.highest.second.word,
                 "raise_tensor: word raise replay mismatch");
  for (int i = 0; i <= cd.ell; ++i)
    internal_check(tc.eps(i, res.highest) == 0, "raise_tensor: result is not highest");
  return res;
}

/// One summand's truncated orbit inside the tensor crystal, compared with
/// the truncated highest weight crystal of the predicted weight.
inline bool summand_isomorphic(const CartanData& cd, const Weight& lambda,
                               const AffineElement& x, long depth,
                               std::size_t budget = 1'000'000) {
  const long m = static_cast<long>(x.word.size());
  const TensorPA tc = make_tensor_pa(cd.ell, m);
  OrbitOptions<TensorPA> topt;
  topt.depth = depth;
  topt.node_budget = budget;
  const auto torb =
      orbit_bfs(tc, {TensorPA::Elem{straight_path(cd, lambda), x}}, GenSet::F_only, topt);

  Weight hi = lambda + WordCrystal(cd.ell, m).wt(x.word);
  hi.dlt += x.z;
  const auto borb = highest_path_crystal(cd, hi, depth, budget);

  const long root1 = torb.graph.seeds.at(0);
  const long root2 = borb.graph.seeds.at(0);
  return graphs_isomorphic(torb.graph, root1, borb.graph, root2);
}

struct DecompositionVerification {
  bool highest_set_matches = false;
  bool summands_isomorphic = false;
  bool raising_lands_on_highest = false;
  std::string detail;
  bool pass() const {
    return highest_set_matches && summands_isomorphic && raising_lands_on_highest;
  }
};

/// Truncated verification of the decomposition: the scanned highest pairs
/// must match the predicted lambda-dominant set, every summand orbit must be
/// isomorphic to its B(lambda + wt), and every sampled element must raise
/// back onto the highest pair of its component.
inline DecompositionVerification verify_decomposition(const CartanData& cd,
                                                      const Weight& lambda, long m,
                                                      long zmin, long zmax, long depth,
                                                      long sample_depth = 3) {
  DecompositionVerification v;
  const TensorPA tc = make_tensor_pa(cd.ell, m);

  const auto predicted = lambda_dominant_affine(cd, lambda, m, zmin, zmax);
  const auto scanned = tensor_highest_elements(cd, lambda, m, depth, zmin, zmax);
  std::vector<std::string> want, got;
  const PLPath b_lambda = straight_path(cd, lambda);
  for (const auto& x : predicted)
    want.push_back(elem_key(tc, TensorPA::Elem{b_lambda, x}));
  for (const auto& x : scanned) got.push_back(elem_key(tc, x));
  std::sort(want.begin(), want.end());
  v.highest_set_matches = (want == got);
  if (!v.highest_set_matches) {
    v.detail = "highest tensor pairs differ from the lambda-dominant set";
    return v;
  }

  v.summands_isomorphic = true;
  for (const auto& x : predicted)
    if (!summand_isomorphic(cd, lambda, x, depth)) {
      v.summands_isomorphic = false;
      v.detail = "summand orbit not isomorphic at " + affine_to_json(x).dump();
      return v;
    }

  v.raising_lands_on_highest = true;
  for (const auto& x : predicted) {
    OrbitOptions<TensorPA> opt;
    opt.depth = sample_depth;
    const auto orb = orbit_bfs(tc, {TensorPA::Elem{b_lambda, x}}, GenSet::F_only, opt);
    for (const auto& elem : orb.elems) {
      const auto raised = raise_tensor(cd, lambda, elem);
      if (!(raised.highest == TensorPA::Elem{b_lambda, x})) {
        v.raising_lands_on_highest = false;
        v.detail = "raise_tensor left its component at " + elem_key(tc, elem);
        return v;
      }
    }
  }
  return v;
}

}  // namespace pathcrystal
