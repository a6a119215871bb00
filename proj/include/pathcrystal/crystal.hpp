#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pathcrystal/common.hpp"
#include "pathcrystal/rational.hpp"
#include "pathcrystal/weight.hpp"

namespace pathcrystal {

/// Contract every concrete crystal implements: Kashiwara operators returning
/// an element or nothing, the statistics eps/phi, the weight map, and a
/// canonical JSON encoding used for ordering and graph node identity.
/// All crystals here are normal, so eps/phi are plain integers.
template <typename C>
concept Crystal = requires(const C& c, const typename C::Elem& x, int i) {
  { c.rank() } -> std::convertible_to<int>;
  { c.cd() } -> std::convertible_to<const CartanData&>;
  { c.e(i, x) } -> std::same_as<std::optional<typename C::Elem>>;
  { c.f(i, x) } -> std::same_as<std::optional<typename C::Elem>>;
  { c.eps(i, x) } -> std::convertible_to<long>;
  { c.phi(i, x) } -> std::convertible_to<long>;
  { c.wt(x) } -> std::convertible_to<Weight>;
  { c.to_json(x) } -> std::convertible_to<nlohmann::json>;
};

template <Crystal C>
std::string elem_key(const C& c, const typename C::Elem& x) {
  return c.to_json(x).dump();
}

inline long pair_long(const CartanData& cd, int i, const Weight& w) {
  const Rat p = pair(cd, i, w);
  internal_check(is_integer(p), "non-integral pairing on a crystal weight");
  return to_long(numer(p));
}

// ---------------------------------------------------------------------------
// Tensor product rules for a sequence of factors of one crystal.
// Factor 1 is the leftmost tensor factor (index 0 in the vector).
// ---------------------------------------------------------------------------

/// Kashiwara functions r^i_k = eps_i(b_k) - sum_{j<k} alpha_i^vee(wt b_j).
template <Crystal C>
std::vector<long> kashiwara_r(const C& c, const std::vector<typename C::Elem>& factors, int i) {
  require(!factors.empty(), "tensor factors must be non-empty");
  std::vector<long> r(factors.size());
  long shift = 0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    r[k] = c.eps(i, factors[k]) - shift;
    shift += pair_long(c.cd(), i, c.wt(factors[k]));
  }
  return r;
}

template <Crystal C>
long tensor_eps(const C& c, const std::vector<typename C::Elem>& factors, int i) {
  const auto r = kashiwara_r(c, factors, i);
  return *std::max_element(r.begin(), r.end());
}

template <Crystal C>
Weight tensor_wt(const C& c, const std::vector<typename C::Elem>& factors) {
  Weight w = c.cd().zero();
  for (const auto& b : factors) w += c.wt(b);
  return w;
}

template <Crystal C>
long tensor_phi(const C& c, const std::vector<typename C::Elem>& factors, int i) {
  return tensor_eps(c, factors, i) + pair_long(c.cd(), i, tensor_wt(c, factors));
}

/// e_i acts in the leftmost place where the maximum of r^i_k is attained.
template <Crystal C>
std::optional<std::vector<typename C::Elem>> tensor_e(
    const C& c, const std::vector<typename C::Elem>& factors, int i) {
  const auto r = kashiwara_r(c, factors, i);
  const long m = *std::max_element(r.begin(), r.end());
  const std::size_t k = static_cast<std::size_t>(
      std::find(r.begin(), r.end(), m) - r.begin());
  auto fx = c.e(i, factors[k]);
  if (!fx) return std::nullopt;
  auto out = factors;
  out[k] = std::move(*fx);
  return out;
}

/// f_i acts in the rightmost place where the maximum of r^i_k is attained.
template <Crystal C>
std::optional<std::vector<typename C::Elem>> tensor_f(
    const C& c, const std::vector<typename C::Elem>& factors, int i) {
  const auto r = kashiwara_r(c, factors, i);
  const long m = *std::max_element(r.begin(), r.end());
  std::size_t k = factors.size();
  for (std::size_t j = factors.size(); j-- > 0;)
    if (r[j] == m) { k = j; break; }
  auto fx = c.f(i, factors[k]);
  if (!fx) return std::nullopt;
  auto out = factors;
  out[k] = std::move(*fx);
  return out;
}

// ---------------------------------------------------------------------------
// Two-factor product of possibly different crystals, via rules (10a)/(10b).
// ---------------------------------------------------------------------------

template <Crystal CL, Crystal CR>
struct Tensor2 {
  CL lhs;
  CR rhs;
  using Elem = std::pair<typename CL::Elem, typename CR::Elem>;

  int rank() const { return lhs.rank(); }
  const CartanData& cd() const { return lhs.cd(); }

  long eps(int i, const Elem& x) const {
    return std::max(lhs.eps(i, x.first),
                    rhs.eps(i, x.second) - pair_long(cd(), i, lhs.wt(x.first)));
  }
  Weight wt(const Elem& x) const { return lhs.wt(x.first) + rhs.wt(x.second); }
  long phi(int i, const Elem& x) const { return eps(i, x) + pair_long(cd(), i, wt(x)); }

  std::optional<Elem> e(int i, const Elem& x) const {
    if (lhs.phi(i, x.first) >= rhs.eps(i, x.second)) {
      auto l = lhs.e(i, x.first);
      if (!l) return std::nullopt;
      return Elem{std::move(*l), x.second};
    }
    auto r = rhs.e(i, x.second);
    if (!r) return std::nullopt;
    return Elem{x.first, std::move(*r)};
  }

  std::optional<Elem> f(int i, const Elem& x) const {
    if (lhs.phi(i, x.first) > rhs.eps(i, x.second)) {
      auto l = lhs.f(i, x.first);
      if (!l) return std::nullopt;
      return Elem{std::move(*l), x.second};
    }
    auto r = rhs.f(i, x.second);
    if (!r) return std::nullopt;
    return Elem{x.first, std::move(*r)};
  }

  nlohmann::json to_json(const Elem& x) const {
    return nlohmann::json{{"left", lhs.to_json(x.first)}, {"right", rhs.to_json(x.second)}};
  }
};

// ---------------------------------------------------------------------------
// Monomials in the free monoid on the e_i, f_i.
// ---------------------------------------------------------------------------

enum class Gen { E, F };

struct MonomialFactor {
  Gen kind;
  int index;
  long exponent;  // > 0
  bool operator==(const MonomialFactor&) const = default;
};

/// Stored in written order: factors[0] is the leftmost generator power and is
/// applied last. apply_monomial consumes the sequence from the back.
using Monomial = std::vector<MonomialFactor>;

/// Prepends one generator power (the next operator applied after everything
/// already in the monomial), merging with the current leftmost factor when
/// the generator matches.
inline void monomial_push_left(Monomial& m, Gen kind, int index, long exponent) {
  require(exponent > 0, "monomial exponents must be positive");
  if (!m.empty() && m.front().kind == kind && m.front().index == index) {
    m.front().exponent += exponent;
    return;
  }
  m.insert(m.begin(), MonomialFactor{kind, index, exponent});
}

inline long monomial_exponent_on(const Monomial& m, Gen kind, int index) {
  long total = 0;
  for (const auto& g : m)
    if (g.kind == kind && g.index == index) total += g.exponent;
  return total;
}

inline std::string monomial_to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::ostringstream os;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const auto& g = m[j];
    if (j) os << ' ';
    os << (g.kind == Gen::E ? 'e' : 'f') << '_' << g.index;
    if (g.exponent != 1) os << '^' << g.exponent;
  }
  return os.str();
}

inline nlohmann::json monomial_to_json(const Monomial& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : m)
    arr.push_back({{"gen", g.kind == Gen::E ? "e" : "f"},
                   {"i", g.index},
                   {"exp", g.exponent}});
  return arr;
}

template <Crystal C>
std::optional<typename C::Elem> apply_monomial(const C& c, typename C::Elem x,
                                               const Monomial& m) {
  for (std::size_t j = m.size(); j-- > 0;) {
    const auto& g = m[j];
    for (long t = 0; t < g.exponent; ++t) {
      auto y = (g.kind == Gen::E) ? c.e(g.index, x) : c.f(g.index, x);
      if (!y) return std::nullopt;
      x = std::move(*y);
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Finite truncations of crystal graphs.
// ---------------------------------------------------------------------------

enum class GenSet { EF, E_only, F_only };

inline bool genset_uses_e(GenSet g) { return g != GenSet::F_only; }
inline bool genset_uses_f(GenSet g) { return g != GenSet::E_only; }

inline nlohmann::json genset_to_json(GenSet g) {
  switch (g) {
    case GenSet::E_only: return "e";
    case GenSet::F_only: return "f";
    default: return "ef";
  }
}

struct TruncationDesc {
  std::optional<long> depth;
  nlohmann::json region = nlohmann::json{{"kind", "none"}};
  GenSet gens = GenSet::EF;

  nlohmann::json to_json() const {
    nlohmann::json j{{"region", region}, {"gens", genset_to_json(gens)}};
    j["depth"] = depth ? nlohmann::json(*depth) : nlohmann::json();
    return j;
  }
  bool operator==(const TruncationDesc& o) const {
    return depth == o.depth && region == o.region && gens == o.gens;
  }
};

/// A finite directed multigraph of crystal elements. An edge (from,to,i)
/// means f_i(from) = to; its reverse is always the e_i relation. Nodes are
/// identified by their canonical encodings and kept sorted by encoding.
/// Boundary nodes were reached but lie outside the requested region and were
/// not expanded.
struct CrystalGraph {
  struct Node {
    std::string key;
    Weight wt;
    bool boundary = false;
  };

  int ell = 0;
  std::vector<Node> nodes;
  std::vector<std::array<long, 3>> edges;  // (from, to, i), f_i(from) = to
  std::vector<long> seeds;
  TruncationDesc trunc;

  long index_of(const std::string& key) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), key,
                               [](const Node& n, const std::string& k) { return n.key < k; });
    if (it == nodes.end() || it->key != key) return -1;
    return it - nodes.begin();
  }

  long interior_count() const {
    long n = 0;
    for (const auto& nd : nodes)
      if (!nd.boundary) ++n;
    return n;
  }

  nlohmann::json to_json() const {
    nlohmann::json jnodes = nlohmann::json::array();
    nlohmann::json jboundary = nlohmann::json::array();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      jnodes.push_back(nlohmann::json::parse(nodes[k].key));
      if (nodes[k].boundary) jboundary.push_back(k);
    }
    nlohmann::json jedges = nlohmann::json::array();
    for (const auto& e : edges) jedges.push_back({e[0], e[1], e[2]});
    return nlohmann::json{{"nodes", jnodes},
                          {"boundary", jboundary},
                          {"edges", jedges},
                          {"seeds", seeds},
                          {"truncation", trunc.to_json()}};
  }

  std::string to_dot() const {
    std::ostringstream os;
    os << "digraph crystal {\n";
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      os << "  n" << k << " [label=\"" << dot_escape(nodes[k].key) << "\"";
      if (nodes[k].boundary) os << ", style=dashed";
      os << "];\n";
    }
    for (const auto& e : edges)
      os << "  n" << e[0] << " -> n" << e[1] << " [label=\"f" << e[2] << "\"];\n";
    os << "}\n";
    return os.str();
  }

private:
  static std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out.push_back('\\');
      out.push_back(ch);
    }
    return out;
  }
};

template <Crystal C>
struct OrbitOptions {
  std::optional<long> depth;
  std::function<bool(const typename C::Elem&)> region;  // null = unrestricted
  nlohmann::json region_desc = nlohmann::json{{"kind", "none"}};
  std::size_t node_budget = 1'000'000;
};

/// Decoded companion of a CrystalGraph: elems[k] is the element encoded by
/// graph.nodes[k].key.
template <Crystal C>
struct OrbitResult {
  CrystalGraph graph;
  std::vector<typename C::Elem> elems;
};

/// Deterministic breadth-first closure of the seed set under the chosen
/// generators. Each BFS layer is processed in encoding order and generators
/// are applied in the fixed order f_0..f_l, e_0..e_l. Elements outside the
/// region become boundary markers and are not expanded. The result is
/// re-sorted by encoding, so equal inputs give byte-identical exports.
template <Crystal C>
OrbitResult<C> orbit_bfs(const C& c, const std::vector<typename C::Elem>& seeds,
                         GenSet gens, const OrbitOptions<C>& opt) {
  require(opt.depth || opt.region,
          "orbit_bfs needs a depth bound or a region predicate");
  struct Rec {
    typename C::Elem elem;
    Weight wt;
    bool boundary;
  };
  std::map<std::string, Rec> found;  // key -> record, ordered by encoding
  std::set<std::tuple<std::string, std::string, int>> edges;

  // Returns (key, boundary, newly-discovered).
  auto add_elem = [&](const typename C::Elem& x) -> std::tuple<std::string, bool, bool> {
    std::string key = elem_key(c, x);
    auto it = found.find(key);
    if (it != found.end()) return {key, it->second.boundary, false};
    if (found.size() >= opt.node_budget)
      throw budget_error("orbit_bfs: node budget exceeded");
    const bool boundary = opt.region && !opt.region(x);
    found.emplace(key, Rec{x, c.wt(x), boundary});
    return {key, boundary, true};
  };

  std::vector<std::string> seed_keys, layer;
  for (const auto& s : seeds) {
    auto [key, boundary, fresh] = add_elem(s);
    require(!boundary, "orbit_bfs: seed lies outside the region");
    seed_keys.push_back(key);
    if (fresh) layer.push_back(key);
  }

  for (long depth = 0; !layer.empty(); ++depth) {
    if (opt.depth && depth >= *opt.depth) break;
    std::sort(layer.begin(), layer.end());
    std::vector<std::string> next;
    for (const auto& key : layer) {
      const auto x = found.at(key).elem;
      if (genset_uses_f(gens))
        for (int i = 0; i <= c.rank(); ++i)
          if (auto y = c.f(i, x)) {
            auto [ykey, yboundary, fresh] = add_elem(*y);
            edges.insert({key, ykey, i});
            if (fresh && !yboundary) next.push_back(ykey);
          }
      if (genset_uses_e(gens))
        for (int i = 0; i <= c.rank(); ++i)
          if (auto y = c.e(i, x)) {
            auto [ykey, yboundary, fresh] = add_elem(*y);
            edges.insert({ykey, key, i});  // e_i(x) = y means f_i(y) = x
            if (fresh && !yboundary) next.push_back(ykey);
          }
    }
    layer = std::move(next);
  }

  OrbitResult<C> out;
  out.graph.ell = c.rank();
  out.graph.trunc.depth = opt.depth;
  out.graph.trunc.region = opt.region_desc;
  out.graph.trunc.gens = gens;
  for (auto& [key, rec] : found) {
    out.graph.nodes.push_back({key, rec.wt, rec.boundary});
    out.elems.push_back(rec.elem);
  }
  for (const auto& [from, to, i] : edges)
    out.graph.edges.push_back({out.graph.index_of(from), out.graph.index_of(to), i});
  std::sort(out.graph.edges.begin(), out.graph.edges.end());
  for (const auto& key : seed_keys) out.graph.seeds.push_back(out.graph.index_of(key));
  std::sort(out.graph.seeds.begin(), out.graph.seeds.end());
  out.graph.seeds.erase(std::unique(out.graph.seeds.begin(), out.graph.seeds.end()),
                        out.graph.seeds.end());
  return out;
}

// ---------------------------------------------------------------------------
// Structure checks.
// ---------------------------------------------------------------------------

struct NormalityReport {
  long checked = 0;   // (node, i) pairs whose full string lies in the graph
  long skipped = 0;   // strings cut off by the truncation
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

/// Verifies eps_i = length of the e_i-string and phi_i = length of the
/// f_i-string for every interior node whose whole i-string stays inside the
/// graph; strings that hit a boundary marker or leave the node set are
/// skipped and counted.
template <Crystal C>
NormalityReport check_normal(const C& c, const OrbitResult<C>& orb) {
  NormalityReport rep;
  const auto& g = orb.graph;

  auto string_len = [&](typename C::Elem x, int i, bool up) -> std::optional<long> {
    long len = 0;
    for (;;) {
      auto y = up ? c.e(i, x) : c.f(i, x);
      if (!y) return len;
      const long idx = g.index_of(elem_key(c, *y));
      if (idx < 0 || g.nodes[idx].boundary) return std::nullopt;  // truncated
      x = std::move(*y);
      ++len;
      internal_check(len <= static_cast<long>(g.nodes.size()),
                     "check_normal: string longer than the graph");
    }
  };

  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    if (g.nodes[k].boundary) continue;
    for (int i = 0; i <= c.rank(); ++i) {
      const auto up = string_len(orb.elems[k], i, true);
      const auto down = string_len(orb.elems[k], i, false);
      if (!up || !down) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      const long ei = c.eps(i, orb.elems[k]);
      const long fi = c.phi(i, orb.elems[k]);
      if (ei != *up)
        rep.failures.push_back("eps_" + std::to_string(i) + " = " + std::to_string(ei) +
                               " but e-string length " + std::to_string(*up) + " at " +
                               g.nodes[k].key);
      if (fi != *down)
        rep.failures.push_back("phi_" + std::to_string(i) + " = " + std::to_string(fi) +
                               " but f-string length " + std::to_string(*down) + " at " +
                               g.nodes[k].key);
    }
  }
  return rep;
}

struct MorphismReport {
  long checked = 0;
  std::string counterexample;  // empty when the sample passed
  bool pass() const { return counterexample.empty(); }
};

/// Checks that `map` is a strict morphism on the sample: weights and eps are
/// preserved and map(e_i x), map(f_i x) agree with e_i map(x), f_i map(x),
/// with absent matching absent. Stops at the first counterexample.
template <Crystal C1, Crystal C2, typename MapFn>
MorphismReport check_morphism(const C1& c1, const C2& c2, MapFn map,
                              const std::vector<typename C1::Elem>& sample,
                              GenSet gens = GenSet::EF) {
  MorphismReport rep;
  for (const auto& x : sample) {
    const auto y = map(x);
    if (!y) {
      rep.counterexample = "map undefined at " + elem_key(c1, x);
      return rep;
    }
    if (c1.wt(x) != c2.wt(*y)) {
      rep.counterexample = "wt not preserved at " + elem_key(c1, x);
      return rep;
    }
    for (int i = 0; i <= c1.rank(); ++i) {
      if (c1.eps(i, x) != c2.eps(i, *y)) {
        rep.counterexample = "eps_" + std::to_string(i) + " not preserved at " + elem_key(c1, x);
        return rep;
      }
      if (genset_uses_e(gens)) {
        const auto ex = c1.e(i, x);
        const auto ey = c2.e(i, *y);
        if (ex.has_value() != ey.has_value()) {
          rep.counterexample = "e_" + std::to_string(i) + " presence differs at " + elem_key(c1, x);
          return rep;
        }
        if (ex) {
          const auto mex = map(*ex);
          if (!mex || !(*mex == *ey)) {
            rep.counterexample = "e_" + std::to_string(i) + " does not commute at " + elem_key(c1, x);
            return rep;
          }
        }
      }
      if (genset_uses_f(gens)) {
        const auto fx = c1.f(i, x);
        const auto fy = c2.f(i, *y);
        if (fx.has_value() != fy.has_value()) {
          rep.counterexample = "f_" + std::to_string(i) + " presence differs at " + elem_key(c1, x);
          return rep;
        }
        if (fx) {
          const auto mfx = map(*fx);
          if (!mfx || !(*mfx == *fy)) {
            rep.counterexample = "f_" + std::to_string(i) + " does not commute at " + elem_key(c1, x);
            return rep;
          }
        }
      }
      ++rep.checked;
    }
  }
  return rep;
}

/// Compares two rooted truncated crystal graphs by their canonical BFS
/// codings: discovery order is forced by the edge labels, and per node the
/// coding records the weight relative to the root plus, for every label and
/// direction, the discovery index of the neighbour (or none/boundary).
inline bool graphs_isomorphic(const CrystalGraph& g1, long root1,
                              const CrystalGraph& g2, long root2) {
  require(g1.trunc == g2.trunc, "graphs_isomorphic: truncation descriptors differ");
  require(g1.ell == g2.ell, "graphs_isomorphic: ranks differ");
  require(root1 >= 0 && root1 < static_cast<long>(g1.nodes.size()), "bad root");
  require(root2 >= 0 && root2 < static_cast<long>(g2.nodes.size()), "bad root");

  struct Coding {
    std::vector<Weight> wts;                 // relative to root, discovery order
    std::vector<std::vector<long>> slots;    // -2 none, -3 boundary, else id
    std::vector<bool> boundary;
  };

  auto encode = [](const CrystalGraph& g, long root) {
    const int n = g.ell + 1;
    // adjacency: unique f-successor and f-predecessor per label
    std::vector<std::vector<long>> fsucc(g.nodes.size(), std::vector<long>(n, -2));
    std::vector<std::vector<long>> fpred(g.nodes.size(), std::vector<long>(n, -2));
    for (const auto& e : g.edges) {
      fsucc[e[0]][e[2]] = e[1];
      fpred[e[1]][e[2]] = e[0];
    }
    Coding code;
    std::vector<long> id(g.nodes.size(), -1);
    std::vector<long> order;
    id[root] = 0;
    order.push_back(root);
    const Weight base = g.nodes[root].wt;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const long x = order[head];
      code.wts.push_back(g.nodes[x].wt - base);
      code.boundary.push_back(g.nodes[x].boundary);
      std::vector<long> slots;
      auto visit = [&](long y) {
        if (y == -2) { slots.push_back(-2); return; }
        if (g.nodes[y].boundary) { slots.push_back(-3); return; }
        if (id[y] < 0) {
          id[y] = static_cast<long>(order.size());
          order.push_back(y);
        }
        slots.push_back(id[y]);
      };
      if (!g.nodes[x].boundary) {
        for (int i = 0; i < n; ++i) visit(fsucc[x][i]);
        for (int i = 0; i < n; ++i) visit(fpred[x][i]);
      }
      code.slots.push_back(std::move(slots));
    }
    return code;
  };

  const Coding a = encode(g1, root1);
  const Coding b = encode(g2, root2);
  return a.wts == b.wts && a.slots == b.slots && a.boundary == b.boundary;
}

}  // namespace pathcrystal
