#include <catch2/catch_amalgamated.hpp>

#include "pathcrystal/affine.hpp"
#include "pathcrystal/crystal.hpp"
#include "pathcrystal/letters.hpp"
#include "pathcrystal/paths.hpp"

#include <cmath>
#include <set>

using namespace pathcrystal;

namespace {

std::vector<int> all_letters(int ell) {
  std::vector<int> out;
  for (int j = 0; j <= ell; ++j) out.push_back(j);
  return out;
}

// C3 on explored graphs: the reverse of every f-edge is an e-relation.
template <Crystal C>
void check_edge_inverses(const C& c, const OrbitResult<C>& orb) {
  for (const auto& e : orb.graph.edges) {
    const auto up = c.e(static_cast<int>(e[2]), orb.elems[e[1]]);
    REQUIRE(up.has_value());
    CHECK(*up == orb.elems[e[0]]);
    const auto down = c.f(static_cast<int>(e[2]), orb.elems[e[0]]);
    REQUIRE(down.has_value());
    CHECK(*down == orb.elems[e[1]]);
  }
}

}  // namespace

TEST_CASE("Kashiwara functions and tensor eps") {
  LetterCrystal lc1(1);
  CHECK(tensor_eps(lc1, {0, 1}, 0) == 1);  // r = (1, 1)

  LetterCrystal lc2(2);
  CHECK(tensor_eps(lc2, {0, 1}, 1) == 0);  // r = (0, 0)

  for (int ell = 1; ell <= 3; ++ell) {
    LetterCrystal lc(ell);
    for (int i = 0; i <= ell; ++i)
      for (int j = 0; j <= ell; ++j)
        CHECK(tensor_eps(lc, {j}, i) == (i == j ? 1 : 0));
  }
}

TEST_CASE("tensor operators act at the extreme maximizers") {
  LetterCrystal lc2(2);
  CHECK(tensor_e(lc2, {1, 0}, 1) == std::vector<int>{0, 0});

  for (int ell = 1; ell <= 3; ++ell) {
    LetterCrystal lc(ell);
    CHECK(tensor_f(lc, {0, 0}, 1) == std::vector<int>{1, 0});
  }

  // f_1 applied twice to b_0 (x) b_0 gives b_1 (x) b_1
  LetterCrystal lc1(1);
  auto once = tensor_f(lc1, {0, 0}, 1);
  REQUIRE(once.has_value());
  auto twice = tensor_f(lc1, *once, 1);
  REQUIRE(twice.has_value());
  CHECK(*twice == std::vector<int>{1, 1});
}

TEST_CASE("monomials") {
  WordCrystal wc(1, 2);
  const Word x{0, 1};
  CHECK(apply_monomial(wc, x, {}) == x);

  // f_i then e_i restores the element whenever f_i applies
  for (int ell = 1; ell <= 2; ++ell) {
    WordCrystal w2(ell, 2);
    for (const auto& w : enumerate_words(w2.cd(), 2))
      for (int i = 0; i <= ell; ++i)
        if (w2.f(i, w)) {
          Monomial m{{Gen::E, i, 1}, {Gen::F, i, 1}};  // f first, then e
          CHECK(apply_monomial(w2, w, m) == w);
        }
  }

  // the z-ladder of the affinization
  for (int ell = 1; ell <= 2; ++ell)
    for (long m = 1; m <= 3; ++m) {
      AffineCrystal ac(ell, m);
      for (long r = 1; r <= 2; ++r)
        for (long k : {-1L, 0L, 2L}) {
          CHECK(apply_monomial(ac, ac.source(k), ladder_monomial(ac.cd(), m, r, Gen::E)) ==
                ac.source(k + r * m));
          CHECK(apply_monomial(ac, ac.source(k), ladder_monomial(ac.cd(), m, r, Gen::F)) ==
                ac.source(k - r * m));
        }
    }

  CHECK(monomial_to_string({{Gen::E, 0, 2}, {Gen::F, 1, 1}}) == "e_0^2 f_1");
  Monomial built;
  monomial_push_left(built, Gen::F, 1, 1);
  monomial_push_left(built, Gen::E, 0, 1);
  monomial_push_left(built, Gen::E, 0, 1);
  CHECK(built == Monomial{{Gen::E, 0, 2}, {Gen::F, 1, 1}});
}

TEST_CASE("two-factor rules agree with the general tensor rules") {
  for (int ell = 1; ell <= 3; ++ell) {
    LetterCrystal lc(ell);
    Tensor2<LetterCrystal, LetterCrystal> tp{lc, lc};
    for (int a : all_letters(ell))
      for (int b : all_letters(ell))
        for (int i = 0; i <= ell; ++i) {
          const std::pair<int, int> x{a, b};
          const std::vector<int> v{a, b};
          CHECK(tp.eps(i, x) == tensor_eps(lc, v, i));
          CHECK(tp.wt(x) == tensor_wt(lc, v));
          const auto pe = tp.e(i, x);
          const auto ve = tensor_e(lc, v, i);
          CHECK(pe.has_value() == ve.has_value());
          if (pe) CHECK(std::vector<int>{pe->first, pe->second} == *ve);
          const auto pf = tp.f(i, x);
          const auto vf = tensor_f(lc, v, i);
          CHECK(pf.has_value() == vf.has_value());
          if (pf) CHECK(std::vector<int>{pf->first, pf->second} == *vf);
        }
  }
}

TEST_CASE("tensor product associativity on triples") {
  for (int ell = 1; ell <= 2; ++ell) {
    LetterCrystal lc(ell);
    Tensor2<LetterCrystal, LetterCrystal> inner{lc, lc};
    Tensor2<Tensor2<LetterCrystal, LetterCrystal>, LetterCrystal> left{inner, lc};
    Tensor2<LetterCrystal, Tensor2<LetterCrystal, LetterCrystal>> right{lc, inner};
    for (int a : all_letters(ell))
      for (int b : all_letters(ell))
        for (int c : all_letters(ell))
          for (int i = 0; i <= ell; ++i) {
            const std::vector<int> flat{a, b, c};
            const auto lx = std::pair{std::pair{a, b}, c};
            const auto rx = std::pair{a, std::pair{b, c}};
            CHECK(left.eps(i, lx) == tensor_eps(lc, flat, i));
            CHECK(right.eps(i, rx) == tensor_eps(lc, flat, i));
            const auto fe = tensor_e(lc, flat, i);
            const auto le = left.e(i, lx);
            const auto re = right.e(i, rx);
            CHECK(le.has_value() == fe.has_value());
            CHECK(re.has_value() == fe.has_value());
            if (fe) {
              CHECK(std::vector<int>{le->first.first, le->first.second, le->second} == *fe);
              CHECK(std::vector<int>{re->first, re->second.first, re->second.second} == *fe);
            }
            const auto ff = tensor_f(lc, flat, i);
            const auto lf = left.f(i, lx);
            const auto rf = right.f(i, rx);
            CHECK(lf.has_value() == ff.has_value());
            CHECK(rf.has_value() == ff.has_value());
            if (ff) {
              CHECK(std::vector<int>{lf->first.first, lf->first.second, lf->second} == *ff);
              CHECK(std::vector<int>{rf->first, rf->second.first, rf->second.second} == *ff);
            }
          }
  }
}

TEST_CASE("generation from the source word over F and over E") {
  for (int ell = 1; ell <= 2; ++ell)
    for (long m = 1; m <= 3; ++m) {
      WordCrystal wc(ell, m);
      const long total = static_cast<long>(std::pow(ell + 1, m));
      OrbitOptions<WordCrystal> opt;
      opt.depth = 3 * m * (ell + 1);
      const auto forb = orbit_bfs(wc, {wc.source()}, GenSet::F_only, opt);
      CHECK(forb.graph.interior_count() == total);
      const auto eorb = orbit_bfs(wc, {wc.source()}, GenSet::E_only, opt);
      CHECK(eorb.graph.interior_count() == total);
      check_edge_inverses(wc, forb);
    }
}

TEST_CASE("orbit examples") {
  // all four words of B_1(2) from the source over F
  WordCrystal wc(1, 2);
  OrbitOptions<WordCrystal> wopt;
  wopt.depth = 12;
  CHECK(orbit_bfs(wc, {wc.source()}, GenSet::F_only, wopt).graph.interior_count() == 4);

  // a depth-0 orbit is a single node
  PathCrystal pathc(1);
  OrbitOptions<PathCrystal> popt;
  popt.depth = 0;
  const auto single = orbit_bfs(
      pathc, {straight_path(pathc.cd(), pathc.cd().fundamental(0))}, GenSet::EF, popt);
  CHECK(single.graph.nodes.size() == 1);
  CHECK(single.graph.seeds == std::vector<long>{0});

  // z-window orbit of the source covers its residue class inside the window
  AffineCrystal ac(1, 2);
  OrbitOptions<AffineCrystal> aopt;
  aopt.region = [](const AffineElement& x) { return x.z >= -2 && x.z <= 2; };
  aopt.region_desc = {{"kind", "zwin"}, {"min", -2}, {"max", 2}};
  const auto orb = orbit_bfs(ac, {ac.source(0)}, GenSet::EF, aopt);

  std::set<std::string> expected;  // the residue-class description, brute forced
  for (const auto& x : enumerate_component(ac.cd(), 2, 0, -2, 2))
    expected.insert(elem_key(ac, x));
  CHECK(expected.size() == 11);
  std::set<std::string> interior;
  for (const auto& node : orb.graph.nodes)
    if (!node.boundary) interior.insert(node.key);
  CHECK(interior == expected);
  check_edge_inverses(ac, orb);

  // byte-identical reruns
  const auto orb2 = orbit_bfs(ac, {ac.source(0)}, GenSet::EF, aopt);
  CHECK(orb.graph.to_json().dump() == orb2.graph.to_json().dump());
  CHECK(orb.graph.to_dot() == orb2.graph.to_dot());

  // node budget is a hard error
  OrbitOptions<AffineCrystal> tiny = aopt;
  tiny.node_budget = 3;
  CHECK_THROWS_AS(orbit_bfs(ac, {ac.source(0)}, GenSet::EF, tiny), budget_error);
}

TEST_CASE("normality checks") {
  // the full B_1(2) graph: every string is complete and normal
  WordCrystal wc(1, 2);
  OrbitOptions<WordCrystal> opt;
  opt.depth = 50;
  const auto orb = orbit_bfs(wc, {wc.source()}, GenSet::EF, opt);
  const auto rep = check_normal(wc, orb);
  CHECK(rep.pass());
  CHECK(rep.skipped == 0);
  CHECK(rep.checked == 4 * 2);

  // the full letter crystal at l=1: values forced by the crystal data
  LetterCrystal lc(1);
  OrbitOptions<LetterCrystal> lopt;
  lopt.depth = 10;
  const auto lorb = orbit_bfs(lc, {0}, GenSet::EF, lopt);
  CHECK(lorb.graph.interior_count() == 2);
  CHECK(check_normal(lc, lorb).pass());
  CHECK(lc.eps(0, 0) == 1);  // e_0 b_0 = b_1, then e_0 b_1 vanishes
  CHECK(lc.eps(1, 0) == 0);
  CHECK(lc.phi(1, 0) == 1);  // f_1 b_0 = b_1

  // a truncated graph skips the strings that hit the cut
  OrbitOptions<LetterCrystal> cut;
  cut.depth = 0;
  const auto single = orbit_bfs(lc, {0}, GenSet::EF, cut);
  const auto srep = check_normal(lc, single);
  CHECK(srep.pass());
  CHECK(srep.skipped >= 1);
}

TEST_CASE("morphism checker") {
  AffineCrystal ac(1, 2);
  std::vector<AffineElement> sample;
  for (long z = -2; z <= 2; ++z)
    for (const auto& w : enumerate_words(ac.cd(), 2)) sample.push_back({w, z});

  // identity is a strict morphism
  const auto id = [](const AffineElement& x) { return std::optional<AffineElement>(x); };
  CHECK(check_morphism(ac, ac, id, sample).pass());

  // psi is a strict morphism on the sampled window
  PathCrystal pc(1);
  const auto psi = [&](const AffineElement& x) {
    return std::optional<PLPath>(psi_embed(ac.cd(), x));
  };
  const auto rep = check_morphism(ac, pc, psi, sample);
  CHECK(rep.pass());

  // negative control: forgetting the z coordinate breaks weight preservation
  const auto broken = [](const AffineElement& x) {
    return std::optional<AffineElement>(AffineElement{x.word, 0});
  };
  const auto brep = check_morphism(ac, ac, broken, sample);
  CHECK(!brep.pass());
  CHECK(brep.counterexample.find("wt") != std::string::npos);
}

TEST_CASE("rooted graph isomorphism") {
  PathCrystal pc(1);
  const CartanData& cd = pc.cd();
  OrbitOptions<PathCrystal> opt;
  opt.depth = 3;

  const auto a = orbit_bfs(pc, {straight_path(cd, cd.fundamental(0))}, GenSet::F_only, opt);
  CHECK(graphs_isomorphic(a.graph, a.graph.seeds[0], a.graph, a.graph.seeds[0]));

  // a two-segment dominant path with the same endpoint generates an
  // isomorphic crystal
  Weight mid = cd.fundamental(0) + cd.fundamental(1);
  mid.dlt = -1;
  const PLPath bent = canonicalize(
      {{Rat(0), cd.zero()}, {Rat(1, 2), mid}, {Rat(1), cd.fundamental(0)}});
  CHECK(bent.breaks.size() == 3);
  const auto b = orbit_bfs(pc, {bent}, GenSet::F_only, opt);
  CHECK(graphs_isomorphic(a.graph, a.graph.seeds[0], b.graph, b.graph.seeds[0]));

  // different fundamental weights at l=2 give different depth-3 crystals
  PathCrystal pc2(2);
  OrbitOptions<PathCrystal> opt2;
  opt2.depth = 3;
  const auto g0 = orbit_bfs(pc2, {straight_path(pc2.cd(), pc2.cd().fundamental(0))},
                            GenSet::F_only, opt2);
  const auto g1 = orbit_bfs(pc2, {straight_path(pc2.cd(), pc2.cd().fundamental(1))},
                            GenSet::F_only, opt2);
  CHECK(!graphs_isomorphic(g0.graph, g0.graph.seeds[0], g1.graph, g1.graph.seeds[0]));

  // mismatched truncation descriptors are a usage error
  OrbitOptions<PathCrystal> opt3;
  opt3.depth = 2;
  const auto g2 = orbit_bfs(pc2, {straight_path(pc2.cd(), pc2.cd().fundamental(0))},
                            GenSet::F_only, opt3);
  CHECK_THROWS_AS(graphs_isomorphic(g0.graph, 0, g2.graph, 0), std::invalid_argument);
}

TEST_CASE("graph exports") {
  WordCrystal wc(1, 2);
  OrbitOptions<WordCrystal> opt;
  opt.depth = 1;
  const auto orb = orbit_bfs(wc, {wc.source()}, GenSet::F_only, opt);
  const auto j = orb.graph.to_json();
  CHECK(j["nodes"].size() == orb.graph.nodes.size());
  CHECK(j["truncation"]["depth"] == 1);
  CHECK(j["truncation"]["gens"] == "f");
  const auto dot = orb.graph.to_dot();
  CHECK(dot.find("digraph crystal {") == 0);
  CHECK(dot.find("label=\"f1\"") != std::string::npos);
}
