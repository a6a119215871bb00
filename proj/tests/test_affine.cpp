#include <catch2/catch_amalgamated.hpp>

#include "pathcrystal/affine.hpp"
#include "pathcrystal/charfun.hpp"

#include <map>
#include <set>

using namespace pathcrystal;

TEST_CASE("affine operators shift z on index 0") {
  AffineCrystal ac(1, 2);
  CHECK(ac.e(0, {{0, 1}, 0}) == AffineElement{{1, 1}, 1});
  CHECK(ac.f(1, {{0, 0}, 5}) == AffineElement{{1, 0}, 5});

  for (const auto& w : enumerate_words(ac.cd(), 2))
    for (long z = -2; z <= 2; ++z)
      for (int i = 0; i <= 1; ++i) {
        const AffineElement x{w, z};
        if (auto up = ac.e(i, x)) {
          const auto back = ac.f(i, *up);
          REQUIRE(back.has_value());
          CHECK(*back == x);
        }
        CHECK(ac.eps(i, x) == ac.words.eps(i, w));
      }
}

TEST_CASE("affine weights carry the z grading") {
  AffineCrystal ac(2, 3);
  const AffineElement x{{0, 1, 2}, -4};
  Weight w = ac.words.wt(x.word);
  w.dlt += -4;
  CHECK(ac.wt(x) == w);
  // C2 with the genuine affine simple root, delta part included
  for (int i = 0; i <= 2; ++i)
    if (auto up = ac.e(i, x)) CHECK(ac.wt(*up) == ac.wt(x) + simple_root(ac.cd(), i));
}

TEST_CASE("component residue") {
  for (long m = 1; m <= 4; ++m) {
    AffineCrystal ac(1, m);
    for (long n = -5; n <= 5; ++n)
      CHECK(component_of(ac.source(n)) == ((n % m) + m) % m);
  }
  CHECK(component_of({{0, 1}, 0}) == 1);  // N = 3, m = 2

  // stability under the operators
  for (int ell = 1; ell <= 2; ++ell)
    for (long m = 1; m <= 3; ++m) {
      AffineCrystal ac(ell, m);
      for (const auto& w : enumerate_words(ac.cd(), m))
        for (long z = -2; z <= 2; ++z) {
          const AffineElement x{w, z};
          for (int i = 0; i <= ell; ++i) {
            if (auto up = ac.e(i, x)) CHECK(component_of(*up) == component_of(x));
            if (auto dn = ac.f(i, x)) CHECK(component_of(*dn) == component_of(x));
          }
        }
    }
}

TEST_CASE("component enumeration") {
  const CartanData cd(1);
  const auto comp0 = enumerate_component(cd, 2, 0, 0, 0);
  std::set<std::pair<Word, long>> got;
  for (const auto& x : comp0) got.insert({x.word, x.z});
  CHECK(got == std::set<std::pair<Word, long>>{{{0, 0}, 0}, {{1, 0}, 0}, {{1, 1}, 0}});

  CHECK(enumerate_component(cd, 2, 0, 0, -1).empty());

  // residue classes partition each window slice
  for (int ell = 1; ell <= 2; ++ell)
    for (long m = 1; m <= 3; ++m) {
      const CartanData cdr(ell);
      std::size_t total = 0;
      std::set<std::string> seen;
      for (long n = 0; n < m; ++n)
        for (const auto& x : enumerate_component(cdr, m, n, -2, 2)) {
          total += 1;
          CHECK(seen.insert(affine_to_json(x).dump()).second);
          CHECK(component_of(x) == n);
        }
      const std::size_t words = enumerate_words(cdr, m).size();
      CHECK(total == words * 5);
    }

  // counts per (classical weight, z) match the character window
  const auto win = component_character(cd, 2, 0, -1, 1);
  std::map<std::pair<std::vector<long>, long>, long> hist;
  for (const auto& x : enumerate_component(cd, 2, 0, -1, 1))
    ++hist[{word_tuple(cd, x.word), x.z}];
  for (const auto& e : win.entries) {
    const long brute = hist.count({e.tuple, e.z}) ? hist[{e.tuple, e.z}] : 0;
    CHECK(Int(brute) == e.count);
  }

  CHECK_THROWS_AS(enumerate_component(cd, 2, 2, 0, 0), std::invalid_argument);
}

TEST_CASE("affine elements serialize") {
  const AffineElement x{{0, 1}, -3};
  const auto j = affine_to_json(x);
  CHECK(j["word"] == nlohmann::json::array({0, 1}));
  CHECK(j["z"] == -3);
}
