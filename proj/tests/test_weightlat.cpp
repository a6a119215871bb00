#include <catch2/catch_amalgamated.hpp>

#include "pathcrystal/weight.hpp"

#include <random>

using namespace pathcrystal;

TEST_CASE("cartan matrix of affine type A") {
  CartanData cd1(1);
  CHECK(cd1.cartan(0, 0) == 2);
  CHECK(cd1.cartan(0, 1) == -2);
  CHECK(cd1.cartan(1, 0) == -2);
  CHECK(cd1.cartan(1, 1) == 2);

  CartanData cd2(2);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      CHECK(cd2.cartan(i, j) == (i == j ? 2 : -1));

  CartanData cd3(3);
  CHECK(cd3.cartan(0, 3) == -1);  // cyclic neighbour
  CHECK(cd3.cartan(0, 2) == 0);
}

TEST_CASE("cyclic index arithmetic") {
  CyclicIndex i(3, -1);
  CHECK(i.value == 2);
  CHECK((i + 1).value == 0);
  CHECK((i - 5).value == 0);
  CHECK_THROWS_AS(CyclicIndex(1, 0), std::invalid_argument);
}

TEST_CASE("pairing reads the Lambda coordinate") {
  CartanData cd(2);
  CHECK(pair(cd, 0, cd.delta()) == 0);
  CHECK(pair(cd, 1, cd.fundamental(1)) == 1);
  CHECK(pair(cd, 1, cd.fundamental(0) - cd.fundamental(1)) == -1);
}

TEST_CASE("simple roots against the Cartan matrix") {
  {
    CartanData cd(2);
    Weight want(2);
    want.lam = {Rat(-1), Rat(2), Rat(-1)};
    CHECK(simple_root(cd, 1) == want);
  }
  {
    CartanData cd(1);
    Weight want(1);
    want.lam = {Rat(2), Rat(-2)};
    want.dlt = 1;
    CHECK(simple_root(cd, 0) == want);
  }
  for (int ell = 1; ell <= 6; ++ell) {
    CartanData cd(ell);
    for (int i = 0; i <= ell; ++i)
      for (int j = 0; j <= ell; ++j)
        CHECK(pair(cd, i, simple_root(cd, j)) == cd.cartan(i, j));
    Weight total(ell);
    for (int i = 0; i <= ell; ++i) total += simple_root(cd, i);
    CHECK(total == cd.delta());
  }
}

TEST_CASE("reflections") {
  CartanData cd(2);
  CHECK(reflect(cd, 1, cd.delta()) == cd.delta());
  Weight expect = cd.fundamental(0) - cd.fundamental(1) + cd.fundamental(2);
  CHECK(reflect(cd, 1, cd.fundamental(1)) == expect);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int ell = 1 + static_cast<int>(rng() % 4);
    CartanData cdr(ell);
    Weight w(ell);
    for (auto& c : w.lam) c = Rat(static_cast<long>(rng() % 11) - 5, 1 + rng() % 3);
    w.dlt = Rat(static_cast<long>(rng() % 7) - 3);
    for (int i = 0; i <= ell; ++i) CHECK(reflect(cdr, i, reflect(cdr, i, w)) == w);
  }
}

TEST_CASE("weight to tuple solving") {
  CartanData cd(1);
  CHECK(weight_to_tuple(cd, cd.zero(), 2) == std::vector<long>{1, 1});

  Weight two01 = cd.fundamental(1) - cd.fundamental(0);
  two01 *= Rat(2);
  CHECK(weight_to_tuple(cd, two01, 2) == std::vector<long>{2, 0});

  CHECK(!weight_to_tuple(cd, cd.fundamental(1) - cd.fundamental(0), 2).has_value());
  CHECK_THROWS_AS(weight_to_tuple(cd, cd.delta(), 2), std::invalid_argument);
}

TEST_CASE("tuple round trip") {
  for (int ell = 1; ell <= 3; ++ell) {
    CartanData cd(ell);
    for (long m = 1; m <= 6; ++m) {
      std::vector<long> k(ell + 1, 0);
      // iterate all tuples summing to m
      auto rec = [&](auto&& self, int pos, long left) -> void {
        if (pos == ell) {
          k[pos] = left;
          CHECK(weight_to_tuple(cd, tuple_to_weight(cd, k), m) == k);
          return;
        }
        for (long v = 0; v <= left; ++v) {
          k[pos] = v;
          self(self, pos + 1, left - v);
        }
      };
      rec(rec, 0, m);
    }
  }
}

TEST_CASE("weight json round trip") {
  CartanData cd(2);
  Weight w = cd.fundamental(0);
  w.lam[1] = Rat(3, 2);
  w.dlt = Rat(-7, 3);
  const auto j = weight_to_json(w);
  CHECK(j["lam"][1] == "3/2");
  CHECK(j["lam"][0] == 1);
  CHECK(j["dlt"] == "-7/3");
  CHECK(weight_from_json(j) == w);

  CHECK(w.is_lattice() == false);
  CHECK(cd.fundamental(0).is_lattice());
}
