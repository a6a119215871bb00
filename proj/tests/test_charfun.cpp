#include <catch2/catch_amalgamated.hpp>

#include "pathcrystal/charfun.hpp"
#include "pathcrystal/qpoly.hpp"

using namespace pathcrystal;

namespace {
QPoly make_poly(std::vector<long> cs) {
  std::vector<Int> v(cs.begin(), cs.end());
  return QPoly(std::move(v));
}
}  // namespace

TEST_CASE("number theory basics") {
  CHECK(euler_phi(1) == 1);
  CHECK(moebius(1) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(6) == 1);
  CHECK(moebius(30) == -1);
  CHECK(euler_phi(12) == 4);
  CHECK(divisors(12) == std::vector<long>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("twisted Euler function phi_r") {
  for (long d = 1; d <= 30; ++d) CHECK(phi_r(d, 0) == euler_phi(d));
  CHECK(phi_r(2, 1) == -1);
  for (long r = -5; r <= 5; ++r) CHECK(phi_r(1, r) == 1);
  CHECK(phi_r(4, 2) == -2);  // phi(4) mu(2) / phi(2)
  CHECK(phi_r(4, 1) == 0);   // mu(4) = 0
  CHECK(phi_r(6, -2) == -1);  // gcd(6,-2)=2: phi(6) mu(3) / phi(3)
  CHECK(phi_r(6, 2) == phi_r(6, -2));
}

TEST_CASE("q-integers and q-multinomials") {
  CHECK(q_int(3) == make_poly({1, 1, 1}));
  CHECK(q_int(3, 2) == make_poly({1, 0, 1, 0, 1}));
  CHECK(q_multinomial(2, {1, 1}) == make_poly({1, 1}));
  CHECK(q_multinomial(4, {2, 2}) == make_poly({1, 1, 2, 1, 1}));
  CHECK(q_multinomial(3, {1, 1}).is_zero());
  CHECK(q_multinomial(0, {0, 0}) == QPoly::constant(Int(1)));
  // evaluation at q = 1 gives the plain multinomial
  for (long m = 0; m <= 6; ++m)
    for (const auto& t : enumerate_tuples(3, m))
      CHECK(poly_eval(q_multinomial(m, t), Int(1)) == multinomial(m, t));
  CHECK(multinomial(4, {2, 2}) == 6);
  CHECK(multinomial(4, {2, 1}) == 0);
}

TEST_CASE("reduction modulo q^m - 1") {
  CHECK(reduce_mod_qm1(q_multinomial(4, {2, 2}), 4) == make_poly({2, 1, 2, 1}));
  CHECK(reduce_mod_qm1(make_poly({1, 1}), 2) == make_poly({1, 1}));
  for (long m = 1; m <= 5; ++m)
    for (const auto& t : enumerate_tuples(2, m)) {
      const auto p = q_multinomial(m, t);
      CHECK(poly_eval(reduce_mod_qm1(p, m), Int(1)) == poly_eval(p, Int(1)));
    }
}

TEST_CASE("counting words by residue") {
  const CartanData cd1(1);
  CHECK(count_by_residue(cd1, 2, {1, 1}) == std::vector<Int>{1, 1});
  CHECK(count_by_residue(cd1, 4, {2, 2}) == std::vector<Int>{2, 1, 2, 1});
  for (long m = 1; m <= 6; ++m)
    for (const auto& t : enumerate_tuples(2, m)) {
      Int sum = 0;
      for (const auto& c : count_by_residue(cd1, m, t)) sum += c;
      CHECK(sum == multinomial(m, t));
    }

  CHECK(closed_count(cd1, 2, {1, 1}, 0) == 1);
  CHECK(closed_count(cd1, 4, {2, 2}, 0) == 2);
  CHECK(closed_count(cd1, 2, {2, 0}, 1) == 0);

  // the three routes agree everywhere at small scale
  for (int ell = 1; ell <= 2; ++ell) {
    const CartanData cd(ell);
    for (long m = 1; m <= 4; ++m)
      for (const auto& t : enumerate_tuples(ell + 1, m))
        for (long s = 0; s < m; ++s) {
          const Int closed = closed_count(cd, m, t, s);
          CHECK(closed == count_words_with_residue(cd, m, t, s));
          CHECK(closed == brute_count_with_residue(cd, m, t, s));
        }
  }
}

TEST_CASE("the Moebius companion function") {
  const CartanData cd(1);
  CHECK(c_tilde(cd, 2, {1, 1}, 1) == Rat(1));
  CHECK(c_tilde(cd, 3, {3, 0}, 3) == Rat(1));
  CHECK_THROWS_AS(c_tilde(cd, 4, {2, 2}, 3), std::invalid_argument);

  // resummation against the closed counts, small scale
  for (long m = 1; m <= 5; ++m)
    for (const auto& t : enumerate_tuples(2, m)) {
      std::vector<Rat> lhs(m, Rat(0));
      for (long n = 0; n < m; ++n)
        lhs[n] = Rat(closed_count(cd, m, t, residue_mod(-n, m)));
      QPolyRat rhs;
      for (long d : divisors(m))
        rhs = rhs + scale(to_rational(q_int(m / d, d)), c_tilde(cd, m, t, d));
      CHECK(QPolyRat(lhs) == rhs);
    }
}

TEST_CASE("cyclotomic polynomials and projections") {
  CHECK(cyclotomic(1) == make_poly({-1, 1}));
  CHECK(cyclotomic(2) == make_poly({1, 1}));
  CHECK(cyclotomic(6) == make_poly({1, -1, 1}));
  CHECK(cyclotomic(12) == make_poly({1, 0, -1, 0, 1}));

  for (long m = 1; m <= 12; ++m) {
    QPoly prod = QPoly::constant(Int(1));
    for (long d : divisors(m)) prod = prod * cyclotomic(d);
    CHECK(prod == QPoly::monomial(m) - QPoly::constant(Int(1)));
  }

  CHECK(project_cyclotomic(q_multinomial(4, {2, 2}), 2) ==
        QPolyRat::constant(Rat(2)));
  // remainder degree is bounded by deg Phi_d
  const auto r = project_cyclotomic(q_factorial(6), 4);
  CHECK(r.degree() < cyclotomic(4).degree());
}

TEST_CASE("component character windows") {
  const CartanData cd(1);
  const auto win = component_character(cd, 2, 0, -2, 2);
  CHECK(win.entries.size() == 3 * 5);  // tuples (0,2),(1,1),(2,0) x five z
  for (const auto& e : win.entries) {
    if (e.tuple == std::vector<long>{1, 1}) CHECK(e.count == 1);
    if (e.tuple == std::vector<long>{2, 0})
      CHECK(e.count == (e.z % 2 == 0 ? 1 : 0));
  }
  Int total = 0;
  for (const auto& e : win.entries) total += e.count;
  CHECK(total == Int(enumerate_component(cd, 2, 0, -2, 2).size()));

  const auto j = win.to_json();
  CHECK(j["component"] == 0);
  CHECK(j["window"] == nlohmann::json::array({-2, 2}));
  CHECK(j["entries"].size() == 15);

  const auto text = character_table_text(win);
  CHECK(text.find("z=-2") != std::string::npos);
  CHECK(text.find("(1,1)") != std::string::npos);

  CHECK_THROWS_AS(component_character(cd, 2, 2, 0, 0), std::invalid_argument);
}
