#include <doctest.h>

#include <random>

#include "nonlift/error.hpp"
#include "nonlift/finite_geometry.hpp"
#include "nonlift/motive.hpp"
#include "oracles.hpp"

using namespace nonlift;
using namespace nonlift::motive;

namespace {

LPolynomial poly(const std::vector<long long>& c) {
  std::vector<Integer> v(c.begin(), c.end());
  return LPolynomial(v);
}

std::vector<VarietyClass> builtins() {
  std::vector<VarietyClass> out;
  for (int n = 0; n <= 4; ++n) out.push_back(projective_space_class(n));
  for (int d = 1; d <= 6; ++d) out.push_back(quadric_class(d));
  for (int m = 2; m <= 6; ++m)
    for (int r = 1; r < m; ++r) out.push_back(grassmannian_class(r, m));
  for (int m = 2; m <= 6; ++m) out.push_back(flag_class_typeA(m));
  out.push_back(construction_one_class(flag_class_typeA(3)));
  out.push_back(construction_one_class(quadric_class(3)));
  out.push_back(construction_one_class(projective_space_class(2), Center::Diagonal));
  for (int p : {2, 3, 5, 7}) out.push_back(construction_two_class(p));
  return out;
}

// Blow-up data (x, z, codim) built only from built-in classes.
std::vector<std::tuple<VarietyClass, VarietyClass, int>> blowup_inputs() {
  std::vector<std::tuple<VarietyClass, VarietyClass, int>> out;
  const auto pt = projective_space_class(0);
  out.emplace_back(projective_space_class(2), pt, 2);
  out.emplace_back(projective_space_class(3), pt, 3);
  out.emplace_back(projective_space_class(3), projective_space_class(1), 2);
  out.emplace_back(quadric_class(4), quadric_class(2), 2);
  out.emplace_back(grassmannian_class(2, 4), projective_space_class(1), 3);
  const auto f3 = flag_class_typeA(3);
  out.emplace_back(product_class(f3, f3), f3, 3);
  out.emplace_back(product_class(quadric_class(3), quadric_class(3)), quadric_class(3), 3);
  return out;
}

}  // namespace

TEST_CASE("LPolynomial basics") {
  CHECK(poly({1, 2, 0, 0}).degree() == 1);
  CHECK(poly({0, 0}).is_zero());
  CHECK(LPolynomial().degree() == -1);
  CHECK(LPolynomial::geometric(1, 3) == poly({0, 1, 1, 1}));
  CHECK(LPolynomial::geometric(2, 1).is_zero());
  CHECK(LPolynomial::monomial(2, 5) == poly({0, 0, 5}));
  CHECK(poly({1, 5, 11}).to_string() == "1 + 5L + 11L^2");
  CHECK(LPolynomial().to_string() == "0");
  CHECK(poly({1, 1, 1, 1}).evaluate(2) == 15);
  CHECK((poly({1, 1}) * poly({1, 1, 1})) == poly({1, 2, 2, 1}));
  CHECK((poly({1, 1}) - poly({1, 1})).is_zero());
}

TEST_CASE("LPolynomial ring laws on random samples") {
  std::mt19937 rng(20261015);
  std::uniform_int_distribution<long long> coeff(-1000, 1000);
  std::uniform_int_distribution<int> len(0, 6);
  auto random_poly = [&] {
    std::vector<long long> c(len(rng));
    for (auto& x : c) x = coeff(rng);
    return poly(c);
  };
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_poly(), b = random_poly(), c = random_poly();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    if (!a.is_zero() && !b.is_zero()) CHECK((a * b).degree() == a.degree() + b.degree());
    for (long long q : {-3, 0, 2, 7}) {
      CHECK((a * b).evaluate(q) == a.evaluate(q) * b.evaluate(q));
      CHECK((a + b).evaluate(q) == a.evaluate(q) + b.evaluate(q));
    }
  }
}

TEST_CASE("evaluation is exact beyond 64 bits") {
  const auto p = LPolynomial::monomial(30, 1) + poly({1});
  CHECK(p.evaluate(13).str() == "2619995643649944960380551432833050");
}

TEST_CASE("projective spaces") {
  CHECK(projective_space_class(3).cls == poly({1, 1, 1, 1}));
  CHECK(projective_space_class(0).cls == poly({1}));
  CHECK(projective_space_class(3).cls.evaluate(2) == 15);
  CHECK_THROWS_AS(projective_space_class(-1), Error);
}

TEST_CASE("quadrics match brute-force point counts") {
  CHECK(quadric_class(3).cls == poly({1, 1, 1, 1}));
  CHECK(quadric_class(2).cls == poly({1, 2, 1}));
  CHECK(quadric_class(1).cls == poly({1, 1}));
  CHECK(oracle::quadric_count(3, 2) == 15);
  for (int d = 1; d <= 4; ++d) {
    for (long long q : {2, 3, 5}) {
      if (d == 4 && q == 5) continue;
      CAPTURE(d);
      CAPTURE(q);
      CHECK(quadric_class(d).cls.evaluate(q) == oracle::quadric_count(d, q));
    }
  }
}

TEST_CASE("Grassmannians") {
  CHECK(grassmannian_class(2, 4).cls == poly({1, 1, 2, 1, 1}));
  CHECK(grassmannian_class(2, 4).dim == 4);
  for (int m = 2; m <= 6; ++m) CHECK(grassmannian_class(1, m).cls == projective_space_class(m - 1).cls);
  for (int m = 2; m <= 6; ++m)
    for (int r = 1; r < m; ++r) CHECK(grassmannian_class(r, m).cls == grassmannian_class(m - r, m).cls);
  for (int p : {2, 3, 5}) {
    CHECK(grassmannian_class(2, 4).cls.evaluate(p) == geom::enumerate_lines(3, geom::Prime(p)).size());
    CHECK(grassmannian_class(2, 3).cls.evaluate(p) == geom::enumerate_lines(2, geom::Prime(p)).size());
  }
  CHECK(grassmannian_class(2, 4).cls.evaluate(3) == 130);
  CHECK_THROWS_AS(grassmannian_class(3, 2), Error);
}

TEST_CASE("full flag varieties") {
  CHECK(flag_class_typeA(2).cls == poly({1, 1}));
  CHECK(flag_class_typeA(3).cls == poly({1, 2, 2, 1}));
  CHECK(flag_class_typeA(3).dim == 3);
  CHECK(flag_class_typeA(3).cls.evaluate(2) == 21);
  CHECK(oracle::flag_incidence_count(2) == 21);
  CHECK(oracle::flag_incidence_count(3) == flag_class_typeA(3).cls.evaluate(3));
  for (int m = 2; m <= 8; ++m) CHECK(flag_class_typeA(m).cls == poly(oracle::q_factorial(m)));
  try {
    flag_class_typeA(9);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
  CHECK_THROWS_AS(flag_class_typeA(1), Error);
}

TEST_CASE("blow-ups") {
  const auto pt = projective_space_class(0);
  CHECK(blowup_class(projective_space_class(2), pt, 2).cls == poly({1, 2, 1}));
  CHECK(blowup_class(projective_space_class(3), pt, 3).cls == poly({1, 2, 2, 1}));
  try {
    blowup_class(projective_space_class(3), pt, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidBlowUp);
  }
  SUBCASE("Euler additivity") {
    for (auto& [x, z, c] : blowup_inputs()) {
      const auto b = blowup_class(x, z, c);
      CHECK(b.dim == x.dim);
      CHECK(b.cls.evaluate(1) == x.cls.evaluate(1) + (c - 1) * z.cls.evaluate(1));
      CHECK(invariants_table(b).euler == invariants_table(x).euler + (c - 1) * invariants_table(z).euler);
    }
  }
}

TEST_CASE("first construction") {
  const auto fl = construction_one_class(flag_class_typeA(3));
  CHECK(fl.cls == poly({1, 5, 11, 14, 11, 5, 1}));
  CHECK(fl.dim == 6);
  CHECK(fl.cls.degree() == 6);
  const auto fl_inv = invariants_table(fl);
  CHECK(fl_inv.picard == 5);
  CHECK(fl_inv.euler == 48);
  CHECK(fl_inv.palindromic);

  const auto q = construction_one_class(quadric_class(3));
  CHECK(q.cls == poly({1, 3, 5, 6, 5, 3, 1}));
  CHECK(q.cls.degree() == 6);
  CHECK(invariants_table(q).picard == 3);

  for (auto& y : {flag_class_typeA(3), quadric_class(3), projective_space_class(2), grassmannian_class(2, 4)}) {
    CHECK(construction_one_class(y, Center::FrobeniusGraph).cls == construction_one_class(y, Center::Diagonal).cls);
  }
  try {
    construction_one_class(projective_space_class(1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Degenerate);
  }
}

TEST_CASE("second construction") {
  CHECK(construction_two_class(2).cls == poly({1, 51, 51, 1}));
  CHECK(construction_two_class(2).cls.evaluate(2) == 315);
  const auto inv = invariants_table(construction_two_class(2));
  CHECK(inv.picard == 51);
  CHECK(inv.betti[2] == 51);
  CHECK(inv.euler == 104);
  for (int p : {2, 3, 5, 7}) {
    const auto& c = construction_two_class(p).cls.coeffs();
    CHECK(std::all_of(c.begin(), c.end(), [](const Integer& x) { return x >= 0; }));
  }
  CHECK_THROWS_AS(construction_two_class(4), Error);
}

TEST_CASE("stratified point-count oracle") {
  const auto two = point_count_oracle_construction_two(2, 2);
  CHECK(two.points_blown_up == 105);
  CHECK(two.total == 315);
  // The intermediate variety is P^3 with its F_p-points replaced by P^2's.
  for (int p : {2, 3}) {
    const auto s = point_count_oracle_construction_two(p, p);
    const Integer n_pts = geom::projective_point_count(3, p);
    const Integer n_planes = geom::projective_point_count(2, p);
    CHECK(s.points_blown_up == n_pts * n_planes);
    CHECK(s.total == construction_two_class(p).cls.evaluate(p));
  }
  try {
    point_count_oracle_construction_two(2, 4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedQuery);
  }
}

TEST_CASE("invariants tables") {
  const auto t = invariants_table(projective_space_class(3));
  CHECK(t.betti == std::vector<Integer>{1, 0, 1, 0, 1, 0, 1});
  REQUIRE(t.hodge.size() == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(t.hodge[i][j] == (i == j ? 1 : 0));
  CHECK(t.picard == 1);
  CHECK(t.euler == 4);

  VarietyClass bad{"bad", 1, poly({1, 1, 1})};
  CHECK_THROWS_AS(invariants_table(bad), Error);
  VarietyClass lopsided{"lopsided", 2, poly({1, 2, 3})};
  const auto lt = invariants_table(lopsided);
  CHECK_FALSE(lt.palindromic);
  CHECK(lt.hdr_sums_equal);
  VarietyClass negative{"negative", 1, poly({1, -1})};
  CHECK_FALSE(invariants_table(negative).nonnegative);
}

TEST_CASE("palindromic, non-negative, HdR sums equal for every built-in class") {
  for (auto& v : builtins()) {
    CAPTURE(v.name);
    const auto t = invariants_table(v);
    CHECK(v.cls.degree() == v.dim);
    CHECK(t.palindromic);
    CHECK(t.nonnegative);
    CHECK(t.hdr_sums_equal);
    Integer betti = 0, hodge = 0;
    for (auto& b : t.betti) betti += b;
    for (auto& row : t.hodge)
      for (auto& h : row) hodge += h;
    CHECK(betti == hodge);
    CHECK(t.euler == v.cls.evaluate(1));
    const auto& c = v.cls.coeffs();
    for (int i = 0; i <= v.dim; ++i) CHECK(c[i] == c[v.dim - i]);
  }
}

TEST_CASE("JSON") {
  CHECK(integer_json(Integer(42)) == 42);
  const Integer limit = (Integer(1) << 53) - 1;
  CHECK(integer_json(limit).is_number());
  CHECK(integer_json(limit + 1) == "9007199254740992");
  CHECK(integer_from_json(nlohmann::json("9007199254740992")) == limit + 1);
  CHECK(integer_json(-limit - 1) == "-9007199254740992");

  const auto v = construction_one_class(flag_class_typeA(3));
  const auto doc = to_json(v);
  CHECK(doc["dim"] == 6);
  CHECK(doc["coeffs"] == nlohmann::json::array({1, 5, 11, 14, 11, 5, 1}));
  CHECK(variety_class_from_json(nlohmann::json::parse(doc.dump())) == v);

  const auto t = invariants_table(v);
  const auto tdoc = to_json(t);
  CHECK(tdoc["picard"] == 5);
  CHECK(tdoc["hdrSumsEqual"] == true);
  CHECK(invariants_table_from_json(nlohmann::json::parse(tdoc.dump())) == t);

  VarietyClass huge{"huge", 0, LPolynomial(std::vector<Integer>{Integer(1) << 70})};
  const auto hdoc = to_json(huge);
  CHECK(hdoc["coeffs"][0].is_string());
  CHECK(variety_class_from_json(hdoc) == huge);
}
