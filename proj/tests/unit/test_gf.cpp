#include <doctest.h>

#include <map>
#include <set>

#include "fqdist/gf.hpp"
#include "fqdist/rng.hpp"

using namespace fqdist;

namespace {

FieldSpec f3() { return FieldSpec::build(3, 1); }
FieldSpec f9() { return FieldSpec::build(3, 2); }

std::vector<FieldSpec> test_fields() {
  std::vector<FieldSpec> out;
  out.push_back(FieldSpec::build(3, 1));
  out.push_back(FieldSpec::build(5, 1));
  out.push_back(FieldSpec::build(7, 1));
  out.push_back(FieldSpec::build(3, 2));   // F_9
  out.push_back(FieldSpec::build(13, 1));
  out.push_back(FieldSpec::build(5, 2));   // F_25
  out.push_back(FieldSpec::build(3, 3));   // F_27
  return out;
}

// Oracle: the set of squares by exhaustive squaring.
std::set<elem_t> square_set(const FieldSpec& f) {
  std::set<elem_t> squares;
  for (elem_t a = 0; a < f.q(); ++a) squares.insert(f.mul(a, a));
  return squares;
}

}  // namespace

TEST_SUITE("gf") {

TEST_CASE("prime field build") {
  const FieldSpec f = f3();
  CHECK(f.p() == 3);
  CHECK(f.ext_degree() == 1);
  CHECK(f.q() == 3);
  CHECK(f.modulus() == std::vector<std::uint32_t>{0, 1});  // x
}

TEST_CASE("F9 modulus matches the exhaustive irreducibility oracle") {
  // Oracle: enumerate monic quadratics x^2 + b x + c over F_3 in integer
  // order (c + 3b) and take the first with no root.
  std::vector<std::uint32_t> expected;
  for (std::uint32_t m = 0; m < 9 && expected.empty(); ++m) {
    const std::uint32_t c = m % 3, b = m / 3;
    bool has_root = false;
    for (std::uint32_t x = 0; x < 3; ++x)
      if ((x * x + b * x + c) % 3 == 0) has_root = true;
    if (!has_root) expected = {c, b, 1};
  }
  CHECK(expected == std::vector<std::uint32_t>{1, 0, 1});  // x^2 + 1
  CHECK(f9().modulus() == expected);
}

TEST_CASE("build rejects bad parameters") {
  CHECK_THROWS_AS(FieldSpec::build(4, 1), construction_error);
  CHECK_THROWS_AS(FieldSpec::build(2, 1), construction_error);
  CHECK_THROWS_AS(FieldSpec::build(1, 1), construction_error);
  CHECK_THROWS_AS(FieldSpec::build(9, 1), construction_error);
  CHECK_THROWS_AS(FieldSpec::build(3, 0), construction_error);
  CHECK_THROWS_AS(FieldSpec::build(3, 13), cap_error);  // 3^13 > 2^20
}

TEST_CASE("F3 arithmetic basics") {
  const FieldSpec f = f3();
  CHECK(f.add(2, 2) == 1);
  CHECK(f.inv(2) == 2);  // 2*2 = 4 = 1
  CHECK_THROWS_AS(f.inv(0), arithmetic_error);
  CHECK_THROWS_AS(f.div(1, 0), arithmetic_error);
}

TEST_CASE("field axioms on randomized triples") {
  for (const FieldSpec& f : test_fields()) {
    Rng rng(derive_seed(42, f.q()));
    for (int trial = 0; trial < 200; ++trial) {
      const elem_t a = static_cast<elem_t>(rng.below(f.q()));
      const elem_t b = static_cast<elem_t>(rng.below(f.q()));
      const elem_t c = static_cast<elem_t>(rng.below(f.q()));
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.add(a, f.neg(a)) == 0);
      CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    }
  }
}

TEST_CASE("identity times inverse over every element") {
  for (const FieldSpec& f : test_fields())
    for (elem_t a = 1; a < f.q(); ++a) CHECK(f.mul(a, f.inv(a)) == 1);
}

TEST_CASE("quadratic character agrees with square enumeration") {
  for (const FieldSpec& f : test_fields()) {
    const std::set<elem_t> squares = square_set(f);
    std::uint32_t plus = 0;
    for (elem_t a = 0; a < f.q(); ++a) {
      const int chi = f.legendre(a);
      if (a == 0) {
        CHECK(chi == 0);
      } else if (squares.count(a)) {
        CHECK(chi == 1);
      } else {
        CHECK(chi == -1);
      }
      if (chi == 1) ++plus;
    }
    CHECK(plus == (f.q() - 1) / 2);
  }
}

TEST_CASE("quadratic character examples and multiplicativity") {
  const FieldSpec f = f3();
  CHECK(f.legendre(0) == 0);
  CHECK(f.legendre(1) == 1);
  CHECK(f.legendre(2) == -1);
  for (const FieldSpec& field : test_fields())
    for (elem_t a = 1; a < field.q(); ++a)
      for (elem_t b = 1; b < field.q(); ++b)
        CHECK(field.legendre(field.mul(a, b)) == field.legendre(a) * field.legendre(b));
}

TEST_CASE("absolute trace") {
  const FieldSpec f = f3();
  for (elem_t a = 0; a < 3; ++a) CHECK(f.absolute_trace(a) == a);  // identity on F_p

  const FieldSpec ext = f9();
  CHECK(ext.absolute_trace(0) == 0);
  std::map<std::uint32_t, int> counts;
  for (elem_t a = 0; a < ext.q(); ++a) ++counts[ext.absolute_trace(a)];
  for (std::uint32_t r = 0; r < 3; ++r) CHECK(counts[r] == 3);  // balanced

  for (const FieldSpec& field : {f9(), FieldSpec::build(3, 3)}) {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      const elem_t a = static_cast<elem_t>(rng.below(field.q()));
      const elem_t b = static_cast<elem_t>(rng.below(field.q()));
      CHECK(field.absolute_trace(field.add(a, b)) ==
            (field.absolute_trace(a) + field.absolute_trace(b)) % field.p());
      // F_p-linearity: Tr(c a) = c Tr(a) for c in the prime subfield
      const elem_t c = static_cast<elem_t>(rng.below(field.p()));
      CHECK(field.absolute_trace(field.mul(c, a)) ==
            (c * field.absolute_trace(a)) % field.p());
    }
  }
}

TEST_CASE("norm form") {
  const FieldSpec f = f3();
  CHECK(norm_form(f, {0, 0}) == 0);
  CHECK(norm_form(f, {1, 0}) == 1);
  CHECK(norm_form(f, {2, 2}) == 2);  // 4 + 4 = 8 = 2

  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Point x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = static_cast<elem_t>(rng.below(3));
      y[i] = static_cast<elem_t>(rng.below(3));
    }
    Point xy(3), yx(3);
    for (int i = 0; i < 3; ++i) {
      xy[i] = f.sub(x[i], y[i]);
      yx[i] = f.sub(y[i], x[i]);
    }
    CHECK(norm_form(f, xy) == norm_form(f, yx));
  }
}

TEST_CASE("tail coefficient selection") {
  CHECK(select_tail_coeff(f3(), 3) == 2);                       // d=3, q=3: character -1
  CHECK(select_tail_coeff(f3(), 5) == 1);                       // d=5: character +1
  CHECK(f3().legendre(select_tail_coeff(f3(), 3)) == -1);
  const FieldSpec f5 = FieldSpec::build(5, 1);
  CHECK(f5.legendre(select_tail_coeff(f5, 3)) == 1);            // q = 1 mod 4
  const FieldSpec f7 = FieldSpec::build(7, 1);
  CHECK(f7.legendre(select_tail_coeff(f7, 3)) == -1);           // d = q = 3 mod 4
  CHECK_THROWS_AS(select_tail_coeff(f3(), 4), usage_error);
}

TEST_CASE("alternating diagonal form") {
  const FieldSpec f = f3();
  const elem_t mu = select_tail_coeff(f, 3);
  CHECK(mu == 2);
  CHECK(quadratic_form(f, {0, 0, 0}, mu) == 0);
  CHECK(quadratic_form(f, {1, 1, 0}, mu) == 0);  // 1 - 1 + 0
  CHECK(quadratic_form(f, {0, 0, 1}, mu) == 2);
  CHECK_THROWS_AS(quadratic_form(f, {1, 1}, mu), usage_error);
}

TEST_CASE("value distribution of the norm on F_3^2") {
  const FieldSpec f = f3();
  const auto hist =
      form_value_distribution(f, 2, [&](const Point& x) { return norm_form(f, x); });
  CHECK(hist.at(0) == 1);
  CHECK(hist.at(1) == 4);
  CHECK(hist.at(2) == 4);
  std::uint64_t total = 0;
  for (const auto& [value, count] : hist) total += count;
  CHECK(total == 9);
}

TEST_CASE("alternating form is equidistributed with the norm") {
  for (std::uint32_t q : {3u, 7u}) {
    const FieldSpec f = FieldSpec::build(q, 1);
    const elem_t mu = select_tail_coeff(f, 3);
    const auto h_norm =
        form_value_distribution(f, 3, [&](const Point& x) { return norm_form(f, x); });
    const auto h_q =
        form_value_distribution(f, 3, [&](const Point& x) { return quadratic_form(f, x, mu); });
    CHECK(h_norm == h_q);
  }
}

TEST_CASE("distribution cap") {
  Caps caps;
  caps.max_enum_points = 8;
  const FieldSpec f = f3();
  CHECK_THROWS_AS(
      form_value_distribution(f, 2, [&](const Point& x) { return norm_form(f, x); }, caps),
      cap_error);
}

}  // TEST_SUITE
