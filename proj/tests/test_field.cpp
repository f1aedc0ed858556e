#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "symsum/errors.hpp"
#include "symsum/field.hpp"

using symsum::errc;
using symsum::Error;
using symsum::Field;
using symsum::LinearMap;

namespace {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<symsum::FieldElement> elems(std::initializer_list<std::uint32_t> indices) {
  std::vector<symsum::FieldElement> out;
  for (auto i : indices) out.push_back({i});
  return out;
}

}  // namespace

TEST_CASE("default moduli are the first irreducibles in index order") {
  CHECK(Field::make(2, 2).modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(Field::make(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(Field::make(2, 3).modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
}

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_MATCHES(Field::make(4, 1), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::not_prime; }));
  CHECK_THROWS_MATCHES(Field::make(1, 1), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::not_prime; }));
  CHECK_THROWS_MATCHES(Field::make(2, 17), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::too_large; }));
  CHECK_THROWS_MATCHES(Field::make(2, 0), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::validation; }));
  // x^2 + 1 = (x + 1)^2 over F_2
  CHECK_THROWS_MATCHES(Field::make(2, 2, {1, 0, 1}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::reducible; }));
  // wrong length
  CHECK_THROWS_AS(Field::make(2, 2, {1, 1}), Error);
  // not monic
  CHECK_THROWS_AS(Field::make(2, 2, {1, 1, 0}), Error);
  // coefficient out of range
  CHECK_THROWS_AS(Field::make(2, 2, {2, 1, 1}), Error);
}

TEST_CASE("index round trip and element bounds") {
  auto f = Field::make(3, 2);
  REQUIRE(f.q() == 9);
  for (std::uint32_t i = 0; i < f.q(); ++i) CHECK(f.element(i).index == i);
  CHECK_THROWS_AS(f.element(9), Error);
  CHECK(f.zero().index == 0);
  CHECK(f.one().index == 1);
  CHECK(f.from_subfield(2).index == 2);
  // prime-subfield embeddings reduce their argument mod p
  CHECK(f.from_subfield(3) == f.zero());
  CHECK(f.from_subfield(7).index == 1);
}

TEST_CASE("small field multiplication values") {
  auto f4 = Field::make(2, 2);
  // alpha^2 = alpha + 1 with modulus x^2 + x + 1
  CHECK(f4.mul(f4.element(2), f4.element(2)).index == 3);
  CHECK(f4.mul(f4.element(2), f4.element(3)).index == 1);

  auto f9 = Field::make(3, 2);
  // alpha^2 = -1 = 2 with modulus x^2 + 1
  CHECK(f9.mul(f9.element(3), f9.element(3)).index == 2);
}

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (auto [p, r] : {std::pair<std::uint32_t, std::uint32_t>{2, 1},
                      {2, 2},
                      {2, 3},
                      {3, 1},
                      {3, 2},
                      {5, 1},
                      {2, 4}}) {
    auto f = Field::make(p, r);
    const auto q = f.q();
    for (std::uint32_t i = 0; i < q; ++i) {
      auto a = f.element(i);
      CHECK(f.add(a, f.zero()) == a);
      CHECK(f.mul(a, f.one()) == a);
      CHECK(f.add(a, f.neg(a)) == f.zero());
      CHECK(f.sub(a, a) == f.zero());
      if (i != 0) CHECK(f.mul(a, f.inv(a)) == f.one());
      for (std::uint32_t j = 0; j < q; ++j) {
        auto b = f.element(j);
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (std::uint32_t k = 0; k < q; k += 3) {
          auto c = f.element(k);
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
    CHECK_THROWS_MATCHES(f.inv(f.zero()), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == errc::division_by_zero;
                         }));
  }
}

TEST_CASE("unit group order: a^(q-1) = 1 for every nonzero a, q <= 512") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
    for (std::uint32_t r = 1;; ++r) {
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < r; ++i) q *= p;
      if (q > 512) break;
      auto f = Field::make(p, r);
      for (std::uint32_t a = 1; a < f.q(); ++a)
        CHECK(f.pow(f.element(a), f.q() - 1) == f.one());
      CHECK(f.pow(f.zero(), 0) == f.one());
    }
  }
  for (std::uint32_t p = 29; p <= 509; ++p) {
    if (!is_prime_u32(p)) continue;
    auto f = Field::make(p, 1);
    for (std::uint32_t a = 1; a < f.q(); ++a)
      CHECK(f.pow(f.element(a), f.q() - 1) == f.one());
  }
}

TEST_CASE("trace lands in the prime subfield, onto with equal fibers") {
  auto f4 = Field::make(2, 2);
  CHECK(f4.trace_int(f4.element(0)) == 0);
  CHECK(f4.trace_int(f4.element(1)) == 0);
  CHECK(f4.trace_int(f4.element(2)) == 1);
  CHECK(f4.trace_int(f4.element(3)) == 1);

  for (auto [p, r] : {std::pair<std::uint32_t, std::uint32_t>{2, 2},
                      {2, 3},
                      {2, 4},
                      {3, 2},
                      {3, 3},
                      {5, 2}}) {
    auto f = Field::make(p, r);
    std::vector<std::uint64_t> fiber(p, 0);
    for (std::uint32_t a = 0; a < f.q(); ++a) {
      auto t = f.trace_int(f.element(a));
      REQUIRE(t < p);
      ++fiber[t];
      // additivity of the trace
      for (std::uint32_t b = 0; b < f.q(); b += 3) {
        auto s = f.add(f.element(a), f.element(b));
        CHECK((f.trace_int(f.element(a)) + f.trace_int(f.element(b))) % p == f.trace_int(s));
      }
    }
    for (std::uint32_t t = 0; t < p; ++t) CHECK(fiber[t] == f.q() / p);
  }

  auto f5 = Field::make(5, 1);
  for (std::uint32_t a = 0; a < 5; ++a) CHECK(f5.trace_int(f5.element(a)) == a);
}

TEST_CASE("linear maps validate against the full addition table") {
  auto f = Field::make(2, 2);

  auto id = LinearMap::identity(f);
  CHECK(id(f.element(3)) == f.element(3));
  CHECK(id.name() == "id");

  auto tr = LinearMap::trace(f);
  CHECK(tr.name() == "trace");
  CHECK(tr(f.element(2)) == f.one());
  CHECK(tr(f.element(1)) == f.zero());

  // L(0) != 0 breaks additivity at (0, 0)
  CHECK_THROWS_MATCHES(LinearMap::from_table(f, elems({1, 0, 0, 0})), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::not_additive; }));
  CHECK_THROWS_MATCHES(LinearMap::from_table(f, elems({0, 1, 0, 0})), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::not_additive; }));
  CHECK_THROWS_AS(LinearMap::from_table(f, elems({0, 1, 2})), Error);
  CHECK_THROWS_AS(LinearMap::from_table(f, elems({0, 1, 2, 4})), Error);

  // x -> alpha * x is additive and homogeneous
  std::vector<symsum::FieldElement> scale(4);
  for (std::uint32_t i = 0; i < 4; ++i) scale[i] = f.mul(f.element(2), f.element(i));
  auto L = LinearMap::from_table(f, scale, "mul_alpha");
  CHECK(L.name() == "mul_alpha");
  for (std::uint32_t i = 0; i < 4; ++i) CHECK(L(f.element(i)) == scale[i]);

  // every admissible table over F_4 is one of the 16 additive ones
  std::uint32_t admissible = 0;
  for (std::uint32_t t1 = 0; t1 < 4; ++t1)
    for (std::uint32_t t2 = 0; t2 < 4; ++t2)
      for (std::uint32_t t3 = 0; t3 < 4; ++t3) {
        try {
          LinearMap::from_table(f, elems({0, t1, t2, t3}));
          ++admissible;
        } catch (const Error&) {
        }
      }
  CHECK(admissible == 16);
}

TEST_CASE("field equality keys on parameters and modulus") {
  auto a = Field::make(2, 2);
  auto b = Field::make(2, 2);
  auto c = Field::make(3, 2);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  auto d = Field::make(3, 2, {2, 1, 1});
  CHECK_FALSE(c == d);
}
