#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "symsum/cyclotomic.hpp"
#include "symsum/errors.hpp"
#include "symsum/field.hpp"
#include "symsum/group_algebra.hpp"
#include "symsum/lambda.hpp"

using namespace symsum;

namespace {

GroupAlgebraElement random_element(const Field& f, std::mt19937_64& rng) {
  GroupAlgebraElement a(f);
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    long num = static_cast<long>(rng() % 7) - 3;
    long den = 1 + static_cast<long>(rng() % 4);
    Rational c(num, den);
    c.canonicalize();
    a.at({i}) = c;
  }
  return a;
}

GroupAlgebraElement random_pgf(const Field& f, std::mt19937_64& rng) {
  GroupAlgebraElement a(f);
  Rational total(0);
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    Rational c(static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
    c.canonicalize();
    a.at({i}) = c;
    total += c;
  }
  if (total == 0) {
    a.at({0}) = 1;
    total = 1;
  }
  for (std::uint32_t i = 0; i < f.q(); ++i) a.at({i}) /= total;
  return a;
}

}  // namespace

TEST_CASE("monomial exponents combine by field addition") {
  for (auto [p, r] : {std::pair<std::uint32_t, std::uint32_t>{2, 2}, {3, 2}}) {
    auto f = Field::make(p, r);
    for (std::uint32_t i = 0; i < f.q(); ++i)
      for (std::uint32_t j = 0; j < f.q(); ++j) {
        auto prod = ga_mul(GroupAlgebraElement::monomial(f, {i}),
                           GroupAlgebraElement::monomial(f, {j}));
        auto want = GroupAlgebraElement::monomial(f, f.add({i}, {j}));
        CHECK(prod == want);
      }
  }
  // over F_4 every monomial squares to the identity
  auto f4 = Field::make(2, 2);
  auto one = GroupAlgebraElement::monomial(f4, f4.zero());
  CHECK(ga_mul(GroupAlgebraElement::monomial(f4, {1}), GroupAlgebraElement::monomial(f4, {1})) ==
        one);
}

TEST_CASE("ring laws, randomized") {
  std::mt19937_64 rng(11);
  for (auto [p, r] : {std::pair<std::uint32_t, std::uint32_t>{2, 1},
                      {3, 1},
                      {2, 2},
                      {5, 1},
                      {2, 3},
                      {3, 2}}) {
    auto f = Field::make(p, r);
    auto one = GroupAlgebraElement::monomial(f, f.zero());
    for (int rep = 0; rep < 20; ++rep) {
      auto a = random_element(f, rng);
      auto b = random_element(f, rng);
      auto c = random_element(f, rng);
      CHECK(ga_mul(a, b) == ga_mul(b, a));
      CHECK(ga_mul(ga_mul(a, b), c) == ga_mul(a, ga_mul(b, c)));
      CHECK(ga_mul(a, ga_add(b, c)) == ga_add(ga_mul(a, b), ga_mul(a, c)));
      CHECK(ga_mul(a, one) == a);
      CHECK(coefficient_sum(ga_mul(a, b)) == coefficient_sum(a) * coefficient_sum(b));
      CHECK(ga_add(a, GroupAlgebraElement(f)) == a);
      // shifting is the same as multiplying by a monomial
      auto delta = f.element(rng() % f.q());
      CHECK(ga_shift(a, delta) == ga_mul(a, GroupAlgebraElement::monomial(f, delta)));
    }
  }
  auto f4 = Field::make(2, 2);
  auto f9 = Field::make(3, 2);
  CHECK_THROWS_MATCHES(ga_mul(GroupAlgebraElement(f4), GroupAlgebraElement(f9)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::field_mismatch;
                       }));
}

TEST_CASE("scaling the point sum of a cubic form gives its probability factor") {
  auto f = Field::make(2, 2);
  GroupAlgebraElement s(f);
  s.at({0}) = 17;
  s.at({1}) = 21;
  s.at({2}) = 13;
  s.at({3}) = 13;
  auto scaled = ga_scale(Rational(1, 64), s);
  CHECK(scaled.at({0}) == Rational(17, 64));
  CHECK(scaled.at({1}) == Rational(21, 64));
  CHECK(coefficient_sum(scaled) == 1);
  CHECK_FALSE(is_uniform(scaled));
  CHECK(is_uniform(GroupAlgebraElement::uniform(f)));
}

TEST_CASE("product of the degree-5 limit with a perturbation factor over F_4") {
  auto f = Field::make(2, 2);
  GroupAlgebraElement g(f);
  g.at({0}) = Rational(11, 32);
  g.at({1}) = Rational(7, 32);
  g.at({2}) = Rational(7, 32);
  g.at({3}) = Rational(7, 32);
  GroupAlgebraElement s(f);
  s.at({0}) = Rational(17, 64);
  s.at({1}) = Rational(21, 64);
  s.at({2}) = Rational(13, 64);
  s.at({3}) = Rational(13, 64);
  auto prod = ga_mul(g, s);
  CHECK(prod.at({0}) == Rational(129, 512));
  CHECK(prod.at({1}) == Rational(133, 512));
  CHECK(prod.at({2}) == Rational(125, 512));
  CHECK(prod.at({3}) == Rational(125, 512));
  CHECK(coefficient_sum(prod) == 1);
}

TEST_CASE("product of the degree-4 limit with a perturbation factor over F_9") {
  auto f = Field::make(3, 2);
  auto h = hypercube_histogram(f, 4, LinearMap::identity(f));
  REQUIRE(h.total == 43046721ull);
  GroupAlgebraElement g(f);
  for (std::uint32_t i = 0; i < 9; ++i) {
    Rational c(static_cast<long>(h.counts[i]), 43046721l);
    c.canonicalize();
    g.at({i}) = c;
    // the limit sits at 29/243 on the prime subfield and 26/243 off it
    CHECK(c == (i < 3 ? Rational(29, 243) : Rational(26, 243)));
  }
  GroupAlgebraElement s(f);
  for (std::uint32_t i = 0; i < 9; ++i) s.at({i}) = Rational(i == 2 ? 145 : 73, 729);
  auto prod = ga_mul(g, s);
  for (std::uint32_t i = 0; i < 9; ++i)
    CHECK(prod.at({i}) == (i < 3 ? Rational(2203, 19683) : Rational(2179, 19683)));
}

TEST_CASE("probability vectors are closed under convolution") {
  std::mt19937_64 rng(23);
  for (auto [p, r] : {std::pair<std::uint32_t, std::uint32_t>{2, 2}, {3, 1}, {3, 2}, {5, 1}}) {
    auto f = Field::make(p, r);
    for (int rep = 0; rep < 25; ++rep) {
      auto a = random_pgf(f, rng);
      auto b = random_pgf(f, rng);
      auto c = ga_mul(a, b);
      CHECK(coefficient_sum(c) == 1);
      for (const auto& v : c.coeffs()) CHECK(v >= 0);
    }
    auto u = GroupAlgebraElement::uniform(f);
    auto a = random_pgf(f, rng);
    // the uniform vector absorbs any probability vector
    CHECK(ga_mul(u, a) == u);
  }
}

TEST_CASE("character evaluation") {
  auto f = Field::make(2, 2);
  auto u = GroupAlgebraElement::uniform(f);
  CHECK(ga_eval_at_character(u, 1).is_zero());
  CHECK(ga_eval_at_character(u, 0).as_rational() == 1);

  std::mt19937_64 rng(5);
  for (auto [p, r] : {std::pair<std::uint32_t, std::uint32_t>{2, 2}, {3, 2}, {5, 1}}) {
    auto g = Field::make(p, r);
    auto uu = GroupAlgebraElement::uniform(g);
    for (std::uint32_t t = 1; t < p; ++t) CHECK(ga_eval_at_character(uu, t).is_zero());
    auto a = random_pgf(g, rng);
    CHECK(ga_eval_at_character(a, 0).as_rational() == 1);
  }

  // the degree-3 limit over F_4 does not vanish at the nontrivial character
  auto h = hypercube_histogram(f, 3, LinearMap::identity(f));
  REQUIRE(h.total == 64);
  GroupAlgebraElement g3(f);
  for (std::uint32_t i = 0; i < 4; ++i) {
    Rational c(static_cast<long>(h.counts[i]), 64l);
    c.canonicalize();
    g3.at({i}) = c;
    CHECK(c == (i < 2 ? Rational(5, 16) : Rational(3, 16)));
  }
  auto v = ga_eval_at_character(g3, 1);
  REQUIRE(v.is_rational());
  CHECK(v.as_rational() == Rational(1, 4));

  // pairing through the first coordinate instead of the trace
  auto m2 = GroupAlgebraElement::monomial(f, {2});
  auto w = ga_eval_at_character(m2, 1, Pairing::first_coordinate);
  CHECK(w.as_rational() == 1);  // index 2 has first digit 0
  auto m1 = ga_eval_at_character(GroupAlgebraElement::monomial(f, {1}), 1,
                                 Pairing::first_coordinate);
  CHECK(m1 == Cyclotomic::root_power(2, 1, 1));  // -1
}

TEST_CASE("roots of unity") {
  for (auto [p, m] : {std::pair<std::uint32_t, std::uint32_t>{2, 1},
                      {3, 1},
                      {2, 2},
                      {2, 3},
                      {3, 2},
                      {5, 2},
                      {3, 3}}) {
    std::uint64_t D = 1;
    for (std::uint32_t i = 0; i < m; ++i) D *= p;
    auto xi = Cyclotomic::root_power(p, m, 1);
    CHECK(xi.pow(D) == Cyclotomic::one(p, m));
    Cyclotomic sum(p, m);
    for (std::uint64_t j = 0; j < D; ++j) sum += Cyclotomic::root_power(p, m, j);
    CHECK(sum.is_zero());
    // negative exponents wrap
    CHECK(Cyclotomic::root_power(p, m, -1) == Cyclotomic::root_power(p, m, D - 1));
    // conjugation inverts a root
    CHECK(xi.conjugate() * xi == Cyclotomic::one(p, m));
  }
  CHECK_THROWS_MATCHES(Cyclotomic::root_power(2, 1, 0) + Cyclotomic::root_power(2, 2, 0), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::mismatched_d;
                       }));
}

TEST_CASE("squared modulus of a partial geometric sum in Q(xi_8)") {
  auto z = Cyclotomic::one(2, 3) + Cyclotomic::root_power(2, 3, -1) +
           Cyclotomic::root_power(2, 3, -2) + Cyclotomic::root_power(2, 3, -3);
  auto w = z * z.conjugate();
  // 4 + 2*sqrt(2) = 4 + 2x - 2x^3 on the power basis
  CHECK_FALSE(w.is_rational());
  CHECK(w.coeff(0) == 4);
  CHECK(w.coeff(1) == 2);
  CHECK(w.coeff(2) == 0);
  CHECK(w.coeff(3) == -2);
  auto c = w.to_complex();
  CHECK(std::abs(c.real() - (4.0 + 2.0 * std::sqrt(2.0))) <= 1e-12);
  CHECK(std::abs(c.imag()) <= 1e-12);
  // it also matches |z|^2 computed in floating point
  CHECK(std::abs(c.real() - std::norm(z.to_complex())) <= 1e-12);
}

TEST_CASE("complex embedding tracks exact arithmetic") {
  std::mt19937_64 rng(31);
  for (auto [p, m] : {std::pair<std::uint32_t, std::uint32_t>{2, 3}, {3, 2}, {5, 1}, {3, 3}}) {
    std::uint64_t D = 1;
    for (std::uint32_t i = 0; i < m; ++i) D *= p;
    for (int rep = 0; rep < 20; ++rep) {
      auto acc = Cyclotomic::one(p, m);
      std::complex<double> facc(1.0, 0.0);
      int nf = 1 + static_cast<int>(rng() % 10);
      for (int t = 0; t < nf; ++t) {
        // sparse small factor: 1 + c * xi^j
        auto fac = Cyclotomic::one(p, m);
        auto xi = Cyclotomic::root_power(p, m, static_cast<std::int64_t>(rng() % D));
        long c = static_cast<long>(rng() % 3) - 1;
        fac += xi * Rational(c);
        acc = acc * fac;
        facc *= fac.to_complex();
      }
      CHECK(std::abs(acc.to_complex() - facc) <= 1e-9);
    }
  }
}

TEST_CASE("modulus q is attained only by the all-zero tuple") {
  // tuples are descending, D - 1 >= j_1 >= ... >= j_(q-1) >= 0
  for (auto [q, p, m] : {std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>{2, 2, 3},
                         {3, 3, 2},
                         {4, 2, 3}}) {
    std::uint64_t D = 1;
    for (std::uint32_t i = 0; i < m; ++i) D *= p;
    std::vector<std::uint64_t> j(q - 1, 0);
    bool done = false;
    while (!done) {
      auto z = Cyclotomic::one(p, m);
      bool all_zero = true;
      for (auto jt : j) {
        z += Cyclotomic::root_power(p, m, -static_cast<std::int64_t>(jt));
        all_zero = all_zero && jt == 0;
      }
      double mod = std::abs(z.to_complex());
      if (all_zero) {
        CHECK(std::abs(mod - q) <= 1e-9);
      } else {
        CHECK(mod < q - 1e-9);
      }
      // next descending tuple
      std::size_t i = j.size();
      while (i-- > 0) {
        std::uint64_t cap = i == 0 ? D - 1 : j[i - 1];
        if (j[i] < cap) {
          ++j[i];
          for (std::size_t t = i + 1; t < j.size(); ++t) j[t] = 0;
          break;
        }
        if (i == 0) done = true;
      }
    }
  }
}

TEST_CASE("cyclotomic coordinates certify rationality") {
  auto f = Field::make(2, 2);
  CycloGroupElement e(f, 2, 2);
  for (std::uint32_t i = 0; i < 4; ++i) e.at({i}) = Cyclotomic::from_rational(2, 2, Rational(i));
  auto r = e.rational_part();
  CHECK(r.at({3}) == 3);
  e.at({1}) = Cyclotomic::root_power(2, 2, 1);
  CHECK_THROWS_MATCHES(e.rational_part(), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e2) {
                         return e2.code() == errc::non_rational_result;
                       }));
}
