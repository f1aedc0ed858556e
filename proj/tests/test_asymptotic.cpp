#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "symsum/asymptotic.hpp"
#include "symsum/errors.hpp"
#include "symsum/field.hpp"

using namespace symsum;

namespace {

bool uniform_profile(const ProbabilityProfile& prof) {
  Rational u(1, prof.pgf.field().q());
  u.canonicalize();
  for (const auto& c : prof.pgf.coeffs())
    if (c != u) return false;
  return true;
}

}  // namespace

TEST_CASE("finite-n profiles") {
  auto f2 = Field::make(2, 1);
  auto L = LinearMap::identity(f2);
  for (std::uint64_t n : {1ull, 4ull, 7ull}) {
    auto prof = finite_n_pgf(f2, n, 1, L);
    CHECK(prof.pgf.coeffs() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(prof.n == n);
    CHECK(prof.ks == std::vector<std::uint32_t>{1});
    CHECK(prof.L_name == "id");
  }
  auto prof = finite_n_pgf(f2, 3, 2, L);
  CHECK(prof.pgf.coeffs() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  // combos run through the same composition walk
  auto f4 = Field::make(2, 2);
  SymmetricSpec spec{{1, 2}, {f4.one(), f4.element(2)}, 4};
  auto cp = finite_n_pgf_combo(f4, spec, LinearMap::identity(f4));
  CHECK(coefficient_sum(cp.pgf) == 1);
  CHECK(cp.ks == std::vector<std::uint32_t>{1, 2});
}

TEST_CASE("limit profiles") {
  auto f4 = Field::make(2, 2);
  auto L4 = LinearMap::identity(f4);

  auto g5 = asymptotic_pgf(f4, 5, L4);
  CHECK(g5.pgf.coeffs() == std::vector<Rational>{Rational(11, 32), Rational(7, 32),
                                                 Rational(7, 32), Rational(7, 32)});
  CHECK_FALSE(g5.n.has_value());
  CHECK(g5.L_name == "id");

  auto g3 = asymptotic_pgf(f4, 3, L4);
  CHECK(g3.pgf.coeffs() == std::vector<Rational>{Rational(5, 16), Rational(5, 16),
                                                 Rational(3, 16), Rational(3, 16)});

  auto g9 = asymptotic_pgf(f4, 9, L4);
  CHECK(g9.pgf.coeffs() == std::vector<Rational>{Rational(45, 128), Rational(29, 128),
                                                 Rational(27, 128), Rational(27, 128)});

  auto f9 = Field::make(3, 2);
  auto g4 = asymptotic_pgf(f9, 4, LinearMap::identity(f9));
  for (std::uint32_t i = 0; i < 9; ++i)
    CHECK(g4.pgf.coeffs()[i] == (i < 3 ? Rational(29, 243) : Rational(26, 243)));

  // composing with the trace merges fibers of the output map
  auto gt = asymptotic_pgf(f4, 5, LinearMap::trace(f4));
  CHECK(gt.pgf.coeffs() == std::vector<Rational>{Rational(9, 16), Rational(7, 16), Rational(0),
                                                 Rational(0)});
}

TEST_CASE("degree combinations specialize and shift") {
  auto f4 = Field::make(2, 2);
  auto L = LinearMap::identity(f4);
  for (std::uint32_t k : {2u, 3u, 5u}) {
    auto a = asymptotic_pgf(f4, k, L);
    auto b = asymptotic_pgf_combo(f4, {k}, {f4.one()}, L);
    CHECK(a.pgf == b.pgf);
  }

  auto f2 = Field::make(2, 1);
  auto c = asymptotic_pgf_combo(f2, {1, 2}, {f2.one(), f2.one()}, LinearMap::identity(f2));
  CHECK(c.pgf.coeffs() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  // prefixing e_(n,5) by a fixed pair of variables never moves the limit:
  // the combination sum_m e_m(beta) e_(n,5-m) has the same limit profile
  auto base = asymptotic_pgf(f4, 5, L);
  for (std::uint32_t b1 = 0; b1 < 4; ++b1)
    for (std::uint32_t b2 = 0; b2 < 4; ++b2) {
      auto e1 = f4.add({b1}, {b2});
      auto e2 = f4.mul({b1}, {b2});
      auto shifted = asymptotic_pgf_combo(f4, {3, 4, 5}, {e2, e1, f4.one()}, L);
      CHECK(shifted.pgf == base.pgf);
    }
}

TEST_CASE("perturbed limits are products") {
  auto f4 = Field::make(2, 2);
  auto L4 = LinearMap::identity(f4);
  auto F = PolyFunction::from_anf_text(f4, "x1*x2 + x1*x2*x3 + x2*x3 + x1*x3");
  auto pert = perturbed_pgf(f4, 5, F, L4);
  CHECK(pert.pgf.coeffs() == std::vector<Rational>{Rational(129, 512), Rational(133, 512),
                                                   Rational(125, 512), Rational(125, 512)});
  REQUIRE(pert.F_text.has_value());
  CHECK(*pert.F_text == "x1*x2*x3 + x1*x2 + x1*x3 + x2*x3");

  auto f9 = Field::make(3, 2);
  auto F9 = PolyFunction::from_anf_text(f9, "x1*x2*x3 + x1*x2 + x3");
  auto pert9 = perturbed_pgf(f9, 4, F9, LinearMap::identity(f9));
  for (std::uint32_t i = 0; i < 9; ++i)
    CHECK(pert9.pgf.coeffs()[i] == (i < 3 ? Rational(2203, 19683) : Rational(2179, 19683)));

  // the zero perturbation changes nothing
  auto zero2 = PolyFunction::from_anf_text(f4, "", 2);
  CHECK(perturbed_pgf(f4, 5, zero2, L4).pgf == asymptotic_pgf(f4, 5, L4).pgf);

  // a balanced perturbation washes the profile out completely
  auto lin = PolyFunction::from_anf_text(f4, "x1");
  CHECK(uniform_profile(perturbed_pgf(f4, 3, lin, L4)));

  // finite-n perturbed profiles carry their metadata
  auto f2 = Field::make(2, 1);
  auto xy = PolyFunction::from_anf_text(f2, "x1*x2");
  auto fin = finite_n_perturbed_pgf(f2, 8, 3, xy, LinearMap::identity(f2));
  CHECK(fin.n == 8);
  CHECK(fin.F_text == "x1*x2");
  CHECK(coefficient_sum(fin.pgf) == 1);
}

TEST_CASE("closed form for degree p+1 over a prime field") {
  CHECK(smith_probability(5, 0) == Rational(1, 5));
  CHECK(smith_probability(5, 1) == Rational(24, 125));
  CHECK(smith_probability(5, 2) == Rational(26, 125));
  CHECK(smith_probability(5, 3) == Rational(26, 125));
  CHECK(smith_probability(5, 4) == Rational(24, 125));

  std::vector<long> num7{0, 344, 344, 342, 344, 342, 342};
  CHECK(smith_probability(7, 0) == Rational(1, 7));
  for (std::uint32_t t = 1; t < 7; ++t)
    CHECK(smith_probability(7, t) == Rational(num7[t], 2401));

  for (std::uint32_t bad : {2u, 3u, 9u, 1u})
    CHECK_THROWS_MATCHES(smith_probability(bad, 0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == errc::bad_prime;
                         }));
  CHECK_THROWS_AS(smith_probability(5, 5), Error);

  // the hypercube limit reproduces the closed form at p = 5
  auto f5 = Field::make(5, 1);
  auto g6 = asymptotic_pgf(f5, 6, LinearMap::identity(f5));
  for (std::uint32_t t = 0; t < 5; ++t) CHECK(g6.pgf.coeffs()[t] == smith_probability(5, t));
}

TEST_CASE("scaled prime powers") {
  CHECK(is_scaled_prime_power(1, 5));
  CHECK(is_scaled_prime_power(4, 5));
  CHECK(is_scaled_prime_power(10, 5));
  CHECK(is_scaled_prime_power(75, 5));
  CHECK_FALSE(is_scaled_prime_power(6, 5));
  CHECK_FALSE(is_scaled_prime_power(30, 5));
  CHECK(is_scaled_prime_power(8, 2));
  CHECK_FALSE(is_scaled_prime_power(3, 2));
  CHECK_THROWS_AS(is_scaled_prime_power(0, 5), Error);
}

TEST_CASE("classical distribution properties over small prime fields") {
  for (std::uint32_t p : {2u, 3u}) {
    auto f = Field::make(p, 1);
    std::vector<std::uint32_t> ks;
    for (std::uint32_t k = 1; k <= 9; ++k) ks.push_back(k);
    auto rep = fine_property_report(f, ks);
    REQUIRE(rep.rows.size() == 9);
    CHECK(rep.p == p);
    for (const auto& row : rep.rows) {
      CAPTURE(p, row.k);
      CHECK(row.p1);
      CHECK(row.p2);
      CHECK(row.p3);
      CHECK(row.p5);
      REQUIRE(row.p4.has_value());
      CHECK(*row.p4);
      REQUIRE(row.probs_kp.has_value());
    }
  }

  // at p = 5 every small scaled prime power is uniform
  auto f5 = Field::make(5, 1);
  auto rep5 = fine_property_report(f5, {1, 2, 3, 4, 5, 10, 15, 20}, false);
  for (const auto& row : rep5.rows) {
    CAPTURE(row.k);
    CHECK(row.scaled_prime_power);
    CHECK(row.p3);
    for (const auto& c : row.probs) CHECK(c == Rational(1, 5));
    CHECK_FALSE(row.p4.has_value());
  }

  // degree 6 over F_5 breaks the classical expectations
  auto rep6 = fine_property_report(f5, {6}, false);
  REQUIRE(rep6.rows.size() == 1);
  const auto& row6 = rep6.rows[0];
  CHECK_FALSE(row6.scaled_prime_power);
  CHECK(row6.p1);
  CHECK_FALSE(row6.p2);  // probability of 0 stays at 1/5 without k = d*p^l
  CHECK(row6.p3);
  CHECK_FALSE(row6.p5);  // 2 is strictly more likely than 0
  for (std::uint32_t t = 0; t < 5; ++t) CHECK(row6.probs[t] == smith_probability(5, t));

  auto f4 = Field::make(2, 2);
  CHECK_THROWS_AS(fine_property_report(f4, {1}), Error);
}

TEST_CASE("prime-power degrees have uniform limits") {
  for (auto [p, r] : {std::pair<std::uint32_t, std::uint32_t>{2, 1},
                      {3, 1},
                      {2, 2},
                      {2, 3},
                      {3, 2}}) {
    auto f = Field::make(p, r);
    std::vector<std::uint32_t> ks;
    std::uint32_t pk = 1;
    for (std::uint32_t l = 0; l <= 2; ++l) {
      ks.push_back(pk);
      pk *= p;
    }
    for (std::uint32_t k : ks) {
      // skip combinations whose cube exceeds the default budget
      if (f.q() == 9 && k == 9) continue;
      CAPTURE(p, r, k);
      CHECK(uniform_profile(asymptotic_pgf(f, k, LinearMap::identity(f))));
    }
  }
}

TEST_CASE("limit table over the field with eight elements") {
  auto f8 = Field::make(2, 3);
  auto L = LinearMap::identity(f8);
  for (std::uint32_t k = 1; k <= 7; ++k) {
    auto prof = asymptotic_pgf(f8, k, L);
    CAPTURE(k);
    if (k == 5) {
      for (std::uint32_t i = 0; i < 8; ++i)
        CHECK(prof.pgf.coeffs()[i] == (i == 0 ? Rational(71, 512) : Rational(63, 512)));
    } else if (k == 7) {
      for (std::uint32_t i = 0; i < 8; ++i)
        CHECK(prof.pgf.coeffs()[i] == (i < 2 ? Rational(67, 512) : Rational(63, 512)));
    } else {
      CHECK(uniform_profile(prof));
    }
  }
}

TEST_CASE("finite-n profiles drift toward the limit") {
  auto f2 = Field::make(2, 1);
  auto table = convergence_check(f2, 2, LinearMap::identity(f2), {4, 8, 16, 32});
  REQUIRE(table.rows.size() == 4);
  CHECK(table.tail_nonincreasing);
  CHECK(table.limit == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    CHECK(table.rows[i].deviation <= table.rows[i - 1].deviation);
  CHECK(table.rows.back().deviation < Rational(1, 100));
  CHECK(table.rows.front().deviation > 0);

  // at n = 20 the worst coordinate sits around 0.0383
  auto f4 = Field::make(2, 2);
  auto t4 = convergence_check(f4, 5, LinearMap::identity(f4), {20});
  CHECK(t4.rows[0].deviation < Rational(1, 20));
  CHECK(t4.rows[0].deviation > Rational(1, 40));
  CHECK(t4.limit == std::vector<Rational>{Rational(11, 32), Rational(7, 32), Rational(7, 32),
                                          Rational(7, 32)});

  // perturbed flavor keeps the perturbation in the metadata
  auto xy = PolyFunction::from_anf_text(f2, "x1*x2");
  auto tp = convergence_check(f2, 3, LinearMap::identity(f2), {6, 10, 14}, xy);
  CHECK(tp.F_text == "x1*x2");
  CHECK(tp.limit == std::vector<Rational>{Rational(5, 8), Rational(3, 8)});
  CHECK(tp.rows.back().deviation < tp.rows.front().deviation);

  auto csv = convergence_csv(table);
  CHECK(csv.rfind("n,max_deviation\n", 0) == 0);
  CHECK(csv.find("\n32,") != std::string::npos);

  CHECK_THROWS_AS(convergence_check(f2, 2, LinearMap::identity(f2), {}), Error);
  CHECK_THROWS_AS(convergence_check(f2, 2, LinearMap::identity(f2), {8, 8}), Error);
}
