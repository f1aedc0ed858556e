#pragma once

// Value-distribution profiles of e_{n,k} at finite n and in the n -> infinity
// limit, the perturbation product rule, Smith's closed form for k = p+1, the
// five classical distribution properties, and convergence tables.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symsum/errors.hpp"
#include "symsum/expsum.hpp"
#include "symsum/field.hpp"
#include "symsum/group_algebra.hpp"
#include "symsum/lambda.hpp"
#include "symsum/poly_function.hpp"
#include "symsum/rational.hpp"

namespace symsum {

struct ProbabilityProfile {
  GroupAlgebraElement pgf;
  std::optional<std::uint64_t> n;  // empty: limit profile
  std::vector<std::uint32_t> ks;
  std::string L_name;
  std::optional<std::string> F_text;  // perturbation, when one was applied

  void validate() const {
    if (coefficient_sum(pgf) != Rational(1))
      throw Error(errc::internal, "profile coefficients do not sum to 1");
    for (const auto& c : pgf.coeffs())
      if (c < 0 || c > 1) throw Error(errc::internal, "profile coefficient outside [0,1]");
  }
};

namespace detail {

inline ProbabilityProfile make_profile(GroupAlgebraElement counts, const Rational& total,
                                       std::optional<std::uint64_t> n,
                                       std::vector<std::uint32_t> ks, std::string L_name,
                                       std::optional<std::string> F_text = std::nullopt) {
  Rational inv = 1 / total;
  ProbabilityProfile out{ga_scale(inv, counts), n, std::move(ks), std::move(L_name),
                         std::move(F_text)};
  out.validate();
  return out;
}

inline std::optional<std::string> anf_or_none(const PolyFunction& F) {
  return F.has_anf() ? std::optional<std::string>(F.anf_text()) : std::nullopt;
}

}  // namespace detail

inline ProbabilityProfile finite_n_pgf(const Field& f, std::uint64_t n, std::uint32_t k,
                                       const LinearMap& L,
                                       std::uint64_t budget = kDefaultBruteBudget) {
  SymmetricSpec spec{{k}, {f.one()}, n};
  return detail::make_profile(brute_sum_symmetric(f, spec, L, budget),
                              Rational(bigint_pow(f.q(), n)), n, {k}, L.name());
}

inline ProbabilityProfile finite_n_pgf_combo(const Field& f, const SymmetricSpec& spec,
                                             const LinearMap& L,
                                             std::uint64_t budget = kDefaultBruteBudget) {
  return detail::make_profile(brute_sum_symmetric(f, spec, L, budget),
                              Rational(bigint_pow(f.q(), spec.n)), spec.n, spec.ks, L.name());
}

inline ProbabilityProfile profile_from_histogram(const ValueHistogram& h) {
  GroupAlgebraElement counts(h.field);
  for (std::uint32_t i = 0; i < h.field.q(); ++i)
    counts.at({i}) = Rational(BigInt(h.counts[i]));
  return detail::make_profile(std::move(counts), Rational(BigInt(h.total)), std::nullopt,
                              h.ks, h.L_name);
}

inline ProbabilityProfile asymptotic_pgf(const Field& f, std::uint32_t k, const LinearMap& L,
                                         std::uint64_t budget = kDefaultHypercubeBudget) {
  return profile_from_histogram(hypercube_histogram(f, k, L, budget));
}

inline ProbabilityProfile asymptotic_pgf_combo(const Field& f, std::vector<std::uint32_t> ks,
                                               std::vector<FieldElement> betas,
                                               const LinearMap& L,
                                               std::uint64_t budget = kDefaultHypercubeBudget) {
  return profile_from_histogram(
      hypercube_histogram_combo(f, std::move(ks), std::move(betas), L, budget));
}

// Limit profile of e_{n,k} + F: the limit of the symmetric part convolved
// with the exact finite distribution of F.
inline ProbabilityProfile perturbed_pgf(const Field& f, std::uint32_t k, const PolyFunction& F,
                                        const LinearMap& L,
                                        std::uint64_t hyper_budget = kDefaultHypercubeBudget,
                                        std::uint64_t brute_budget = kDefaultBruteBudget) {
  ProbabilityProfile base = asymptotic_pgf(f, k, L, hyper_budget);
  GroupAlgebraElement s = brute_sum(F, L, brute_budget);
  Rational inv(1, bigint_pow(f.q(), F.arity()));
  inv.canonicalize();
  ProbabilityProfile out{ga_mul(base.pgf, ga_scale(inv, s)), std::nullopt, {k}, L.name(),
                         detail::anf_or_none(F)};
  out.validate();
  return out;
}

inline ProbabilityProfile finite_n_perturbed_pgf(const Field& f, std::uint64_t n,
                                                 std::uint32_t k, const PolyFunction& F,
                                                 const LinearMap& L,
                                                 std::uint64_t budget = kDefaultBruteBudget) {
  return detail::make_profile(perturbation_decompose(f, n, k, F, L, budget),
                              Rational(bigint_pow(f.q(), n)), n, {k}, L.name(),
                              detail::anf_or_none(F));
}

namespace detail {

inline std::uint64_t pow_mod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 acc = 1, base = b % m;
  while (e) {
    if (e & 1) acc = acc * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(acc);
}

inline int legendre_symbol(std::uint64_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) return 0;
  return pow_mod_u64(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace detail

// Limit probability of e_{n,p+1} hitting t over the prime field F_p, p > 3:
//   1/p for t = 0, else 1/p + legendre(2t | p) * p^-(p+1)/2.
inline Rational smith_probability(std::uint32_t p, std::uint32_t t) {
  if (!detail::is_prime_u32(p) || p <= 3)
    throw Error(errc::bad_prime, "requires a prime larger than 3");
  if (t >= p) throw Error(errc::validation, "t must lie in the prime field");
  Rational base(1, p);
  base.canonicalize();
  if (t == 0) return base;
  std::uint32_t mu = (p + 1) / 2;
  Rational corr(detail::legendre_symbol(2ull * t % p, p), bigint_pow(p, mu));
  corr.canonicalize();
  Rational out = base + corr;
  return out;
}

// k = d * p^l with 1 <= d < p: the degrees whose limit profile is uniform.
inline bool is_scaled_prime_power(std::uint64_t k, std::uint32_t p) {
  if (k < 1) throw Error(errc::validation, "k must be at least 1");
  while (k % p == 0) k /= p;
  return k < p;
}

// Classical properties of p_k = limit profile of e_{n,k} over F_p:
//   (1) p_k(0) >= 1/p
//   (2) p_k(0) = 1/p only if k = d p^l (1 <= d < p)
//   (3) if k = d p^l then p_k(t) = 1/p for every t
//   (4) p_{kp} = p_k
//   (5) p_k(0) >= p_k(t), with equality only if k = d p^l
struct FinePropertyResult {
  std::uint32_t k = 0;
  bool scaled_prime_power = false;
  std::vector<Rational> probs;                      // p_k(t), t = 0..p-1
  std::optional<std::vector<Rational>> probs_kp;    // p_{kp}, when computed
  bool p1 = false, p2 = false, p3 = false, p5 = false;
  std::optional<bool> p4;
};

struct FinePropertyReport {
  std::uint32_t p = 0;
  std::vector<FinePropertyResult> rows;
};

inline FinePropertyReport fine_property_report(const Field& f, std::vector<std::uint32_t> ks,
                                               bool with_multiplied_degree = true,
                                               std::uint64_t budget = kDefaultHypercubeBudget) {
  if (f.r() != 1) throw Error(errc::validation, "property report is defined over prime fields");
  const std::uint32_t p = f.p();
  Rational unif(1, p);
  unif.canonicalize();
  LinearMap L = LinearMap::identity(f);
  FinePropertyReport rep{p, {}};
  for (std::uint32_t k : ks) {
    FinePropertyResult row;
    row.k = k;
    row.scaled_prime_power = is_scaled_prime_power(k, p);
    row.probs = asymptotic_pgf(f, k, L, budget).pgf.coeffs();
    row.p1 = row.probs[0] >= unif;
    row.p2 = !(row.probs[0] == unif && !row.scaled_prime_power);
    row.p3 = true;
    if (row.scaled_prime_power)
      for (const auto& c : row.probs)
        if (c != unif) row.p3 = false;
    row.p5 = true;
    for (std::uint32_t t = 1; t < p; ++t) {
      if (row.probs[t] > row.probs[0]) row.p5 = false;
      if (row.probs[t] == row.probs[0] && !row.scaled_prime_power) row.p5 = false;
    }
    if (with_multiplied_degree) {
      row.probs_kp = asymptotic_pgf(f, k * p, L, budget).pgf.coeffs();
      row.p4 = (*row.probs_kp == row.probs);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

struct ConvergenceRow {
  std::uint64_t n = 0;
  Rational deviation;  // max over beta of |p_n(beta) - p_limit(beta)|
};

struct ConvergenceTable {
  std::vector<std::uint32_t> ks;
  std::string L_name;
  std::optional<std::string> F_text;
  std::vector<Rational> limit;  // limit profile coefficients
  std::vector<ConvergenceRow> rows;
  bool tail_nonincreasing = false;  // over the last three rows
};

inline ConvergenceTable convergence_check(const Field& f, std::uint32_t k, const LinearMap& L,
                                          const std::vector<std::uint64_t>& n_list,
                                          const std::optional<PolyFunction>& F = std::nullopt,
                                          std::uint64_t brute_budget = kDefaultBruteBudget,
                                          std::uint64_t hyper_budget = kDefaultHypercubeBudget) {
  if (n_list.empty()) throw Error(errc::validation, "need at least one value of n");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw Error(errc::validation, "n values must be strictly increasing");

  ProbabilityProfile limit = F ? perturbed_pgf(f, k, *F, L, hyper_budget, brute_budget)
                               : asymptotic_pgf(f, k, L, hyper_budget);
  ConvergenceTable out;
  out.ks = {k};
  out.L_name = L.name();
  if (F) out.F_text = detail::anf_or_none(*F);
  out.limit = limit.pgf.coeffs();

  for (std::uint64_t n : n_list) {
    ProbabilityProfile pn = F ? finite_n_perturbed_pgf(f, n, k, *F, L, brute_budget)
                              : finite_n_pgf(f, n, k, L, brute_budget);
    Rational dev(0);
    for (std::uint32_t i = 0; i < f.q(); ++i) {
      Rational d = rational_abs(pn.pgf.coeffs()[i] - limit.pgf.coeffs()[i]);
      if (d > dev) dev = d;
    }
    out.rows.push_back({n, dev});
  }

  out.tail_nonincreasing = true;
  std::size_t first = out.rows.size() > 3 ? out.rows.size() - 3 : 0;
  for (std::size_t i = first + 1; i < out.rows.size(); ++i)
    if (out.rows[i].deviation > out.rows[i - 1].deviation) out.tail_nonincreasing = false;
  return out;
}

inline std::string convergence_csv(const ConvergenceTable& t) {
  std::string out = "n,max_deviation\n";
  for (const auto& r : t.rows)
    out += std::to_string(r.n) + "," + rational_to_string(r.deviation) + "\n";
  return out;
}

}  // namespace symsum
