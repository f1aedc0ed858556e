#pragma once

// Asymptotic balance of e_{n,k}, the convolution matrix of its limit profile,
// exact rational linear algebra on it, and the counterexample construction
// that perturbs a singular case into a balanced sum with unbalanced parts.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symsum/asymptotic.hpp"
#include "symsum/cyclotomic.hpp"
#include "symsum/errors.hpp"
#include "symsum/expsum.hpp"
#include "symsum/field.hpp"
#include "symsum/group_algebra.hpp"
#include "symsum/poly_function.hpp"
#include "symsum/rational.hpp"

namespace symsum {

inline bool is_asymptotically_balanced(const ProbabilityProfile& prof) {
  prof.validate();
  return is_uniform(prof.pgf);
}

// Entry (beta, gamma) = a_{beta - gamma}: convolving by the limit profile as
// a doubly stochastic operator on probability vectors over F_q.
struct ConvolutionMatrix {
  Field field;
  std::vector<std::vector<Rational>> rows;
};

inline ConvolutionMatrix build_matrix(const ProbabilityProfile& prof) {
  const Field& f = prof.pgf.field();
  const std::uint32_t q = f.q();
  if (q > 2048) throw Error(errc::too_large, "matrix construction capped at q = 2048");
  const auto& d = f.data();
  ConvolutionMatrix M{f, std::vector<std::vector<Rational>>(q, std::vector<Rational>(q))};
  for (std::uint32_t b = 0; b < q; ++b)
    for (std::uint32_t g = 0; g < q; ++g)
      M.rows[b][g] = prof.pgf.coeffs()[d.add_index(b, d.neg_index(g))];
  for (std::uint32_t i = 0; i < q; ++i) {
    Rational rs(0), cs(0);
    for (std::uint32_t t = 0; t < q; ++t) {
      rs += M.rows[i][t];
      cs += M.rows[t][i];
    }
    if (rs != 1 || cs != 1)
      throw Error(errc::not_stochastic, "convolution matrix is not doubly stochastic");
  }
  return M;
}

inline Rational determinant(const ConvolutionMatrix& M) {
  std::vector<std::vector<Rational>> a = M.rows;
  const std::size_t n = a.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Rational inv = 1 / a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational factor = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  return det;
}

// Right null space as primitive integer vectors: reduced row echelon form,
// one basis vector per free column (ascending), with the free coordinate set
// to +1 and pivot coordinates filled from the reduced rows.
inline std::vector<std::vector<long long>> rational_nullspace(const ConvolutionMatrix& M) {
  std::vector<std::vector<Rational>> a = M.rows;
  const std::size_t n = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[row]);
    Rational inv = 1 / a[row][col];
    for (std::size_t c = col; c < n; ++c) a[row][c] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational factor = a[r][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }

  std::vector<std::vector<long long>> basis;
  std::size_t next_pivot = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (next_pivot < pivot_col.size() && pivot_col[next_pivot] == col) {
      ++next_pivot;
      continue;
    }
    std::vector<Rational> v(n, Rational(0));
    v[col] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][col];
    // Clear denominators and divide by the content.
    BigInt lcm(1);
    for (const auto& x : v) {
      mpq_class c(x);
      BigInt g;
      mpz_lcm(g.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
      lcm = g;
    }
    std::vector<BigInt> w(n);
    BigInt content(0);
    for (std::size_t i = 0; i < n; ++i) {
      mpq_class c(v[i] * Rational(lcm));
      w[i] = c.get_num();
      BigInt g;
      mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), w[i].get_mpz_t());
      content = g;
    }
    std::vector<long long> out(n);
    BigInt sum(0);
    for (std::size_t i = 0; i < n; ++i) {
      BigInt e = w[i] / content;
      if (!e.fits_slong_p()) throw Error(errc::too_large, "null vector entry overflows");
      out[i] = e.get_si();
      sum += e;
    }
    if (sum != 0) throw Error(errc::internal, "null vector entries do not sum to zero");
    for (std::size_t r = 0; r < n; ++r) {
      Rational dot(0);
      for (std::size_t c = 0; c < n; ++c)
        dot += M.rows[r][c] * Rational(static_cast<long>(out[c]));
      if (dot != 0) throw Error(errc::internal, "null vector fails the matrix product check");
    }
    basis.push_back(std::move(out));
  }
  return basis;
}

// Smallest j >= 1 with q^(j-1) >= 1 + max(-v_t) (every count positive) and
// q^(j-1) + max(v_t) <= q^j; the multiset is m_t = q^(j-1) + v_t.
inline std::pair<std::uint32_t, std::vector<std::uint64_t>> choose_perturbation_multiset(
    const std::vector<long long>& v, std::uint32_t q) {
  if (q < 2) throw Error(errc::validation, "q must be at least 2");
  if (v.size() != q) throw Error(errc::validation, "vector length must equal q");
  long long maxneg = 0, maxpos = 0, sum = 0;
  bool nonzero = false;
  for (long long x : v) {
    sum += x;
    if (x != 0) nonzero = true;
    maxneg = std::max(maxneg, -x);
    maxpos = std::max(maxpos, x);
  }
  if (!nonzero) throw Error(errc::zero_vector, "null vector must be nonzero");
  if (sum != 0) throw Error(errc::validation, "vector entries must sum to zero");
  std::uint64_t lo = 1;  // q^(j-1)
  for (std::uint32_t j = 1; j <= 62; ++j) {
    if (lo > static_cast<std::uint64_t>(~0ull) / q) break;
    std::uint64_t hi = lo * q;  // q^j
    if (lo >= static_cast<std::uint64_t>(maxneg) + 1 &&
        lo + static_cast<std::uint64_t>(maxpos) <= hi) {
      std::vector<std::uint64_t> m(q);
      for (std::uint32_t t = 0; t < q; ++t)
        m[t] = static_cast<std::uint64_t>(static_cast<long long>(lo) + v[t]);
      return {j, std::move(m)};
    }
    lo = hi;
  }
  throw Error(errc::too_large, "no representable perturbation arity");
}

// Table assigning output t to the next m_t inputs in index order, then the
// exact normal form by interpolation.
inline PolyFunction synthesize_function(const Field& f, std::uint32_t j,
                                        const std::vector<std::uint64_t>& m,
                                        std::uint64_t budget = kDefaultBruteBudget) {
  if (m.size() != f.q()) throw Error(errc::bad_multiset, "need one count per field element");
  std::uint64_t points = detail::checked_pow_points(f.q(), j, budget);
  std::uint64_t sum = 0;
  for (auto c : m) {
    if (c > points) throw Error(errc::bad_multiset, "count exceeds the input space");
    sum += c;
  }
  if (sum != points) throw Error(errc::bad_multiset, "counts must sum to q^j");
  std::vector<FieldElement> table;
  table.reserve(points);
  for (std::uint32_t t = 0; t < f.q(); ++t)
    for (std::uint64_t i = 0; i < m[t]; ++i) table.push_back({t});
  return PolyFunction::interpolate(f, j, std::move(table), budget);
}

struct BalanceCertificate {
  Field field;
  std::uint32_t k = 0;
  ProbabilityProfile limit;
  Rational det;
  std::vector<std::vector<long long>> nullspace;
  std::vector<long long> chosen_v;
  std::uint32_t j = 0;
  std::vector<std::uint64_t> m;
  PolyFunction F;
  bool verified = false;
};

struct CounterexampleSearch {
  bool found = false;
  Rational det;
  ProbabilityProfile limit;
  std::optional<BalanceCertificate> certificate;
};

// Verifies a certificate from scratch: the multiset matches the chosen null
// vector, F realizes it, F is unbalanced, and the perturbed limit profile is
// exactly uniform.
inline bool verify_certificate(const BalanceCertificate& cert,
                               std::uint64_t budget = kDefaultBruteBudget) {
  const Field& f = cert.field;
  LinearMap id = LinearMap::identity(f);
  ValueCounts counts = value_counts(cert.F, id, budget);
  if (counts.counts.size() != cert.m.size()) return false;
  for (std::size_t t = 0; t < cert.m.size(); ++t)
    if (counts.counts[t] != BigInt(static_cast<unsigned long>(cert.m[t]))) return false;
  if (counts.is_balanced()) return false;
  Rational inv(1, bigint_pow(f.q(), cert.j));
  inv.canonicalize();
  GroupAlgebraElement pert =
      ga_mul(cert.limit.pgf, ga_scale(inv, brute_sum(cert.F, id, budget)));
  return is_uniform(pert);
}

inline CounterexampleSearch find_counterexample(const Field& f, std::uint32_t k,
                                                std::uint64_t hyper_budget = kDefaultHypercubeBudget,
                                                std::uint64_t brute_budget = kDefaultBruteBudget) {
  LinearMap id = LinearMap::identity(f);
  ProbabilityProfile limit = asymptotic_pgf(f, k, id, hyper_budget);
  if (is_uniform(limit.pgf))
    throw Error(errc::already_balanced,
                "the limit profile is already uniform; the construction needs unequal "
                "coefficients");
  ConvolutionMatrix M = build_matrix(limit);
  Rational det = determinant(M);
  std::vector<std::vector<long long>> ns = rational_nullspace(M);
  if (ns.empty()) {
    if (det == 0) throw Error(errc::internal, "empty null space with zero determinant");
    return {false, det, std::move(limit), std::nullopt};
  }
  if (det != 0) throw Error(errc::internal, "nonempty null space with nonzero determinant");

  auto [j, m] = choose_perturbation_multiset(ns[0], f.q());
  PolyFunction F = synthesize_function(f, j, m, brute_budget);
  BalanceCertificate cert{f, k, limit, det, ns, ns[0], j, m, std::move(F), false};
  cert.verified = verify_certificate(cert, brute_budget);
  if (!cert.verified)
    throw Error(errc::internal, "constructed certificate failed verification");
  return {true, det, std::move(limit), std::move(cert)};
}

struct EquivalenceTriple {
  bool perturbed_balanced = false;
  bool symmetric_balanced = false;
  bool function_balanced = false;
};

// Over a prime field the perturbed sum is asymptotically balanced exactly
// when the symmetric part is or F is balanced; computed exactly and the
// equivalence is asserted.
inline EquivalenceTriple prime_field_equivalence_check(const Field& f, std::uint32_t k,
                                                       const PolyFunction& F,
                                                       std::uint64_t hyper_budget = kDefaultHypercubeBudget,
                                                       std::uint64_t brute_budget = kDefaultBruteBudget) {
  if (f.r() != 1) throw Error(errc::validation, "equivalence check is for prime fields");
  LinearMap id = LinearMap::identity(f);
  EquivalenceTriple out;
  ProbabilityProfile base = asymptotic_pgf(f, k, id, hyper_budget);
  out.symmetric_balanced = is_uniform(base.pgf);
  out.function_balanced = value_counts(F, id, brute_budget).is_balanced();
  ProbabilityProfile pert = perturbed_pgf(f, k, F, id, hyper_budget, brute_budget);
  out.perturbed_balanced = is_uniform(pert.pgf);
  if (out.perturbed_balanced != (out.symmetric_balanced || out.function_balanced))
    throw Error(errc::internal, "prime-field balance equivalence violated");
  return out;
}

// Determinant of the q = p convolution matrix through its circulant
// eigenvalues: product over t of sum_i a_{-i} xi_p^{t i}; must be rational.
inline Rational circulant_determinant_via_characters(const ProbabilityProfile& prof) {
  const Field& f = prof.pgf.field();
  if (f.r() != 1) throw Error(errc::validation, "circulant form requires a prime field");
  const std::uint32_t p = f.p();
  Cyclotomic prod = Cyclotomic::one(p, 1);
  for (std::uint32_t t = 0; t < p; ++t) {
    Cyclotomic lam(p, 1);
    for (std::uint32_t i = 0; i < p; ++i) {
      std::uint32_t a_idx = (p - i) % p;  // entry (0, i) of the matrix
      lam += Cyclotomic::root_power(p, 1, static_cast<std::int64_t>(t) * i) *
             prof.pgf.coeffs()[a_idx];
    }
    prod = prod * lam;
  }
  return prod.as_rational();
}

}  // namespace symsum
