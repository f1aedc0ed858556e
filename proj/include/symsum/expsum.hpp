#pragma once

// Exponential sums S_{F_q,L}(target; X) as integer-coefficient group-algebra
// elements, by three routes: composition enumeration for symmetric targets,
// point enumeration for explicit functions and perturbations, and the exact
// closed formula in cyclotomic arithmetic. All routes must agree.

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "symsum/cyclotomic.hpp"
#include "symsum/errors.hpp"
#include "symsum/field.hpp"
#include "symsum/group_algebra.hpp"
#include "symsum/lambda.hpp"
#include "symsum/poly_function.hpp"
#include "symsum/rational.hpp"

namespace symsum {

// Target sum_t beta_t * e_{n, k_t} over n variables.
struct SymmetricSpec {
  std::vector<std::uint32_t> ks;   // strictly increasing, each >= 1
  std::vector<FieldElement> betas;
  std::uint64_t n = 0;

  void validate(const Field& f) const {
    if (ks.size() != betas.size())
      throw Error(errc::validation, "degree and coefficient lists differ in length");
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (ks[i] < 1) throw Error(errc::validation, "degrees must be at least 1");
      if (i > 0 && ks[i] <= ks[i - 1])
        throw Error(errc::validation, "degrees must be strictly increasing");
      if (betas[i].index >= f.q())
        throw Error(errc::validation, "coefficient out of range");
    }
  }
};

namespace detail {

inline BigInt binomial_big(std::uint64_t n, std::uint64_t k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
  return r;
}

// Throws unless C(n+parts-1, parts-1) compositions fit the budget.
inline BigInt composition_count_checked(std::uint64_t n, std::uint32_t parts,
                                        std::uint64_t budget) {
  BigInt c = binomial_big(n + parts - 1, parts - 1);
  if (c > budget) {
    std::uint64_t req = c.fits_ulong_p() ? c.get_ui() : ~0ull;
    throw BudgetExceeded(req, budget);
  }
  return c;
}

}  // namespace detail

// Composition route: group inputs by how often each field element appears.
// A composition (n_0, ..., n_{q-1}) of n contributes multinomial(n; n_t)
// points, all with target value sum_t beta_t * Lambda(k_t, units part).
inline GroupAlgebraElement brute_sum_symmetric(const Field& f, const SymmetricSpec& spec,
                                               const LinearMap& L,
                                               std::uint64_t budget = kDefaultBruteBudget) {
  spec.validate(f);
  if (!(L.field() == f)) throw Error(errc::field_mismatch, "linear map field mismatch");
  const std::uint32_t q = f.q();
  GroupAlgebraElement out(f);
  if (spec.ks.empty()) {
    out.at(L(f.zero())) = Rational(bigint_pow(q, spec.n));
    return out;
  }
  detail::composition_count_checked(spec.n, q, budget);
  const std::uint32_t kmax = spec.ks.back();

  std::vector<BigInt> fact(spec.n + 1);
  fact[0] = 1;
  for (std::uint64_t i = 1; i <= spec.n; ++i) fact[i] = fact[i - 1] * BigInt(i);

  // mult[0] = multiplicity of 0, mult[t] = multiplicity of element t.
  std::vector<std::uint64_t> mult(q, 0);
  mult[0] = spec.n;
  std::vector<std::uint32_t> series, scratch;
  const auto& d = f.data();

  while (true) {
    series.assign(kmax + 1, 0);
    series[0] = 1;
    for (std::uint32_t t = 1; t < q; ++t) {
      if (mult[t] == 0) continue;
      auto fac = detail::binomial_factor(f, {t}, mult[t], kmax);
      detail::mul_factor_into(f, series, fac, scratch);
    }
    std::uint32_t val = 0;
    for (std::size_t i = 0; i < spec.ks.size(); ++i)
      val = d.add_index(val, d.mul_index(spec.betas[i].index, series[spec.ks[i]]));
    BigInt w = fact[spec.n];
    for (std::uint32_t t = 0; t < q; ++t) w /= fact[mult[t]];
    out.at(L({val})) += Rational(w);

    if (mult[q - 1] == spec.n) break;
    std::uint32_t i = 0;
    while (mult[i] == 0) ++i;
    mult[i + 1] += 1;
    std::uint64_t carry = mult[i] - 1;
    mult[i] = 0;
    mult[0] += carry;
  }
  return out;
}

// Point route over an explicit function: one table pass.
inline GroupAlgebraElement brute_sum(const PolyFunction& F, const LinearMap& L,
                                     std::uint64_t budget = kDefaultBruteBudget) {
  if (!(L.field() == F.field()))
    throw Error(errc::field_mismatch, "linear map field mismatch");
  if (F.table().size() > budget) throw BudgetExceeded(F.table().size(), budget);
  GroupAlgebraElement out(F.field());
  for (auto v : F.table()) out.at(L(v)) += 1;
  return out;
}

// Point route over e_{n,k} + F(first j variables): q^n evaluations.
inline GroupAlgebraElement brute_sum_perturbed(const Field& f, std::uint64_t n,
                                               std::uint32_t k, const PolyFunction& F,
                                               const LinearMap& L,
                                               std::uint64_t budget = kDefaultBruteBudget) {
  if (!(F.field() == f)) throw Error(errc::field_mismatch, "function field mismatch");
  if (!(L.field() == f)) throw Error(errc::field_mismatch, "linear map field mismatch");
  if (k < 1) throw Error(errc::validation, "k must be at least 1");
  if (n < F.arity()) throw Error(errc::validation, "need at least as many variables as the function arity");
  if (n > 40) throw Error(errc::too_large, "point enumeration capped at 40 variables");
  std::uint64_t points = detail::checked_pow_points(f.q(), static_cast<std::uint32_t>(n), budget);
  const auto& d = f.data();
  const std::uint32_t q = f.q();
  GroupAlgebraElement out(f);
  std::vector<std::uint32_t> x(n, 0);
  std::vector<std::uint32_t> s(k + 1);
  std::uint64_t fidx_mod = 1;
  for (std::uint32_t i = 0; i < F.arity(); ++i) fidx_mod *= q;
  for (std::uint64_t idx = 0; idx < points; ++idx) {
    s.assign(k + 1, 0);
    s[0] = 1;
    std::uint64_t top = 0;  // highest possibly-nonzero series index
    for (std::uint64_t i = 0; i < n; ++i) {
      std::uint32_t v = x[i];
      if (v == 0) continue;
      if (++top > k) top = k;
      for (std::uint64_t t = top; t >= 1; --t)
        s[t] = d.add_index(s[t], d.mul_index(v, s[t - 1]));
    }
    std::uint32_t val = d.add_index(s[k], F.eval_index(idx % fidx_mod).index);
    out.at(L({val})) += 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (++x[i] < q) break;
      x[i] = 0;
    }
  }
  return out;
}

// Branch route: condition on the first j inputs. With the prefix fixed at y,
//   e_{n,k}(y, tail) = sum_m e_m(y) * e_{n-j, k-m}(tail),
// so each branch is a symmetric combination over n-j variables shifted by
// the branch constant (the m = k term plus F(y)). Distinct branch targets
// are computed once and reused.
inline GroupAlgebraElement perturbation_decompose(const Field& f, std::uint64_t n,
                                                  std::uint32_t k, const PolyFunction& F,
                                                  const LinearMap& L,
                                                  std::uint64_t budget = kDefaultBruteBudget) {
  if (!(F.field() == f)) throw Error(errc::field_mismatch, "function field mismatch");
  if (!(L.field() == f)) throw Error(errc::field_mismatch, "linear map field mismatch");
  if (k < 1) throw Error(errc::validation, "k must be at least 1");
  const std::uint32_t j = F.arity();
  if (n <= j) throw Error(errc::validation, "need more variables than the function arity");
  const std::uint32_t q = f.q();
  const auto& d = f.data();
  std::uint64_t branches = detail::checked_pow_points(q, j, budget);

  GroupAlgebraElement out(f);
  std::map<std::vector<std::uint32_t>, GroupAlgebraElement> cache;
  std::vector<FieldElement> y(j);
  std::vector<std::uint32_t> e(j + 1);  // e_m(y) for m = 0..j
  for (std::uint64_t idx = 0; idx < branches; ++idx) {
    PolyFunction::decode_input(f, j, idx, y);
    e.assign(j + 1, 0);
    e[0] = 1;
    for (std::uint32_t i = 0; i < j; ++i)
      for (std::uint32_t t = i + 1; t >= 1; --t)
        e[t] = d.add_index(e[t], d.mul_index(y[i].index, e[t - 1]));

    SymmetricSpec branch;
    branch.n = n - j;
    std::vector<std::uint32_t> key;
    const std::uint32_t mtop = std::min(j, k);
    for (std::uint32_t step = 0; step <= mtop; ++step) {
      std::uint32_t m = mtop - step;  // descending m: ascending degree k-m
      std::uint32_t deg = k - m;
      if (deg >= 1 && e[m] != 0) {
        branch.ks.push_back(deg);
        branch.betas.push_back({e[m]});
        key.push_back(deg);
        key.push_back(e[m]);
      }
    }
    std::uint32_t shift = F.eval_index(idx).index;
    if (k <= j) shift = d.add_index(shift, e[k]);

    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, brute_sum_symmetric(f, branch, L, budget)).first;
    out = ga_add(out, ga_shift(it->second, L({shift})));
  }
  return out;
}

// Exact evaluation of the cyclotomic expansion
//   S(e_{n,k}; X) = sum over descending (j_1 >= ... >= j_{q-1}) of
//     c_{j;L}(k;X) * (1 + xi_D^{-j_1} + ... + xi_D^{-j_{q-1}})^n,
//   c_{j;L}(k;X) = D^{-(q-1)} sum_b X^{L(Lambda(k,b))} sum_{j' rearr of j}
//                  xi_D^{j'_1 b_1 + ... + j'_{q-1} b_{q-1}},
// where the inner sum runs over the DISTINCT rearrangements of j. Every
// non-rational cyclotomic coordinate must cancel; the rational residue is
// certified and returned.
inline GroupAlgebraElement closed_formula_sum(const Field& f, std::uint64_t n,
                                              std::uint32_t k, const LinearMap& L,
                                              std::uint64_t budget = kDefaultHypercubeBudget) {
  if (!(L.field() == f)) throw Error(errc::field_mismatch, "linear map field mismatch");
  if (k < 2)
    throw Error(errc::validation,
                "closed formula needs k > 1; use a brute-force route for k = 1");
  if (n < 1) throw Error(errc::validation, "n must be at least 1");
  const std::uint32_t q = f.q(), p = f.p(), dims = q - 1;
  const std::uint64_t D = period_D(p, k);
  if (D > 65535) throw Error(errc::too_large, "multiplicity period too large");
  std::uint32_t m_exp = 0;
  for (std::uint64_t t = 1; t < D; t *= p) ++m_exp;

  BigInt tuples = detail::binomial_big(D + dims - 1, dims);
  BigInt points_big = bigint_pow(D, dims);
  if (tuples * points_big > budget) {
    BigInt w = tuples * points_big;
    throw BudgetExceeded(w.fits_ulong_p() ? w.get_ui() : ~0ull, budget);
  }
  const std::uint64_t points = points_big.get_ui();

  // Lambda values over the multiplicity hypercube, with L applied.
  const auto& d = f.data();
  std::vector<std::uint32_t> lam(points);
  std::vector<std::vector<std::uint16_t>> digs(points, std::vector<std::uint16_t>(dims, 0));
  {
    std::vector<std::uint16_t> cur(dims, 0);
    std::vector<std::uint32_t> s, scratch;
    for (std::uint64_t idx = 0; idx < points; ++idx) {
      digs[idx] = cur;
      s.assign(k + 1, 0);
      s[0] = 1;
      for (std::uint32_t t = 0; t < dims; ++t) {
        if (cur[t] == 0) continue;
        auto fac = detail::binomial_factor(f, {t + 1}, cur[t], k);
        detail::mul_factor_into(f, s, fac, scratch);
      }
      lam[idx] = L({s[k]}).index;
      for (std::uint32_t t = 0; t < dims; ++t) {
        if (++cur[t] < D) break;
        cur[t] = 0;
      }
    }
  }

  CycloGroupElement total(f, p, m_exp);
  std::vector<std::vector<long long>> acc(q, std::vector<long long>(D));
  std::vector<std::uint32_t> jt(dims, 0);
  std::vector<std::vector<std::uint32_t>> perms;

  auto process_tuple = [&]() {
    perms.clear();
    std::vector<std::uint32_t> sorted = jt;
    std::sort(sorted.begin(), sorted.end());
    do {
      perms.push_back(sorted);
    } while (std::next_permutation(sorted.begin(), sorted.end()));

    for (auto& row : acc) std::fill(row.begin(), row.end(), 0ll);
    for (std::uint64_t idx = 0; idx < points; ++idx) {
      const auto& b = digs[idx];
      auto& row = acc[lam[idx]];
      for (const auto& pm : perms) {
        std::uint64_t e = 0;
        for (std::uint32_t t = 0; t < dims; ++t) e += static_cast<std::uint64_t>(pm[t]) * b[t];
        row[e % D] += 1;
      }
    }

    Cyclotomic w(p, m_exp);
    w += Cyclotomic::one(p, m_exp);
    for (std::uint32_t t = 0; t < dims; ++t)
      w += Cyclotomic::root_power(p, m_exp, -static_cast<std::int64_t>(jt[t]));
    w = w.pow(n);

    for (std::uint32_t beta = 0; beta < q; ++beta) {
      Cyclotomic c(p, m_exp);
      bool any = false;
      for (std::uint64_t e = 0; e < D; ++e) {
        if (acc[beta][e] == 0) continue;
        c += Cyclotomic::root_power(p, m_exp, static_cast<std::int64_t>(e)) *
             Rational(static_cast<long>(acc[beta][e]));
        any = true;
      }
      if (any) total.at({beta}) += c * w;
    }
  };

  auto tuple_rec = [&](auto&& self, std::uint32_t t, std::uint32_t hi) -> void {
    if (t == dims) {
      process_tuple();
      return;
    }
    for (std::uint32_t v = 0; v <= hi; ++v) {
      jt[t] = v;
      self(self, t + 1, v);
    }
  };
  tuple_rec(tuple_rec, 0, static_cast<std::uint32_t>(D - 1));

  Rational inv_points(1, points_big);
  inv_points.canonicalize();
  for (std::uint32_t beta = 0; beta < q; ++beta) total.at({beta}) *= inv_points;
  GroupAlgebraElement out = total.rational_part();
  if (coefficient_sum(out) != Rational(bigint_pow(q, n)))
    throw Error(errc::internal, "closed formula coefficients do not sum to q^n");
  return out;
}

// Value counts N(target; beta) as non-negative integers.
struct ValueCounts {
  std::vector<BigInt> counts;  // indexed by element index
  BigInt total;

  bool is_balanced() const {
    BigInt each = total / static_cast<unsigned long>(counts.size());
    if (each * static_cast<unsigned long>(counts.size()) != total) return false;
    for (const auto& c : counts)
      if (c != each) return false;
    return true;
  }
};

inline ValueCounts counts_from_group_element(const GroupAlgebraElement& e) {
  ValueCounts out;
  out.total = 0;
  for (const auto& c : e.coeffs()) {
    mpq_class v(c);
    if (v.get_den() != 1 || v < 0)
      throw Error(errc::internal, "count vector has a non-integer entry");
    out.counts.push_back(v.get_num());
    out.total += v.get_num();
  }
  return out;
}

inline ValueCounts value_counts(const Field& f, const SymmetricSpec& spec, const LinearMap& L,
                                std::uint64_t budget = kDefaultBruteBudget) {
  return counts_from_group_element(brute_sum_symmetric(f, spec, L, budget));
}

inline ValueCounts value_counts(const PolyFunction& F, const LinearMap& L,
                                std::uint64_t budget = kDefaultBruteBudget) {
  return counts_from_group_element(brute_sum(F, L, budget));
}

}  // namespace symsum
