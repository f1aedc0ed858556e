#pragma once

// Values of elementary symmetric polynomials on multiplicity vectors.
//
// For distinct nonzero a_1..a_s with multiplicities m_1..m_s, the value of
// e_k on the concatenated vector is the z^k coefficient of the truncated
// product prod_i (1 + a_i z)^(m_i) over GF(q); binomials reduce mod p, so
// each coordinate is periodic with period D = p^(floor(log_p k) + 1).
//
// hypercube_histogram counts those values over the full cube [0,D)^(q-1) of
// multiplicities of GF(q)^x. It walks the cube dimension by dimension,
// deduplicating equal partial products (the truncated series is the whole
// state), which collapses the cube to a tiny state set in practice.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "symsum/errors.hpp"
#include "symsum/field.hpp"

namespace symsum {

inline constexpr std::uint64_t kDefaultHypercubeBudget = 1ull << 28;

// D = p^(floor(log_p k) + 1), the simultaneous period in every multiplicity.
inline std::uint64_t period_D(std::uint32_t p, std::uint64_t k) {
  if (p < 2) throw Error(errc::validation, "p must be at least 2");
  if (k < 1) throw Error(errc::validation, "k must be at least 1");
  std::uint64_t d = p;
  while (d <= k) {
    if (d > ~0ull / p) throw Error(errc::too_large, "period overflows");
    d *= p;
  }
  return d;
}

// C(m, k) mod p by Lucas: the product of digitwise binomials base p.
inline std::uint32_t binom_mod_p(std::uint64_t m, std::uint64_t k, std::uint32_t p) {
  if (!detail::is_prime_u32(p)) throw Error(errc::not_prime, "p must be prime");
  std::uint64_t acc = 1;
  while (k != 0 || m != 0) {
    std::uint64_t md = m % p, kd = k % p;
    if (kd > md) return 0;
    // C(md, kd) mod p for digits below p, multiplicative form with inverses.
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= kd; ++i) {
      std::uint64_t num = (md - kd + i) % p;
      std::uint64_t inv = 1, b = i % p, e = p - 2;
      while (e != 0) {
        if (e & 1) inv = inv * b % p;
        b = b * b % p;
        e >>= 1;
      }
      c = c % p * num % p * inv % p;
    }
    acc = acc * c % p;
    m /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(acc);
}

// Distinct nonzero elements with non-negative multiplicities.
struct MultiplicityVector {
  std::vector<FieldElement> elements;
  std::vector<std::uint64_t> multiplicities;

  static MultiplicityVector full_units(const Field& f, std::vector<std::uint64_t> m) {
    if (m.size() != f.q() - 1)
      throw Error(errc::validation, "full-unit multiplicity vector needs q-1 entries");
    MultiplicityVector mv;
    for (std::uint32_t i = 1; i < f.q(); ++i) mv.elements.push_back({i});
    mv.multiplicities = std::move(m);
    return mv;
  }

  void validate(const Field& f) const {
    if (elements.size() != multiplicities.size())
      throw Error(errc::validation, "element/multiplicity length mismatch");
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i].index == 0 || elements[i].index >= f.q())
        throw Error(errc::validation, "multiplicity elements must be nonzero field elements");
      for (std::size_t j = i + 1; j < elements.size(); ++j)
        if (elements[j] == elements[i])
          throw Error(errc::validation, "multiplicity elements must be distinct");
    }
  }
};

// Truncated series prod (1 + a_i z)^(m_i) mod z^(k_max+1); coeffs[k] is the
// value of e_k on the expanded vector.
struct LambdaSeries {
  Field field;
  std::vector<FieldElement> coeffs;
};

namespace detail {

// Sparse coefficient list of (1 + a z)^m mod z^(kmax+1): pairs (j, C(m,j) a^j).
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> binomial_factor(
    const Field& f, FieldElement a, std::uint64_t m, std::uint32_t kmax) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  std::uint64_t jmax = m < kmax ? m : kmax;
  for (std::uint64_t j = 0; j <= jmax; ++j) {
    std::uint32_t c = binom_mod_p(m, j, f.p());
    if (c == 0) continue;
    std::uint32_t v = f.data().mul_index(c, f.data().pow_index(a.index, j));
    if (v != 0) out.emplace_back(static_cast<std::uint32_t>(j), v);
  }
  return out;
}

inline void mul_factor_into(const Field& f, std::vector<std::uint32_t>& s,
                            const std::vector<std::pair<std::uint32_t, std::uint32_t>>& fac,
                            std::vector<std::uint32_t>& scratch) {
  const auto& d = f.data();
  scratch.assign(s.size(), 0);
  for (auto [j, c] : fac) {
    for (std::size_t t = j; t < s.size(); ++t) {
      if (s[t - j] == 0) continue;
      scratch[t] = d.add_index(scratch[t], d.mul_index(c, s[t - j]));
    }
  }
  s.swap(scratch);
}

}  // namespace detail

inline LambdaSeries lambda_series(const Field& f, std::uint32_t k_max,
                                  const MultiplicityVector& mv) {
  mv.validate(f);
  std::vector<std::uint32_t> s(k_max + 1, 0);
  s[0] = 1;
  std::vector<std::uint32_t> scratch;
  for (std::size_t i = 0; i < mv.elements.size(); ++i) {
    auto fac = detail::binomial_factor(f, mv.elements[i], mv.multiplicities[i], k_max);
    detail::mul_factor_into(f, s, fac, scratch);
  }
  LambdaSeries out{f, {}};
  out.coeffs.reserve(s.size());
  for (auto v : s) out.coeffs.push_back({v});
  return out;
}

inline FieldElement lambda_value(const Field& f, std::uint32_t k, const MultiplicityVector& mv) {
  return lambda_series(f, k, mv).coeffs[k];
}

struct ValueHistogram {
  Field field;
  std::vector<std::uint32_t> ks;  // degrees entering the projected value
  std::uint64_t D = 0;
  std::string L_name;
  std::vector<std::uint64_t> counts;  // indexed by element index, sums to D^(q-1)
  std::uint64_t total = 0;
};

namespace detail {

inline std::uint64_t hypercube_points(std::uint64_t D, std::uint32_t dims, std::uint64_t budget) {
  // Saturating D^dims so the guard can report the full requirement.
  unsigned __int128 n = 1;
  for (std::uint32_t i = 0; i < dims; ++i) {
    if (n > ~0ull) {
      n = static_cast<unsigned __int128>(~0ull) + 1;
      break;
    }
    n *= D;
  }
  if (n > budget)
    throw BudgetExceeded(n > ~0ull ? ~0ull : static_cast<std::uint64_t>(n), budget);
  return static_cast<std::uint64_t>(n);
}

}  // namespace detail

// Histogram of L(sum_t beta_t * Lambda(k_t, b)) over b in [0,D)^(q-1), with
// dimension i holding the multiplicity of the element of index i and D taken
// from the largest degree.
inline ValueHistogram hypercube_histogram_combo(const Field& f, std::vector<std::uint32_t> ks,
                                                std::vector<FieldElement> betas, const LinearMap& L,
                                                std::uint64_t budget = kDefaultHypercubeBudget) {
  if (!(L.field() == f)) throw Error(errc::field_mismatch, "linear map field mismatch");
  if (ks.empty() || ks.size() != betas.size())
    throw Error(errc::validation, "degree/coefficient length mismatch");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1) throw Error(errc::validation, "degrees must be at least 1");
    if (i + 1 < ks.size() && ks[i] >= ks[i + 1])
      throw Error(errc::validation, "degrees must be strictly increasing");
  }
  bool any = false;
  for (auto b : betas) {
    if (b.index >= f.q()) throw Error(errc::validation, "coefficient out of range");
    any = any || b.index != 0;
  }
  if (!any) throw Error(errc::validation, "all coefficients are zero");

  const std::uint32_t q = f.q(), kmax = ks.back(), dims = q - 1;
  const std::uint64_t D = period_D(f.p(), kmax);
  const std::uint64_t total = detail::hypercube_points(D, dims, budget);
  const auto& d = f.data();

  std::vector<std::uint64_t> counts(q, 0);

  // Partial products keyed by their truncated coefficient vector.
  std::unordered_map<std::u16string, std::uint64_t> states;
  {
    std::u16string init(kmax + 1, u'\0');
    init[0] = 1;
    states.emplace(std::move(init), 1);
  }

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> factors(D);
  std::unordered_map<std::u16string, std::uint64_t> next;
  for (std::uint32_t dim = 1; dim <= dims; ++dim) {
    for (std::uint64_t b = 0; b < D; ++b)
      factors[b] = detail::binomial_factor(f, {dim}, b, kmax);
    if (dim < dims) {
      next.clear();
      std::u16string s2(kmax + 1, u'\0');
      for (const auto& [s, cnt] : states) {
        for (std::uint64_t b = 0; b < D; ++b) {
          std::fill(s2.begin(), s2.end(), u'\0');
          for (auto [j, c] : factors[b])
            for (std::uint32_t t = j; t <= kmax; ++t) {
              if (s[t - j] == 0) continue;
              s2[t] = static_cast<char16_t>(
                  d.add_index(s2[t], d.mul_index(c, s[t - j])));
            }
          next[s2] += cnt;
        }
      }
      states.swap(next);
    } else {
      // Last dimension: project straight into the histogram.
      for (const auto& [s, cnt] : states) {
        for (std::uint64_t b = 0; b < D; ++b) {
          std::uint32_t val = 0;
          for (std::size_t i = 0; i < ks.size(); ++i) {
            if (betas[i].index == 0) continue;
            std::uint32_t coeff = 0, kt = ks[i];
            for (auto [j, c] : factors[b]) {
              if (j > kt) break;
              if (s[kt - j] == 0) continue;
              coeff = d.add_index(coeff, d.mul_index(c, s[kt - j]));
            }
            val = d.add_index(val, d.mul_index(betas[i].index, coeff));
          }
          counts[L(FieldElement{val}).index] += cnt;
        }
      }
    }
  }

  ValueHistogram out{f, std::move(ks), D, L.name(), std::move(counts), total};
  return out;
}

inline ValueHistogram hypercube_histogram(const Field& f, std::uint32_t k, const LinearMap& L,
                                          std::uint64_t budget = kDefaultHypercubeBudget) {
  return hypercube_histogram_combo(f, {k}, {f.one()}, L, budget);
}

}  // namespace symsum
