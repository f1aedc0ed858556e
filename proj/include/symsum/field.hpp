#pragma once

// Arithmetic in GF(p^r) for q = p^r <= 2^16.
//
// An element is its integer index in [0, q): the base-p digits of the index
// are the coefficients c_0, c_1, ... of the residue polynomial in the chosen
// modulus. The prime subfield therefore occupies indices 0..p-1 and index
// arithmetic below p is plain arithmetic mod p. Multiplication runs on
// log/antilog tables over a fixed generator; addition is digitwise mod p.
// For q <= 256 dense q*q tables of both operations back the hot loops.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "symsum/errors.hpp"

namespace symsum {

struct FieldElement {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

namespace detail {

inline bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, coefficients low degree first.
using Poly = std::vector<std::uint32_t>;

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_rem(Poly a, const Poly& m, std::uint32_t p) {
  // m monic
  while (a.size() >= m.size() && !a.empty()) {
    std::uint32_t lead = a.back();
    if (lead != 0) {
      std::size_t shift = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i) {
        std::uint64_t v = a[shift + i] + static_cast<std::uint64_t>(p - m[i]) % p * lead;
        a[shift + i] = static_cast<std::uint32_t>(v % p);
      }
    }
    a.pop_back();
    poly_trim(a);
  }
  return a;
}

inline Poly poly_mul_rem(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<std::uint32_t>((c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  }
  return poly_rem(std::move(c), m, p);
}

inline bool poly_is_irreducible(const Poly& f, std::uint32_t p) {
  // Trial division against every monic polynomial of degree <= deg(f)/2.
  std::size_t r = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= r; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(d + 1, 0);
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t r = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;      // c_0..c_r, monic
  std::uint32_t generator = 0;             // index of the sampled primitive element
  std::vector<std::uint32_t> log_tab;      // size q, log_tab[0] unused
  std::vector<std::uint32_t> antilog_tab;  // size q-1
  std::vector<std::uint16_t> neg_tab;      // size q
  std::vector<std::uint16_t> trace_tab;    // size q, values < p
  std::vector<std::uint16_t> add_tab;      // q*q when q <= dense_limit
  std::vector<std::uint16_t> mul_tab;      // likewise
  static constexpr std::uint32_t dense_limit = 256;

  std::uint32_t add_index(std::uint32_t a, std::uint32_t b) const {
    if (!add_tab.empty()) return add_tab[a * q + b];
    return add_index_slow(a, b);
  }
  std::uint32_t add_index_slow(std::uint32_t a, std::uint32_t b) const {
    if (p == 2) return a ^ b;
    std::uint32_t out = 0, scale = 1;
    while (a != 0 || b != 0) {
      out += (a % p + b % p) % p * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return out;
  }
  std::uint32_t neg_index(std::uint32_t a) const { return neg_tab[a]; }
  std::uint32_t mul_index(std::uint32_t a, std::uint32_t b) const {
    if (!mul_tab.empty()) return mul_tab[a * q + b];
    if (a == 0 || b == 0) return 0;
    return antilog_tab[(log_tab[a] + log_tab[b]) % (q - 1)];
  }
  std::uint32_t inv_index(std::uint32_t a) const {
    if (a == 0) throw Error(errc::division_by_zero, "inverse of zero");
    return antilog_tab[(q - 1 - log_tab[a]) % (q - 1)];
  }
  std::uint32_t pow_index(std::uint32_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1u : 0u;
    std::uint64_t le = (static_cast<std::uint64_t>(log_tab[a]) * (e % (q - 1))) % (q - 1);
    return antilog_tab[le];
  }
};

inline Poly index_to_poly(std::uint64_t idx, std::uint32_t p) {
  Poly out;
  while (idx != 0) {
    out.push_back(static_cast<std::uint32_t>(idx % p));
    idx /= p;
  }
  return out;
}

inline std::uint32_t poly_to_index(const Poly& f, std::uint32_t p) {
  std::uint64_t out = 0;
  for (std::size_t i = f.size(); i-- > 0;) out = out * p + f[i];
  return static_cast<std::uint32_t>(out);
}

}  // namespace detail

class Field {
 public:
  Field() = default;

  // Default modulus: the first monic irreducible of degree r in index order,
  // i.e. lexicographically least by (c_{r-1}, ..., c_0).
  static Field make(std::uint32_t p, std::uint32_t r) {
    validate_size(p, r);
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < r; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint32_t> mod(r + 1, 0);
      std::uint64_t v = idx;
      for (std::uint32_t i = 0; i < r; ++i) {
        mod[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      mod[r] = 1;
      if (detail::poly_is_irreducible(mod, p)) return Field(build(p, r, mod));
    }
    throw Error(errc::internal, "no irreducible modulus found");  // unreachable
  }

  static Field make(std::uint32_t p, std::uint32_t r, const std::vector<std::uint32_t>& modulus) {
    validate_size(p, r);
    if (modulus.size() != static_cast<std::size_t>(r) + 1)
      throw Error(errc::validation, "modulus must list c_0..c_r");
    for (auto c : modulus)
      if (c >= p) throw Error(errc::validation, "modulus coefficient out of range");
    if (modulus.back() != 1) throw Error(errc::validation, "modulus must be monic");
    if (!detail::poly_is_irreducible(modulus, p))
      throw Error(errc::reducible, "modulus is reducible");
    return Field(build(p, r, modulus));
  }

  bool valid() const { return static_cast<bool>(d_); }
  std::uint32_t p() const { return d_->p; }
  std::uint32_t r() const { return d_->r; }
  std::uint32_t q() const { return d_->q; }
  const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }
  const detail::FieldData& data() const { return *d_; }

  FieldElement element(std::uint64_t index) const {
    if (index >= d_->q) throw Error(errc::validation, "element index out of range");
    return {static_cast<std::uint32_t>(index)};
  }
  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  // Embedding of F_p: the prime subfield sits at indices 0..p-1.
  FieldElement from_subfield(std::uint32_t c) const { return element(c % d_->p); }

  FieldElement add(FieldElement a, FieldElement b) const { return {d_->add_index(a.index, b.index)}; }
  FieldElement neg(FieldElement a) const { return {d_->neg_index(a.index)}; }
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement mul(FieldElement a, FieldElement b) const { return {d_->mul_index(a.index, b.index)}; }
  FieldElement inv(FieldElement a) const { return {d_->inv_index(a.index)}; }
  FieldElement pow(FieldElement a, std::uint64_t e) const { return {d_->pow_index(a.index, e)}; }

  // Tr(x) = x + x^p + ... + x^(p^(r-1)), always in the prime subfield.
  FieldElement trace(FieldElement a) const { return {d_->trace_tab[a.index]}; }
  std::uint32_t trace_int(FieldElement a) const { return d_->trace_tab[a.index]; }

  friend bool operator==(const Field& a, const Field& b) {
    if (!a.d_ || !b.d_) return a.d_ == b.d_;
    return a.d_ == b.d_ ||
           (a.d_->p == b.d_->p && a.d_->r == b.d_->r && a.d_->modulus == b.d_->modulus);
  }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}

  static void validate_size(std::uint32_t p, std::uint32_t r) {
    if (!detail::is_prime_u32(p)) throw Error(errc::not_prime, "p must be prime");
    if (r < 1) throw Error(errc::validation, "r must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
      q *= p;
      if (q > 65536) throw Error(errc::too_large, "q = p^r exceeds 2^16");
    }
  }

  static std::shared_ptr<const detail::FieldData> build(std::uint32_t p, std::uint32_t r,
                                                        const std::vector<std::uint32_t>& modulus) {
    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->r = r;
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) q *= p;
    d->q = static_cast<std::uint32_t>(q);
    d->modulus = modulus;

    d->neg_tab.resize(d->q);
    for (std::uint32_t a = 0; a < d->q; ++a) {
      std::uint32_t v = a, out = 0, scale = 1;
      while (v != 0) {
        out += (p - v % p) % p * scale;
        v /= p;
        scale *= p;
      }
      d->neg_tab[a] = static_cast<std::uint16_t>(out);
    }

    build_log_tables(*d);

    d->trace_tab.resize(d->q);
    for (std::uint32_t a = 0; a < d->q; ++a) {
      std::uint32_t acc = 0, frob = a;
      for (std::uint32_t i = 0; i < r; ++i) {
        acc = d->add_index_slow(acc, frob);
        frob = d->pow_index(frob, p);
      }
      if (acc >= p) throw Error(errc::internal, "trace left the prime subfield");
      d->trace_tab[a] = static_cast<std::uint16_t>(acc);
    }

    if (d->q <= detail::FieldData::dense_limit) {
      d->add_tab.resize(static_cast<std::size_t>(d->q) * d->q);
      d->mul_tab.resize(static_cast<std::size_t>(d->q) * d->q);
      for (std::uint32_t a = 0; a < d->q; ++a)
        for (std::uint32_t b = 0; b < d->q; ++b) {
          d->add_tab[a * d->q + b] = static_cast<std::uint16_t>(d->add_index_slow(a, b));
          std::uint32_t m = (a == 0 || b == 0)
                                ? 0
                                : d->antilog_tab[(d->log_tab[a] + d->log_tab[b]) % (d->q - 1)];
          d->mul_tab[a * d->q + b] = static_cast<std::uint16_t>(m);
        }
    }
    return d;
  }

  static void build_log_tables(detail::FieldData& d) {
    d.log_tab.assign(d.q, 0);
    d.antilog_tab.assign(d.q - 1, 0);
    if (d.q == 2) {
      d.antilog_tab[0] = 1;
      d.generator = 1;
      return;
    }
    std::vector<std::uint32_t> factors;
    {
      std::uint32_t n = d.q - 1;
      for (std::uint32_t f = 2; static_cast<std::uint64_t>(f) * f <= n; ++f)
        while (n % f == 0) {
          if (factors.empty() || factors.back() != f) factors.push_back(f);
          n /= f;
        }
      if (n > 1) factors.push_back(n);
    }
    auto pow_poly = [&](std::uint32_t base, std::uint32_t e) {
      detail::Poly acc{1}, b = detail::index_to_poly(base, d.p);
      while (e != 0) {
        if (e & 1u) acc = detail::poly_mul_rem(acc, b, d.modulus, d.p);
        b = detail::poly_mul_rem(b, b, d.modulus, d.p);
        e >>= 1;
      }
      return detail::poly_to_index(acc, d.p);
    };
    std::uint32_t g = 0;
    for (std::uint32_t cand = 2; cand < d.q; ++cand) {
      bool ok = true;
      for (auto f : factors)
        if (pow_poly(cand, (d.q - 1) / f) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        g = cand;
        break;
      }
    }
    if (g == 0) throw Error(errc::internal, "no generator found");
    d.generator = g;
    detail::Poly gp = detail::index_to_poly(g, d.p), acc{1};
    for (std::uint32_t i = 0; i < d.q - 1; ++i) {
      std::uint32_t idx = detail::poly_to_index(acc, d.p);
      d.antilog_tab[i] = idx;
      d.log_tab[idx] = i;
      acc = detail::poly_mul_rem(acc, gp, d.modulus, d.p);
    }
    if (detail::poly_to_index(acc, d.p) != 1)
      throw Error(errc::internal, "generator order mismatch");
  }

  std::shared_ptr<const detail::FieldData> d_;
};

// A table-backed F_p-linear map L : GF(q) -> GF(q), validated exhaustively at
// construction (additivity first, then homogeneity over the prime subfield).
class LinearMap {
 public:
  static LinearMap identity(const Field& f) {
    std::vector<FieldElement> t(f.q());
    for (std::uint32_t i = 0; i < f.q(); ++i) t[i] = {i};
    return LinearMap(f, std::move(t), "id", false);
  }

  static LinearMap trace(const Field& f) {
    std::vector<FieldElement> t(f.q());
    for (std::uint32_t i = 0; i < f.q(); ++i) t[i] = f.trace({i});
    return LinearMap(f, std::move(t), "trace", false);
  }

  static LinearMap from_table(const Field& f, std::vector<FieldElement> table,
                              std::string name = "table") {
    return LinearMap(f, std::move(table), std::move(name), true);
  }

  FieldElement operator()(FieldElement a) const { return table_[a.index]; }
  const Field& field() const { return field_; }
  const std::vector<FieldElement>& table() const { return table_; }
  const std::string& name() const { return name_; }

 private:
  LinearMap(const Field& f, std::vector<FieldElement> table, std::string name, bool check)
      : field_(f), table_(std::move(table)), name_(std::move(name)) {
    if (table_.size() != field_.q()) throw Error(errc::validation, "linear map table size != q");
    for (auto e : table_)
      if (e.index >= field_.q()) throw Error(errc::validation, "linear map entry out of range");
    if (check) validate();
  }

  void validate() const {
    const auto& d = field_.data();
    std::uint32_t q = field_.q(), p = field_.p();
    if (static_cast<std::uint64_t>(q) * q <= (1u << 24)) {
      for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b)
          if (table_[d.add_index(a, b)].index != d.add_index(table_[a].index, table_[b].index))
            throw Error(errc::not_additive, "map is not additive");
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t a = 0; a < q; ++a) {
          std::uint32_t ca = d.mul_index(c, a);
          if (table_[ca].index != d.mul_index(c, table_[a].index))
            throw Error(errc::not_homogeneous, "map is not F_p-homogeneous");
        }
    } else {
      // Equivalent basis test for large q: every element must decompose as the
      // digit combination of the power-basis images.
      for (std::uint32_t a = 0; a < q; ++a) {
        std::uint32_t expect = 0, v = a, base = 1;
        while (v != 0) {
          std::uint32_t digit = v % p;
          expect = d.add_index(expect, d.mul_index(digit, table_[base].index));
          v /= p;
          base *= p;
        }
        if (expect != table_[a].index) throw Error(errc::not_additive, "map is not additive");
      }
    }
  }

  Field field_;
  std::vector<FieldElement> table_;
  std::string name_;
};

}  // namespace symsum
