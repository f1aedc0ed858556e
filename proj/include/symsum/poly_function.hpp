#pragma once

// Functions GF(q)^j -> GF(q) as value tables with an optional algebraic
// normal form. Inputs are indexed (x_1, ..., x_j) -> sum index(x_i) * q^(i-1).
// ANF text is a sum of terms like "3*x1^2*x2"; coefficients are element
// indices and exponents are reduced by x^q = x before any table is built.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symsum/errors.hpp"
#include "symsum/field.hpp"
#include "symsum/lambda.hpp"

namespace symsum {

inline constexpr std::uint64_t kDefaultBruteBudget = 1ull << 24;

struct AnfTerm {
  FieldElement coeff;
  std::vector<std::uint32_t> exps;  // one exponent per variable, each < q
};

namespace detail {

inline std::uint32_t reduce_exponent(std::uint64_t e, std::uint32_t q) {
  // x^q = x as functions on GF(q); exponent 0 stays 0.
  if (e == 0) return 0;
  if (e < q) return static_cast<std::uint32_t>(e);
  return static_cast<std::uint32_t>((e - 1) % (q - 1) + 1);
}

inline std::uint64_t checked_pow_points(std::uint64_t q, std::uint32_t arity,
                                        std::uint64_t budget) {
  unsigned __int128 n = 1;
  for (std::uint32_t i = 0; i < arity; ++i) {
    if (n > ~0ull) {
      n = static_cast<unsigned __int128>(~0ull) + 1;
      break;
    }
    n *= q;
  }
  if (n > budget)
    throw BudgetExceeded(n > ~0ull ? ~0ull : static_cast<std::uint64_t>(n), budget);
  return static_cast<std::uint64_t>(n);
}

}  // namespace detail

class PolyFunction {
 public:
  static PolyFunction from_table(const Field& f, std::uint32_t arity,
                                 std::vector<FieldElement> table,
                                 std::uint64_t budget = kDefaultBruteBudget) {
    std::uint64_t points = detail::checked_pow_points(f.q(), arity, budget);
    if (table.size() != points) throw Error(errc::validation, "table size must be q^arity");
    for (auto e : table)
      if (e.index >= f.q()) throw Error(errc::validation, "table entry out of range");
    return PolyFunction(f, arity, std::move(table), std::nullopt);
  }

  static PolyFunction from_anf_text(const Field& f, const std::string& text,
                                    std::optional<std::uint32_t> arity = std::nullopt,
                                    std::uint64_t budget = kDefaultBruteBudget) {
    auto [terms, max_var] = parse_anf(f, text);
    std::uint32_t j = arity.value_or(max_var);
    if (j < max_var)
      throw Error(errc::validation, "declared arity below highest variable used");
    for (auto& t : terms) t.exps.resize(j, 0);
    return from_anf_terms(f, j, std::move(terms), budget);
  }

  static PolyFunction from_anf_terms(const Field& f, std::uint32_t arity,
                                     std::vector<AnfTerm> terms,
                                     std::uint64_t budget = kDefaultBruteBudget) {
    std::uint64_t points = detail::checked_pow_points(f.q(), arity, budget);
    std::vector<AnfTerm> canon = canonicalize_terms(f, arity, std::move(terms));
    std::vector<FieldElement> table(points);
    std::vector<FieldElement> x(arity);
    for (std::uint64_t idx = 0; idx < points; ++idx) {
      decode_input(f, arity, idx, x);
      table[idx] = eval_terms(f, canon, x);
    }
    return PolyFunction(f, arity, std::move(table), std::move(canon));
  }

  // Exact ANF through the indicator expansion
  //   F(X) = sum_a f(a) prod_i (1 - (X_i - a_i)^(q-1)).
  static PolyFunction interpolate(const Field& f, std::uint32_t arity,
                                  std::vector<FieldElement> table,
                                  std::uint64_t budget = kDefaultBruteBudget) {
    PolyFunction base = from_table(f, arity, std::move(table), budget);
    base.attach_interpolated_anf();
    return base;
  }

  const Field& field() const { return field_; }
  std::uint32_t arity() const { return arity_; }
  const std::vector<FieldElement>& table() const { return table_; }
  bool has_anf() const { return anf_.has_value(); }
  const std::vector<AnfTerm>& anf() const {
    if (!anf_) throw Error(errc::validation, "function has no attached normal form");
    return *anf_;
  }

  std::string anf_text() const {
    const auto& terms = anf();
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& t : terms) {
      if (!out.empty()) out += " + ";
      bool any_var = false;
      std::string mono;
      for (std::size_t i = 0; i < t.exps.size(); ++i) {
        if (t.exps[i] == 0) continue;
        if (any_var) mono += "*";
        mono += "x" + std::to_string(i + 1);
        if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
        any_var = true;
      }
      if (!any_var) {
        out += std::to_string(t.coeff.index);
      } else if (t.coeff.index == 1) {
        out += mono;
      } else {
        out += std::to_string(t.coeff.index) + "*" + mono;
      }
    }
    return out;
  }

  FieldElement eval_index(std::uint64_t idx) const { return table_.at(idx); }

  FieldElement eval(const std::vector<FieldElement>& x) const {
    if (x.size() != arity_) throw Error(errc::validation, "input arity mismatch");
    std::uint64_t idx = 0;
    for (std::size_t i = x.size(); i-- > 0;) idx = idx * field_.q() + x[i].index;
    return table_[idx];
  }

  static void decode_input(const Field& f, std::uint32_t arity, std::uint64_t idx,
                           std::vector<FieldElement>& x) {
    for (std::uint32_t i = 0; i < arity; ++i) {
      x[i] = {static_cast<std::uint32_t>(idx % f.q())};
      idx /= f.q();
    }
  }

 private:
  PolyFunction(const Field& f, std::uint32_t arity, std::vector<FieldElement> table,
               std::optional<std::vector<AnfTerm>> anf)
      : field_(f), arity_(arity), table_(std::move(table)), anf_(std::move(anf)) {}

  static FieldElement eval_terms(const Field& f, const std::vector<AnfTerm>& terms,
                                 const std::vector<FieldElement>& x) {
    const auto& d = f.data();
    std::uint32_t acc = 0;
    for (const auto& t : terms) {
      std::uint32_t v = t.coeff.index;
      for (std::size_t i = 0; i < t.exps.size() && v != 0; ++i)
        if (t.exps[i] != 0) v = d.mul_index(v, d.pow_index(x[i].index, t.exps[i]));
      acc = d.add_index(acc, v);
    }
    return {acc};
  }

  // Combine like monomials, drop zeros, order by exponent vector descending.
  static std::vector<AnfTerm> canonicalize_terms(const Field& f, std::uint32_t arity,
                                                 std::vector<AnfTerm> terms) {
    std::map<std::vector<std::uint32_t>, std::uint32_t, std::greater<>> acc;
    const auto& d = f.data();
    for (auto& t : terms) {
      if (t.coeff.index >= f.q()) throw Error(errc::validation, "coefficient out of range");
      if (t.exps.size() != arity) throw Error(errc::validation, "term arity mismatch");
      std::vector<std::uint32_t> e(arity);
      for (std::size_t i = 0; i < arity; ++i) {
        if (t.exps[i] != 0 && detail::reduce_exponent(t.exps[i], f.q()) != t.exps[i])
          throw Error(errc::validation, "term exponent not reduced");
        e[i] = t.exps[i];
      }
      auto [it, fresh] = acc.emplace(std::move(e), t.coeff.index);
      if (!fresh) it->second = d.add_index(it->second, t.coeff.index);
    }
    std::vector<AnfTerm> out;
    for (auto& [e, c] : acc)
      if (c != 0) out.push_back({FieldElement{c}, e});
    return out;
  }

  static std::pair<std::vector<AnfTerm>, std::uint32_t> parse_anf(const Field& f,
                                                                  const std::string& text) {
    std::vector<AnfTerm> terms;
    std::uint32_t max_var = 0;
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_uint = [&]() -> std::uint64_t {
      std::size_t start = pos;
      std::uint64_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        if (v > (1ull << 40)) throw Error(errc::validation, "number too large in normal form");
        ++pos;
      }
      if (pos == start) throw Error(errc::validation, "expected a number in normal form");
      return v;
    };
    skip_ws();
    if (pos == text.size()) return {terms, 0};
    while (true) {
      // one term: factors separated by '*'
      std::map<std::uint32_t, std::uint64_t> var_exps;
      std::uint32_t coeff = 1;
      while (true) {
        skip_ws();
        if (pos < text.size() && (text[pos] == 'x' || text[pos] == 'X')) {
          ++pos;
          std::uint64_t var = read_uint();
          if (var < 1 || var > 64) throw Error(errc::validation, "variable index out of range");
          std::uint64_t e = 1;
          if (pos < text.size() && text[pos] == '^') {
            ++pos;
            e = read_uint();
          }
          var_exps[static_cast<std::uint32_t>(var - 1)] += e;
          if (var > max_var) max_var = static_cast<std::uint32_t>(var);
        } else {
          std::uint64_t c = read_uint();
          if (c >= f.q()) throw Error(errc::validation, "coefficient index out of range");
          coeff = f.data().mul_index(coeff, static_cast<std::uint32_t>(c));
        }
        skip_ws();
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          continue;
        }
        break;
      }
      AnfTerm t;
      t.coeff = {coeff};
      t.exps.assign(max_var, 0);
      for (auto [v, e] : var_exps) {
        if (t.exps.size() <= v) t.exps.resize(v + 1, 0);
        t.exps[v] = detail::reduce_exponent(e, f.q());
      }
      terms.push_back(std::move(t));
      skip_ws();
      if (pos == text.size()) break;
      if (text[pos] != '+') throw Error(errc::validation, "expected '+' in normal form");
      ++pos;
      skip_ws();
      if (pos == text.size()) throw Error(errc::validation, "dangling '+' in normal form");
    }
    for (auto& t : terms) t.exps.resize(max_var, 0);
    return {terms, max_var};
  }

  void attach_interpolated_anf() {
    const Field& f = field_;
    const auto& d = f.data();
    const std::uint32_t q = f.q();
    const std::uint64_t points = table_.size();
    // Dense multivariate coefficients, exponent tuple encoded base q.
    std::vector<std::uint32_t> dense(points, 0);
    std::vector<FieldElement> a(arity_);
    std::vector<std::vector<std::uint32_t>> u(arity_, std::vector<std::uint32_t>(q));
    std::vector<std::uint32_t> exps(arity_, 0);
    for (std::uint64_t pt = 0; pt < points; ++pt) {
      if (table_[pt].index == 0) continue;
      decode_input(f, arity_, pt, a);
      for (std::uint32_t i = 0; i < arity_; ++i) {
        // u_i = 1 - (X_i - a_i)^(q-1), coefficients in X_i.
        std::vector<std::uint32_t>& ui = u[i];
        std::fill(ui.begin(), ui.end(), 0);
        std::uint32_t na = d.neg_index(a[i].index);
        for (std::uint32_t t = 0; t < q; ++t) {
          std::uint32_t c = binom_mod_p(q - 1, t, f.p());
          if (c == 0) continue;
          std::uint32_t v = d.mul_index(c, d.pow_index(na, q - 1 - t));
          ui[t] = d.neg_index(v);
        }
        ui[0] = d.add_index(ui[0], 1);
      }
      // Tensor expansion over nonzero per-variable coefficients.
      std::fill(exps.begin(), exps.end(), 0);
      while (true) {
        std::uint32_t prod = table_[pt].index;
        for (std::uint32_t i = 0; i < arity_ && prod != 0; ++i) prod = d.mul_index(prod, u[i][exps[i]]);
        if (prod != 0) {
          std::uint64_t code = 0;
          for (std::uint32_t i = arity_; i-- > 0;) code = code * q + exps[i];
          dense[code] = d.add_index(dense[code], prod);
        }
        std::uint32_t i = 0;
        for (; i < arity_; ++i) {
          if (++exps[i] < q) break;
          exps[i] = 0;
        }
        if (i == arity_) break;
      }
    }
    std::vector<AnfTerm> terms;
    for (std::uint64_t code = 0; code < points; ++code) {
      if (dense[code] == 0) continue;
      AnfTerm t;
      t.coeff = {dense[code]};
      t.exps.resize(arity_);
      std::uint64_t v = code;
      for (std::uint32_t i = 0; i < arity_; ++i) {
        t.exps[i] = static_cast<std::uint32_t>(v % q);
        v /= q;
      }
      terms.push_back(std::move(t));
    }
    auto canon = canonicalize_terms(f, arity_, std::move(terms));
    // The expansion must reproduce the table exactly.
    std::vector<FieldElement> x(arity_);
    for (std::uint64_t idx = 0; idx < points; ++idx) {
      decode_input(f, arity_, idx, x);
      if (eval_terms(f, canon, x) != table_[idx])
        throw Error(errc::internal, "interpolated normal form disagrees with table");
    }
    anf_ = std::move(canon);
  }

  Field field_;
  std::uint32_t arity_;
  std::vector<FieldElement> table_;
  std::optional<std::vector<AnfTerm>> anf_;
};

}  // namespace symsum
