#pragma once

// The rational group algebra of (GF(q), +): formal sums sum_beta a_beta X^beta
// with exact rational coefficients. The product convolves coefficients while
// composing exponents by field addition, so over GF(4) X^1 * X^1 = X^0.

#include <cstdint>
#include <vector>

#include "symsum/cyclotomic.hpp"
#include "symsum/errors.hpp"
#include "symsum/field.hpp"
#include "symsum/rational.hpp"

namespace symsum {

class GroupAlgebraElement {
 public:
  explicit GroupAlgebraElement(const Field& f) : field_(f), c_(f.q(), Rational(0)) {}

  static GroupAlgebraElement monomial(const Field& f, FieldElement beta,
                                      const Rational& coeff = Rational(1)) {
    GroupAlgebraElement out(f);
    out.at(beta) = coeff;
    return out;
  }

  static GroupAlgebraElement uniform(const Field& f) {
    GroupAlgebraElement out(f);
    Rational v(1, f.q());
    v.canonicalize();
    for (auto& c : out.c_) c = v;
    return out;
  }

  const Field& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational& at(FieldElement beta) { return c_.at(beta.index); }
  const Rational& at(FieldElement beta) const { return c_.at(beta.index); }

  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }

 private:
  Field field_;
  std::vector<Rational> c_;
};

namespace detail {
inline void check_same_field(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  if (!(a.field() == b.field()))
    throw Error(errc::field_mismatch, "group algebra elements over different fields");
}
}  // namespace detail

inline GroupAlgebraElement ga_add(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  detail::check_same_field(a, b);
  GroupAlgebraElement out(a.field());
  for (std::uint32_t i = 0; i < a.field().q(); ++i)
    out.at({i}) = a.coeffs()[i] + b.coeffs()[i];
  return out;
}

inline GroupAlgebraElement ga_scale(const Rational& s, const GroupAlgebraElement& a) {
  GroupAlgebraElement out(a.field());
  for (std::uint32_t i = 0; i < a.field().q(); ++i) out.at({i}) = s * a.coeffs()[i];
  return out;
}

inline GroupAlgebraElement ga_mul(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  detail::check_same_field(a, b);
  const Field& f = a.field();
  const auto& d = f.data();
  GroupAlgebraElement out(f);
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (std::uint32_t j = 0; j < f.q(); ++j) {
      if (b.coeffs()[j] == 0) continue;
      out.at({d.add_index(i, j)}) += a.coeffs()[i] * b.coeffs()[j];
    }
  }
  return out;
}

// Multiplication by the monomial X^delta (an exponent shift).
inline GroupAlgebraElement ga_shift(const GroupAlgebraElement& a, FieldElement delta) {
  const Field& f = a.field();
  const auto& d = f.data();
  GroupAlgebraElement out(f);
  for (std::uint32_t i = 0; i < f.q(); ++i)
    out.at({d.add_index(i, delta.index)}) = a.coeffs()[i];
  return out;
}

inline Rational coefficient_sum(const GroupAlgebraElement& a) {
  Rational s(0);
  for (const auto& c : a.coeffs()) s += c;
  return s;
}

inline bool is_uniform(const GroupAlgebraElement& a) {
  Rational v(1, a.field().q());
  v.canonicalize();
  for (const auto& c : a.coeffs())
    if (c != v) return false;
  return true;
}

enum class Pairing { trace, first_coordinate };

// Evaluation at the additive character X^beta -> xi_p^(t * <beta>), where
// <beta> is Tr(beta) (default) or the first base-p digit of beta's index.
inline Cyclotomic ga_eval_at_character(const GroupAlgebraElement& a, std::uint32_t t,
                                       Pairing pairing = Pairing::trace) {
  const Field& f = a.field();
  Cyclotomic out(f.p(), 1);
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    std::uint32_t pair_val =
        pairing == Pairing::trace ? f.trace_int({i}) : i % f.p();
    Cyclotomic term = Cyclotomic::root_power(
        f.p(), 1, static_cast<std::int64_t>(t) * pair_val);
    term *= a.coeffs()[i];
    out += term;
  }
  return out;
}

// Group algebra with cyclotomic coefficients; carrier for the closed-formula
// accumulation before the rational certificate is extracted.
class CycloGroupElement {
 public:
  CycloGroupElement(const Field& f, std::uint32_t p, std::uint32_t m)
      : field_(f), c_(f.q(), Cyclotomic(p, m)) {}

  const Field& field() const { return field_; }
  Cyclotomic& at(FieldElement beta) { return c_.at(beta.index); }
  const Cyclotomic& at(FieldElement beta) const { return c_.at(beta.index); }

  CycloGroupElement& operator+=(const CycloGroupElement& o) {
    if (!(field_ == o.field_))
      throw Error(errc::field_mismatch, "cyclotomic group elements over different fields");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }

  // Certifies that every coefficient is rational and returns them.
  GroupAlgebraElement rational_part() const {
    GroupAlgebraElement out(field_);
    for (std::uint32_t i = 0; i < field_.q(); ++i) {
      if (!c_[i].is_rational())
        throw Error(errc::non_rational_result,
                    "cyclotomic coordinates failed to cancel at element " + std::to_string(i));
      out.at({i}) = c_[i].coeffs()[0];
    }
    return out;
  }

 private:
  Field field_;
  std::vector<Cyclotomic> c_;
};

}  // namespace symsum
