#pragma once

// Exact arithmetic in Q(xi_D) for prime-power D = p^m, on the power basis
// 1, x, ..., x^(phi(D)-1) modulo Phi_D(x) = sum_{i<p} x^(i p^(m-1)).
// Products are reduced immediately, so coefficient vectors always have
// length phi(D) = p^m - p^(m-1).

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "symsum/errors.hpp"
#include "symsum/field.hpp"
#include "symsum/rational.hpp"

namespace symsum {

class Cyclotomic {
 public:
  Cyclotomic(std::uint32_t p, std::uint32_t m) : p_(p), m_(m) {
    if (!detail::is_prime_u32(p)) throw Error(errc::not_prime, "root order base must be prime");
    if (m < 1) throw Error(errc::validation, "root order exponent must be at least 1");
    D_ = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      if (D_ > (1ull << 40)) throw Error(errc::too_large, "root order too large");
      D_ *= p;
    }
    step_ = static_cast<std::size_t>(D_ / p);
    c_.assign(static_cast<std::size_t>(D_ - step_), Rational(0));
  }

  static Cyclotomic from_rational(std::uint32_t p, std::uint32_t m, const Rational& r) {
    Cyclotomic z(p, m);
    z.c_[0] = r;
    return z;
  }

  static Cyclotomic one(std::uint32_t p, std::uint32_t m) {
    return from_rational(p, m, Rational(1));
  }

  // xi_D^j for any integer j (negative allowed).
  static Cyclotomic root_power(std::uint32_t p, std::uint32_t m, std::int64_t j) {
    Cyclotomic z(p, m);
    std::int64_t D = static_cast<std::int64_t>(z.D_);
    std::int64_t e = ((j % D) + D) % D;
    std::size_t phi = z.c_.size();
    if (static_cast<std::size_t>(e) < phi) {
      z.c_[static_cast<std::size_t>(e)] = 1;
    } else {
      // x^e = -(x^(e-phi) + x^(e-phi+step) + ... ), p-1 terms, all below phi.
      for (std::uint32_t i = 0; i + 1 < p; ++i)
        z.c_[static_cast<std::size_t>(e) - phi + i * z.step_] = -1;
    }
    return z;
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint64_t D() const { return D_; }
  std::size_t phi() const { return c_.size(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational& coeff(std::size_t i) { return c_.at(i); }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  // Rational elements are exactly those supported on the constant basis vector.
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  Rational as_rational() const {
    if (!is_rational()) throw Error(errc::non_rational_result, "cyclotomic value is not rational");
    return c_[0];
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Cyclotomic& operator*=(const Rational& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& s) { return a *= s; }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.check_same(b);
    std::size_t phi = a.c_.size();
    std::vector<Rational> raw(2 * phi - 1, Rational(0));
    for (std::size_t i = 0; i < phi; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < phi; ++j) {
        if (b.c_[j] == 0) continue;
        raw[i + j] += a.c_[i] * b.c_[j];
      }
    }
    Cyclotomic out(a.p_, a.m_);
    reduce(raw, a.p_, phi, a.step_);
    for (std::size_t i = 0; i < phi; ++i) out.c_[i] = std::move(raw[i]);
    return out;
  }

  Cyclotomic pow(std::uint64_t n) const {
    Cyclotomic acc = one(p_, m_), base = *this;
    while (n != 0) {
      if (n & 1ull) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }

  // Complex conjugation, x -> x^(-1).
  Cyclotomic conjugate() const {
    Cyclotomic out(p_, m_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      Cyclotomic term = root_power(p_, m_, -static_cast<std::int64_t>(i));
      term *= c_[i];
      out += term;
    }
    return out;
  }

  std::complex<double> to_complex() const {
    long double re = 0, im = 0;
    const long double tau = 6.283185307179586476925286766559L;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      long double v = static_cast<long double>(c_[i].get_d());
      long double ang = tau * static_cast<long double>(i) / static_cast<long double>(D_);
      re += v * std::cos(ang);
      im += v * std::sin(ang);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.D_ == b.D_ && a.c_ == b.c_;
  }

 private:
  void check_same(const Cyclotomic& o) const {
    if (D_ != o.D_) throw Error(errc::mismatched_d, "cyclotomic root orders differ");
  }

  // In-place reduction of a raw coefficient vector modulo Phi_D, highest
  // degree first; cascades terminate because every rewrite lowers the degree.
  static void reduce(std::vector<Rational>& raw, std::uint32_t p, std::size_t phi,
                     std::size_t step) {
    for (std::size_t d = raw.size(); d-- > phi;) {
      if (raw[d] == 0) continue;
      Rational c = std::move(raw[d]);
      raw[d] = 0;
      for (std::uint32_t i = 0; i + 1 < p; ++i) raw[d - phi + i * step] -= c;
    }
  }

  std::uint32_t p_, m_;
  std::uint64_t D_;
  std::size_t step_;  // p^(m-1)
  std::vector<Rational> c_;
};

}  // namespace symsum
