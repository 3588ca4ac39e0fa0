#pragma once

#include <array>
#include <map>
#include <string>

#include "fibkit/bigint.hpp"

// Exact arithmetic in Z[phi] (phi^2 = phi + 1), its fraction field, and sparse
// Laurent polynomials in three invertible symbols over that field.
namespace fibkit::zphi {

/// a + b*phi with integer a, b.
class GoldenInt {
public:
  GoldenInt() = default;
  GoldenInt(BigInt a, BigInt b = 0) : a_(std::move(a)), b_(std::move(b)) {}

  static GoldenInt phi() { return {0, 1}; }
  /// sqrt(5) = 2*phi - 1.
  static GoldenInt sqrt5() { return {-1, 2}; }

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// Image under phi -> 1 - phi: (a + b) - b*phi.
  GoldenInt conj() const { return {a_ + b_, -b_}; }
  /// x * conj(x) = a^2 + ab - b^2.
  BigInt norm() const { return a_ * a_ + a_ * b_ - b_ * b_; }

  GoldenInt& operator+=(const GoldenInt& o);
  GoldenInt& operator-=(const GoldenInt& o);
  GoldenInt& operator*=(const GoldenInt& o);

  friend GoldenInt operator+(GoldenInt x, const GoldenInt& y) { return x += y; }
  friend GoldenInt operator-(GoldenInt x, const GoldenInt& y) { return x -= y; }
  friend GoldenInt operator*(GoldenInt x, const GoldenInt& y) { return x *= y; }
  friend GoldenInt operator-(const GoldenInt& x) { return {-x.a_, -x.b_}; }
  friend bool operator==(const GoldenInt& x, const GoldenInt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  std::string to_string() const;

private:
  BigInt a_ = 0;
  BigInt b_ = 0;
};

/// num / den with den > 0 and gcd(num.a, num.b, den) = 1.
class GoldenRat {
public:
  GoldenRat() : num_(), den_(1) {}
  GoldenRat(GoldenInt num) : num_(std::move(num)), den_(1) {}
  GoldenRat(BigInt v) : num_(std::move(v)), den_(1) {}
  GoldenRat(int v) : num_(BigInt(v)), den_(1) {}
  /// Throws std::domain_error on a zero denominator.
  GoldenRat(GoldenInt num, BigInt den);

  const GoldenInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// True when the value is a rational integer (no phi part, unit denominator).
  bool is_integer() const { return den_ == 1 && num_.is_rational(); }
  /// Throws InternalFault unless is_integer().
  BigInt to_integer() const;

  GoldenRat conj() const { return {num_.conj(), den_}; }
  /// Throws std::domain_error for zero.
  GoldenRat inverse() const;

  GoldenRat& operator+=(const GoldenRat& o);
  GoldenRat& operator-=(const GoldenRat& o);
  GoldenRat& operator*=(const GoldenRat& o);
  GoldenRat& operator/=(const GoldenRat& o) { return *this *= o.inverse(); }

  friend GoldenRat operator+(GoldenRat x, const GoldenRat& y) { return x += y; }
  friend GoldenRat operator-(GoldenRat x, const GoldenRat& y) { return x -= y; }
  friend GoldenRat operator*(GoldenRat x, const GoldenRat& y) { return x *= y; }
  friend GoldenRat operator/(GoldenRat x, const GoldenRat& y) { return x /= y; }
  friend GoldenRat operator-(const GoldenRat& x) { return {-x.num_, x.den_}; }
  friend bool operator==(const GoldenRat& x, const GoldenRat& y) { return x.num_ == y.num_ && x.den_ == y.den_; }

  std::string to_string() const;

private:
  void reduce();

  GoldenInt num_;
  BigInt den_;
};

/// phi^n. phi is a unit (phi^-1 = phi - 1), so every power stays in Z[phi].
GoldenInt phi_pow(Index n);

/// (phi^n - (1-phi)^n) / sqrt(5), computed in the fraction field.
BigInt binet_fib(Index n);
/// phi^n + (1-phi)^n.
BigInt binet_lucas(Index n);

/// Exponent triple (i, j, k) of X^i Y^j Z^k; ordered lexicographically.
using Exponents = std::array<Index, 3>;

/// Sparse Laurent polynomial in X, Y, Z with GoldenRat coefficients. No
/// stored coefficient is ever zero, so structural equality is value equality.
class LaurentPoly3 {
public:
  LaurentPoly3() = default;
  LaurentPoly3(GoldenRat constant);

  static LaurentPoly3 monomial(GoldenRat coeff, Exponents exps);
  static LaurentPoly3 x() { return monomial(1, {1, 0, 0}); }
  static LaurentPoly3 y() { return monomial(1, {0, 1, 0}); }
  static LaurentPoly3 z() { return monomial(1, {0, 0, 1}); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Exponents, GoldenRat>& terms() const { return terms_; }
  /// Coefficient of one monomial (zero when absent).
  GoldenRat coeff(const Exponents& e) const;

  LaurentPoly3& operator+=(const LaurentPoly3& o);
  LaurentPoly3& operator-=(const LaurentPoly3& o);
  LaurentPoly3& operator*=(const LaurentPoly3& o);
  LaurentPoly3& operator*=(const GoldenRat& s);

  friend LaurentPoly3 operator+(LaurentPoly3 p, const LaurentPoly3& q) { return p += q; }
  friend LaurentPoly3 operator-(LaurentPoly3 p, const LaurentPoly3& q) { return p -= q; }
  friend LaurentPoly3 operator*(const LaurentPoly3& p, const LaurentPoly3& q);
  friend LaurentPoly3 operator*(LaurentPoly3 p, const GoldenRat& s) { return p *= s; }
  friend LaurentPoly3 operator*(const GoldenRat& s, LaurentPoly3 p) { return p *= s; }
  friend LaurentPoly3 operator-(LaurentPoly3 p) { return p *= GoldenRat(-1); }
  friend bool operator==(const LaurentPoly3& p, const LaurentPoly3& q) { return p.terms_ == q.terms_; }

  /// Deterministic text, terms in lexicographic exponent order, "0" when empty.
  std::string to_string(const std::array<std::string, 3>& names = {"X", "Y", "Z"}) const;

private:
  void add_term(const Exponents& e, const GoldenRat& c);

  std::map<Exponents, GoldenRat> terms_;
};

} // namespace fibkit::zphi
