#include "fibkit/zphi.hpp"

#include <stdexcept>

namespace fibkit::zphi {

GoldenInt& GoldenInt::operator+=(const GoldenInt& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

GoldenInt& GoldenInt::operator-=(const GoldenInt& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

GoldenInt& GoldenInt::operator*=(const GoldenInt& o) {
  // (a + b phi)(c + d phi) = (ac + bd) + (ad + bc + bd) phi
  BigInt bd = b_ * o.b_;
  BigInt a = a_ * o.a_ + bd;
  BigInt b = a_ * o.b_ + b_ * o.a_ + bd;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

std::string GoldenInt::to_string() const {
  if (sgn(b_) == 0)
    return to_decimal(a_);
  std::string phi_part = b_ == 1 ? "phi" : b_ == -1 ? "-phi" : to_decimal(b_) + "*phi";
  if (sgn(a_) == 0)
    return phi_part;
  if (sgn(b_) < 0)
    return to_decimal(a_) + " - " + phi_part.substr(1);
  return to_decimal(a_) + " + " + phi_part;
}

GoldenRat::GoldenRat(GoldenInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (sgn(den_) == 0)
    throw std::domain_error("GoldenRat: zero denominator");
  reduce();
}

void GoldenRat::reduce() {
  if (sgn(den_) < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num_.a().get_mpz_t(), num_.b().get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    BigInt a, b;
    mpz_divexact(a.get_mpz_t(), num_.a().get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), num_.b().get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    num_ = GoldenInt(std::move(a), std::move(b));
  }
}

BigInt GoldenRat::to_integer() const {
  if (!is_integer())
    throw InternalFault("expected a rational integer, got " + to_string());
  return num_.a();
}

GoldenRat GoldenRat::inverse() const {
  if (is_zero())
    throw std::domain_error("GoldenRat: inverse of zero");
  // d / n = d * conj(n) / norm(n); the norm of a nonzero element never vanishes.
  GoldenInt scaled = num_.conj() * GoldenInt(den_);
  return {std::move(scaled), num_.norm()};
}

GoldenRat& GoldenRat::operator+=(const GoldenRat& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * GoldenInt(o.den_) + o.num_ * GoldenInt(den_);
    den_ *= o.den_;
  }
  reduce();
  return *this;
}

GoldenRat& GoldenRat::operator-=(const GoldenRat& o) { return *this += -o; }

GoldenRat& GoldenRat::operator*=(const GoldenRat& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  reduce();
  return *this;
}

std::string GoldenRat::to_string() const {
  if (den_ == 1)
    return num_.to_string();
  std::string n = num_.to_string();
  if (!num_.is_rational() && sgn(num_.a()) != 0)
    n = "(" + n + ")";
  return n + "/" + to_decimal(den_);
}

GoldenInt phi_pow(Index n) {
  GoldenInt base = n >= 0 ? GoldenInt::phi() : GoldenInt(-1, 1); // phi^-1 = phi - 1
  auto e = static_cast<std::uint64_t>(n >= 0 ? n : -n);
  GoldenInt acc(1);
  while (e != 0) {
    if (e & 1U)
      acc *= base;
    e >>= 1U;
    if (e != 0)
      base *= base;
  }
  return acc;
}

BigInt binet_fib(Index n) {
  const GoldenInt up = phi_pow(n);
  const GoldenRat diff(up - up.conj()); // conj(phi^n) = (1 - phi)^n
  return (diff / GoldenRat(GoldenInt::sqrt5())).to_integer();
}

BigInt binet_lucas(Index n) {
  const GoldenInt up = phi_pow(n);
  return GoldenRat(up + up.conj()).to_integer();
}

LaurentPoly3::LaurentPoly3(GoldenRat constant) {
  if (!constant.is_zero())
    terms_.emplace(Exponents{0, 0, 0}, std::move(constant));
}

LaurentPoly3 LaurentPoly3::monomial(GoldenRat coeff, Exponents exps) {
  LaurentPoly3 p;
  if (!coeff.is_zero())
    p.terms_.emplace(exps, std::move(coeff));
  return p;
}

GoldenRat LaurentPoly3::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GoldenRat() : it->second;
}

void LaurentPoly3::add_term(const Exponents& e, const GoldenRat& c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

LaurentPoly3& LaurentPoly3::operator+=(const LaurentPoly3& o) {
  for (const auto& [e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

LaurentPoly3& LaurentPoly3::operator-=(const LaurentPoly3& o) {
  for (const auto& [e, c] : o.terms_)
    add_term(e, -c);
  return *this;
}

LaurentPoly3 operator*(const LaurentPoly3& p, const LaurentPoly3& q) {
  LaurentPoly3 r;
  for (const auto& [ep, cp] : p.terms_)
    for (const auto& [eq, cq] : q.terms_)
      r.add_term({ep[0] + eq[0], ep[1] + eq[1], ep[2] + eq[2]}, cp * cq);
  return r;
}

LaurentPoly3& LaurentPoly3::operator*=(const LaurentPoly3& o) { return *this = *this * o; }

LaurentPoly3& LaurentPoly3::operator*=(const GoldenRat& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_)
    c *= s;
  return *this;
}

std::string LaurentPoly3::to_string(const std::array<std::string, 3>& names) const {
  if (terms_.empty())
    return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty())
      out += " + ";
    out += "(" + c.to_string() + ")";
    for (std::size_t i = 0; i < 3; ++i) {
      if (e[i] == 0)
        continue;
      out += "*" + names[i];
      if (e[i] != 1)
        out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

} // namespace fibkit::zphi
