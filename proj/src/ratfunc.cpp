#include "fflab/ratfunc.hpp"

namespace fflab {

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) raise(ErrorCode::DivisionByZero, "rational function with zero denominator");
  const Field& F = den.field();
  if (num.is_zero()) {
    num_ = Poly(F);
    den_ = Poly::constant(F, 1);
    return;
  }
  Poly g = gcd(num, den);
  num = div_exact(num, g);
  den = div_exact(den, g);
  Elem c = F->inv(den.lead());
  num_ = num.scaled(c);
  den_ = den.scaled(c);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(Poly(a.field()));
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) raise(ErrorCode::DivisionByZero, "division by zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::to_string(char var) const {
  if (den_.is_one()) return fflab::to_string(num_, var);
  return "(" + fflab::to_string(num_, var) + ")/(" + fflab::to_string(den_, var) + ")";
}

}  // namespace fflab
