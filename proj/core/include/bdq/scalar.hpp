#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>

#include "bdq/errors.hpp"

namespace bdq {

/// Exact element of Q(i): re + i*im with arbitrary-precision rationals.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re) : re_(std::move(re)) {}  // NOLINT
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return {mpq_class(0), mpq_class(1)}; }
  static Scalar rational(long p, long q) {
    mpq_class v(p, q);
    v.canonicalize();
    return Scalar(v);
  }
  /// Parses "p/q" or "p".
  static mpq_class parse_rational(const std::string& text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return {re_, -im_}; }
  /// |z|^2, always real.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  Scalar operator-() const { return {-re_, -im_}; }
  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw Error("division_by_zero", "scalar division by zero");
    if (sgn(o.im_) == 0) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    mpq_class n = o.norm2();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical text: "p/q", or "p/q+p/q*I" style for complex values.
  std::string to_string() const;
  double real_double() const { return re_.get_d(); }
  double imag_double() const { return im_.get_d(); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Canonical "p/q" text of a rational (denominator 1 prints as "p/1").
std::string rational_text(const mpq_class& q);

}  // namespace bdq
