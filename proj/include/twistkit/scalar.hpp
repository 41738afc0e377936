#pragma once

// Exact Gaussian rationals Q(i) backed by GMP.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "twistkit/errors.hpp"

namespace twistkit {

class Scalar {
public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}  // NOLINT: implicit from integers is intended
  Scalar(int v) : re_(v), im_(0) {}   // NOLINT
  Scalar(mpq_class re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }  // NOLINT
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    return Scalar(mpq_class(num, den));
  }
  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }

  std::optional<Scalar> inverse() const {
    if (is_zero()) return std::nullopt;
    mpq_class norm = re_ * re_ + im_ * im_;
    return Scalar(mpq_class(re_ / norm), mpq_class(-im_ / norm));
  }

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
    auto inv = o.inverse();
    if (!inv) throw DomainError("division by zero scalar");
    return *this *= *inv;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.re_), mpq_class(-a.im_)); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Exact rendering "a/b+c/d*i"; parts that vanish are omitted, "0" for zero.
  std::string to_string() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string im_part = mpq_class(abs(im_)).get_str() + "*i";
    if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + im_part;
    return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + im_part;
  }

  /// Inverse of to_string(). Throws DomainError on malformed input.
  static Scalar parse(std::string_view text);

  double real_double() const { return re_.get_d(); }
  double imag_double() const { return im_.get_d(); }

private:
  mpq_class re_;
  mpq_class im_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

namespace detail {

inline mpq_class parse_rational(std::string_view text) {
  if (text.empty()) throw DomainError("empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw DomainError("malformed rational literal '" + std::string(text) + "'");
  }
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw DomainError("malformed rational literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

}  // namespace detail

inline Scalar Scalar::parse(std::string_view text) {
  if (text.size() >= 2 && text.substr(text.size() - 2) == "*i") {
    std::string_view body = text.substr(0, text.size() - 2);
    // split at the last sign that is not in leading position
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if (body[k] == '+' || body[k] == '-') {
        split = k;
        break;
      }
    }
    if (split == std::string_view::npos) return Scalar(mpq_class(0), detail::parse_rational(body));
    return Scalar(detail::parse_rational(body.substr(0, split)), detail::parse_rational(body.substr(split)));
  }
  return Scalar(detail::parse_rational(text));
}

}  // namespace twistkit
