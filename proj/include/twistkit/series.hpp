#pragma once

// Truncated formal power series in h over a coefficient ring.
//
// A Series<R> of order N stores exactly N+1 coefficients and all arithmetic is
// carried out mod h^{N+1}. Series of different orders never mix silently.
//
// Requirements on R: value-semantic, default-constructible to a zero that
// absorbs the metadata of whatever it is combined with, closed under + - *,
// scalable by Scalar (R * Scalar), with is_zero() and operator==.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/scalar.hpp"

namespace twistkit {

inline std::optional<Scalar> head_inverse(const Scalar& s) { return s.inverse(); }
inline std::string render(const Scalar& s) { return s.to_string(); }

template <class R>
class Series {
public:
  using value_type = R;

  explicit Series(std::size_t order = 0) : coeffs_(order + 1) {}
  explicit Series(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw StructuralError("series needs at least one coefficient");
  }

  /// c + 0 h + ... + 0 h^N
  static Series constant(R c, std::size_t order) {
    Series s(order);
    s.coeffs_[0] = std::move(c);
    return s;
  }
  /// c h^k truncated at order N (zero if k > N).
  static Series monomial(R c, std::size_t k, std::size_t order) {
    Series s(order);
    if (k <= order) s.coeffs_[k] = std::move(c);
    return s;
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const R& operator[](std::size_t k) const { return coeffs_.at(k); }
  R& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<R>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }
  /// Lowest k with a nonzero coefficient, nullopt for the zero series.
  std::optional<std::size_t> valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!coeffs_[k].is_zero()) return k;
    return std::nullopt;
  }
  bool is_h_constant() const {
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      if (!coeffs_[k].is_zero()) return false;
    return true;
  }

  /// Re-truncate explicitly; the only sanctioned way to change the order.
  Series truncated(std::size_t order) const {
    Series s(order);
    for (std::size_t k = 0; k <= std::min(order, this->order()); ++k) s.coeffs_[k] = coeffs_[k];
    return s;
  }

  template <class F>
  auto map(F&& f) const {
    using Out = std::decay_t<decltype(f(coeffs_[0]))>;
    std::vector<Out> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return Series<Out>(std::move(out));
  }

  Series& operator+=(const Series& o) {
    check_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] = coeffs_[k] + o.coeffs_[k];
    return *this;
  }
  Series& operator-=(const Series& o) {
    check_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] = coeffs_[k] - o.coeffs_[k];
    return *this;
  }
  Series& operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c = c * s;
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator-(const Series& a) { return a * Scalar(-1); }
  friend Series operator*(Series a, const Scalar& s) { return a *= s; }
  friend Series operator*(const Scalar& s, Series a) { return a *= s; }
  friend Series operator*(const Series& a, const Series& b) { return series_mul(a, b); }

  friend bool operator==(const Series& a, const Series& b) {
    if (a.order() != b.order()) return false;
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k)
      if (!(a.coeffs_[k] - b.coeffs_[k]).is_zero()) return false;
    return true;
  }
  friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

  /// Multiplies by h (shifting coefficients up, dropping the top one).
  Series shifted(std::size_t by = 1) const {
    Series s(order());
    for (std::size_t k = by; k < coeffs_.size(); ++k) s.coeffs_[k] = coeffs_[k - by];
    return s;
  }

  void check_order(const Series& o) const {
    if (o.order() != order())
      throw StructuralError("series order mismatch: " + std::to_string(order()) + " vs " +
                            std::to_string(o.order()));
  }

private:
  std::vector<R> coeffs_;
};

/// Cauchy product truncated at the common order.
template <class R>
Series<R> series_mul(const Series<R>& a, const Series<R>& b) {
  a.check_order(b);
  const std::size_t n = a.order();
  Series<R> out(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= n; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] = out[i + j] + a[i] * b[j];
    }
  }
  return out;
}

/// Order-by-order inverse. The head coefficient must be invertible, as decided
/// by head_inverse(R) found through ADL.
template <class R>
Series<R> series_invert(const Series<R>& a) {
  std::optional<R> inv0 = head_inverse(a[0]);
  if (!inv0) throw DomainError("series head coefficient " + render(a[0]) + " is not invertible");
  const std::size_t n = a.order();
  Series<R> b(n);
  b[0] = *inv0;
  for (std::size_t k = 1; k <= n; ++k) {
    R acc{};
    for (std::size_t j = 1; j <= k; ++j) {
      if (a[j].is_zero() || b[k - j].is_zero()) continue;
      acc = acc + a[j] * b[k - j];
    }
    b[k] = (*inv0 * acc) * Scalar(-1);
  }
  return b;
}

/// Truncated power a^p, p >= 0; `one` is the unit of R.
template <class R>
Series<R> series_pow(const Series<R>& a, std::size_t p, const R& one) {
  Series<R> out = Series<R>::constant(one, a.order());
  for (std::size_t k = 0; k < p; ++k) out = series_mul(out, a);
  return out;
}

/// exp(a) = sum_k a^k / k!, requiring a's h^0 coefficient to vanish so that the
/// sum terminates at order N.
template <class R>
Series<R> series_exp(const Series<R>& a, const R& one) {
  if (!a[0].is_zero()) throw DomainError("exp argument has a nonzero h^0 coefficient " + render(a[0]));
  const std::size_t n = a.order();
  Series<R> out = Series<R>::constant(one, n);
  Series<R> term = out;
  for (std::size_t k = 1; k <= n; ++k) {
    term = series_mul(term, a) * *Scalar(static_cast<long>(k)).inverse();
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

/// log(1 + w) = sum_{k>=1} (-1)^{k+1} w^k / k for w with zero h^0 coefficient.
template <class R>
Series<R> series_log1p(const Series<R>& w) {
  if (!w[0].is_zero()) throw DomainError("log argument minus 1 has a nonzero h^0 coefficient " + render(w[0]));
  const std::size_t n = w.order();
  Series<R> out(n);
  Series<R> power = w;
  for (std::size_t k = 1; k <= n; ++k) {
    Scalar c = Scalar::rational(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
    out += power * c;
    power = series_mul(power, w);
    if (power.is_zero()) break;
  }
  return out;
}

template <class R>
std::string render(const Series<R>& s) {
  std::string out;
  for (std::size_t k = 0; k <= s.order(); ++k) {
    if (s[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string c = render(s[k]);
    if (k == 0)
      out += "(" + c + ")";
    else
      out += "(" + c + ")*h^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

using ScalarSeries = Series<Scalar>;

}  // namespace twistkit
