#pragma once

// Twist elements F in (U (x) U)[[h]]: counitality, the 2-cocycle condition
// (F (x) 1)(Delta (x) Id)(F) = (1 (x) F)(Id (x) Delta)(F), the twisted
// coproduct Delta_F(x) = F Delta(x) F^{-1}, and gauge normalization F -> F F_0^{-1}.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/report.hpp"
#include "twistkit/series.hpp"
#include "twistkit/uea.hpp"

namespace twistkit {

class Twist {
public:
  Twist(LieAlgebraPtr alg, TensorSeries series) : alg_(std::move(alg)), series_(std::move(series)) {
    for (std::size_t k = 0; k <= series_.order(); ++k) {
      const auto& c = series_[k];
      if (c.arity() != 0 && c.arity() != 2) throw StructuralError("twist coefficients must be 2-tensors");
      detail::common_algebra(alg_, c.algebra());
      if (c.arity() == 0) series_[k] = TensorElement::identity(alg_, 2, Scalar(0));
    }
    if (!head_inverse(series_[0])) throw DomainError("twist head " + render(series_[0]) + " is not invertible in U⊗U");
  }

  const LieAlgebraPtr& algebra() const { return alg_; }
  const TensorSeries& series() const { return series_; }
  std::size_t order() const { return series_.order(); }
  bool is_normalized() const { return series_[0] == TensorElement::identity(alg_, 2); }

  /// The trivial twist 1 (x) 1.
  static Twist trivial(LieAlgebraPtr alg, std::size_t order) {
    auto one = TensorElement::identity(alg, 2);
    return Twist(std::move(alg), TensorSeries::constant(one, order));
  }

private:
  LieAlgebraPtr alg_;
  TensorSeries series_;
};

/// exp of an arity-2 series without h^0 term, summed to order N.
inline Twist build_exponential_twist(const LieAlgebraPtr& alg, const TensorSeries& exponent) {
  for (std::size_t k = 0; k <= exponent.order(); ++k)
    if (exponent[k].arity() != 0 && exponent[k].arity() != 2) throw StructuralError("twist exponent must be a 2-tensor series");
  if (!exponent[0].is_zero())
    throw DomainError("twist exponent has nonzero h^0 term " + render(exponent[0]) + "; exp would not start at 1⊗1");
  return Twist(alg, series_exp(exponent, TensorElement::identity(alg, 2)));
}

/// Applies a map on coefficients and collects the result as a series.
template <class R, class F>
Series<R> map_coeffs(const TensorSeries& s, F&& f) {
  Series<R> out(s.order());
  for (std::size_t k = 0; k <= s.order(); ++k) out[k] = f(s[k]);
  return out;
}

inline Report check_counitality(const Twist& F) {
  Report r{"counitality", ""};
  const auto& alg = F.algebra();
  auto left = map_coeffs<UEAElement>(F.series(), [&](const TensorElement& t) { return counit_on_leg(t, 1).to_uea(); });
  auto right = map_coeffs<UEAElement>(F.series(), [&](const TensorElement& t) { return counit_on_leg(t, 2).to_uea(); });
  auto target = Series<UEAElement>::constant(UEAElement::one(alg), F.order());
  for (std::size_t k = 0; k <= F.order(); ++k) {
    bool ok = left[k] == target[k] && right[k] == target[k];
    r.details.push_back("order " + std::to_string(k) + ": " + (ok ? "ok" : "violated"));
    if (!ok) r.fail_at(k);
  }
  if (!r.passed()) {
    if (left != target) r.witness("(ε⊗Id)(F)", render(left));
    if (right != target) r.witness("(Id⊗ε)(F)", render(right));
  }
  return r;
}

/// Both sides of the cocycle condition as arity-3 series.
inline std::pair<TensorSeries, TensorSeries> cocycle_sides(const Twist& F) {
  const auto& s = F.series();
  auto f12 = map_series(s, [](const TensorElement& t) { return insert_identity_leg(t, 2); });
  auto f23 = map_series(s, [](const TensorElement& t) { return insert_identity_leg(t, 0); });
  auto d1 = map_series(s, [](const TensorElement& t) { return coproduct_on_leg(t, 1); });
  auto d2 = map_series(s, [](const TensorElement& t) { return coproduct_on_leg(t, 2); });
  return {series_mul(f12, d1), series_mul(f23, d2)};
}

/// Compares two series order by order; failures record the lowest order and
/// the difference at that order.
inline void compare_orders(Report& r, const TensorSeries& lhs, const TensorSeries& rhs, const std::string& label) {
  for (std::size_t k = 0; k <= lhs.order(); ++k) {
    TensorElement diff = lhs[k] - rhs[k];
    bool ok = diff.is_zero();
    r.details.push_back("order " + std::to_string(k) + ": " + (ok ? "ok" : "violated"));
    if (!ok) {
      if (!r.lowest_failing_order) r.witness(label + " at order " + std::to_string(k), render(diff));
      r.fail_at(k);
    }
  }
}

inline Report check_cocycle(const Twist& F) {
  Report r{"cocycle", ""};
  auto [lhs, rhs] = cocycle_sides(F);
  compare_orders(r, lhs, rhs, "(F⊗1)(Δ⊗Id)(F) - (1⊗F)(Id⊗Δ)(F)");
  return r;
}

inline TensorSeries invert_twist(const Twist& F) {
  if (!F.is_normalized()) {
    auto c = F.series()[0].as_scalar();
    if (!c) throw DomainError("twist head is not invertible");
  }
  return series_invert(F.series());
}

/// F Delta(x) F^{-1}, given a precomputed inverse.
inline TensorSeries twisted_coproduct(const Twist& F, const TensorSeries& F_inv, const UEAElement& x) {
  auto dx = TensorSeries::constant(coproduct(x), F.order());
  return series_mul(series_mul(F.series(), dx), F_inv);
}

inline TensorSeries twisted_coproduct(const Twist& F, const UEAElement& x) {
  return twisted_coproduct(F, invert_twist(F), x);
}

/// (Id^{leg-1} (x) Delta_F (x) Id) applied to a series of tensors:
/// conjugation of the leg coproduct by F placed on legs (leg, leg+1).
inline TensorSeries twisted_coproduct_on_leg(const Twist& F, const TensorSeries& F_inv, const TensorSeries& t, int leg) {
  const int arity = [&] {
    for (std::size_t k = 0; k <= t.order(); ++k)
      if (t[k].arity() != 0) return t[k].arity();
    return 0;
  }();
  if (arity == 0) return TensorSeries(t.order());
  auto place = [&](const TensorSeries& s) {
    return map_series(s, [&](const TensorElement& e) {
      TensorElement x = e;
      for (int p = 0; p < leg - 1; ++p) x = insert_identity_leg(x, 0);
      for (int p = leg + 1; p <= arity; ++p) x = insert_identity_leg(x, x.arity());
      return x;
    });
  };
  auto delta = map_series(t, [&](const TensorElement& e) {
    return e.is_zero() && e.arity() == 0 ? e : coproduct_on_leg(e, leg);
  });
  return series_mul(series_mul(place(F.series()), delta), place(F_inv));
}

/// Right-hand condition of the mirrored convention, checked on J = F^{-1}:
/// (Delta (x) Id)(J)(J (x) 1) == (Id (x) Delta)(J)(1 (x) J).
inline Report check_mirrored_cocycle(const Twist& F) {
  Report r{"mirrored cocycle of F^-1", ""};
  TensorSeries J = invert_twist(F);
  auto j12 = map_series(J, [](const TensorElement& t) { return insert_identity_leg(t, 2); });
  auto j23 = map_series(J, [](const TensorElement& t) { return insert_identity_leg(t, 0); });
  auto d1 = map_series(J, [](const TensorElement& t) { return coproduct_on_leg(t, 1); });
  auto d2 = map_series(J, [](const TensorElement& t) { return coproduct_on_leg(t, 2); });
  compare_orders(r, series_mul(d1, j12), series_mul(d2, j23), "(Δ⊗Id)(J)(J⊗1) - (Id⊗Δ)(J)(1⊗J)");
  return r;
}

/// Coassociativity of Delta_F on every generator.
inline Report check_twisted_coassociativity(const Twist& F) {
  Report r{"coassociativity of Δ_F", ""};
  const auto& alg = F.algebra();
  TensorSeries F_inv = invert_twist(F);
  for (int g = 0; g < alg->dim(); ++g) {
    TensorSeries d = twisted_coproduct(F, F_inv, UEAElement::generator(alg, g));
    Report sub{"", ""};
    compare_orders(sub, twisted_coproduct_on_leg(F, F_inv, d, 1), twisted_coproduct_on_leg(F, F_inv, d, 2),
                   "(Δ_F⊗Id)Δ_F(" + alg->name(g) + ") - (Id⊗Δ_F)Δ_F(" + alg->name(g) + ")");
    r.details.push_back(alg->name(g) + ": " + to_string(sub.status));
    if (!sub.passed()) {
      r.fail_at(*sub.lowest_failing_order);
      for (auto& w : sub.witnesses) r.witnesses.push_back(w);
    }
  }
  return r;
}

/// epsilon stays a counit for Delta_F on every generator.
inline Report check_twisted_counit(const Twist& F) {
  Report r{"counit of Δ_F", ""};
  const auto& alg = F.algebra();
  TensorSeries F_inv = invert_twist(F);
  for (int g = 0; g < alg->dim(); ++g) {
    auto x = UEAElement::generator(alg, g);
    TensorSeries d = twisted_coproduct(F, F_inv, x);
    auto target = Series<UEAElement>::constant(x, F.order());
    auto left = map_coeffs<UEAElement>(d, [](const TensorElement& t) { return counit_on_leg(t, 1).to_uea(); });
    auto right = map_coeffs<UEAElement>(d, [](const TensorElement& t) { return counit_on_leg(t, 2).to_uea(); });
    bool ok = left == target && right == target;
    r.details.push_back(alg->name(g) + ": " + (ok ? "ok" : "violated"));
    if (!ok) {
      r.fail();
      r.witness("(ε⊗Id)Δ_F(" + alg->name(g) + ")", render(left));
    }
  }
  return r;
}

namespace detail {

/// Exponent vector of a tensor key, legs concatenated.
inline std::vector<int> exponents(const TensorKey& key, int dim) {
  std::vector<int> e(key.size() * static_cast<std::size_t>(dim), 0);
  for (std::size_t leg = 0; leg < key.size(); ++leg)
    for (int g : key[leg]) ++e[leg * static_cast<std::size_t>(dim) + static_cast<std::size_t>(g)];
  return e;
}

/// Graded lexicographic order on exponent vectors. It is compatible with
/// addition, and leading terms of PBW products are sums of exponents.
inline bool graded_less(const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da < db;
  return a < b;
}

inline TensorKey key_from_exponents(const std::vector<int>& e, int dim, int arity) {
  TensorKey key(static_cast<std::size_t>(arity));
  for (int leg = 0; leg < arity; ++leg)
    for (int g = 0; g < dim; ++g)
      for (int r = 0; r < e[static_cast<std::size_t>(leg * dim + g)]; ++r) key[static_cast<std::size_t>(leg)].push_back(g);
  return key;
}

inline std::pair<TensorKey, Scalar> leading_term(const TensorElement& t, int dim) {
  auto best = t.terms().begin();
  for (auto it = t.terms().begin(); it != t.terms().end(); ++it)
    if (graded_less(exponents(best->first, dim), exponents(it->first, dim))) best = it;
  return *best;
}

}  // namespace detail

/// Exact right division in U^{(x)k}: returns q with q * divisor == dividend, or
/// nullopt if divisor does not divide. U(g) is a domain whose PBW leading terms
/// multiply, so the leading-term division algorithm decides this exactly.
inline std::optional<TensorElement> right_divide(const TensorElement& dividend, const TensorElement& divisor) {
  if (divisor.is_zero()) return std::nullopt;
  const int dim = divisor.algebra()->dim();
  const int arity = divisor.arity();
  auto [lead_key, lead_coeff] = detail::leading_term(divisor, dim);
  const auto lead_exp = detail::exponents(lead_key, dim);
  const Scalar lead_inv = *lead_coeff.inverse();
  TensorElement quotient = TensorElement::identity(divisor.algebra(), arity, Scalar(0));
  TensorElement rest = dividend.is_zero() ? quotient : dividend;
  while (!rest.is_zero()) {
    auto [k, c] = detail::leading_term(rest, dim);
    auto e = detail::exponents(k, dim);
    for (std::size_t p = 0; p < e.size(); ++p) {
      e[p] -= lead_exp[p];
      if (e[p] < 0) return std::nullopt;
    }
    TensorElement step(divisor.algebra(), arity, {{detail::key_from_exponents(e, dim, arity), c * lead_inv}});
    quotient = quotient + step;
    rest = rest - step * divisor;
  }
  return quotient;
}

/// F -> F F_0^{-1}, so that the result starts at 1 (x) 1 and Delta_{F~} = Delta_F.
///
/// F_0 must commute with Delta(x) for every generator x. If F_0 is a nonzero
/// multiple of 1 (x) 1 this is a plain rescaling. Otherwise F_0 is not a unit
/// of U (x) U (whose units are the nonzero scalars), and F F_0^{-1} is computed
/// as the exact right quotient of every F_k by F_0, failing if it does not exist.
inline Twist gauge_normalize(const LieAlgebraPtr& alg, const TensorSeries& F) {
  const TensorElement& head = F[0];
  if (head.is_zero()) throw DomainError("F_0 = 0 is not invertible");
  for (int g = 0; g < alg->dim(); ++g) {
    TensorElement d = coproduct(UEAElement::generator(alg, g));
    if (!(head * d - d * head).is_zero())
      throw DomainError("F_0 does not commute with Δ(" + alg->name(g) + ")");
  }
  if (auto c = head.as_scalar()) return Twist(alg, F * *c->inverse());
  TensorSeries out(F.order());
  for (std::size_t k = 0; k <= F.order(); ++k) {
    auto q = right_divide(F[k], head);
    if (!q) throw DomainError("F_0 = " + render(head) + " is not invertible and does not divide F_" + std::to_string(k));
    out[k] = *q;
  }
  return Twist(alg, out);
}

/// Delta_{F~} agrees with Delta_F on generators, tested without inverting F
/// through Delta_{F~}(x) F == F Delta(x).
inline Report check_gauge_equivalence(const LieAlgebraPtr& alg, const TensorSeries& F, const Twist& normalized) {
  Report r{"Δ_F~ == Δ_F on generators", ""};
  TensorSeries n_inv = invert_twist(normalized);
  for (int g = 0; g < alg->dim(); ++g) {
    auto x = UEAElement::generator(alg, g);
    TensorSeries lhs = series_mul(twisted_coproduct(normalized, n_inv, x), F);
    TensorSeries rhs = series_mul(F, TensorSeries::constant(coproduct(x), F.order()));
    Report sub{"", ""};
    compare_orders(sub, lhs, rhs, "Δ_F~(" + alg->name(g) + ")F - FΔ(" + alg->name(g) + ")");
    r.details.push_back(alg->name(g) + ": " + to_string(sub.status));
    if (!sub.passed()) {
      r.fail_at(*sub.lowest_failing_order);
      for (auto& w : sub.witnesses) r.witnesses.push_back(w);
    }
  }
  return r;
}

}  // namespace twistkit
