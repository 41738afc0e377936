#pragma once

// Universal enveloping algebra U(g) in the PBW basis, its tensor powers, the
// coproduct and the counit.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/lie_algebra.hpp"
#include "twistkit/scalar.hpp"
#include "twistkit/series.hpp"

namespace twistkit {

namespace detail {

inline const LieAlgebraPtr& common_algebra(const LieAlgebraPtr& a, const LieAlgebraPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a != b) throw StructuralError("elements belong to different Lie algebras");
  return a;
}

inline Monomial concat(const Monomial& a, const Monomial& b) {
  Monomial w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

}  // namespace detail

/// Element of U(g). A default-constructed element is an untyped zero that
/// adopts the algebra of whatever it is combined with.
class UEAElement {
public:
  UEAElement() = default;
  UEAElement(LieAlgebraPtr alg, PbwTerms terms) : alg_(std::move(alg)), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (!std::is_sorted(it->first.begin(), it->first.end()))
        throw StructuralError("UEAElement monomial is not normal-ordered");
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
  }

  static UEAElement one(LieAlgebraPtr alg) { return scalar(std::move(alg), Scalar(1)); }
  static UEAElement scalar(LieAlgebraPtr alg, const Scalar& c) { return UEAElement(std::move(alg), {{Monomial{}, c}}); }
  static UEAElement generator(LieAlgebraPtr alg, int i) {
    if (i < 0 || i >= alg->dim()) throw StructuralError("generator index out of range");
    return UEAElement(std::move(alg), {{Monomial{i}, Scalar(1)}});
  }
  /// Normal form of an arbitrary word times `coeff`.
  static UEAElement from_word(LieAlgebraPtr alg, const std::vector<int>& word, const Scalar& coeff = Scalar(1)) {
    PbwTerms t;
    for (const auto& [m, c] : alg->normal_form(word)) accumulate(t, m, c * coeff);
    return UEAElement(std::move(alg), std::move(t));
  }

  const LieAlgebraPtr& algebra() const { return alg_; }
  const PbwTerms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }

  friend UEAElement operator+(const UEAElement& a, const UEAElement& b) {
    UEAElement out(detail::common_algebra(a.alg_, b.alg_), a.terms_);
    for (const auto& [m, c] : b.terms_) accumulate(out.terms_, m, c);
    return out;
  }
  friend UEAElement operator-(const UEAElement& a, const UEAElement& b) { return a + b * Scalar(-1); }
  friend UEAElement operator*(const UEAElement& a, const Scalar& s) {
    UEAElement out;
    out.alg_ = a.alg_;
    if (s.is_zero()) return out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, c * s);
    return out;
  }
  friend UEAElement operator*(const Scalar& s, const UEAElement& a) { return a * s; }
  /// Concatenate-then-normalize, extended bilinearly.
  friend UEAElement operator*(const UEAElement& a, const UEAElement& b) {
    UEAElement out;
    out.alg_ = detail::common_algebra(a.alg_, b.alg_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Scalar c = ca * cb;
        for (const auto& [m, mc] : out.alg_->normal_form(detail::concat(ma, mb))) accumulate(out.terms_, m, mc * c);
      }
    return out;
  }
  friend bool operator==(const UEAElement& a, const UEAElement& b) { return (a - b).is_zero(); }
  friend bool operator!=(const UEAElement& a, const UEAElement& b) { return !(a == b); }

private:
  LieAlgebraPtr alg_;
  PbwTerms terms_;
};

inline UEAElement uea_mul(const UEAElement& a, const UEAElement& b) { return a * b; }

inline UEAElement pbw_normalize(const LieAlgebraPtr& alg, const std::vector<int>& word, const Scalar& coeff) {
  return UEAElement::from_word(alg, word, coeff);
}

/// Counit: the coefficient of the empty monomial.
inline Scalar counit(const UEAElement& a) { return a.coefficient(Monomial{}); }

inline std::string render(const UEAElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*" + a.algebra()->render(m);
  }
  return out;
}

using TensorKey = std::vector<Monomial>;
using TensorTerms = std::map<TensorKey, Scalar>;

/// Element of U^{(x)k}. Like UEAElement, default construction gives an untyped
/// zero (arity 0) that adopts arity and algebra on first combination.
class TensorElement {
public:
  TensorElement() = default;
  TensorElement(LieAlgebraPtr alg, int arity, TensorTerms terms)
      : alg_(std::move(alg)), arity_(arity), terms_(std::move(terms)) {
    if (arity_ < 1) throw StructuralError("tensor arity must be at least 1");
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (static_cast<int>(it->first.size()) != arity_) throw StructuralError("tensor key with wrong number of legs");
      for (const auto& leg : it->first)
        if (!std::is_sorted(leg.begin(), leg.end())) throw StructuralError("tensor leg is not normal-ordered");
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
  }

  /// c * 1 (x) ... (x) 1
  static TensorElement identity(LieAlgebraPtr alg, int arity, const Scalar& c = Scalar(1)) {
    return TensorElement(std::move(alg), arity, {{TensorKey(arity), c}});
  }
  /// a_1 (x) ... (x) a_k
  static TensorElement product(const std::vector<UEAElement>& legs) {
    if (legs.empty()) throw StructuralError("tensor product of zero legs");
    LieAlgebraPtr alg;
    for (const auto& l : legs) alg = detail::common_algebra(alg, l.algebra());
    TensorTerms acc{{TensorKey{}, Scalar(1)}};
    for (const auto& leg : legs) {
      TensorTerms next;
      for (const auto& [k, c] : acc)
        for (const auto& [m, mc] : leg.terms()) {
          TensorKey key = k;
          key.push_back(m);
          next.emplace(std::move(key), c * mc);
        }
      acc = std::move(next);
    }
    return TensorElement(std::move(alg), static_cast<int>(legs.size()), std::move(acc));
  }
  static TensorElement from_uea(const UEAElement& a) {
    TensorTerms t;
    for (const auto& [m, c] : a.terms()) t.emplace(TensorKey{m}, c);
    return TensorElement(a.algebra(), 1, std::move(t));
  }

  const LieAlgebraPtr& algebra() const { return alg_; }
  int arity() const { return arity_; }
  const TensorTerms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const TensorKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar() : it->second;
  }

  /// Arity-1 tensors are elements of U.
  UEAElement to_uea() const {
    if (arity_ > 1) throw StructuralError("tensor of arity " + std::to_string(arity_) + " is not an element of U");
    PbwTerms t;
    for (const auto& [k, c] : terms_) t.emplace(k[0], c);
    return UEAElement(alg_, std::move(t));
  }

  /// If this is c * 1(x)...(x)1, returns c.
  std::optional<Scalar> as_scalar() const {
    if (terms_.empty()) return Scalar();
    if (terms_.size() != 1) return std::nullopt;
    const auto& [k, c] = *terms_.begin();
    for (const auto& leg : k)
      if (!leg.empty()) return std::nullopt;
    return c;
  }

  void add_term(const TensorKey& key, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend TensorElement operator+(const TensorElement& a, const TensorElement& b) {
    TensorElement out = a;
    out.adopt(b);
    for (const auto& [k, c] : b.terms_) out.add_term(k, c);
    return out;
  }
  friend TensorElement operator-(const TensorElement& a, const TensorElement& b) { return a + b * Scalar(-1); }
  friend TensorElement operator*(const TensorElement& a, const Scalar& s) {
    TensorElement out;
    out.alg_ = a.alg_;
    out.arity_ = a.arity_;
    if (s.is_zero()) return out;
    for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, c * s);
    return out;
  }
  friend TensorElement operator*(const Scalar& s, const TensorElement& a) { return a * s; }
  /// Leg-wise product in U, extended bilinearly.
  friend TensorElement operator*(const TensorElement& a, const TensorElement& b) {
    TensorElement out;
    out.adopt(a);
    out.adopt(b);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        TensorTerms acc{{TensorKey{}, ca * cb}};
        for (int leg = 0; leg < out.arity_; ++leg) {
          const Monomial& la = ka[leg];
          const Monomial& lb = kb[leg];
          TensorTerms next;
          if (la.empty() || lb.empty()) {
            const Monomial& m = la.empty() ? lb : la;
            for (auto& [k, c] : acc) {
              TensorKey key = k;
              key.push_back(m);
              next.emplace(std::move(key), c);
            }
          } else {
            PbwTerms prod = out.alg_->normal_form(detail::concat(la, lb));
            for (const auto& [k, c] : acc)
              for (const auto& [m, mc] : prod) {
                TensorKey key = k;
                key.push_back(m);
                next.emplace(std::move(key), c * mc);
              }
          }
          acc = std::move(next);
        }
        for (const auto& [k, c] : acc) out.add_term(k, c);
      }
    return out;
  }
  friend bool operator==(const TensorElement& a, const TensorElement& b) { return (a - b).is_zero(); }
  friend bool operator!=(const TensorElement& a, const TensorElement& b) { return !(a == b); }

private:
  void adopt(const TensorElement& o) {
    alg_ = detail::common_algebra(alg_, o.alg_);
    if (o.arity_ == 0) return;
    if (arity_ == 0)
      arity_ = o.arity_;
    else if (arity_ != o.arity_)
      throw StructuralError("tensor arity mismatch: " + std::to_string(arity_) + " vs " + std::to_string(o.arity_));
  }

  LieAlgebraPtr alg_;
  int arity_ = 0;
  TensorTerms terms_;
};

inline TensorElement tensor_mul(const TensorElement& a, const TensorElement& b) {
  if (a.arity() != 0 && b.arity() != 0 && a.arity() != b.arity())
    throw StructuralError("tensor arity mismatch: " + std::to_string(a.arity()) + " vs " + std::to_string(b.arity()));
  return a * b;
}

/// Units of U(g)^{(x)k} are the nonzero multiples of the identity.
inline std::optional<TensorElement> head_inverse(const TensorElement& t) {
  auto c = t.as_scalar();
  if (!c || c->is_zero()) return std::nullopt;
  if (t.arity() == 0) return std::nullopt;
  return TensorElement::identity(t.algebra(), t.arity(), *c->inverse());
}

inline std::string render(const TensorElement& t) {
  if (t.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : t.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*[";
    for (std::size_t leg = 0; leg < k.size(); ++leg) {
      if (leg) out += " ⊗ ";
      out += t.algebra()->render(k[leg]);
    }
    out += "]";
  }
  return out;
}

namespace detail {

/// All (selected, complement) splittings of an ordered monomial with their
/// multiplicities, i.e. the coproduct of a product of primitive generators.
inline std::map<std::pair<Monomial, Monomial>, long> monomial_coproduct_counts(const Monomial& m) {
  if (m.size() > 24) throw DomainError("monomial too long for coproduct expansion");
  std::map<std::pair<Monomial, Monomial>, long> counts;
  const std::uint32_t n = static_cast<std::uint32_t>(m.size());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Monomial left, right;
    for (std::uint32_t p = 0; p < n; ++p) ((mask >> p) & 1u ? left : right).push_back(m[p]);
    ++counts[{std::move(left), std::move(right)}];
  }
  return counts;
}

}  // namespace detail

/// Algebra morphism with generators primitive. Subsequences of an ordered
/// monomial are ordered, so no re-normalization is needed.
inline TensorElement coproduct(const UEAElement& a) {
  TensorElement out = TensorElement::identity(a.algebra(), 2, Scalar(0));
  for (const auto& [m, c] : a.terms())
    for (const auto& [pr, cnt] : detail::monomial_coproduct_counts(m))
      out.add_term(TensorKey{pr.first, pr.second}, c * Scalar(cnt));
  return out;
}

/// Applies the coproduct to leg `leg` (1-based), raising the arity by one.
inline TensorElement coproduct_on_leg(const TensorElement& t, int leg) {
  if (leg < 1 || leg > t.arity())
    throw StructuralError("coproduct leg " + std::to_string(leg) + " out of range for arity " + std::to_string(t.arity()));
  TensorElement out = TensorElement::identity(t.algebra(), t.arity() + 1, Scalar(0));
  for (const auto& [k, c] : t.terms())
    for (const auto& [pr, cnt] : detail::monomial_coproduct_counts(k[leg - 1])) {
      TensorKey key;
      key.reserve(k.size() + 1);
      key.insert(key.end(), k.begin(), k.begin() + (leg - 1));
      key.push_back(pr.first);
      key.push_back(pr.second);
      key.insert(key.end(), k.begin() + leg, k.end());
      out.add_term(key, c * Scalar(cnt));
    }
  return out;
}

/// Applies the counit to leg `leg` (1-based), lowering the arity by one.
inline TensorElement counit_on_leg(const TensorElement& t, int leg) {
  if (leg < 1 || leg > t.arity() || t.arity() < 2)
    throw StructuralError("counit leg " + std::to_string(leg) + " out of range for arity " + std::to_string(t.arity()));
  TensorElement out = TensorElement::identity(t.algebra(), t.arity() - 1, Scalar(0));
  for (const auto& [k, c] : t.terms()) {
    if (!k[leg - 1].empty()) continue;
    TensorKey key = k;
    key.erase(key.begin() + (leg - 1));
    out.add_term(key, c);
  }
  return out;
}

/// Inserts an identity leg at position `pos` (0 = front, arity = back):
/// F -> 1 (x) F or F (x) 1.
inline TensorElement insert_identity_leg(const TensorElement& t, int pos) {
  if (pos < 0 || pos > t.arity()) throw StructuralError("identity leg position out of range");
  TensorElement out = TensorElement::identity(t.algebra(), t.arity() + 1, Scalar(0));
  for (const auto& [k, c] : t.terms()) {
    TensorKey key = k;
    key.insert(key.begin() + pos, Monomial{});
    out.add_term(key, c);
  }
  return out;
}

using TensorSeries = Series<TensorElement>;

/// Applies a coefficient-wise map to a tensor series.
template <class F>
TensorSeries map_series(const TensorSeries& s, F&& f) {
  TensorSeries out(s.order());
  for (std::size_t k = 0; k <= s.order(); ++k) out[k] = f(s[k]);
  return out;
}

}  // namespace twistkit
