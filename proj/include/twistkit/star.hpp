#pragma once

// Twist star products f * g = m o F^{-1} (|> (x) |>)(f (x) g) on function
// models, their axioms, B_k extraction, and equivalence transformations
// T = Id + sum h^k T_k.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/function_model.hpp"
#include "twistkit/report.hpp"
#include "twistkit/twist.hpp"

namespace twistkit {

/// (f, g) -> m(F^{-1} (|>_left (x) |>_right)(f (x) g)) with m pointwise
/// multiplication. Star products and the deformed module actions are all of
/// this shape; values on pairs of basis elements are memoized.
template <class Basis>
class TwistedProduct {
public:
  using Fn = Function<Basis>;
  using Action = ActionAssignment<Basis>;

  TwistedProduct(TensorSeries F_inv, std::shared_ptr<const Action> left, std::shared_ptr<const Action> right)
      : F_inv_(std::move(F_inv)), left_(std::move(left)), right_(std::move(right)), cache_(std::make_shared<Cache>()) {
    if (!(left_->basis() == right_->basis())) throw StructuralError("twisted product across different models");
  }

  std::size_t order() const { return F_inv_.order(); }
  const Basis& basis() const { return left_->basis(); }

  Fn operator()(const Fn& f, const Fn& g) const {
    f.check(g);
    if (f.order() != order())
      throw StructuralError("function order " + std::to_string(f.order()) + " does not match product order " +
                            std::to_string(order()));
    Fn out(basis(), order());
    for (const auto& [ka, ca] : f.terms())
      for (const auto& [kb, cb] : g.terms()) out = out + on_basis(ka, kb) * series_mul(ca, cb);
    return out;
  }

  /// The undeformed pairing's h^0 part: pointwise multiplication.
  Fn classical(const Fn& f, const Fn& g) const { return f * g; }

private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<BasisKey, BasisKey>, Fn> values;
  };

  Fn on_basis(const BasisKey& a, const BasisKey& b) const {
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->values.find({a, b});
      if (it != cache_->values.end()) return it->second;
    }
    const std::size_t n = order();
    Fn fa = Fn::basis_element(basis(), a, n);
    Fn fb = Fn::basis_element(basis(), b, n);
    Fn out(basis(), n);
    for (std::size_t k = 0; k <= n; ++k) {
      if (F_inv_[k].is_zero()) continue;
      ScalarSeries hk = ScalarSeries::monomial(Scalar(1), k, n);
      for (const auto& [key, c] : F_inv_[k].terms()) {
        Fn la = left_->represent_monomial(key[0], fa);
        if (la.is_zero()) continue;
        Fn rb = right_->represent_monomial(key[1], fb);
        if (rb.is_zero()) continue;
        out = out + (la * rb) * (hk * c);
      }
    }
    std::lock_guard lock(cache_->mutex);
    cache_->values.emplace(std::make_pair(a, b), out);
    return out;
  }

  TensorSeries F_inv_;
  std::shared_ptr<const Action> left_;
  std::shared_ptr<const Action> right_;
  std::shared_ptr<Cache> cache_;
};

template <class Basis>
class StarAlgebra {
public:
  using Fn = Function<Basis>;
  using Action = ActionAssignment<Basis>;

  /// With `require_cocycle`, the twist must pass the cocycle and counitality
  /// checks; without it the product can still be built for diagnostics.
  StarAlgebra(Twist twist, std::shared_ptr<const Action> action, std::optional<PoissonStructure> poisson = std::nullopt,
              bool require_cocycle = true)
      : twist_(std::move(twist)), action_(std::move(action)), poisson_(std::move(poisson)),
        F_inv_(invert_twist(twist_)), product_(F_inv_, action_, action_) {
    if (twist_.algebra() != action_->algebra()) throw StructuralError("twist and action use different Lie algebras");
    if (!twist_.is_normalized()) throw DomainError("twist is not normalized (F_0 != 1⊗1); apply gauge_normalize first");
    if (!action_->by_derivations()) throw DomainError("a star product needs an action by derivations");
    if (auto problems = action_->validate(); !problems.empty()) throw DomainError(problems.front());
    cocycle_verified_ = check_cocycle(twist_).passed() && check_counitality(twist_).passed();
    if (require_cocycle && !cocycle_verified_) throw DomainError("twist fails the cocycle or counitality check");
  }

  std::size_t order() const { return twist_.order(); }
  const Basis& basis() const { return action_->basis(); }
  const Twist& twist() const { return twist_; }
  const TensorSeries& twist_inverse() const { return F_inv_; }
  const std::shared_ptr<const Action>& action() const { return action_; }
  const std::optional<PoissonStructure>& poisson() const { return poisson_; }
  bool cocycle_verified() const { return cocycle_verified_; }

  Fn star(const Fn& f, const Fn& g) const {
    if (!(f.basis() == basis()) || !(g.basis() == basis())) throw StructuralError("function from a different model");
    return product_(f, g);
  }
  Fn one() const { return Fn::one(basis(), order()); }
  Fn element(const BasisKey& key, const Scalar& c = Scalar(1)) const { return Fn::basis_element(basis(), key, order(), c); }

private:
  Twist twist_;
  std::shared_ptr<const Action> action_;
  std::optional<PoissonStructure> poisson_;
  TensorSeries F_inv_;
  TwistedProduct<Basis> product_;
  bool cocycle_verified_ = false;
};

template <class Basis>
Function<Basis> star_eval(const StarAlgebra<Basis>& S, const Function<Basis>& f, const Function<Basis>& g) {
  return S.star(f, g);
}

/// Coefficient of h^k in f * g for h-constant f, g.
template <class Basis>
Function<Basis> extract_Bk(const StarAlgebra<Basis>& S, const Function<Basis>& f, const Function<Basis>& g, std::size_t k) {
  if (!f.is_h_constant() || !g.is_h_constant()) throw DomainError("B_k is only defined on h-constant inputs");
  if (k > S.order()) throw DomainError("B_k requested beyond the truncation order");
  return S.star(f, g).at_order(k);
}

template <class Basis>
using BinaryProduct = std::function<Function<Basis>(const Function<Basis>&, const Function<Basis>&)>;

template <class Basis>
struct Triple {
  Function<Basis> a, b, c;
};

/// All basis elements within the cutoff, as h-constant functions at order N.
template <class Basis>
std::vector<Function<Basis>> basis_samples(const Basis& basis, int cutoff, std::size_t order) {
  std::vector<Function<Basis>> out;
  for (const auto& key : basis.sample_keys(cutoff)) out.push_back(Function<Basis>::basis_element(basis, key, order));
  return out;
}

/// Every ordered triple of basis samples.
template <class Basis>
std::vector<Triple<Basis>> basis_triples(const Basis& basis, int cutoff, std::size_t order) {
  auto s = basis_samples(basis, cutoff, order);
  std::vector<Triple<Basis>> out;
  out.reserve(s.size() * s.size() * s.size());
  for (const auto& a : s)
    for (const auto& b : s)
      for (const auto& c : s) out.push_back({a, b, c});
  return out;
}

/// Random linear combinations of 1-3 basis elements with small Gaussian
/// rational coefficients; deterministic in `seed`.
template <class Basis>
std::vector<Function<Basis>> random_samples(const Basis& basis, int cutoff, std::size_t order, std::size_t count,
                                            unsigned seed) {
  std::mt19937 rng(seed);
  auto keys = basis.sample_keys(cutoff);
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  std::uniform_int_distribution<int> terms(1, 3), num(-4, 4), den(1, 3);
  std::vector<Function<Basis>> out;
  for (std::size_t s = 0; s < count; ++s) {
    Function<Basis> f(basis, order);
    const int t = terms(rng);
    for (int j = 0; j < t; ++j) {
      int re = num(rng), rd = den(rng), im = num(rng), id = den(rng);
      Scalar c(mpq_class(re, rd), mpq_class(im, id));
      if (c.is_zero()) c = Scalar(1);
      f = f + Function<Basis>::basis_element(basis, keys[pick(rng)], order, c);
    }
    out.push_back(std::move(f));
  }
  return out;
}

template <class Basis>
std::vector<Triple<Basis>> random_triples(const Basis& basis, int cutoff, std::size_t order, std::size_t count,
                                          unsigned seed) {
  auto s = random_samples(basis, cutoff, order, 3 * count, seed);
  std::vector<Triple<Basis>> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back({s[3 * k], s[3 * k + 1], s[3 * k + 2]});
  return out;
}

namespace detail {

/// Records a failing sample: lowest differing order, first few witnesses.
template <class Basis>
void record_difference(Report& r, const Function<Basis>& lhs, const Function<Basis>& rhs, const std::string& sample,
                       std::size_t& failures) {
  Function<Basis> diff = lhs - rhs;
  if (diff.is_zero()) return;
  std::size_t lowest = diff.order();
  for (const auto& [k, c] : diff.terms()) lowest = std::min(lowest, *c.valuation());
  const bool new_lowest = !r.lowest_failing_order || lowest < *r.lowest_failing_order;
  r.fail_at(lowest);
  if (failures < 3 || new_lowest) r.witness(sample + " (lowest order " + std::to_string(lowest) + ")", diff.render());
  ++failures;
}

template <class Basis>
void finish(Report& r, std::size_t samples, std::size_t failures) {
  r.details.push_back(std::to_string(samples) + " samples, " + std::to_string(failures) + " failing");
}

}  // namespace detail

/// (f * g) * h == f * (g * h) on every triple.
template <class Basis>
Report check_associativity(const BinaryProduct<Basis>& star, const std::vector<Triple<Basis>>& triples,
                           std::string subject = "") {
  Report r{"associativity", std::move(subject)};
  std::size_t failures = 0;
  for (const auto& t : triples)
    detail::record_difference(r, star(star(t.a, t.b), t.c), star(t.a, star(t.b, t.c)),
                              "(" + t.a.render() + ", " + t.b.render() + ", " + t.c.render() + ")", failures);
  detail::finish<Basis>(r, triples.size(), failures);
  return r;
}

template <class Basis>
Report check_associativity(const StarAlgebra<Basis>& S, const std::vector<Triple<Basis>>& triples) {
  return check_associativity<Basis>([&S](const auto& f, const auto& g) { return S.star(f, g); }, triples);
}

/// f * 1 == 1 * f == f.
template <class Basis>
Report check_unitality(const BinaryProduct<Basis>& star, const Function<Basis>& one,
                       const std::vector<Function<Basis>>& samples, std::string subject = "") {
  Report r{"unitality", std::move(subject)};
  std::size_t failures = 0;
  for (const auto& f : samples) {
    detail::record_difference(r, star(f, one), f, "f*1 for f = " + f.render(), failures);
    detail::record_difference(r, star(one, f), f, "1*f for f = " + f.render(), failures);
  }
  detail::finish<Basis>(r, samples.size(), failures);
  return r;
}

/// f * g == fg mod h.
template <class Basis>
Report check_classical_limit(const BinaryProduct<Basis>& star, const std::vector<Function<Basis>>& samples,
                             std::string subject = "") {
  Report r{"h^0 term is the pointwise product", std::move(subject)};
  std::size_t failures = 0;
  for (const auto& f : samples)
    for (const auto& g : samples)
      detail::record_difference(r, star(f, g).at_order(0), (f * g).at_order(0), "(" + f.render() + ", " + g.render() + ")",
                                failures);
  detail::finish<Basis>(r, samples.size() * samples.size(), failures);
  return r;
}

/// B_1(f, g) - B_1(g, f) == i {f, g} on all pairs of samples.
template <class Basis>
Report check_first_order_poisson(const BinaryProduct<Basis>& star, const std::optional<PoissonStructure>& poisson,
                                 const std::vector<Function<Basis>>& samples, std::string subject = "") {
  if (!poisson) throw DomainError("no Poisson structure declared for this model");
  Report r{"first-order Poisson compatibility", std::move(subject)};
  std::size_t failures = 0;
  for (const auto& f : samples)
    for (const auto& g : samples) {
      auto lhs = star(f, g).at_order(1) - star(g, f).at_order(1);
      auto rhs = poisson->bracket(f.at_order(0), g.at_order(0)) * Scalar::i();
      detail::record_difference(r, lhs.at_order(0), rhs.at_order(0), "(" + f.render() + ", " + g.render() + ")", failures);
    }
  // record_difference reports order 0 of the h-constant difference; the identity lives at order 1
  if (r.lowest_failing_order) r.lowest_failing_order = 1;
  detail::finish<Basis>(r, samples.size() * samples.size(), failures);
  return r;
}

template <class Basis>
Report check_first_order_poisson(const StarAlgebra<Basis>& S, int cutoff) {
  if (S.order() < 1) throw DomainError("the Poisson check needs truncation order >= 1");
  return check_first_order_poisson<Basis>([&S](const auto& f, const auto& g) { return S.star(f, g); }, S.poisson(),
                                          basis_samples(S.basis(), cutoff, S.order()));
}

/// T = Id + sum_{k>=1} h^k T_k with differential operators T_k. Stored as the
/// correction D = T - Id, an operator whose coefficients vanish at h^0.
template <class Basis>
class EquivalenceMap {
public:
  using Fn = Function<Basis>;
  using Op = DiffOp<Basis>;

  explicit EquivalenceMap(Op correction) : correction_(std::move(correction)), inverse_correction_(correction_.basis(), correction_.order()) {
    if (!correction_.at_order(0).is_zero()) throw DomainError("T must equal Id at order h^0");
    Fn one = Fn::one(correction_.basis(), correction_.order());
    Fn t1 = correction_.apply(one);
    if (!t1.is_zero()) throw DomainError("T(1) != 1: T(1) - 1 = " + t1.render());
    // T^{-1} = sum_j (-D)^j, finite because D = O(h)
    Op power = Op::identity(correction_.basis(), correction_.order());
    Op minus_d = correction_ * Scalar(-1);
    for (std::size_t j = 1; j <= correction_.order(); ++j) {
      power = power * minus_d;
      if (power.is_zero()) break;
      inverse_correction_ = inverse_correction_ + power;
    }
  }

  std::size_t order() const { return correction_.order(); }
  const Op& correction() const { return correction_; }

  Fn apply(const Fn& f) const { return f + correction_.apply(f); }
  Fn apply_inverse(const Fn& f) const { return f + inverse_correction_.apply(f); }

private:
  Op correction_;
  Op inverse_correction_;
};

/// f *' g := T(T^{-1} f * T^{-1} g).
template <class Basis>
BinaryProduct<Basis> apply_equivalence(const EquivalenceMap<Basis>& T, const StarAlgebra<Basis>& S) {
  if (T.order() != S.order()) throw StructuralError("equivalence map and star product have different orders");
  return [T, &S](const Function<Basis>& f, const Function<Basis>& g) {
    return T.apply(S.star(T.apply_inverse(f), T.apply_inverse(g)));
  };
}

/// T(f * g) == T(f) *' T(g) on all sample pairs.
template <class Basis>
Report check_intertwining(const EquivalenceMap<Basis>& T, const StarAlgebra<Basis>& S, const BinaryProduct<Basis>& deformed,
                          const std::vector<Function<Basis>>& samples) {
  Report r{"T(f*g) == T(f)*'T(g)", ""};
  std::size_t failures = 0;
  for (const auto& f : samples)
    for (const auto& g : samples)
      detail::record_difference(r, T.apply(S.star(f, g)), deformed(T.apply(f), T.apply(g)),
                                "(" + f.render() + ", " + g.render() + ")", failures);
  detail::finish<Basis>(r, samples.size() * samples.size(), failures);
  return r;
}

}  // namespace twistkit
