#pragma once

// U-equivariant bimodules of sections of a trivial bundle, their deformation
// by a twist, and the endomorphism representation psi(f) s = lambda_F(f, s).
//
// Sections live in the same function model as A and B; the left and right
// module maps are pointwise multiplication. The action on sections may differ
// from the action on functions by a potential term.

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/function_model.hpp"
#include "twistkit/report.hpp"
#include "twistkit/star.hpp"
#include "twistkit/twist.hpp"

namespace twistkit {

template <class Basis>
class EquivariantBimodule {
public:
  using Fn = Function<Basis>;
  using Action = ActionAssignment<Basis>;

  EquivariantBimodule(std::shared_ptr<const Action> on_a, std::shared_ptr<const Action> on_sections,
                      std::shared_ptr<const Action> on_b)
      : a_(std::move(on_a)), n_(std::move(on_sections)), b_(std::move(on_b)) {
    if (a_->algebra() != n_->algebra() || a_->algebra() != b_->algebra())
      throw StructuralError("bimodule actions use different Lie algebras");
    if (!(a_->basis() == n_->basis()) || !(a_->basis() == b_->basis()))
      throw StructuralError("bimodule actions live on different models");
    if (!a_->by_derivations() || !b_->by_derivations()) throw DomainError("A and B must be acted on by derivations");
    for (const auto* act : {a_.get(), n_.get(), b_.get()})
      if (auto problems = act->validate(); !problems.empty()) throw DomainError(problems.front());
  }

  /// Module with A = B = N and the same action everywhere.
  static EquivariantBimodule trivial(std::shared_ptr<const Action> action) { return {action, action, action}; }

  const std::shared_ptr<const Action>& action_a() const { return a_; }
  const std::shared_ptr<const Action>& action_sections() const { return n_; }
  const std::shared_ptr<const Action>& action_b() const { return b_; }
  const Basis& basis() const { return a_->basis(); }
  const LieAlgebraPtr& algebra() const { return a_->algebra(); }

  Fn left(const Fn& a, const Fn& s) const { return a * s; }
  Fn right(const Fn& s, const Fn& b) const { return s * b; }

  /// x |> (a s b) == (x|>a) s b + a (x|>s) b + a s (x|>b) for every generator,
  /// on all basis triples within the cutoff.
  Report check_classical_equivariance(int cutoff) const {
    Report r{"undeformed equivariance (Leibniz)", ""};
    auto samples = basis_samples(basis(), cutoff, 0);
    std::size_t failures = 0, count = 0;
    for (int g = 0; g < algebra()->dim(); ++g)
      for (const auto& a : samples)
        for (const auto& s : samples)
          for (const auto& b : samples) {
            Fn lhs = n_->act_generator(g, a * s * b);
            Fn rhs = a_->act_generator(g, a) * s * b + a * n_->act_generator(g, s) * b + a * s * b_->act_generator(g, b);
            detail::record_difference(r, lhs, rhs, algebra()->name(g) + " on (" + a.render() + ", " + s.render() + ", " + b.render() + ")",
                                      failures);
            ++count;
          }
    detail::finish<Basis>(r, count, failures);
    return r;
  }

private:
  std::shared_ptr<const Action> a_, n_, b_;
};

template <class Basis>
class DeformedModule {
public:
  using Fn = Function<Basis>;

  DeformedModule(EquivariantBimodule<Basis> base, Twist twist)
      : base_(std::move(base)), twist_(std::move(twist)), F_inv_(invert_twist(twist_)),
        lambda_(F_inv_, base_.action_a(), base_.action_sections()),
        rho_(F_inv_, base_.action_sections(), base_.action_b()),
        m_a_(F_inv_, base_.action_a(), base_.action_a()),
        m_b_(F_inv_, base_.action_b(), base_.action_b()) {}

  const EquivariantBimodule<Basis>& base() const { return base_; }
  const Twist& twist() const { return twist_; }
  const TensorSeries& twist_inverse() const { return F_inv_; }
  std::size_t order() const { return twist_.order(); }
  const Basis& basis() const { return base_.basis(); }

  /// lambda_F(a, s) = lambda(F^{-1}(|> (x) |>)(a (x) s))
  Fn left(const Fn& a, const Fn& s) const { return lambda_(a, s); }
  /// rho_F(s, b) = rho(F^{-1}(|> (x) |>)(s (x) b))
  Fn right(const Fn& s, const Fn& b) const { return rho_(s, b); }
  /// Deformed products of A_F and B_F.
  Fn product_a(const Fn& a, const Fn& a2) const { return m_a_(a, a2); }
  Fn product_b(const Fn& b, const Fn& b2) const { return m_b_(b, b2); }
  Fn one() const { return Fn::one(basis(), order()); }

private:
  EquivariantBimodule<Basis> base_;
  Twist twist_;
  TensorSeries F_inv_;
  TwistedProduct<Basis> lambda_, rho_, m_a_, m_b_;
};

/// With `require_valid_twist` the twist must be normalized, counital and a
/// cocycle; without it the deformation is built for diagnostics only.
template <class Basis>
DeformedModule<Basis> deform_module(const EquivariantBimodule<Basis>& M, const Twist& F, bool require_valid_twist = true) {
  if (F.algebra() != M.algebra()) throw DomainError("twist and module use different Lie algebras");
  if (!F.is_normalized()) throw DomainError("twist is not normalized (F_0 != 1⊗1)");
  if (require_valid_twist) {
    if (!check_counitality(F).passed()) throw DomainError("twist is not counital");
    if (!check_cocycle(F).passed()) throw DomainError("twist fails the cocycle condition");
  }
  return DeformedModule<Basis>(M, F);
}

/// Left-action, unit, right-action and commutation laws of the deformed
/// bimodule, exactly on the given triples (a, s, b) where the second slot is a
/// section and the others are functions.
template <class Basis>
std::vector<Report> check_module_axioms(const DeformedModule<Basis>& D, const std::vector<Triple<Basis>>& triples) {
  Report left{"left action law λ_F(a*a', s) == λ_F(a, λ_F(a', s))", ""};
  Report unit{"unit laws λ_F(1, s) == s == ρ_F(s, 1)", ""};
  Report right{"right action law ρ_F(ρ_F(s, b), b') == ρ_F(s, b*b')", ""};
  Report commute{"commuting actions λ_F(a, ρ_F(s, b)) == ρ_F(λ_F(a, s), b)", ""};
  std::size_t fl = 0, fu = 0, fr = 0, fc = 0;
  const auto one = D.one();
  auto label = [](const Triple<Basis>& t) {
    return "(" + t.a.render() + ", " + t.b.render() + ", " + t.c.render() + ")";
  };
  std::vector<const Function<Basis>*> seen_sections;
  for (const auto& t : triples) {
    // left: (a, a', s) = (t.a, t.c, t.b); right: (s, b, b') = (t.b, t.a, t.c)
    detail::record_difference(left, D.left(D.product_a(t.a, t.c), t.b), D.left(t.a, D.left(t.c, t.b)), label(t), fl);
    detail::record_difference(right, D.right(D.right(t.b, t.a), t.c), D.right(t.b, D.product_b(t.a, t.c)), label(t), fr);
    detail::record_difference(commute, D.left(t.a, D.right(t.b, t.c)), D.right(D.left(t.a, t.b), t.c), label(t), fc);
  }
  std::size_t unit_samples = 0;
  {
    std::vector<Function<Basis>> sections;
    for (const auto& t : triples) {
      bool dup = false;
      for (const auto& s : sections) dup |= s == t.b;
      if (!dup) sections.push_back(t.b);
    }
    for (const auto& s : sections) {
      detail::record_difference(unit, D.left(one, s), s, "λ_F(1, " + s.render() + ")", fu);
      detail::record_difference(unit, D.right(s, one), s, "ρ_F(" + s.render() + ", 1)", fu);
    }
    unit_samples = sections.size();
  }
  detail::finish<Basis>(left, triples.size(), fl);
  detail::finish<Basis>(right, triples.size(), fr);
  detail::finish<Basis>(commute, triples.size(), fc);
  detail::finish<Basis>(unit, unit_samples, fu);
  return {left, right, unit, commute};
}

/// U_F-equivariance: u |> λ_F(a, ρ_F(s, b)) equals the composition driven by
/// (Id (x) Δ_F)Δ_F(u), for generators and products of two generators.
template <class Basis>
Report check_equivariance(const DeformedModule<Basis>& D, const std::vector<Triple<Basis>>& triples) {
  Report r{"U_F-equivariance", ""};
  const auto& alg = D.base().algebra();
  const auto& act_a = *D.base().action_a();
  const auto& act_n = *D.base().action_sections();
  const auto& act_b = *D.base().action_b();
  std::vector<UEAElement> elements;
  for (int g = 0; g < alg->dim(); ++g) elements.push_back(UEAElement::generator(alg, g));
  for (int g = 0; g < alg->dim(); ++g)
    for (int g2 = g; g2 < alg->dim(); ++g2) elements.push_back(UEAElement::from_word(alg, {g, g2}));

  bool twisted = false;
  std::size_t failures = 0, count = 0;
  for (const auto& u : elements) {
    TensorSeries d = twisted_coproduct(D.twist(), D.twist_inverse(), u);
    if (d != TensorSeries::constant(coproduct(u), D.order())) twisted = true;
    TensorSeries dd = twisted_coproduct_on_leg(D.twist(), D.twist_inverse(), d, 2);
    for (const auto& t : triples) {
      Function<Basis> lhs = act_n.represent(u, D.left(t.a, D.right(t.b, t.c)));
      Function<Basis> rhs(D.basis(), D.order());
      for (std::size_t k = 0; k <= dd.order(); ++k) {
        if (dd[k].is_zero()) continue;
        ScalarSeries hk = ScalarSeries::monomial(Scalar(1), k, D.order());
        for (const auto& [key, c] : dd[k].terms()) {
          auto a = act_a.represent_monomial(key[0], t.a);
          if (a.is_zero()) continue;
          auto s = act_n.represent_monomial(key[1], t.b);
          if (s.is_zero()) continue;
          auto b = act_b.represent_monomial(key[2], t.c);
          if (b.is_zero()) continue;
          rhs = rhs + D.left(a, D.right(s, b)) * (hk * c);
        }
      }
      detail::record_difference(r, lhs, rhs, render(u) + " on (" + t.a.render() + ", " + t.b.render() + ", " + t.c.render() + ")",
                                failures);
      ++count;
    }
  }
  r.details.push_back(std::string("Δ_F differs from Δ on the tested elements: ") + (twisted ? "yes" : "no"));
  detail::finish<Basis>(r, count, failures);
  return r;
}

namespace detail {

/// Exact rank of h-constant functions viewed as vectors over the basis keys.
template <class Basis>
std::size_t function_rank(const std::vector<Function<Basis>>& fs) {
  std::vector<std::map<BasisKey, Scalar>> rows;
  for (const auto& f : fs) {
    std::map<BasisKey, Scalar> row;
    for (const auto& [k, c] : f.terms())
      if (!c[0].is_zero()) row.emplace(k, c[0]);
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].empty()) continue;
    auto [pivot_key, pivot] = *rows[i].begin();
    const Scalar inv = *pivot.inverse();
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      auto it = rows[j].find(pivot_key);
      if (it == rows[j].end()) continue;
      const Scalar factor = it->second * inv;
      for (const auto& [k, c] : rows[i]) {
        auto [jt, inserted] = rows[j].try_emplace(k, -(c * factor));
        if (!inserted) {
          jt->second -= c * factor;
          if (jt->second.is_zero()) rows[j].erase(jt);
        }
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// psi(f): s -> λ_F(f, s).
template <class Basis>
std::function<Function<Basis>(const Function<Basis>&)> psi_endomorphism(const DeformedModule<Basis>& D, const Function<Basis>& f) {
  if (!(f.basis() == D.basis())) throw StructuralError("function belongs to a different model");
  return [&D, f](const Function<Basis>& s) { return D.left(f, s); };
}

/// Evidence that psi is an algebra isomorphism onto right-linear
/// endomorphisms: multiplicativity, right-linearity, psi(f)s == fs mod h,
/// psi(1) == Id and injectivity on the samples. Triples are (f, s, g).
template <class Basis>
std::vector<Report> check_psi(const DeformedModule<Basis>& D, const std::vector<Triple<Basis>>& triples) {
  Report mult{"ψ(f*g) == ψ(f)∘ψ(g)", ""};
  Report lin{"ψ(f)(ρ_F(s, g)) == ρ_F(ψ(f)s, g)", ""};
  Report head{"ψ(f)s == fs mod h and ψ(1) == Id", ""};
  Report inj{"ψ injective on samples", ""};
  std::size_t fm = 0, fl = 0, fh = 0;
  auto label = [](const Triple<Basis>& t) { return "(" + t.a.render() + ", " + t.b.render() + ", " + t.c.render() + ")"; };
  for (const auto& t : triples) {
    auto psi_f = psi_endomorphism(D, t.a);
    auto psi_g = psi_endomorphism(D, t.c);
    auto psi_fg = psi_endomorphism(D, D.product_a(t.a, t.c));
    detail::record_difference(mult, psi_fg(t.b), psi_f(psi_g(t.b)), label(t), fm);
    detail::record_difference(lin, psi_f(D.right(t.b, t.c)), D.right(psi_f(t.b), t.c), label(t), fl);
    detail::record_difference(head, psi_f(t.b).at_order(0), (t.a * t.b).at_order(0), label(t), fh);
    detail::record_difference(head, psi_endomorphism(D, D.one())(t.b), t.b, "ψ(1) on " + t.b.render(), fh);
  }
  detail::finish<Basis>(mult, triples.size(), fm);
  detail::finish<Basis>(lin, triples.size(), fl);
  detail::finish<Basis>(head, triples.size(), fh);

  // Injectivity: the h^0 parts of psi(f)(1) = f are linearly independent for
  // linearly independent samples f; checked by exact rank comparison.
  std::vector<Function<Basis>> fs;
  for (const auto& t : triples) {
    bool dup = false;
    for (const auto& f : fs) dup |= f == t.a;
    if (!dup) fs.push_back(t.a);
  }
  std::vector<Function<Basis>> images;
  for (const auto& f : fs) images.push_back(psi_endomorphism(D, f)(D.one()).at_order(0));
  std::vector<Function<Basis>> originals;
  for (const auto& f : fs) originals.push_back(f.at_order(0));
  const std::size_t rank_in = detail::function_rank(originals), rank_out = detail::function_rank(images);
  inj.details.push_back("rank of samples " + std::to_string(rank_in) + ", rank of ψ images " + std::to_string(rank_out));
  if (rank_out != rank_in) inj.fail();
  return {mult, lin, head, inj};
}

}  // namespace twistkit
