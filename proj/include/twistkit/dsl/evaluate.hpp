#pragma once

// Evaluation of expression trees: tensor series over U(g)^{(x)k}, Lie bracket
// right-hand sides, and differential operators on a function model.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twistkit/dsl/ast.hpp"
#include "twistkit/function_model.hpp"
#include "twistkit/lie_algebra.hpp"
#include "twistkit/series.hpp"
#include "twistkit/uea.hpp"

namespace twistkit::dsl {

namespace detail {

inline long exponent_of(const Expr& e) {
  if (e->kind != Node::Kind::number) throw SpecError(ErrorCode::type_mismatch, e->pos, "exponent must be a non-negative integer literal");
  try {
    return std::stol(e->text);
  } catch (const std::exception&) {
    throw SpecError(ErrorCode::type_mismatch, e->pos, "exponent out of range");
  }
}

inline Scalar integer_scalar(const Expr& e) {
  return Scalar(mpq_class(mpz_class(e->text)));
}

}  // namespace detail

/// A scalar series (arity 0) or a series of k-fold tensors.
struct TensorValue {
  int arity = 0;
  ScalarSeries scalar;
  TensorSeries tensor;
};

class TensorEvaluator {
public:
  TensorEvaluator(LieAlgebraPtr alg, std::size_t order) : alg_(std::move(alg)), order_(order) {}

  TensorValue eval(const Expr& e) const {
    const Node& n = *e;
    switch (n.kind) {
      case Node::Kind::number: return scalar(ScalarSeries::constant(detail::integer_scalar(e), order_));
      case Node::Kind::imaginary: return scalar(ScalarSeries::constant(Scalar::i(), order_));
      case Node::Kind::hbar: return scalar(ScalarSeries::monomial(Scalar(1), 1, order_));
      case Node::Kind::name: {
        const int g = alg_->index_of(n.text);
        if (g < 0) throw SpecError(ErrorCode::unresolved_name, n.pos, "'" + n.text + "' is not a generator of the Lie algebra");
        TensorValue v;
        v.arity = 1;
        v.tensor = TensorSeries::constant(TensorElement::from_uea(UEAElement::generator(alg_, g)), order_);
        return v;
      }
      case Node::Kind::derivative:
        throw SpecError(ErrorCode::type_mismatch, n.pos, "derivative d/d" + n.text + " cannot appear in a tensor expression");
      case Node::Kind::negate: return scale(eval(n.args[0]), ScalarSeries::constant(Scalar(-1), order_));
      case Node::Kind::call: return call(n);
      case Node::Kind::binary: return binary(n);
    }
    throw SpecError(ErrorCode::type_mismatch, n.pos, "unsupported expression");
  }

  /// The value as a tensor series of the given arity; scalars become c * 1(x)...(x)1.
  TensorSeries as_tensor(const TensorValue& v, int arity, Pos pos) const {
    if (v.arity == arity) return v.tensor;
    if (v.arity != 0)
      throw SpecError(ErrorCode::arity_mismatch, pos,
                      "expected a tensor with " + std::to_string(arity) + " legs, got " + std::to_string(v.arity));
    TensorSeries out(order_);
    for (std::size_t k = 0; k <= order_; ++k) out[k] = TensorElement::identity(alg_, arity, v.scalar[k]);
    return out;
  }

private:
  TensorValue scalar(ScalarSeries s) const {
    TensorValue v;
    v.scalar = std::move(s);
    return v;
  }

  TensorValue scale(TensorValue v, const ScalarSeries& s) const {
    if (v.arity == 0) {
      v.scalar = v.scalar * s;
      return v;
    }
    TensorSeries out(order_);
    for (std::size_t a = 0; a <= order_; ++a)
      for (std::size_t b = 0; a + b <= order_; ++b)
        if (!s[b].is_zero() && !v.tensor[a].is_zero()) out[a + b] = out[a + b] + v.tensor[a] * s[b];
    v.tensor = std::move(out);
    return v;
  }

  TensorElement zero(int arity) const { return TensorElement(alg_, arity, {}); }

  TensorElement kron(const TensorElement& a, const TensorElement& b) const {
    TensorElement out = zero(a.arity() + b.arity());
    for (const auto& [ka, ca] : a.terms())
      for (const auto& [kb, cb] : b.terms()) {
        TensorKey key = ka;
        key.insert(key.end(), kb.begin(), kb.end());
        out.add_term(key, ca * cb);
      }
    return out;
  }

  TensorValue binary(const Node& n) const {
    if (n.text == "^") {
      TensorValue base = eval(n.args[0]);
      const long p = detail::exponent_of(n.args[1]);
      if (p < 0) throw SpecError(ErrorCode::type_mismatch, n.args[1]->pos, "negative exponent");
      if (base.arity == 0) return scalar(series_pow(base.scalar, static_cast<std::size_t>(p), Scalar(1)));
      base.tensor = series_pow(base.tensor, static_cast<std::size_t>(p), TensorElement::identity(alg_, base.arity));
      return base;
    }
    TensorValue a = eval(n.args[0]);
    TensorValue b = eval(n.args[1]);
    if (n.text == "+" || n.text == "-") {
      if (n.text == "-") b = scale(b, ScalarSeries::constant(Scalar(-1), order_));
      if (a.arity == 0 && b.arity == 0) return scalar(a.scalar + b.scalar);
      const int arity = a.arity ? a.arity : b.arity;
      if (a.arity && b.arity && a.arity != b.arity)
        throw SpecError(ErrorCode::arity_mismatch, n.pos,
                        "cannot add tensors with " + std::to_string(a.arity) + " and " + std::to_string(b.arity) + " legs");
      TensorValue v;
      v.arity = arity;
      v.tensor = as_tensor(a, arity, n.pos) + as_tensor(b, arity, n.pos);
      return v;
    }
    if (n.text == "*") {
      if (a.arity == 0) return scale(b, a.scalar);
      if (b.arity == 0) return scale(a, b.scalar);
      if (a.arity != b.arity)
        throw SpecError(ErrorCode::arity_mismatch, n.pos,
                        "cannot multiply tensors with " + std::to_string(a.arity) + " and " + std::to_string(b.arity) + " legs");
      a.tensor = series_mul(a.tensor, b.tensor);
      return a;
    }
    if (n.text == "/") {
      if (b.arity != 0) throw SpecError(ErrorCode::type_mismatch, n.args[1]->pos, "division is only by scalars");
      if (b.scalar[0].is_zero()) throw SpecError(ErrorCode::type_mismatch, n.args[1]->pos, "division by a series without constant term");
      return scale(a, series_invert(b.scalar));
    }
    if (n.text == "⊗") {
      TensorSeries ta = as_tensor(a, a.arity ? a.arity : 1, n.pos);
      TensorSeries tb = as_tensor(b, b.arity ? b.arity : 1, n.pos);
      const int arity = (a.arity ? a.arity : 1) + (b.arity ? b.arity : 1);
      TensorSeries out(order_);
      for (std::size_t k = 0; k <= order_; ++k) out[k] = zero(arity);
      for (std::size_t x = 0; x <= order_; ++x)
        for (std::size_t y = 0; x + y <= order_; ++y)
          if (!ta[x].is_zero() && !tb[y].is_zero()) out[x + y] = out[x + y] + kron(ta[x], tb[y]);
      TensorValue v;
      v.arity = arity;
      v.tensor = std::move(out);
      return v;
    }
    throw SpecError(ErrorCode::syntax, n.pos, "unknown operator " + n.text);
  }

  TensorValue call(const Node& n) const {
    TensorValue a = eval(n.args[0]);
    if (n.text == "exp") {
      if (a.arity == 0) {
        if (!a.scalar[0].is_zero()) throw SpecError(ErrorCode::type_mismatch, n.pos, "exp needs an argument without h^0 term");
        return scalar(series_exp(a.scalar, Scalar(1)));
      }
      if (!a.tensor[0].is_zero()) throw SpecError(ErrorCode::type_mismatch, n.pos, "exp needs an argument without h^0 term");
      a.tensor = series_exp(a.tensor, TensorElement::identity(alg_, a.arity));
      return a;
    }
    if (n.text == "log") {
      if (a.arity == 0) {
        if (!a.scalar[0].is_one()) throw SpecError(ErrorCode::type_mismatch, n.pos, "log needs an argument equal to 1 at h^0");
        return scalar(series_log1p(a.scalar - ScalarSeries::constant(Scalar(1), order_)));
      }
      const TensorElement one = TensorElement::identity(alg_, a.arity);
      if (!(a.tensor[0] == one)) throw SpecError(ErrorCode::type_mismatch, n.pos, "log needs an argument equal to 1 at h^0");
      a.tensor = series_log1p(a.tensor - TensorSeries::constant(one, order_));
      return a;
    }
    throw SpecError(ErrorCode::type_mismatch, n.pos, n.text + " is only available for functions on a model");
  }

  LieAlgebraPtr alg_;
  std::size_t order_;
};

/// Evaluates the right-hand side of a bracket rule as a linear combination of
/// the named generators.
inline LieAlgebra::Combination evaluate_combination(const std::vector<std::string>& generators, const Expr& e) {
  auto flat = LieAlgebra::abelian(generators);
  TensorEvaluator ev(flat, 0);
  TensorValue v = ev.eval(e);
  LieAlgebra::Combination out;
  if (v.arity == 0) {
    if (!v.scalar[0].is_zero()) throw SpecError(ErrorCode::type_mismatch, e->pos, "bracket must be a combination of generators");
    return out;
  }
  if (v.arity != 1) throw SpecError(ErrorCode::arity_mismatch, e->pos, "bracket value must have one tensor leg");
  for (const auto& [key, c] : v.tensor[0].terms()) {
    if (key[0].size() != 1) throw SpecError(ErrorCode::type_mismatch, e->pos, "bracket must be linear in the generators");
    out.emplace_back(key[0][0], c);
  }
  return out;
}

/// a_0 + sum_j a_j x_j with a_j scalar: the admissible arguments of exp,
/// sin and cos on periodic models.
struct AffineForm {
  ScalarSeries constant;
  std::vector<Scalar> linear;
};

/// Differential operators with function coefficients; plain functions are
/// multiplication operators.
template <class Basis>
class OperatorEvaluator {
public:
  using Op = DiffOp<Basis>;
  using Fn = Function<Basis>;

  OperatorEvaluator(Basis basis, std::size_t order) : basis_(std::move(basis)), order_(order) {}

  Op eval(const Expr& e) const {
    const Node& n = *e;
    switch (n.kind) {
      case Node::Kind::number: return constant(ScalarSeries::constant(detail::integer_scalar(e), order_));
      case Node::Kind::imaginary: return constant(ScalarSeries::constant(Scalar::i(), order_));
      case Node::Kind::hbar: return constant(ScalarSeries::monomial(Scalar(1), 1, order_));
      case Node::Kind::name: {
        const int j = coordinate_index(n);
        auto key = basis_.coordinate(j);
        if (!key)
          throw SpecError(ErrorCode::type_mismatch, n.pos,
                          "coordinate " + n.text + " is not a function on this model; use exp(i*" + n.text + "), sin or cos");
        return Op::multiplication(Fn::basis_element(basis_, *key, order_));
      }
      case Node::Kind::derivative: {
        const int j = coordinate_index(n);
        return Op::partial(basis_, j, order_);
      }
      case Node::Kind::negate: return eval(n.args[0]) * Scalar(-1);
      case Node::Kind::call: return call(n);
      case Node::Kind::binary: return binary(n);
    }
    throw SpecError(ErrorCode::type_mismatch, n.pos, "unsupported expression");
  }

  /// Evaluates an expression that must be a function.
  Fn function(const Expr& e) const {
    Op op = eval(e);
    if (op.differential_order() > 0) throw SpecError(ErrorCode::type_mismatch, e->pos, "expected a function, got a differential operator");
    return op.potential();
  }

private:
  Op constant(const ScalarSeries& c) const { return Op::multiplication(Fn::constant(basis_, c)); }

  int coordinate_index(const Node& n) const {
    for (int j = 0; j < basis_.dimension(); ++j)
      if (coordinate_name(j, basis_.dimension()) == n.text) return j;
    throw SpecError(ErrorCode::unresolved_name, n.pos,
                    "'" + n.text + "' is not a coordinate of this " + std::to_string(basis_.dimension()) + "-dimensional model");
  }

  std::optional<ScalarSeries> constant_of(const Op& op) const {
    if (op.differential_order() > 0) return std::nullopt;
    Fn f = op.potential();
    if (f.is_zero()) return ScalarSeries(order_);
    if (f.terms().size() != 1 || f.terms().begin()->first != basis_.unit()) return std::nullopt;
    return f.terms().begin()->second;
  }

  Op binary(const Node& n) const {
    if (n.text == "^") {
      Op base = eval(n.args[0]);
      const long p = detail::exponent_of(n.args[1]);
      if (p < 0) throw SpecError(ErrorCode::type_mismatch, n.args[1]->pos, "negative exponent");
      Op out = Op::identity(basis_, order_);
      for (long k = 0; k < p; ++k) out = out * base;
      return out;
    }
    if (n.text == "⊗") throw SpecError(ErrorCode::type_mismatch, n.pos, "⊗ cannot appear in a function or operator expression");
    Op a = eval(n.args[0]);
    Op b = eval(n.args[1]);
    if (n.text == "+") return a + b;
    if (n.text == "-") return a + b * Scalar(-1);
    if (n.text == "*") return a * b;
    if (n.text == "/") {
      auto c = constant_of(b);
      if (!c || (*c)[0].is_zero()) throw SpecError(ErrorCode::type_mismatch, n.args[1]->pos, "division is only by invertible constants");
      return a * series_invert(*c);
    }
    throw SpecError(ErrorCode::syntax, n.pos, "unknown operator " + n.text);
  }

  AffineForm affine(const Expr& e) const {
    const Node& n = *e;
    AffineForm out{ScalarSeries(order_), std::vector<Scalar>(static_cast<std::size_t>(basis_.dimension()))};
    auto bad = [&]() -> SpecError {
      return SpecError(ErrorCode::type_mismatch, n.pos, "argument must be affine in the coordinates");
    };
    switch (n.kind) {
      case Node::Kind::number: out.constant = ScalarSeries::constant(detail::integer_scalar(e), order_); return out;
      case Node::Kind::imaginary: out.constant = ScalarSeries::constant(Scalar::i(), order_); return out;
      case Node::Kind::hbar: out.constant = ScalarSeries::monomial(Scalar(1), 1, order_); return out;
      case Node::Kind::name: out.linear[static_cast<std::size_t>(coordinate_index(n))] = Scalar(1); return out;
      case Node::Kind::negate: return scale(affine(n.args[0]), ScalarSeries::constant(Scalar(-1), order_));
      case Node::Kind::binary: {
        if (n.text == "^" || n.text == "⊗") throw bad();
        AffineForm a = affine(n.args[0]);
        AffineForm b = affine(n.args[1]);
        if (n.text == "+" || n.text == "-") {
          if (n.text == "-") b = scale(b, ScalarSeries::constant(Scalar(-1), order_));
          a.constant = a.constant + b.constant;
          for (std::size_t j = 0; j < a.linear.size(); ++j) a.linear[j] = a.linear[j] + b.linear[j];
          return a;
        }
        if (n.text == "*") {
          if (is_constant(a)) return scale(b, a.constant);
          if (is_constant(b)) return scale(a, b.constant);
          throw bad();
        }
        if (n.text == "/") {
          if (!is_constant(b) || b.constant[0].is_zero()) throw bad();
          return scale(a, series_invert(b.constant));
        }
        throw bad();
      }
      default: throw bad();
    }
  }

  static bool is_constant(const AffineForm& f) {
    for (const auto& c : f.linear)
      if (!c.is_zero()) return false;
    return true;
  }

  AffineForm scale(AffineForm f, const ScalarSeries& s) const {
    // coordinates carry h-constant coefficients; s must then be h-constant too
    f.constant = f.constant * s;
    for (auto& c : f.linear) {
      if (!c.is_zero() && !s.is_h_constant()) throw SpecError(ErrorCode::type_mismatch, Pos{}, "coordinate coefficients must not depend on h");
      c = c * s[0];
    }
    return f;
  }

  /// e^{i<m,x>} with integer m, when the model has Fourier modes.
  Fn mode(const std::vector<Scalar>& m_times_i, const Node& n) const {
    std::vector<int> m;
    for (const auto& c : m_times_i) {
      const Scalar coeff = c * Scalar(mpq_class(0), mpq_class(-1));  // c / i
      if (!coeff.is_real() || coeff.re().get_den() != 1 || !coeff.re().get_num().fits_sint_p())
        throw SpecError(ErrorCode::type_mismatch, n.pos, "exp argument must be i times an integer combination of coordinates");
      m.push_back(static_cast<int>(coeff.re().get_num().get_si()));
    }
    if constexpr (requires(const Basis& b) { b.mode(m); }) {
      return Fn::basis_element(basis_, basis_.mode(m), order_);
    } else {
      throw SpecError(ErrorCode::type_mismatch, n.pos, std::string("periodic functions are not available on a ") + Basis::kind + " model");
    }
  }

  Op call(const Node& n) const {
    AffineForm f = affine(n.args[0]);
    Fn value(basis_, order_);
    if (n.text == "exp") {
      if (!f.constant[0].is_zero()) throw SpecError(ErrorCode::type_mismatch, n.pos, "exp of a nonzero constant is not exact");
      const ScalarSeries c = series_exp(f.constant, Scalar(1));
      value = is_constant(f) ? Fn::constant(basis_, c) : mode(f.linear, n) * c;
    } else if (n.text == "sin" || n.text == "cos") {
      if (!f.constant.is_zero()) throw SpecError(ErrorCode::type_mismatch, n.pos, n.text + " argument must be linear in the coordinates");
      if (is_constant(f)) {
        value = Fn::constant(basis_, Scalar(n.text == "cos" ? 1 : 0), order_);
      } else {
        std::vector<Scalar> plus, minus;
        for (const auto& c : f.linear) {
          plus.push_back(c * Scalar::i());
          minus.push_back(c * Scalar(mpq_class(0), mpq_class(-1)));
        }
        const Fn ep = mode(plus, n), em = mode(minus, n);
        // sin = (e^{it} - e^{-it}) / 2i, cos = (e^{it} + e^{-it}) / 2
        value = n.text == "sin" ? (ep - em) * Scalar(mpq_class(0), mpq_class(-1, 2)) : (ep + em) * Scalar::rational(1, 2);
      }
    } else {
      throw SpecError(ErrorCode::type_mismatch, n.pos, n.text + " is only available in tensor expressions");
    }
    return Op::multiplication(value);
  }

  Basis basis_;
  std::size_t order_;
};

}  // namespace twistkit::dsl
