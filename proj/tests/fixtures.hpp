#pragma once

// Standard algebras, twists and actions shared by the test binaries.

#include <memory>
#include <vector>

#include "twistkit/chern.hpp"
#include "twistkit/modules.hpp"
#include "twistkit/star.hpp"
#include "twistkit/twist.hpp"

namespace fixtures {

using namespace twistkit;

inline LieAlgebraPtr plane() { return LieAlgebra::abelian({"X", "Y"}); }

/// [H,E] = E
inline LieAlgebraPtr axb() { return LieAlgebra::from_rules({"H", "E"}, {{0, 1, {{1, Scalar(1)}}}}); }

inline TensorElement t2(const UEAElement& a, const UEAElement& b) { return TensorElement::product({a, b}); }

/// exp((ih/2)(Y⊗X - X⊗Y))
inline Twist moyal(std::size_t N, const LieAlgebraPtr& alg = plane()) {
  auto X = UEAElement::generator(alg, 0), Y = UEAElement::generator(alg, 1);
  auto r = (t2(Y, X) - t2(X, Y)) * (Scalar::i() * Scalar::rational(1, 2));
  return build_exponential_twist(alg, TensorSeries::monomial(r, 1, N));
}

/// exp(H ⊗ log(1 + hE))
inline Twist jordanian(std::size_t N, const LieAlgebraPtr& alg = axb()) {
  auto H = UEAElement::generator(alg, 0), E = UEAElement::generator(alg, 1), one = UEAElement::one(alg);
  Series<TensorElement> w(N);
  w[1] = t2(one, E);
  auto lg = series_log1p(w);
  TensorSeries exponent(N);
  for (std::size_t k = 0; k <= N; ++k) exponent[k] = lg[k].is_zero() ? TensorElement(alg, 2, {}) : t2(H, one) * lg[k];
  return build_exponential_twist(alg, exponent);
}

/// exp(h H⊗E), not a cocycle.
inline Twist naive(std::size_t N, const LieAlgebraPtr& alg = axb()) {
  auto H = UEAElement::generator(alg, 0), E = UEAElement::generator(alg, 1);
  return build_exponential_twist(alg, TensorSeries::monomial(t2(H, E), 1, N));
}

/// X -> d/dx, Y -> d/dy on T^2.
inline std::shared_ptr<const ActionAssignment<TorusBasis>> torus_partials(const LieAlgebraPtr& alg = plane()) {
  TorusBasis T{2};
  using Op = DiffOp<TorusBasis>;
  return std::make_shared<const ActionAssignment<TorusBasis>>(alg, T, std::vector<Op>{Op::partial(T, 0, 0), Op::partial(T, 1, 0)});
}

/// H -> -x d/dx, E -> d/dx on polynomials in x.
inline std::shared_ptr<const ActionAssignment<AffineBasis>> line_motions(const LieAlgebraPtr& alg = axb()) {
  AffineBasis A{1};
  using Op = DiffOp<AffineBasis>;
  auto x = PolyFunction::coordinate(A, 0, 0);
  return std::make_shared<const ActionAssignment<AffineBasis>>(
      alg, A, std::vector<Op>{Op::multiplication(x * Scalar(-1)) * Op::partial(A, 0, 0), Op::partial(A, 0, 0)});
}

inline FourierFunction mode(int m1, int m2, std::size_t N, const Scalar& c = Scalar(1)) {
  return FourierFunction::basis_element(TorusBasis{2}, {m1, m2}, N, c);
}

/// Independent oracle for the Moyal product of Fourier modes:
/// e_a * e_b = exp(h theta) e_{a+b}, theta = (i/2)(a2 b1 - a1 b2), expanded by
/// explicit powers and factorials.
inline ScalarSeries moyal_mode_factor(int a1, int a2, int b1, int b2, std::size_t N) {
  const Scalar theta = Scalar::i() * Scalar::rational(a2 * b1 - a1 * b2, 2);
  ScalarSeries s(N);
  Scalar power(1);
  mpz_class factorial = 1;
  for (std::size_t k = 0; k <= N; ++k) {
    if (k > 0) {
      power = power * theta;
      factorial *= static_cast<unsigned long>(k);
    }
    s[k] = power * Scalar(mpq_class(mpz_class(1), factorial));
  }
  return s;
}

}  // namespace fixtures
