#include "catch_amalgamated.hpp"

#include "fixtures.hpp"

using namespace twistkit;

TEST_CASE("Fourier modes multiply and differentiate") {
  TorusBasis T{2};
  auto a = fixtures::mode(1, 2, 0), b = fixtures::mode(-3, 1, 0);
  CHECK(a * b == fixtures::mode(-2, 3, 0));
  CHECK(a.derivative(0) == fixtures::mode(1, 2, 0, Scalar::i()));
  CHECK(a.derivative(1) == fixtures::mode(1, 2, 0, Scalar::i() * Scalar(2)));
  CHECK_THROWS_AS(FourierFunction::coordinate(T, 0, 0), DomainError);
}

TEST_CASE("polynomials multiply and differentiate") {
  AffineBasis A{2};
  auto x = PolyFunction::coordinate(A, 0, 1), y = PolyFunction::coordinate(A, 1, 1);
  auto p = x * x * y;
  CHECK(p.derivative(0) == x * y * Scalar(2));
  CHECK(p.derivative(1) == x * x);
  CHECK(p.derivative(0).derivative(0).derivative(0).is_zero());
  CHECK_THROWS_AS(x + PolyFunction::coordinate(A, 0, 2), StructuralError);
}

TEST_CASE("operator composition agrees with successive application") {
  AffineBasis A{1};
  using Op = DiffOp<AffineBasis>;
  auto x = PolyFunction::coordinate(A, 0, 0);
  Op xd = Op::multiplication(x) * Op::partial(A, 0, 0);
  Op d = Op::partial(A, 0, 0);
  for (int deg = 0; deg <= 4; ++deg) {
    auto f = PolyFunction::basis_element(A, {deg}, 0);
    CHECK((xd * d).apply(f) == xd.apply(d.apply(f)));
    CHECK((d * xd).apply(f) == d.apply(xd.apply(f)));
  }
  // [d, x d] = d
  CHECK(d * xd + (xd * d) * Scalar(-1) == d);
}

TEST_CASE("ax+b acts on the line only with H -> -x d/dx") {
  CHECK(fixtures::line_motions()->validate().empty());
  AffineBasis A{1};
  using Op = DiffOp<AffineBasis>;
  auto x = PolyFunction::coordinate(A, 0, 0);
  ActionAssignment<AffineBasis> wrong(fixtures::axb(), A, {Op::multiplication(x) * Op::partial(A, 0, 0), Op::partial(A, 0, 0)});
  CHECK_FALSE(wrong.validate().empty());
}

TEST_CASE("actions must be first order and independent of h") {
  TorusBasis T{2};
  using Op = DiffOp<TorusBasis>;
  auto alg = fixtures::plane();
  CHECK_THROWS_AS(ActionAssignment<TorusBasis>(alg, T, {Op::partial(T, 0, 0) * Op::partial(T, 0, 0), Op::partial(T, 1, 0)}),
                  DomainError);
  auto hd = Op::partial(T, 0, 2) * ScalarSeries::monomial(Scalar(1), 1, 2);
  CHECK_THROWS_AS(ActionAssignment<TorusBasis>(alg, T, {hd, Op::partial(T, 1, 2)}), DomainError);
  CHECK_THROWS_AS(ActionAssignment<TorusBasis>(alg, T, {Op::partial(T, 0, 0)}), StructuralError);
}

TEST_CASE("U(g) acts through the generator operators") {
  auto act = fixtures::line_motions();
  auto alg = act->algebra();
  auto H = UEAElement::generator(alg, 0), E = UEAElement::generator(alg, 1);
  AffineBasis A{1};
  auto x3 = PolyFunction::basis_element(A, {3}, 0);
  // E H x^3 = E(-3x^3) = -9x^2 and H E - E acts the same way
  CHECK(act->represent(E * H, x3) == PolyFunction::basis_element(A, {2}, 0, Scalar(-9)));
  CHECK(act->represent(H * E - E, x3) == act->represent(E * H, x3));
}

TEST_CASE("Poisson bracket on the torus") {
  auto f = fixtures::mode(1, 0, 0), g = fixtures::mode(0, 1, 0);
  // {e^{ix}, e^{iy}} = (i)(i) e^{i(x+y)} = -e_{(1,1)}
  CHECK(poisson_bracket_T2(f, g) == fixtures::mode(1, 1, 0, Scalar(-1)));
  CHECK(poisson_bracket_T2(g, f) == fixtures::mode(1, 1, 0));
}
