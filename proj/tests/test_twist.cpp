#include "catch_amalgamated.hpp"

#include "fixtures.hpp"

using namespace twistkit;
using fixtures::t2;

TEST_CASE("Moyal twist is a counital cocycle") {
  auto F = fixtures::moyal(6);
  CHECK(check_counitality(F).passed());
  CHECK(check_cocycle(F).passed());
  CHECK(check_mirrored_cocycle(F).passed());
  CHECK(check_twisted_coassociativity(F).passed());
  CHECK(check_twisted_counit(F).passed());
}

TEST_CASE("Jordanian twist is a counital cocycle with a genuinely twisted coproduct") {
  auto F = fixtures::jordanian(4);
  CHECK(check_counitality(F).passed());
  CHECK(check_cocycle(F).passed());
  CHECK(check_twisted_coassociativity(F).passed());
  CHECK(check_twisted_counit(F).passed());
  auto E = UEAElement::generator(F.algebra(), 1);
  CHECK(twisted_coproduct(F, E) != TensorSeries::constant(coproduct(E), 4));
}

TEST_CASE("exp(h H⊗E) fails the cocycle condition first at order 2") {
  auto r = check_cocycle(fixtures::naive(4));
  CHECK(r.status == Status::fail);
  REQUIRE(r.lowest_failing_order);
  CHECK(*r.lowest_failing_order == 2u);
  CHECK_FALSE(r.witnesses.empty());
  CHECK(check_counitality(fixtures::naive(4)).passed());
}

TEST_CASE("an exponent with an h^0 term is rejected") {
  auto alg = fixtures::plane();
  auto X = UEAElement::generator(alg, 0);
  CHECK_THROWS_AS(build_exponential_twist(alg, TensorSeries::constant(t2(X, X), 3)), DomainError);
}

TEST_CASE("twist inverse is a two-sided inverse") {
  for (const auto& F : {fixtures::moyal(5), fixtures::jordanian(4)}) {
    auto inv = invert_twist(F);
    auto one = TensorSeries::constant(TensorElement::identity(F.algebra(), 2), F.order());
    CHECK(series_mul(F.series(), inv) == one);
    CHECK(series_mul(inv, F.series()) == one);
  }
}

TEST_CASE("non-counital twist is detected") {
  auto alg = fixtures::plane();
  auto X = UEAElement::generator(alg, 0), one = UEAElement::one(alg);
  TensorSeries s = TensorSeries::constant(TensorElement::identity(alg, 2), 3);
  s[1] = t2(X, one);
  auto r = check_counitality(Twist(alg, s));
  CHECK(r.status == Status::fail);
  CHECK(*r.lowest_failing_order == 1u);
}

TEST_CASE("gauge normalization with a scalar head") {
  auto M = fixtures::moyal(4);
  const Scalar c(mpq_class(2), mpq_class(1, 3));
  TensorSeries F = M.series() * c;
  auto N = gauge_normalize(M.algebra(), F);
  CHECK(N.is_normalized());
  CHECK(N.series() == M.series());
  CHECK(check_gauge_equivalence(M.algebra(), F, N).passed());
}

TEST_CASE("gauge normalization with a non-trivial abelian head") {
  auto alg = fixtures::plane();
  auto M = fixtures::moyal(4, alg);
  auto X = UEAElement::generator(alg, 0), Y = UEAElement::generator(alg, 1);
  const TensorElement F0 = TensorElement::identity(alg, 2) + t2(X, Y);
  TensorSeries F = series_mul(M.series(), TensorSeries::constant(F0, 4));
  auto N = gauge_normalize(alg, F);
  CHECK(N.is_normalized());
  CHECK(N.series() == M.series());
  CHECK(check_gauge_equivalence(alg, F, N).passed());
}

TEST_CASE("gauge normalization rejects heads that do not commute with the coproduct") {
  auto alg = fixtures::axb();
  auto H = UEAElement::generator(alg, 0), E = UEAElement::generator(alg, 1);
  TensorSeries F = TensorSeries::constant(TensorElement::identity(alg, 2) + t2(H, E), 2);
  CHECK_THROWS_AS(gauge_normalize(alg, F), DomainError);
}

TEST_CASE("a head that is not invertible cannot build a twist") {
  auto alg = fixtures::plane();
  auto X = UEAElement::generator(alg, 0);
  CHECK_THROWS_AS(Twist(alg, TensorSeries::constant(t2(X, X), 2)), DomainError);
}

TEST_CASE("truncating an abelian exponential breaks the cocycle condition at order 2") {
  auto alg = fixtures::plane();
  auto X = UEAElement::generator(alg, 0), Y = UEAElement::generator(alg, 1);
  TensorSeries s = TensorSeries::constant(TensorElement::identity(alg, 2), 4);
  s[1] = t2(X, Y);
  auto r = check_cocycle(Twist(alg, s));
  CHECK(r.status == Status::fail);
  REQUIRE(r.lowest_failing_order);
  CHECK(*r.lowest_failing_order == 2u);
  s[2] = t2(X * X, Y * Y) * Scalar::rational(1, 2);
  CHECK(*check_cocycle(Twist(alg, s)).lowest_failing_order == 3u);
}
