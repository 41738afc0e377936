#include <random>

#include "catch_amalgamated.hpp"

#include "fixtures.hpp"

using namespace twistkit;

namespace {

UEAElement random_word(const LieAlgebraPtr& alg, std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(0, alg->dim() - 1), c(-3, 3);
  std::vector<int> w(static_cast<std::size_t>(len(rng)));
  for (auto& g : w) g = gen(rng);
  return UEAElement::from_word(alg, w) * Scalar(c(rng) == 0 ? 1 : c(rng));
}

LieAlgebraPtr sl2() {
  // [H,E] = 2E, [H,F] = -2F, [E,F] = H
  return LieAlgebra::from_rules({"H", "E", "F"}, {{0, 1, {{1, Scalar(2)}}}, {0, 2, {{2, Scalar(-2)}}}, {1, 2, {{0, Scalar(1)}}}});
}

}  // namespace

TEST_CASE("PBW straightening follows the bracket") {
  auto alg = fixtures::axb();
  auto H = UEAElement::generator(alg, 0), E = UEAElement::generator(alg, 1);
  CHECK(render(E * H) == render(H * E - E));
  CHECK(E * H == H * E - E);
  CHECK(E * H * H == H * H * E - H * E * Scalar(2) + E);
  CHECK(counit(H * E + UEAElement::scalar(alg, Scalar(3))) == Scalar(3));
}

TEST_CASE("Lie algebra validation reports broken tables") {
  CHECK(sl2()->validate().empty());
  CHECK(fixtures::axb()->validate().empty());
  // [A,B] = C, [B,C] = A, [C,A] = C violates Jacobi
  auto bad = LieAlgebra::from_rules({"A", "B", "C"}, {{0, 1, {{2, Scalar(1)}}}, {1, 2, {{0, Scalar(1)}}}, {2, 0, {{2, Scalar(1)}}}});
  auto v = bad->validate();
  REQUIRE_FALSE(v.empty());
  bool jacobi = false;
  for (const auto& x : v) jacobi |= x.kind == LieViolation::Kind::jacobi;
  CHECK(jacobi);
}

TEST_CASE("multiplication in U(sl2) is associative on random words") {
  auto alg = sl2();
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    auto a = random_word(alg, rng, 3), b = random_word(alg, rng, 3), c = random_word(alg, rng, 2);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("coproduct is a coassociative, counital algebra map") {
  auto alg = sl2();
  std::mt19937 rng(7);
  for (int t = 0; t < 25; ++t) {
    auto a = random_word(alg, rng, 3), b = random_word(alg, rng, 2);
    CHECK(coproduct(a * b) == coproduct(a) * coproduct(b));
    auto d = coproduct(a);
    CHECK(coproduct_on_leg(d, 1) == coproduct_on_leg(d, 2));
    CHECK(counit_on_leg(d, 1) == TensorElement::from_uea(a));
    CHECK(counit_on_leg(d, 2) == TensorElement::from_uea(a));
  }
}

TEST_CASE("primitive generators and tensor legs") {
  auto alg = fixtures::plane();
  auto X = UEAElement::generator(alg, 0), one = UEAElement::one(alg);
  CHECK(coproduct(X) == fixtures::t2(X, one) + fixtures::t2(one, X));
  auto t = fixtures::t2(X, X);
  CHECK(insert_identity_leg(t, 0) == TensorElement::product({one, X, X}));
  CHECK(insert_identity_leg(t, 2) == TensorElement::product({X, X, one}));
  CHECK_THROWS_AS(t * TensorElement::product({X, X, X}), StructuralError);
  CHECK_THROWS_AS(X * UEAElement::generator(fixtures::axb(), 0), StructuralError);
}
