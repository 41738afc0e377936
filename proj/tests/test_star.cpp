#include "catch_amalgamated.hpp"

#include "fixtures.hpp"

using namespace twistkit;

namespace {

StarAlgebra<TorusBasis> moyal_torus(std::size_t N) {
  auto alg = fixtures::plane();
  return StarAlgebra<TorusBasis>(fixtures::moyal(N, alg), fixtures::torus_partials(alg), PoissonStructure::standard(2));
}

StarAlgebra<AffineBasis> jordanian_line(std::size_t N) {
  auto alg = fixtures::axb();
  return StarAlgebra<AffineBasis>(fixtures::jordanian(N, alg), fixtures::line_motions(alg), PoissonStructure::zero(1));
}

}  // namespace

TEST_CASE("Moyal product of Fourier modes matches the closed form") {
  const std::size_t N = 6;
  auto S = moyal_torus(N);
  for (int a1 = -2; a1 <= 2; ++a1)
    for (int a2 = -2; a2 <= 2; ++a2)
      for (int b1 = -2; b1 <= 2; ++b1)
        for (int b2 = -2; b2 <= 2; ++b2) {
          auto got = S.star(fixtures::mode(a1, a2, N), fixtures::mode(b1, b2, N));
          auto expected = fixtures::moyal_mode_factor(a1, a2, b1, b2, N);
          FourierFunction want(TorusBasis{2}, N);
          for (std::size_t k = 0; k <= N; ++k)
            want = want + fixtures::mode(a1 + b1, a2 + b2, N) * ScalarSeries::monomial(expected[k], k, N);
          INFO("(" << a1 << "," << a2 << ") * (" << b1 << "," << b2 << ")");
          CHECK(got == want);
        }
}

TEST_CASE("the two torus generators commute up to exp(-ih)") {
  const std::size_t N = 6;
  auto S = moyal_torus(N);
  auto U = fixtures::mode(1, 0, N), V = fixtures::mode(0, 1, N);
  auto q = series_exp(ScalarSeries::monomial(Scalar(0, -1), 1, N), Scalar(1));
  CHECK(S.star(U, V) == S.star(V, U) * q);
  CHECK(S.star(V, U) == S.star(U, V) * series_exp(ScalarSeries::monomial(Scalar::i(), 1, N), Scalar(1)));
}

TEST_CASE("Moyal product is associative and unital") {
  auto S = moyal_torus(4);
  CHECK(check_associativity(S, basis_triples(TorusBasis{2}, 1, 4)).passed());
  CHECK(check_associativity(S, random_triples(TorusBasis{2}, 2, 4, 40, 7)).passed());
  auto samples = basis_samples(TorusBasis{2}, 2, 4);
  CHECK(check_unitality<TorusBasis>([&](const auto& f, const auto& g) { return S.star(f, g); }, S.one(), samples).passed());
  CHECK(check_classical_limit<TorusBasis>([&](const auto& f, const auto& g) { return S.star(f, g); }, samples).passed());
}

TEST_CASE("first-order antisymmetric part is i times the Poisson bracket") {
  CHECK(check_first_order_poisson(moyal_torus(2), 2).passed());
  CHECK(check_first_order_poisson(jordanian_line(2), 3).passed());
}

TEST_CASE("B_k extraction") {
  auto S = moyal_torus(3);
  auto U = fixtures::mode(1, 0, 3), V = fixtures::mode(0, 1, 3);
  // theta = (i/2)(0*0 - 1*1) = -i/2
  CHECK(extract_Bk(S, U, V, 1) == fixtures::mode(1, 1, 3, Scalar(0, -1) * Scalar::rational(1, 2)));
  CHECK(extract_Bk(S, U, V, 2) == fixtures::mode(1, 1, 3, Scalar::rational(-1, 8)));
  CHECK_THROWS_AS(extract_Bk(S, U, V, 4), DomainError);
  CHECK_THROWS_AS(extract_Bk(S, U * ScalarSeries::monomial(Scalar(1), 1, 3), V, 1), DomainError);
}

TEST_CASE("Jordanian star on polynomials") {
  const std::size_t N = 4;
  auto S = jordanian_line(N);
  AffineBasis A{1};
  auto x = PolyFunction::coordinate(A, 0, N);
  // F^{-1} = 1 - h H⊗E + O(h^2) with H -> -x d, E -> d gives B_1(f, g) = x f' g'
  CHECK(S.star(x, x).at_order(1) == x);
  CHECK(check_associativity(S, basis_triples(A, 3, N)).passed());
  CHECK(check_unitality<AffineBasis>([&](const auto& f, const auto& g) { return S.star(f, g); }, S.one(),
                                     basis_samples(A, 4, N))
            .passed());
}

TEST_CASE("a non-cocycle twist gives a non-associative product") {
  auto alg = fixtures::axb();
  auto S = StarAlgebra<AffineBasis>(fixtures::naive(4, alg), fixtures::line_motions(alg), std::nullopt, false);
  CHECK_FALSE(S.cocycle_verified());
  auto r = check_associativity(S, basis_triples(AffineBasis{1}, 3, 4));
  CHECK(r.status == Status::fail);
  REQUIRE(r.lowest_failing_order);
  CHECK(*r.lowest_failing_order == 2u);
  CHECK_THROWS_AS(StarAlgebra<AffineBasis>(fixtures::naive(4, alg), fixtures::line_motions(alg)), DomainError);
}

TEST_CASE("equivalence maps") {
  const std::size_t N = 4;
  TorusBasis T{2};
  using Op = DiffOp<TorusBasis>;
  auto S = moyal_torus(N);
  auto hs = ScalarSeries::monomial(Scalar(1), 1, N);
  EquivalenceMap<TorusBasis> map(Op::partial(T, 0, N) * Op::partial(T, 1, N) * hs);
  auto samples = random_samples(T, 2, N, 8, 11);
  for (const auto& f : samples) CHECK(map.apply_inverse(map.apply(f)) == f);
  auto deformed = apply_equivalence(map, S);
  CHECK(check_associativity<TorusBasis>(deformed, random_triples(T, 2, N, 20, 3)).passed());
  CHECK(check_unitality<TorusBasis>(deformed, S.one(), samples).passed());
  CHECK(check_intertwining(map, S, deformed, samples).passed());
  // deformed product differs from the original one
  auto U = fixtures::mode(1, 0, N), V = fixtures::mode(0, 1, N);
  CHECK(deformed(U, V) != S.star(U, V));

  CHECK_THROWS_AS(EquivalenceMap<TorusBasis>(Op::identity(T, N) * hs), DomainError);
  CHECK_THROWS_AS(EquivalenceMap<TorusBasis>(Op::partial(T, 0, N)), DomainError);
}
