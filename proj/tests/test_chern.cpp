#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"

using namespace twistkit;

namespace {

// (i / 2pi) * (2pi)^2 * (mean of F) from the constant Fourier coefficient.
double analytic_c1(const ConnectionT2& A) {
  std::complex<double> mean = 0;
  const TrigPoly F = A.curvature();
  for (const auto& [m, c] : F.terms())
    if (m[0] == 0 && m[1] == 0) mean += c;
  return (std::complex<double>(0, 1) * mean * (2.0 * std::numbers::pi)).real();
}

TrigPoly random_trig_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> m(-4, 4);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  TrigPoly p;
  for (int k = 0; k < 5; ++k) p = p + TrigPoly::mode(m(rng), m(rng), {c(rng), c(rng)});
  return p;
}

using QOp = DiffOp<QuasiTorusBasis>;

QOp potential(const QuasiFunction& f) { return QOp::multiplication(f); }

}  // namespace

TEST_CASE("standard connections integrate to their degree") {
  for (int d = -3; d <= 3; ++d) {
    auto L = standard_connection(d);
    CHECK(std::abs(chern_number(L) - d) < 1e-10);
    CHECK(std::abs(analytic_c1(L.connection) - d) < 1e-12);
  }
}

TEST_CASE("gauge changes do not move c1") {
  std::mt19937 rng(2024);
  for (int d = -3; d <= 3; ++d)
    for (int trial = 0; trial < 5; ++trial) {
      auto L = gauge_transform(standard_connection(d), random_trig_poly(rng));
      CHECK(std::abs(chern_number(L) - d) < 1e-9);
    }
}

TEST_CASE("quadrature is stable under grid refinement") {
  ConnectionT2 A;
  A.A_x = TrigPoly::cos(1, 2) * std::complex<double>(0.3, 0.0);
  A.A_y = TrigPoly::sin(3, -1) * std::complex<double>(0.0, 0.7);
  A.c0 = 2.0 / (2.0 * std::numbers::pi);
  const double coarse = chern_number(A, 32), fine = chern_number(A, 64);
  CHECK(std::abs(coarse - fine) < 1e-12);
  CHECK(std::abs(fine - analytic_c1(A)) < 1e-10);
  CHECK_THROWS_AS(chern_number(A, 0), DomainError);
}

TEST_CASE("flat connections built from commuting section actions have c1 = 0") {
  QuasiTorusBasis B{2};
  auto dx = QOp::partial(B, 0, 0), dy = QOp::partial(B, 1, 0);
  auto i = Scalar::i();
  auto e = [&](int m1, int m2, const Scalar& c) { return QuasiFunction::basis_element(B, B.mode({m1, m2}), 0, c); };

  auto L0 = flat_connection_from_action(dx, dy);
  CHECK(std::abs(chern_number(L0)) < 1e-10);

  // constant potentials
  auto L1 = flat_connection_from_action(dx + potential(e(0, 0, i * Scalar::rational(1, 3))), dy + potential(e(0, 0, i)));
  CHECK(std::abs(chern_number(L1)) < 1e-10);

  // exact potential i d(phi) with phi = cos(x + 2y) written in modes
  auto half = Scalar::rational(1, 2);
  auto dphi_x = e(1, 2, i * half * i) + e(-1, -2, i * half * -i);
  auto dphi_y = e(1, 2, i * half * i * Scalar(2)) + e(-1, -2, i * half * -i * Scalar(2));
  auto L2 = flat_connection_from_action(dx + potential(dphi_x), dy + potential(dphi_y));
  CHECK(std::abs(chern_number(L2)) < 1e-10);
}

TEST_CASE("section actions outside the flat periodic setting are rejected") {
  QuasiTorusBasis B{2};
  auto dx = QOp::partial(B, 0, 0), dy = QOp::partial(B, 1, 0);
  auto x = QuasiFunction::coordinate(B, 0, 0);
  // d/dy + i x is the usual degree-one connection but its coefficient is not periodic
  CHECK_THROWS_WITH(flat_connection_from_action(dx, dy + potential(x * Scalar::i())),
                    Catch::Matchers::ContainsSubstring("periodic-coefficient"));
  // non-commuting: d/dx + e^{iy}
  auto ey = QuasiFunction::basis_element(B, B.mode({0, 1}), 0);
  CHECK_THROWS_WITH(flat_connection_from_action(dx + potential(ey), dy),
                    Catch::Matchers::ContainsSubstring("does not commute"));
  // second order
  CHECK_THROWS_AS(flat_connection_from_action(dx * dx, dy), DomainError);
}

TEST_CASE("trigonometric polynomials") {
  auto s = TrigPoly::sin(1, 0), c = TrigPoly::cos(1, 0);
  CHECK(std::abs(s(0.3, 0.0) - std::sin(0.3)) < 1e-15);
  CHECK(std::abs(c(0.3, 1.0) - std::cos(0.3)) < 1e-15);
  CHECK(std::abs(s.derivative(0)(0.7, 0.0) - std::cos(0.7)) < 1e-15);
  QuasiTorusBasis B{2};
  CHECK_THROWS_AS(TrigPoly::from_exact(QuasiFunction::coordinate(B, 1, 0)), DomainError);
}
