#include <random>

#include "catch_amalgamated.hpp"

#include "twistkit/series.hpp"

using namespace twistkit;

namespace {

Scalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  return Scalar(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
}

ScalarSeries random_series(std::mt19937& rng, std::size_t N, bool zero_head) {
  ScalarSeries s(N);
  for (std::size_t k = 0; k <= N; ++k) s[k] = random_scalar(rng);
  if (zero_head) s[0] = Scalar();
  return s;
}

}  // namespace

TEST_CASE("complex rationals render and parse back") {
  CHECK(Scalar().to_string() == "0");
  CHECK(Scalar::rational(-1, 2).to_string() == "-1/2");
  CHECK((Scalar::i() * Scalar::rational(-1, 2)).to_string() == "-1/2*i");
  CHECK(Scalar(mpq_class(1, 2), mpq_class(-3, 4)).to_string() == "1/2-3/4*i");
  for (const char* text : {"0", "7", "-1/2*i", "1/2-3/4*i", "-5/3+2*i", "1*i"}) CHECK(Scalar::parse(text).to_string() == text);
  CHECK_THROWS_AS(Scalar::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Scalar::parse("x"), DomainError);
}

TEST_CASE("i squared is -1 and inverses are exact") {
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  const Scalar z(mpq_class(3, 5), mpq_class(-4, 7));
  CHECK(z * *z.inverse() == Scalar(1));
  CHECK_FALSE(Scalar().inverse().has_value());
  CHECK(z.conj().conj() == z);
}

TEST_CASE("field axioms hold on random complex rationals") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * *a.inverse() == Scalar(1));
    CHECK(Scalar::parse(a.to_string()) == a);
  }
}

TEST_CASE("series arithmetic is truncated and order-checked") {
  const auto h = ScalarSeries::monomial(Scalar(1), 1, 3);
  const auto h3 = h * h * h;
  CHECK(h3[3] == Scalar(1));
  CHECK((h3 * h).is_zero());
  CHECK(h3.valuation() == 3u);
  CHECK_THROWS_AS(h + ScalarSeries::monomial(Scalar(1), 1, 4), StructuralError);
  CHECK_THROWS_AS(series_mul(h, ScalarSeries(5)), StructuralError);
}

TEST_CASE("series inverse, exp and log1p agree with their defining identities") {
  std::mt19937 rng(5);
  const std::size_t N = 6;
  const auto one = ScalarSeries::constant(Scalar(1), N);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_series(rng, N, false);
    if (a[0].is_zero()) a[0] = Scalar(1);
    CHECK(a * series_invert(a) == one);
    const auto w = random_series(rng, N, true);
    CHECK(series_exp(series_log1p(w), Scalar(1)) == one + w);
    CHECK(series_log1p(series_exp(w, Scalar(1)) - one) == w);
    const auto v = random_series(rng, N, true);
    CHECK(series_exp(w + v, Scalar(1)) == series_exp(w, Scalar(1)) * series_exp(v, Scalar(1)));
  }
  CHECK_THROWS_AS(series_exp(one, Scalar(1)), DomainError);
  CHECK_THROWS_AS(series_invert(ScalarSeries(N)), DomainError);
}

TEST_CASE("exp(ih) has coefficients i^k/k!") {
  const std::size_t N = 6;
  const auto e = series_exp(ScalarSeries::monomial(Scalar::i(), 1, N), Scalar(1));
  Scalar ik(1);
  long fact = 1;
  for (std::size_t k = 0; k <= N; ++k) {
    if (k) {
      ik = ik * Scalar::i();
      fact *= static_cast<long>(k);
    }
    CHECK(e[k] == ik * Scalar::rational(1, fact));
  }
}
