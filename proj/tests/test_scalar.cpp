#include "rtech/qscalar.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace rtech;

namespace {

// Independent random rational-function generator for the algebra-law checks.
QScalar random_scalar(std::mt19937& rng, bool allow_zero = true) {
  std::uniform_int_distribution<int> coef(-4, 4), expo(-3, 3), len(1, 3);
  auto poly = [&]() {
    Laurent p;
    int n = len(rng);
    for (int i = 0; i < n; ++i) p += Laurent::term(Rat(coef(rng)), expo(rng));
    return p;
  };
  Laurent num = poly(), den;
  while (den.is_zero()) den = poly();
  if (!allow_zero && num.is_zero()) num = Laurent::one();
  return QScalar::frac(num, den);
}

}  // namespace

TEST_CASE("q-integers expand to balanced Laurent polynomials") {
  CHECK(qint(0).is_zero());
  CHECK(qint(1).is_one());
  CHECK(qint(2) == QScalar::parse("q + q^-1"));
  CHECK(qint(3) == QScalar::parse("q^2 + 1 + q^-2"));
  CHECK(qint(-3) == -qint(3));
  // Independent route: (q^k - q^-k)/(q - q^-1) as an explicit fraction.
  for (long k = 1; k <= 8; ++k) {
    QScalar frac =
        QScalar::frac(Laurent::q(k) - Laurent::q(-k), Laurent::q(1) - Laurent::q(-1));
    CHECK(frac == qint(k));
  }
  CHECK(qint(3).eval_at(Rat(2)) == Rat(21, 4));
}

TEST_CASE("Gaussian binomials") {
  // Oracle: exact Laurent division of the product formula, done with divexact
  // rather than the qint route used by qbinom itself.
  Laurent num = (Laurent::q(3) - Laurent::q(-3)) * (Laurent::q(4) - Laurent::q(-4));
  Laurent den = (Laurent::q(1) - Laurent::q(-1)) * (Laurent::q(2) - Laurent::q(-2));
  CHECK(QScalar(num.divexact(den)) == qbinom(4, 2));
  CHECK(qbinom(4, 2) == QScalar::parse("q^4 + q^2 + 2 + q^-2 + q^-4"));

  CHECK(qbinom(5, 0).is_one());
  CHECK(qbinom(5, 5).is_one());
  CHECK_THROWS_AS(qbinom(2, 3), std::domain_error);
  CHECK_THROWS_AS(qbinom(3, -1), std::domain_error);

  // Symmetry and the q-Pascal recursion.
  for (long p = 1; p <= 6; ++p)
    for (long k = 0; k <= p; ++k) {
      CHECK(qbinom(p, k) == qbinom(p, p - k));
      if (k >= 1 && k <= p - 1)
        CHECK(qbinom(p, k) ==
              QScalar::q(k - p) * qbinom(p - 1, k - 1) + QScalar::q(k) * qbinom(p - 1, k));
    }
}

TEST_CASE("canonical form is a normal form") {
  // Same value built three different ways must agree structurally.
  QScalar a = QScalar::frac(Laurent::q(2) - Laurent::one(), Laurent::q(1) - Laurent::one());
  QScalar b = QScalar::parse("q + 1");
  CHECK(a == b);

  QScalar c = QScalar::frac((Laurent::q(1) + Laurent::one()) * (Laurent::q(1) - Laurent::q(-1)),
                            (Laurent::q(1) - Laurent::q(-1)));
  CHECK(c == b);

  // Denominator normalization: lowest term monic with exponent zero.
  QScalar d = QScalar::frac(Laurent::q(5), Laurent::term(Rat(3), 2) + Laurent::term(Rat(3), 4));
  CHECK(d.den().lo() == 0);
  CHECK(d.den().coeff(0) == 1);
  CHECK(d == QScalar::parse("q^3/(3 + 3q^2)"));
}

TEST_CASE("field laws on random values") {
  std::mt19937 rng(20240817);
  for (int it = 0; it < 200; ++it) {
    QScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    QScalar d = random_scalar(rng, /*allow_zero=*/false);
    CHECK(a / d * d == a);
    CHECK(d * d.inv() == QScalar(1));
  }
}

TEST_CASE("evaluation and poles") {
  QScalar omega = QScalar::q() - QScalar::q(-1);
  QScalar f = omega.inv();
  CHECK_THROWS_AS(f.eval_at(Rat(1)), EvalError);
  CHECK_THROWS_WITH(f.eval_at(Rat(1)), Catch::Matchers::ContainsSubstring("denominator factor"));
  CHECK(f.eval_at(Rat(2)) == Rat(2, 3));
  CHECK_THROWS_AS(f.eval_at(Rat(0)), EvalError);

  // Removable factors cancel in canonical form, so no false poles.
  QScalar g = qint(2) * omega / omega;
  CHECK(g.eval_at(Rat(1)) == Rat(2));
}

TEST_CASE("derivatives") {
  CHECK(qint(3).derivative() == QScalar::parse("2q - 2q^-3"));
  QScalar f = QScalar::parse("(q^2 + 1)/q");
  CHECK(f.derivative() == QScalar::parse("1 - q^-2"));
  // Product rule on randoms.
  std::mt19937 rng(7);
  for (int it = 0; it < 50; ++it) {
    QScalar a = random_scalar(rng), b = random_scalar(rng);
    CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
  }
}

TEST_CASE("text round trip") {
  std::mt19937 rng(99);
  for (int it = 0; it < 100; ++it) {
    QScalar a = random_scalar(rng);
    CHECK(QScalar::parse(a.str()) == a);
  }
  CHECK(QScalar::parse("q^2 - 1 + q^-2").str() == "q^2 - 1 + q^-2");
}

TEST_CASE("json round trip") {
  std::mt19937 rng(123);
  for (int it = 0; it < 100; ++it) {
    QScalar a = random_scalar(rng);
    auto j = to_json(a);
    CHECK(qscalar_from_json(j) == a);
    // Byte-stable: serializing twice gives identical text.
    CHECK(j.dump() == to_json(qscalar_from_json(j)).dump());
  }
  QScalar f = QScalar::frac(Laurent::q(2) + Laurent::term(Rat(1, 2), -1), Laurent::one());
  CHECK(to_json(f).dump() == R"({"num":[[-1,"1/2"],[2,"1"]],"den":[[0,"1"]]})");
}
