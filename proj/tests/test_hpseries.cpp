#include "rtech/hpseries.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace rtech;

namespace {

std::vector<long> flip_series_num(long m) {
  // (1+t)^m coefficients.
  std::vector<long> c{1};
  for (long i = 0; i < m; ++i) {
    std::vector<long> n(c.size() + 1, 0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      n[j] += c[j];
      n[j + 1] += c[j];
    }
    c = n;
  }
  return c;
}

std::vector<long> flip_series_den(long n) {
  // (1-t)^n coefficients.
  std::vector<long> c{1};
  for (long i = 0; i < n; ++i) {
    std::vector<long> d(c.size() + 1, 0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      d[j] += c[j];
      d[j + 1] -= c[j];
    }
    c = d;
  }
  return c;
}

}  // namespace

TEST_CASE("tower ranks") {
  HeckeSymmetry h = standard_hecke(2);
  auto [minus, plus] = exterior_dims(h, 3);
  CHECK(minus == std::vector<long>{1, 2, 1, 0});
  CHECK(plus == std::vector<long>{1, 2, 3, 4});

  auto [sm, sp] = exterior_dims(super_flip(1, 1), 3);
  CHECK(sm == std::vector<long>{1, 2, 2, 2});
  CHECK(sp == std::vector<long>{1, 2, 2, 2});

  auto [m1, p1] = exterior_dims(super_flip(2, 1), 1);
  CHECK(m1 == std::vector<long>{1, 3});
}

TEST_CASE("rational fitting") {
  HPSeries a = fit_series({1, 2, 1, 0, 0, 0});
  CHECK(a.num == std::vector<long>{1, 2, 1});
  CHECK(a.den == std::vector<long>{1});
  CHECK(a.birank == std::pair<long, long>{2, 0});
  CHECK(a.dims_plus == std::vector<long>{1, 2, 3, 4, 5, 6});

  HPSeries b = fit_series({1, 2, 2, 2, 2, 2});
  CHECK(b.num == std::vector<long>{1, 1});
  CHECK(b.den == std::vector<long>{1, -1});
  CHECK(b.birank == std::pair<long, long>{1, 1});
  CHECK(b.dims_plus == std::vector<long>{1, 2, 2, 2, 2, 2});

  HPSeries c = fit_series({1, 3, 4, 4, 4, 4, 4});
  CHECK(c.num == std::vector<long>{1, 2, 1});
  CHECK(c.den == std::vector<long>{1, -1});
  CHECK(c.birank == std::pair<long, long>{2, 1});
}

TEST_CASE("fitting failures carry usable messages") {
  using Catch::Matchers::ContainsSubstring;
  // A genuine rational shape that no symmetry can produce.
  CHECK_THROWS_MATCHES(fit_series({1, 2, 4, 8, 16, 32}), HPSeriesError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("not a skew-invertible Hecke HP series")));
  // No low-degree rational shape at all.
  CHECK_THROWS_MATCHES(fit_series({1, 1, 2, 6, 24, 120}), HPSeriesError,
                       Catch::Matchers::MessageMatches(ContainsSubstring("increase K")));
  // Negative numerator coefficient.
  CHECK_THROWS_MATCHES(fit_series({1, 1, 1, 2, 4, 8}), HPSeriesError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("not a skew-invertible Hecke HP series")));
}

TEST_CASE("one-box and hook values of the polynomial dimension") {
  CHECK(super_schur({1}, flip_series_num(2), flip_series_den(0)) == 2);
  CHECK(super_schur({2}, flip_series_num(1), flip_series_den(1)) == 2);
  CHECK(super_schur({2, 2}, flip_series_num(1), flip_series_den(1)) == 0);
}

TEST_CASE("polynomial dimension matches the tableau-counting oracle") {
  struct Case {
    long m, n;
  };
  for (Case cs : {Case{2, 0}, Case{3, 0}, Case{1, 1}, Case{2, 1}, Case{0, 2}}) {
    auto num = flip_series_num(cs.m);
    auto den = flip_series_den(cs.n);
    for (long k = 1; k <= 5; ++k)
      for (const Partition& p : partitions_of(k)) {
        INFO("(" << cs.m << "|" << cs.n << ") shape " << partition_str(p));
        CHECK(super_schur(p, num, den) == super_dimension(p, cs.m, cs.n));
      }
  }
}

TEST_CASE("vanishing is exactly the hook condition") {
  struct Case {
    long m, n;
  };
  for (Case cs : {Case{1, 1}, Case{2, 0}, Case{2, 1}, Case{0, 2}}) {
    auto num = flip_series_num(cs.m);
    auto den = flip_series_den(cs.n);
    for (long k = 1; k <= 6; ++k)
      for (const Partition& p : partitions_of(k)) {
        INFO("(" << cs.m << "|" << cs.n << ") shape " << partition_str(p));
        CHECK((super_schur(p, num, den) == 0) == !hook_test(p, cs.m, cs.n));
      }
  }
}

TEST_CASE("hook membership") {
  CHECK(hook_test({3, 3}, 2, 0));
  CHECK_FALSE(hook_test({1, 1, 1}, 2, 0));
  CHECK_FALSE(hook_test({5, 2, 1, 1}, 1, 1));
  CHECK(hook_test({5, 1, 1, 1}, 1, 1));
}

TEST_CASE("conjugate duality between flipped bi-ranks") {
  for (long k = 1; k <= 4; ++k)
    for (const Partition& p : partitions_of(k)) {
      CHECK(super_schur(p, flip_series_num(2), flip_series_den(1)) ==
            super_schur(conjugate(p), flip_series_num(1), flip_series_den(2)));
      CHECK(super_schur(p, flip_series_num(2), flip_series_den(0)) ==
            super_schur(conjugate(p), flip_series_num(0), flip_series_den(2)));
    }
}

TEST_CASE("series reports for the built-ins") {
  for (const HeckeSymmetry& h : {standard_hecke(2), super_flip(1, 1), super_flip(2, 1),
                                 super_flip(2, 0), super_flip(0, 2)}) {
    CheckReport rep = hp_report(h, 6);
    INFO(rep.subject);
    for (const auto& item : rep.items) {
      INFO(item.name << ": " << item.detail);
      CHECK(item.pass);
    }
  }
}

TEST_CASE("series report for the rank-three symmetry") {
  CheckReport rep = hp_report(standard_hecke(3), 6);
  INFO(rep.subject);
  for (const auto& item : rep.items) {
    INFO(item.name << ": " << item.detail);
    CHECK(item.pass);
  }
}

TEST_CASE("dimension cross-checks") {
  HeckeSymmetry h2 = standard_hecke(2);
  HPSeries s2 = fit_from_symmetry(h2, 5);
  CHECK(dimension_crosscheck(h2, {2, 1}, s2).all_pass());
  CHECK(super_schur({2, 1}, s2.num, s2.den) == 2);

  HeckeSymmetry sf = super_flip(1, 1);
  HPSeries ss = fit_from_symmetry(sf, 5);
  CHECK(dimension_crosscheck(sf, {2, 2}, ss).all_pass());
  CHECK(super_schur({2, 2}, ss.num, ss.den) == 0);

  HeckeSymmetry h3 = standard_hecke(3);
  HPSeries s3 = fit_from_symmetry(h3, 5);
  CHECK(dimension_crosscheck(h3, {2, 1}, s3).all_pass());
  CHECK(super_schur({2, 1}, s3.num, s3.den) == 8);
}
