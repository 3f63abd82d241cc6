#include <catch2/catch_amalgamated.hpp>

#include "rtech/swcat.hpp"

#include <functional>
#include <map>
#include <vector>

using namespace rtech;

namespace {

// Schur polynomial evaluated at the balanced geometric points
// x_t = q^{v+1-2t}, t = 1..v, by direct semistandard-tableau summation.
QScalar schur_balanced(const Partition& shape, long v) {
  std::vector<std::pair<long, long>> cells;
  for (size_t r = 0; r < shape.size(); ++r)
    for (long c = 0; c < shape[r]; ++c) cells.push_back({static_cast<long>(r), c});
  std::map<std::pair<long, long>, long> fill;
  QScalar total(0);
  std::function<void(size_t, QScalar)> rec = [&](size_t idx, QScalar w) {
    if (idx == cells.size()) {
      total = total + w;
      return;
    }
    auto [r, c] = cells[idx];
    long lo = 1;
    if (c > 0) lo = std::max(lo, fill[{r, c - 1}]);
    if (r > 0) lo = std::max(lo, fill[{r - 1, c}] + 1);
    for (long t = lo; t <= v; ++t) {
      fill[{r, c}] = t;
      rec(idx + 1, w * QScalar::q(v + 1 - 2 * t));
    }
  };
  rec(0, QScalar(1));
  return total;
}

// The same value collapsed at q = 1, for involutive symmetries.
QScalar schur_counted(const Partition& shape, long v) {
  return QScalar(schur_balanced(shape, v).eval_at(Rat(1)));
}

// Signed block rotation of a graded word, the expected mixed braiding for
// super_flip(1,1): basis letter 0 is even, letter 1 is odd, covectors carry
// the parity of their vectors.
QMatrix graded_block_swap(const MixedWord& w1, const MixedWord& w2) {
  const long a = static_cast<long>(w1.size());
  const long k = a + static_cast<long>(w2.size());
  const long dim = 1L << k;
  QMatrix m(Legs(static_cast<size_t>(k), 2), Legs(static_cast<size_t>(k), 2));
  for (long idx = 0; idx < dim; ++idx) {
    std::vector<long> in(static_cast<size_t>(k));
    for (long p = 0; p < k; ++p) in[static_cast<size_t>(p)] = (idx >> (k - 1 - p)) & 1;
    long sign = 0;
    for (long i = 0; i < a; ++i)
      for (long j = a; j < k; ++j) sign += in[static_cast<size_t>(i)] * in[static_cast<size_t>(j)];
    std::vector<long> out;
    for (long j = a; j < k; ++j) out.push_back(in[static_cast<size_t>(j)]);
    for (long i = 0; i < a; ++i) out.push_back(in[static_cast<size_t>(i)]);
    long ridx = 0;
    for (long p = 0; p < k; ++p) ridx = 2 * ridx + out[static_cast<size_t>(p)];
    m.set(ridx, idx, QScalar(sign % 2 == 0 ? 1 : -1));
  }
  return m;
}

}  // namespace

TEST_CASE("extended braiding blocks assemble into the doubled operator") {
  for (const HeckeSymmetry& h : {standard_hecke(2), super_flip(2, 1)}) {
    ExtendedBraiding e = extend_braiding(h);
    const long n = h.n;
    CHECK(e.vv == h.r);
    long nnz = 0;
    const std::pair<Leg, Leg> words[4] = {{Leg::V, Leg::V},
                                          {Leg::V, Leg::Dual},
                                          {Leg::Dual, Leg::V},
                                          {Leg::Dual, Leg::Dual}};
    for (auto [s1, s2] : words) {
      const QMatrix& blk = e.block(s1, s2);
      nnz += blk.nnz();
      long in1 = (s1 == Leg::V) ? 0 : n, in2 = (s2 == Leg::V) ? 0 : n;
      for (long r0 = 0; r0 < blk.rows(); ++r0)
        for (const auto& [c0, v] : blk.row(r0)) {
          long row = (in2 + r0 / n) * 2 * n + (in1 + r0 % n);
          long col = (in1 + c0 / n) * 2 * n + (in2 + c0 % n);
          CHECK(e.total.at(row, col) == v);
        }
    }
    CHECK(e.total.nnz() == nnz);
  }
}

TEST_CASE("the extension of a graded flip is the signed flip on the doubled space") {
  HeckeSymmetry h = super_flip(1, 1);
  ExtendedBraiding e = extend_braiding(h);
  // Parities of the doubled basis (x_1, x_2, x^1, x^2).
  const int par[4] = {0, 1, 0, 1};
  QMatrix expected(Legs{4, 4}, Legs{4, 4});
  for (long a = 0; a < 4; ++a)
    for (long b = 0; b < 4; ++b)
      expected.set(b * 4 + a, a * 4 + b, QScalar(par[a] * par[b] == 1 ? -1 : 1));
  CHECK(e.total == expected);

  // Involutive symmetries extend to involutive operators.
  QMatrix id16 = QMatrix::identity(16);
  CHECK(e.total * e.total == id16);
  ExtendedBraiding plain = extend_braiding(super_flip(2, 0));
  CHECK(plain.total * plain.total == QMatrix::identity(16));
}

TEST_CASE("a corrupted skew inverse breaks the doubled braid relation") {
  HeckeSymmetry broken = standard_hecke(2);
  broken.psi.set(0, 0, broken.psi.at(0, 0) + QScalar(1));
  CHECK_THROWS_MATCHES(extend_braiding(broken), YangBaxterError,
                       Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                           "braid relation fails on the extended space")));
}

TEST_CASE("mixed braidings compose from elementary blocks") {
  HeckeSymmetry h = standard_hecke(2);
  ExtendedBraiding e = extend_braiding(h);
  const long n = h.n;

  CHECK(mixed_braiding(e, {Leg::V}, {Leg::V}) == h.r);
  CHECK(mixed_braiding(e, {Leg::V}, {Leg::Dual}) == e.vd);
  CHECK(mixed_braiding(e, {Leg::Dual}, {Leg::V}) == e.dv);
  CHECK(mixed_braiding(e, {Leg::Dual}, {Leg::Dual}) == e.dd);
  CHECK(mixed_braiding(e, {}, {Leg::V, Leg::Dual}) == QMatrix::identity(n * n));

  // Carrying a two-letter word past one letter factors with the inner
  // crossing applied first.
  CHECK(mixed_braiding(e, {Leg::V, Leg::V}, {Leg::V}) ==
        amplify(h.r, 1, 3, n) * amplify(h.r, 2, 3, n));
  CHECK(mixed_braiding(e, {Leg::V, Leg::Dual}, {Leg::V}) ==
        amplify(e.vv, 1, 3, n) * amplify(e.dv, 2, 3, n));

  // Functoriality in both slots.
  MixedWord u1{Leg::V}, u2{Leg::Dual}, w{Leg::V};
  QMatrix lhs = mixed_braiding(e, {Leg::V, Leg::Dual}, {Leg::Dual, Leg::V});
  QMatrix rhs = kron(QMatrix::identity(n), mixed_braiding(e, {Leg::V, Leg::Dual}, {Leg::V})) *
                kron(mixed_braiding(e, {Leg::V, Leg::Dual}, {Leg::Dual}), QMatrix::identity(n));
  CHECK(lhs == rhs);
  QMatrix lhs2 = mixed_braiding(e, {Leg::V, Leg::Dual}, w);
  QMatrix rhs2 = kron(mixed_braiding(e, u1, w), QMatrix::identity(n)) *
                 kron(QMatrix::identity(n), mixed_braiding(e, u2, w));
  CHECK(lhs2 == rhs2);
}

TEST_CASE("mixed braidings of a graded flip are signed block rotations") {
  ExtendedBraiding e = extend_braiding(super_flip(1, 1));
  const std::vector<std::pair<MixedWord, MixedWord>> cases = {
      {{Leg::V, Leg::Dual}, {Leg::V}},
      {{Leg::Dual}, {Leg::V, Leg::V}},
      {{Leg::V, Leg::Dual}, {Leg::Dual, Leg::V}},
      {{Leg::Dual, Leg::Dual}, {Leg::V}},
  };
  for (const auto& [w1, w2] : cases)
    CHECK(mixed_braiding(e, w1, w2) == graded_block_swap(w1, w2));
}

TEST_CASE("pairing morphisms are invariant and the naive pairing is obstructed") {
  for (const HeckeSymmetry& h :
       {standard_hecke(2), standard_hecke(3), super_flip(1, 1), super_flip(2, 1)}) {
    ExtendedBraiding e = extend_braiding(h);
    Pairings p = pairings(h);
    CHECK(check_invariance(e, p.right_form, {Leg::V, Leg::Dual}, {}));
    CHECK(check_invariance(e, p.left_form, {Leg::Dual, Leg::V}, {}));
    CHECK(check_invariance(e, p.right_copairing, {}, {Leg::Dual, Leg::V}));
    CHECK(check_invariance(e, p.left_copairing, {}, {Leg::V, Leg::Dual}));
    CHECK(check_invariance(e, transition_map(h), {Leg::V, Leg::Dual}, {Leg::Dual, Leg::V}));

    // The undeformed delta pairing on V* (x) V survives exactly in the
    // involutive case; a genuine q-deformation obstructs it.
    QMatrix naive(Legs{1}, Legs{h.n, h.n});
    for (long i = 0; i < h.n; ++i) naive.set(0, i * h.n + i, QScalar(1));
    CHECK(check_invariance(e, naive, {Leg::Dual, Leg::V}, {}) == h.involutive());
  }
}

TEST_CASE("pairing matrices carry the certified contraction data") {
  HeckeSymmetry h = standard_hecke(2);
  Pairings p = pairings(h);
  CHECK(p.right_form.at(0, 0) == QScalar(1));
  CHECK(p.right_form.at(0, 3) == QScalar(1));
  CHECK(p.right_form.nnz() == 2);
  CHECK(p.left_form.at(0, 0) == QScalar::q(-1));
  CHECK(p.left_form.at(0, 3) == QScalar::q(-3));
  CHECK(p.left_basis.at(0, 0) == QScalar::q(1));
  CHECK(p.left_basis.at(1, 1) == QScalar::q(3));
  CHECK(p.left_copairing.at(0, 0) == QScalar::q(1));
  CHECK(p.left_copairing.at(3, 0) == QScalar::q(3));

  Pairings pg = pairings(super_flip(1, 1));
  CHECK(pg.left_form.at(0, 0) == QScalar(1));
  CHECK(pg.left_form.at(0, 3) == QScalar(-1));
  CHECK(pg.left_basis == super_flip(1, 1).c);
}

TEST_CASE("left-form diagrams distinguish the involutive case") {
  HeckeSymmetry h = standard_hecke(2);
  ExtendedBraiding e = extend_braiding(h);
  Pairings p = pairings(h);
  CHECK(p.left_form == p.right_form * e.dv);
  CHECK(p.left_form * e.vd == p.right_form.scaled(h.nu));
  CHECK(p.left_form * e.vd != p.right_form);

  HeckeSymmetry g = super_flip(1, 1);
  ExtendedBraiding eg = extend_braiding(g);
  Pairings pgr = pairings(g);
  CHECK(pgr.left_form == pgr.right_form * eg.dv);
  CHECK(pgr.left_form * eg.vd == pgr.right_form);
}

TEST_CASE("the category report passes for every built-in symmetry") {
  for (const HeckeSymmetry& h : {standard_hecke(2), standard_hecke(3), super_flip(1, 1),
                                 super_flip(2, 1), super_flip(2, 0), super_flip(0, 2)}) {
    CheckReport rep = category_report(h);
    INFO(h.name);
    for (const auto& item : rep.items) {
      INFO(item.name + (item.detail.empty() ? "" : ": " + item.detail));
      CHECK(item.pass);
    }
    CHECK(rep.all_pass());
  }
}

TEST_CASE("categorical trace evaluates matrix units to the delta") {
  for (const HeckeSymmetry& h : {standard_hecke(2), standard_hecke(3), super_flip(2, 1)}) {
    for (long i = 0; i < h.n; ++i)
      for (long j = 0; j < h.n; ++j) {
        // The operator x_k |-> B^j_k x_i of the right-basis presentation.
        QMatrix f(Legs{h.n}, Legs{h.n});
        for (long k = 0; k < h.n; ++k) {
          QScalar v = h.b.at(j, k);
          if (!(v == QScalar(0))) f.set(i, k, v);
        }
        CHECK(r_trace(h, f) == QScalar(i == j ? 1 : 0));
      }
  }
}

TEST_CASE("categorical trace of the identity is the weighted contraction") {
  CHECK(r_trace(standard_hecke(2), QMatrix::identity(2)) == QScalar::q(3) + QScalar::q(1));
  CHECK(r_trace(standard_hecke(3), QMatrix::identity(3)) ==
        QScalar::q(5) + QScalar::q(3) + QScalar::q(1));
  CHECK(r_trace(super_flip(1, 1), QMatrix::identity(2)) == QScalar(0));
  CHECK(r_trace(super_flip(2, 1), QMatrix::identity(3)) == QScalar(1));
  CHECK(r_trace(super_flip(0, 2), QMatrix::identity(2)) == QScalar(-2));

  HeckeSymmetry h = standard_hecke(2);
  QMatrix f(Legs{2}, Legs{2});
  f.set(0, 1, QScalar::q(2));
  CHECK(r_trace(h, f + QMatrix::identity(2)) ==
        r_trace(h, f) + r_trace(h, QMatrix::identity(2)));
  CHECK_THROWS_AS(r_trace(h, QMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("categorical dimensions are balanced Schur values") {
  HeckeSymmetry h2 = standard_hecke(2);
  CHECK(r_dimension(h2, {}) == QScalar(1));
  CHECK(r_dimension(h2, {1}) == qint(2));
  CHECK(r_dimension(h2, {2}) == qint(3));
  CHECK(r_dimension(h2, {1, 1}) == QScalar(1));
  CHECK(r_dimension(h2, {3}) == qint(4));
  CHECK(r_dimension(h2, {2, 1}) == qint(2));
  CHECK(r_dimension(h2, {1, 1, 1}) == QScalar(0));
  CHECK(r_dimension(h2, {2, 2}) == QScalar(1));
  for (const Partition& lam :
       {Partition{1}, {2}, {1, 1}, {3}, {2, 1}, {1, 1, 1}, {2, 2}})
    CHECK(r_dimension(h2, lam) == schur_balanced(lam, 2));

  HeckeSymmetry h3 = standard_hecke(3);
  CHECK(r_dimension(h3, {1}) == qint(3));
  CHECK(r_dimension(h3, {1, 1}) == qbinom(3, 2));
  CHECK(r_dimension(h3, {1, 1, 1}) == QScalar(1));
  for (const Partition& lam : {Partition{2}, {2, 1}})
    CHECK(r_dimension(h3, lam) == schur_balanced(lam, 3));
}

TEST_CASE("categorical dimensions collapse by super-rank in the involutive case") {
  HeckeSymmetry b = super_flip(2, 1);
  for (const Partition& lam : {Partition{1}, {2}, {1, 1}, {3}, {2, 1}, {1, 1, 1}})
    CHECK(r_dimension(b, lam) == schur_counted(lam, 1));
  CHECK(r_dimension(b, {1}) == QScalar(1));
  CHECK(r_dimension(b, {1, 1}) == QScalar(0));

  // Balanced super-rank zero kills every nontrivial dimension.
  HeckeSymmetry z = super_flip(1, 1);
  for (const Partition& lam : {Partition{1}, {2}, {1, 1}, {3}, {2, 1}, {1, 1, 1}})
    CHECK(r_dimension(z, lam) == QScalar(0));

  // Negative super-rank swaps rows and columns and signs odd degrees: the
  // all-odd contraction matrix C has trace -(2)_q, so degree k picks up
  // (-1)^k against the conjugate Schur value.
  HeckeSymmetry d = super_flip(0, 2);
  for (const Partition& lam : {Partition{1}, {2}, {1, 1}, {3}}) {
    QScalar sign(weight(lam) % 2 == 0 ? 1 : -1);
    CHECK(r_dimension(d, lam) == sign * schur_counted(conjugate(lam), 2));
  }
  CHECK(r_dimension(d, {1}) == QScalar(-2));
  CHECK(r_dimension(d, {2}) == QScalar(1));
  CHECK(r_dimension(d, {1, 1}) == QScalar(3));
  CHECK(r_dimension(d, {3}) == QScalar(0));
}

TEST_CASE("antisymmetric tower dimensions are Gaussian binomials") {
  std::vector<QScalar> qm2 = q_minus_coefficients(standard_hecke(2), 3);
  REQUIRE(qm2.size() == 4);
  CHECK(qm2[0] == QScalar(1));
  CHECK(qm2[1] == qbinom(2, 1));
  CHECK(qm2[2] == qbinom(2, 2));
  CHECK(qm2[3] == QScalar(0));

  std::vector<QScalar> qm3 = q_minus_coefficients(standard_hecke(3), 4);
  REQUIRE(qm3.size() == 5);
  for (long k = 0; k <= 3; ++k) CHECK(qm3[static_cast<size_t>(k)] == qbinom(3, k));
  CHECK(qm3[4] == QScalar(0));

  // Negative super-rank moves the terminating tower to the symmetric side,
  // with the odd-degree sign of the all-odd contraction matrix.
  std::vector<QScalar> qp = q_plus_coefficients(super_flip(0, 2), 3);
  REQUIRE(qp.size() == 4);
  CHECK(qp[0] == QScalar(1));
  CHECK(qp[1] == QScalar(-2));
  CHECK(qp[2] == QScalar(1));
  CHECK(qp[3] == QScalar(0));
}

TEST_CASE("categorical dimension is additive and multiplicative over towers") {
  for (const HeckeSymmetry& h : {standard_hecke(2), super_flip(2, 1)}) {
    QScalar dim_v = r_dimension(h, {1});
    for (long k = 2; k <= 3; ++k) {
      QScalar sum(0);
      for (const Partition& lam : partitions_of(k))
        sum = sum + QScalar(standard_tableau_count(lam)) * r_dimension(h, lam);
      CHECK(sum == dim_v.pow(k));
    }
  }
}

TEST_CASE("categorical dimension requires the bi-rank certificate") {
  HeckeSymmetry anon = certify_hecke(standard_r_matrix(2), QScalar::q(), "anonymous");
  CHECK_FALSE(anon.birank.has_value());
  CHECK_THROWS_AS(r_dimension(anon, {1}), std::domain_error);
}
