#include <catch2/catch_amalgamated.hpp>

#include "rtech/rea.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

using namespace rtech;

namespace {

// Assembling and verifying a structure is the expensive part of this suite
// (degree-three product chains), so each symmetry is built exactly once and
// every test case reads from this cache.
struct BuiltRea {
  ReaStructure rea;
  CheckReport report;
};

const BuiltRea& cached(const HeckeSymmetry& h) {
  static std::map<std::string, BuiltRea> cache;
  auto it = cache.find(h.name);
  if (it == cache.end()) {
    ReaStructure rea = detail::assemble_rea(h, 5000);
    CheckReport report = verify_rea(rea);
    it = cache.emplace(h.name, BuiltRea{std::move(rea), std::move(report)}).first;
  }
  return it->second;
}

std::vector<HeckeSymmetry> all_builtins() {
  std::vector<HeckeSymmetry> v;
  v.push_back(standard_hecke(2));
  v.push_back(standard_hecke(3));
  v.push_back(super_flip(1, 1));
  v.push_back(super_flip(2, 1));
  v.push_back(super_flip(2, 0));
  v.push_back(super_flip(0, 2));
  return v;
}

// Component-by-component transcription of the quadratic-linear defining
// relations, one row per label (i, j; r, s):
//
//   sum R^{kl}_{ij} l_k^m R^{ps}_{ml} l_p^r  -  sum l_i^a R^{bc}_{aj} l_b^d R^{rs}_{dc}
//     - hbar ( R^{as}_{ij} l_a^r  -  l_i^b R^{rs}_{bj} )  =  0.
//
// Returned with the same sign convention as relation_coefficients: the full
// relation row is quad minus lin.
std::pair<QMatrix, QMatrix> relations_by_components(const HeckeSymmetry& h, const QScalar& hbar) {
  const long n = h.n, nn = n * n;
  QMatrix quad(nn * nn, nn * nn), lin(nn * nn, nn);
  auto R = [&](long a, long b, long c, long d) { return h.r.at(a * n + b, c * n + d); };
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      for (long r = 0; r < n; ++r)
        for (long s = 0; s < n; ++s) {
          const long row = (i * n + j) * nn + (r * n + s);
          for (long k = 0; k < n; ++k)
            for (long l = 0; l < n; ++l) {
              const QScalar c1 = R(k, l, i, j);
              if (c1.is_zero()) continue;
              for (long m = 0; m < n; ++m)
                for (long p = 0; p < n; ++p)
                  quad.add_to(row, (k * n + m) * nn + (p * n + r), c1 * R(p, s, m, l));
            }
          for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
              for (long c = 0; c < n; ++c)
                for (long d = 0; d < n; ++d)
                  quad.add_to(row, (i * n + a) * nn + (b * n + d), -(R(b, c, a, j) * R(r, s, d, c)));
          for (long a = 0; a < n; ++a) lin.add_to(row, a * n + r, hbar * R(a, s, i, j));
          for (long b = 0; b < n; ++b) lin.add_to(row, i * n + b, -(hbar * R(r, s, b, j)));
        }
  return {std::move(quad), std::move(lin)};
}

// Koszul-signed swap of two generator letters; the parity of a generator is
// the sum of its two leg parities.
QMatrix koszul_swap(long n, const std::vector<long>& parity) {
  const long nn = n * n;
  QMatrix t(nn * nn, nn * nn);
  for (long g1 = 0; g1 < nn; ++g1)
    for (long g2 = 0; g2 < nn; ++g2) {
      const long p1 = (parity[static_cast<size_t>(g1 / n)] + parity[static_cast<size_t>(g1 % n)]) % 2;
      const long p2 = (parity[static_cast<size_t>(g2 / n)] + parity[static_cast<size_t>(g2 % n)]) % 2;
      t.set(g2 * nn + g1, g1 * nn + g2, QScalar(p1 * p2 != 0 ? -1 : 1));
    }
  return t;
}

std::vector<long> parity_vector(const HeckeSymmetry& h, long even) {
  std::vector<long> p;
  for (long i = 0; i < h.n; ++i) p.push_back(i < even ? 0 : 1);
  return p;
}

// Conjugate an entry-coordinate operator into free generator-word coordinates.
QMatrix to_word_coordinates(const QMatrix& pattern, const QMatrix& op) {
  QMatrix pt = pattern.transpose();
  return pt * op * inverse(pt);
}

}  // namespace

TEST_CASE("transposed braiding inherits the braid and Hecke structure") {
  for (const auto& h : all_builtins()) {
    INFO(h.name);
    const ReaStructure& rea = cached(h).rea;
    CHECK(rea.rbar == h.r.transpose());
    CHECK(rea.rbar * rea.rbar_inv == QMatrix::identity(h.n * h.n));
    // The half projectors pick out the two Hecke eigenvalues.
    CHECK(rea.rbar * rea.p_plus == rea.p_plus.scaled(h.q));
    CHECK(rea.rbar * rea.p_minus == rea.p_minus.scaled(-h.q.inv()));
  }
}

TEST_CASE("compact relations match their component-by-component transcription") {
  for (const auto& h : {standard_hecke(2), super_flip(1, 1)}) {
    INFO(h.name);
    for (const QScalar& hbar : {QScalar(0), QScalar(1), QScalar::q(1)}) {
      auto [quad, lin] = relation_coefficients(h, hbar);
      auto [quad_o, lin_o] = relations_by_components(h, hbar);
      CHECK(quad == quad_o);
      CHECK(lin == lin_o);
    }
  }
}

TEST_CASE("structure report passes on every built-in symmetry") {
  for (const auto& h : all_builtins()) {
    const CheckReport& rep = cached(h).report;
    for (const auto& item : rep.items) {
      INFO(h.name << ": " << item.name << (item.detail.empty() ? "" : " — " + item.detail));
      CHECK(item.pass);
    }
  }
  // The public builder performs the same verification and hands back the
  // assembled structure.
  ReaStructure direct = build_rea(super_flip(1, 1));
  CHECK(direct.s3 == cached(super_flip(1, 1)).rea.s3);
}

TEST_CASE("conjugation operator has the three-eigenvalue spectrum for the standard symmetry") {
  const ReaStructure& rea = cached(standard_hecke(2)).rea;
  const QScalar q = rea.h.q;
  CHECK_FALSE(rea.proj_top.is_zero());
  CHECK_FALSE(rea.proj_unit.is_zero());
  CHECK_FALSE(rea.proj_bot.is_zero());
  CHECK(rea.q_op * rea.proj_top == rea.proj_top.scaled(-(q * q)));
  CHECK(rea.q_op * rea.proj_unit == rea.proj_unit);
  CHECK(rea.q_op * rea.proj_bot == rea.proj_bot.scaled(-(q * q).inv()));
  // Spectral multiplicities 3 + 10 + 3 fill the sixteen-dimensional space.
  CHECK(rank_symbolic(rea.proj_top) == 3);
  CHECK(rank_symbolic(rea.proj_unit) == 10);
  CHECK(rank_symbolic(rea.proj_bot) == 3);
}

TEST_CASE("fifth-order relation constants and their necessity") {
  const ReaStructure& rea = cached(standard_hecke(2)).rea;
  CHECK(rea.five_a.eval_at(Rat(1)) == Rat(1, 2));
  CHECK(rea.five_b.eval_at(Rat(1)) == Rat(1, 16));
  QScalar two = QScalar::q(1) + QScalar::q(-1);
  CHECK(rea.five_a * two.pow(4) ==
        QScalar::q(4) + QScalar::q(2) + QScalar(4) + QScalar::q(-2) + QScalar::q(-4));
  QScalar four = QScalar::q(3) + QScalar::q(1) + QScalar::q(-1) + QScalar::q(-3);
  CHECK(rea.five_b * two.pow(8) == four * four);

  // Perturbing either constant must break the relation.
  QMatrix lhs_mid = rea.s1 * rea.s2 * rea.s1;
  QMatrix rhs_mid = rea.s2 * rea.s1 * rea.s2;
  QMatrix lhs5 = rea.s1 * rea.s2 * lhs_mid;
  QMatrix rhs5 = rea.s2 * rea.s1 * rhs_mid;
  QScalar bad_a = rea.five_a + QScalar(1);
  CHECK(lhs5 - lhs_mid.scaled(bad_a) + rea.s1.scaled(rea.five_b) !=
        rhs5 - rhs_mid.scaled(bad_a) + rea.s2.scaled(rea.five_b));
  QScalar bad_b = rea.five_b + QScalar(1);
  CHECK(lhs5 - lhs_mid.scaled(rea.five_a) + rea.s1.scaled(bad_b) !=
        rhs5 - rhs_mid.scaled(rea.five_a) + rea.s2.scaled(bad_b));
}

TEST_CASE("pattern matrices are invertible basis changes") {
  for (const auto& h : all_builtins()) {
    INFO(h.name);
    const long nn = h.n * h.n;
    CHECK(pattern_matrix(h, 1) == QMatrix::identity(nn));
    CHECK(rank_symbolic(pattern_matrix(h, 2)) == nn * nn);
    if (h.n == 2) CHECK(rank_symbolic(pattern_matrix(h, 3)) == nn * nn * nn);
  }
}

TEST_CASE("degree-three operators restrict to the expected tensor factors") {
  HeckeSymmetry h = standard_hecke(2);
  const ReaStructure& rea = cached(h).rea;
  QMatrix q_words = to_word_coordinates(rea.pattern2, rea.q_op);
  QMatrix p3t = pattern_matrix(h, 3).transpose();
  QMatrix p3t_inv = inverse(p3t);
  QMatrix id4 = QMatrix::identity(4);
  CHECK(p3t * rea.q1 * p3t_inv == kron(q_words, id4));
  CHECK(p3t * rea.q2 * p3t_inv == kron(id4, q_words));
  QMatrix s_words = to_word_coordinates(rea.pattern2, rea.s_op);
  CHECK(p3t * rea.s1 * p3t_inv == kron(s_words, id4));
  CHECK(p3t * rea.s2 * p3t_inv == kron(id4, s_words));
}

TEST_CASE("involutive symmetrizers agree with the graded classical ones") {
  struct Case {
    HeckeSymmetry h;
    long even;
  };
  for (const auto& [h, even] : {Case{super_flip(1, 1), 1}, Case{super_flip(2, 0), 2},
                                Case{super_flip(0, 2), 0}}) {
    INFO(h.name);
    const ReaStructure& rea = cached(h).rea;
    const long d2 = h.n * h.n * h.n * h.n;
    QMatrix tau = koszul_swap(h.n, parity_vector(h, even));
    QMatrix id = QMatrix::identity(d2);
    QScalar half(Rat(1, 2));
    CHECK(to_word_coordinates(rea.pattern2, rea.q_op) == tau);
    CHECK(to_word_coordinates(rea.pattern2, rea.s_op) == (id + tau).scaled(half));
    CHECK(to_word_coordinates(rea.pattern2, rea.a_op) == (id - tau).scaled(half));

    // Degree three: the symmetrizer is the mean of the six signed shuffles.
    QMatrix t1 = kron(tau, QMatrix::identity(h.n * h.n));
    QMatrix t2 = kron(QMatrix::identity(h.n * h.n), tau);
    QMatrix full = QMatrix::identity(d2 * h.n * h.n) + t1 + t2 + t1 * t2 + t2 * t1 + t1 * t2 * t1;
    QMatrix p3t = pattern_matrix(h, 3).transpose();
    CHECK(p3t * rea.s3 * inverse(p3t) == full.scaled(QScalar(Rat(1, 6))));
  }
}

TEST_CASE("standard symmetrizers collapse to the classical ones at q = 1") {
  for (long m : {2L, 3L}) {
    HeckeSymmetry h = standard_hecke(m);
    INFO(h.name);
    const ReaStructure& rea = cached(h).rea;
    QMatrix p2t1 = rea.pattern2.eval_at(Rat(1)).transpose();
    QMatrix s_classical = p2t1 * rea.s_op.eval_at(Rat(1)) * inverse(p2t1);
    QMatrix tau = koszul_swap(h.n, parity_vector(h, h.n));
    CHECK(s_classical == (QMatrix::identity(h.n * h.n * h.n * h.n) + tau).scaled(QScalar(Rat(1, 2))));
  }
}

TEST_CASE("quadratic relation span equals the antisymmetrizer image") {
  for (const auto& h : all_builtins()) {
    INFO(h.name);
    const ReaStructure& rea = cached(h).rea;
    CHECK(ideal_span_check(rea));

    // The same span computed from the compact relation rows, in word
    // coordinates, against the conjugation-operator route.
    QMatrix quad = relation_coefficients(h, QScalar(0)).first;
    QMatrix via_q = relation_span(rea).transpose() * rea.pattern2;
    long r1 = rank_symbolic(quad);
    long r2 = rank_symbolic(via_q);
    long r3 = rank_symbolic(vstack(quad, via_q));
    CHECK(r1 == r2);
    CHECK(r2 == r3);

    // A corrupted antisymmetrizer must be caught.
    ReaStructure broken = rea;
    broken.a_op = rea.s_op;
    CHECK_FALSE(ideal_span_check(broken));
  }
}

TEST_CASE("component dimensions match the classical counts") {
  const ReaStructure& std2 = cached(standard_hecke(2)).rea;
  CHECK(component_dims(std2, 2) == std::pair<long, long>{10, 10});
  CHECK(component_dims(std2, 3) == std::pair<long, long>{20, 20});

  const ReaStructure& std3 = cached(standard_hecke(3)).rea;
  CHECK(component_dims(std3, 2) == std::pair<long, long>{45, 45});

  // Graded cases: generic and classical ranks agree, and both equal the rank
  // of the graded classical symmetrizer.
  struct Case {
    HeckeSymmetry h;
    long even;
    long expect2;
  };
  for (const auto& [h, even, expect2] :
       {Case{super_flip(1, 1), 1, 8}, Case{super_flip(2, 0), 2, 10},
        Case{super_flip(0, 2), 0, 10}, Case{super_flip(2, 1), 2, 41}}) {
    INFO(h.name);
    const ReaStructure& rea = cached(h).rea;
    auto [generic, classical] = component_dims(rea, 2);
    CHECK(generic == classical);
    QMatrix tau = koszul_swap(h.n, parity_vector(h, even));
    long oracle = rank_symbolic(
        (QMatrix::identity(h.n * h.n * h.n * h.n) + tau).scaled(QScalar(Rat(1, 2))));
    CHECK(generic == oracle);
    CHECK(generic == expect2);
  }

  CHECK(component_dims(cached(super_flip(1, 1)).rea, 3) == std::pair<long, long>{12, 12});
  CHECK(component_dims(cached(super_flip(2, 0)).rea, 3) == std::pair<long, long>{20, 20});

  CHECK_THROWS_AS(component_dims(std2, 4), std::invalid_argument);
}

TEST_CASE("non-Hecke input is rejected with a named failure") {
  HeckeSymmetry fake = super_flip(2, 0);
  fake.name = "tampered flip";
  fake.r = fake.r.scaled(QScalar(2));
  CHECK_THROWS_AS(build_rea(fake), ReaError);
  CheckReport rep = rea_report(fake);
  CHECK_FALSE(rep.all_pass());
}
