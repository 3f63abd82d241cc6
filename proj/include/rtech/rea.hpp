#pragma once
// Reflection equation algebra layer.
//
// The algebra is generated by the entries of an N x N matrix L (entry (i, j)
// is the generator with lower index i and upper index j) with quadratic
// defining relations written through the transposed braiding Rbar:
//
//     Rbar L1 Rbar L1 - L1 Rbar L1 Rbar - hbar (Rbar L1 - L1 Rbar) = 0.
//
// Everything here works with the homogeneous quotient (hbar = 0).  Degree-k
// components are coordinatized by the entries of the product Lbar_1 ... Lbar_k,
// where Lbar_1 = L (x) I and Lbar_{p+1} = Rbar_p Lbar_p Rbar_p^{-1}; the
// change from free generator words to this basis is the invertible pattern
// matrix computed below.  In these coordinates the conjugation operator
// Q : X -> Rbar X Rbar^{-1} becomes an explicit N^4 x N^4 matrix, and the
// degree-two and degree-three symmetrizers are polynomial expressions in it.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rtech/hecke.hpp"
#include "rtech/heckealg.hpp"
#include "rtech/qmatrix.hpp"
#include "rtech/qscalar.hpp"
#include "rtech/report.hpp"

namespace rtech {

struct ReaError : std::runtime_error {
  explicit ReaError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline long ipow(long base, long exp) {
  long r = 1;
  for (long i = 0; i < exp; ++i) r *= base;
  return r;
}

// Coordinate matrix, on entries of an N^k x N^k matrix M, of the two-sided
// multiplication M -> X M Y.  Entry indices are flattened row-major.
inline QMatrix two_sided(const QMatrix& x, const QMatrix& y) {
  return kron(x.transpose(), y);
}

// --- Matrices with entries linear in the generators -------------------------
//
// An N^k x N^k matrix whose entries are linear forms in the N^2 generators is
// stored as an N^k x (N^k * N^2) scalar matrix: column (c, g) holds the
// coefficient of generator g in entry (row, c).  Products against scalar
// matrices act on the row index or the matrix-column slot; products of two
// linear-valued matrices produce quadratic words (first factor's generator in
// the high bits, so words read left to right).

inline QMatrix lin_first_factor(long n, long k) {
  long rest = ipow(n, k - 1);
  QMatrix t(ipow(n, k), ipow(n, k) * n * n);
  for (long i = 0; i < n; ++i)
    for (long ip = 0; ip < n; ++ip)
      for (long s = 0; s < rest; ++s)
        t.set(i * rest + s, (ip * rest + s) * (n * n) + (i * n + ip), QScalar(1));
  return t;
}

// The generator matrix in the second of two tensor slots: entry ((a, i),
// (b, j)) equals delta_a^b l_i^j.
inline QMatrix lin_second_factor(long n) {
  QMatrix t(n * n, n * n * n * n);
  for (long a = 0; a < n; ++a)
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        t.set(a * n + i, (a * n + j) * (n * n) + (i * n + j), QScalar(1));
  return t;
}

inline QMatrix mat_times_lin(const QMatrix& m, const QMatrix& t) { return m * t; }

inline QMatrix lin_times_mat(const QMatrix& t, const QMatrix& m, long gens) {
  return t * kron(m, QMatrix::identity(gens));
}

// Multiply two matrices with word-valued entries; `wu` and `wt` are the word
// lengths (number of generator letters) carried by each factor.
inline QMatrix word_times_word(const QMatrix& u, const QMatrix& t, long n, long wu, long wt) {
  long dim = u.rows();
  long du = ipow(n * n, wu), dt = ipow(n * n, wt);
  QMatrix next(dim, dim * du * dt);
  for (long r = 0; r < dim; ++r)
    for (const auto& [cw, uval] : u.row(r)) {
      long c = cw / du, w = cw % du;
      for (const auto& [cg, tval] : t.row(c)) {
        long c2 = cg / dt, g = cg % dt;
        next.add_to(r, (c2 * du + w) * dt + g, uval * tval);
      }
    }
  return next;
}

// Reshape an N^k x (N^k * W) word-valued matrix into the (entry) x (word)
// coordinate layout, entry (r, c) flattened as r * N^k + c.
inline QMatrix entries_by_words(const QMatrix& u, long worddim) {
  long dim = u.rows();
  QMatrix p(dim * dim, worddim);
  for (long r = 0; r < dim; ++r)
    for (const auto& [cw, v] : u.row(r)) p.set(r * dim + cw / worddim, cw % worddim, v);
  return p;
}

}  // namespace detail

// The degree-k basis-change matrix: row (r, c) lists, in free generator-word
// coordinates, the entry (r, c) of the product Lbar_1 Lbar_2 ... Lbar_k.
inline QMatrix pattern_matrix(const HeckeSymmetry& h, long k) {
  if (k < 1 || k > 3) throw std::invalid_argument("pattern_matrix: degree must be 1, 2, or 3");
  long n = h.n;
  const QMatrix rbar = h.r.transpose();
  const QMatrix rbar_inv = h.r_inverse().transpose();
  QMatrix lbar = detail::lin_first_factor(n, k);
  QMatrix u = lbar;
  for (long p = 1; p < k; ++p) {
    QMatrix rp = amplify(rbar, p, k, n);
    QMatrix rpi = amplify(rbar_inv, p, k, n);
    lbar = detail::lin_times_mat(detail::mat_times_lin(rp, lbar), rpi, n * n);
    u = detail::word_times_word(u, lbar, n, p, 1);
  }
  return detail::entries_by_words(u, detail::ipow(n * n, k));
}

// Coefficient matrices of the defining relations in free-word coordinates:
// one row per relation label (the entry position in the compact matrix form),
// quadratic part N^4 x N^4 and, scaled by hbar, linear part N^4 x N^2.
inline std::pair<QMatrix, QMatrix> relation_coefficients(const HeckeSymmetry& h,
                                                         const QScalar& hbar) {
  long n = h.n;
  const QMatrix rbar = h.r.transpose();
  const QMatrix l1 = detail::lin_first_factor(n, 2);
  const QMatrix rl1r = detail::lin_times_mat(detail::mat_times_lin(rbar, l1), rbar, n * n);
  QMatrix quad = detail::entries_by_words(detail::word_times_word(rl1r, l1, n, 1, 1) -
                                              detail::word_times_word(l1, rl1r, n, 1, 1),
                                          n * n * n * n);
  QMatrix lin = detail::entries_by_words(
      (detail::mat_times_lin(rbar, l1) - detail::lin_times_mat(l1, rbar, n * n)).scaled(hbar),
      n * n);
  return {std::move(quad), std::move(lin)};
}

struct ReaStructure {
  HeckeSymmetry h;
  QScalar five_a, five_b;    // constants of the fifth-order symmetrizer relation
  QMatrix rbar, rbar_inv;    // transposed braiding and its inverse
  QMatrix p_plus, p_minus;   // Hecke half projectors of the transposed braiding
  QMatrix q_op, q_inv;       // conjugation operator on degree two and its inverse
  QMatrix proj_top;          // spectral projector, eigenvalue -q^2
  QMatrix proj_unit;         // spectral projector, eigenvalue 1
  QMatrix proj_bot;          // spectral projector, eigenvalue -q^{-2}
  QMatrix s_op, a_op;        // degree-two symmetrizer / antisymmetrizer
  QMatrix pattern2;          // degree-two basis change, verified invertible
  bool has_cubic = false;    // degree-three data present (within the cap)
  QMatrix q1, q2;            // conjugation operator extensions on degree three
  QMatrix s1, s2, a1, a2;    // symmetrizer extensions on degree three
  QMatrix s3;                // degree-three symmetrizer
};

// Columns span the quadratic relation subspace of the degree-two component,
// in entry coordinates: entry e of Lbar1 Lbar2 - Q(Lbar1 Lbar2) is column e.
inline QMatrix relation_span(const ReaStructure& rea) {
  return QMatrix::identity(rea.q_op.rows()) - rea.q_op;
}

namespace detail {

inline ReaStructure assemble_rea(const HeckeSymmetry& h, long cubic_cap) {
  ReaStructure rea;
  rea.h = h;
  long n = h.n;
  const QScalar& q = h.q;
  QScalar two = q + q.inv();
  QScalar three = q * q + QScalar(1) + (q * q).inv();
  if (two.is_zero() || three.is_zero())
    throw ReaError("build_rea: the quantum integers 2_q and 3_q must be invertible");

  rea.rbar = h.r.transpose();
  rea.rbar_inv = h.r_inverse().transpose();
  QMatrix id2 = QMatrix::identity_legs({n, n});
  // Numerators 2_q P_{+-} stay Laurent-polynomial valued; the single division
  // by 2_q happens here and never inside the degree-three product chains.
  QMatrix spp = id2.scaled(q.inv()) + rea.rbar;
  QMatrix spm = id2.scaled(q) - rea.rbar;
  rea.p_plus = spp.scaled(two.inv());
  rea.p_minus = spm.scaled(two.inv());

  rea.q_op = detail::two_sided(rea.rbar, rea.rbar_inv);
  rea.q_inv = detail::two_sided(rea.rbar_inv, rea.rbar);
  rea.proj_top = detail::two_sided(rea.p_plus, rea.p_minus);
  rea.proj_bot = detail::two_sided(rea.p_minus, rea.p_plus);
  rea.proj_unit =
      detail::two_sided(rea.p_plus, rea.p_plus) + detail::two_sided(rea.p_minus, rea.p_minus);
  rea.s_op = rea.proj_unit;
  rea.a_op = rea.proj_top + rea.proj_bot;
  rea.pattern2 = pattern_matrix(h, 2);

  QScalar q2 = q * q, qm2 = (q * q).inv();
  rea.five_a = (q2 * q2 + q2 + QScalar(4) + qm2 + qm2 * qm2) * (two * two * two * two).inv();
  QScalar four = q2 * q + q + q.inv() + (q2 * q).inv();
  rea.five_b = four * four * (two.pow(8)).inv();

  if (detail::ipow(n, 6) <= cubic_cap) {
    rea.has_cubic = true;
    QMatrix sp1 = amplify(spp, 1, 3, n), sm1 = amplify(spm, 1, 3, n);
    QMatrix sp2 = amplify(spp, 2, 3, n), sm2 = amplify(spm, 2, 3, n);
    rea.q1 = detail::two_sided(amplify(rea.rbar, 1, 3, n), amplify(rea.rbar_inv, 1, 3, n));
    rea.q2 = detail::two_sided(amplify(rea.rbar, 2, 3, n), amplify(rea.rbar_inv, 2, 3, n));
    // Work with 2_q^2 S_i and 2_q^2 A_i: denominator-free entries keep the
    // five-factor chain below inside plain Laurent-polynomial arithmetic.
    QScalar twosq_inv = (two * two).inv();
    QMatrix st1 = detail::two_sided(sp1, sp1) + detail::two_sided(sm1, sm1);
    QMatrix st2 = detail::two_sided(sp2, sp2) + detail::two_sided(sm2, sm2);
    rea.s1 = st1.scaled(twosq_inv);
    rea.s2 = st2.scaled(twosq_inv);
    rea.a1 = (detail::two_sided(sp1, sm1) + detail::two_sided(sm1, sp1)).scaled(twosq_inv);
    rea.a2 = (detail::two_sided(sp2, sm2) + detail::two_sided(sm2, sp2)).scaled(twosq_inv);
    // The fifth-order chain scaled by 2_q^10: the constants a and b absorb
    // 2_q^4 and 2_q^8, so every factor is denominator free.
    QMatrix u = st1 * st2;
    QMatrix v = u * st1;
    QMatrix chain = u * v - v.scaled(rea.five_a * two.pow(4)) + st1.scaled(rea.five_b * two.pow(8));
    rea.s3 = chain.scaled((QScalar(4) * three * three * two.pow(4)).inv());
  }
  return rea;
}

}  // namespace detail

// Verify every defining identity of the operator calculus on an assembled
// structure.  Rank-flavoured checks (dimension counts, relation span) are
// separate operations.
inline CheckReport verify_rea(const ReaStructure& rea, RankMode mode = RankMode::Auto,
                              const GenericPoints& pts = {}) {
  const HeckeSymmetry& h = rea.h;
  long n = h.n;
  const QScalar& q = h.q;
  CheckReport rep;
  rep.subject = "reflection equation structure over " + h.name;

  QMatrix rb1 = amplify(rea.rbar, 1, 3, n), rb2 = amplify(rea.rbar, 2, 3, n);
  rep.add_equal("transposed braiding satisfies the braid relation", rb1 * rb2 * rb1,
                rb2 * rb1 * rb2);
  QMatrix id2 = QMatrix::identity_legs({n, n});
  rep.add_zero("transposed braiding satisfies the quadratic Hecke condition",
               (rea.rbar - id2.scaled(q)) * (rea.rbar + id2.scaled(q.inv())));
  rep.add_equal("half projectors sum to the identity", rea.p_plus + rea.p_minus, id2);
  rep.add("half projectors are orthogonal idempotents",
          (rea.p_plus * rea.p_minus).is_zero() && (rea.p_minus * rea.p_plus).is_zero() &&
              rea.p_plus * rea.p_plus == rea.p_plus && rea.p_minus * rea.p_minus == rea.p_minus);

  long d2 = n * n * n * n;
  QMatrix id4 = QMatrix::identity(d2);
  rep.add_zero("conjugation operator satisfies its cubic characteristic polynomial",
               (rea.q_op + id4.scaled(q * q)) * (rea.q_op + id4.scaled((q * q).inv())) *
                   (rea.q_op - id4));
  rep.add_equal("two-sided inverse inverts the conjugation operator", rea.q_op * rea.q_inv, id4);
  QScalar mid = q * q - QScalar(1) + (q * q).inv();
  rep.add_equal("cubic polynomial expression for the inverse conjugation operator", rea.q_inv,
                rea.q_op * rea.q_op + rea.q_op.scaled(mid) - id4.scaled(mid));

  bool eigen = rea.q_op * rea.proj_top == rea.proj_top.scaled(-(q * q)) &&
               rea.proj_top * rea.q_op == rea.proj_top.scaled(-(q * q)) &&
               rea.q_op * rea.proj_unit == rea.proj_unit &&
               rea.proj_unit * rea.q_op == rea.proj_unit &&
               rea.q_op * rea.proj_bot == rea.proj_bot.scaled(-((q * q).inv())) &&
               rea.proj_bot * rea.q_op == rea.proj_bot.scaled(-((q * q).inv()));
  rep.add("each spectral projector carries its eigenvalue on both sides", eigen);

  const QMatrix* projs[3] = {&rea.proj_top, &rea.proj_unit, &rea.proj_bot};
  bool ortho = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      QMatrix prod = (*projs[i]) * (*projs[j]);
      ortho = ortho && (i == j ? prod == *projs[i] : prod.is_zero());
    }
  rep.add("spectral projectors are orthogonal idempotents", ortho);
  rep.add_equal("spectral projectors are complete", rea.proj_top + rea.proj_unit + rea.proj_bot,
                id4);

  QScalar twosq = (q + q.inv()) * (q + q.inv());
  rep.add_equal("symmetrizer equals its polynomial expression in the conjugation operator",
                rea.s_op.scaled(twosq),
                id4.scaled(q * q + (q * q).inv()) + rea.q_op + rea.q_inv);
  rep.add_equal("antisymmetrizer equals its polynomial expression in the conjugation operator",
                rea.a_op.scaled(twosq), id4.scaled(QScalar(2)) - rea.q_op - rea.q_inv);
  rep.add("symmetrizer and antisymmetrizer are complementary orthogonal projectors",
          rea.s_op + rea.a_op == id4 && (rea.s_op * rea.a_op).is_zero() &&
              (rea.a_op * rea.s_op).is_zero() && rea.s_op * rea.s_op == rea.s_op);

  bool p2_ok = detail::use_symbolic(h, 4, mode) ? rank_symbolic(rea.pattern2) == d2
                                                : rank_generic(rea.pattern2, pts) == d2;
  rep.add("degree-two basis change is invertible", p2_ok);

  if (rea.has_cubic) {
    rep.add_equal("conjugation operator extensions satisfy the braid relation on degree three",
                  rea.q1 * rea.q2 * rea.q1, rea.q2 * rea.q1 * rea.q2);
    // All degree-three identities are checked on the denominator-free
    // rescalings 2_q^2 S_i, 2_q^2 A_i.  With the relation multiplied through
    // by 2_q^10 (the constants a and b absorbing 2_q^4 and 2_q^8) every
    // comparison is between Laurent-polynomial matrices, which is exact and
    // far cheaper than dragging rational-function denominators through the
    // five-factor products.
    QScalar two = q + q.inv();
    QScalar three = q * q + QScalar(1) + (q * q).inv();
    QScalar twosq = two * two;
    QScalar q2v = q * q, qm2 = (q * q).inv();
    QScalar ahat = q2v * q2v + q2v + QScalar(4) + qm2 + qm2 * qm2;
    QScalar fourq = q2v * q + q + q.inv() + (q2v * q).inv();
    QScalar bhat = fourq * fourq;
    rep.add("fifth-order constants carry their closed-form values",
            rea.five_a * two.pow(4) == ahat && rea.five_b * two.pow(8) == bhat);
    QMatrix st1 = rea.s1.scaled(twosq), st2 = rea.s2.scaled(twosq);
    QMatrix at1 = rea.a1.scaled(twosq), at2 = rea.a2.scaled(twosq);
    QMatrix u = st1 * st2, w = st2 * st1;
    QMatrix v = u * st1, x = w * st2;
    QMatrix lhs = u * v - v.scaled(ahat) + st1.scaled(bhat);
    QMatrix rhs = w * x - x.scaled(ahat) + st2.scaled(bhat);
    rep.add_equal("fifth-order symmetrizer relation with the closed-form constants", lhs, rhs);
    QScalar dfac = QScalar(4) * three * three * two.pow(4);
    rep.add_equal("the two forms of the degree-three symmetrizer agree", rea.s3.scaled(dfac),
                  rhs);
    rep.add_equal("degree-three symmetrizer is idempotent", lhs * lhs, lhs.scaled(dfac));
    rep.add("degree-three symmetrizer annihilates both embeddings of the quadratic relations",
            (lhs * at1).is_zero() && (lhs * at2).is_zero());
    rep.add("degree-three symmetrizer image lies in both embedded quadratic components",
            st1 * lhs == lhs.scaled(twosq) && st2 * lhs == lhs.scaled(twosq));
  }
  return rep;
}

inline CheckReport rea_report(const HeckeSymmetry& h, RankMode mode = RankMode::Auto,
                              const GenericPoints& pts = {}, long cubic_cap = 5000) {
  return verify_rea(detail::assemble_rea(h, cubic_cap), mode, pts);
}

inline ReaStructure build_rea(const HeckeSymmetry& h, RankMode mode = RankMode::Auto,
                              const GenericPoints& pts = {}, long cubic_cap = 5000) {
  ReaStructure rea = detail::assemble_rea(h, cubic_cap);
  CheckReport rep = verify_rea(rea, mode, pts);
  if (!rep.all_pass()) {
    for (const auto& item : rep.items)
      if (!item.pass)
        throw ReaError("build_rea over " + h.name + ": " + item.name + " fails" +
                       (item.detail.empty() ? "" : " (" + item.detail + ")"));
  }
  return rea;
}

// Ranks of the degree-k symmetrizer at generic q and at the classical point
// q = 1; the two agree exactly when the component dimension does not jump.
inline std::pair<long, long> component_dims(const ReaStructure& rea, long k,
                                            RankMode mode = RankMode::Auto,
                                            const GenericPoints& pts = {}) {
  if (k != 2 && k != 3)
    throw std::invalid_argument("component_dims: only degrees 2 and 3 are supported");
  if (k == 3 && !rea.has_cubic)
    throw std::domain_error("component_dims: degree-three space exceeds the cap");
  const QMatrix& op = (k == 2) ? rea.s_op : rea.s3;
  long generic = detail::use_symbolic(rea.h, 2 * k, mode) ? rank_symbolic(op)
                                                          : rank_generic(op, pts);
  long classical =
      rea.h.q.is_constant() ? generic : rank_symbolic(op.eval_at(Rat(1)));
  return {generic, classical};
}

inline std::pair<long, long> component_dims(const HeckeSymmetry& h, long k,
                                            RankMode mode = RankMode::Auto,
                                            const GenericPoints& pts = {}) {
  return component_dims(build_rea(h, mode, pts), k, mode, pts);
}

// The quadratic relation subspace coincides with the antisymmetrizer image:
// both column spans have the same rank as each other and as their union.
inline bool ideal_span_check(const ReaStructure& rea, RankMode mode = RankMode::Auto,
                             const GenericPoints& pts = {}) {
  QMatrix rel = relation_span(rea);
  auto rk = [&](const QMatrix& m) {
    return detail::use_symbolic(rea.h, 4, mode) ? rank_symbolic(m) : rank_generic(m, pts);
  };
  long r_rel = rk(rel);
  long r_anti = rk(rea.a_op);
  long r_both = rk(vstack(rel.transpose(), rea.a_op.transpose()));
  return r_rel == r_anti && r_anti == r_both;
}

inline bool ideal_span_check(const HeckeSymmetry& h, RankMode mode = RankMode::Auto,
                             const GenericPoints& pts = {}) {
  return ideal_span_check(build_rea(h, mode, pts), mode, pts);
}

}  // namespace rtech
