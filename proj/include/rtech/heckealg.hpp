#pragma once

// Tower of braid-generator algebras acting on tensor powers of V: iterated
// Jucys-Murphy operators, primitive idempotents realized as projectors on
// V^(x)k via spectral projection on addable-box contents, the resulting
// decomposition bookkeeping, and the weighted-trace recursion that pins
// Tr C for a symmetry of known bi-rank.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rtech/hecke.hpp"
#include "rtech/partitions.hpp"

namespace rtech {

// Raised when spectral denominators vanish because q is a root of unity (or
// otherwise fails to separate box contents).
struct NonGenericQError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Jucys-Murphy images on V^(x)k: J_1 = I, J_{p+1} = R_p J_p R_p.
inline std::vector<QMatrix> jm_images(const HeckeSymmetry& h, long k) {
  if (k < 1) throw std::invalid_argument("jm_images: k must be >= 1");
  long n = h.n;
  std::vector<QMatrix> out;
  QMatrix cur = QMatrix::identity_legs(Legs{n});
  for (long p = 2; p <= k; ++p) {
    cur = kron(cur, QMatrix::identity_legs(Legs{n}));
    QMatrix rp = amplify(h.r, p - 1, p, n);
    cur = rp * cur * rp;
    out.push_back(cur);  // J_p on p legs; padded below
  }
  // Pad everything to k legs, and prepend J_1 = I.
  std::vector<QMatrix> padded;
  padded.push_back(QMatrix::identity_legs(Legs(k, n)));
  for (long p = 2; p <= k; ++p) {
    QMatrix m = out[p - 2];
    if (p < k) m = kron(m, QMatrix::identity_legs(Legs(k - p, n)));
    padded.push_back(std::move(m));
  }
  return padded;
}

// Additive variant used for involutive symmetries, where the multiplicative
// tower degenerates to the identity: X_1 = 0, X_p = R_{p-1}(X_{p-1} (x) I)
// R_{p-1} + R_{p-1}, the image of the sum of transpositions (i p), i < p.
inline std::vector<QMatrix> jm_additive(const HeckeSymmetry& h, long k) {
  if (k < 1) throw std::invalid_argument("jm_additive: k must be >= 1");
  long n = h.n;
  std::vector<QMatrix> out;
  QMatrix cur(Legs{n}, Legs{n});  // X_1 = 0
  out.push_back(QMatrix(Legs(k, n), Legs(k, n)));
  for (long p = 2; p <= k; ++p) {
    cur = kron(cur, QMatrix::identity_legs(Legs{n}));
    QMatrix rp = amplify(h.r, p - 1, p, n);
    cur = rp * cur * rp + rp;
    QMatrix m = cur;
    if (p < k) m = kron(m, QMatrix::identity_legs(Legs(k - p, n)));
    out.push_back(std::move(m));
  }
  return out;
}

// Formal content vector of a standard tableau: j_p = q^{2(c_p - r_p)} in the
// formal variable, independent of any concrete symmetry.
inline std::vector<QScalar> content_vector(const StandardTableau& t) {
  std::vector<QScalar> out;
  for (long p = 1; p <= t.size(); ++p) {
    auto [r, c] = t.box_of(p);
    out.push_back(QScalar::q(2 * (c - r)));
  }
  return out;
}

namespace detail {

// Content eigenvalue a box contributes for a given symmetry: integer c - r
// on the additive tower, q^{2(c-r)} at the symmetry's own q otherwise.
inline QScalar content_value(const HeckeSymmetry& h, long r, long c) {
  if (h.involutive()) return QScalar(Rat(c - r));
  return h.q.pow(2 * (c - r));
}

inline long default_cap(const HeckeSymmetry& h) {
  if (h.birank) return (h.birank->first + 1) * (h.birank->second + 1) + 1;
  return 5;
}

inline void check_cap(const HeckeSymmetry& h, long k, long cap) {
  if (cap < 0) cap = default_cap(h);
  if (k > cap)
    throw std::domain_error("tensor power " + std::to_string(k) + " exceeds the cap " +
                            std::to_string(cap) + "; raise it explicitly if intended");
}

// A copy of the symmetry with every scalar evaluated at a sample point;
// used to compute ranks cheaply when symbolic entries get large.
inline HeckeSymmetry evaluate_symmetry(const HeckeSymmetry& h, const Rat& q0) {
  HeckeSymmetry e;
  e.name = h.name + " at q=" + rat_str(q0);
  e.n = h.n;
  e.q = QScalar(h.q.eval_at(q0));
  e.r = h.r.eval_at(q0);
  e.psi = h.psi.eval_at(q0);
  e.b = h.b.eval_at(q0);
  e.c = h.c.eval_at(q0);
  e.nu = QScalar(h.nu.eval_at(q0));
  e.birank = h.birank;
  return e;
}

}  // namespace detail

// Projector on V^(x)k corresponding to a standard tableau, built by the
// content-spectral recursion along the tableau's growth chain.
struct IdempotentImage {
  Partition shape;
  StandardTableau tableau;
  long k = 0;
  QMatrix matrix;
};

inline IdempotentImage idempotent_image(const HeckeSymmetry& h, const StandardTableau& t,
                                        long cap = -1) {
  if (!is_standard(t)) throw std::invalid_argument("idempotent_image: tableau is not standard");
  long k = t.size();
  detail::check_cap(h, k, cap);
  long n = h.n;
  bool additive = h.involutive();
  QMatrix e = QMatrix::identity_legs(Legs{n});
  QMatrix j = additive ? QMatrix(Legs{n}, Legs{n}) : QMatrix::identity_legs(Legs{n});
  for (long p = 2; p <= k; ++p) {
    e = kron(e, QMatrix::identity_legs(Legs{n}));
    j = kron(j, QMatrix::identity_legs(Legs{n}));
    QMatrix rp = amplify(h.r, p - 1, p, n);
    j = rp * j * rp;
    if (additive) j = j + rp;
    auto [r, c] = t.box_of(p);
    QScalar target = detail::content_value(h, r, c);
    for (auto [ar, ac] : addable_boxes(t.prefix_shape(p - 1))) {
      if (ar == r && ac == c) continue;
      QScalar cv = detail::content_value(h, ar, ac);
      QScalar den = target - cv;
      if (den.is_zero())
        throw NonGenericQError("idempotent_image: contents of boxes (" + std::to_string(r) + "," +
                               std::to_string(c) + ") and (" + std::to_string(ar) + "," +
                               std::to_string(ac) + ") coincide; q is not generic");
      QMatrix factor = j - QMatrix::identity_legs(Legs(p, n)).scaled(cv);
      e = (e * factor).scaled(den.inv());
    }
  }
  return IdempotentImage{t.shape, t, k, std::move(e)};
}

// Rank policy: symbolic when the symmetry's scalars are constants or the
// space is small; otherwise the whole recursion is rerun at two rational
// sample points which must agree.
enum class RankMode { Auto, Symbolic, Evaluated };

namespace detail {

inline bool use_symbolic(const HeckeSymmetry& h, long k, RankMode mode) {
  if (mode == RankMode::Symbolic) return true;
  if (mode == RankMode::Evaluated) return false;
  if (h.q.is_constant()) return true;  // constant scalars already
  long dim = 1;
  for (long i = 0; i < k; ++i) dim *= h.n;
  return dim <= 100;
}

}  // namespace detail

inline long idempotent_rank(const HeckeSymmetry& h, const StandardTableau& t, long cap = -1,
                            RankMode mode = RankMode::Auto,
                            const GenericPoints& pts = {}) {
  if (detail::use_symbolic(h, t.size(), mode))
    return rank_symbolic(idempotent_image(h, t, cap).matrix);
  long r1 = rank_symbolic(idempotent_image(detail::evaluate_symmetry(h, pts.p1), t, cap).matrix);
  long r2 = rank_symbolic(idempotent_image(detail::evaluate_symmetry(h, pts.p2), t, cap).matrix);
  if (r1 != r2)
    throw GenericityError("idempotent_rank: sample points q=" + rat_str(pts.p1) + " and q=" +
                          rat_str(pts.p2) + " disagree (" + std::to_string(r1) + " vs " +
                          std::to_string(r2) + "); add a third point or use symbolic mode");
  return r1;
}

// Multiplicity and projector rank for every shape of weight k, with the
// dimension count and tableau-independence cross-checks built in.
inline std::map<Partition, std::pair<long, long>> young_decomposition(const HeckeSymmetry& h,
                                                                      long k, long cap = -1,
                                                                      RankMode mode = RankMode::Auto) {
  detail::check_cap(h, k, cap);
  std::map<Partition, std::pair<long, long>> out;
  long total = 0;
  for (const Partition& shape : partitions_of(k)) {
    auto tabs = standard_tableaux(shape);
    long d = static_cast<long>(tabs.size());
    if (d != standard_tableau_count(shape))
      throw std::logic_error("young_decomposition: tableau count mismatch for " +
                             partition_str(shape));
    long rank = -1;
    for (const auto& t : tabs) {
      long r = idempotent_rank(h, t, cap, mode);
      if (rank < 0) rank = r;
      if (r != rank)
        throw std::runtime_error("young_decomposition: rank depends on the tableau for shape " +
                                 partition_str(shape));
    }
    out[shape] = {d, rank};
    total += d * rank;
  }
  long dim = 1;
  for (long i = 0; i < k; ++i) dim *= h.n;
  if (total != dim)
    throw std::runtime_error("young_decomposition: ranks sum to " + std::to_string(total) +
                             ", expected " + std::to_string(dim));
  return out;
}

// Completeness and orthogonality of the full projector system at weight k.
inline CheckReport idempotent_system_check(const HeckeSymmetry& h, long k, long cap = -1) {
  CheckReport rep("projector system for " + h.name + ", k = " + std::to_string(k));
  long n = h.n;
  std::vector<IdempotentImage> all;
  for (const Partition& shape : partitions_of(k))
    for (const auto& t : standard_tableaux(shape)) all.push_back(idempotent_image(h, t, cap));
  QMatrix sum(Legs(k, n), Legs(k, n));
  for (const auto& e : all) sum = sum + e.matrix;
  rep.add_equal("projectors sum to the identity", sum, QMatrix::identity_legs(Legs(k, n)));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      QMatrix prod = all[i].matrix * all[j].matrix;
      QMatrix expect = (i == j) ? all[i].matrix : QMatrix(Legs(k, n), Legs(k, n));
      if (!(prod == expect)) {
        rep.add("orthogonality", false,
                "fails for tableaux " + all[i].tableau.str() + " and " + all[j].tableau.str());
        return rep;
      }
    }
  rep.add("orthogonality", true, "");
  return rep;
}

// Weighted-trace recursion: with tr the C-weighted trace in the last leg,
// E . tr_(p)(J_p) and E . tr_(p)(J_p^2) reduce to content data, and for the
// corner-removed critical shape the vanishing of the completed rectangle's
// projector turns into a linear equation recovering Tr C.
inline CheckReport trace_recursion_check(const HeckeSymmetry& h, const StandardTableau& t,
                                         long p) {
  if (p != t.size() + 1)
    throw std::invalid_argument("trace_recursion_check: need p = tableau weight + 1");
  CheckReport rep("weighted-trace recursion for " + h.name + ", shape " + partition_str(t.shape) +
                  ", p = " + std::to_string(p));
  long n = h.n;
  // Multiplicative tower on p legs (the recursion is stated for it even when
  // it degenerates at q = 1).
  QMatrix jp = QMatrix::identity_legs(Legs{n});
  for (long s = 2; s <= p; ++s) {
    jp = kron(jp, QMatrix::identity_legs(Legs{n}));
    QMatrix rs = amplify(h.r, s - 1, s, n);
    jp = rs * jp * rs;
  }
  QMatrix e = idempotent_image(h, t, p).matrix;
  QScalar omega = h.omega();
  QScalar trc = h.c.trace();

  auto wtr_last = [&](const QMatrix& x) {
    QMatrix cw = amplify(h.c, p, p, n);
    return partial_trace(cw * x, p);
  };

  // Content eigenvalues at the symmetry's own q.
  std::vector<QScalar> jv;
  QScalar sum1, sum2, sumNested;
  for (long s = 1; s < p; ++s) {
    auto [r, c] = t.box_of(s);
    QScalar v = h.q.pow(2 * (c - r));
    jv.push_back(v);
    sum1 += v;
    sum2 += v * v;
  }
  for (long s = 0; s < p - 1; ++s) {
    QScalar inner;
    for (long u = 0; u <= s; ++u) inner += jv[u];
    sumNested += jv[s] * inner;
  }

  rep.add_equal("weighted trace of the top tower operator", e * wtr_last(jp),
                e.scaled(omega * sum1 + trc));
  rep.add_equal("weighted trace of its square", e * wtr_last(jp * jp),
                e.scaled(QScalar(2) * omega * sum2 + omega.pow(3) * sumNested +
                         (QScalar(1) + omega * omega * sum1) * trc));

  if (h.birank) {
    auto [m, nn] = *h.birank;
    if (t.shape == critical_rectangle_minus(m, nn) && p == (m + 1) * (nn + 1)) {
      // Formal-variable content data of the corner-removed shape.
      QScalar w = QScalar::q(1) - QScalar::q(-1);
      QScalar s1, s2;
      for (long s = 1; s < p; ++s) {
        auto [r, c] = t.box_of(s);
        s1 += QScalar::q(2 * (c - r));
        s2 += QScalar::q(4 * (c - r));
      }
      QScalar u = QScalar::q(2 * (nn - m));
      QScalar v = QScalar::q(2 * (nn + 1));
      QScalar x = QScalar::q(-2 * (m + 1));
      QScalar half(Rat(1, 2));
      QScalar alpha = QScalar(1) + u - v - x + w * w * s1;
      QScalar beta = w * (QScalar(2) + half * w * w) * s2 + half * w.pow(3) * s1 * s1 -
                     w * (v + x) * s1;
      rep.add_scalar_equal("first corner coefficient in closed form", alpha,
                           -(w * w) * u);
      rep.add_scalar_equal("second corner coefficient in closed form", beta,
                           w * w * QScalar::q(3 * (nn - m)) * qint(m - nn));
      QScalar recovered = -(beta / alpha);
      rep.add_scalar_equal("recovered weighted trace of the identity, closed form", recovered,
                           QScalar::q(nn - m) * qint(m - nn));
      QScalar at_own_q = h.involutive() ? QScalar(recovered.eval_at(1)) : recovered;
      rep.add_scalar_equal("recovered value matches the computed trace", at_own_q, trc);
    }
  }
  return rep;
}

}  // namespace rtech
