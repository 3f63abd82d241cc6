#pragma once

// Braided-category toolkit around a certified symmetry: the braiding
// extended to V (+) V*, braidings of mixed tensor words, the invariant
// pairings and copairings, and the categorical trace and dimension.

#include "rtech/hecke.hpp"
#include "rtech/heckealg.hpp"
#include "rtech/report.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rtech {

struct CategoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A tensor word over the generating space V and its dual.
enum class Leg { V, Dual };
using MixedWord = std::vector<Leg>;

inline std::string word_str(const MixedWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += (w[i] == Leg::V) ? "V" : "V*";
  }
  return s;
}

// The braiding extended to the doubled space.  Each block is an n^2 x n^2
// matrix between two-letter words; `total` is the same operator assembled
// on (V (+) V*)^{(x)2}, where basis vector a of V (+) V* is x_{a+1} for
// a < n and the covector x^{a-n+1} otherwise.
struct ExtendedBraiding {
  long n = 0;
  QMatrix vv, vd, dv, dd;
  QMatrix total;

  const QMatrix& block(Leg a, Leg b) const {
    if (a == Leg::V) return b == Leg::V ? vv : vd;
    return b == Leg::V ? dv : dd;
  }
};

// The unique extension of a certified symmetry to V (+) V* that keeps the
// right pairing and copairing invariant.  With upper indices numbering rows:
//   x_i (x) x_j |-> x_k (x) x_l R^{kl}_{ij},
//   x_i (x) x^j |-> x^k (x) x_l (R^{-1})^{lj}_{ki},
//   x^j (x) x_i |-> x_k (x) x^l Psi^{kj}_{li},
//   x^i (x) x^j |-> x^k (x) x^l R^{ji}_{lk}.
// The assembled operator is checked against the braid relation on the
// doubled cube; failure throws YangBaxterError (it cannot occur for a
// certified symmetry and would indicate an index-convention bug).
inline ExtendedBraiding extend_braiding(const HeckeSymmetry& h) {
  const long n = h.n;
  ExtendedBraiding e;
  e.n = n;
  e.vv = h.r;

  QMatrix rinv = h.r_inverse();
  e.vd = QMatrix(Legs{n, n}, Legs{n, n});
  for (long r0 = 0; r0 < rinv.rows(); ++r0)
    for (const auto& [c0, v] : rinv.row(r0)) {
      long l = r0 / n, j = r0 % n, k = c0 / n, i = c0 % n;
      e.vd.set(k * n + l, i * n + j, v);
    }

  e.dv = QMatrix(Legs{n, n}, Legs{n, n});
  for (long r0 = 0; r0 < h.psi.rows(); ++r0)
    for (const auto& [c0, v] : h.psi.row(r0)) {
      long k = r0 / n, j = r0 % n, l = c0 / n, i = c0 % n;
      e.dv.set(k * n + l, j * n + i, v);
    }

  e.dd = QMatrix(Legs{n, n}, Legs{n, n});
  for (long r0 = 0; r0 < h.r.rows(); ++r0)
    for (const auto& [c0, v] : h.r.row(r0)) {
      long j = r0 / n, i = r0 % n, l = c0 / n, k = c0 % n;
      e.dd.set(k * n + l, i * n + j, v);
    }

  e.total = QMatrix(Legs{2 * n, 2 * n}, Legs{2 * n, 2 * n});
  const Leg kinds[2] = {Leg::V, Leg::Dual};
  for (Leg s1 : kinds)
    for (Leg s2 : kinds) {
      const QMatrix& blk = e.block(s1, s2);
      long in1 = (s1 == Leg::V) ? 0 : n;
      long in2 = (s2 == Leg::V) ? 0 : n;
      // The braiding swaps the two letters, so the output offsets are the
      // input offsets in reverse order.
      for (long r0 = 0; r0 < blk.rows(); ++r0)
        for (const auto& [c0, v] : blk.row(r0))
          e.total.set((in2 + r0 / n) * 2 * n + (in1 + r0 % n),
                      (in1 + c0 / n) * 2 * n + (in2 + c0 % n), v);
    }

  QMatrix t12 = amplify(e.total, 1, 3, 2 * n);
  QMatrix t23 = amplify(e.total, 2, 3, 2 * n);
  if (auto d = QMatrix::first_difference(t12 * t23 * t12, t23 * t12 * t23))
    throw YangBaxterError("extend_braiding: braid relation fails on the extended space at component (" +
                          std::to_string(d->first + 1) + ", " + std::to_string(d->second + 1) + ")");
  return e;
}

// The braiding carrying the w1 word past the w2 word, factored into
// |w1|*|w2| adjacent elementary blocks.  The letters of w1 are peeled off
// from the right; any other reduction gives the same operator by the braid
// relation.
inline QMatrix mixed_braiding(const ExtendedBraiding& e, const MixedWord& w1,
                              const MixedWord& w2) {
  const long a = static_cast<long>(w1.size());
  const long b = static_cast<long>(w2.size());
  const long k = a + b;
  if (k == 0) return QMatrix::identity(1);
  MixedWord cur = w1;
  cur.insert(cur.end(), w2.begin(), w2.end());
  QMatrix total = QMatrix::identity_legs(Legs(static_cast<size_t>(k), e.n));
  for (long i = a - 1; i >= 0; --i)
    for (long s = 0; s < b; ++s) {
      long p = i + s;
      total = amplify(e.block(cur[p], cur[p + 1]), p + 1, k, e.n) * total;
      std::swap(cur[static_cast<size_t>(p)], cur[static_cast<size_t>(p + 1)]);
    }
  return total;
}

// Matrices of the four pairing/copairing morphisms together with the left
// dual basis.  Forms are rows (codomain is the ground field), copairings
// are columns.
struct Pairings {
  QMatrix right_form;       // V (x) V* -> K,   <x_i, x^j>_r = delta^j_i
  QMatrix left_form;        // V* (x) V -> K,   <x^i, x_j>_l = B^i_j
  QMatrix right_copairing;  // K -> V* (x) V,   1 |-> sum_i x^i (x) x_i
  QMatrix left_copairing;   // K -> V (x) V*,   1 |-> sum_i x_i (x) xt^i
  QMatrix left_basis;       // row i: coordinates of xt^i in the right basis
};

// The left dual basis is xt^i = nu^{-1} C^i_j x^j; construction verifies
// that it pairs to the identity under the left form.
inline Pairings pairings(const HeckeSymmetry& h) {
  const long n = h.n;
  Pairings p;
  p.right_form = QMatrix(Legs{1}, Legs{n, n});
  for (long i = 0; i < n; ++i) p.right_form.set(0, i * n + i, QScalar(1));

  p.left_form = QMatrix(Legs{1}, Legs{n, n});
  for (long i = 0; i < n; ++i)
    for (const auto& [j, v] : h.b.row(i)) p.left_form.set(0, i * n + j, v);

  p.right_copairing = QMatrix(Legs{n, n}, Legs{1});
  for (long i = 0; i < n; ++i) p.right_copairing.set(i * n + i, 0, QScalar(1));

  p.left_basis = h.c.scaled(h.nu.inv());
  p.left_copairing = QMatrix(Legs{n, n}, Legs{1});
  for (long i = 0; i < n; ++i)
    for (const auto& [j, v] : p.left_basis.row(i)) p.left_copairing.set(i * n + j, 0, v);

  if (p.left_basis * h.b != QMatrix::identity(n))
    throw CategoryError("pairings: the left dual basis does not pair to the identity");
  return p;
}

namespace detail {

// Both naturality equalities for f : src -> dst, tested against the
// generating object and against its dual.
inline CheckReport invariance_report(const ExtendedBraiding& e, const QMatrix& f,
                                     const MixedWord& src, const MixedWord& dst) {
  CheckReport rep;
  QMatrix idn = QMatrix::identity(e.n);
  const std::pair<Leg, const char*> kinds[2] = {{Leg::V, "generating"}, {Leg::Dual, "dual"}};
  for (const auto& [w, label] : kinds) {
    MixedWord ww{w};
    rep.add_equal(std::string("naturality against the ") + label + " object on the right",
                  kron(idn, f) * mixed_braiding(e, src, ww),
                  mixed_braiding(e, dst, ww) * kron(f, idn));
    rep.add_equal(std::string("naturality against the ") + label + " object on the left",
                  kron(f, idn) * mixed_braiding(e, ww, src),
                  mixed_braiding(e, ww, dst) * kron(idn, f));
  }
  return rep;
}

}  // namespace detail

// Necessary condition for f : src -> dst to be a categorical morphism.
inline bool check_invariance(const ExtendedBraiding& e, const QMatrix& f,
                             const MixedWord& src, const MixedWord& dst) {
  return detail::invariance_report(e, f, src, dst).all_pass();
}

// The morphism V (x) V* -> V* (x) V built on the symmetry itself,
// x_i (x) x^j |-> x^k (x) x_l R^{lj}_{ki}.  It splits as the mixed braiding
// block plus omega times the contraction loop (copairing after pairing).
inline QMatrix transition_map(const HeckeSymmetry& h) {
  const long n = h.n;
  QMatrix t(Legs{n, n}, Legs{n, n});
  for (long r0 = 0; r0 < h.r.rows(); ++r0)
    for (const auto& [c0, v] : h.r.row(r0)) {
      long l = r0 / n, j = r0 % n, k = c0 / n, i = c0 % n;
      t.set(k * n + l, i * n + j, v);
    }
  return t;
}

// Categorical trace on End(V): Tr_R(F) = nu^{-1} Tr(F C).  Matrix units of
// the right-basis presentation trace to the Kronecker delta.
inline QScalar r_trace(const HeckeSymmetry& h, const QMatrix& f) {
  if (f.rows() != h.n || f.cols() != h.n)
    throw std::invalid_argument("r_trace: operator must be " + std::to_string(h.n) + "x" +
                                std::to_string(h.n));
  return h.nu.inv() * (f * h.c).trace();
}

// Categorical dimension of the lambda-isotypic object, normalized so that
// the value is the Schur polynomial at the balanced geometric points
// q^{m-n-1}, q^{m-n-3}, ..., q^{1-m+n}.  Requires the bi-rank certificate;
// the value is computed for every standard tableau of lambda and verified
// to be tableau independent.
inline QScalar r_dimension(const HeckeSymmetry& h, const Partition& lambda, long cap = -1) {
  if (!is_partition(lambda))
    throw std::invalid_argument("r_dimension: " + partition_str(lambda) + " is not a partition");
  if (!h.birank)
    throw std::domain_error(
        "r_dimension: the bi-rank of the symmetry is unknown; detect it from the dimension "
        "series first");
  const long k = weight(lambda);
  if (k == 0) return QScalar(1);
  auto [m, nn] = *h.birank;
  QScalar factor = h.q.pow(k * (m - nn));
  QMatrix cs = h.c;
  for (long p = 2; p <= k; ++p) cs = kron(cs, h.c);
  std::optional<QScalar> value;
  for (const StandardTableau& t : standard_tableaux(lambda)) {
    QScalar v = factor * (cs * idempotent_image(h, t, cap).matrix).trace();
    if (!value)
      value = v;
    else if (!(*value == v))
      throw CategoryError("r_dimension: tableau-dependent value for shape " +
                          partition_str(lambda) + ": " + value->str() + " vs " + v.str());
  }
  return *value;
}

// Coefficients of the categorical dimension series of the antisymmetric
// tower (column shapes), degrees 0..kmax.
inline std::vector<QScalar> q_minus_coefficients(const HeckeSymmetry& h, long kmax) {
  std::vector<QScalar> out{QScalar(1)};
  for (long k = 1; k <= kmax; ++k)
    out.push_back(r_dimension(h, Partition(static_cast<size_t>(k), 1), k));
  return out;
}

// Same for the symmetric tower (row shapes).
inline std::vector<QScalar> q_plus_coefficients(const HeckeSymmetry& h, long kmax) {
  std::vector<QScalar> out{QScalar(1)};
  for (long k = 1; k <= kmax; ++k) out.push_back(r_dimension(h, Partition{k}, k));
  return out;
}

// Full verification of the categorical layer for one symmetry: the braid
// relation on the eight signature blocks of the doubled cube, invariance of
// the four pairing morphisms and of the transition map, both left-form
// diagrams, and the left-basis rewrite of the extension blocks.
inline CheckReport category_report(const HeckeSymmetry& h) {
  CheckReport rep;
  rep.subject = h.name;
  const long n = h.n;
  ExtendedBraiding e = extend_braiding(h);
  Pairings p = pairings(h);
  QMatrix idn = QMatrix::identity(n);
  QMatrix rinv = h.r_inverse();

  {
    QMatrix t12 = amplify(e.total, 1, 3, 2 * n);
    QMatrix t23 = amplify(e.total, 2, 3, 2 * n);
    QMatrix diff = t12 * t23 * t12 - t23 * t12 * t23;
    bool bad[8] = {};
    std::string witness[8];
    for (long r = 0; r < diff.rows(); ++r)
      for (const auto& [c, v] : diff.row(r)) {
        long a1 = c / (4 * n * n), a2 = (c / (2 * n)) % (2 * n), a3 = c % (2 * n);
        int sig = ((a1 >= n ? 1 : 0) << 2) | ((a2 >= n ? 1 : 0) << 1) | (a3 >= n ? 1 : 0);
        if (!bad[sig]) {
          bad[sig] = true;
          witness[sig] = "first difference at (" + std::to_string(r + 1) + ", " +
                         std::to_string(c + 1) + "): " + v.str();
        }
      }
    for (int sig = 0; sig < 8; ++sig) {
      MixedWord w{(sig & 4) ? Leg::Dual : Leg::V, (sig & 2) ? Leg::Dual : Leg::V,
                  (sig & 1) ? Leg::Dual : Leg::V};
      rep.add("braid relation on the " + word_str(w) + " source block", !bad[sig], witness[sig]);
    }
  }

  auto add_invariance = [&](const std::string& name, const QMatrix& f, const MixedWord& src,
                            const MixedWord& dst) {
    CheckReport sub = detail::invariance_report(e, f, src, dst);
    std::string why;
    for (const auto& item : sub.items)
      if (!item.pass) {
        why = item.name + ": " + item.detail;
        break;
      }
    rep.add(name, sub.all_pass(), why);
  };
  add_invariance("right pairing is invariant", p.right_form, {Leg::V, Leg::Dual}, {});
  add_invariance("left pairing is invariant", p.left_form, {Leg::Dual, Leg::V}, {});
  add_invariance("right copairing is invariant", p.right_copairing, {}, {Leg::Dual, Leg::V});
  add_invariance("left copairing is invariant", p.left_copairing, {}, {Leg::V, Leg::Dual});
  add_invariance("transition map is invariant", transition_map(h), {Leg::V, Leg::Dual},
                 {Leg::Dual, Leg::V});

  rep.add_equal("left dual basis pairs to the identity", p.left_basis * h.b, idn);
  rep.add_equal("left form factors through the braiding and the right form", p.left_form,
                p.right_form * e.dv);
  {
    bool commutes = (p.left_form * e.vd == p.right_form);
    rep.add("backward left-form diagram commutes exactly for an involutive symmetry",
            commutes == h.involutive(),
            commutes ? "diagram commutes" : "diagram fails to commute");
    rep.add_equal("backward diagram discrepancy is the contraction scalar", p.left_form * e.vd,
                  p.right_form.scaled(h.nu));
  }

  {
    QMatrix lt = p.left_basis.transpose();
    QMatrix bt = h.b.transpose();

    QMatrix psi_lb(Legs{n, n}, Legs{n, n});
    for (long r0 = 0; r0 < h.psi.rows(); ++r0)
      for (const auto& [c0, v] : h.psi.row(r0)) {
        long j = r0 / n, l = r0 % n, i = c0 / n, k = c0 % n;
        psi_lb.set(k * n + l, i * n + j, v);
      }
    rep.add_equal("mixed block rewritten in the left basis is the skew inverse",
                  kron(bt, idn) * e.vd * kron(idn, lt), psi_lb);

    QMatrix rinv_lb(Legs{n, n}, Legs{n, n});
    for (long r0 = 0; r0 < rinv.rows(); ++r0)
      for (const auto& [c0, v] : rinv.row(r0)) {
        long j = r0 / n, k = r0 % n, i = c0 / n, l = c0 % n;
        rinv_lb.set(k * n + l, j * n + i, v);
      }
    rep.add_equal("reversed mixed block rewritten in the left basis is the inverse symmetry",
                  kron(idn, bt) * e.dv * kron(lt, idn), rinv_lb);

    rep.add_equal("dual-dual block is the same in both dual bases",
                  kron(bt, bt) * e.dd * kron(lt, lt), e.dd);
    rep.add_equal("skew inverse factors through the reversed inverse braiding",
                  (kron(h.c, idn) * swap_legs(rinv) * kron(idn, h.b)).scaled(h.nu.inv()), h.psi);
  }

  rep.add_equal("transition map splits into the mixed block and the contraction loop",
                transition_map(h), e.vd + (p.right_copairing * p.right_form).scaled(h.omega()));
  return rep;
}

}  // namespace rtech
