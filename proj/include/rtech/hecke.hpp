#pragma once

// Hecke symmetries: invertible solutions R of the braid relation on V (x) V
// obeying (R - qI)(R + q^{-1}I) = 0, together with their skew-inverse data.
//
// Index convention: R maps x_i (x) x_j to x_k (x) x_l R^{kl}_{ij}, with the
// upper (output) pair labelling matrix rows.  All operators on tensor powers
// of V are QMatrix values with one leg of dimension N per tensor factor.

#include "rtech/qmatrix.hpp"
#include "rtech/report.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace rtech {

struct YangBaxterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HeckeConditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SkewInvertibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The flip P(x (x) y) = y (x) x on two N-dimensional legs.
inline QMatrix flip_matrix(long n) {
  QMatrix p(Legs{n, n}, Legs{n, n});
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) p.set(i * n + j, j * n + i, QScalar(1));
  return p;
}

// Conjugate a two-leg operator by the flip: M21 = P M12 P.
inline QMatrix swap_legs(const QMatrix& m) { return permute_legs(m, {1, 0}, {1, 0}); }

struct HeckeSymmetry {
  std::string name;
  long n = 0;       // dim V
  QScalar q;        // Hecke eigenvalue parameter (the symbol q, or 1)
  QMatrix r;        // the symmetry itself, legs {n, n}
  QMatrix psi;      // skew inverse
  QMatrix b, c;     // B = Tr_(1) Psi, C = Tr_(2) Psi
  QScalar nu;       // BC = nu I
  std::optional<std::pair<long, long>> birank;  // (m|n) when known a priori

  bool involutive() const { return q == QScalar(1); }
  QScalar omega() const { return q - q.inv(); }
  // Hecke relation gives R^{-1} = R - omega I.
  QMatrix r_inverse() const {
    return r - QMatrix::identity_legs(r.row_legs()).scaled(omega());
  }
};

// ---------------------------------------------------------------------------
// Skew inversion.  The defining condition, written in components, reads
// R^{ia}_{jb} Psi^{bl}_{ak} = delta^i_k delta^l_j.  Packing (i,j) as a row
// and (b,a) as a column turns the left side into an honest matrix product,
// so Psi is recovered by inverting a half-transposed copy of R.

namespace detail {

inline QMatrix half_shuffle(const QMatrix& r) {
  long n = r.row_legs()[0];
  QMatrix x(Legs{n, n}, Legs{n, n});
  for (long row = 0; row < r.rows(); ++row) {
    long i = row / n, a = row % n;
    for (const auto& [col, v] : r.row(row)) {
      long j = col / n, b = col % n;
      x.set(i * n + j, b * n + a, v);
    }
  }
  return x;
}

inline QMatrix half_unshuffle(const QMatrix& y) {
  long n = y.row_legs()[0];
  QMatrix psi(Legs{n, n}, Legs{n, n});
  for (long row = 0; row < y.rows(); ++row) {
    long b = row / n, a = row % n;
    for (const auto& [col, v] : y.row(row)) {
      long l = col / n, k = col % n;
      psi.set(b * n + l, a * n + k, v);
    }
  }
  return psi;
}

}  // namespace detail

inline QMatrix skew_inverse(const QMatrix& r) {
  long n = r.row_legs()[0];
  QMatrix x = detail::half_shuffle(r);
  QMatrix xinv;
  try {
    xinv = inverse(x);
  } catch (const std::domain_error&) {
    throw SkewInvertibilityError(
        "skew_inverse: the half-transposed braiding is singular, no skew inverse exists");
  }
  return detail::half_unshuffle(xinv * flip_matrix(n));
}

// ---------------------------------------------------------------------------
// Built-in families.

// Drinfeld-Jimbo style symmetry on an m-dimensional space:
//   R(x_i (x) x_j) = q^{delta_ij} x_j (x) x_i + (q - 1/q) [i < j] x_i (x) x_j.
inline QMatrix standard_r_matrix(long m) {
  if (m < 1) throw std::invalid_argument("standard_r_matrix: m must be positive");
  QScalar q = QScalar::q();
  QScalar omega = q - q.inv();
  QMatrix r(Legs{m, m}, Legs{m, m});
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) {
      if (i == j) {
        r.set(i * m + i, i * m + i, q);
      } else {
        r.set(j * m + i, i * m + j, QScalar(1));
        if (i < j) r.set(i * m + j, i * m + j, omega);
      }
    }
  return r;
}

// Graded flip on a space with m even and n odd basis directions:
//   R(x_i (x) x_j) = (-1)^{p(i) p(j)} x_j (x) x_i.
inline QMatrix super_flip_matrix(long m, long n) {
  if (m < 0 || n < 0 || m + n < 1)
    throw std::invalid_argument("super_flip_matrix: need m, n >= 0 and m + n >= 1");
  long dim = m + n;
  QMatrix r(Legs{dim, dim}, Legs{dim, dim});
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) {
      int sign = (i >= m && j >= m) ? -1 : 1;
      r.set(j * dim + i, i * dim + j, QScalar(sign));
    }
  return r;
}

// ---------------------------------------------------------------------------
// Certification: Hecke condition, braid relation, skew invertibility.  The
// returned value carries Psi, B, C and nu; failures throw typed errors with
// witnesses.

inline HeckeSymmetry certify_hecke(QMatrix r, QScalar q, std::string name,
                                   std::optional<std::pair<long, long>> birank = std::nullopt) {
  if (r.rows() != r.cols() || r.row_legs().size() != 2 || r.row_legs() != r.col_legs() ||
      r.row_legs()[0] != r.row_legs()[1])
    throw std::invalid_argument("certify_hecke: R must be square on two equal legs");
  long n = r.row_legs()[0];
  if (q.is_zero()) throw HeckeConditionError("certify_hecke: q = 0 is not allowed");

  QMatrix id = QMatrix::identity_legs(r.row_legs());
  QMatrix hecke = (r - id.scaled(q)) * (r + id.scaled(q.inv()));
  if (!hecke.is_zero()) {
    auto w = QMatrix::first_difference(hecke, QMatrix(r.row_legs(), r.col_legs()));
    throw HeckeConditionError("certify_hecke: (R - qI)(R + I/q) != 0 at entry (" +
                              std::to_string(w->first + 1) + ", " + std::to_string(w->second + 1) +
                              ") = " + hecke.at(w->first, w->second).str());
  }

  QMatrix r1 = amplify(r, 1, 3, n), r2 = amplify(r, 2, 3, n);
  QMatrix yb = r1 * r2 * r1 - r2 * r1 * r2;
  if (!yb.is_zero()) {
    auto w = QMatrix::first_difference(yb, QMatrix(yb.row_legs(), yb.col_legs()));
    auto ri = legs_unflatten(yb.row_legs(), w->first);
    auto ci = legs_unflatten(yb.col_legs(), w->second);
    throw YangBaxterError("certify_hecke: braid relation fails at component (" +
                          std::to_string(ri[0] + 1) + std::to_string(ri[1] + 1) +
                          std::to_string(ri[2] + 1) + "; " + std::to_string(ci[0] + 1) +
                          std::to_string(ci[1] + 1) + std::to_string(ci[2] + 1) + ") = " +
                          yb.at(w->first, w->second).str());
  }

  HeckeSymmetry h;
  h.name = std::move(name);
  h.n = n;
  h.q = std::move(q);
  h.r = std::move(r);
  h.psi = skew_inverse(h.r);
  h.b = partial_trace(h.psi, 1);
  h.c = partial_trace(h.psi, 2);

  QMatrix bc = h.b * h.c;
  h.nu = bc.at(0, 0);
  if (h.nu.is_zero() || bc != QMatrix::identity(n).scaled(h.nu) ||
      h.c * h.b != QMatrix::identity(n).scaled(h.nu))
    throw SkewInvertibilityError("certify_hecke: BC is not a nonzero scalar operator");
  h.birank = birank;
  return h;
}

inline HeckeSymmetry standard_hecke(long m) {
  return certify_hecke(standard_r_matrix(m), QScalar::q(), "standard(" + std::to_string(m) + ")",
                       std::make_pair(m, 0L));
}

inline HeckeSymmetry super_flip(long m, long n) {
  return certify_hecke(super_flip_matrix(m, n), QScalar(1),
                       "super_flip(" + std::to_string(m) + "|" + std::to_string(n) + ")",
                       std::make_pair(m, n));
}

// ---------------------------------------------------------------------------
// The identity suite for the skew-inverse data.

inline CheckReport verify_skew_identities(const HeckeSymmetry& h) {
  CheckReport rep;
  rep.subject = h.name;
  long n = h.n;
  QMatrix id1 = QMatrix::identity(n);
  QMatrix id2 = QMatrix::identity_legs(Legs{n, n});
  QMatrix rinv = h.r_inverse();
  QMatrix r21 = swap_legs(h.r);
  QMatrix r21inv = swap_legs(rinv);

  rep.add_zero("hecke condition (R - qI)(R + I/q) = 0",
               (h.r - id2.scaled(h.q)) * (h.r + id2.scaled(h.q.inv())));
  rep.add_equal("R^-1 = R - (q - 1/q) I", rinv * h.r, id2);

  QMatrix r1 = amplify(h.r, 1, 3, n), r2 = amplify(h.r, 2, 3, n);
  rep.add_equal("braid relation R1 R2 R1 = R2 R1 R2", r1 * r2 * r1, r2 * r1 * r2);

  // Defining property of Psi, both windings.
  QMatrix psi2 = amplify(h.psi, 2, 3, n);
  QMatrix psi1 = amplify(h.psi, 1, 3, n);
  QMatrix p13 = permute_legs(flip_matrix(n), {0, 1}, {0, 1});  // flip acting on legs 1,3
  {
    // Build P13 on the traced space: after Tr_(2), legs (1,3) remain.
    QMatrix lhs = partial_trace(r1 * psi2, 2);
    QMatrix rhs = partial_trace(psi1 * r2, 2);
    rep.add_equal("skew inverse, left winding", lhs, flip_matrix(n));
    rep.add_equal("skew inverse, right winding", rhs, flip_matrix(n));
  }
  (void)p13;

  rep.add_scalar_equal("Tr B = Tr C", h.b.trace(), h.c.trace());
  rep.add_equal("Tr_(2) B2 R21 = I", partial_trace(kron(id1, h.b) * r21, 2), id1);
  rep.add_equal("Tr_(2) C2 R12 = I", partial_trace(kron(id1, h.c) * h.r, 2), id1);

  rep.add_equal("B C = nu I", h.b * h.c, id1.scaled(h.nu));
  rep.add_equal("C B = nu I", h.c * h.b, id1.scaled(h.nu));

  rep.add_equal("R B1 B2 = B1 B2 R", h.r * kron(h.b, h.b), kron(h.b, h.b) * h.r);
  rep.add_equal("R C1 C2 = C1 C2 R", h.r * kron(h.c, h.c), kron(h.c, h.c) * h.r);

  QMatrix b1 = kron(h.b, id1), b2 = kron(id1, h.b);
  QMatrix c1 = kron(h.c, id1), c2 = kron(id1, h.c);
  rep.add_equal("B1 Psi = R21^-1 B2", b1 * h.psi, r21inv * b2);
  rep.add_equal("Psi B1 = B2 R21^-1", h.psi * b1, b2 * r21inv);
  rep.add_equal("C2 Psi = R21^-1 C1", c2 * h.psi, r21inv * c1);
  rep.add_equal("Psi C2 = C1 R21^-1", h.psi * c2, c1 * r21inv);

  // Weighted-trace covariance on a full matrix-unit basis of End(V).
  bool trrc_pass = true;
  std::string witness;
  for (long a = 0; a < n && trrc_pass; ++a)
    for (long bcol = 0; bcol < n && trrc_pass; ++bcol) {
      QMatrix x(n, n);
      x.set(a, bcol, QScalar(1));
      QScalar trbx = (h.b * x).trace(), trcx = (h.c * x).trace();
      QMatrix x2 = kron(id1, x), x1 = kron(x, id1);
      if (partial_trace(b1 * h.r * x2 * rinv, 1) != id1.scaled(trbx) ||
          partial_trace(b1 * rinv * x2 * h.r, 1) != id1.scaled(trbx) ||
          partial_trace(c2 * h.r * x1 * rinv, 2) != id1.scaled(trcx) ||
          partial_trace(c2 * rinv * x1 * h.r, 2) != id1.scaled(trcx)) {
        trrc_pass = false;
        witness = "fails on matrix unit E(" + std::to_string(a + 1) + "," +
                  std::to_string(bcol + 1) + ")";
      }
    }
  rep.add("Tr_(1) B1 R X2 R^-1 = Tr(BX) I and C-twin", trrc_pass, witness);

  if (h.birank) {
    auto [m, nn] = *h.birank;
    QScalar expect = QScalar::q().pow(nn - m) * qint(m - nn);
    QScalar trb = h.b.trace();
    if (h.involutive()) expect = QScalar(expect.eval_at(Rat(1)));
    rep.add_scalar_equal("Tr B matches bi-rank value q^{n-m} (m-n)_q", trb, expect);
    QScalar nu_expect = QScalar::q().pow(2 * (nn - m));
    if (h.involutive()) nu_expect = QScalar(nu_expect.eval_at(Rat(1)));
    rep.add_scalar_equal("nu = q^{2(n-m)}", h.nu, nu_expect);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization.  A symmetry file records q and R; certification re-derives
// the rest on load, so a stored file can never smuggle in bad data.

inline nlohmann::ordered_json to_json(const HeckeSymmetry& h) {
  nlohmann::ordered_json j;
  j["name"] = h.name;
  j["dim"] = h.n;
  j["q"] = to_json(h.q);
  j["R"] = to_json(h.r);
  if (h.birank) j["birank"] = {h.birank->first, h.birank->second};
  return j;
}

inline HeckeSymmetry hecke_from_json(const nlohmann::json& j) {
  QMatrix r = qmatrix_from_json(j.at("R"));
  long n = j.at("dim").get<long>();
  r.set_legs({n, n}, {n, n});
  std::optional<std::pair<long, long>> birank;
  if (j.contains("birank"))
    birank = std::make_pair(j["birank"][0].get<long>(), j["birank"][1].get<long>());
  std::string name = j.contains("name") ? j["name"].get<std::string>() : "file";
  return certify_hecke(std::move(r), qscalar_from_json(j.at("q")), std::move(name), birank);
}

}  // namespace rtech
