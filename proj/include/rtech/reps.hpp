#pragma once

// Matrix representations of the quadratic-linear exchange algebra attached
// to a certified symmetry: the basic action on V, its dual, braided tensor
// products through the coproduct, restrictions to isotypic components, the
// adjoint action on the generator span, and the traceless reduction.
//
// Generators are indexed by pairs (i, j), 0-based, packed as g = i*n + j.
// A representation stores one matrix per generator; the unit always acts as
// the identity.  All verification is exact.

#include "rtech/rea.hpp"
#include "rtech/swcat.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rtech {

struct RepresentationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A matrix representation of the exchange algebra of h (unit scaling of the
// linear term).  When the carrier is a tensor word over {V, V*}, `carrier`
// holds it; restrictions keep the ambient word and additionally store the
// uncompressed projected images (`carrier_images`) used for the
// braiding-invariance check.
struct Representation {
  std::string name;
  HeckeSymmetry h;
  std::optional<MixedWord> carrier;
  long dim = 0;
  std::vector<QMatrix> images;          // image of generator (i, j) at i*n+j
  std::vector<QMatrix> carrier_images;  // images on the ambient word when compressed

  const QMatrix& image(long i, long j) const {
    return images[static_cast<size_t>(i * h.n + j)];
  }
};

inline Representation make_representation(const HeckeSymmetry& h, std::string name,
                                          std::optional<MixedWord> carrier, long dim,
                                          std::vector<QMatrix> images) {
  if (images.size() != static_cast<size_t>(h.n * h.n))
    throw std::invalid_argument("make_representation: expected one image per generator");
  for (const QMatrix& m : images)
    if (m.rows() != dim || m.cols() != dim)
      throw std::invalid_argument("make_representation: image size differs from the carrier dimension");
  Representation r;
  r.name = std::move(name);
  r.h = h;
  r.carrier = std::move(carrier);
  r.dim = dim;
  r.images = std::move(images);
  return r;
}

namespace detail {

// The generator matrix of the representation assembled as one operator on
// (compact slots) x (carrier): entry ((i,s,u), (j,s,u')) is the (u,u') entry
// of the image of generator (i,j).  Products of such blocks against
// amplified scalar matrices reproduce, entry by entry, the images of the
// compact-form matrix products with word-valued entries.
inline QMatrix representation_block(const HeckeSymmetry& h, long dim,
                                    const std::vector<QMatrix>& images) {
  const long n = h.n, d = dim;
  QMatrix m(n * n * d, n * n * d);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      const QMatrix& x = images[static_cast<size_t>(i * n + j)];
      for (long u = 0; u < x.rows(); ++u)
        for (const auto& [v, val] : x.row(u))
          for (long s = 0; s < n; ++s) m.set((i * n + s) * d + u, (j * n + s) * d + v, val);
    }
  return m;
}

}  // namespace detail

// Residual of the defining relations at unit scaling of the linear term:
// the conjugation-exchange combination of the generator images, assembled
// on (compact slots) x (carrier).  Zero iff the images form a
// representation.
inline QMatrix relation_residual(const Representation& rep) {
  QMatrix m = detail::representation_block(rep.h, rep.dim, rep.images);
  QMatrix rb = kron(rep.h.r.transpose(), QMatrix::identity(rep.dim));
  QMatrix rm = rb * m;
  QMatrix mr = m * rb;
  return rm * rm - mr * mr - rm + mr;
}

// Image of the weighted-trace element of the generator matrix; it is
// central in the exchange algebra.
inline QMatrix ell_image(const Representation& rep) {
  const long n = rep.h.n;
  QMatrix out(rep.dim, rep.dim);
  for (long a = 0; a < n; ++a)
    for (const auto& [k, v] : rep.h.c.row(a))
      out = out + rep.images[static_cast<size_t>(k * n + a)].scaled(v);
  return out;
}

// The dual of a tensor word: letters are dualized and the order reversed,
// so that the nested evaluation against the original word is well formed.
inline MixedWord dual_word(const MixedWord& w) {
  MixedWord d;
  d.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    d.push_back(*it == Leg::V ? Leg::Dual : Leg::V);
  return d;
}

// Matrix of the nested evaluation (dual word) (x) (word) -> K.  A letter V
// pairs with its dual through the left form (the B-matrix); a letter V*
// pairs with V through the right form (the Kronecker delta).  Row indices
// follow the dual word's own order, column indices the original word's.
inline QMatrix word_pairing(const HeckeSymmetry& h, const MixedWord& w) {
  const long n = h.n;
  QMatrix g = QMatrix::identity(1);
  long dcur = 1;
  for (const Leg s : w) {
    const QMatrix elem = (s == Leg::V) ? h.b : QMatrix::identity(n);
    QMatrix next(dcur * n, dcur * n);
    for (long rb = 0; rb < g.rows(); ++rb)
      for (const auto& [ca, gv] : g.row(rb))
        for (long x = 0; x < n; ++x)
          for (const auto& [y, ev] : elem.row(x)) next.set(x * dcur + rb, ca * n + y, gv * ev);
    g = std::move(next);
    dcur *= n;
  }
  return g;
}

// Coordinate matrix of the map (generator span) -> (carrier) (x) (dual
// carrier) sending each generator to its image operator.  Operators are
// converted to tensor coordinates by un-pairing against the word pairing,
// so that the basic module's map is the identity.
inline QMatrix equivariance_map(const Representation& rep) {
  if (!rep.carrier)
    throw std::invalid_argument("equivariance_map: the carrier is not a tensor word");
  const long n = rep.h.n;
  const std::vector<QMatrix>& imgs =
      rep.carrier_images.empty() ? rep.images : rep.carrier_images;
  QMatrix ginv = inverse(word_pairing(rep.h, *rep.carrier));
  const long d = ginv.rows();
  if (imgs.front().rows() != d)
    throw std::invalid_argument("equivariance_map: images do not live on the carrier word");
  QMatrix phi(d * d, n * n);
  for (long g = 0; g < n * n; ++g) {
    QMatrix coord = imgs[static_cast<size_t>(g)] * ginv;
    for (long r = 0; r < coord.rows(); ++r)
      for (const auto& [c, v] : coord.row(r)) phi.set(r * d + c, g, v);
  }
  return phi;
}

// Full certificate for one representation: the defining relations, the
// centrality of the weighted-trace element, and (for word carriers) the
// braiding invariance of the generator coordinate map.
inline CheckReport verify_rep(const Representation& rep, const ExtendedBraiding* eb = nullptr) {
  CheckReport out;
  out.subject = rep.name;
  out.add_zero("defining relations hold at unit scaling", relation_residual(rep));

  QMatrix ell = ell_image(rep);
  bool central = true;
  std::string witness;
  for (size_t g = 0; g < rep.images.size(); ++g) {
    if (auto d = QMatrix::first_difference(ell * rep.images[g], rep.images[g] * ell)) {
      central = false;
      witness = "fails against generator " + std::to_string(g / static_cast<size_t>(rep.h.n)) +
                "," + std::to_string(g % static_cast<size_t>(rep.h.n));
      break;
    }
  }
  out.add("weighted-trace element acts centrally", central, witness);

  if (rep.carrier) {
    ExtendedBraiding local;
    if (!eb) {
      local = extend_braiding(rep.h);
      eb = &local;
    }
    MixedWord src{Leg::V, Leg::Dual};
    MixedWord dst = *rep.carrier;
    MixedWord dw = dual_word(*rep.carrier);
    dst.insert(dst.end(), dw.begin(), dw.end());
    CheckReport inv = detail::invariance_report(*eb, equivariance_map(rep), src, dst);
    inv.subject = "generator coordinate map";
    out.merge(inv);
  }
  return out;
}

namespace detail {

inline void require_relations(const Representation& rep) {
  QMatrix res = relation_residual(rep);
  if (auto d = QMatrix::first_difference(res, QMatrix(res.rows(), res.cols())))
    throw RepresentationError(rep.name + ": defining relations fail at component (" +
                              std::to_string(d->first + 1) + ", " + std::to_string(d->second + 1) +
                              "): " + res.at(d->first, d->second).str());
}

}  // namespace detail

// Basic action on V: the generator (i, j) sends the k-th basis vector to
// B^j_k times the i-th one.
inline Representation rho_basic(const HeckeSymmetry& h) {
  const long n = h.n;
  std::vector<QMatrix> images;
  images.reserve(static_cast<size_t>(n * n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      QMatrix x(n, n);
      for (const auto& [k, v] : h.b.row(j)) x.set(i, k, v);
      images.push_back(std::move(x));
    }
  Representation rep = make_representation(h, h.name + " basic module", MixedWord{Leg::V}, n,
                                           std::move(images));
  detail::require_relations(rep);
  return rep;
}

// Action on the dual space: the generator (i, j) sends the k-th basis
// covector to minus the contraction of the symmetry against (k, j; r, i).
inline Representation rho_dual(const HeckeSymmetry& h) {
  const long n = h.n;
  std::vector<QMatrix> images(static_cast<size_t>(n * n), QMatrix(n, n));
  for (long r0 = 0; r0 < h.r.rows(); ++r0) {
    long k = r0 / n, j = r0 % n;
    for (const auto& [c0, v] : h.r.row(r0)) {
      long r = c0 / n, i = c0 % n;
      images[static_cast<size_t>(i * n + j)].set(r, k, -v);
    }
  }
  Representation rep = make_representation(h, h.name + " dual module", MixedWord{Leg::Dual}, n,
                                           std::move(images));
  detail::require_relations(rep);
  return rep;
}

// One-dimensional character: every generator acts by c on the diagonal and
// by zero off it.  Valid for every scalar c.
inline Representation character_rep(const HeckeSymmetry& h, const QScalar& c) {
  const long n = h.n;
  std::vector<QMatrix> images;
  images.reserve(static_cast<size_t>(n * n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      QMatrix x(1, 1);
      if (i == j && !c.is_zero()) x.set(0, 0, c);
      images.push_back(std::move(x));
    }
  Representation rep = make_representation(h, h.name + " character " + c.str(), MixedWord{}, 1,
                                           std::move(images));
  detail::require_relations(rep);
  return rep;
}

// --- Coproduct ---------------------------------------------------------------

// One term of the coproduct of a generator: coeff * (left (x) right), where
// a generator index of -1 stands for the unit.
struct CoproductTerm {
  long left = -1;
  long right = -1;
  QScalar coeff;
};

// Coproduct of the generator (i, j): primitive part plus the correction
// proportional to q - q^{-1}.  Zero-coefficient terms are dropped, so the
// involutive case returns the primitive two terms only.
inline std::vector<CoproductTerm> coproduct(const HeckeSymmetry& h, long i, long j) {
  const long n = h.n;
  std::vector<CoproductTerm> terms;
  terms.push_back({i * n + j, -1, QScalar(1)});
  terms.push_back({-1, i * n + j, QScalar(1)});
  QScalar w = h.omega();
  if (!w.is_zero())
    for (long k = 0; k < n; ++k) terms.push_back({i * n + k, k * n + j, -w});
  return terms;
}

// Counit laws on generators and the factored form of the coproduct in the
// affine generators (unit minus omega times the original ones).
inline CheckReport coproduct_report(const HeckeSymmetry& h) {
  CheckReport out;
  out.subject = h.name;
  const long n = h.n;
  const long units = n * n;  // coordinate of the unit in the {generators, unit} basis
  QScalar w = h.omega();

  bool left_law = true, right_law = true;
  for (long i = 0; i < n && left_law && right_law; ++i)
    for (long j = 0; j < n; ++j) {
      // Apply (id (x) counit) and (counit (x) id); both must return the
      // generator itself.
      QMatrix la(units + 1, 1), ra(units + 1, 1);
      for (const CoproductTerm& t : coproduct(h, i, j)) {
        if (t.right == -1) la.add_to(t.left == -1 ? units : t.left, 0, t.coeff);
        if (t.left == -1) ra.add_to(t.right == -1 ? units : t.right, 0, t.coeff);
      }
      QMatrix expect(units + 1, 1);
      expect.set(i * n + j, 0, QScalar(1));
      if (la != expect) left_law = false;
      if (ra != expect) right_law = false;
    }
  out.add("counit absorbs the right tensor factor", left_law);
  out.add("counit absorbs the left tensor factor", right_law);

  // In the affine generators the coproduct is the plain matrix coproduct:
  // expanding both sides over the pair basis {generators, unit}^2 must give
  // identical coefficients.
  bool affine = true;
  for (long i = 0; i < n && affine; ++i)
    for (long j = 0; j < n && affine; ++j) {
      QMatrix lhs(units + 1, units + 1);  // coefficients of left (x) right
      if (i == j) lhs.set(units, units, QScalar(1));
      for (const CoproductTerm& t : coproduct(h, i, j))
        lhs.add_to(t.left == -1 ? units : t.left, t.right == -1 ? units : t.right, -w * t.coeff);
      QMatrix rhs(units + 1, units + 1);
      for (long s = 0; s < n; ++s) {
        // (delta_{is} e - w l_i^s) (x) (delta_{sj} e - w l_s^j)
        if (i == s && s == j) rhs.add_to(units, units, QScalar(1));
        if (i == s) rhs.add_to(units, s * n + j, -w);
        if (s == j) rhs.add_to(i * n + s, units, -w);
        rhs.add_to(i * n + s, s * n + j, w * w);
      }
      if (lhs != rhs) affine = false;
    }
  out.add("affine generators turn the coproduct into the matrix coproduct", affine);
  return out;
}

// --- Braided tensor product --------------------------------------------------

// Representation on the concatenated carrier: each generator acts through
// its coproduct, with the right tensor factor braided past the left
// carrier before acting.
inline Representation rho_tensor(const Representation& u, const Representation& w,
                                 const ExtendedBraiding* eb = nullptr) {
  if (!(u.h.r == w.h.r) || !(u.h.q == w.h.q))
    throw std::invalid_argument("rho_tensor: the factors belong to different symmetries");
  if (!u.carrier || !w.carrier)
    throw std::invalid_argument("rho_tensor: both carriers must be tensor words");
  if (!u.carrier_images.empty() || !w.carrier_images.empty())
    throw std::invalid_argument("rho_tensor: factors must live on their full carrier words");
  const HeckeSymmetry& h = u.h;
  const long n = h.n, du = u.dim, dw = w.dim;

  ExtendedBraiding local;
  if (!eb) {
    local = extend_braiding(h);
    eb = &local;
  }
  // Braiding of the generator span (as the two-letter word V.V*) past the
  // left carrier, resolved into blocks: A[g][g'] maps the left carrier to
  // itself and weights the transition of generator g into generator g'.
  MixedWord span{Leg::V, Leg::Dual};
  QMatrix br = mixed_braiding(*eb, span, *u.carrier);
  std::vector<std::vector<QMatrix>> blocks(
      static_cast<size_t>(n * n),
      std::vector<QMatrix>(static_cast<size_t>(n * n), QMatrix(du, du)));
  for (long r0 = 0; r0 < br.rows(); ++r0) {
    long up = r0 / (n * n), gp = r0 % (n * n);
    for (const auto& [c0, v] : br.row(r0)) {
      long g = c0 / du, uc = c0 % du;
      blocks[static_cast<size_t>(g)][static_cast<size_t>(gp)].set(up, uc, v);
    }
  }

  QScalar om = h.omega();
  QMatrix idu = QMatrix::identity(du);
  std::vector<QMatrix> images;
  images.reserve(static_cast<size_t>(n * n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      QMatrix op = kron(u.images[static_cast<size_t>(i * n + j)], QMatrix::identity(dw));
      for (long gp = 0; gp < n * n; ++gp) {
        const QMatrix& a = blocks[static_cast<size_t>(i * n + j)][static_cast<size_t>(gp)];
        if (!a.is_zero()) op = op + kron(a, w.images[static_cast<size_t>(gp)]);
      }
      if (!om.is_zero())
        for (long k = 0; k < n; ++k)
          for (long gp = 0; gp < n * n; ++gp) {
            const QMatrix& a = blocks[static_cast<size_t>(k * n + j)][static_cast<size_t>(gp)];
            if (a.is_zero()) continue;
            QMatrix left = u.images[static_cast<size_t>(i * n + k)] * a;
            if (!left.is_zero())
              op = op - kron(left, w.images[static_cast<size_t>(gp)]).scaled(om);
          }
      images.push_back(std::move(op));
    }

  MixedWord word = *u.carrier;
  word.insert(word.end(), w.carrier->begin(), w.carrier->end());
  Representation rep = make_representation(
      h, "(" + u.name + ") (x) (" + w.name + ")", std::move(word), du * dw, std::move(images));
  detail::require_relations(rep);
  return rep;
}

// --- Adjoint action ----------------------------------------------------------

// Adjoint module: the braided tensor product of the basic module and its
// dual, acting on the generator span itself.
inline Representation adjoint_rep(const HeckeSymmetry& h, const ExtendedBraiding* eb = nullptr) {
  Representation ad = rho_tensor(rho_basic(h), rho_dual(h), eb);
  ad.name = h.name + " adjoint module";
  return ad;
}

// Independent route to the adjoint images: the action of the generator
// span on itself is pinned by the linear part of the defining relations in
// compact form; the images are recovered by solving the resulting linear
// system (one right-hand side per first generator index).
inline std::vector<QMatrix> adjoint_images_from_relations(const HeckeSymmetry& h) {
  const long n = h.n, nn = n * n;
  const QMatrix rbar = h.r.transpose();
  const QMatrix rbar_inv = h.r_inverse().transpose();
  const QMatrix l1 = detail::lin_first_factor(n, 2);
  // Sandwiched copy of the generator matrix and the linear part of the
  // relations, both with entries linear in the generators.
  QMatrix l2 = detail::lin_times_mat(detail::mat_times_lin(rbar, l1), rbar_inv, nn);
  QMatrix t = detail::lin_times_mat(l1, rbar, nn) - detail::mat_times_lin(rbar, l1);

  // Coefficient matrix: rows (a, M), columns (j, g); independent of the
  // first generator index.
  QMatrix coeff(n * nn, n * nn);
  for (long r0 = 0; r0 < l2.rows(); ++r0) {
    long j = r0 / n, a = r0 % n;
    for (const auto& [c0, v] : l2.row(r0)) {
      long m = c0 / nn, g = c0 % nn;
      coeff.set(a * nn + m, j * nn + g, v);
    }
  }

  std::vector<QMatrix> images(static_cast<size_t>(nn), QMatrix(nn, nn));
  for (long i = 0; i < n; ++i) {
    QMatrix rhs(n * nn, nn);
    for (long a = 0; a < n; ++a)
      for (const auto& [c0, v] : t.row(i * n + a)) rhs.set(a * nn + c0 / nn, c0 % nn, v);
    QMatrix sol = solve_exact(coeff, rhs);  // rows (j, g), columns (p, s)
    for (long r0 = 0; r0 < sol.rows(); ++r0) {
      long j = r0 / nn, g = r0 % nn;
      for (const auto& [c0, v] : sol.row(r0)) images[static_cast<size_t>(i * n + j)].set(c0, g, v);
    }
  }
  return images;
}

// --- Restriction to isotypic components --------------------------------------

namespace detail {

// The carrier-word symmetry: the given one on all-V words, its dual-basis
// counterpart on all-V* words (the braiding block between two dual letters,
// certified independently).
inline HeckeSymmetry word_symmetry(const HeckeSymmetry& h, const MixedWord& w) {
  bool all_v = true, all_d = true;
  for (Leg s : w) (s == Leg::V ? all_d : all_v) = false;
  if (w.empty() || !(all_v || all_d))
    throw std::invalid_argument("restriction requires a pure tensor power of V or of V*");
  if (all_v) return h;
  HeckeSymmetry dual =
      certify_hecke(swap_legs(h.r.transpose()), h.q, h.name + " dual-basis symmetry");
  dual.birank = h.birank;
  return dual;
}

}  // namespace detail

// Compression of a representation on V^k or V*^k to the isotypic component
// cut out by the projector of one standard tableau of the given shape.  The
// ambient projected images are kept for the invariance check.
inline Representation restrict_module(const Representation& rho, const Partition& lambda,
                                      long a, long cap = -1) {
  if (!rho.carrier) throw std::invalid_argument("restrict_module: carrier is not a tensor word");
  if (!rho.carrier_images.empty())
    throw std::invalid_argument("restrict_module: the module is already compressed");
  if (!is_partition(lambda))
    throw std::invalid_argument("restrict_module: " + partition_str(lambda) + " is not a partition");
  if (weight(lambda) != static_cast<long>(rho.carrier->size()))
    throw std::invalid_argument("restrict_module: the shape weight must equal the word length");
  HeckeSymmetry hw = detail::word_symmetry(rho.h, *rho.carrier);
  std::vector<StandardTableau> tabs = standard_tableaux(lambda);
  if (a < 0 || a >= static_cast<long>(tabs.size()))
    throw std::invalid_argument("restrict_module: tableau index out of range");

  QMatrix e = idempotent_image(hw, tabs[static_cast<size_t>(a)], cap).matrix;
  std::vector<long> piv = pivot_columns(e);
  if (piv.empty())
    throw std::domain_error("restrict_module: the isotypic projector for shape " +
                            partition_str(lambda) +
                            " vanishes; the shape lies outside the symmetry's hook");
  QMatrix basis(e.rows(), static_cast<long>(piv.size()));
  for (long r = 0; r < e.rows(); ++r)
    for (const auto& [c, v] : e.row(r))
      for (size_t p = 0; p < piv.size(); ++p)
        if (piv[p] == c) basis.set(r, static_cast<long>(p), v);

  const long nn = rho.h.n * rho.h.n;
  std::vector<QMatrix> proj, comp;
  proj.reserve(static_cast<size_t>(nn));
  comp.reserve(static_cast<size_t>(nn));
  for (long g = 0; g < nn; ++g) {
    QMatrix p = e * rho.images[static_cast<size_t>(g)] * e;
    comp.push_back(solve_exact(basis, p * basis));
    proj.push_back(std::move(p));
  }
  Representation out = make_representation(
      rho.h, rho.name + " component " + partition_str(lambda) + " #" + std::to_string(a),
      rho.carrier, static_cast<long>(piv.size()), std::move(comp));
  out.carrier_images = std::move(proj);
  detail::require_relations(out);
  return out;
}

// --- Traceless reduction -----------------------------------------------------

// Twisted copy of a representation under the scaling automorphism: the
// generators are scaled by z and shifted along the identity.  Defined for
// non-involutive symmetries only.
inline Representation z_twist(const Representation& rho, const QScalar& z) {
  QScalar om = rho.h.omega();
  if (om.is_zero())
    throw std::domain_error("z_twist: the scaling automorphism needs an invertible q - q^{-1}");
  if (z.is_zero()) throw std::invalid_argument("z_twist: the scaling must be nonzero");
  const long n = rho.h.n;
  QScalar shift = (QScalar(1) - z) * om.inv();
  std::vector<QMatrix> images;
  images.reserve(rho.images.size());
  QMatrix idm = QMatrix::identity(rho.dim);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      QMatrix x = rho.images[static_cast<size_t>(i * n + j)].scaled(z);
      if (i == j && !shift.is_zero()) x = x + idm.scaled(shift);
      images.push_back(std::move(x));
    }
  Representation out = make_representation(rho.h, rho.name + " twisted by " + z.str(),
                                           rho.carrier, rho.dim, std::move(images));
  out.carrier_images = rho.carrier_images;  // compression basis is unchanged
  detail::require_relations(out);
  return out;
}

struct SlReduction {
  Representation rep;  // images of the traceless generators
  QScalar chi;         // scalar by which the weighted-trace element acts
  QScalar xi;          // normalization factor of the reduction
  CheckReport report;  // verification of the reduced relations
};

// Reduction of a representation along the central weighted-trace element:
// the generators are shifted to their traceless parts and renormalized.
// Requires a nonzero weighted trace of the symmetry (unbalanced bi-rank)
// and a scalar action of the weighted-trace element.
inline SlReduction sl_reduce(const Representation& rho) {
  const HeckeSymmetry& h = rho.h;
  const long n = h.n;
  QScalar trc = h.c.trace();
  if (trc.is_zero())
    throw std::domain_error(
        "sl_reduce: the weighted trace of the symmetry vanishes (balanced bi-rank); the "
        "reduction is unavailable");
  QMatrix ell = ell_image(rho);
  for (const QMatrix& x : rho.images)
    if (ell * x != x * ell)
      throw RepresentationError("sl_reduce: the weighted-trace element does not act centrally");
  QScalar chi = ell.at(0, 0);
  if (ell != QMatrix::identity(rho.dim).scaled(chi))
    throw std::domain_error("sl_reduce: the weighted-trace element does not act as a scalar");
  QScalar xi = QScalar(1) - h.omega() * trc.inv() * chi;
  if (xi.is_zero())
    throw std::domain_error("sl_reduce: the normalization factor vanishes for this module");

  QScalar shift = trc.inv() * chi;
  QMatrix idm = QMatrix::identity(rho.dim);
  std::vector<QMatrix> images;
  images.reserve(rho.images.size());
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      QMatrix x = rho.images[static_cast<size_t>(i * n + j)];
      if (i == j) x = x - idm.scaled(shift);
      images.push_back(x.scaled(xi.inv()));
    }

  SlReduction red;
  red.chi = chi;
  red.xi = xi;
  red.rep = make_representation(h, rho.name + " traceless reduction", rho.carrier, rho.dim,
                                std::move(images));
  red.rep.carrier_images.clear();  // the projected ambient images no longer apply

  CheckReport& rep = red.report;
  rep.subject = red.rep.name;
  rep.add("weighted-trace element acts by the scalar " + chi.str(), true);
  rep.add("normalization factor " + xi.str() + " is invertible", true);
  rep.add_zero("reduced images satisfy the defining relations at unit scaling",
               relation_residual(red.rep));
  rep.add_zero("weighted trace of the reduced images vanishes", ell_image(red.rep));
  return red;
}

// Action table of the adjoint module written against the traceless
// splitting of the generator span: the weighted-trace element kills itself
// and the traceless part scales, and the traceless-traceless action matches
// its three-term closed form.
inline CheckReport sl_adjoint_report(const HeckeSymmetry& h) {
  CheckReport out;
  out.subject = h.name;
  const long n = h.n, nn = n * n;
  QScalar trc = h.c.trace();
  if (trc.is_zero())
    throw std::domain_error("sl_adjoint_report: balanced bi-rank; no traceless splitting");
  Representation ad = adjoint_rep(h);
  QMatrix aell = ell_image(ad);

  // Coordinates of the weighted-trace element and of the traceless parts
  // inside the generator span.
  QMatrix vell(nn, 1);
  for (long a = 0; a < n; ++a)
    for (const auto& [b, v] : h.c.row(a)) vell.set(b * n + a, 0, v);
  std::vector<QMatrix> vf;
  vf.reserve(static_cast<size_t>(nn));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      QMatrix col(nn, 1);
      col.set(i * n + j, 0, QScalar(1));
      if (i == j) col = col - vell.scaled(trc.inv());
      vf.push_back(std::move(col));
    }

  out.add_zero("weighted-trace element annihilates itself", aell * vell);
  bool f_kills = true;
  bool scales = true;
  QScalar factor = -h.omega() * trc;
  for (long g = 0; g < nn; ++g) {
    QMatrix af = ad.images[static_cast<size_t>(g)] - aell.scaled(g / n == g % n ? trc.inv() : QScalar(0));
    if (!(af * vell).is_zero()) f_kills = false;
    if (aell * vf[static_cast<size_t>(g)] != vf[static_cast<size_t>(g)].scaled(factor))
      scales = false;
  }
  out.add("traceless generators annihilate the weighted-trace element", f_kills);
  out.add("weighted-trace element scales the traceless part", scales);

  // Closed form of the traceless-traceless action, checked entry by entry
  // of the compact form: both sides are vectors in the generator span.
  const QMatrix rbar = h.r.transpose();
  const QMatrix rbar_inv = h.r_inverse().transpose();
  const QMatrix l1 = detail::lin_first_factor(n, 2);
  QMatrix l2 = detail::lin_times_mat(detail::mat_times_lin(rbar, l1), rbar_inv, nn);
  QMatrix tf = detail::lin_times_mat(l1, rbar, nn) - detail::mat_times_lin(rbar, l1) +
               detail::lin_times_mat(detail::mat_times_lin(rbar, l1), rbar_inv, nn)
                   .scaled(h.omega());
  bool closed = true;
  for (long i = 0; i < n && closed; ++i)
    for (long a = 0; a < n && closed; ++a)
      for (long m0 = 0; m0 < nn && closed; ++m0) {
        QMatrix lhs(nn, 1), rhs(nn, 1);
        for (long j = 0; j < n; ++j) {
          QMatrix af = ad.images[static_cast<size_t>(i * n + j)] -
                       aell.scaled(i == j ? trc.inv() : QScalar(0));
          for (const auto& [c0, v] : l2.row(j * n + a))
            if (c0 / nn == m0) lhs = lhs + (af * vf[static_cast<size_t>(c0 % nn)]).scaled(v);
        }
        for (const auto& [c0, v] : tf.row(i * n + a))
          if (c0 / nn == m0) rhs = rhs + vf[static_cast<size_t>(c0 % nn)].scaled(v);
        if (lhs != rhs) closed = false;
      }
  out.add("traceless action matches its three-term closed form", closed);
  return out;
}

// --- Presentation of the rank-one reduction ----------------------------------

namespace detail {

// Scalar c with c * a == b, if one exists (a nonzero).
inline std::optional<QScalar> proportionality(const QMatrix& a, const QMatrix& b) {
  for (long r = 0; r < a.rows(); ++r) {
    const auto& row = a.row(r);
    if (row.empty()) continue;
    const auto& [c0, v] = *row.begin();
    QScalar f = b.at(r, c0) / v;
    if (a.scaled(f) == b) return f;
    return std::nullopt;
  }
  return std::nullopt;
}

// The three displayed exchange relations and the quadratic central element
// for a triple (H, E, F) of images, at linear-term scaling hbar.
inline CheckReport triple_relations(const QMatrix& hh, const QMatrix& ee, const QMatrix& ff,
                                    const QScalar& q, const QScalar& hbar, const std::string& tag) {
  CheckReport out;
  QScalar two_q = q + q.inv();
  QMatrix q2 = QMatrix::identity(hh.rows());
  out.add_equal("diagonal-raising exchange relation" + tag,
                (hh * ee).scaled(q * q) - ee * hh, ee.scaled(two_q * hbar));
  out.add_equal("diagonal-lowering exchange relation" + tag,
                hh * ff - (ff * hh).scaled(q * q), ff.scaled(-(two_q * hbar)));
  out.add_equal("raising-lowering exchange relation" + tag,
                (ee * ff - ff * ee).scaled(q),
                hh.scaled(hbar) - (hh * hh).scaled((q * q - QScalar(1)) / two_q));
  QMatrix casimir = (hh * hh).scaled(two_q.inv()) + (ee * ff).scaled(q.inv()) +
                    (ff * ee).scaled(q);
  bool central = (casimir * hh == hh * casimir) && (casimir * ee == ee * casimir) &&
                 (casimir * ff == ff * casimir);
  out.add("quadratic central element commutes with the triple" + tag, central);
  return out;
}

}  // namespace detail

// For the two-dimensional standard symmetry: normalize the three traceless
// generators so that they satisfy the displayed rank-one exchange
// relations, verify them on the basic module and on the traceless block of
// the adjoint module, and check the classical limit of the normalization.
inline CheckReport sl2_presentation(const HeckeSymmetry& h) {
  if (h.n != 2 || h.involutive())
    throw std::domain_error(
        "sl2_presentation: requires the two-dimensional standard symmetry at symbolic q");
  CheckReport out;
  out.subject = h.name;
  const QScalar q = h.q;
  QScalar two_q = q + q.inv();

  Representation rho1 = rho_basic(h);
  SlReduction red = sl_reduce(rho1);
  out.merge(red.report);
  const QMatrix& h0 = red.rep.image(0, 0);
  const QMatrix& e0 = red.rep.image(0, 1);
  const QMatrix& f0 = red.rep.image(1, 0);

  // Normalizations: gamma from the diagonal-raising relation, mu from the
  // raising-lowering relation; the diagonal-lowering relation is then an
  // independent consistency check.
  auto gamma = detail::proportionality((h0 * e0).scaled(q * q) - e0 * h0, e0.scaled(two_q));
  out.add("diagonal normalization is determined by the raising relation", gamma.has_value(),
          gamma ? "gamma = " + gamma->str() : "no scalar fits");
  if (!gamma) return out;
  QMatrix hh = h0.scaled(*gamma);
  auto mu = detail::proportionality(
      (e0 * f0 - f0 * e0).scaled(q),
      hh - (hh * hh).scaled((q * q - QScalar(1)) / two_q));
  out.add("lowering normalization is determined by the mixed relation", mu.has_value(),
          mu ? "mu = " + mu->str() : "no scalar fits");
  if (!mu) return out;
  QMatrix ee = e0;
  QMatrix ff = f0.scaled(*mu);

  out.merge(detail::triple_relations(hh, ee, ff, q, QScalar(1), " on the basic module"));
  out.merge(detail::triple_relations(hh.scaled(2), ee.scaled(2), ff.scaled(2), q, QScalar(2),
                                     " at doubled scaling"));

  bool classical = false;
  std::string detail_str;
  try {
    Rat g1 = gamma->eval_at(Rat(1));
    classical = (g1 == Rat(2));
    detail_str = "value at q=1: " + rat_str(g1);
  } catch (const std::exception& ex) {
    detail_str = ex.what();
  }
  out.add("diagonal normalization has the classical value at q = 1", classical, detail_str);

  // Same normalizations must work inside the traceless block of the
  // adjoint module.
  {
    const long n = h.n, nn = n * n;
    QScalar trc = h.c.trace();
    Representation ad = adjoint_rep(h);
    QMatrix aell = ell_image(ad);
    QMatrix vell(nn, 1);
    for (long a = 0; a < n; ++a)
      for (const auto& [b, v] : h.c.row(a)) vell.set(b * n + a, 0, v);
    // Basis of the traceless part: all generator directions except the
    // last diagonal one, shifted against the weighted-trace direction.
    QMatrix basis(nn, nn - 1);
    long col = 0;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        if (i == n - 1 && j == n - 1) continue;
        QMatrix v(nn, 1);
        v.set(i * n + j, 0, QScalar(1));
        if (i == j) v = v - vell.scaled(trc.inv());
        for (long r = 0; r < nn; ++r)
          for (const auto& [c0, val] : v.row(r)) basis.set(r, col, val);
        ++col;
      }
    std::vector<QMatrix> restricted;
    restricted.reserve(static_cast<size_t>(nn));
    for (long g = 0; g < nn; ++g)
      restricted.push_back(solve_exact(basis, ad.images[static_cast<size_t>(g)] * basis));
    Representation adres = make_representation(h, h.name + " adjoint traceless block",
                                               std::nullopt, nn - 1, std::move(restricted));
    detail::require_relations(adres);
    SlReduction adred = sl_reduce(adres);
    out.add_scalar_equal("adjoint block scalar matches the trace action", adred.chi,
                         -h.omega() * trc);
    out.merge(detail::triple_relations(adred.rep.image(0, 0).scaled(*gamma),
                                       adred.rep.image(0, 1),
                                       adred.rep.image(1, 0).scaled(*mu), q, QScalar(1),
                                       " on the adjoint traceless block"));
  }

  // The affine change of generators absorbs the linear term: the affine
  // images satisfy the homogeneous exchange relation.
  {
    QScalar om = h.omega();
    const long n = h.n;
    std::vector<QMatrix> aff;
    aff.reserve(rho1.images.size());
    QMatrix idm = QMatrix::identity(rho1.dim);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        QMatrix x = rho1.images[static_cast<size_t>(i * n + j)].scaled(-om);
        if (i == j) x = x + idm;
        aff.push_back(std::move(x));
      }
    QMatrix m = detail::representation_block(h, rho1.dim, aff);
    QMatrix rb = kron(h.r.transpose(), QMatrix::identity(rho1.dim));
    QMatrix rm = rb * m, mr = m * rb;
    out.add_zero("affine generators satisfy the homogeneous exchange relation", rm * rm - mr * mr);
  }
  return out;
}

// --- Braided bracket on the generator span -----------------------------------

struct BraidedBracket {
  QMatrix bracket;      // map (span (x) span) -> span, on word coordinates
  QMatrix sigma;        // inverse conjugation by the braiding on the square
  QMatrix symmetrizer;  // symmetric projector on the square, word coordinates
};

inline BraidedBracket braided_bracket(const HeckeSymmetry& h) {
  const long n = h.n, nn = n * n;
  const QMatrix rbar = h.r.transpose();
  const QMatrix rbar_inv = h.r_inverse().transpose();
  QMatrix p2 = pattern_matrix(h, 2);
  QMatrix p2i = inverse(p2);
  const QMatrix l1 = detail::lin_first_factor(n, 2);
  QMatrix t = detail::lin_times_mat(l1, rbar, nn) - detail::mat_times_lin(rbar, l1);
  BraidedBracket b;
  b.bracket = (p2i * detail::entries_by_words(t, nn)).transpose();
  // Conjugation of the square by the braiding, transported from compact
  // entries to word coordinates.  The coordinate matrix of the abstract
  // operator is the transpose of the entry-action matrix: the operator sends
  // the basis element at one entry to the combination read along that
  // entry's row.
  QMatrix qw = (p2i * detail::two_sided(rbar, rbar_inv) * p2).transpose();
  b.sigma = inverse(qw);
  QScalar q = h.q;
  QScalar two_sq = (q + q.inv()) * (q + q.inv());
  b.symmetrizer =
      (QMatrix::identity(nn * nn).scaled(q * q + (q * q).inv()) + qw + b.sigma).scaled(two_sq.inv());
  return b;
}

// The bracket kills the symmetric part of the square, satisfies the
// shifted double-bracket identity, and the two presentations of the
// defining relations span the same row space.
inline CheckReport braided_bracket_report(const HeckeSymmetry& h) {
  CheckReport out;
  out.subject = h.name;
  const long n = h.n, nn = n * n;
  BraidedBracket b = braided_bracket(h);

  out.add_zero("bracket annihilates the symmetric part of the square",
               b.bracket * b.symmetrizer);

  QMatrix idg = QMatrix::identity(nn);
  QMatrix lhs = b.bracket * kron(b.bracket, idg);
  QMatrix rhs = b.bracket * kron(idg, b.bracket) *
                (QMatrix::identity(nn * nn * nn) - kron(b.sigma, idg));
  out.add_equal("shifted double-bracket identity holds", lhs, rhs);

  // Relation rows in inhomogeneous word coordinates (quadratic block, then
  // the linear block) for both presentations of the defining relations.
  auto [quad, lin] = relation_coefficients(h, QScalar(1));
  QMatrix form1(nn * nn, nn * nn + nn);
  for (long r = 0; r < quad.rows(); ++r) {
    for (const auto& [c, v] : quad.row(r)) form1.set(r, c, v);
    for (const auto& [c, v] : lin.row(r)) form1.set(r, nn * nn + c, -v);
  }
  const QMatrix rbar = h.r.transpose();
  const QMatrix rbar_inv = h.r_inverse().transpose();
  const QMatrix l1 = detail::lin_first_factor(n, 2);
  QMatrix lbar2 = detail::lin_times_mat(detail::mat_times_lin(rbar, l1), rbar_inv, nn);
  QMatrix u2 = detail::word_times_word(l1, lbar2, n, 1, 1);
  QMatrix u2c = detail::lin_times_mat(detail::mat_times_lin(rbar_inv, u2), rbar, nn * nn);
  QMatrix quad2 = detail::entries_by_words(u2 - u2c, nn * nn);
  QMatrix lin2 = detail::entries_by_words(
      detail::lin_times_mat(l1, rbar, nn) - detail::mat_times_lin(rbar, l1), nn);
  QMatrix form2(nn * nn, nn * nn + nn);
  for (long r = 0; r < quad2.rows(); ++r) {
    for (const auto& [c, v] : quad2.row(r)) form2.set(r, c, v);
    for (const auto& [c, v] : lin2.row(r)) form2.set(r, nn * nn + c, -v);
  }
  long r1 = rank_symbolic(form1), r2 = rank_symbolic(form2);
  long rs = rank_symbolic(vstack(form1, form2));
  out.add("both presentations of the relations span the same row space",
          r1 == r2 && r2 == rs,
          "ranks " + std::to_string(r1) + ", " + std::to_string(r2) + ", stacked " +
              std::to_string(rs));
  return out;
}

// --- Categorical action diagram ----------------------------------------------

// Commutativity of the action diagram: braiding a spectator word past
// (generator span (x) carrier) and acting afterwards agrees with acting
// first and braiding past the carrier alone.
inline CheckReport action_diagram_report(const Representation& rho, const MixedWord& spectator,
                                         const ExtendedBraiding& e) {
  if (!rho.carrier || !rho.carrier_images.empty())
    throw std::invalid_argument("action_diagram_report: the module must live on its carrier word");
  CheckReport out;
  out.subject = rho.name + " against " + word_str(spectator);
  const long n = rho.h.n, d = rho.dim;
  QMatrix act(d, n * n * d);
  for (long g = 0; g < n * n; ++g)
    for (long r = 0; r < d; ++r)
      for (const auto& [c, v] : rho.images[static_cast<size_t>(g)].row(r))
        act.set(r, g * d + c, v);
  MixedWord source{Leg::V, Leg::Dual};
  source.insert(source.end(), rho.carrier->begin(), rho.carrier->end());
  long ds = detail::ipow(n, static_cast<long>(spectator.size()));
  QMatrix ids = QMatrix::identity(ds);
  out.add_equal("action commutes with braiding past the spectator word",
                kron(act, ids) * mixed_braiding(e, spectator, source),
                mixed_braiding(e, spectator, *rho.carrier) * kron(ids, act));
  return out;
}

// --- Stability of the relation ideal under the braiding ----------------------

// The span of the defining relations, quadratic part together with the linear
// tail, must be carried into itself when braided past V or V* in either
// order.  Generator letters are identified with the two-letter word (V, V*),
// so a degree-d relation component lives in the 2d-letter word space and the
// braiding acts blockwise per degree.
inline CheckReport relation_ideal_invariance_report(const HeckeSymmetry& h,
                                                    const ExtendedBraiding* eb = nullptr) {
  CheckReport out;
  out.subject = h.name;
  const long n = h.n;
  ExtendedBraiding local;
  if (!eb) {
    local = extend_braiding(h);
    eb = &local;
  }
  auto [quad, lin] = relation_coefficients(h, QScalar(1));
  QMatrix bas2 = quad.transpose();
  QMatrix bas1 = lin.transpose().scaled(QScalar(-1));

  MixedWord w2{Leg::V, Leg::Dual, Leg::V, Leg::Dual};
  MixedWord w1{Leg::V, Leg::Dual};
  const std::pair<Leg, const char*> kinds[2] = {{Leg::V, "generating"}, {Leg::Dual, "dual"}};
  QMatrix idn = QMatrix::identity(n);
  for (const auto& [leg, label] : kinds) {
    MixedWord ww{leg};
    QMatrix fwd = vstack(mixed_braiding(*eb, w2, ww) * kron(bas2, idn),
                         mixed_braiding(*eb, w1, ww) * kron(bas1, idn));
    QMatrix tgt = vstack(kron(idn, bas2), kron(idn, bas1));
    bool ok = rank_symbolic(vstack(tgt.transpose(), fwd.transpose())) == rank_symbolic(tgt);
    out.add(std::string("relation span is stable when carried past the ") + label + " object",
            ok);
    QMatrix bwd = vstack(mixed_braiding(*eb, ww, w2) * kron(idn, bas2),
                         mixed_braiding(*eb, ww, w1) * kron(idn, bas1));
    QMatrix tgt2 = vstack(kron(bas2, idn), kron(bas1, idn));
    bool ok2 = rank_symbolic(vstack(tgt2.transpose(), bwd.transpose())) == rank_symbolic(tgt2);
    out.add(std::string("relation span is stable when the ") + label +
                " object is carried past it",
            ok2);
  }
  return out;
}

}  // namespace rtech
