#pragma once
// Semiclassical layer: exact polynomial functions on the dual of gl(m), the
// classical r-matrix together with the quadratic bracket it generates, the
// Poisson pencil spanned with the linear bracket, and the trace-deformation
// cocycle.
//
// Everything in this module lives over plain rationals; q never appears.  The
// only contact with the q-world is the expansion anchor, which differentiates
// the standard braiding at q = 1 and in the relation coefficients of the
// quadratic algebra.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rtech/hecke.hpp"
#include "rtech/qmatrix.hpp"
#include "rtech/qscalar.hpp"
#include "rtech/rational.hpp"
#include "rtech/rea.hpp"
#include "rtech/report.hpp"

namespace rtech {

struct PoissonError : std::runtime_error {
  explicit PoissonError(const std::string& what) : std::runtime_error(what) {}
};

// --- Polynomial functions -----------------------------------------------------

// Sparse polynomial with exact rational coefficients in a fixed list of
// commuting symbols; a monomial is its exponent vector, kept in canonical
// (lexicographic) order by the underlying map.
class PolyFun {
 public:
  PolyFun() = default;
  explicit PolyFun(long vars) : vars_(vars) {}

  static PolyFun constant(long vars, const Rat& c) {
    PolyFun p(vars);
    p.add_term(std::vector<int>(static_cast<size_t>(vars), 0), c);
    return p;
  }
  static PolyFun variable(long vars, long v) {
    PolyFun p(vars);
    std::vector<int> e(static_cast<size_t>(vars), 0);
    e[static_cast<size_t>(v)] = 1;
    p.add_term(e, Rat(1));
    return p;
  }

  long vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, Rat>& terms() const { return terms_; }

  void add_term(const std::vector<int>& expo, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(expo);
    if (it == terms_.end()) {
      terms_.emplace(expo, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  PolyFun operator+(const PolyFun& o) const {
    check_vars(o);
    PolyFun r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  PolyFun operator-(const PolyFun& o) const { return *this + o.scaled(Rat(-1)); }
  PolyFun operator-() const { return scaled(Rat(-1)); }

  PolyFun scaled(const Rat& c) const {
    PolyFun r(vars_);
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
  }

  PolyFun operator*(const PolyFun& o) const {
    check_vars(o);
    PolyFun r(vars_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        std::vector<int> e = ea;
        for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  bool operator==(const PolyFun& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
  bool operator!=(const PolyFun& o) const { return !(*this == o); }

  PolyFun partial(long v) const {
    PolyFun r(vars_);
    for (const auto& [e, c] : terms_) {
      int k = e[static_cast<size_t>(v)];
      if (k == 0) continue;
      std::vector<int> d = e;
      d[static_cast<size_t>(v)] = k - 1;
      r.add_term(d, c * k);
    }
    return r;
  }

  // Replace one symbol by a polynomial (used to cut down to a level set of a
  // linear function).
  PolyFun substitute(long v, const PolyFun& value) const {
    PolyFun r(vars_);
    for (const auto& [e, c] : terms_) {
      std::vector<int> d = e;
      int k = d[static_cast<size_t>(v)];
      d[static_cast<size_t>(v)] = 0;
      PolyFun term(vars_);
      term.add_term(d, c);
      for (int p = 0; p < k; ++p) term = term * value;
      r = r + term;
    }
    return r;
  }

  long degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) {
      long t = 0;
      for (int k : e) t += k;
      if (t > d) d = t;
    }
    return d;
  }

  bool homogeneous(long d) const {
    for (const auto& [e, c] : terms_) {
      long t = 0;
      for (int k : e) t += k;
      if (t != d) return false;
    }
    return true;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += rat_str(c);
      for (size_t k = 0; k < e.size(); ++k)
        for (int p = 0; p < e[k]; ++p) out += "*" + names[k];
    }
    return out;
  }

 private:
  void check_vars(const PolyFun& o) const {
    if (vars_ != o.vars_) throw PoissonError("PolyFun: mixed symbol lists");
  }
  long vars_ = 0;
  std::map<std::vector<int>, Rat> terms_;
};

// Symbol index of the coordinate function picking the (i, j) entry of the
// m x m matrix argument (lower index i, upper index j).
inline long gl_symbol(long m, long i, long j) { return i * m + j; }

inline std::vector<std::string> gl_symbol_names(long m) {
  std::vector<std::string> names;
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j)
      names.push_back("l(" + std::to_string(i) + "," + std::to_string(j) + ")");
  return names;
}

// --- Brackets -----------------------------------------------------------------

// A bracket given by its values on the coordinate symbols, extended to
// arbitrary polynomials as a derivation in each slot.
struct Bracket {
  long m = 0;                  // symbols are the entries of an m x m matrix
  std::vector<PolyFun> table;  // size m^4; entry a * m^2 + b holds {l_a, l_b}

  const PolyFun& pair(long a, long b) const {
    return table[static_cast<size_t>(a * m * m + b)];
  }

  PolyFun apply(const PolyFun& f, const PolyFun& g) const {
    long nv = m * m;
    PolyFun out(nv);
    std::vector<PolyFun> df(static_cast<size_t>(nv)), dg(static_cast<size_t>(nv));
    for (long v = 0; v < nv; ++v) {
      df[static_cast<size_t>(v)] = f.partial(v);
      dg[static_cast<size_t>(v)] = g.partial(v);
    }
    for (long a = 0; a < nv; ++a) {
      if (df[static_cast<size_t>(a)].is_zero()) continue;
      for (long b = 0; b < nv; ++b) {
        if (dg[static_cast<size_t>(b)].is_zero()) continue;
        if (pair(a, b).is_zero()) continue;
        out = out + pair(a, b) * df[static_cast<size_t>(a)] * dg[static_cast<size_t>(b)];
      }
    }
    return out;
  }
};

// --- Classical r-matrix -------------------------------------------------------

struct ClassicalR {
  long m = 0;
  QMatrix fund;  // fundamental image in End(V (x) V), m^2 x m^2
  QMatrix sym;   // coefficients of the symmetric half on e_a (x) e_b
  QMatrix asym;  // coefficients of the antisymmetric half
};

namespace detail {

inline QMatrix flip_matrix(long m) {
  QMatrix p(m * m, m * m);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) p.set(j * m + i, i * m + j, QScalar(1));
  return p;
}

// Coefficient matrix -> element of End(V (x) V) under e_(i,j) |-> matrix unit.
inline QMatrix pair_image(long m, const QMatrix& coeff) {
  QMatrix out(m * m, m * m);
  for (long a = 0; a < m * m; ++a)
    for (const auto& [b, v] : coeff.row(a)) {
      long i = a / m, j = a % m, k = b / m, s = b % m;
      // kron(unit(i,j), unit(k,s)) has its single entry at ((i,k),(j,s)).
      out.add_to(i * m + k, j * m + s, v);
    }
  return out;
}

}  // namespace detail

inline ClassicalR classical_r(long m) {
  if (m < 2) throw std::invalid_argument("classical_r: m must be at least 2");
  ClassicalR r;
  r.m = m;
  r.fund = QMatrix(m * m, m * m);
  for (long i = 0; i < m; ++i) r.fund.add_to(i * m + i, i * m + i, QScalar(1));
  for (long i = 0; i < m; ++i)
    for (long j = i + 1; j < m; ++j) r.fund.add_to(i * m + j, j * m + i, QScalar(2));
  r.sym = QMatrix(m * m, m * m);
  r.asym = QMatrix(m * m, m * m);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) r.sym.set(i * m + j, j * m + i, QScalar(1));
  for (long i = 0; i < m; ++i)
    for (long j = i + 1; j < m; ++j) {
      r.asym.set(i * m + j, j * m + i, QScalar(1));
      r.asym.set(j * m + i, i * m + j, QScalar(-1));
    }
  return r;
}

inline CheckReport classical_r_report(long m) {
  ClassicalR r = classical_r(m);
  CheckReport out;
  out.subject = "classical r-matrix, m = " + std::to_string(m);

  QMatrix idm = QMatrix::identity(m);
  QMatrix r12 = kron(r.fund, idm);
  QMatrix r23 = kron(idm, r.fund);
  QMatrix p23 = kron(idm, detail::flip_matrix(m));
  QMatrix r13 = p23 * r12 * p23;
  out.add_zero("fundamental image solves the classical Yang-Baxter equation",
               r12 * r13 - r13 * r12 + r12 * r23 - r23 * r12 + r13 * r23 - r23 * r13);

  out.add_equal("symmetric half is fixed by the flip", r.sym, r.sym.transpose());
  out.add_equal("antisymmetric half negates under the flip", r.asym,
                r.asym.transpose().scaled(QScalar(-1)));

  QMatrix flip = detail::flip_matrix(m);
  QScalar half(Rat(1, 2));
  out.add_equal("symmetric half maps to half the flip-symmetrized image",
                detail::pair_image(m, r.sym), (r.fund + flip * r.fund * flip).scaled(half));
  out.add_equal("antisymmetric half maps to half the flip-antisymmetrized image",
                detail::pair_image(m, r.asym), (r.fund - flip * r.fund * flip).scaled(half));

  // Expansion anchor: the standard braiding composed with the flip is the
  // identity at q = 1 and reproduces the r-matrix at first order in q - 1.
  HeckeSymmetry h = standard_hecke(m);
  QMatrix rp = h.r * flip;
  QMatrix closed(m * m, m * m);
  QScalar qv = QScalar::q();
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j)
      closed.set(i * m + j, i * m + j, i == j ? qv : QScalar(1));
  for (long i = 0; i < m; ++i)
    for (long j = i + 1; j < m; ++j) closed.set(i * m + j, j * m + i, qv - qv.inv());
  out.add_equal("braiding times flip matches its closed diagonal-plus-offdiagonal form", rp,
                closed);
  QMatrix value(m * m, m * m), slope(m * m, m * m);
  for (long a = 0; a < m * m; ++a)
    for (const auto& [b, v] : rp.row(a)) {
      value.set(a, b, QScalar(v.eval_at(Rat(1))));
      slope.set(a, b, QScalar(v.derivative().eval_at(Rat(1))));
    }
  out.add_equal("braiding times flip is the identity at the classical point", value,
                QMatrix::identity(m * m));
  out.add_equal("first-order coefficient of the braiding times flip", slope, r.fund);
  return out;
}

// --- The bracket constructions --------------------------------------------------

namespace detail {

// Dense matrix with polynomial entries, at desk scale only.
struct PolyMat {
  long dim = 0;
  std::vector<PolyFun> e;
  PolyMat(long d, long vars) : dim(d), e(static_cast<size_t>(d * d), PolyFun(vars)) {}
  PolyFun& at(long r, long c) { return e[static_cast<size_t>(r * dim + c)]; }
  const PolyFun& at(long r, long c) const { return e[static_cast<size_t>(r * dim + c)]; }
};

inline PolyMat pmul(const PolyMat& a, const PolyMat& b) {
  PolyMat out(a.dim, a.e.front().vars());
  for (long r = 0; r < a.dim; ++r)
    for (long k = 0; k < a.dim; ++k) {
      if (a.at(r, k).is_zero()) continue;
      for (long c = 0; c < a.dim; ++c) {
        if (b.at(k, c).is_zero()) continue;
        out.at(r, c) = out.at(r, c) + a.at(r, k) * b.at(k, c);
      }
    }
  return out;
}

inline PolyMat poly_from_scalar(const QMatrix& s, long vars) {
  PolyMat out(s.rows(), vars);
  for (long r = 0; r < s.rows(); ++r)
    for (const auto& [c, v] : s.row(r))
      out.at(r, c) = PolyFun::constant(vars, v.eval_at(Rat(1)));
  return out;
}

// L (x) I and I (x) L with symbol-valued entries.
inline PolyMat generator_first(long m) {
  long nv = m * m;
  PolyMat out(nv, nv);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j)
      for (long s = 0; s < m; ++s)
        out.at(i * m + s, j * m + s) = PolyFun::variable(nv, gl_symbol(m, i, j));
  return out;
}

inline PolyMat generator_second(long m) {
  long nv = m * m;
  PolyMat out(nv, nv);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j)
      for (long s = 0; s < m; ++s)
        out.at(s * m + i, s * m + j) = PolyFun::variable(nv, gl_symbol(m, i, j));
  return out;
}

// Left, right and commutator actions of the matrix unit e_i^j on a symbol.
inline PolyFun act_left(long m, long i, long j, long sym) {
  long k = sym / m, s = sym % m;
  PolyFun out(m * m);
  if (k == j) out = PolyFun::variable(m * m, gl_symbol(m, i, s));
  return out;
}

inline PolyFun act_right(long m, long i, long j, long sym) {
  long k = sym / m, s = sym % m;
  PolyFun out(m * m);
  if (i == s) out = PolyFun::variable(m * m, gl_symbol(m, k, j));
  return out;
}

inline PolyFun act_ad(long m, long i, long j, long sym) {
  return act_left(m, i, j, sym) - act_right(m, i, j, sym);
}

}  // namespace detail

// Quadratic bracket from the matrix form: the difference of the four
// r-decorated products of the two generator placements.
inline Bracket bracket_r(long m) {
  ClassicalR cr = classical_r(m);
  long nv = m * m;
  QMatrix flip = detail::flip_matrix(m);
  QMatrix rbar12 = cr.fund.transpose();
  QMatrix rbar21 = flip * rbar12 * flip;
  detail::PolyMat l1 = detail::generator_first(m);
  detail::PolyMat l2 = detail::generator_second(m);
  detail::PolyMat pr12 = detail::poly_from_scalar(rbar12, nv);
  detail::PolyMat pr21 = detail::poly_from_scalar(rbar21, nv);
  detail::PolyMat pb = detail::pmul(detail::pmul(l2, l1), pr21);
  {
    detail::PolyMat t = detail::pmul(pr12, detail::pmul(l1, l2));
    for (size_t k = 0; k < pb.e.size(); ++k) pb.e[k] = pb.e[k] - t.e[k];
  }
  {
    detail::PolyMat t = detail::pmul(detail::pmul(l2, pr12), l1);
    for (size_t k = 0; k < pb.e.size(); ++k) pb.e[k] = pb.e[k] + t.e[k];
  }
  {
    detail::PolyMat t = detail::pmul(detail::pmul(l1, pr21), l2);
    for (size_t k = 0; k < pb.e.size(); ++k) pb.e[k] = pb.e[k] - t.e[k];
  }
  Bracket br;
  br.m = m;
  br.table.assign(static_cast<size_t>(nv * nv), PolyFun(nv));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j)
      for (long k = 0; k < m; ++k)
        for (long s = 0; s < m; ++s)
          br.table[static_cast<size_t>(gl_symbol(m, i, j) * nv + gl_symbol(m, k, s))] =
              pb.at(i * m + k, j * m + s);
  return br;
}

// The same bracket through vector fields: the left-right symmetric part minus
// the adjoint-adjoint antisymmetric part.
inline Bracket bracket_plus(long m) {
  long nv = m * m;
  Bracket br;
  br.m = m;
  br.table.assign(static_cast<size_t>(nv * nv), PolyFun(nv));
  for (long a = 0; a < nv; ++a)
    for (long b = 0; b < nv; ++b) {
      PolyFun acc(nv);
      for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j) {
          acc = acc + detail::act_left(m, i, j, a) * detail::act_right(m, j, i, b);
          acc = acc - detail::act_right(m, i, j, a) * detail::act_left(m, j, i, b);
        }
      br.table[static_cast<size_t>(a * nv + b)] = acc;
    }
  return br;
}

inline Bracket bracket_minus(long m) {
  long nv = m * m;
  Bracket br;
  br.m = m;
  br.table.assign(static_cast<size_t>(nv * nv), PolyFun(nv));
  for (long a = 0; a < nv; ++a)
    for (long b = 0; b < nv; ++b) {
      PolyFun acc(nv);
      for (long i = 0; i < m; ++i)
        for (long j = i + 1; j < m; ++j) {
          acc = acc + detail::act_ad(m, i, j, a) * detail::act_ad(m, j, i, b);
          acc = acc - detail::act_ad(m, j, i, a) * detail::act_ad(m, i, j, b);
        }
      br.table[static_cast<size_t>(a * nv + b)] = acc;
    }
  return br;
}

// Linear bracket: structure constants of the matrix Lie algebra.
inline Bracket bracket_pl(long m) {
  long nv = m * m;
  Bracket br;
  br.m = m;
  br.table.assign(static_cast<size_t>(nv * nv), PolyFun(nv));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j)
      for (long k = 0; k < m; ++k)
        for (long s = 0; s < m; ++s) {
          PolyFun v(nv);
          if (k == j) v = v + PolyFun::variable(nv, gl_symbol(m, i, s));
          if (i == s) v = v - PolyFun::variable(nv, gl_symbol(m, k, j));
          br.table[static_cast<size_t>(gl_symbol(m, i, j) * nv + gl_symbol(m, k, s))] = v;
        }
  return br;
}

inline Bracket bracket_pencil(long m, const Rat& a, const Rat& b) {
  Bracket pl = bracket_pl(m);
  Bracket r = bracket_r(m);
  Bracket out;
  out.m = m;
  out.table.resize(pl.table.size());
  for (size_t k = 0; k < pl.table.size(); ++k)
    out.table[k] = pl.table[k].scaled(a) + r.table[k].scaled(b);
  return out;
}

inline CheckReport bracket_r_report(long m) {
  long nv = m * m;
  Bracket r = bracket_r(m);
  Bracket plus = bracket_plus(m);
  Bracket minus = bracket_minus(m);
  Bracket pl = bracket_pl(m);
  std::vector<std::string> names = gl_symbol_names(m);
  CheckReport out;
  out.subject = "quadratic bracket, m = " + std::to_string(m);

  bool anti = true, quadratic = true, linear = true, routes = true, covariant = true;
  std::string witness;
  for (long a = 0; a < nv && anti; ++a)
    for (long b = 0; b < nv && anti; ++b)
      if (r.pair(a, b) != -r.pair(b, a)) {
        anti = false;
        witness = names[static_cast<size_t>(a)] + ", " + names[static_cast<size_t>(b)];
      }
  out.add("generator table is antisymmetric", anti, witness);

  for (long k = 0; k < nv * nv; ++k) {
    if (!r.table[static_cast<size_t>(k)].is_zero() &&
        !r.table[static_cast<size_t>(k)].homogeneous(2))
      quadratic = false;
    if (!pl.table[static_cast<size_t>(k)].is_zero() &&
        !pl.table[static_cast<size_t>(k)].homogeneous(1))
      linear = false;
  }
  out.add("quadratic bracket is homogeneous of degree two", quadratic);
  out.add("linear bracket is homogeneous of degree one", linear);

  witness.clear();
  for (long a = 0; a < nv && routes; ++a)
    for (long b = 0; b < nv && routes; ++b)
      if (r.pair(a, b) != plus.pair(a, b) - minus.pair(a, b)) {
        routes = false;
        witness = names[static_cast<size_t>(a)] + ", " + names[static_cast<size_t>(b)];
      }
  out.add("matrix form agrees with the vector-field form", routes, witness);

  witness.clear();
  for (long x = 0; x < nv && covariant; ++x) {
    long xi = x / m, xj = x % m;
    for (long a = 0; a < nv && covariant; ++a)
      for (long b = 0; b < nv && covariant; ++b) {
        PolyFun lhs(nv);
        const PolyFun& val = plus.pair(a, b);
        for (long v = 0; v < nv; ++v) {
          PolyFun dv = val.partial(v);
          if (!dv.is_zero()) lhs = lhs + detail::act_ad(m, xi, xj, v) * dv;
        }
        PolyFun rhs = plus.apply(detail::act_ad(m, xi, xj, a), PolyFun::variable(nv, b)) +
                      plus.apply(PolyFun::variable(nv, a), detail::act_ad(m, xi, xj, b));
        if (lhs != rhs) {
          covariant = false;
          witness = "generator " + names[static_cast<size_t>(x)];
        }
      }
  }
  out.add("symmetric-part bracket is covariant for the commutator action", covariant, witness);

  PolyFun tr(nv);
  for (long i = 0; i < m; ++i) tr = tr + PolyFun::variable(nv, gl_symbol(m, i, i));
  bool central = true;
  for (long v = 0; v < nv && central; ++v)
    if (!r.apply(tr, PolyFun::variable(nv, v)).is_zero()) central = false;
  out.add("matrix trace is central for the quadratic bracket", central);
  return out;
}

// --- The Poisson pencil ---------------------------------------------------------

struct PencilWitness {
  long a = 0, b = 0, c = 0;  // generator triple
  std::string residual;
};

namespace detail {

inline PolyFun triple_jacobiator(const Bracket& x, const Bracket& y, long a, long b, long c) {
  long nv = x.m * x.m;
  PolyFun va = PolyFun::variable(nv, a), vb = PolyFun::variable(nv, b),
          vc = PolyFun::variable(nv, c);
  PolyFun out(nv);
  out = out + x.apply(va, y.apply(vb, vc)) + x.apply(vb, y.apply(vc, va)) +
        x.apply(vc, y.apply(va, vb));
  return out;
}

// Jacobiator of one bracket, or the mixed compatibility term of two.
inline std::optional<PencilWitness> jacobi_scan(const Bracket& x, const Bracket& y, long m) {
  long nv = m * m;
  std::vector<std::string> names = gl_symbol_names(m);
  for (long a = 0; a < nv; ++a)
    for (long b = a + 1; b < nv; ++b)
      for (long c = b + 1; c < nv; ++c) {
        PolyFun j = triple_jacobiator(x, y, a, b, c);
        if (&x != &y) j = j + triple_jacobiator(y, x, a, b, c);
        if (!j.is_zero()) return PencilWitness{a, b, c, j.str(names)};
      }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<PencilWitness> pencil_jacobi_witness(long m, const Rat& a, const Rat& b) {
  if (m < 2 || m > 3) throw std::invalid_argument("pencil: m must be 2 or 3");
  Bracket br = bracket_pencil(m, a, b);
  return detail::jacobi_scan(br, br, m);
}

inline bool pencil_jacobi(long m, const Rat& a, const Rat& b) {
  return !pencil_jacobi_witness(m, a, b).has_value();
}

inline CheckReport pencil_report(long m) {
  if (m < 2 || m > 3) throw std::invalid_argument("pencil: m must be 2 or 3");
  CheckReport out;
  out.subject = "Poisson pencil, m = " + std::to_string(m);
  Bracket pl = bracket_pl(m);
  Bracket r = bracket_r(m);
  auto note = [](const std::optional<PencilWitness>& w) {
    return w ? "triple (" + std::to_string(w->a) + "," + std::to_string(w->b) + "," +
                   std::to_string(w->c) + "): " + w->residual
             : std::string();
  };
  auto w1 = detail::jacobi_scan(pl, pl, m);
  out.add("linear bracket satisfies the Jacobi identity", !w1, note(w1));
  auto w2 = detail::jacobi_scan(r, r, m);
  out.add("quadratic bracket satisfies the Jacobi identity", !w2, note(w2));
  auto w3 = detail::jacobi_scan(pl, r, m);
  out.add("mixed compatibility term vanishes", !w3, note(w3));
  const std::pair<Rat, Rat> samples[4] = {
      {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}, {Rat(2), Rat(3)}};
  for (const auto& [a, b] : samples) {
    auto w = pencil_jacobi_witness(m, a, b);
    out.add("pencil member (" + rat_str(a) + ", " + rat_str(b) + ") satisfies Jacobi", !w,
            note(w));
  }
  return out;
}

// Search for a generator triple on which the symmetric-part bracket alone
// violates Jacobi; absence of a witness is reported as inconclusive, not as a
// theorem.
struct PlusPartSearch {
  bool found = false;
  PencilWitness witness;
};

inline PlusPartSearch plus_part_jacobi_search(long m) {
  Bracket plus = bracket_plus(m);
  PlusPartSearch out;
  auto w = detail::jacobi_scan(plus, plus, m);
  if (w) {
    out.found = true;
    out.witness = *w;
  }
  return out;
}

// --- Rank-one tables ------------------------------------------------------------

namespace detail {

// Substitute the last diagonal symbol so that the matrix trace vanishes.
inline PolyFun restrict_traceless(long m, const PolyFun& f) {
  long last = gl_symbol(m, m - 1, m - 1);
  long nv = m * m;
  PolyFun shift(nv);
  for (long i = 0; i + 1 < m; ++i)
    shift = shift - PolyFun::variable(nv, gl_symbol(m, i, i));
  return f.substitute(last, shift);
}

// Complex polynomial as a real/imaginary pair, used for the compact real-form
// generators.
struct CPoly {
  PolyFun re, im;
};

inline CPoly cp_add(const CPoly& a, const CPoly& b) { return {a.re + b.re, a.im + b.im}; }
inline CPoly cp_sub(const CPoly& a, const CPoly& b) { return {a.re - b.re, a.im - b.im}; }
inline CPoly cp_mul(const CPoly& a, const CPoly& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CPoly cp_bracket(const Bracket& br, const CPoly& a, const CPoly& b) {
  return {br.apply(a.re, b.re) - br.apply(a.im, b.im),
          br.apply(a.re, b.im) + br.apply(a.im, b.re)};
}
// Multiply by the rational complex scalar u + v i.
inline CPoly cp_scale(const CPoly& a, const Rat& u, const Rat& v) {
  return {a.re.scaled(u) - a.im.scaled(v), a.im.scaled(u) + a.re.scaled(v)};
}

}  // namespace detail

// The m = 2 tables: the traceless-basis values of the quadratic bracket, its
// proportionality to the linear bracket, the quadratic central element, and
// the compact real form.
inline CheckReport sl2_tables_report() {
  const long m = 2, nv = 4;
  Bracket r = bracket_r(m);
  Bracket plus = bracket_plus(m);
  Bracket pl = bracket_pl(m);
  CheckReport out;
  out.subject = "rank-one tables";

  PolyFun e = PolyFun::variable(nv, gl_symbol(m, 0, 1));
  PolyFun f = PolyFun::variable(nv, gl_symbol(m, 1, 0));
  PolyFun h = PolyFun::variable(nv, gl_symbol(m, 0, 0)) -
              PolyFun::variable(nv, gl_symbol(m, 1, 1));
  auto rt = [&](const PolyFun& p) { return detail::restrict_traceless(m, p); };

  out.add("{h,e} is -2eh on the traceless slice",
          rt(r.apply(h, e)) == rt((e * h).scaled(Rat(-2))));
  out.add("{h,f} is 2fh on the traceless slice", rt(r.apply(h, f)) == rt((f * h).scaled(Rat(2))));
  out.add("{e,f} is -h^2 on the traceless slice", rt(r.apply(e, f)) == rt(-(h * h)));

  bool plus_vanishes = true;
  const PolyFun* gens[3] = {&e, &f, &h};
  for (const PolyFun* a : gens)
    for (const PolyFun* b : gens)
      if (!rt(plus.apply(*a, *b)).is_zero()) plus_vanishes = false;
  out.add("symmetric-part bracket vanishes on the traceless slice", plus_vanishes);

  bool prop = true;
  for (const PolyFun* a : gens)
    for (const PolyFun* b : gens)
      if (!rt(r.apply(*a, *b) + h * pl.apply(*a, *b)).is_zero()) prop = false;
  out.add("quadratic bracket is -h times the linear bracket on the traceless slice", prop);

  PolyFun c2 = (h * h).scaled(Rat(1, 2)) + (e * f).scaled(Rat(2));
  bool central_r = true, central_pl = true;
  for (const PolyFun* g : gens)
    if (!rt(r.apply(c2, *g)).is_zero()) central_r = false;
  for (long v = 0; v < nv; ++v)
    if (!pl.apply(c2, PolyFun::variable(nv, v)).is_zero()) central_pl = false;
  out.add("quadratic central element commutes with the quadratic bracket", central_r);
  out.add("quadratic central element commutes with the linear bracket", central_pl);

  // Compact real form: x = (e - f)/2, y = i(e + f)/2, z = i h/2, with the
  // quadratic bracket rescaled by -i/2.
  using detail::CPoly;
  PolyFun zero(nv);
  CPoly x{(e - f).scaled(Rat(1, 2)), zero};
  CPoly y{zero, (e + f).scaled(Rat(1, 2))};
  CPoly z{zero, h.scaled(Rat(1, 2))};
  auto rtc = [&](const CPoly& p) { return detail::CPoly{rt(p.re), rt(p.im)}; };
  auto cp_eq = [](const CPoly& a, const CPoly& b) { return a.re == b.re && a.im == b.im; };
  auto rbr = [&](const CPoly& a, const CPoly& b) {
    return detail::cp_scale(detail::cp_bracket(r, a, b), Rat(0), Rat(-1, 2));
  };
  out.add("{x,y} is z^2 in the compact basis", cp_eq(rtc(rbr(x, y)), rtc(detail::cp_mul(z, z))));
  out.add("{y,z} is xz in the compact basis", cp_eq(rtc(rbr(y, z)), rtc(detail::cp_mul(x, z))));
  out.add("{z,x} is yz in the compact basis", cp_eq(rtc(rbr(z, x)), rtc(detail::cp_mul(y, z))));
  out.add("{x,y} is z for the linear bracket",
          cp_eq(detail::cp_bracket(pl, x, y), z));
  out.add("{y,z} is x for the linear bracket",
          cp_eq(detail::cp_bracket(pl, y, z), x));
  out.add("{z,x} is y for the linear bracket",
          cp_eq(detail::cp_bracket(pl, z, x), y));
  CPoly sum = detail::cp_add(detail::cp_add(detail::cp_mul(x, x), detail::cp_mul(y, y)),
                             detail::cp_mul(z, z));
  out.add("sum of squares is -1/2 times the central element",
          cp_eq(sum, CPoly{c2.scaled(Rat(-1, 2)), zero}));
  return out;
}

// --- Semiclassical expansion ------------------------------------------------------

// Relations of the quadratic algebra in the braiding-times-flip form, expanded
// to first order at q = 1: degree zero must be the commutators, and the
// first-order coefficients must reproduce the quadratic bracket.
inline CheckReport semiclassical_report(long m) {
  HeckeSymmetry h = standard_hecke(m);
  const long n = h.n, nn = n * n;
  QMatrix flip = detail::flip_matrix(n);
  QMatrix rr = h.r * flip;
  QMatrix rbar12 = rr.transpose();
  QMatrix rbar21 = flip * rbar12 * flip;
  QMatrix l1 = detail::lin_first_factor(n, 2);
  QMatrix l2 = detail::lin_second_factor(n);
  QMatrix u = detail::lin_times_mat(detail::mat_times_lin(rbar12, l1), rbar21, nn);
  QMatrix rel = detail::entries_by_words(
      detail::word_times_word(u, l2, n, 1, 1) - detail::word_times_word(l2, u, n, 1, 1),
      nn * nn);

  CheckReport out;
  out.subject = "semiclassical expansion, m = " + std::to_string(m);

  QMatrix value(rel.rows(), rel.cols());
  QMatrix slope(rel.rows(), rel.cols());
  for (long r = 0; r < rel.rows(); ++r)
    for (const auto& [c, v] : rel.row(r)) {
      value.set(r, c, QScalar(v.eval_at(Rat(1))));
      slope.set(r, c, QScalar(v.derivative().eval_at(Rat(1))));
    }

  QMatrix expected(rel.rows(), rel.cols());
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        for (long d = 0; d < n; ++d) {
          long row = (a * n + b) * nn + (c * n + d);
          expected.add_to(row, (a * n + c) * nn + (b * n + d), QScalar(1));
          expected.add_to(row, (b * n + d) * nn + (a * n + c), QScalar(-1));
        }
  out.add_equal("relations are commutators at the classical point", value, expected);

  Bracket br = bracket_r(m);
  bool match = true;
  std::string witness;
  std::vector<std::string> names = gl_symbol_names(m);
  for (long a = 0; a < n && match; ++a)
    for (long b = 0; b < n && match; ++b)
      for (long c = 0; c < n && match; ++c)
        for (long d = 0; d < n && match; ++d) {
          long row = (a * n + b) * nn + (c * n + d);
          PolyFun p(nn);
          for (const auto& [w, v] : slope.row(row)) {
            PolyFun mono = PolyFun::variable(nn, w / nn) * PolyFun::variable(nn, w % nn);
            p = p + mono.scaled(v.eval_at(Rat(1)));
          }
          PolyFun want = -br.pair(gl_symbol(m, a, c), gl_symbol(m, b, d));
          if (p != want) {
            match = false;
            witness = "{" + names[static_cast<size_t>(gl_symbol(m, a, c))] + ", " +
                      names[static_cast<size_t>(gl_symbol(m, b, d))] + "}: got " + p.str(names);
          }
        }
  out.add("first-order coefficients reproduce the quadratic bracket", match, witness);
  return out;
}

// --- Trace-deformation cocycle ----------------------------------------------------

// Pairing on the matrix-unit basis: entry (a, b) is the value on the pair of
// units a = (i, j), b = (k, s).  Computed from the word form of the deformed
// trace relation; the overall orientation is pinned by the closed form below,
// and the word combination carries the opposite sign.
inline QMatrix cocycle_pairing(long m) {
  ClassicalR cr = classical_r(m);
  const long n = m, nn = n * n;
  QMatrix l1 = detail::lin_first_factor(n, 2);
  QMatrix l2 = detail::lin_second_factor(n);
  QMatrix flip = detail::flip_matrix(n);
  QMatrix r12 = cr.fund;
  QMatrix r21 = flip * r12 * flip;
  QMatrix x = detail::word_times_word(detail::mat_times_lin(r12, l1), l2, n, 1, 1) +
              detail::word_times_word(detail::lin_times_mat(l1, r21, nn), l2, n, 1, 1) -
              detail::word_times_word(detail::lin_times_mat(l2, r12, nn), l1, n, 1, 1) -
              detail::lin_times_mat(detail::word_times_word(l2, l1, n, 1, 1), r21, nn * nn);
  QMatrix words = detail::entries_by_words(x, nn * nn);
  QMatrix pairing(nn, nn);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      for (long k = 0; k < n; ++k)
        for (long s = 0; s < n; ++s) {
          long row = (i * n + k) * nn + (j * n + s);
          Rat acc(0);
          for (const auto& [w, v] : words.row(row)) {
            long e1 = w / nn, e2 = w % nn;
            // Trace of the product of two matrix units.
            if (e1 % n == e2 / n && e2 % n == e1 / n) acc += v.eval_at(Rat(1));
          }
          pairing.set(i * n + j, k * n + s, QScalar(acc));
        }
  return pairing.scaled(QScalar(-1));
}

inline CheckReport cocycle_check(long m) {
  if (m < 2 || m > 3) throw std::invalid_argument("cocycle_check: m must be 2 or 3");
  const long nn = m * m;
  QMatrix pairing = cocycle_pairing(m);
  CheckReport out;
  out.subject = "trace-deformation cocycle, m = " + std::to_string(m);

  out.add_equal("pairing is antisymmetric", pairing, pairing.transpose().scaled(QScalar(-1)));

  // Vector-field route on matrix units.
  QMatrix route2(nn, nn);
  auto unit = [&](long a) {
    QMatrix u(m, m);
    u.set(a / m, a % m, QScalar(1));
    return u;
  };
  auto comm = [](const QMatrix& x, const QMatrix& y) { return x * y - y * x; };
  for (long a = 0; a < nn; ++a)
    for (long b = 0; b < nn; ++b) {
      QMatrix A = unit(a), B = unit(b);
      QScalar acc;
      for (long i = 0; i < m; ++i)
        for (long j = i + 1; j < m; ++j) {
          acc += (comm(unit(i * m + j), A) * comm(unit(j * m + i), B)).trace();
          acc -= (comm(unit(j * m + i), A) * comm(unit(i * m + j), B)).trace();
        }
      for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j) {
          acc += (A * unit(i * m + j) * unit(j * m + i) * B).trace();
          acc -= (unit(i * m + j) * A * B * unit(j * m + i)).trace();
        }
      route2.set(a, b, acc);
    }
  out.add_equal("word route agrees with the vector-field route", pairing, route2);

  // Closed form: trace against the diagonal matrix of descending odd weights,
  // which is the commutator sum over ordered index pairs.
  QMatrix d(m, m);
  for (long i = 0; i < m; ++i) d.set(i, i, QScalar(m - 1 - 2 * i));
  QMatrix dsum(m, m);
  for (long i = 0; i < m; ++i)
    for (long j = i + 1; j < m; ++j) dsum = dsum + comm(unit(i * m + j), unit(j * m + i));
  out.add_equal("diagonal weight matrix is the ordered commutator sum", d, dsum);
  QMatrix route3(nn, nn);
  for (long a = 0; a < nn; ++a)
    for (long b = 0; b < nn; ++b)
      route3.set(a, b, (comm(unit(a), unit(b)) * d).trace());
  out.add_equal("pairing equals the trace against the weight matrix", pairing, route3);

  // Cocycle identity on all basis triples, expanding the inner commutator
  // over the unit basis through the pairing matrix.
  auto paired = [&](long a, const QMatrix& y) {
    QScalar acc;
    for (long r = 0; r < m; ++r)
      for (const auto& [c, v] : y.row(r)) acc += v * pairing.at(a, r * m + c);
    return acc;
  };
  bool cocycle = true;
  std::string witness;
  for (long a = 0; a < nn && cocycle; ++a)
    for (long b = 0; b < nn && cocycle; ++b)
      for (long c = 0; c < nn && cocycle; ++c) {
        QScalar acc = paired(a, comm(unit(b), unit(c))) + paired(b, comm(unit(c), unit(a))) +
                      paired(c, comm(unit(a), unit(b)));
        if (!acc.is_zero()) {
          cocycle = false;
          witness = "triple (" + std::to_string(a) + "," + std::to_string(b) + "," +
                    std::to_string(c) + ")";
        }
      }
  out.add("cocycle identity holds on all basis triples", cocycle, witness);

  bool kills_identity = true;
  QMatrix eye = QMatrix::identity(m);
  for (long a = 0; a < nn; ++a) {
    if (!paired(a, eye).is_zero()) kills_identity = false;
    QScalar acc;
    for (long i = 0; i < m; ++i) acc += pairing.at(i * m + i, a);
    if (!acc.is_zero()) kills_identity = false;
  }
  out.add("identity pairs to zero on either side, so the pairing descends to traceless "
          "arguments",
          kills_identity);
  return out;
}

}  // namespace rtech
