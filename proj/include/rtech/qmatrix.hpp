#pragma once

// Sparse exact matrices over the field of rational functions in q, with
// optional tensor-leg bookkeeping on the row and column index spaces.  The
// leg lists are plain metadata: a k-leg index (i_1, ..., i_k) is flattened
// row-major (first leg most significant), 0-based internally.

#include "rtech/qscalar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtech {

// Thrown when the two generic sample points disagree about a rank.
struct GenericityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Legs = std::vector<long>;

inline long legs_dim(const Legs& l) {
  return std::accumulate(l.begin(), l.end(), 1L, std::multiplies<long>());
}

// Flatten/unflatten multi-indices, row-major.
inline long legs_flatten(const Legs& legs, const std::vector<long>& idx) {
  long f = 0;
  for (size_t i = 0; i < legs.size(); ++i) f = f * legs[i] + idx[i];
  return f;
}
inline std::vector<long> legs_unflatten(const Legs& legs, long f) {
  std::vector<long> idx(legs.size());
  for (size_t i = legs.size(); i-- > 0;) {
    idx[i] = f % legs[i];
    f /= legs[i];
  }
  return idx;
}

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(long rows, long cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows)) {
    row_legs_ = {rows};
    col_legs_ = {cols};
  }
  QMatrix(Legs row_legs, Legs col_legs)
      : rows_(legs_dim(row_legs)),
        cols_(legs_dim(col_legs)),
        row_legs_(std::move(row_legs)),
        col_legs_(std::move(col_legs)),
        data_(static_cast<size_t>(rows_)) {}

  static QMatrix identity(long n) {
    QMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.set(i, i, QScalar(1));
    return m;
  }
  static QMatrix identity_legs(const Legs& legs) {
    QMatrix m = identity(legs_dim(legs));
    m.row_legs_ = legs;
    m.col_legs_ = legs;
    return m;
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const Legs& row_legs() const { return row_legs_; }
  const Legs& col_legs() const { return col_legs_; }
  void set_legs(Legs row_legs, Legs col_legs) {
    if (legs_dim(row_legs) != rows_ || legs_dim(col_legs) != cols_)
      throw std::invalid_argument("QMatrix::set_legs: leg products do not match dimensions");
    row_legs_ = std::move(row_legs);
    col_legs_ = std::move(col_legs);
  }

  const std::map<long, QScalar>& row(long r) const { return data_[static_cast<size_t>(r)]; }

  void set(long r, long c, QScalar v) {
    check_index(r, c);
    if (v.is_zero())
      data_[static_cast<size_t>(r)].erase(c);
    else
      data_[static_cast<size_t>(r)][c] = std::move(v);
  }
  void add_to(long r, long c, const QScalar& v) {
    if (v.is_zero()) return;
    check_index(r, c);
    auto& row = data_[static_cast<size_t>(r)];
    auto it = row.find(c);
    if (it == row.end()) {
      row.emplace(c, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) row.erase(it);
    }
  }
  QScalar at(long r, long c) const {
    check_index(r, c);
    const auto& row = data_[static_cast<size_t>(r)];
    auto it = row.find(c);
    return it == row.end() ? QScalar() : it->second;
  }

  long nnz() const {
    long n = 0;
    for (const auto& r : data_) n += static_cast<long>(r.size());
    return n;
  }
  bool is_zero() const { return nnz() == 0; }

  bool operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const QMatrix& o) const { return !(*this == o); }

  // First position where two same-shaped matrices differ (for reports).
  static std::optional<std::pair<long, long>> first_difference(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return std::make_pair(-1L, -1L);
    for (long r = 0; r < a.rows_; ++r) {
      if (a.row(r) == b.row(r)) continue;
      for (long c = 0; c < a.cols_; ++c)
        if (a.at(r, c) != b.at(r, c)) return std::make_pair(r, c);
    }
    return std::nullopt;
  }

  QMatrix operator+(const QMatrix& o) const {
    require_same_shape(o, "+");
    QMatrix r = *this;
    for (long i = 0; i < rows_; ++i)
      for (const auto& [c, v] : o.row(i)) r.add_to(i, c, v);
    return r;
  }
  QMatrix operator-(const QMatrix& o) const {
    require_same_shape(o, "-");
    QMatrix r = *this;
    for (long i = 0; i < rows_; ++i)
      for (const auto& [c, v] : o.row(i)) r.add_to(i, c, -v);
    return r;
  }
  QMatrix operator-() const { return scaled(QScalar(-1)); }

  QMatrix scaled(const QScalar& s) const {
    QMatrix r(row_legs_, col_legs_);
    if (s.is_zero()) return r;
    for (long i = 0; i < rows_; ++i)
      for (const auto& [c, v] : row(i)) r.set(i, c, v * s);
    return r;
  }

  QMatrix operator*(const QMatrix& o) const {
    if (cols_ != o.rows_)
      throw std::invalid_argument("QMatrix::*: inner dimensions disagree (" +
                                  std::to_string(cols_) + " vs " + std::to_string(o.rows_) + ")");
    QMatrix r(row_legs_, o.col_legs_);
    for (long i = 0; i < rows_; ++i) {
      auto& out = r.data_[static_cast<size_t>(i)];
      for (const auto& [k, a] : row(i)) {
        for (const auto& [c, b] : o.row(k)) {
          QScalar prod = a * b;
          if (prod.is_zero()) continue;
          auto it = out.find(c);
          if (it == out.end())
            out.emplace(c, std::move(prod));
          else {
            it->second += prod;
            if (it->second.is_zero()) out.erase(it);
          }
        }
      }
    }
    return r;
  }

  QMatrix transpose() const {
    QMatrix r(col_legs_, row_legs_);
    for (long i = 0; i < rows_; ++i)
      for (const auto& [c, v] : row(i)) r.set(c, i, v);
    return r;
  }

  QScalar trace() const {
    if (rows_ != cols_) throw std::invalid_argument("QMatrix::trace: not square");
    QScalar t;
    for (long i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  // Entry-wise evaluation at a rational point (constants embedded back into
  // the field, so all generic machinery can be reused verbatim).
  QMatrix eval_at(const Rat& q0) const {
    QMatrix r(row_legs_, col_legs_);
    for (long i = 0; i < rows_; ++i)
      for (const auto& [c, v] : row(i)) r.set(i, c, QScalar(v.eval_at(q0)));
    return r;
  }

  QMatrix derivative() const {
    QMatrix r(row_legs_, col_legs_);
    for (long i = 0; i < rows_; ++i)
      for (const auto& [c, v] : row(i)) r.set(i, c, v.derivative());
    return r;
  }

 private:
  void check_index(long r, long c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("QMatrix: index (" + std::to_string(r) + ", " + std::to_string(c) +
                              ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  void require_same_shape(const QMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument(std::string("QMatrix::") + op + ": shape mismatch");
  }

  long rows_ = 0, cols_ = 0;
  Legs row_legs_, col_legs_;
  std::vector<std::map<long, QScalar>> data_;
};

// ---------------------------------------------------------------------------
// Tensor operations.

inline QMatrix kron(const QMatrix& a, const QMatrix& b) {
  Legs rl = a.row_legs(), cl = a.col_legs();
  rl.insert(rl.end(), b.row_legs().begin(), b.row_legs().end());
  cl.insert(cl.end(), b.col_legs().begin(), b.col_legs().end());
  QMatrix r(rl, cl);
  for (long i = 0; i < a.rows(); ++i)
    for (const auto& [k, av] : a.row(i))
      for (long j = 0; j < b.rows(); ++j)
        for (const auto& [c, bv] : b.row(j)) r.set(i * b.rows() + j, k * b.cols() + c, av * bv);
  return r;
}

// id_{d^{pos-1}} (x) M (x) id_{d^{k-pos+1-legs(M)}} on k legs of dimension d;
// pos is 1-based and M must cover legs pos .. pos+m-1 inside the k available.
inline QMatrix amplify(const QMatrix& m, long pos, long k, long leg_dim) {
  long mlegs = static_cast<long>(m.row_legs().size());
  if (m.rows() != m.cols())
    throw std::invalid_argument("amplify: operator must be square");
  if (pos < 1 || pos + mlegs - 1 > k)
    throw std::out_of_range("amplify: legs " + std::to_string(pos) + ".." +
                            std::to_string(pos + mlegs - 1) + " do not fit in " +
                            std::to_string(k) + " legs");
  long left = 1, right = 1;
  for (long i = 0; i < pos - 1; ++i) left *= leg_dim;
  for (long i = pos + mlegs - 1; i < k; ++i) right *= leg_dim;
  QMatrix r = kron(kron(QMatrix::identity(left), m), QMatrix::identity(right));
  Legs legs(static_cast<size_t>(k), leg_dim);
  r.set_legs(legs, legs);
  return r;
}

// Trace out one row/col leg pair (1-based leg index); requires identical
// row and column leg lists.
inline QMatrix partial_trace(const QMatrix& m, long leg) {
  const Legs& legs = m.row_legs();
  if (legs != m.col_legs())
    throw std::invalid_argument("partial_trace: row/column legs differ");
  if (leg < 1 || leg > static_cast<long>(legs.size()))
    throw std::out_of_range("partial_trace: no leg " + std::to_string(leg));
  size_t t = static_cast<size_t>(leg - 1);
  Legs out_legs;
  for (size_t i = 0; i < legs.size(); ++i)
    if (i != t) out_legs.push_back(legs[i]);
  QMatrix r(out_legs.empty() ? Legs{1} : out_legs, out_legs.empty() ? Legs{1} : out_legs);
  for (long i = 0; i < m.rows(); ++i) {
    std::vector<long> ri = legs_unflatten(legs, i);
    for (const auto& [c, v] : m.row(i)) {
      std::vector<long> ci = legs_unflatten(legs, c);
      if (ri[t] != ci[t]) continue;
      std::vector<long> ro, co;
      for (size_t s = 0; s < legs.size(); ++s)
        if (s != t) {
          ro.push_back(ri[s]);
          co.push_back(ci[s]);
        }
      r.add_to(legs_flatten(out_legs, ro), legs_flatten(out_legs, co), v);
    }
  }
  return r;
}

// Reorder tensor legs: perm[i] names which old leg lands in position i.
inline QMatrix permute_legs(const QMatrix& m, const std::vector<size_t>& row_perm,
                            const std::vector<size_t>& col_perm) {
  const Legs& rl = m.row_legs();
  const Legs& cl = m.col_legs();
  if (row_perm.size() != rl.size() || col_perm.size() != cl.size())
    throw std::invalid_argument("permute_legs: permutation sizes do not match legs");
  Legs nrl(rl.size()), ncl(cl.size());
  for (size_t i = 0; i < rl.size(); ++i) nrl[i] = rl[row_perm[i]];
  for (size_t i = 0; i < cl.size(); ++i) ncl[i] = cl[col_perm[i]];
  QMatrix r(nrl, ncl);
  for (long i = 0; i < m.rows(); ++i) {
    std::vector<long> ri = legs_unflatten(rl, i);
    std::vector<long> nri(ri.size());
    for (size_t s = 0; s < ri.size(); ++s) nri[s] = ri[row_perm[s]];
    long nr = legs_flatten(nrl, nri);
    for (const auto& [c, v] : m.row(i)) {
      std::vector<long> ci = legs_unflatten(cl, c);
      std::vector<long> nci(ci.size());
      for (size_t s = 0; s < ci.size(); ++s) nci[s] = ci[col_perm[s]];
      r.set(nr, legs_flatten(ncl, nci), v);
    }
  }
  return r;
}

inline QMatrix vstack(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column counts differ");
  QMatrix r(a.rows() + b.rows(), a.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (const auto& [c, v] : a.row(i)) r.set(i, c, v);
  for (long i = 0; i < b.rows(); ++i)
    for (const auto& [c, v] : b.row(i)) r.set(a.rows() + i, c, v);
  return r;
}

// ---------------------------------------------------------------------------
// Elimination.  One routine working over the field; rank_generic runs it on
// entries evaluated at sample points, rank_symbolic on the honest rational
// functions.  Pivots favour sparse rows to limit fill-in.

namespace detail {

struct Elim {
  std::vector<std::map<long, QScalar>> rows;
  std::vector<long> pivot_cols;

  explicit Elim(const QMatrix& m) {
    rows.reserve(static_cast<size_t>(m.rows()));
    for (long i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  }

  // Reduce to row echelon form; returns rank.
  long run() {
    size_t head = 0;
    while (head < rows.size()) {
      // Choose the sparsest remaining nonzero row.
      size_t best = head;
      bool found = false;
      for (size_t i = head; i < rows.size(); ++i) {
        if (rows[i].empty()) continue;
        if (!found || rows[i].size() < rows[best].size()) {
          best = i;
          found = true;
        }
      }
      if (!found) break;
      std::swap(rows[head], rows[best]);
      long pc = rows[head].begin()->first;
      QScalar pv = rows[head].begin()->second;
      // Normalize the pivot row.
      for (auto& [c, v] : rows[head]) v = v / pv;
      pivot_cols.push_back(pc);
      for (size_t i = head + 1; i < rows.size(); ++i) {
        auto it = rows[i].find(pc);
        if (it == rows[i].end()) continue;
        QScalar f = it->second;
        rows[i].erase(it);
        for (const auto& [c, v] : rows[head]) {
          if (c == pc) continue;
          auto jt = rows[i].find(c);
          if (jt == rows[i].end())
            rows[i].emplace(c, -(f * v));
          else {
            jt->second -= f * v;
            if (jt->second.is_zero()) rows[i].erase(jt);
          }
        }
      }
      ++head;
    }
    return static_cast<long>(pivot_cols.size());
  }
};

}  // namespace detail

inline long rank_symbolic(const QMatrix& m) {
  detail::Elim e(m);
  return e.run();
}

inline long rank_at(const QMatrix& m, const Rat& q0) { return rank_symbolic(m.eval_at(q0)); }

// The default generic sample points; configurable wherever ranks surface.
struct GenericPoints {
  Rat p1 = Rat(3, 2);
  Rat p2 = Rat(5, 3);
};

inline long rank_generic(const QMatrix& m, const GenericPoints& pts = {}) {
  long r1 = rank_at(m, pts.p1);
  long r2 = rank_at(m, pts.p2);
  if (r1 != r2)
    throw GenericityError("rank_generic: sample points q=" + rat_str(pts.p1) + " and q=" +
                          rat_str(pts.p2) + " give ranks " + std::to_string(r1) + " vs " +
                          std::to_string(r2) + "; add a third point or use symbolic mode");
  return r1;
}

// Gauss-Jordan inverse over the rational-function field.
inline QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  long n = m.rows();
  detail::Elim e(m);
  // Augment with the identity, tracked separately for sparsity.
  std::vector<std::map<long, QScalar>> aug(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) aug[static_cast<size_t>(i)][i] = QScalar(1);

  std::vector<long> where(static_cast<size_t>(n), -1);
  size_t head = 0;
  for (long step = 0; step < n; ++step) {
    size_t best = head;
    bool found = false;
    for (size_t i = head; i < e.rows.size(); ++i) {
      if (e.rows[i].empty()) continue;
      if (!found || e.rows[i].size() < e.rows[best].size()) {
        best = i;
        found = true;
      }
    }
    if (!found) throw std::domain_error("inverse: matrix is singular");
    std::swap(e.rows[head], e.rows[best]);
    std::swap(aug[head], aug[best]);
    long pc = e.rows[head].begin()->first;
    QScalar pv = e.rows[head].begin()->second;
    for (auto& [c, v] : e.rows[head]) v = v / pv;
    for (auto& [c, v] : aug[head]) v = v / pv;
    where[static_cast<size_t>(pc)] = static_cast<long>(head);
    for (size_t i = 0; i < e.rows.size(); ++i) {
      if (i == head) continue;
      auto it = e.rows[i].find(pc);
      if (it == e.rows[i].end()) continue;
      QScalar f = it->second;
      e.rows[i].erase(it);
      for (const auto& [c, v] : e.rows[head]) {
        if (c == pc) continue;
        auto jt = e.rows[i].find(c);
        if (jt == e.rows[i].end())
          e.rows[i].emplace(c, -(f * v));
        else {
          jt->second -= f * v;
          if (jt->second.is_zero()) e.rows[i].erase(jt);
        }
      }
      for (const auto& [c, v] : aug[head]) {
        auto jt = aug[i].find(c);
        if (jt == aug[i].end())
          aug[i].emplace(c, -(f * v));
        else {
          jt->second -= f * v;
          if (jt->second.is_zero()) aug[i].erase(jt);
        }
      }
    }
    ++head;
  }
  QMatrix r(m.col_legs(), m.row_legs());
  for (long pc = 0; pc < n; ++pc) {
    long src = where[static_cast<size_t>(pc)];
    for (const auto& [c, v] : aug[static_cast<size_t>(src)]) r.set(pc, c, v);
  }
  return r;
}

// Indices of a column basis of the image (pivot columns of the echelon form).
inline std::vector<long> pivot_columns(const QMatrix& m) {
  detail::Elim e(m);
  e.run();
  std::sort(e.pivot_cols.begin(), e.pivot_cols.end());
  return e.pivot_cols;
}

// Solve A X = B where A has full column rank; throws when inconsistent.
inline QMatrix solve_exact(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_exact: row counts differ");
  long n = a.cols();
  detail::Elim e(a);
  std::vector<std::map<long, QScalar>> rhs(static_cast<size_t>(a.rows()));
  for (long i = 0; i < b.rows(); ++i) rhs[static_cast<size_t>(i)] = b.row(i);

  std::vector<long> pivot_of_col(static_cast<size_t>(n), -1);
  size_t head = 0;
  while (head < e.rows.size()) {
    size_t best = head;
    bool found = false;
    for (size_t i = head; i < e.rows.size(); ++i) {
      if (e.rows[i].empty()) continue;
      if (!found || e.rows[i].size() < e.rows[best].size()) {
        best = i;
        found = true;
      }
    }
    if (!found) break;
    std::swap(e.rows[head], e.rows[best]);
    std::swap(rhs[head], rhs[best]);
    long pc = e.rows[head].begin()->first;
    QScalar pv = e.rows[head].begin()->second;
    for (auto& [c, v] : e.rows[head]) v = v / pv;
    for (auto& [c, v] : rhs[head]) v = v / pv;
    pivot_of_col[static_cast<size_t>(pc)] = static_cast<long>(head);
    for (size_t i = 0; i < e.rows.size(); ++i) {
      if (i == head) continue;
      auto it = e.rows[i].find(pc);
      if (it == e.rows[i].end()) continue;
      QScalar f = it->second;
      e.rows[i].erase(it);
      for (const auto& [c, v] : e.rows[head]) {
        if (c == pc) continue;
        auto jt = e.rows[i].find(c);
        if (jt == e.rows[i].end())
          e.rows[i].emplace(c, -(f * v));
        else {
          jt->second -= f * v;
          if (jt->second.is_zero()) e.rows[i].erase(jt);
        }
      }
      for (const auto& [c, v] : rhs[head]) {
        auto jt = rhs[i].find(c);
        if (jt == rhs[i].end())
          rhs[i].emplace(c, -(f * v));
        else {
          jt->second -= f * v;
          if (jt->second.is_zero()) rhs[i].erase(jt);
        }
      }
    }
    ++head;
  }
  // Rows below the pivots must have empty coefficients and empty rhs.
  for (size_t i = head; i < e.rows.size(); ++i)
    if (!rhs[i].empty()) throw std::domain_error("solve_exact: inconsistent system");
  for (long c = 0; c < n; ++c)
    if (pivot_of_col[static_cast<size_t>(c)] < 0)
      throw std::domain_error("solve_exact: coefficient matrix is column rank deficient");
  QMatrix x(n, b.cols());
  for (long c = 0; c < n; ++c)
    for (const auto& [cc, v] : rhs[static_cast<size_t>(pivot_of_col[static_cast<size_t>(c)])])
      x.set(c, cc, v);
  return x;
}

// ---------------------------------------------------------------------------
// JSON form: 1-based indices, entries sorted by (r, c), values in the exact
// QScalar encoding; round trips are bit-exact.
inline nlohmann::ordered_json to_json(const QMatrix& m) {
  nlohmann::ordered_json j;
  j["dim_row"] = m.rows();
  j["dim_col"] = m.cols();
  j["row_legs"] = m.row_legs();
  j["col_legs"] = m.col_legs();
  auto entries = nlohmann::ordered_json::array();
  for (long r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r))
      entries.push_back({{"r", r + 1}, {"c", c + 1}, {"v", to_json(v)}});
  j["entries"] = std::move(entries);
  return j;
}

inline QMatrix qmatrix_from_json(const nlohmann::json& j) {
  Legs rl, cl;
  if (j.contains("row_legs"))
    rl = j.at("row_legs").get<Legs>();
  else
    rl = {j.at("dim_row").get<long>()};
  if (j.contains("col_legs"))
    cl = j.at("col_legs").get<Legs>();
  else
    cl = {j.at("dim_col").get<long>()};
  QMatrix m(rl, cl);
  if (m.rows() != j.at("dim_row").get<long>() || m.cols() != j.at("dim_col").get<long>())
    throw std::invalid_argument("qmatrix_from_json: legs inconsistent with dimensions");
  for (const auto& e : j.at("entries"))
    m.set(e.at("r").get<long>() - 1, e.at("c").get<long>() - 1, qscalar_from_json(e.at("v")));
  return m;
}

}  // namespace rtech
