#pragma once

// Laurent polynomials in one variable q over the exact rationals.  Stored as
// a dense coefficient block plus the exponent of its first entry, so q^-3 and
// q^40 cost the same.  The zero polynomial is the empty block.

#include "rtech/rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtech {

class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(const Rat& c) {
    if (c != 0) {
      off_ = 0;
      c_ = {c};
    }
  }
  static Laurent term(const Rat& c, long e) {
    Laurent p;
    if (c != 0) {
      p.off_ = e;
      p.c_ = {c};
    }
    return p;
  }
  static Laurent q(long e = 1) { return term(1, e); }
  static Laurent one() { return term(1, 0); }

  bool is_zero() const { return c_.empty(); }
  // Lowest and highest exponents with nonzero coefficient; only valid when
  // the polynomial is nonzero.
  long lo() const { return off_; }
  long hi() const { return off_ + static_cast<long>(c_.size()) - 1; }
  long degree_span() const { return is_zero() ? 0 : static_cast<long>(c_.size()); }

  Rat coeff(long e) const {
    if (c_.empty() || e < off_ || e > hi()) return Rat(0);
    return c_[static_cast<size_t>(e - off_)];
  }

  bool operator==(const Laurent& o) const { return off_ == o.off_ && c_ == o.c_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  Laurent& operator+=(const Laurent& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    long nlo = std::min(off_, o.off_), nhi = std::max(hi(), o.hi());
    std::vector<Rat> nc(static_cast<size_t>(nhi - nlo + 1), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) nc[static_cast<size_t>(off_ - nlo) + i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) nc[static_cast<size_t>(o.off_ - nlo) + i] += o.c_[i];
    off_ = nlo;
    c_ = std::move(nc);
    trim();
    return *this;
  }
  Laurent operator+(const Laurent& o) const {
    Laurent r = *this;
    r += o;
    return r;
  }
  Laurent operator-(const Laurent& o) const { return *this + (-o); }
  Laurent& operator-=(const Laurent& o) { return *this += -o; }

  Laurent operator*(const Laurent& o) const {
    Laurent r;
    if (is_zero() || o.is_zero()) return r;
    r.off_ = off_ + o.off_;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (size_t j = 0; j < o.c_.size(); ++j)
        if (o.c_[j] != 0) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  Laurent& scale(const Rat& c) {
    if (c == 0) {
      c_.clear();
      off_ = 0;
      return *this;
    }
    for (auto& x : c_) x *= c;
    return *this;
  }
  Laurent scaled(const Rat& c) const {
    Laurent r = *this;
    r.scale(c);
    return r;
  }
  // Multiply by q^e.
  Laurent shifted(long e) const {
    Laurent r = *this;
    if (!r.is_zero()) r.off_ += e;
    return r;
  }

  // d/dq, exact.
  Laurent derivative() const {
    Laurent r;
    for (long e = is_zero() ? 1 : lo(); !is_zero() && e <= hi(); ++e) {
      Rat c = coeff(e);
      if (c != 0 && e != 0) r += term(c * Rat(e), e - 1);
    }
    return r;
  }

  // Evaluation at a nonzero rational point (q0 = 0 would hit negative powers).
  Rat eval(const Rat& q0) const {
    if (is_zero()) return Rat(0);
    if (q0 == 0) throw std::domain_error("Laurent::eval: q0 must be nonzero");
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * q0 + c_[i];
    // Multiply by q0^off_.
    Rat p(1);
    long e = off_;
    Rat base = e >= 0 ? q0 : Rat(1) / q0;
    for (long k = 0; k < std::labs(e); ++k) p *= base;
    return acc * p;
  }

  // Ordinary-polynomial view: *this = q^lo * poly_part() with poly_part(0) != 0.
  Laurent poly_part() const {
    Laurent r = *this;
    if (!r.is_zero()) r.off_ = 0;
    return r;
  }

  // True polynomial division on poly parts: requires lo() >= 0 for both and
  // exact divisibility is not assumed (returns quotient, remainder out-param).
  static Laurent divmod(const Laurent& a, const Laurent& b, Laurent* rem) {
    if (b.is_zero()) throw std::domain_error("Laurent::divmod: division by zero");
    if (a.is_zero()) {
      if (rem) *rem = Laurent();
      return Laurent();
    }
    if (a.lo() < 0 || b.lo() < 0)
      throw std::domain_error("Laurent::divmod: negative exponents; use poly_part first");
    Laurent r = a, qout;
    long db = b.hi();
    Rat lead = b.coeff(db);
    while (!r.is_zero() && r.hi() >= db) {
      long e = r.hi() - db;
      Rat c = r.coeff(r.hi()) / lead;
      qout += term(c, e);
      r -= b * term(c, e);
    }
    if (rem) *rem = r;
    return qout;
  }

  // Exact division (throws when the remainder is nonzero).
  Laurent divexact(const Laurent& b) const {
    if (b.is_zero()) throw std::domain_error("Laurent::divexact: division by zero");
    if (is_zero()) return Laurent();
    // Shift both to nonnegative support, divide, shift back.
    long sa = lo(), sb = b.lo();
    Laurent rem;
    Laurent qout = divmod(poly_part(), b.poly_part(), &rem);
    if (!rem.is_zero()) throw std::domain_error("Laurent::divexact: inexact division");
    return qout.shifted(sa - sb);
  }

  // Monic gcd of the ordinary-polynomial parts (q-power factors dropped).
  // gcd(0,0) = 0; otherwise the result g has g.lo() == 0... not necessarily:
  // g is a genuine polynomial, normalized monic in its leading coefficient.
  static Laurent gcd(const Laurent& a, const Laurent& b) {
    Laurent x = a.poly_part(), y = b.poly_part();
    while (!y.is_zero()) {
      Laurent r;
      divmod(x, y, &r);
      x = y;
      y = r;
    }
    if (x.is_zero()) return x;
    // Strip any q-power picked up along the way and make monic.
    x = x.poly_part();
    return x.scaled(Rat(1) / x.coeff(x.hi()));
  }

  Rat content_lowest() const { return is_zero() ? Rat(0) : c_.front(); }

 private:
  void trim() {
    size_t b = 0, e = c_.size();
    while (b < e && c_[b] == 0) ++b;
    while (e > b && c_[e - 1] == 0) --e;
    if (b == e) {
      c_.clear();
      off_ = 0;
      return;
    }
    if (b > 0 || e < c_.size()) {
      std::vector<Rat> nc(c_.begin() + static_cast<long>(b), c_.begin() + static_cast<long>(e));
      off_ += static_cast<long>(b);
      c_ = std::move(nc);
    }
  }

  long off_ = 0;
  std::vector<Rat> c_;  // empty <=> zero polynomial
};

}  // namespace rtech
