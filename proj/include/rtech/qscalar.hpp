#pragma once

// Exact scalars for generic-q computations: rational functions in q over the
// rationals, kept in a canonical form at all times:
//
//   value = num / den,   num, den Laurent polynomials,
//
// where den is an ordinary polynomial with nonzero constant term, its lowest
// coefficient is 1, and gcd(poly part of num, den) = 1.  Two values are equal
// iff their representations are identical, so operator== is structural.

#include "rtech/laurent.hpp"

#include <json.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>

namespace rtech {

// Thrown when a rational function is evaluated at a pole.
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class QScalar {
 public:
  QScalar() : num_(), den_(Laurent::one()) {}
  QScalar(long v) : num_(Laurent(Rat(v))), den_(Laurent::one()) {}
  QScalar(const Rat& v) : num_(Laurent(v)), den_(Laurent::one()) {}
  explicit QScalar(Laurent p) : num_(std::move(p)), den_(Laurent::one()) {}
  static QScalar q(long e = 1) { return QScalar(Laurent::q(e)); }
  static QScalar frac(Laurent n, Laurent d) {
    QScalar r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    r.canonicalize();
    return r;
  }

  const Laurent& num() const { return num_; }
  const Laurent& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == Laurent::one() && den_ == Laurent::one(); }
  // Degree-zero values (plain rationals embedded in the field).
  bool is_rational() const {
    return den_ == Laurent::one() && (num_.is_zero() || (num_.lo() == 0 && num_.hi() == 0));
  }
  Rat as_rat() const {
    if (!is_rational()) throw std::domain_error("QScalar::as_rat: not a constant");
    return num_.coeff(0);
  }

  bool operator==(const QScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const QScalar& o) const { return !(*this == o); }

  QScalar operator-() const {
    QScalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  QScalar operator+(const QScalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    QScalar r;
    if (den_ == o.den_) {
      r.num_ = num_ + o.num_;
      r.den_ = den_;
    } else {
      r.num_ = num_ * o.den_ + o.num_ * den_;
      r.den_ = den_ * o.den_;
    }
    r.canonicalize();
    return r;
  }
  QScalar operator-(const QScalar& o) const { return *this + (-o); }
  QScalar operator*(const QScalar& o) const {
    if (is_zero() || o.is_zero()) return QScalar();
    QScalar r;
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
    r.canonicalize();
    return r;
  }
  QScalar operator/(const QScalar& o) const {
    if (o.is_zero()) throw std::domain_error("QScalar: division by zero");
    if (is_zero()) return QScalar();
    QScalar r;
    r.num_ = num_ * o.den_;
    r.den_ = den_ * o.num_;
    r.canonicalize();
    return r;
  }
  QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
  QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
  QScalar& operator*=(const QScalar& o) { return *this = *this * o; }
  QScalar& operator/=(const QScalar& o) { return *this = *this / o; }

  QScalar inv() const { return QScalar(1) / *this; }

  // True when the value does not depend on q.
  bool is_constant() const {
    return den_.degree_span() == 1 && num_.degree_span() <= 1 &&
           (num_.is_zero() || num_.lo() == 0);
  }

  QScalar pow(long e) const {
    if (e == 0) return QScalar(1);
    QScalar base = e > 0 ? *this : inv();
    QScalar acc(1);
    for (long k = 0; k < std::labs(e); ++k) acc *= base;
    return acc;
  }

  // Exact evaluation at a nonzero rational point.  Poles are reported with
  // the offending denominator factor spelled out.
  Rat eval_at(const Rat& q0) const {
    if (q0 == 0) throw EvalError("eval_at: q0 = 0 is outside the Laurent domain");
    Rat d = den_.eval(q0);
    if (d == 0)
      throw EvalError("eval_at: q0 = " + rat_str(q0) + " is a root of the denominator factor " +
                      poly_str(den_));
    return num_.eval(q0) / d;
  }

  // d/dq via the quotient rule; result is canonical.
  QScalar derivative() const {
    return frac(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  std::string str() const {
    if (den_ == Laurent::one()) return poly_str(num_);
    std::string n = num_.degree_span() > 1 ? "(" + poly_str(num_) + ")" : poly_str(num_);
    std::string d = den_.degree_span() > 1 ? "(" + poly_str(den_) + ")" : poly_str(den_);
    return n + "/" + d;
  }

  // Canonical text for a Laurent polynomial, highest exponent first:
  // "q^2 - 1 + q^-2".
  static std::string poly_str(const Laurent& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long e = p.hi(); e >= p.lo(); --e) {
      Rat c = p.coeff(e);
      if (c == 0) continue;
      bool neg = c < 0;
      Rat a = abs(c);
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      std::string mag;
      if (e == 0)
        mag = rat_str(a);
      else {
        std::string qp = e == 1 ? "q" : "q^" + std::to_string(e);
        mag = (a == 1) ? qp : rat_str(a) + "*" + qp;
      }
      out += mag;
    }
    return out;
  }

  static QScalar parse(const std::string& text);

 private:
  void canonicalize() {
    if (den_.is_zero()) throw std::domain_error("QScalar: zero denominator");
    if (num_.is_zero()) {
      den_ = Laurent::one();
      return;
    }
    if (den_ == Laurent::one()) return;  // already canonical; skip the gcd
    long shift = num_.lo() - den_.lo();
    Laurent n = num_.poly_part(), d = den_.poly_part();
    Laurent g = Laurent::gcd(n, d);
    if (!g.is_zero() && g != Laurent::one()) {
      n = n.divexact(g);
      d = d.divexact(g);
    }
    Rat c = d.content_lowest();
    n.scale(Rat(1) / c);
    d.scale(Rat(1) / c);
    num_ = n.shifted(shift);
    den_ = d;
  }

  Laurent num_, den_;
};

inline QScalar operator*(long a, const QScalar& b) { return QScalar(a) * b; }
inline QScalar operator*(const Rat& a, const QScalar& b) { return QScalar(a) * b; }

// Symmetric q-integer (k)_q = (q^k - q^-k)/(q - q^-1), materialized directly
// as the Laurent polynomial q^{k-1} + q^{k-3} + ... + q^{1-k}.
inline QScalar qint(long k) {
  if (k == 0) return QScalar(0);
  long a = std::labs(k);
  Laurent p;
  for (long e = 1 - a; e <= a - 1; e += 2) p += Laurent::q(e);
  QScalar r{p};
  return k > 0 ? r : -r;
}

// Symmetric Gaussian binomial coefficient; a Laurent polynomial for
// 0 <= k <= p.  Arguments outside that range are a caller error.
inline QScalar qbinom(long p, long k) {
  if (p < 0 || k < 0 || k > p)
    throw std::domain_error("qbinom(" + std::to_string(p) + ", " + std::to_string(k) +
                            "): arguments outside 0 <= k <= p");
  QScalar r(1);
  for (long i = 1; i <= k; ++i) r = r * qint(p - k + i) / qint(i);
  return r;
}

// ---------------------------------------------------------------------------
// Parser for the canonical text grammar: rationals, q, ^ with integer
// exponents, + - * / and parentheses.  '*' between a coefficient and q is
// optional ("2q^3" == "2*q^3").
namespace detail {

class ScalarParser {
 public:
  explicit ScalarParser(const std::string& s) : s_(s) {}
  QScalar run() {
    QScalar v = expr();
    skip();
    if (pos_ != s_.size())
      throw std::invalid_argument("QScalar::parse: trailing input at '" + s_.substr(pos_) + "'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  QScalar expr() {
    QScalar v = eat('-') ? -term() : (eat('+'), term());
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  QScalar term() {
    QScalar v = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        v *= factor();
      } else if (c == '/') {
        ++pos_;
        v /= factor();
      } else if (c == 'q' || c == '(') {
        v *= factor();  // implicit multiplication: "2q^3", "3(q+1)"
      } else {
        return v;
      }
    }
  }
  QScalar factor() {
    QScalar base = atom();
    if (peek() == '^') {
      ++pos_;
      long e = integer();
      base = base.pow(e);
    }
    return base;
  }
  QScalar atom() {
    skip();
    if (eat('(')) {
      QScalar v = expr();
      if (!eat(')')) throw std::invalid_argument("QScalar::parse: expected ')'");
      return v;
    }
    char c = peek();
    if (c == 'q') {
      ++pos_;
      return QScalar::q();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return QScalar(Rat(number()));
    throw std::invalid_argument(std::string("QScalar::parse: unexpected character '") + c + "'");
  }
  long integer() {
    skip();
    bool neg = eat('-');
    if (!neg) eat('+');
    std::string digits = number();
    long v = std::stol(digits);
    return neg ? -v : v;
  }
  std::string number() {
    skip();
    std::string out;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) out += s_[pos_++];
    if (out.empty()) throw std::invalid_argument("QScalar::parse: expected a number");
    return out;
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline QScalar QScalar::parse(const std::string& text) { return detail::ScalarParser(text).run(); }

// ---------------------------------------------------------------------------
// JSON form: {"num": [[e, "c"], ...], "den": [[e, "c"], ...]} with exponents
// ascending and coefficients as exact rational strings.
inline nlohmann::ordered_json laurent_to_json(const Laurent& p) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  if (!p.is_zero())
    for (long e = p.lo(); e <= p.hi(); ++e)
      if (p.coeff(e) != 0) arr.push_back({e, rat_str(p.coeff(e))});
  return arr;
}

inline Laurent laurent_from_json(const nlohmann::json& j) {
  Laurent p;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2)
      throw std::invalid_argument("laurent_from_json: expected [exponent, coefficient] pairs");
    p += Laurent::term(parse_rat(t[1].get<std::string>()), t[0].get<long>());
  }
  return p;
}

inline nlohmann::ordered_json to_json(const QScalar& s) {
  return {{"num", laurent_to_json(s.num())}, {"den", laurent_to_json(s.den())}};
}

inline QScalar qscalar_from_json(const nlohmann::json& j) {
  return QScalar::frac(laurent_from_json(j.at("num")), laurent_from_json(j.at("den")));
}

}  // namespace rtech
