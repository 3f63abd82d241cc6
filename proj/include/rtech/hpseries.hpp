#pragma once

// Dimension series of the split symmetric/antisymmetric towers, rational
// fitting with built-in sanity invariants, and the polynomial-only super
// Schur function used to cross-check projector ranks.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rtech/heckealg.hpp"

namespace rtech {

struct HPSeriesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer polynomials are coefficient vectors, constant term first.
struct HPSeries {
  std::vector<long> dims_minus;  // ranks of the alternating tower, k = 0..K
  std::vector<long> dims_plus;   // ranks of the symmetric tower
  std::vector<long> num;         // N(t), N(0) = 1
  std::vector<long> den;         // D(t), D(0) = 1
  std::pair<long, long> birank{0, 0};
};

namespace detail {

// First K+1 coefficients of N(t)/D(t); D(0) = 1 keeps this in integers.
inline std::vector<long> expand_rational(const std::vector<long>& num,
                                         const std::vector<long>& den, long K) {
  std::vector<long> c(K + 1, 0);
  for (long k = 0; k <= K; ++k) {
    long v = k < static_cast<long>(num.size()) ? num[k] : 0;
    for (long i = 1; i < static_cast<long>(den.size()) && i <= k; ++i) v -= den[i] * c[k - i];
    c[k] = v;
  }
  return c;
}

inline std::string poly_str(const std::vector<long>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

}  // namespace detail

// Ranks of the single-column and single-row projectors up to weight K.
inline std::pair<std::vector<long>, std::vector<long>> exterior_dims(const HeckeSymmetry& h,
                                                                     long K,
                                                                     RankMode mode = RankMode::Auto) {
  std::vector<long> minus{1}, plus{1};
  for (long k = 1; k <= K; ++k) {
    if (k == 1) {
      minus.push_back(h.n);
      plus.push_back(h.n);
      continue;
    }
    long col = idempotent_rank(h, standard_tableaux(Partition(k, 1)).at(0), K, mode);
    long row = idempotent_rank(h, standard_tableaux(Partition{k}).at(0), K, mode);
    minus.push_back(col);
    plus.push_back(row);
  }
  return {minus, plus};
}

// Fit dims_minus with a rational function N(t)/D(t), minimal total degree
// first, demanding at least two surplus agreement terms, then enforce the
// shape every skew-invertible symmetry's series must have.
inline HPSeries fit_series(const std::vector<long>& dims_minus) {
  long K = static_cast<long>(dims_minus.size()) - 1;
  if (K < 2 || dims_minus.empty() || dims_minus[0] != 1)
    throw HPSeriesError("fit_series: need terms k = 0..K with leading term 1");

  for (long total = 0; total <= K - 2; ++total) {
    for (long dn = 0; dn <= total; ++dn) {
      long dd = total - dn;
      // Unknown D_1..D_dd from [t^k](C * D) = 0, k = dn+1 .. K.
      QMatrix a(K - dn, dd);
      QMatrix rhs(K - dn, 1);
      for (long k = dn + 1; k <= K; ++k) {
        long row = k - dn - 1;
        for (long i = 1; i <= dd; ++i)
          if (k - i >= 0) a.set(row, i - 1, QScalar(Rat(dims_minus[k - i])));
        rhs.set(row, 0, QScalar(Rat(-dims_minus[k])));
      }
      QMatrix sol(dd, 1);
      if (dd > 0) {
        try {
          sol = solve_exact(a, rhs);
        } catch (const std::exception&) {
          continue;  // inconsistent or underdetermined: not this shape
        }
      } else {
        bool ok = true;
        for (long k = dn + 1; k <= K; ++k) ok = ok && dims_minus[k] == 0;
        if (!ok) continue;
      }
      std::vector<long> den{1};
      bool integral = true;
      for (long i = 1; i <= dd; ++i) {
        Rat v = sol.at(i - 1, 0).eval_at(1);  // constants
        if (v.get_den() != 1) integral = false;
        den.push_back(rat_to_long(v));
      }
      if (!integral)
        throw HPSeriesError("not a skew-invertible Hecke HP series: denominator " +
                            detail::poly_str(den) + " is not integral");
      // Numerator by convolution, then the structural checks.
      std::vector<long> num(dn + 1, 0);
      for (long k = 0; k <= dn; ++k) {
        long v = 0;
        for (long i = 0; i <= k && i < static_cast<long>(den.size()); ++i)
          v += den[i] * dims_minus[k - i];
        num[k] = v;
      }
      if (dn > 0 && num[dn] == 0) continue;  // degenerate: lower degree wins later
      for (long k = 0; k <= dn; ++k)
        if (num[k] <= 0)
          throw HPSeriesError("not a skew-invertible Hecke HP series: numerator " +
                              detail::poly_str(num) + " has a non-positive coefficient");
      for (long i = 1; i <= dd; ++i) {
        long b = (i % 2 ? -1 : 1) * den[i];
        if (b <= 0)
          throw HPSeriesError("not a skew-invertible Hecke HP series: denominator " +
                              detail::poly_str(den) + " does not alternate");
      }
      for (long k = 0; k <= dn; ++k)
        if (num[k] != num[dn - k])
          throw HPSeriesError("not a skew-invertible Hecke HP series: numerator " +
                              detail::poly_str(num) + " is not reciprocal");
      for (long i = 0; i <= dd; ++i)
        if (std::labs(den[i]) != std::labs(den[dd - i]))
          throw HPSeriesError("not a skew-invertible Hecke HP series: denominator " +
                              detail::poly_str(den) + " is not reciprocal up to sign");
      HPSeries s;
      s.dims_minus = dims_minus;
      s.num = num;
      s.den = den;
      s.birank = {dn, dd};
      // Positive-coefficient expansion of 1/P_-(-t) gives the partner dims.
      std::vector<long> nflip(den.size()), dflip(num.size());
      for (std::size_t i = 0; i < den.size(); ++i) nflip[i] = (i % 2 ? -den[i] : den[i]);
      for (std::size_t i = 0; i < num.size(); ++i) dflip[i] = (i % 2 ? -num[i] : num[i]);
      s.dims_plus = detail::expand_rational(nflip, dflip, K);
      return s;
    }
  }
  throw HPSeriesError("fit_series: no stable rational shape within the provided terms; increase K");
}

// The super Schur value s_lambda(x|y) from polynomial data alone: elementary
// symmetric functions are the coefficients of N and (sign-adjusted) D, the
// complete ones come from the Wronski identity, one-row values from the
// mixing sum, and the general case from the Jacobi-Trudi determinant.
inline long super_schur(const Partition& lambda, const std::vector<long>& num,
                        const std::vector<long>& den) {
  long k = weight(lambda);
  std::vector<long> ex(k + 1, 0), ey(k + 1, 0), hx(k + 1, 0);
  for (long i = 0; i <= k; ++i) {
    if (i < static_cast<long>(num.size())) ex[i] = num[i];
    if (i < static_cast<long>(den.size())) ey[i] = (i % 2 ? -den[i] : den[i]);
  }
  hx[0] = 1;
  for (long d = 1; d <= k; ++d) {
    long v = 0;
    for (long i = 1; i <= d; ++i) v += (i % 2 ? 1 : -1) * ex[i] * hx[d - i];
    hx[d] = v;
  }
  auto one_row = [&](long d) -> long {
    if (d < 0) return 0;
    if (d == 0) return 1;
    long v = 0;
    for (long i = 0; i <= d; ++i) v += hx[i] * ey[d - i];
    return v;
  };
  long rows = static_cast<long>(lambda.size());
  if (rows == 0) return 1;
  std::vector<std::vector<long>> jt(rows, std::vector<long>(rows));
  for (long i = 1; i <= rows; ++i)
    for (long j = 1; j <= rows; ++j) jt[i - 1][j - 1] = one_row(lambda[i - 1] - i + j);
  // Exact integer determinant by cofactor expansion; the matrices are tiny.
  auto det = [](auto&& self, const std::vector<std::vector<long>>& m) -> long {
    long n = static_cast<long>(m.size());
    if (n == 1) return m[0][0];
    long d = 0;
    for (long c = 0; c < n; ++c) {
      if (m[0][c] == 0) continue;
      std::vector<std::vector<long>> minor(n - 1, std::vector<long>(n - 1));
      for (long r = 1; r < n; ++r)
        for (long cc = 0, w = 0; cc < n; ++cc)
          if (cc != c) minor[r - 1][w++] = m[r][cc];
      d += (c % 2 ? -1 : 1) * m[0][c] * self(self, minor);
    }
    return d;
  };
  return det(det, jt);
}

inline bool hook_test(const Partition& lambda, long m, long n) { return in_hook(lambda, m, n); }

// Series data computed from a symmetry, with the paired-tower identity and
// reciprocity verified against independently computed ranks.
inline HPSeries fit_from_symmetry(const HeckeSymmetry& h, long K,
                                  RankMode mode = RankMode::Auto) {
  auto [minus, plus] = exterior_dims(h, K, mode);
  HPSeries s = fit_series(minus);
  if (s.dims_plus != plus)
    throw HPSeriesError("fit_from_symmetry: symmetric-tower ranks disagree with the fitted series");
  s.dims_plus = plus;
  return s;
}

inline CheckReport hp_report(const HeckeSymmetry& h, long K, RankMode mode = RankMode::Auto) {
  CheckReport rep("dimension series of " + h.name + " up to K = " + std::to_string(K));
  auto [minus, plus] = exterior_dims(h, K, mode);
  HPSeries s;
  try {
    s = fit_series(minus);
  } catch (const HPSeriesError& e) {
    rep.add("rational fit", false, e.what());
    return rep;
  }
  rep.add("rational fit", true,
          "N = " + detail::poly_str(s.num) + ", D = " + detail::poly_str(s.den));
  rep.add("fit reproduces the computed ranks",
          detail::expand_rational(s.num, s.den, K) == minus, "");
  rep.add("paired tower matches the reciprocal expansion", s.dims_plus == plus,
          "computed " + detail::poly_str(plus) + " vs " + detail::poly_str(s.dims_plus));
  if (h.birank) {
    rep.add("detected bi-rank matches the certificate",
            s.birank == *h.birank,
            "(" + std::to_string(s.birank.first) + "," + std::to_string(s.birank.second) + ")");
  }
  return rep;
}

inline CheckReport dimension_crosscheck(const HeckeSymmetry& h, const Partition& lambda,
                                        const HPSeries& s) {
  CheckReport rep("dimension cross-check for " + h.name + ", shape " + partition_str(lambda));
  long rank = idempotent_rank(h, standard_tableaux(lambda).at(0), weight(lambda));
  long schur = super_schur(lambda, s.num, s.den);
  rep.add("projector rank equals the polynomial dimension", rank == schur,
          "rank " + std::to_string(rank) + ", series value " + std::to_string(schur));
  return rep;
}

}  // namespace rtech
