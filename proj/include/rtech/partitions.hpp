#pragma once

// Partition and Young-tableau combinatorics: shapes, contents, standard
// tableaux, hook lengths, and two independent dimension oracles (classical
// Weyl dimension and super semistandard-tableau counting) together with a
// brute-force Littlewood-Richardson rule.  Everything here is exact integer
// combinatorics; scalar-valued content vectors live in heckealg.hpp.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rtech {

// Weakly decreasing positive parts; the empty vector is the empty partition.
using Partition = std::vector<long>;

inline bool is_partition(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i > 0 && p[i] > p[i - 1]) return false;
  }
  return true;
}

inline long weight(const Partition& p) {
  long w = 0;
  for (long x : p) w += x;
  return w;
}

inline std::string partition_str(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

// Parts of row r (1-based); zero outside the diagram.
inline long part(const Partition& p, long r) {
  return (r >= 1 && r <= static_cast<long>(p.size())) ? p[r - 1] : 0;
}

inline Partition conjugate(const Partition& p) {
  Partition c;
  if (p.empty()) return c;
  c.resize(p[0], 0);
  for (long x : p)
    for (long j = 0; j < x; ++j) ++c[j];
  return c;
}

// mu sits inside nu row by row.
inline bool contains(const Partition& inner, const Partition& outer) {
  for (std::size_t i = 0; i < inner.size(); ++i)
    if (inner[i] > part(outer, static_cast<long>(i) + 1)) return false;
  return true;
}

// All partitions of k, largest part first within each, in lexicographically
// decreasing order ((k), (k-1,1), ..., (1^k)).
inline std::vector<Partition> partitions_of(long k) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, long rest, long maxpart) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (long first = std::min(rest, maxpart); first >= 1; --first) {
      cur.push_back(first);
      self(self, rest - first, first);
      cur.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

// Hook length of box (r, c), 1-based.
inline long hook_length(const Partition& p, long r, long c) {
  Partition pc = conjugate(p);
  return (part(p, r) - c) + (part(pc, c) - r) + 1;
}

// Number of standard tableaux via the hook-length formula.
inline long standard_tableau_count(const Partition& p) {
  long k = weight(p);
  long num = 1;
  for (long i = 2; i <= k; ++i) num *= i;  // fits in long for desk-scale k
  long den = 1;
  for (long r = 1; r <= static_cast<long>(p.size()); ++r)
    for (long c = 1; c <= p[r - 1]; ++c) den *= hook_length(p, r, c);
  if (num % den != 0) throw std::logic_error("hook-length formula: non-integer");
  return num / den;
}

// Boxes that can be added to keep a partition shape, as (row, col), 1-based,
// top to bottom.
inline std::vector<std::pair<long, long>> addable_boxes(const Partition& p) {
  std::vector<std::pair<long, long>> out;
  long rows = static_cast<long>(p.size());
  for (long r = 1; r <= rows + 1; ++r) {
    long len = part(p, r);
    if (r == 1 || part(p, r - 1) > len) out.emplace_back(r, len + 1);
  }
  return out;
}

// Boxes whose removal keeps a partition shape.
inline std::vector<std::pair<long, long>> removable_boxes(const Partition& p) {
  std::vector<std::pair<long, long>> out;
  long rows = static_cast<long>(p.size());
  for (long r = 1; r <= rows; ++r)
    if (part(p, r + 1) < p[r - 1]) out.emplace_back(r, p[r - 1]);
  return out;
}

// A standard filling: entries 1..k, strictly increasing along rows and down
// columns.
struct StandardTableau {
  Partition shape;
  std::vector<std::vector<long>> rows;  // rows[r][c] = entry, 0-based storage

  long size() const { return weight(shape); }

  // Row and column (1-based) of entry p.
  std::pair<long, long> box_of(long p) const {
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c)
        if (rows[r][c] == p) return {static_cast<long>(r) + 1, static_cast<long>(c) + 1};
    throw std::out_of_range("box_of: entry " + std::to_string(p) + " not present");
  }

  // Shape spanned by entries 1..p.
  Partition prefix_shape(long p) const {
    Partition out;
    for (const auto& row : rows) {
      long len = 0;
      for (long e : row)
        if (e <= p) ++len;
      if (len == 0) break;
      out.push_back(len);
    }
    return out;
  }

  // Concatenated rows, used for the lexicographic ordering of tableaux.
  std::vector<long> word() const {
    std::vector<long> w;
    for (const auto& row : rows) w.insert(w.end(), row.begin(), row.end());
    return w;
  }

  std::string str() const {
    std::string s;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r) s += " / ";
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        if (c) s += " ";
        s += std::to_string(rows[r][c]);
      }
    }
    return s;
  }
};

inline bool is_standard(const StandardTableau& t) {
  if (!is_partition(t.shape)) return false;
  if (t.rows.size() != t.shape.size()) return false;
  long k = t.size();
  std::vector<bool> seen(k + 1, false);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (static_cast<long>(t.rows[r].size()) != t.shape[r]) return false;
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      long e = t.rows[r][c];
      if (e < 1 || e > k || seen[e]) return false;
      seen[e] = true;
      if (c > 0 && t.rows[r][c - 1] >= e) return false;
      if (r > 0 && t.rows[r - 1][c] >= e) return false;
    }
  }
  return true;
}

// All standard tableaux of a shape, ordered lexicographically by the
// concatenated row word.
inline std::vector<StandardTableau> standard_tableaux(const Partition& shape) {
  if (!is_partition(shape)) throw std::invalid_argument("standard_tableaux: not a partition");
  std::vector<StandardTableau> out;
  long k = weight(shape);
  if (k == 0) {
    out.push_back(StandardTableau{shape, {}});
    return out;
  }
  // Strip entry k from a removable corner and recurse.
  for (auto [r, c] : removable_boxes(shape)) {
    Partition smaller = shape;
    if (--smaller[r - 1] == 0) smaller.pop_back();
    for (StandardTableau t : standard_tableaux(smaller)) {
      t.shape = shape;
      if (static_cast<long>(t.rows.size()) < r) t.rows.emplace_back();
      t.rows[r - 1].push_back(k);
      out.push_back(std::move(t));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const StandardTableau& a, const StandardTableau& b) { return a.word() < b.word(); });
  return out;
}

// The critical rectangle ((n+1)^(m+1)) and its corner-removed companion.
inline Partition critical_rectangle(long m, long n) { return Partition(m + 1, n + 1); }

inline Partition critical_rectangle_minus(long m, long n) {
  Partition p(m, n + 1);
  if (n > 0) p.push_back(n);
  return p;
}

// Hook condition: the diagram fits in the fat (m, n) hook.
inline bool in_hook(const Partition& p, long m, long n) { return part(p, m + 1) <= n; }

// Classical dimension of the GL(m) module of shape lambda (Weyl dimension
// formula in hook-content form); zero when the diagram has more than m rows.
inline long classical_dimension(const Partition& p, long m) {
  if (static_cast<long>(p.size()) > m) return 0;
  long num = 1, den = 1;
  for (long r = 1; r <= static_cast<long>(p.size()); ++r)
    for (long c = 1; c <= p[r - 1]; ++c) {
      num *= m + c - r;
      den *= hook_length(p, r, c);
    }
  if (num % den != 0) throw std::logic_error("Weyl dimension: non-integer");
  return num / den;
}

// Dimension oracle for the (m|n) case: counts super semistandard tableaux.
// Alphabet 0..m-1 (even letters) then m..m+n-1 (odd letters), totally
// ordered.  Rows and columns weakly increase; even letters are strict down
// columns, odd letters strict along rows.
inline long super_dimension(const Partition& p, long m, long n) {
  long rows = static_cast<long>(p.size());
  std::vector<std::vector<long>> fill(rows);
  for (long r = 0; r < rows; ++r) fill[r].assign(p[r], -1);
  long count = 0;
  auto rec = [&](auto&& self, long r, long c) -> void {
    if (r == rows) {
      ++count;
      return;
    }
    long nr = r, nc = c + 1;
    if (nc >= p[r]) {
      nr = r + 1;
      nc = 0;
    }
    for (long v = 0; v < m + n; ++v) {
      bool odd = v >= m;
      if (c > 0) {
        long left = fill[r][c - 1];
        if (left > v || (left == v && odd)) continue;
      }
      if (r > 0 && part(p, r) >= c + 1 && static_cast<long>(fill[r - 1].size()) > c) {
        long up = fill[r - 1][c];
        if (up > v || (up == v && !odd)) continue;
      }
      fill[r][c] = v;
      self(self, nr, nc);
      fill[r][c] = -1;
    }
  };
  if (rows == 0) return 1;
  rec(rec, 0, 0);
  return count;
}

// Brute-force Littlewood-Richardson coefficient c^nu_{lambda,mu}: fillings of
// the skew shape nu/lambda with content mu, rows weakly and columns strictly
// increasing, whose reverse reading word is a lattice word.
inline long lr_coefficient(const Partition& nu, const Partition& lambda, const Partition& mu) {
  if (!contains(lambda, nu)) return 0;
  if (weight(nu) != weight(lambda) + weight(mu)) return 0;
  long rows = static_cast<long>(nu.size());
  std::vector<std::vector<long>> fill(rows);
  for (long r = 0; r < rows; ++r) fill[r].assign(nu[r], 0);  // 0 marks lambda boxes
  std::vector<long> remaining(mu.begin(), mu.end());
  // Skew boxes in row-major order.
  std::vector<std::pair<long, long>> boxes;
  for (long r = 0; r < rows; ++r)
    for (long c = part(lambda, r + 1); c < nu[r]; ++c) boxes.emplace_back(r, c);
  long count = 0;
  auto lattice_ok = [&]() {
    // Read right to left, top to bottom; prefix counts must be weakly
    // decreasing in the letter.
    std::vector<long> seen(mu.size() + 1, 0);
    for (long r = 0; r < rows; ++r)
      for (long c = nu[r] - 1; c >= part(lambda, r + 1); --c) {
        long v = fill[r][c];
        ++seen[v];
        if (v > 1 && seen[v] > seen[v - 1]) return false;
      }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == boxes.size()) {
      if (lattice_ok()) ++count;
      return;
    }
    auto [r, c] = boxes[idx];
    for (long v = 1; v <= static_cast<long>(mu.size()); ++v) {
      if (remaining[v - 1] == 0) continue;
      if (c > 0 && fill[r][c - 1] != 0 && fill[r][c - 1] > v) continue;
      if (r > 0 && c < part(nu, r) && fill[r - 1][c] >= v && fill[r - 1][c] != 0) continue;
      // Upper neighbour inside lambda counts as empty; strictness only
      // applies against filled boxes.
      fill[r][c] = v;
      --remaining[v - 1];
      self(self, idx + 1);
      ++remaining[v - 1];
      fill[r][c] = 0;
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace rtech
