// Test-side oracles. Dense Gaussian elimination over mpq_class or Z/p with
// no use of the library's echelon code, and closed-form counts.
#ifndef GMMP_TESTS_ORACLES_HPP
#define GMMP_TESTS_ORACLES_HPP

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gmmp/matrix.hpp"
#include "gmmp/word.hpp"

namespace oracle {

/// Dense matrix over Q (p == 0) or Z/p; entries of GF(p) kept in [0, p).
struct Dense {
  std::uint64_t p = 0;
  std::vector<std::vector<mpq_class>> a;

  std::size_t rows() const { return a.size(); }
  std::size_t cols() const { return a.empty() ? 0 : a[0].size(); }

  mpq_class norm(mpq_class x) const {
    if (p == 0) return x;
    mpz_class num = x.get_num(), den = x.get_den(), P(p), inv;
    num %= P;
    if (num < 0) num += P;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    mpz_class r = (num * inv) % P;
    return mpq_class(r);
  }
  mpq_class inverse(const mpq_class& x) const {
    if (p == 0) return 1 / x;
    mpz_class inv, v = x.get_num();
    mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), mpz_class(p).get_mpz_t());
    return mpq_class(inv);
  }
};

inline Dense to_dense(const gmmp::Matrix& m) {
  Dense d;
  d.p = m.field().characteristic;
  d.a.assign(m.rows(), std::vector<mpq_class>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      gmmp::Scalar s = m.get(r, c);
      d.a[r][c] = d.p ? mpq_class(static_cast<unsigned long>(s.residue())) : s.rational();
    }
  return d;
}

/// In-place row echelon form (textbook elimination, leftmost pivots).
/// Returns the pivot columns.
inline std::vector<std::size_t> eliminate(Dense& d) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < d.cols() && row < d.rows(); ++c) {
    std::size_t piv = row;
    while (piv < d.rows() && d.norm(d.a[piv][c]) == 0) ++piv;
    if (piv == d.rows()) continue;
    std::swap(d.a[row], d.a[piv]);
    mpq_class inv = d.inverse(d.norm(d.a[row][c]));
    for (auto& x : d.a[row]) x = d.norm(x * inv);
    for (std::size_t r = 0; r < d.rows(); ++r) {
      if (r == row) continue;
      mpq_class f = d.norm(d.a[r][c]);
      if (f == 0) continue;
      for (std::size_t k = 0; k < d.cols(); ++k) d.a[r][k] = d.norm(d.a[r][k] - f * d.a[row][k]);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Dense d) { return eliminate(d).size(); }
inline std::size_t rank(const gmmp::Matrix& m) { return rank(to_dense(m)); }

inline Dense multiply(const Dense& x, const Dense& y) {
  Dense z;
  z.p = x.p;
  z.a.assign(x.rows(), std::vector<mpq_class>(y.cols(), 0));
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k)
      if (x.a[i][k] != 0)
        for (std::size_t j = 0; j < y.cols(); ++j) z.a[i][j] = z.norm(z.a[i][j] + x.a[i][k] * y.a[k][j]);
  return z;
}

inline bool is_zero(const Dense& d) {
  for (const auto& r : d.a)
    for (const auto& x : r)
      if (d.norm(x) != 0) return false;
  return true;
}

/// Cumulative dims of the free algebra on n letters: sum_{i<=N} n^i.
inline std::vector<std::size_t> free_dims(std::size_t n, std::size_t bound) {
  std::vector<std::size_t> out;
  std::size_t total = 0, layer = 1;
  for (std::size_t i = 0; i <= bound; ++i, layer *= n) out.push_back(total += layer);
  return out;
}

/// Cumulative dims of k[x, y]: sum_{i<=N} (i + 1).
inline std::vector<std::size_t> commutative_dims(std::size_t bound) {
  std::vector<std::size_t> out;
  std::size_t total = 0;
  for (std::size_t i = 0; i <= bound; ++i) out.push_back(total += i + 1);
  return out;
}

/// Noncommutative polynomials over letters 0..n-1 as maps from letter
/// strings to rationals; brute-force degree slices of the two-sided ideal.
using Poly = std::map<std::vector<int>, mpq_class>;

inline void all_words(std::size_t n, std::size_t len, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (std::size_t l = 0; l < n; ++l) {
    cur.push_back(static_cast<int>(l));
    all_words(n, len, cur, out);
    cur.pop_back();
  }
}

/// dim of k<x_1..x_n>/(F + m^{N+1}) for N = 0..bound, by spanning
/// w1 * f * w2 over all words and taking dense ranks of the whole space.
/// Words are composable when `composable` accepts them (quivers).
inline std::vector<std::size_t> quotient_dims(
    std::size_t n, const std::vector<Poly>& F, std::size_t bound, std::uint64_t p,
    std::size_t units = 1,
    const std::function<bool(const std::vector<int>&)>& composable = nullptr) {
  std::vector<std::size_t> out;
  for (std::size_t N = 0; N <= bound; ++N) {
    std::vector<std::vector<int>> words;
    for (std::size_t d = 1; d <= N; ++d) {
      std::vector<std::vector<int>> layer;
      std::vector<int> cur;
      all_words(n, d, cur, layer);
      for (auto& w : layer)
        if (!composable || composable(w)) words.push_back(w);
    }
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
    Dense d;
    d.p = p;
    std::vector<std::vector<int>> ctx{{}};
    for (std::size_t k = 1; k <= N; ++k) {
      std::vector<int> cur;
      all_words(n, k, cur, ctx);
    }
    for (const auto& f : F)
      for (const auto& a : ctx)
        for (const auto& b : ctx) {
          std::vector<mpq_class> row(words.size(), 0);
          bool any = false;
          for (const auto& [w, c] : f) {
            std::vector<int> full = a;
            full.insert(full.end(), w.begin(), w.end());
            full.insert(full.end(), b.begin(), b.end());
            auto it = index.find(full);
            if (it == index.end()) continue;
            row[it->second] += c;
            any = true;
          }
          if (any) d.a.push_back(std::move(row));
        }
    std::size_t r = d.a.empty() ? 0 : rank(d);
    out.push_back(units + words.size() - r);
  }
  return out;
}

}  // namespace oracle

#endif
