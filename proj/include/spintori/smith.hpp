/*
 * Copyright 2026 The spintori Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <spintori/matrix.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spintori {

/// D = P·A·Q with P, Q unimodular and D diagonal with d_1 | d_2 | ... >= 0.
struct SnfResult {
  IntMatrix d;
  IntMatrix p;
  IntMatrix q;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
  }
};

/// Invariant-factor decomposition Z_{d_1} × ... × Z_{d_k} × Z^free_rank with
/// every d_i >= 2 and d_i | d_{i+1}.
struct AbelianInvariants {
  std::vector<Integer> factors;
  int free_rank = 0;

  bool finite() const { return free_rank == 0; }

  Integer order() const {
    if (!finite()) throw std::domain_error("AbelianInvariants::order: group is infinite");
    Integer n = 1;
    for (const auto& f : factors) n *= f;
    return n;
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out += ", ";
      out += factors[i].str();
    }
    out += ")";
    if (free_rank > 0) out += " + Z^" + std::to_string(free_rank);
    return out;
  }

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

namespace detail {

inline bool divides(const Integer& a, const Integer& b) {
  if (a == 0) return b == 0;
  return b % a == 0;
}

// Row and column operations applied simultaneously to D and its witness.
struct SnfState {
  IntMatrix d, p, q;

  void swap_rows(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    p.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    q.swap_cols(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    d.add_row_multiple(dst, src, f);
    p.add_row_multiple(dst, src, f);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    d.add_col_multiple(dst, src, f);
    q.add_col_multiple(dst, src, f);
  }

  // Replaces diagonal entries (x, y) at positions i < j by (gcd, lcm·unit)
  // using a unimodular 2×2 pair.
  void merge_diagonal(std::size_t i, std::size_t j) {
    const Integer x = d(i, i), y = d(j, j);
    const Bezout bz = extended_gcd(x, y);
    const Integer xg = x / bz.g, yg = y / bz.g;
    combine_rows(p, i, j, bz.m, bz.n, -yg, xg);
    combine_rows(d, i, j, bz.m, bz.n, -yg, xg);
    combine_cols(q, i, j, 1, -bz.n * yg, 1, bz.m * xg);
    combine_cols(d, i, j, 1, -bz.n * yg, 1, bz.m * xg);
  }

  // [row_i; row_j] <- [[a, b], [c, e]] · [row_i; row_j]
  static void combine_rows(IntMatrix& m, std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                           const Integer& c, const Integer& e) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      Integer ri = m(i, k), rj = m(j, k);
      m(i, k) = a * ri + b * rj;
      m(j, k) = c * ri + e * rj;
    }
  }
  // [col_i, col_j] <- [col_i, col_j] · [[a, b], [c, e]]
  static void combine_cols(IntMatrix& m, std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                           const Integer& c, const Integer& e) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
      Integer ci = m(k, i), cj = m(k, j);
      m(k, i) = ci * a + cj * c;
      m(k, j) = ci * b + cj * e;
    }
  }
};

}  // namespace detail

/// Smith normal form with witnesses. Pivots on the entry of least nonzero
/// absolute value (row-major tie-break), diagonalizes, then repairs
/// divisibility pairwise with gcd/lcm steps. Deterministic.
inline SnfResult smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  detail::SnfState s{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  const std::size_t r = std::min(m, n);

  for (std::size_t k = 0; k < r; ++k) {
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      Integer best;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j) {
          const Integer& x = s.d(i, j);
          if (x == 0) continue;
          Integer ax = abs(x);
          if (!pivot || ax < best) {
            pivot = {i, j};
            best = std::move(ax);
          }
        }
      if (!pivot) break;
      s.swap_rows(k, pivot->first);
      s.swap_cols(k, pivot->second);

      bool clean = true;
      const Integer piv = s.d(k, k);
      for (std::size_t i = k + 1; i < m; ++i) {
        if (s.d(i, k) == 0) continue;
        s.add_row(i, k, -(s.d(i, k) / piv));
        if (s.d(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (s.d(k, j) == 0) continue;
        s.add_col(j, k, -(s.d(k, j) / piv));
        if (s.d(k, j) != 0) clean = false;
      }
      if (clean) break;
    }
  }

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (!detail::divides(s.d(i, i), s.d(j, j))) s.merge_diagonal(i, j);

  for (std::size_t i = 0; i < r; ++i) {
    if (s.d(i, i) < 0) {
      s.d.negate_row(i);
      s.p.negate_row(i);
    }
  }
  return {std::move(s.d), std::move(s.p), std::move(s.q)};
}

/// Invariants of the cokernel Z^cols / (Z^rows · A); units dropped.
inline AbelianInvariants invariant_factors(const IntMatrix& a) {
  const SnfResult snf = smith_normal_form(a);
  AbelianInvariants inv;
  int nonzero = 0;
  for (const auto& x : snf.diagonal()) {
    if (x == 0) continue;
    ++nonzero;
    if (x != 1) inv.factors.push_back(x);
  }
  inv.free_rank = static_cast<int>(a.cols()) - nonzero;
  return inv;
}

/// Fraction-free (Bareiss) determinant; independent of the SNF path.
inline Integer determinant(const IntMatrix& a) {
  if (!a.square()) throw std::invalid_argument("determinant: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && m(i, k) == 0) ++i;
      if (i == n) return 0;
      m.swap_rows(k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Shapes of 2×2 matrices with closed-form diagonalizing pairs.
enum class TwoByTwoForm {
  coprime_diagonal,  // diag(a, b), gcd(a, b) = 1        -> diag(1, ab)
  unit_corner,       // [[a, 1], [0, b]]                 -> diag(1, ab)
  divisible_corner,  // [[a, c], [0, b]], gcd(a, b) | c  -> diag(a, b)
  odd_corner,        // [[2a, c], [0, 2b]], gcd = 1, c odd -> diag(1, 4ab)
};

struct TwoByTwoWitness {
  IntMatrix source;  // A
  IntMatrix target;  // B
  IntMatrix p;
  IntMatrix q;
};

/// Explicit P, Q in GL_2(Z) with P·A·Q = B for the given form; m, n come from
/// the extended Euclidean algorithm. Throws std::invalid_argument naming the
/// violated precondition.
inline TwoByTwoWitness diagonalization_witnesses(TwoByTwoForm form, const Integer& a, const Integer& b,
                                                 const Integer& c = 0) {
  switch (form) {
    case TwoByTwoForm::coprime_diagonal: {
      const Bezout bz = extended_gcd(a, b);
      if (bz.g != 1) throw std::invalid_argument("coprime_diagonal: gcd(a, b) = 1 required");
      const Integer &m = bz.m, &n = bz.n;
      return {IntMatrix{{a, 0}, {0, b}}, IntMatrix{{1, 0}, {0, a * b}}, IntMatrix{{1, n}, {-b, a * m}},
              IntMatrix{{m, -b * n}, {1, a}}};
    }
    case TwoByTwoForm::unit_corner:
      return {IntMatrix{{a, 1}, {0, b}}, IntMatrix{{1, 0}, {0, a * b}}, IntMatrix{{1, 0}, {-b, 1}},
              IntMatrix{{0, -1}, {1, a}}};
    case TwoByTwoForm::divisible_corner: {
      const Integer g = gcd(a, b);
      IntMatrix source{{a, c}, {0, b}}, target{{a, 0}, {0, b}};
      if (g == 0) {
        if (c != 0) throw std::invalid_argument("divisible_corner: gcd(a, b) must divide c");
        return {source, target, IntMatrix::identity(2), IntMatrix::identity(2)};
      }
      if (c % g != 0) throw std::invalid_argument("divisible_corner: gcd(a, b) must divide c");
      const Integer x = a / g, y = b / g, z = c / g;
      const Bezout bz = extended_gcd(x, y);
      return {source, target, IntMatrix{{1, -bz.n * z}, {0, 1}}, IntMatrix{{1, -bz.m * z}, {0, 1}}};
    }
    case TwoByTwoForm::odd_corner: {
      const Bezout bz = extended_gcd(a, b);
      if (bz.g != 1) throw std::invalid_argument("odd_corner: gcd(a, b) = 1 required");
      if (c % 2 == 0) throw std::invalid_argument("odd_corner: c must be odd");
      const Integer &m = bz.m, &n = bz.n;
      const Integer h = (c - 1) / 2;
      return {IntMatrix{{2 * a, c}, {0, 2 * b}}, IntMatrix{{1, 0}, {0, 4 * a * b}},
              IntMatrix{{-1, n * h}, {-2 * b, 1 + n * b * (c - 1)}},
              IntMatrix{{m * h, -1 - m * a * (c - 1)}, {-1, 2 * a}}};
    }
  }
  throw std::invalid_argument("diagonalization_witnesses: unknown form");
}

}  // namespace spintori
