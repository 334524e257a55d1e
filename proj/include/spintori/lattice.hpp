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

// Integer matrices on the character lattice of a simply connected group of
// type D_l, written in the basis of fundamental weights.

#include <spintori/matrix.hpp>
#include <spintori/signed_weyl.hpp>

#include <stdexcept>
#include <vector>

namespace spintori {

/// Raised by the reduction pipeline for single-part types, whose reduced
/// form has no diagonal block.
class PipelineDegenerate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rows are the simple roots in the orthonormal basis: α_i = ν_i - ν_{i+1}
/// for i < l, α_l = ν_{l-1} + ν_l. Determinant 2.
inline IntMatrix transition_matrix(int l) {
  if (l < 2) throw std::invalid_argument("transition_matrix: l must be at least 2");
  IntMatrix s(l, l);
  for (int i = 0; i + 1 < l; ++i) {
    s(i, i) = 1;
    s(i, i + 1) = -1;
  }
  s(l - 1, l - 2) = 1;
  s(l - 1, l - 1) = 1;
  return s;
}

/// Exact inverse of transition_matrix(l). Row i < l-1 of 2·S⁻¹ is
/// (0..0, 2..2, 1, 1) with the 2s in columns i..l-3; row l-2 is (0..0, 1, 1)
/// and row l-1 is (0..0, -1, 1).
inline HalfIntMatrix inverse_transition_matrix(int l) {
  if (l < 2) throw std::invalid_argument("inverse_transition_matrix: l must be at least 2");
  IntMatrix twice(l, l);
  for (int i = 0; i + 1 < l; ++i) {
    for (int j = i; j + 2 < l; ++j) twice(i, j) = 2;
    twice(i, l - 2) = 1;
    twice(i, l - 1) = 1;
  }
  twice(l - 1, l - 2) = -1;
  twice(l - 1, l - 1) = 1;
  return HalfIntMatrix(std::move(twice));
}

/// Matrix of the twisted Frobenius map: q on the diagonal except that the
/// last two coordinates are swapped.
inline IntMatrix twist_matrix(int l, const Integer& q) {
  if (l < 2) throw std::invalid_argument("twist_matrix: l must be at least 2");
  IntMatrix m(l, l);
  for (int i = 0; i + 2 < l; ++i) m(i, i) = q;
  m(l - 2, l - 1) = q;
  m(l - 1, l - 2) = q;
  return m;
}

/// q·S·W·S⁻¹ - E for an arbitrary monomial matrix W in the orthonormal basis.
/// Throws IntegralityError if the half-denominators fail to cancel.
inline IntMatrix torus_matrix_for(const IntMatrix& w, const Integer& q) {
  const int l = static_cast<int>(w.rows());
  const IntMatrix s = transition_matrix(l);
  const HalfIntMatrix conj = (q * (s * w)) * inverse_transition_matrix(l);
  return (conj - IntMatrix::identity(l)).to_integral();
}

/// The matrix of σw⁻¹ - 1 on the character lattice for the torus class t;
/// its cokernel is the finite torus.
inline IntMatrix torus_matrix(const SignedCycleType& t, const Integer& q) {
  if (q < 2) throw std::invalid_argument("torus_matrix: q must be at least 2");
  return torus_matrix_for(permutation_matrix(standard_representative(t)), q);
}

// Building blocks of the reduction pipeline.

/// R_{εk}: ones on the superdiagonal, ε in the bottom-left corner.
inline IntMatrix cycle_matrix(int eps, int k) {
  IntMatrix r(k, k);
  for (int i = 0; i + 1 < k; ++i) r(i, i + 1) = 1;
  r(k - 1, 0) = eps;
  return r;
}

/// J: ones in the last column.
inline IntMatrix last_column_ones(int l) {
  IntMatrix j(l, l);
  for (int i = 0; i < l; ++i) j(i, l - 1) = 1;
  return j;
}

/// P_{εk}: row i < k-1 holds 1, q, q², ... from column i up to column k-2;
/// the last row is (q, q², ..., q^{k-1}, ε).
inline IntMatrix cycle_reduction_matrix(int eps, int k, const Integer& q) {
  IntMatrix p(k, k);
  for (int i = 0; i + 1 < k; ++i) {
    Integer power = 1;
    for (int j = i; j + 1 < k; ++j) {
      p(i, j) = power;
      power *= q;
    }
  }
  Integer power = q;
  for (int j = 0; j + 1 < k; ++j) {
    p(k - 1, j) = power;
    power *= q;
  }
  p(k - 1, k - 1) = eps;
  return p;
}

/// The l_i × l_last coupling block B_i contributed by the last cycle.
inline IntMatrix coupling_block(int eps_i, int len_i, int eps_last, int len_last) {
  IntMatrix b(len_i, len_last);
  const int last_row = -(eps_i + eps_last) / 2;
  if (len_i == 1 && len_last == 1) {
    b(0, 0) = -(eps_i - eps_last) / 2;
  } else if (len_last == 1) {
    for (int r = 0; r + 1 < len_i; ++r) b(r, 0) = -(1 - eps_last) / 2;
    b(len_i - 1, 0) = -(eps_i - eps_last) / 2;
  } else if (len_i == 1) {
    b(0, 0) = eps_last;
    b(0, len_last - 1) = last_row;
  } else {
    for (int r = 0; r < len_i; ++r) {
      b(r, 0) = eps_last;
      b(r, len_last - 1) = -(1 + eps_last) / 2;
    }
    b(len_i - 1, len_last - 1) = last_row;
  }
  return b;
}

/// B: zero except for the last block-column, which stacks B_1, ..., B_{r+s}.
inline IntMatrix coupling_matrix(const SignedCycleType& t) {
  const auto& parts = t.parts();
  const auto& last = parts.back();
  const int l = t.l();
  IntMatrix b(l, l);
  int row = 0;
  for (const auto& part : parts) {
    b.set_block(row, l - last.length, coupling_block(part.epsilon(), part.length, last.epsilon(), last.length));
    row += part.length;
  }
  return b;
}

/// Block sum of R_{ε_i l_i} over the parts of t (split label ignored).
inline IntMatrix block_cycle_matrix(const SignedCycleType& t) {
  std::vector<IntMatrix> blocks;
  for (const auto& part : t.parts()) blocks.push_back(cycle_matrix(part.epsilon(), part.length));
  return direct_sum(blocks);
}

/// Checks q(E+J)R(E-J/2) - E == qR - E + qB exactly, with R the block sum of
/// cycle matrices. (E+J)⁻¹ = E - J/2, and E+J is row-equivalent to S, so the
/// left side is equivalent to the torus matrix.
inline bool coupling_identity_holds(const SignedCycleType& t, const Integer& q) {
  const int l = t.l();
  const IntMatrix e = IntMatrix::identity(l);
  const IntMatrix j = last_column_ones(l);
  const IntMatrix r = block_cycle_matrix(t);
  const HalfIntMatrix e_minus_half_j(e * Integer(2) - j);
  const HalfIntMatrix lhs = (q * ((e + j) * r)) * e_minus_half_j - e;
  const IntMatrix rhs = q * r - e + q * coupling_matrix(t);
  return lhs == HalfIntMatrix::from_integral(rhs);
}

namespace detail {

/// q^from + ... + q^to (zero when from > to).
inline Integer power_sum(const Integer& q, int from, int to) {
  Integer sum = 0;
  for (int j = from; j <= to; ++j) sum += pow(q, static_cast<unsigned>(j));
  return sum;
}

}  // namespace detail

/// The reduced matrix left after multiplying the coupling form on the left
/// by diag(P_{ε_1 l_1}, ..., P'_{ε_{-1} l_{-1}}) and clearing the unit
/// pivots: D = diag(q^{l_i} - ε_i) over all but the last part, bordered by
/// the columns (a_i, b_i) and the 2×2 corner [[a, b], [2q, -q-ε_{-1}]];
/// when the last part has length 1 the border collapses to a_i + b_i over
/// q - ε_{-1}. Its invariant factors equal those of torus_matrix(t, q).
///
/// The corner entry b is -(1+ε_{-1})(q+...+q^{l_{-1}-1})/2 + q^{l_{-1}-1}.
inline IntMatrix pipeline_reduced_matrix(const SignedCycleType& t, const Integer& q) {
  const auto& parts = t.parts();
  if (parts.size() < 2) {
    throw PipelineDegenerate("pipeline-degenerate: type " + t.to_string() + " has a single part");
  }
  const auto& last = parts.back();
  const int e_last = last.epsilon();
  const int len_last = last.length;
  const std::size_t n = parts.size() - 1;  // size of D

  std::vector<Integer> a_col(n), b_col(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int e_i = parts[i].epsilon();
    const Integer tail = detail::power_sum(q, 2, parts[i].length);
    a_col[i] = e_last * (e_i * q + tail);
    b_col[i] = -((1 + e_last * e_i) * q + (1 + e_last) * tail) / 2;
  }

  if (len_last == 1) {
    IntMatrix m(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = pow(q, static_cast<unsigned>(parts[i].length)) - parts[i].epsilon();
      m(i, n) = a_col[i] + b_col[i];
    }
    m(n, n) = q - e_last;
    return m;
  }

  const Integer inner = detail::power_sum(q, 1, len_last - 1);
  const Integer a = -1 + e_last * inner;
  const Integer b = -((1 + e_last) * inner) / 2 + pow(q, static_cast<unsigned>(len_last - 1));
  IntMatrix m(n + 2, n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = pow(q, static_cast<unsigned>(parts[i].length)) - parts[i].epsilon();
    m(i, n) = a_col[i];
    m(i, n + 1) = b_col[i];
  }
  m(n, n) = a;
  m(n, n + 1) = b;
  m(n + 1, n) = 2 * q;
  m(n + 1, n + 1) = -q - e_last;
  return m;
}

}  // namespace spintori
