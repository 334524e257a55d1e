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

#include <spintori/integer.hpp>

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace spintori {

/// Dense row-major matrix over a ring T.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init)
      : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw std::invalid_argument("Matrix: ragged initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(const std::vector<T>& entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const T& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const T& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

  /// Copies `block` into this matrix with its top-left corner at (r, c).
  void set_block(std::size_t r, std::size_t c, const Matrix& block) {
    if (r + block.rows() > rows_ || c + block.cols() > cols_) {
      throw std::out_of_range("Matrix::set_block: block does not fit");
    }
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j) (*this)(r + i, c + j) = block(i, j);
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("Matrix product: inner dimensions differ");
    }
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::invalid_argument("Matrix: shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;

/// Block-diagonal direct sum of square or rectangular blocks.
template <class T>
Matrix<T> direct_sum(const std::vector<Matrix<T>>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix<T> m(rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

/// Thrown when a value expected to be integral carries a half.
class IntegralityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exact matrix with entries in (1/2)Z, stored as integer numerators over 2.
class HalfIntMatrix {
 public:
  explicit HalfIntMatrix(IntMatrix numerators) : num_(std::move(numerators)) {}

  static HalfIntMatrix from_integral(const IntMatrix& m) { return HalfIntMatrix(m * Integer(2)); }

  const IntMatrix& numerators() const { return num_; }
  std::size_t rows() const { return num_.rows(); }
  std::size_t cols() const { return num_.cols(); }

  bool integral() const {
    for (const auto& x : num_.data())
      if (x % 2 != 0) return false;
    return true;
  }

  /// Throws IntegralityError if any entry is not an integer.
  IntMatrix to_integral() const {
    IntMatrix out(rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) {
        const Integer& x = num_(i, j);
        if (x % 2 != 0) {
          throw IntegralityError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") = " + x.str() + "/2 is not an integer");
        }
        out(i, j) = x / 2;
      }
    return out;
  }

  friend HalfIntMatrix operator*(const IntMatrix& a, const HalfIntMatrix& b) {
    return HalfIntMatrix(a * b.num_);
  }
  friend HalfIntMatrix operator*(const HalfIntMatrix& a, const IntMatrix& b) {
    return HalfIntMatrix(a.num_ * b);
  }
  friend HalfIntMatrix operator-(const HalfIntMatrix& a, const IntMatrix& b) {
    return HalfIntMatrix(a.num_ - b * Integer(2));
  }
  friend HalfIntMatrix operator+(const HalfIntMatrix& a, const IntMatrix& b) {
    return HalfIntMatrix(a.num_ + b * Integer(2));
  }
  friend bool operator==(const HalfIntMatrix&, const HalfIntMatrix&) = default;

 private:
  IntMatrix num_;
};

// Matrix text format: "rows cols" on the first line, then one line per row of
// space-separated decimal integers. LF line endings.

inline void write_matrix(std::ostream& os, const IntMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
}

inline std::string format_matrix(const IntMatrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

/// Reads the text format; throws std::invalid_argument on malformed input.
inline IntMatrix read_matrix(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("matrix: missing header line");
  std::istringstream header(line);
  long long rows = -1, cols = -1;
  std::string extra;
  if (!(header >> rows >> cols) || (header >> extra) || rows < 1 || cols < 1) {
    throw std::invalid_argument("matrix: header must be 'rows cols' with positive sizes");
  }
  IntMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!std::getline(is, line)) {
      throw std::invalid_argument("matrix: expected " + std::to_string(rows) + " rows, got " +
                                  std::to_string(i));
    }
    std::istringstream row(line);
    std::string token;
    std::size_t j = 0;
    while (row >> token) {
      if (j == m.cols()) {
        throw std::invalid_argument("matrix: row " + std::to_string(i + 1) + " has too many entries");
      }
      m(i, j++) = parse_integer(token);
    }
    if (j != m.cols()) {
      throw std::invalid_argument("matrix: row " + std::to_string(i + 1) + " has " +
                                  std::to_string(j) + " entries, expected " + std::to_string(cols));
    }
  }
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw std::invalid_argument("matrix: trailing data after last row");
    }
  }
  return m;
}

inline IntMatrix parse_matrix(const std::string& text) {
  std::istringstream is(text);
  return read_matrix(is);
}

}  // namespace spintori
