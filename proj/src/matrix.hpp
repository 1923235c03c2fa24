// Copyright 2026 The potlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace potlab {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Operations return new values; nothing here
// mutates an argument.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  Complex &operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }

  std::span<const Complex> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<Complex> row(std::size_t r) {
    return {entries_.data() + r * cols_, cols_};
  }

  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix adjoint() const;

  friend bool operator==(const ComplexMatrix &,
                         const ComplexMatrix &) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex s, const ComplexMatrix &m);

std::vector<Complex> multiply(const ComplexMatrix &m,
                              std::span<const Complex> x);

/// Default unitarity tolerance for an n x n matrix.
inline double default_unitarity_tol(std::size_t n) { return 1e-10 * n; }

/// max |(M M^* - Id)(r,c)|. Throws kDimensionMismatch for non-square input.
double unitarity_defect(const ComplexMatrix &m);

/// True iff m is square and its unitarity defect is at most tol.
bool is_unitary(const ComplexMatrix &m, double tol);

/// Entrywise Frobenius norm of a - b.
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);

/// Largest entrywise |a - b|.
double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b);

// A ComplexMatrix that passed the unitarity check when it was built.
class UnitaryMatrix {
 public:
  /// Throws kPrecondition unless is_unitary(m, tol).
  explicit UnitaryMatrix(ComplexMatrix m);
  UnitaryMatrix(ComplexMatrix m, double tol);

  static UnitaryMatrix identity(std::size_t n);

  const ComplexMatrix &matrix() const noexcept { return m_; }
  operator const ComplexMatrix &() const noexcept { return m_; }
  std::size_t dimension() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// Normalized DFT: entry (k,l) = n^{-1/2} exp(-2 pi i k l / n), 0-based.
UnitaryMatrix dft_matrix(std::size_t n);

/// Walsh-Hadamard: entry (k,l) = n^{-1/2} (-1)^{popcount(k & l)}; n must be a
/// power of two.
UnitaryMatrix walsh_hadamard_matrix(std::size_t n);

/// Haar-distributed unitary (Gaussian matrix + Gram-Schmidt), deterministic
/// in the seed.
UnitaryMatrix random_unitary(std::size_t n, std::uint64_t seed);

bool is_power_of_two(std::size_t n) noexcept;

/// {"rows":r,"cols":c,"entries":[[re,im],...]} with 17 significant digits.
std::string to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const std::string &text);

}  // namespace potlab
