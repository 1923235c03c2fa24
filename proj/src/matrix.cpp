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

#include "matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "error.hpp"
#include "format.hpp"

namespace potlab {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "entry count " + std::to_string(entries_.size()) +
                    " does not match shape " + std::to_string(rows) + "x" +
                    std::to_string(cols));
  }
  for (const Complex &z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::kPrecondition, "matrix entries must be finite");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      out(c, r) = std::conj((*this)(r, c));
  return out;
}

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "shape mismatch: " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " +
                    std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot multiply " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " by " +
                    std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row(r);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex s = a(r, k);
      if (s == Complex{}) continue;
      auto src = b.row(k);
      for (std::size_t c = 0; c < b.cols(); ++c) dst[c] += s * src[c];
    }
  }
  return out;
}

ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_same_shape(a, b);
  std::vector<Complex> e(a.entries().begin(), a.entries().end());
  auto other = b.entries();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other[i];
  return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_same_shape(a, b);
  std::vector<Complex> e(a.entries().begin(), a.entries().end());
  auto other = b.entries();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other[i];
  return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix &m) {
  std::vector<Complex> e(m.entries().begin(), m.entries().end());
  for (Complex &z : e) z *= s;
  return ComplexMatrix(m.rows(), m.cols(), std::move(e));
}

std::vector<Complex> multiply(const ComplexMatrix &m,
                              std::span<const Complex> x) {
  if (x.size() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector length " + std::to_string(x.size()) +
                    " does not match " + std::to_string(m.cols()) +
                    " columns");
  }
  std::vector<Complex> y(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    Complex acc{};
    for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
  return y;
}

double unitarity_defect(const ComplexMatrix &m) {
  if (!m.is_square()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "unitarity defect needs a square matrix");
  }
  const std::size_t n = m.rows();
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    auto a = m.row(r);
    for (std::size_t s = r; s < n; ++s) {
      auto b = m.row(s);
      Complex dot{};
      for (std::size_t c = 0; c < n; ++c) dot += a[c] * std::conj(b[c]);
      if (r == s) dot -= 1.0;
      worst = std::max(worst, std::abs(dot));
    }
  }
  return worst;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
  if (!m.is_square()) return false;
  return unitarity_defect(m) <= tol;
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_same_shape(a, b);
  auto x = a.entries();
  auto y = b.entries();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::norm(x[i] - y[i]);
  return std::sqrt(sum);
}

double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_same_shape(a, b);
  auto x = a.entries();
  auto y = b.entries();
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!is_unitary(m_, default_unitarity_tol(m_.rows()))) {
    throw Error(ErrorCode::kPrecondition, "matrix is not unitary");
  }
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (!is_unitary(m_, tol)) {
    throw Error(ErrorCode::kPrecondition, "matrix is not unitary");
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t n) {
  return UnitaryMatrix(ComplexMatrix::identity(n), 0.0);
}

bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

namespace {

// exp(-2 pi i m / n) for 0 <= m < n, exact at quarter turns.
Complex root_of_unity(std::size_t m, std::size_t n) {
  if ((4 * m) % n == 0) {
    switch ((4 * m) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, -1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, 1.0};
    }
  }
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(m) /
                       static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

UnitaryMatrix dft_matrix(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidDimension, "n must be at least 1");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      m(k, l) = scale * root_of_unity((k * l) % n, n);
  return UnitaryMatrix(std::move(m), 1e-12 * n);
}

UnitaryMatrix walsh_hadamard_matrix(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw Error(ErrorCode::kInvalidDimension, "n must be a power of two");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      m(k, l) = (std::popcount(k & l) & 1) ? -scale : scale;
  return UnitaryMatrix(std::move(m), 1e-12 * n);
}

UnitaryMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidDimension, "n must be at least 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // Columns of a complex Gaussian matrix, orthonormalised; R's diagonal is
  // positive by construction so the result is Haar distributed.
  std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
  for (auto &col : cols)
    for (auto &z : col) z = {gauss(rng), gauss(rng)};
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < j; ++p) {
        Complex dot{};
        for (std::size_t r = 0; r < n; ++r)
          dot += std::conj(cols[p][r]) * cols[j][r];
        for (std::size_t r = 0; r < n; ++r) cols[j][r] -= dot * cols[p][r];
      }
    }
    double norm = 0.0;
    for (const Complex &z : cols[j]) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (Complex &z : cols[j]) z /= norm;
  }
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = cols[c][r];
  return UnitaryMatrix(std::move(m));
}

std::string to_json(const ComplexMatrix &m) {
  std::string out = "{\"rows\":" + std::to_string(m.rows()) +
                    ",\"cols\":" + std::to_string(m.cols()) +
                    ",\"entries\":[";
  bool first = true;
  for (const Complex &z : m.entries()) {
    if (!first) out += ',';
    first = false;
    out += '[' + format_double(z.real()) + ',' + format_double(z.imag()) + ']';
  }
  out += "]}";
  return out;
}

ComplexMatrix matrix_from_json(const std::string &text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    const auto rows = doc.at("rows").get<std::size_t>();
    const auto cols = doc.at("cols").get<std::size_t>();
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto &pair : doc.at("entries")) {
      if (pair.size() != 2) {
        throw Error(ErrorCode::kParse, "entry must be [re, im]");
      }
      entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return ComplexMatrix(rows, cols, std::move(entries));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParse, std::string("bad matrix JSON: ") + e.what());
  }
}

}  // namespace potlab
