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

#include "xalpha.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace potlab {

namespace {

void require_positive(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be at least 1");
}

UnitaryMatrix transform_matrix(std::size_t n, Transform transform) {
  return transform == Transform::kDft ? dft_matrix(n)
                                      : walsh_hadamard_matrix(n);
}

}  // namespace

ComplexMatrix build_generator(std::size_t n, Transform transform) {
  require_positive(n);
  const ComplexMatrix t = transform_matrix(n, transform);
  ComplexMatrix g(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      g(r, n + c) = t(r, c);
      g(n + r, c) = -std::conj(t(c, r));
    }
  }
  return g;
}

XAlphaFamily::XAlphaFamily(std::size_t n, Transform transform)
    : n_(n), transform_(transform), generator_(build_generator(n, transform)) {}

UnitaryMatrix XAlphaFamily::matrix(double alpha) const {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  const std::size_t dim = dimension();
  ComplexMatrix x(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t k = 0; k < dim; ++k) x(r, k) = s * generator_(r, k);
    x(r, r) += c;
  }
  return UnitaryMatrix(std::move(x), 1e-12 * dim);
}

UnitaryMatrix x_alpha(std::size_t n, double alpha, Transform transform) {
  return XAlphaFamily(n, transform).matrix(alpha);
}

double x_alpha_entropy_closed_form(std::size_t n, double alpha, double base) {
  require_positive(n);
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  const double c2 = c * c;
  const double s2 = s * s;
  // 2n diagonal entries of mass c^2 and 2n^2 off-diagonal entries of mass
  // s^2/n: 2n [h(c^2) + h(s^2) + s^2 log2 n].
  const double per_row = entropy_term(c2) + entropy_term(s2) +
                         s2 * std::log2(static_cast<double>(n));
  return 2.0 * static_cast<double>(n) * per_row / std::log2(base);
}

double improved_gap(std::size_t n, double alpha, double base) {
  if (!(alpha > 0.0) || alpha > std::numbers::pi / 2) {
    throw Error(ErrorCode::kPrecondition, "alpha must lie in (0, pi/2]");
  }
  const double quarter = std::numbers::pi / 4;
  return x_alpha_entropy_closed_form(n, quarter + alpha / 2, base) -
         x_alpha_entropy_closed_form(n, quarter - alpha / 2, base);
}

std::vector<Complex> reduce_dft_via_xalpha(std::span<const Complex> x,
                                           double alpha, Transform transform) {
  const double s = std::sin(alpha);
  if (std::abs(s) < kReductionGuard) {
    throw Error(ErrorCode::kIllConditioned,
                "|sin alpha| is below 1e-6");
  }
  const std::size_t n = x.size();
  require_positive(n);
  std::vector<Complex> padded(2 * n);
  std::copy(x.begin(), x.end(), padded.begin() + static_cast<long>(n));
  const std::vector<Complex> y =
      multiply(XAlphaFamily(n, transform).matrix(alpha), padded);
  std::vector<Complex> out(y.begin(), y.begin() + static_cast<long>(n));
  for (Complex &z : out) z /= s;
  return out;
}

}  // namespace potlab
