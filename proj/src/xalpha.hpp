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

#include <cstddef>
#include <span>
#include <vector>

#include "entropy.hpp"
#include "matrix.hpp"

namespace potlab {

enum class Transform { kDft, kWalshHadamard };

/// G = [[0, T], [-T^*, 0]] with T the n x n transform; skew-Hermitian with
/// G G^* = Id.
ComplexMatrix build_generator(std::size_t n,
                              Transform transform = Transform::kDft);

// X_alpha = cos(alpha) Id + sin(alpha) G over a cached generator. The family
// is immutable once built.
class XAlphaFamily {
 public:
  explicit XAlphaFamily(std::size_t n, Transform transform = Transform::kDft);

  std::size_t n() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return 2 * n_; }
  Transform transform() const noexcept { return transform_; }
  const ComplexMatrix &generator() const noexcept { return generator_; }

  UnitaryMatrix matrix(double alpha) const;

 private:
  std::size_t n_;
  Transform transform_;
  ComplexMatrix generator_;
};

UnitaryMatrix x_alpha(std::size_t n, double alpha,
                      Transform transform = Transform::kDft);

/// Exact Phi(X_alpha): 2n c^2 log(1/c^2) + 2n s^2 log(n/s^2), c = cos alpha,
/// s = sin alpha. Holds for either transform since both have flat
/// magnitudes 1/sqrt(n).
double x_alpha_entropy_closed_form(std::size_t n, double alpha,
                                   double base = kDefaultLogBase);

/// Phi(X_{pi/4 + alpha/2}) - Phi(X_{pi/4 - alpha/2}) for 0 < alpha <= pi/2.
/// Half of it bounds the steps needed to apply X_alpha from the start state
/// X_{pi/4 - alpha/2}.
double improved_gap(std::size_t n, double alpha,
                    double base = kDefaultLogBase);

/// Recovers T x from X_alpha applied to (0_n, x): the top half of the
/// product is sin(alpha) T x. Throws kIllConditioned if |sin alpha| < 1e-6.
std::vector<Complex> reduce_dft_via_xalpha(
    std::span<const Complex> x, double alpha,
    Transform transform = Transform::kDft);

inline constexpr double kReductionGuard = 1e-6;

}  // namespace potlab
