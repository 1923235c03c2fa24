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
#include <cstdint>
#include <span>
#include <vector>

#include "circuit.hpp"
#include "entropy.hpp"
#include "matrix.hpp"

namespace potlab {

inline constexpr std::size_t kDefaultCompoundCap = 5000;

/// C(n, k); saturates at UINT64_MAX instead of overflowing.
std::uint64_t binomial(std::size_t n, std::size_t k) noexcept;

// Lexicographic rank/unrank of k-subsets of {0..n-1}, 0 < k <= n.
class SubsetIndex {
 public:
  SubsetIndex(std::size_t n, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::uint64_t count() const noexcept { return count_; }

  /// Throws kPrecondition for wrong size, unsorted/duplicate or out-of-range
  /// elements.
  std::uint64_t rank(std::span<const std::size_t> subset) const;
  /// Throws kPrecondition if r >= count().
  std::vector<std::size_t> unrank(std::uint64_t r) const;

 private:
  std::uint64_t choose(std::size_t n, std::size_t k) const noexcept;

  std::size_t n_;
  std::size_t k_;
  std::uint64_t count_;
  std::vector<std::uint64_t> table_;  // (n+1) x (k+1) binomials
};

/// Determinant by Gaussian elimination with partial pivoting.
Complex determinant(const ComplexMatrix &m);

// The order-k compound (all k x k minors) of an n x n matrix, rows and
// columns in lexicographic subset order.
struct CompoundMatrix {
  std::size_t n = 0;
  std::size_t k = 0;
  ComplexMatrix matrix;
};

/// Throws kPrecondition for k outside [1, n] and kResourceLimit when
/// C(n, k) exceeds cap.
CompoundMatrix compound_matrix(const ComplexMatrix &u, std::size_t k,
                               std::size_t cap = kDefaultCompoundCap);

/// max(|Psi(UV) - Psi(U) Psi(V)|_F, unitarity defect of Psi(U)).
double verify_representation(const ComplexMatrix &u, const ComplexMatrix &v,
                             std::size_t k,
                             std::size_t cap = kDefaultCompoundCap);

/// Phi of the order-k compound.
double lifted_potential(const ComplexMatrix &u, std::size_t k,
                        std::size_t cap = kDefaultCompoundCap,
                        double base = kDefaultLogBase);

// Psi_k of a planar rotation on rows (i, j). Subsets holding neither row are
// fixed, subsets holding both are scaled by det(block), and each pair
// (I + {i}, I + {j}) is mixed by [[a11, s a12], [s a21, a22]] where s is the
// parity of |I| strictly between i and j. There are C(n-2, k-1) such pairs.
struct CompoundRotationStructure {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::uint64_t> identity_ranks;
  std::vector<std::uint64_t> scalar_ranks;
  Complex scalar;
  std::vector<PlanarRotation> mixing;  // indices are compound ranks
};

CompoundRotationStructure compound_rotation_structure(
    const PlanarRotation &r, std::size_t n, std::size_t k,
    std::size_t cap = kDefaultCompoundCap);

/// Dense form of the structure; matches compound_matrix(expand_rotation(r)).
ComplexMatrix to_dense(const CompoundRotationStructure &s);

/// 2 C(n-2, k-1): the most one step can move the lifted potential.
double structural_cap(std::size_t n, std::size_t k);

struct LiftedRun {
  PotentialTrace trace;
  ComplexMatrix final_state;  // Psi_k of the circuit's product
};

/// Lifted potential along the circuit from Id, evolving the compound state
/// through the sparse rotation structure.
LiftedRun run_lifted(const Circuit &c, std::size_t k,
                     std::size_t cap = kDefaultCompoundCap,
                     double base = kDefaultLogBase);

PotentialTrace lifted_trace(const Circuit &c, std::size_t k,
                            std::size_t cap = kDefaultCompoundCap,
                            double base = kDefaultLogBase);

struct LiftedSummary {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t steps = 0;
  std::uint64_t compound_dim = 0;
  double phi_lifted_end = 0.0;
  double max_step_delta = 0.0;
  double structural_cap = 0.0;
  double implied_bound = 0.0;             // phi_lifted_end / max_step_delta
  double implied_bound_structural = 0.0;  // phi_lifted_end / structural_cap
};

LiftedSummary summarize_lifted(const PotentialTrace &trace);

}  // namespace potlab
