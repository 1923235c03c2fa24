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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace potlab {

// One model step: identity except a 2x2 unitary block acting on rows i and j.
// block = {a11, a12, a21, a22}; new row i = a11 row_i + a12 row_j and
// new row j = a21 row_i + a22 row_j.
class PlanarRotation {
 public:
  using Block = std::array<Complex, 4>;

  /// Throws kInvalidStep if i == j or the block is not unitary within 1e-12.
  PlanarRotation(std::size_t i, std::size_t j, const Block &block);

  static PlanarRotation swap(std::size_t i, std::size_t j);
  static PlanarRotation hadamard(std::size_t i, std::size_t j);
  /// (1/sqrt2) [[1, w], [1, -w]] with |w| = 1.
  static PlanarRotation butterfly(std::size_t i, std::size_t j, Complex w);

  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }
  const Block &block() const noexcept { return block_; }

  Complex determinant() const noexcept {
    return block_[0] * block_[3] - block_[1] * block_[2];
  }
  PlanarRotation inverse() const;

  friend bool operator==(const PlanarRotation &,
                         const PlanarRotation &) = default;

 private:
  std::size_t i_;
  std::size_t j_;
  Block block_;
};

enum class StepKind { kSwap, kButterfly, kOther };

/// Classifies by block shape: the exact swap block, a normalized butterfly,
/// or anything else.
StepKind classify(const PlanarRotation &r);
const char *to_string(StepKind kind);

class Circuit {
 public:
  explicit Circuit(std::size_t dimension) : dimension_(dimension) {}
  /// Throws kInvalidStep if any step index is >= dimension.
  Circuit(std::size_t dimension, std::vector<PlanarRotation> steps);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }
  const std::vector<PlanarRotation> &steps() const noexcept { return steps_; }
  const PlanarRotation &operator[](std::size_t t) const { return steps_[t]; }

  friend bool operator==(const Circuit &, const Circuit &) = default;

 private:
  std::size_t dimension_;
  std::vector<PlanarRotation> steps_;
};

// States M_0 = start, M_t = R_t M_{t-1}.
struct StateTrace {
  std::vector<ComplexMatrix> states;
};

/// R * m where R is the rotation expanded to rows(m). O(cols) work.
ComplexMatrix apply_rotation(const ComplexMatrix &m, const PlanarRotation &r);

/// In-place form of apply_rotation; only rows i and j are written.
void rotate_rows(ComplexMatrix &m, const PlanarRotation &r);

/// The full n x n matrix of the step.
UnitaryMatrix expand_rotation(const PlanarRotation &r, std::size_t n);

ComplexMatrix evaluate_circuit(const Circuit &c);
ComplexMatrix evaluate_circuit(const Circuit &c, const ComplexMatrix &start);

/// Calls visit(t, step, state) for t = 0 (step == nullptr, state == start)
/// and then after every step, in order. Only one state is alive at a time.
void for_each_state(
    const Circuit &c, const ComplexMatrix &start,
    const std::function<void(std::size_t, const PlanarRotation *,
                             const ComplexMatrix &)> &visit);

StateTrace trace_circuit(const Circuit &c, const ComplexMatrix &start);

/// Largest unitarity defect over every state M_0..M_m, tracked through the
/// Gram matrix M M^* (only rows/cols i, j change per step).
double max_state_unitarity_defect(const Circuit &c,
                                  const ComplexMatrix &start);

/// Radix-2 decimation in time: bit-reversal swaps, then log2(n) butterfly
/// stages with twiddle exp(-2 pi i q / 2^s). Evaluates to dft_matrix(n).
Circuit fft_circuit(std::size_t n);

/// (n/2) log2(n) Hadamard steps pairing indices that differ in one bit.
Circuit wht_circuit(std::size_t n);

/// m steps with uniformly random distinct (i, j) and Haar random 2x2 blocks.
Circuit random_circuit(std::size_t n, std::size_t m, std::uint64_t seed);

// JSON lines: {"n":..,"steps":..} then {"t":..,"i":..,"j":..,"block":[[re,im]x4]}
// per step, t counting from 1.
void write_circuit(std::ostream &os, const Circuit &c);
Circuit read_circuit(std::istream &is);
void save_circuit(const std::string &path, const Circuit &c);
Circuit load_circuit(const std::string &path);

}  // namespace potlab
