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
#include <optional>
#include <vector>

#include "circuit.hpp"
#include "matrix.hpp"

namespace potlab {

inline constexpr double kDefaultLogBase = 2.0;

// Squared magnitudes below this count as exact zeros (0 log 0 := 0).
inline constexpr double kZeroMass = 1e-300;

/// -p log2 p with the zero convention above.
double entropy_term(double p) noexcept;

/// Phi(M) = -sum |M(i,j)|^2 log |M(i,j)|^2, in units of log base `base`.
double entropy_potential(const ComplexMatrix &m,
                         double base = kDefaultLogBase);

/// Change of Phi caused by replacing rows (i, j) of `before` with the rows
/// produced by r. Reads only those two rows.
double rotation_delta(const ComplexMatrix &before, const PlanarRotation &r,
                      double base = kDefaultLogBase);

struct TraceRecord {
  std::size_t step = 0;                // 0 is the start state
  std::optional<std::size_t> i;        // empty on the start record
  std::optional<std::size_t> j;
  std::optional<StepKind> kind;
  double phi = 0.0;
  double delta = 0.0;
};

struct PotentialTrace {
  std::size_t dimension = 0;  // n of the circuit
  std::size_t order = 0;      // k for lifted traces, 0 for plain
  std::size_t compound_dim = 0;
  std::optional<double> structural_cap;  // per-step cap, lifted only
  std::vector<TraceRecord> records;

  std::size_t steps() const noexcept {
    return records.empty() ? 0 : records.size() - 1;
  }
  double phi_start() const { return records.front().phi; }
  double phi_end() const { return records.back().phi; }
  double total_change() const { return phi_end() - phi_start(); }
};

/// Phi along every state of the circuit, one record per state. Deltas are
/// computed from the two touched rows only; states are not retained.
PotentialTrace potential_trace(const Circuit &c, const ComplexMatrix &start,
                               double base = kDefaultLogBase);

/// max_t |delta_t|; 0 for a trace with only the start record.
/// Throws kPrecondition for a trace with no records.
double max_step_delta(const PotentialTrace &trace);

/// |(x^2 log2 x^2 + y^2 log2 y^2) - (z^2 log2 z^2 + w^2 log2 w^2)| for
/// nonnegative inputs with x^2 + y^2 = z^2 + w^2 (to 1e-12).
double entropy_pair_delta(double x, double y, double z, double w);

/// |Phi(target * start) - Phi(start)| / 2: a lower bound on model steps
/// taking `start` to `target * start`.
double step_lower_bound(const ComplexMatrix &target,
                        const ComplexMatrix &start);
double step_lower_bound(const ComplexMatrix &target);

}  // namespace potlab
