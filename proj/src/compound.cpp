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

#include "compound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "error.hpp"
#include "summation.hpp"

namespace potlab {

std::uint64_t binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t r = result / g;
    const std::uint64_t d = i / g;
    const std::uint64_t m = num / d;  // d divides num here
    if (r != 0 && m > kMax / r) return kMax;
    result = r * m;
  }
  return result;
}

SubsetIndex::SubsetIndex(std::size_t n, std::size_t k)
    : n_(n), k_(k), count_(binomial(n, k)) {
  if (k == 0 || k > n) {
    throw Error(ErrorCode::kPrecondition,
                "subset size k=" + std::to_string(k) + " must lie in [1, " +
                    std::to_string(n) + "]");
  }
  table_.resize((n + 1) * (k + 1));
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= k; ++b) table_[a * (k + 1) + b] = binomial(a, b);
}

std::uint64_t SubsetIndex::choose(std::size_t n, std::size_t k) const noexcept {
  return table_[n * (k_ + 1) + k];
}

std::uint64_t SubsetIndex::rank(std::span<const std::size_t> subset) const {
  if (subset.size() != k_) {
    throw Error(ErrorCode::kPrecondition,
                "subset has " + std::to_string(subset.size()) +
                    " elements, expected " + std::to_string(k_));
  }
  std::uint64_t r = 0;
  std::size_t next = 0;  // smallest value allowed at this position
  for (std::size_t p = 0; p < k_; ++p) {
    const std::size_t s = subset[p];
    if (s >= n_) {
      throw Error(ErrorCode::kPrecondition,
                  "subset element " + std::to_string(s) + " out of range");
    }
    if (s < next) {
      throw Error(ErrorCode::kPrecondition,
                  "subset must be strictly increasing");
    }
    // skip every subset that has a smaller value at position p
    for (std::size_t v = next; v < s; ++v) r += choose(n_ - 1 - v, k_ - 1 - p);
    next = s + 1;
  }
  return r;
}

std::vector<std::size_t> SubsetIndex::unrank(std::uint64_t r) const {
  if (r >= count_) {
    throw Error(ErrorCode::kPrecondition,
                "rank " + std::to_string(r) + " out of range [0, " +
                    std::to_string(count_) + ")");
  }
  std::vector<std::size_t> out;
  out.reserve(k_);
  std::size_t v = 0;
  for (std::size_t p = 0; p < k_; ++p) {
    for (;; ++v) {
      const std::uint64_t block = choose(n_ - 1 - v, k_ - 1 - p);
      if (r < block) break;
      r -= block;
    }
    out.push_back(v++);
  }
  return out;
}

Complex determinant(const ComplexMatrix &m) {
  if (!m.is_square()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "determinant needs a square matrix");
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == Complex{}) return 0.0;
    if (pivot != col) {
      auto x = a.row(pivot);
      auto y = a.row(col);
      std::swap_ranges(x.begin(), x.end(), y.begin());
      det = -det;
    }
    const Complex p = a(col, col);
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a(r, col) / p;
      if (f == Complex{}) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

namespace {

std::uint64_t checked_compound_dim(std::size_t n, std::size_t k,
                                   std::size_t cap) {
  if (k == 0 || k > n) {
    throw Error(ErrorCode::kPrecondition,
                "compound order k=" + std::to_string(k) + " must lie in [1, " +
                    std::to_string(n) + "]");
  }
  const std::uint64_t dim = binomial(n, k);
  if (dim > cap) {
    throw Error(ErrorCode::kResourceLimit,
                "C(" + std::to_string(n) + "," + std::to_string(k) + ") = " +
                    std::to_string(dim) + " exceeds the cap of " +
                    std::to_string(cap));
  }
  return dim;
}

std::vector<std::vector<std::size_t>> all_subsets(const SubsetIndex &index) {
  std::vector<std::vector<std::size_t>> subsets;
  subsets.reserve(index.count());
  for (std::uint64_t r = 0; r < index.count(); ++r)
    subsets.push_back(index.unrank(r));
  return subsets;
}

}  // namespace

CompoundMatrix compound_matrix(const ComplexMatrix &u, std::size_t k,
                               std::size_t cap) {
  if (!u.is_square()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "compound matrix needs a square input");
  }
  const std::size_t n = u.rows();
  const auto dim = static_cast<std::size_t>(checked_compound_dim(n, k, cap));
  const auto subsets = all_subsets(SubsetIndex(n, k));
  ComplexMatrix out(dim, dim);
  ComplexMatrix minor(k, k);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c)
          minor(r, c) = u(subsets[a][r], subsets[b][c]);
      out(a, b) = determinant(minor);
    }
  }
  return {n, k, std::move(out)};
}

double verify_representation(const ComplexMatrix &u, const ComplexMatrix &v,
                             std::size_t k, std::size_t cap) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "representation check needs equal dimensions");
  }
  const ComplexMatrix psi_u = compound_matrix(u, k, cap).matrix;
  const ComplexMatrix psi_v = compound_matrix(v, k, cap).matrix;
  const ComplexMatrix psi_uv = compound_matrix(u * v, k, cap).matrix;
  return std::max(frobenius_distance(psi_uv, psi_u * psi_v),
                  unitarity_defect(psi_u));
}

double lifted_potential(const ComplexMatrix &u, std::size_t k,
                        std::size_t cap, double base) {
  return entropy_potential(compound_matrix(u, k, cap).matrix, base);
}

CompoundRotationStructure compound_rotation_structure(const PlanarRotation &r,
                                                      std::size_t n,
                                                      std::size_t k,
                                                      std::size_t cap) {
  if (r.i() >= n || r.j() >= n) {
    throw Error(ErrorCode::kInvalidStep, "rotation rows out of range");
  }
  checked_compound_dim(n, k, cap);
  const SubsetIndex index(n, k);
  const auto &a = r.block();
  const std::size_t lo = std::min(r.i(), r.j());
  const std::size_t hi = std::max(r.i(), r.j());

  CompoundRotationStructure s;
  s.n = n;
  s.k = k;
  s.scalar = r.determinant();
  for (std::uint64_t rank = 0; rank < index.count(); ++rank) {
    const auto subset = index.unrank(rank);
    const bool has_i = std::binary_search(subset.begin(), subset.end(), r.i());
    const bool has_j = std::binary_search(subset.begin(), subset.end(), r.j());
    if (has_i && has_j) {
      s.scalar_ranks.push_back(rank);
    } else if (!has_i && !has_j) {
      s.identity_ranks.push_back(rank);
    } else if (has_i) {
      // partner subset swaps i for j; each pair is visited once, from its
      // i-side
      std::vector<std::size_t> partner = subset;
      std::erase(partner, r.i());
      partner.insert(std::upper_bound(partner.begin(), partner.end(), r.j()),
                     r.j());
      const auto between = std::count_if(
          partner.begin(), partner.end(),
          [&](std::size_t v) { return v > lo && v < hi; });
      const double sign = (between % 2 == 0) ? 1.0 : -1.0;
      s.mixing.emplace_back(
          rank, index.rank(partner),
          PlanarRotation::Block{a[0], sign * a[1], sign * a[2], a[3]});
    }
  }
  return s;
}

ComplexMatrix to_dense(const CompoundRotationStructure &s) {
  const auto dim = static_cast<std::size_t>(binomial(s.n, s.k));
  ComplexMatrix m = ComplexMatrix::identity(dim);
  for (auto rank : s.scalar_ranks) m(rank, rank) = s.scalar;
  for (const auto &p : s.mixing) {
    const auto &b = p.block();
    m(p.i(), p.i()) = b[0];
    m(p.i(), p.j()) = b[1];
    m(p.j(), p.i()) = b[2];
    m(p.j(), p.j()) = b[3];
  }
  return m;
}

double structural_cap(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) return 0.0;
  if (n < 2) return 0.0;
  return 2.0 * static_cast<double>(binomial(n - 2, k - 1));
}

LiftedRun run_lifted(const Circuit &c, std::size_t k, std::size_t cap,
                     double base) {
  const std::size_t n = c.dimension();
  const auto dim = static_cast<std::size_t>(checked_compound_dim(n, k, cap));

  LiftedRun run;
  PotentialTrace &trace = run.trace;
  trace.dimension = n;
  trace.order = k;
  trace.compound_dim = dim;
  trace.structural_cap = structural_cap(n, k);
  trace.records.reserve(c.size() + 1);

  ComplexMatrix state = ComplexMatrix::identity(dim);
  trace.records.push_back({.step = 0, .i = {}, .j = {}, .kind = {}, .phi = 0.0, .delta = 0.0});
  CompensatedSum phi;
  for (std::size_t t = 0; t < c.size(); ++t) {
    const PlanarRotation &r = c[t];
    const auto s = compound_rotation_structure(r, n, k, cap);
    CompensatedSum delta;
    for (const auto &mix : s.mixing) {
      delta.add(rotation_delta(state, mix, base));
      rotate_rows(state, mix);
    }
    for (auto rank : s.scalar_ranks) {
      auto row = state.row(rank);
      CompensatedSum before, after;
      for (Complex &z : row) {
        before.add(entropy_term(std::norm(z)));
        z *= s.scalar;
        after.add(entropy_term(std::norm(z)));
      }
      delta.add((after.value() - before.value()) / std::log2(base));
    }
    phi.add(delta.value());
    trace.records.push_back({.step = t + 1,
                             .i = r.i(),
                             .j = r.j(),
                             .kind = classify(r),
                             .phi = phi.value(),
                             .delta = delta.value()});
  }
  run.final_state = std::move(state);
  return run;
}

PotentialTrace lifted_trace(const Circuit &c, std::size_t k, std::size_t cap,
                            double base) {
  return run_lifted(c, k, cap, base).trace;
}

LiftedSummary summarize_lifted(const PotentialTrace &trace) {
  LiftedSummary s;
  s.n = trace.dimension;
  s.k = trace.order;
  s.steps = trace.steps();
  s.compound_dim = trace.compound_dim;
  s.phi_lifted_end = trace.phi_end();
  s.max_step_delta = max_step_delta(trace);
  s.structural_cap = trace.structural_cap.value_or(0.0);
  if (s.max_step_delta > 0.0)
    s.implied_bound = s.phi_lifted_end / s.max_step_delta;
  if (s.structural_cap > 0.0)
    s.implied_bound_structural = s.phi_lifted_end / s.structural_cap;
  return s;
}

}  // namespace potlab
