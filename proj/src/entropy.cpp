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

#include "entropy.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "summation.hpp"

namespace potlab {

namespace {

double base_divisor(double base) {
  if (!(base > 0.0) || base == 1.0 || !std::isfinite(base)) {
    throw Error(ErrorCode::kPrecondition,
                "log base must be positive, finite and not 1");
  }
  return std::log2(base);
}

}  // namespace

double entropy_term(double p) noexcept {
  if (p < kZeroMass) return 0.0;
  return -p * std::log2(p);
}

double entropy_potential(const ComplexMatrix &m, double base) {
  const double div = base_divisor(base);
  CompensatedSum sum;
  for (const Complex &z : m.entries()) sum.add(entropy_term(std::norm(z)));
  return sum.value() / div;
}

double rotation_delta(const ComplexMatrix &before, const PlanarRotation &r,
                      double base) {
  const double div = base_divisor(base);
  if (r.i() >= before.rows() || r.j() >= before.rows()) {
    throw Error(ErrorCode::kInvalidStep, "rotation rows out of range");
  }
  const auto &b = r.block();
  auto ri = before.row(r.i());
  auto rj = before.row(r.j());
  CompensatedSum sum;
  for (std::size_t k = 0; k < ri.size(); ++k) {
    const Complex x = ri[k];
    const Complex y = rj[k];
    const double old_k = entropy_term(std::norm(x)) + entropy_term(std::norm(y));
    const double new_k = entropy_term(std::norm(b[0] * x + b[1] * y)) +
                         entropy_term(std::norm(b[2] * x + b[3] * y));
    sum.add(new_k - old_k);
  }
  return sum.value() / div;
}

PotentialTrace potential_trace(const Circuit &c, const ComplexMatrix &start,
                               double base) {
  if (start.rows() != c.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "start has " + std::to_string(start.rows()) +
                    " rows, circuit dimension is " +
                    std::to_string(c.dimension()));
  }
  PotentialTrace trace;
  trace.dimension = c.dimension();
  trace.records.reserve(c.size() + 1);

  const double phi0 = entropy_potential(start, base);
  trace.records.push_back({.step = 0, .i = {}, .j = {}, .kind = {}, .phi = phi0, .delta = 0.0});

  CompensatedSum phi;
  phi.add(phi0);
  ComplexMatrix m = start;
  for (std::size_t t = 0; t < c.size(); ++t) {
    const PlanarRotation &r = c[t];
    const double delta = rotation_delta(m, r, base);
    rotate_rows(m, r);
    phi.add(delta);
    trace.records.push_back({.step = t + 1,
                             .i = r.i(),
                             .j = r.j(),
                             .kind = classify(r),
                             .phi = phi.value(),
                             .delta = delta});
  }
  return trace;
}

double max_step_delta(const PotentialTrace &trace) {
  if (trace.records.empty()) {
    throw Error(ErrorCode::kPrecondition, "trace has no records");
  }
  double worst = 0.0;
  for (std::size_t t = 1; t < trace.records.size(); ++t)
    worst = std::max(worst, std::abs(trace.records[t].delta));
  return worst;
}

double entropy_pair_delta(double x, double y, double z, double w) {
  if (x < 0.0 || y < 0.0 || z < 0.0 || w < 0.0) {
    throw Error(ErrorCode::kPrecondition,
                "four-number lemma needs nonnegative inputs");
  }
  const double x2 = x * x, y2 = y * y, z2 = z * z, w2 = w * w;
  if (std::abs((x2 + y2) - (z2 + w2)) > 1e-12) {
    throw Error(ErrorCode::kPrecondition,
                "four-number lemma needs x^2 + y^2 == z^2 + w^2");
  }
  // entropy_term is -p log2 p, so the sign flips cancel inside |.|
  const double left = entropy_term(x2) + entropy_term(y2);
  const double right = entropy_term(z2) + entropy_term(w2);
  return std::abs(left - right);
}

double step_lower_bound(const ComplexMatrix &target,
                        const ComplexMatrix &start) {
  if (!target.is_square() || target.cols() != start.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "target and start dimensions differ");
  }
  const double end = entropy_potential(target * start);
  return std::abs(end - entropy_potential(start)) / 2.0;
}

double step_lower_bound(const ComplexMatrix &target) {
  return step_lower_bound(target, ComplexMatrix::identity(target.rows()));
}

}  // namespace potlab
