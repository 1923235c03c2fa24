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

#include "circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "format.hpp"

namespace potlab {

namespace {

constexpr double kBlockTol = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

double block_defect(const PlanarRotation::Block &b) {
  // rows (b0, b1) and (b2, b3)
  const Complex g00 = b[0] * std::conj(b[0]) + b[1] * std::conj(b[1]) - 1.0;
  const Complex g11 = b[2] * std::conj(b[2]) + b[3] * std::conj(b[3]) - 1.0;
  const Complex g01 = b[0] * std::conj(b[2]) + b[1] * std::conj(b[3]);
  return std::max({std::abs(g00), std::abs(g11), std::abs(g01)});
}

void check_indices(const PlanarRotation &r, std::size_t n) {
  if (r.i() >= n || r.j() >= n) {
    throw Error(ErrorCode::kInvalidStep,
                "step rows (" + std::to_string(r.i()) + ", " +
                    std::to_string(r.j()) + ") out of range for dimension " +
                    std::to_string(n));
  }
}

}  // namespace

PlanarRotation::PlanarRotation(std::size_t i, std::size_t j,
                               const Block &block)
    : i_(i), j_(j), block_(block) {
  if (i == j) {
    throw Error(ErrorCode::kInvalidStep,
                "rotation rows must differ, got " + std::to_string(i) +
                    " twice");
  }
  for (const Complex &z : block_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::kInvalidStep, "rotation block is not finite");
    }
  }
  if (block_defect(block_) > kBlockTol) {
    throw Error(ErrorCode::kInvalidStep, "rotation block is not unitary");
  }
}

PlanarRotation PlanarRotation::swap(std::size_t i, std::size_t j) {
  return PlanarRotation(i, j, {0.0, 1.0, 1.0, 0.0});
}

PlanarRotation PlanarRotation::hadamard(std::size_t i, std::size_t j) {
  return PlanarRotation(i, j, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
}

PlanarRotation PlanarRotation::butterfly(std::size_t i, std::size_t j,
                                         Complex w) {
  const Complex a = kInvSqrt2 * w;
  return PlanarRotation(i, j, {kInvSqrt2, a, kInvSqrt2, -a});
}

PlanarRotation PlanarRotation::inverse() const {
  // conjugate transpose of the block
  return PlanarRotation(i_, j_,
                        {std::conj(block_[0]), std::conj(block_[2]),
                         std::conj(block_[1]), std::conj(block_[3])});
}

StepKind classify(const PlanarRotation &r) {
  const auto &b = r.block();
  if (b == PlanarRotation::Block{0.0, 1.0, 1.0, 0.0}) return StepKind::kSwap;
  const bool first_column = std::abs(b[0] - kInvSqrt2) <= kBlockTol &&
                            std::abs(b[2] - kInvSqrt2) <= kBlockTol;
  const bool twiddled = std::abs(b[1] + b[3]) <= kBlockTol &&
                        std::abs(std::abs(b[1]) - kInvSqrt2) <= kBlockTol;
  if (first_column && twiddled) return StepKind::kButterfly;
  return StepKind::kOther;
}

const char *to_string(StepKind kind) {
  switch (kind) {
    case StepKind::kSwap: return "swap";
    case StepKind::kButterfly: return "butterfly";
    case StepKind::kOther: return "other";
  }
  return "other";
}

Circuit::Circuit(std::size_t dimension, std::vector<PlanarRotation> steps)
    : dimension_(dimension), steps_(std::move(steps)) {
  for (const auto &r : steps_) check_indices(r, dimension_);
}

void rotate_rows(ComplexMatrix &m, const PlanarRotation &r) {
  check_indices(r, m.rows());
  const auto &b = r.block();
  auto ri = m.row(r.i());
  auto rj = m.row(r.j());
  for (std::size_t c = 0; c < ri.size(); ++c) {
    const Complex x = ri[c];
    const Complex y = rj[c];
    ri[c] = b[0] * x + b[1] * y;
    rj[c] = b[2] * x + b[3] * y;
  }
}

ComplexMatrix apply_rotation(const ComplexMatrix &m, const PlanarRotation &r) {
  ComplexMatrix out = m;
  rotate_rows(out, r);
  return out;
}

UnitaryMatrix expand_rotation(const PlanarRotation &r, std::size_t n) {
  check_indices(r, n);
  ComplexMatrix m = ComplexMatrix::identity(n);
  const auto &b = r.block();
  m(r.i(), r.i()) = b[0];
  m(r.i(), r.j()) = b[1];
  m(r.j(), r.i()) = b[2];
  m(r.j(), r.j()) = b[3];
  return UnitaryMatrix(std::move(m), kBlockTol);
}

namespace {

void require_rows(const Circuit &c, const ComplexMatrix &start) {
  if (start.rows() != c.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "start has " + std::to_string(start.rows()) +
                    " rows, circuit dimension is " +
                    std::to_string(c.dimension()));
  }
}

}  // namespace

ComplexMatrix evaluate_circuit(const Circuit &c) {
  return evaluate_circuit(c, ComplexMatrix::identity(c.dimension()));
}

ComplexMatrix evaluate_circuit(const Circuit &c, const ComplexMatrix &start) {
  require_rows(c, start);
  ComplexMatrix m = start;
  for (const auto &r : c.steps()) rotate_rows(m, r);
  return m;
}

void for_each_state(
    const Circuit &c, const ComplexMatrix &start,
    const std::function<void(std::size_t, const PlanarRotation *,
                             const ComplexMatrix &)> &visit) {
  require_rows(c, start);
  ComplexMatrix m = start;
  visit(0, nullptr, m);
  for (std::size_t t = 0; t < c.size(); ++t) {
    rotate_rows(m, c[t]);
    visit(t + 1, &c[t], m);
  }
}

StateTrace trace_circuit(const Circuit &c, const ComplexMatrix &start) {
  StateTrace trace;
  trace.states.reserve(c.size() + 1);
  for_each_state(c, start,
                 [&](std::size_t, const PlanarRotation *,
                     const ComplexMatrix &m) { trace.states.push_back(m); });
  return trace;
}

double max_state_unitarity_defect(const Circuit &c,
                                  const ComplexMatrix &start) {
  require_rows(c, start);
  double worst = unitarity_defect(start);
  ComplexMatrix m = start;
  const std::size_t n = m.rows();
  // Entries of M M^* that a step leaves alone keep a value already counted.
  auto gram_row_defect = [&](std::size_t a) {
    auto ra = m.row(a);
    double w = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      auto rb = m.row(b);
      Complex dot{};
      for (std::size_t k = 0; k < ra.size(); ++k)
        dot += ra[k] * std::conj(rb[k]);
      if (a == b) dot -= 1.0;
      w = std::max(w, std::abs(dot));
    }
    return w;
  };
  for (const auto &r : c.steps()) {
    rotate_rows(m, r);
    worst = std::max({worst, gram_row_defect(r.i()), gram_row_defect(r.j())});
  }
  return worst;
}

namespace {

std::size_t log2_exact(std::size_t n) {
  return static_cast<std::size_t>(std::countr_zero(n));
}

std::size_t bit_reverse(std::size_t v, std::size_t bits) {
  std::size_t out = 0;
  for (std::size_t b = 0; b < bits; ++b) {
    out = (out << 1) | (v & 1);
    v >>= 1;
  }
  return out;
}

void require_power_of_two(std::size_t n, std::size_t minimum) {
  if (!is_power_of_two(n) || n < minimum) {
    throw Error(ErrorCode::kInvalidDimension,
                "n must be a power of two" +
                    (minimum > 1 ? " and at least " + std::to_string(minimum)
                                 : std::string{}) +
                    ", got " + std::to_string(n));
  }
}

}  // namespace

Circuit fft_circuit(std::size_t n) {
  require_power_of_two(n, 2);
  const std::size_t bits = log2_exact(n);
  std::vector<PlanarRotation> steps;
  steps.reserve(n + (n / 2) * bits);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = bit_reverse(i, bits);
    if (i < r) steps.push_back(PlanarRotation::swap(i, r));
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t q = 0; q < half; ++q) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(q) /
                             static_cast<double>(len);
        Complex w{std::cos(angle), std::sin(angle)};
        if (4 * q == len) w = {0.0, -1.0};
        steps.push_back(
            PlanarRotation::butterfly(start + q, start + q + half, w));
      }
    }
  }
  return Circuit(n, std::move(steps));
}

Circuit wht_circuit(std::size_t n) {
  require_power_of_two(n, 2);
  std::vector<PlanarRotation> steps;
  for (std::size_t bit = 1; bit < n; bit <<= 1)
    for (std::size_t i = 0; i < n; ++i)
      if ((i & bit) == 0) steps.push_back(PlanarRotation::hadamard(i, i | bit));
  return Circuit(n, std::move(steps));
}

Circuit random_circuit(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidDimension,
                "random circuits need n >= 2, got " + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  std::uniform_int_distribution<std::size_t> second(0, n - 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<PlanarRotation> steps;
  steps.reserve(m);
  for (std::size_t t = 0; t < m; ++t) {
    const std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i) ++j;
    // U(2) = e^{i phi} [[e^{i psi} cos th, e^{i chi} sin th],
    //                   [-e^{-i chi} sin th, e^{-i psi} cos th]]
    const double theta = std::asin(std::sqrt(unit(rng)));
    const double phi = phase(rng), psi = phase(rng), chi = phase(rng);
    const Complex g = std::polar(1.0, phi);
    const double cs = std::cos(theta), sn = std::sin(theta);
    steps.emplace_back(
        i, j,
        PlanarRotation::Block{g * std::polar(cs, psi), g * std::polar(sn, chi),
                              -g * std::polar(sn, -chi),
                              g * std::polar(cs, -psi)});
  }
  return Circuit(n, std::move(steps));
}

void write_circuit(std::ostream &os, const Circuit &c) {
  os << "{\"n\":" << c.dimension() << ",\"steps\":" << c.size() << "}\n";
  for (std::size_t t = 0; t < c.size(); ++t) {
    const auto &r = c[t];
    os << "{\"t\":" << t + 1 << ",\"i\":" << r.i() << ",\"j\":" << r.j()
       << ",\"block\":[";
    for (std::size_t e = 0; e < 4; ++e) {
      if (e) os << ',';
      os << '[' << format_double(r.block()[e].real()) << ','
         << format_double(r.block()[e].imag()) << ']';
    }
    os << "]}\n";
  }
}

Circuit read_circuit(std::istream &is) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string &why) -> Error {
    return Error(ErrorCode::kParse,
                 "circuit line " + std::to_string(lineno) + ": " + why);
  };
  try {
    if (!next_line()) throw fail("missing header");
    const auto header = nlohmann::json::parse(line);
    const auto n = header.at("n").get<std::size_t>();
    const auto count = header.at("steps").get<std::size_t>();
    std::vector<PlanarRotation> steps;
    steps.reserve(count);
    for (std::size_t t = 1; t <= count; ++t) {
      if (!next_line()) throw fail("expected " + std::to_string(count) +
                                   " steps, found " + std::to_string(t - 1));
      const auto rec = nlohmann::json::parse(line);
      if (rec.at("t").get<std::size_t>() != t) throw fail("steps out of order");
      const auto &blk = rec.at("block");
      if (blk.size() != 4) throw fail("block needs 4 entries");
      PlanarRotation::Block b;
      for (std::size_t e = 0; e < 4; ++e) {
        if (blk[e].size() != 2) throw fail("block entry must be [re, im]");
        b[e] = {blk[e][0].get<double>(), blk[e][1].get<double>()};
      }
      steps.emplace_back(rec.at("i").get<std::size_t>(),
                         rec.at("j").get<std::size_t>(), b);
    }
    if (next_line()) throw fail("trailing content after last step");
    return Circuit(n, std::move(steps));
  } catch (const nlohmann::json::exception &e) {
    throw fail(e.what());
  }
}

void save_circuit(const std::string &path, const Circuit &c) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  write_circuit(os, c);
  if (!os) throw Error(ErrorCode::kIo, "write failed: " + path);
}

Circuit load_circuit(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_circuit(is);
}

}  // namespace potlab
