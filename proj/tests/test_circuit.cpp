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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "circuit.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "oracles.hpp"

using namespace potlab;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::size_t count_kind(const Circuit &c, StepKind kind) {
  std::size_t n = 0;
  for (const auto &r : c.steps())
    if (classify(r) == kind) ++n;
  return n;
}

}  // namespace

TEST_CASE("PlanarRotation validation") {
  CHECK_THROWS_AS(PlanarRotation::swap(2, 2), Error);
  CHECK_THROWS_AS(PlanarRotation(0, 1, {1.0, 1.0, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(PlanarRotation(0, 1, {Complex(NAN), 0.0, 0.0, 1.0}), Error);
  CHECK_NOTHROW(PlanarRotation(3, 1, {0.0, Complex(0, 1), Complex(0, 1), 0.0}));
}

TEST_CASE("apply_rotation examples") {
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const ComplexMatrix swapped = apply_rotation(id2, PlanarRotation::swap(0, 1));
  CHECK(swapped == ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}));

  const ComplexMatrix h = apply_rotation(id2, PlanarRotation::hadamard(0, 1));
  CHECK(max_abs_difference(h, dft_matrix(2)) < 1e-16);

  CHECK_THROWS_AS(apply_rotation(id2, PlanarRotation::swap(0, 2)), Error);
}

TEST_CASE("rotation followed by its inverse restores the input") {
  const Circuit c = random_circuit(6, 40, 99);
  const ComplexMatrix id = ComplexMatrix::identity(6);
  for (const auto &r : c.steps()) {
    const ComplexMatrix back = apply_rotation(apply_rotation(id, r), r.inverse());
    CHECK(max_abs_difference(back, id) <= 1e-13);
  }
}

TEST_CASE("apply_rotation only touches rows i and j") {
  const ComplexMatrix m = random_unitary(7, 5);
  const Circuit c = random_circuit(7, 30, 6);
  for (const auto &r : c.steps()) {
    const ComplexMatrix out = apply_rotation(m, r);
    for (std::size_t row = 0; row < 7; ++row) {
      if (row == r.i() || row == r.j()) continue;
      for (std::size_t col = 0; col < 7; ++col) REQUIRE(out(row, col) == m(row, col));
    }
  }
}

TEST_CASE("expand_rotation") {
  const auto ident = PlanarRotation(0, 1, {1.0, 0.0, 0.0, 1.0});
  CHECK(expand_rotation(ident, 3).matrix() == ComplexMatrix::identity(3));
  const ComplexMatrix perm = expand_rotation(PlanarRotation::swap(0, 2), 3);
  CHECK(perm == ComplexMatrix(3, 3, {0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0}));
  CHECK_THROWS_AS(expand_rotation(PlanarRotation::swap(0, 3), 3), Error);
}

TEST_CASE("expand_rotation times M equals apply_rotation (dense oracle)") {
  const ComplexMatrix m = random_unitary(5, 17);
  const Circuit c = random_circuit(5, 50, 18);
  double worst = 0.0;
  for (const auto &r : c.steps()) {
    const ComplexMatrix dense = testing::naive_product(expand_rotation(r, 5), m);
    worst = std::max(worst, max_abs_difference(dense, apply_rotation(m, r)));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("evaluate_circuit") {
  const ComplexMatrix start = random_unitary(4, 2);
  CHECK(evaluate_circuit(Circuit(4), start) == start);
  CHECK_THROWS_AS(evaluate_circuit(Circuit(4), ComplexMatrix::identity(3)), Error);

  CHECK(frobenius_distance(evaluate_circuit(fft_circuit(8)), dft_matrix(8)) <= 1e-10);
  CHECK(frobenius_distance(evaluate_circuit(wht_circuit(8)),
                           walsh_hadamard_matrix(8)) <= 1e-10);
}

TEST_CASE("evaluate_circuit applies step 1 first") {
  // R2 R1 differs from R1 R2 for these two steps.
  const Circuit c(3, {PlanarRotation::hadamard(0, 1), PlanarRotation::swap(1, 2)});
  const ComplexMatrix expected =
      testing::naive_product(expand_rotation(c[1], 3), expand_rotation(c[0], 3));
  CHECK(max_abs_difference(evaluate_circuit(c), expected) < 1e-15);
}

TEST_CASE("trace_circuit") {
  const ComplexMatrix id4 = ComplexMatrix::identity(4);
  CHECK(trace_circuit(Circuit(4), id4).states.size() == 1);

  const Circuit one(4, {PlanarRotation::hadamard(1, 3)});
  const auto t = trace_circuit(one, id4);
  REQUIRE(t.states.size() == 2);
  CHECK(t.states[0] == id4);
  CHECK(t.states[1] == apply_rotation(id4, one[0]));

  CHECK(trace_circuit(fft_circuit(4), id4).states.size() == 6);
}

TEST_CASE("fft_circuit structure") {
  const Circuit c2 = fft_circuit(2);
  CHECK(c2.size() == 1);
  CHECK(count_kind(c2, StepKind::kSwap) == 0);
  CHECK(max_abs_difference(evaluate_circuit(c2), dft_matrix(2)) < 1e-15);

  const Circuit c4 = fft_circuit(4);
  CHECK(c4.size() == 5);
  CHECK(count_kind(c4, StepKind::kSwap) == 1);
  CHECK(count_kind(c4, StepKind::kButterfly) == 4);
  CHECK(c4[0] == PlanarRotation::swap(1, 2));

  const Circuit c8 = fft_circuit(8);
  CHECK(c8.size() == 14);
  CHECK(count_kind(c8, StepKind::kButterfly) == 12);
  CHECK(c8[0] == PlanarRotation::swap(1, 4));
  CHECK(c8[1] == PlanarRotation::swap(3, 6));

  for (std::size_t n : {2u, 4u, 8u, 16u, 64u, 256u}) {
    const Circuit c = fft_circuit(n);
    const std::size_t stages = std::countr_zero(n);
    CHECK(count_kind(c, StepKind::kButterfly) == n / 2 * stages);
    CHECK(count_kind(c, StepKind::kOther) == 0);
    // every swap comes before every butterfly
    const std::size_t swaps = count_kind(c, StepKind::kSwap);
    for (std::size_t t = 0; t < swaps; ++t) REQUIRE(classify(c[t]) == StepKind::kSwap);
    CHECK(frobenius_distance(evaluate_circuit(c), dft_matrix(n)) <= 1e-10 * n);
  }
  CHECK_THROWS_AS(fft_circuit(1), Error);
  CHECK_THROWS_AS(fft_circuit(6), Error);
}

TEST_CASE("bit-reversal swap count matches enumeration") {
  for (std::size_t n : {2u, 4u, 8u, 16u, 32u}) {
    const std::size_t bits = std::countr_zero(n);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
      if (i < r) ++expected;
    }
    CHECK(count_kind(fft_circuit(n), StepKind::kSwap) == expected);
  }
}

TEST_CASE("wht_circuit structure") {
  CHECK(wht_circuit(2).size() == 1);
  CHECK(max_abs_difference(evaluate_circuit(wht_circuit(2)),
                           walsh_hadamard_matrix(2)) < 1e-15);
  CHECK(wht_circuit(4).size() == 4);
  CHECK(wht_circuit(8).size() == 12);
  for (std::size_t n : {2u, 4u, 8u, 16u, 64u, 256u}) {
    const Circuit c = wht_circuit(n);
    CHECK(c.size() == n / 2 * std::countr_zero(n));
    for (const auto &r : c.steps()) {
      REQUIRE(std::popcount(r.i() ^ r.j()) == 1);
      REQUIRE(r.block() == PlanarRotation::hadamard(0, 1).block());
    }
    CHECK(frobenius_distance(evaluate_circuit(c), walsh_hadamard_matrix(n)) <=
          1e-10 * n);
  }
  CHECK_THROWS_AS(wht_circuit(12), Error);
}

TEST_CASE("random_circuit") {
  CHECK(random_circuit(4, 0, 1).empty());
  CHECK(random_circuit(4, 10, 7) == random_circuit(4, 10, 7));
  CHECK_FALSE(random_circuit(4, 10, 7) == random_circuit(4, 10, 8));
  CHECK_THROWS_AS(random_circuit(1, 3, 1), Error);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Circuit c = random_circuit(6, 60, seed);
    for (const auto &r : c.steps()) REQUIRE(r.i() != r.j());
    REQUIRE(is_unitary(evaluate_circuit(c), 1e-10 * 6));
  }
}

TEST_CASE("random_circuit covers every ordered row pair") {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  const Circuit c = random_circuit(4, 500, 3);
  for (const auto &r : c.steps()) seen.emplace(r.i(), r.j());
  CHECK(seen.size() == 12);
}

TEST_CASE("column-norm conservation per step") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Circuit c = random_circuit(8, 100, seed);
    ComplexMatrix m = random_unitary(8, seed + 1000);
    for (const auto &r : c.steps()) {
      const ComplexMatrix next = apply_rotation(m, r);
      for (std::size_t k = 0; k < 8; ++k) {
        const double before = std::norm(m(r.i(), k)) + std::norm(m(r.j(), k));
        const double after = std::norm(next(r.i(), k)) + std::norm(next(r.j(), k));
        REQUIRE(std::abs(before - after) <= 1e-12);
      }
      m = next;
    }
  }
}

TEST_CASE("intermediate states stay unitary; incremental defect matches dense") {
  const ComplexMatrix id = ComplexMatrix::identity(8);
  for (const Circuit &c : {fft_circuit(8), wht_circuit(8), random_circuit(8, 80, 4)}) {
    double dense = 0.0;
    for (const auto &s : trace_circuit(c, id).states) {
      REQUIRE(is_unitary(s, 1e-10 * 8));
      dense = std::max(dense, unitarity_defect(s));
    }
    CHECK(max_state_unitarity_defect(c, id) == doctest::Approx(dense).epsilon(1e-6));
  }
  CHECK(max_state_unitarity_defect(fft_circuit(256), ComplexMatrix::identity(256)) <=
        1e-10 * 256);
}

TEST_CASE("step classification") {
  CHECK(classify(PlanarRotation::swap(0, 1)) == StepKind::kSwap);
  CHECK(classify(PlanarRotation::hadamard(0, 1)) == StepKind::kButterfly);
  CHECK(classify(PlanarRotation::butterfly(0, 1, std::polar(1.0, 0.3))) ==
        StepKind::kButterfly);
  CHECK(classify(PlanarRotation(0, 1, {0.0, 1.0, -1.0, 0.0})) == StepKind::kOther);
  CHECK(classify(PlanarRotation(0, 1, {kInvSqrt2, kInvSqrt2, -kInvSqrt2, kInvSqrt2})) ==
        StepKind::kOther);
}

TEST_CASE("circuit JSON lines round trip is bit exact") {
  for (const Circuit &c : {fft_circuit(16), random_circuit(5, 25, 42), Circuit(3)}) {
    std::stringstream ss;
    write_circuit(ss, c);
    CHECK(read_circuit(ss) == c);
  }
  std::stringstream ss;
  write_circuit(ss, fft_circuit(2));
  CHECK(ss.str().substr(0, ss.str().find('\n')) == R"({"n":2,"steps":1})");
}

TEST_CASE("circuit reader rejects malformed input") {
  auto parse = [](const std::string &text) {
    std::stringstream ss(text);
    return read_circuit(ss);
  };
  CHECK_THROWS_AS(parse(""), Error);
  CHECK_THROWS_AS(parse("{\"n\":2,\"steps\":1}\n"), Error);
  CHECK_THROWS_AS(parse("not json\n"), Error);
  // block is not unitary
  CHECK_THROWS_AS(parse("{\"n\":2,\"steps\":1}\n"
                        "{\"t\":1,\"i\":0,\"j\":1,\"block\":[[1,0],[1,0],[0,0],[1,0]]}\n"),
                  Error);
  // index beyond n
  CHECK_THROWS_AS(parse("{\"n\":2,\"steps\":1}\n"
                        "{\"t\":1,\"i\":0,\"j\":2,\"block\":[[0,0],[1,0],[1,0],[0,0]]}\n"),
                  Error);
  CHECK_THROWS_AS(load_circuit("/nonexistent/dir/circuit.jsonl"), Error);
}
