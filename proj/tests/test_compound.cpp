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
#include <vector>

#include "circuit.hpp"
#include "compound.hpp"
#include "entropy.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "oracles.hpp"

using namespace potlab;

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(8, 2) == 28);
  CHECK(binomial(30, 10) == 30045015);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 5) == 1);
  CHECK(binomial(3, 4) == 0);
  CHECK(binomial(62, 31) == 465428353255261088ULL);
}

TEST_CASE("subset rank examples") {
  const SubsetIndex idx(4, 2);
  CHECK(idx.count() == 6);
  CHECK(idx.rank(std::vector<std::size_t>{0, 1}) == 0);
  CHECK(idx.rank(std::vector<std::size_t>{0, 3}) == 2);
  CHECK(idx.rank(std::vector<std::size_t>{1, 2}) == 3);
  CHECK(idx.rank(std::vector<std::size_t>{2, 3}) == 5);
  CHECK(idx.unrank(4) == std::vector<std::size_t>{1, 3});

  const SubsetIndex singles(5, 1);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(singles.rank(std::vector<std::size_t>{i}) == i);
  }
  const SubsetIndex all(3, 3);
  CHECK(all.count() == 1);
  CHECK(all.unrank(0) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("subset rank round trip against lexicographic enumeration") {
  for (std::size_t n = 1; n <= 14; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      if (binomial(n, k) > 10000) continue;
      const SubsetIndex idx(n, k);
      const auto subsets = testing::lex_subsets(n, k);
      REQUIRE(subsets.size() == idx.count());
      for (std::uint64_t r = 0; r < idx.count(); ++r) {
        REQUIRE(idx.unrank(r) == subsets[r]);
        REQUIRE(idx.rank(subsets[r]) == r);
      }
    }
  }
}

TEST_CASE("subset rank rejects bad input") {
  const SubsetIndex idx(5, 2);
  CHECK_THROWS_AS(idx.rank(std::vector<std::size_t>{1}), Error);
  CHECK_THROWS_AS(idx.rank(std::vector<std::size_t>{2, 1}), Error);
  CHECK_THROWS_AS(idx.rank(std::vector<std::size_t>{2, 2}), Error);
  CHECK_THROWS_AS(idx.rank(std::vector<std::size_t>{1, 5}), Error);
  CHECK_THROWS_AS(idx.unrank(10), Error);
  CHECK_THROWS_AS(SubsetIndex(3, 4), Error);
  CHECK_THROWS_AS(SubsetIndex(3, 0), Error);
}

TEST_CASE("determinant") {
  CHECK(determinant(ComplexMatrix::identity(5)) == Complex(1.0));
  CHECK(determinant(ComplexMatrix(3, 3)) == Complex(0.0));
  CHECK(std::abs(determinant(ComplexMatrix(2, 2, {1.0, 2.0, 3.0, 4.0})) - Complex(-2.0)) <=
        1e-15);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix u = random_unitary(5, seed);
    const Complex d = determinant(u);
    CHECK(std::abs(d - testing::leibniz_determinant(u)) <= 1e-12);
    CHECK(std::abs(std::abs(d) - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(determinant(ComplexMatrix(2, 3)), Error);
}

TEST_CASE("compound matrix edge orders") {
  const ComplexMatrix u = random_unitary(5, 7);
  CHECK(max_abs_difference(compound_matrix(u, 1).matrix, u) <= 1e-15);
  const auto top = compound_matrix(u, 5);
  REQUIRE(top.matrix.rows() == 1);
  CHECK(std::abs(top.matrix(0, 0) - determinant(u)) <= 1e-13);

  const ComplexMatrix d(3, 3, {2.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 5.0});
  const auto c2 = compound_matrix(d, 2);
  const ComplexMatrix expected(3, 3, {6.0, 0.0, 0.0, 0.0, 10.0, 0.0, 0.0, 0.0, 15.0});
  CHECK(max_abs_difference(c2.matrix, expected) <= 1e-14);

  CHECK_THROWS_AS(compound_matrix(u, 0), Error);
  CHECK_THROWS_AS(compound_matrix(u, 6), Error);
}

TEST_CASE("compound matrix agrees with brute force minors") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix u = random_unitary(6, seed + 100);
    for (std::size_t k = 1; k <= 4; ++k) {
      REQUIRE(max_abs_difference(compound_matrix(u, k).matrix, testing::brute_compound(u, k)) <=
              1e-12);
    }
  }
}

TEST_CASE("compound matrix cap") {
  try {
    compound_matrix(ComplexMatrix::identity(30), 10);
    FAIL("expected resource limit");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kResourceLimit);
    CHECK(std::string(e.what()).find("exceeds the cap") != std::string::npos);
  }
  CHECK_NOTHROW(compound_matrix(ComplexMatrix::identity(8), 4, 70));
  CHECK_THROWS_AS(compound_matrix(ComplexMatrix::identity(8), 4, 69), Error);
}

TEST_CASE("compound map is multiplicative") {
  CHECK(verify_representation(ComplexMatrix::identity(5), ComplexMatrix::identity(5), 2) == 0.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix u = random_unitary(6, 2 * seed);
    const ComplexMatrix v = random_unitary(6, 2 * seed + 1);
    REQUIRE(verify_representation(u, v, 2) <= 1e-12);
  }
  CHECK(verify_representation(dft_matrix(4), walsh_hadamard_matrix(4), 2) <= 1e-11);
  CHECK(verify_representation(random_unitary(7, 1), random_unitary(7, 2), 3) <= 1e-11);
}

TEST_CASE("lifted potential") {
  // numpy oracle: Phi(Psi_2(F_4)) = 14
  CHECK(std::abs(lifted_potential(dft_matrix(4), 2) - 14.0) <= 1e-12);
  CHECK(std::abs(lifted_potential(dft_matrix(8), 1) - 24.0) <= 1e-12);
  CHECK(lifted_potential(ComplexMatrix::identity(6), 3) == 0.0);
}

TEST_CASE("compound structure of a single rotation") {
  const auto s = compound_rotation_structure(PlanarRotation::hadamard(0, 1), 4, 2);
  CHECK(s.mixing.size() == 2);
  CHECK(s.scalar_ranks.size() == 1);
  CHECK(s.identity_ranks.size() == 1);
  CHECK(std::abs(s.scalar - Complex(-1.0)) <= 1e-15);
  CHECK(s.identity_ranks[0] == 5);  // {2,3}
  CHECK(s.scalar_ranks[0] == 0);    // {0,1}
}

TEST_CASE("compound structure block counts match the dense compound") {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, n); ++k) {
      const Circuit c = random_circuit(n, 6, 10 * n + k);
      for (const auto &r : c.steps()) {
        const auto s = compound_rotation_structure(r, n, k);
        REQUIRE(s.mixing.size() == (n >= 2 && k >= 1 ? binomial(n - 2, k - 1) : 0));
        REQUIRE(s.scalar_ranks.size() == (k >= 2 ? binomial(n - 2, k - 2) : 0));
        REQUIRE(s.identity_ranks.size() == binomial(n - 2, k));
        const ComplexMatrix dense = compound_matrix(expand_rotation(r, n), k).matrix;
        REQUIRE(max_abs_difference(to_dense(s), dense) <= 1e-13);
      }
    }
  }
}

TEST_CASE("structural cap") {
  CHECK(structural_cap(8, 1) == 2.0);
  CHECK(structural_cap(8, 2) == 12.0);
  CHECK(structural_cap(4, 2) == 4.0);
  CHECK(structural_cap(6, 3) == 12.0);
}

TEST_CASE("lifted trace at order 1 is the plain trace") {
  for (const Circuit &c : {fft_circuit(8), wht_circuit(16), random_circuit(6, 30, 5)}) {
    const auto plain = potential_trace(c, ComplexMatrix::identity(c.dimension()));
    const auto lifted = lifted_trace(c, 1);
    REQUIRE(lifted.records.size() == plain.records.size());
    for (std::size_t t = 0; t < plain.records.size(); ++t) {
      REQUIRE(std::abs(lifted.records[t].phi - plain.records[t].phi) <= 1e-12);
      REQUIRE(std::abs(lifted.records[t].delta - plain.records[t].delta) <= 1e-12);
    }
  }
}

TEST_CASE("lifted trace of the 8-point FFT at order 2") {
  const auto run = run_lifted(fft_circuit(8), 2);
  REQUIRE(run.trace.records.size() == 15);
  CHECK(run.trace.compound_dim == 28);
  REQUIRE(run.trace.structural_cap.has_value());
  CHECK(*run.trace.structural_cap == 12.0);
  // numpy oracle values
  CHECK(run.trace.phi_end() == doctest::Approx(124.80700829354271).epsilon(1e-12));
  CHECK(std::abs(run.trace.phi_end() - lifted_potential(dft_matrix(8), 2)) <= 1e-10);
  CHECK(max_step_delta(run.trace) <= 12.0 + 1e-9);
  CHECK(max_step_delta(run.trace) == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(max_abs_difference(run.final_state,
                           compound_matrix(evaluate_circuit(fft_circuit(8)), 2).matrix) <=
        1e-12);

  const auto s = summarize_lifted(run.trace);
  CHECK(s.n == 8);
  CHECK(s.k == 2);
  CHECK(s.steps == 14);
  CHECK(s.compound_dim == 28);
  CHECK(s.implied_bound == doctest::Approx(124.80700829354271 / 12.0).epsilon(1e-12));
  CHECK(s.implied_bound_structural == doctest::Approx(124.80700829354271 / 12.0).epsilon(1e-12));
}

TEST_CASE("lifted trace steps respect the structural cap") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (std::size_t k = 1; k <= 3; ++k) {
      const Circuit c = random_circuit(6, 20, seed + 70);
      const auto run = run_lifted(c, k);
      REQUIRE(max_step_delta(run.trace) <= structural_cap(6, k) + 1e-9);
      REQUIRE(max_abs_difference(run.final_state,
                                 compound_matrix(evaluate_circuit(c), k).matrix) <= 1e-11);
      double telescoped = 0.0;
      for (const auto &rec : run.trace.records) telescoped += rec.delta;
      REQUIRE(std::abs(telescoped - run.trace.phi_end()) <= 1e-9);
    }
  }
}

TEST_CASE("lifted trace cap") {
  CHECK_THROWS_AS(lifted_trace(fft_circuit(32), 10), Error);
  CHECK_THROWS_AS(lifted_trace(fft_circuit(8), 9), Error);
}
