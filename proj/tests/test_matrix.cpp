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

#include "error.hpp"
#include "matrix.hpp"
#include "oracles.hpp"

using namespace potlab;

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

TEST_CASE("dft_matrix small cases") {
  CHECK(dft_matrix(1).matrix() == ComplexMatrix::identity(1));

  const ComplexMatrix f2 = dft_matrix(2);
  CHECK(std::abs(f2(0, 0) - kInvSqrt2) < 1e-16);
  CHECK(std::abs(f2(0, 1) - kInvSqrt2) < 1e-16);
  CHECK(std::abs(f2(1, 0) - kInvSqrt2) < 1e-16);
  CHECK(std::abs(f2(1, 1) + kInvSqrt2) < 1e-16);

  const ComplexMatrix f4 = dft_matrix(4);
  CHECK(std::abs(f4(1, 1) - Complex(0.0, -0.5)) < 1e-16);
}

TEST_CASE("dft_matrix agrees with the direct exponential formula") {
  for (std::size_t n : {3u, 5u, 8u, 12u, 64u}) {
    CHECK(max_abs_difference(dft_matrix(n), testing::direct_dft(n)) < 1e-14);
  }
}

TEST_CASE("walsh_hadamard_matrix entries") {
  const ComplexMatrix h4 = walsh_hadamard_matrix(4);
  CHECK(h4(1, 1) == Complex(-0.5, 0.0));
  CHECK(h4(1, 2) == Complex(0.5, 0.0));
  CHECK(walsh_hadamard_matrix(2).matrix() == dft_matrix(2).matrix());
}

TEST_CASE("transform constructors reject bad sizes") {
  CHECK_THROWS_AS(dft_matrix(0), Error);
  for (std::size_t n : {0u, 3u, 6u, 12u}) {
    try {
      walsh_hadamard_matrix(n);
      FAIL("expected an error for n=" << n);
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::kInvalidDimension);
    }
  }
}

TEST_CASE("transforms are unitary with flat magnitudes up to n=256") {
  for (std::size_t n = 1; n <= 256; n *= 2) {
    const ComplexMatrix f = dft_matrix(n);
    const ComplexMatrix h = walsh_hadamard_matrix(n);
    CHECK(is_unitary(f, 1e-12 * n));
    CHECK(is_unitary(h, 1e-12 * n));
    double worst_mag = 0.0;
    for (const Complex &z : f.entries())
      worst_mag = std::max(worst_mag, std::abs(std::norm(z) * n - 1.0));
    CHECK(worst_mag <= 1e-14);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        REQUIRE(h(r, c).imag() == 0.0);
        REQUIRE(h(r, c) == h(c, r));
      }
  }
  CHECK(is_unitary(dft_matrix(6), 1e-12 * 6));
}

TEST_CASE("is_unitary") {
  CHECK(is_unitary(ComplexMatrix::identity(5), 0.0));
  CHECK_FALSE(is_unitary(Complex(2.0) * ComplexMatrix::identity(3), 1e-10));
  CHECK(is_unitary(dft_matrix(8), 1e-10));
  CHECK_FALSE(is_unitary(ComplexMatrix(2, 3), 1.0));
}

TEST_CASE("frobenius_distance") {
  const ComplexMatrix a = dft_matrix(5);
  CHECK(frobenius_distance(a, a) == 0.0);
  CHECK(frobenius_distance(ComplexMatrix::identity(2), ComplexMatrix(2, 2)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(frobenius_distance(dft_matrix(2), walsh_hadamard_matrix(2)) == 0.0);
  CHECK_THROWS_AS(frobenius_distance(ComplexMatrix(2, 2), ComplexMatrix(3, 3)),
                  Error);
}

TEST_CASE("matrix products match the naive oracle") {
  const ComplexMatrix a = random_unitary(7, 11);
  const ComplexMatrix b = random_unitary(7, 12);
  CHECK(max_abs_difference(a * b, testing::naive_product(a, b)) < 1e-14);
  CHECK(max_abs_difference(a.adjoint().adjoint(), a) == 0.0);
  CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), Error);
}

TEST_CASE("random_unitary is deterministic and unitary") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto u = random_unitary(9, seed);
    CHECK(is_unitary(u, 1e-12));
    CHECK(u.matrix() == random_unitary(9, seed).matrix());
  }
  CHECK_FALSE(random_unitary(4, 1).matrix() == random_unitary(4, 2).matrix());
}

TEST_CASE("UnitaryMatrix rejects non-unitary input") {
  CHECK_THROWS_AS(UnitaryMatrix(Complex(2.0) * ComplexMatrix::identity(2)),
                  Error);
  CHECK_NOTHROW(UnitaryMatrix(dft_matrix(4).matrix()));
}

TEST_CASE("ComplexMatrix rejects inconsistent or non-finite entries") {
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), Error);
  CHECK_THROWS_AS(
      ComplexMatrix(1, 1, std::vector<Complex>{Complex(NAN, 0.0)}), Error);
}

TEST_CASE("matrix JSON round trip is bit exact") {
  const ComplexMatrix m = random_unitary(6, 3);
  const ComplexMatrix back = matrix_from_json(to_json(m));
  CHECK(back == m);
  CHECK(to_json(ComplexMatrix::identity(1)) ==
        R"({"rows":1,"cols":1,"entries":[[1,0]]})");
  CHECK_THROWS_AS(matrix_from_json("{\"rows\":2}"), Error);
  CHECK_THROWS_AS(
      matrix_from_json(R"({"rows":1,"cols":2,"entries":[[1,0]]})"), Error);
}
