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

#include "potlab/potlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include "circuit.hpp"
#include "compound.hpp"
#include "entropy.hpp"
#include "error.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "xalpha.hpp"

struct potlab_matrix {
  potlab::ComplexMatrix value;
};

struct potlab_circuit {
  potlab::Circuit value;
};

struct potlab_trace {
  potlab::PotentialTrace value;
};

struct potlab_xalpha_scan {
  std::vector<potlab::XAlphaScanRow> rows;
};

namespace {

using potlab::Complex;
using potlab::ErrorCode;

thread_local std::string last_error;

potlab_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimension: return POTLAB_ERR_INVALID_DIMENSION;
    case ErrorCode::kDimensionMismatch: return POTLAB_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kInvalidStep: return POTLAB_ERR_INVALID_STEP;
    case ErrorCode::kPrecondition: return POTLAB_ERR_PRECONDITION;
    case ErrorCode::kIllConditioned: return POTLAB_ERR_ILL_CONDITIONED;
    case ErrorCode::kResourceLimit: return POTLAB_ERR_RESOURCE_LIMIT;
    case ErrorCode::kIo: return POTLAB_ERR_IO;
    case ErrorCode::kParse: return POTLAB_ERR_PARSE;
  }
  return POTLAB_ERR_INTERNAL;
}

potlab_status fail(potlab_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
potlab_status guarded(F &&body) noexcept {
  try {
    body();
    return POTLAB_OK;
  } catch (const potlab::Error &e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(POTLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(POTLAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(POTLAB_ERR_INTERNAL, "unknown error");
  }
}

#define POTLAB_REQUIRE(ptr)                                          \
  do {                                                               \
    if ((ptr) == nullptr)                                            \
      return fail(POTLAB_ERR_NULL_ARGUMENT, #ptr " must not be NULL"); \
  } while (0)

char *copy_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

potlab::Transform to_transform(potlab_transform t) {
  switch (t) {
    case POTLAB_TRANSFORM_DFT: return potlab::Transform::kDft;
    case POTLAB_TRANSFORM_WHT: return potlab::Transform::kWalshHadamard;
  }
  throw potlab::Error(ErrorCode::kPrecondition, "unknown transform");
}

potlab_step_kind to_kind(potlab::StepKind k) {
  switch (k) {
    case potlab::StepKind::kSwap: return POTLAB_STEP_SWAP;
    case potlab::StepKind::kButterfly: return POTLAB_STEP_BUTTERFLY;
    case potlab::StepKind::kOther: return POTLAB_STEP_OTHER;
  }
  return POTLAB_STEP_OTHER;
}

potlab::ComplexMatrix start_or_identity(const potlab_matrix *start,
                                        std::size_t n) {
  return start ? start->value : potlab::ComplexMatrix::identity(n);
}

std::vector<Complex> unpack(const double *data, std::size_t count) {
  std::vector<Complex> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = {data[2 * i], data[2 * i + 1]};
  return out;
}

potlab_status new_matrix(potlab::ComplexMatrix m, potlab_matrix **out) {
  *out = new potlab_matrix{std::move(m)};
  return POTLAB_OK;
}

}  // namespace

extern "C" {

const char *potlab_version(void) { return "1.0.0"; }

const char *potlab_status_name(potlab_status status) {
  switch (status) {
    case POTLAB_OK: return "ok";
    case POTLAB_ERR_NULL_ARGUMENT: return "null argument";
    case POTLAB_ERR_INVALID_DIMENSION: return "invalid dimension";
    case POTLAB_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case POTLAB_ERR_INVALID_STEP: return "invalid step";
    case POTLAB_ERR_PRECONDITION: return "precondition violated";
    case POTLAB_ERR_ILL_CONDITIONED: return "ill-conditioned";
    case POTLAB_ERR_RESOURCE_LIMIT: return "resource limit exceeded";
    case POTLAB_ERR_IO: return "i/o error";
    case POTLAB_ERR_PARSE: return "parse error";
    case POTLAB_ERR_OUT_OF_RANGE: return "index out of range";
    case POTLAB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char *potlab_last_error(void) { return last_error.c_str(); }

void potlab_string_free(char *s) { std::free(s); }

// ---- matrices

potlab_status potlab_matrix_identity(size_t n, potlab_matrix **out) {
  POTLAB_REQUIRE(out);
  return guarded(
      [&] { new_matrix(potlab::ComplexMatrix::identity(n), out); });
}

potlab_status potlab_matrix_dft(size_t n, potlab_matrix **out) {
  POTLAB_REQUIRE(out);
  return guarded([&] { new_matrix(potlab::dft_matrix(n), out); });
}

potlab_status potlab_matrix_wht(size_t n, potlab_matrix **out) {
  POTLAB_REQUIRE(out);
  return guarded([&] { new_matrix(potlab::walsh_hadamard_matrix(n), out); });
}

potlab_status potlab_matrix_random_unitary(size_t n, uint64_t seed,
                                           potlab_matrix **out) {
  POTLAB_REQUIRE(out);
  return guarded([&] { new_matrix(potlab::random_unitary(n, seed), out); });
}

potlab_status potlab_matrix_x_alpha(size_t n, double alpha,
                                    potlab_transform transform,
                                    potlab_matrix **out) {
  POTLAB_REQUIRE(out);
  return guarded([&] {
    new_matrix(potlab::x_alpha(n, alpha, to_transform(transform)), out);
  });
}

potlab_status potlab_matrix_from_entries(size_t rows, size_t cols,
                                         const double *entries,
                                         potlab_matrix **out) {
  POTLAB_REQUIRE(out);
  if (rows * cols > 0) POTLAB_REQUIRE(entries);
  return guarded([&] {
    new_matrix(potlab::ComplexMatrix(rows, cols, unpack(entries, rows * cols)),
               out);
  });
}

potlab_status potlab_matrix_from_json(const char *json, potlab_matrix **out) {
  POTLAB_REQUIRE(json);
  POTLAB_REQUIRE(out);
  return guarded([&] { new_matrix(potlab::matrix_from_json(json), out); });
}

potlab_status potlab_matrix_to_json(const potlab_matrix *m, char **out) {
  POTLAB_REQUIRE(m);
  POTLAB_REQUIRE(out);
  return guarded([&] { *out = copy_string(potlab::to_json(m->value)); });
}

void potlab_matrix_free(potlab_matrix *m) { delete m; }

potlab_status potlab_matrix_shape(const potlab_matrix *m, size_t *rows,
                                  size_t *cols) {
  POTLAB_REQUIRE(m);
  if (rows) *rows = m->value.rows();
  if (cols) *cols = m->value.cols();
  return POTLAB_OK;
}

potlab_status potlab_matrix_get(const potlab_matrix *m, size_t r, size_t c,
                                double *re, double *im) {
  POTLAB_REQUIRE(m);
  if (r >= m->value.rows() || c >= m->value.cols()) {
    return fail(POTLAB_ERR_OUT_OF_RANGE, "matrix index out of range");
  }
  const Complex z = m->value(r, c);
  if (re) *re = z.real();
  if (im) *im = z.imag();
  return POTLAB_OK;
}

potlab_status potlab_matrix_multiply(const potlab_matrix *a,
                                     const potlab_matrix *b,
                                     potlab_matrix **out) {
  POTLAB_REQUIRE(a);
  POTLAB_REQUIRE(b);
  POTLAB_REQUIRE(out);
  return guarded([&] { new_matrix(a->value * b->value, out); });
}

potlab_status potlab_matrix_unitarity_defect(const potlab_matrix *m,
                                             double *out) {
  POTLAB_REQUIRE(m);
  POTLAB_REQUIRE(out);
  return guarded([&] { *out = potlab::unitarity_defect(m->value); });
}

potlab_status potlab_matrix_is_unitary(const potlab_matrix *m, double tol,
                                       int *out) {
  POTLAB_REQUIRE(m);
  POTLAB_REQUIRE(out);
  return guarded([&] { *out = potlab::is_unitary(m->value, tol) ? 1 : 0; });
}

potlab_status potlab_frobenius_distance(const potlab_matrix *a,
                                        const potlab_matrix *b, double *out) {
  POTLAB_REQUIRE(a);
  POTLAB_REQUIRE(b);
  POTLAB_REQUIRE(out);
  return guarded(
      [&] { *out = potlab::frobenius_distance(a->value, b->value); });
}

// ---- circuits

potlab_status potlab_circuit_new(size_t n, potlab_circuit **out) {
  POTLAB_REQUIRE(out);
  return guarded([&] { *out = new potlab_circuit{potlab::Circuit(n)}; });
}

potlab_status potlab_circuit_append(potlab_circuit *c, size_t i, size_t j,
                                    const double *block) {
  POTLAB_REQUIRE(c);
  POTLAB_REQUIRE(block);
  return guarded([&] {
    const auto b = unpack(block, 4);
    std::vector<potlab::PlanarRotation> steps = c->value.steps();
    steps.emplace_back(i, j,
                       potlab::PlanarRotation::Block{b[0], b[1], b[2], b[3]});
    c->value = potlab::Circuit(c->value.dimension(), std::move(steps));
  });
}

potlab_status potlab_circuit_fft(size_t n, potlab_circuit **out) {
  POTLAB_REQUIRE(out);
  return guarded([&] { *out = new potlab_circuit{potlab::fft_circuit(n)}; });
}

potlab_status potlab_circuit_wht(size_t n, potlab_circuit **out) {
  POTLAB_REQUIRE(out);
  return guarded([&] { *out = new potlab_circuit{potlab::wht_circuit(n)}; });
}

potlab_status potlab_circuit_random(size_t n, size_t m, uint64_t seed,
                                    potlab_circuit **out) {
  POTLAB_REQUIRE(out);
  return guarded([&] {
    *out = new potlab_circuit{potlab::random_circuit(n, m, seed)};
  });
}

potlab_status potlab_circuit_load(const char *path, potlab_circuit **out) {
  POTLAB_REQUIRE(path);
  POTLAB_REQUIRE(out);
  return guarded([&] { *out = new potlab_circuit{potlab::load_circuit(path)}; });
}

potlab_status potlab_circuit_save(const potlab_circuit *c, const char *path) {
  POTLAB_REQUIRE(c);
  POTLAB_REQUIRE(path);
  return guarded([&] { potlab::save_circuit(path, c->value); });
}

void potlab_circuit_free(potlab_circuit *c) { delete c; }

potlab_status potlab_circuit_dimension(const potlab_circuit *c, size_t *out) {
  POTLAB_REQUIRE(c);
  POTLAB_REQUIRE(out);
  *out = c->value.dimension();
  return POTLAB_OK;
}

potlab_status potlab_circuit_size(const potlab_circuit *c, size_t *out) {
  POTLAB_REQUIRE(c);
  POTLAB_REQUIRE(out);
  *out = c->value.size();
  return POTLAB_OK;
}

potlab_status potlab_circuit_step(const potlab_circuit *c, size_t t,
                                  size_t *i, size_t *j, double *block,
                                  potlab_step_kind *kind) {
  POTLAB_REQUIRE(c);
  if (t >= c->value.size()) {
    return fail(POTLAB_ERR_OUT_OF_RANGE, "step index out of range");
  }
  const auto &r = c->value[t];
  if (i) *i = r.i();
  if (j) *j = r.j();
  if (block) {
    for (std::size_t e = 0; e < 4; ++e) {
      block[2 * e] = r.block()[e].real();
      block[2 * e + 1] = r.block()[e].imag();
    }
  }
  if (kind) *kind = to_kind(potlab::classify(r));
  return POTLAB_OK;
}

potlab_status potlab_circuit_evaluate(const potlab_circuit *c,
                                      const potlab_matrix *start,
                                      potlab_matrix **out) {
  POTLAB_REQUIRE(c);
  POTLAB_REQUIRE(out);
  return guarded([&] {
    new_matrix(potlab::evaluate_circuit(
                   c->value, start_or_identity(start, c->value.dimension())),
               out);
  });
}

potlab_status potlab_circuit_max_state_defect(const potlab_circuit *c,
                                              const potlab_matrix *start,
                                              double *out) {
  POTLAB_REQUIRE(c);
  POTLAB_REQUIRE(out);
  return guarded([&] {
    *out = potlab::max_state_unitarity_defect(
        c->value, start_or_identity(start, c->value.dimension()));
  });
}

// ---- entropy potential

potlab_status potlab_entropy_potential(const potlab_matrix *m, double base,
                                       double *out) {
  POTLAB_REQUIRE(m);
  POTLAB_REQUIRE(out);
  return guarded([&] { *out = potlab::entropy_potential(m->value, base); });
}

potlab_status potlab_entropy_pair_delta(double x, double y, double z,
                                        double w, double *out) {
  POTLAB_REQUIRE(out);
  return guarded([&] { *out = potlab::entropy_pair_delta(x, y, z, w); });
}

potlab_status potlab_step_lower_bound(const potlab_matrix *target,
                                      const potlab_matrix *start,
                                      double *out) {
  POTLAB_REQUIRE(target);
  POTLAB_REQUIRE(out);
  return guarded([&] {
    *out = potlab::step_lower_bound(
        target->value, start_or_identity(start, target->value.rows()));
  });
}

potlab_status potlab_potential_trace(const potlab_circuit *c,
                                     const potlab_matrix *start, double base,
                                     potlab_trace **out) {
  POTLAB_REQUIRE(c);
  POTLAB_REQUIRE(out);
  return guarded([&] {
    *out = new potlab_trace{potlab::potential_trace(
        c->value, start_or_identity(start, c->value.dimension()), base)};
  });
}

potlab_status potlab_lifted_trace(const potlab_circuit *c, size_t k,
                                  size_t cap, double base,
                                  potlab_trace **out) {
  POTLAB_REQUIRE(c);
  POTLAB_REQUIRE(out);
  return guarded([&] {
    *out = new potlab_trace{potlab::lifted_trace(c->value, k, cap, base)};
  });
}

void potlab_trace_free(potlab_trace *t) { delete t; }

potlab_status potlab_trace_length(const potlab_trace *t, size_t *out) {
  POTLAB_REQUIRE(t);
  POTLAB_REQUIRE(out);
  *out = t->value.records.size();
  return POTLAB_OK;
}

potlab_status potlab_trace_record_at(const potlab_trace *t, size_t index,
                                     potlab_trace_record *out) {
  POTLAB_REQUIRE(t);
  POTLAB_REQUIRE(out);
  if (index >= t->value.records.size()) {
    return fail(POTLAB_ERR_OUT_OF_RANGE, "trace index out of range");
  }
  const auto &r = t->value.records[index];
  potlab_trace_record rec{};
  rec.step = r.step;
  rec.has_rows = r.i.has_value() ? 1 : 0;
  rec.i = r.i.value_or(0);
  rec.j = r.j.value_or(0);
  rec.kind = r.kind ? to_kind(*r.kind) : POTLAB_STEP_NONE;
  rec.phi = r.phi;
  rec.delta = r.delta;
  *out = rec;
  return POTLAB_OK;
}

potlab_status potlab_trace_summarize(const potlab_trace *t,
                                     potlab_trace_summary *out) {
  POTLAB_REQUIRE(t);
  POTLAB_REQUIRE(out);
  return guarded([&] {
    const auto &tr = t->value;
    potlab_trace_summary s{};
    s.n = tr.dimension;
    s.k = tr.order;
    s.steps = tr.steps();
    s.compound_dim = tr.compound_dim;
    s.phi_start = tr.phi_start();
    s.phi_end = tr.phi_end();
    s.max_abs_delta = potlab::max_step_delta(tr);
    if (tr.order > 0) {
      const auto lifted = potlab::summarize_lifted(tr);
      s.structural_cap = lifted.structural_cap;
      s.implied_bound = lifted.implied_bound;
      s.implied_bound_structural = lifted.implied_bound_structural;
    }
    *out = s;
  });
}

potlab_status potlab_trace_to_csv(const potlab_trace *t, char **out) {
  POTLAB_REQUIRE(t);
  POTLAB_REQUIRE(out);
  return guarded([&] {
    std::ostringstream os;
    potlab::write_trace_csv(os, t->value);
    *out = copy_string(os.str());
  });
}

potlab_status potlab_trace_summary_json(const potlab_trace *t,
                                        const char *kind, char **out) {
  POTLAB_REQUIRE(t);
  POTLAB_REQUIRE(out);
  return guarded([&] {
    if (t->value.order > 0) {
      *out = copy_string(potlab::lifted_summary_json(
          potlab::summarize_lifted(t->value), kind ? kind : ""));
    } else {
      *out = copy_string(potlab::trace_summary_json(t->value));
    }
  });
}

// ---- X_alpha

potlab_status potlab_xalpha_entropy_closed_form(size_t n, double alpha,
                                                double base, double *out) {
  POTLAB_REQUIRE(out);
  return guarded(
      [&] { *out = potlab::x_alpha_entropy_closed_form(n, alpha, base); });
}

potlab_status potlab_xalpha_improved_gap(size_t n, double alpha, double base,
                                         double *out) {
  POTLAB_REQUIRE(out);
  return guarded([&] { *out = potlab::improved_gap(n, alpha, base); });
}

potlab_status potlab_reduce_dft_via_xalpha(size_t n, const double *x,
                                           double alpha,
                                           potlab_transform transform,
                                           double *y) {
  POTLAB_REQUIRE(x);
  POTLAB_REQUIRE(y);
  return guarded([&] {
    const auto in = unpack(x, n);
    const auto result =
        potlab::reduce_dft_via_xalpha(in, alpha, to_transform(transform));
    for (std::size_t i = 0; i < n; ++i) {
      y[2 * i] = result[i].real();
      y[2 * i + 1] = result[i].imag();
    }
  });
}

potlab_status potlab_alpha_grid(size_t steps, double *out) {
  POTLAB_REQUIRE(out);
  return guarded([&] {
    const auto grid = potlab::alpha_grid(steps);
    std::copy(grid.begin(), grid.end(), out);
  });
}

potlab_status potlab_xalpha_scan_run(size_t n, const double *alphas,
                                     size_t count, potlab_transform transform,
                                     double base, size_t jobs,
                                     potlab_xalpha_scan **out) {
  POTLAB_REQUIRE(out);
  if (count > 0) POTLAB_REQUIRE(alphas);
  return guarded([&] {
    std::vector<double> grid(alphas, alphas + count);
    *out = new potlab_xalpha_scan{
        potlab::xalpha_scan(n, grid, to_transform(transform), base, jobs)};
  });
}

void potlab_xalpha_scan_free(potlab_xalpha_scan *s) { delete s; }

potlab_status potlab_xalpha_scan_length(const potlab_xalpha_scan *s,
                                        size_t *out) {
  POTLAB_REQUIRE(s);
  POTLAB_REQUIRE(out);
  *out = s->rows.size();
  return POTLAB_OK;
}

potlab_status potlab_xalpha_scan_row(const potlab_xalpha_scan *s, size_t index,
                                     potlab_xalpha_row *out) {
  POTLAB_REQUIRE(s);
  POTLAB_REQUIRE(out);
  if (index >= s->rows.size()) {
    return fail(POTLAB_ERR_OUT_OF_RANGE, "scan row out of range");
  }
  const auto &r = s->rows[index];
  *out = {r.n,   r.alpha,      r.phi_exact,  r.phi_closed_form,
          r.gap, r.gap_over_2, r.naive_bound};
  return POTLAB_OK;
}

potlab_status potlab_xalpha_scan_to_csv(const potlab_xalpha_scan *s,
                                        char **out) {
  POTLAB_REQUIRE(s);
  POTLAB_REQUIRE(out);
  return guarded([&] {
    std::ostringstream os;
    potlab::write_xalpha_csv(os, s->rows);
    *out = copy_string(os.str());
  });
}

// ---- compound representation

potlab_status potlab_binomial(size_t n, size_t k, uint64_t *out) {
  POTLAB_REQUIRE(out);
  *out = potlab::binomial(n, k);
  return POTLAB_OK;
}

potlab_status potlab_subset_rank(size_t n, size_t k, const size_t *subset,
                                 uint64_t *out) {
  POTLAB_REQUIRE(subset);
  POTLAB_REQUIRE(out);
  return guarded([&] {
    *out = potlab::SubsetIndex(n, k).rank(std::span<const size_t>(subset, k));
  });
}

potlab_status potlab_subset_unrank(size_t n, size_t k, uint64_t rank,
                                   size_t *subset_out) {
  POTLAB_REQUIRE(subset_out);
  return guarded([&] {
    const auto s = potlab::SubsetIndex(n, k).unrank(rank);
    std::copy(s.begin(), s.end(), subset_out);
  });
}

potlab_status potlab_compound_matrix(const potlab_matrix *u, size_t k,
                                     size_t cap, potlab_matrix **out) {
  POTLAB_REQUIRE(u);
  POTLAB_REQUIRE(out);
  return guarded(
      [&] { new_matrix(potlab::compound_matrix(u->value, k, cap).matrix, out); });
}

potlab_status potlab_verify_representation(const potlab_matrix *u,
                                           const potlab_matrix *v, size_t k,
                                           size_t cap, double *out) {
  POTLAB_REQUIRE(u);
  POTLAB_REQUIRE(v);
  POTLAB_REQUIRE(out);
  return guarded([&] {
    *out = potlab::verify_representation(u->value, v->value, k, cap);
  });
}

potlab_status potlab_lifted_potential(const potlab_matrix *u, size_t k,
                                      size_t cap, double base, double *out) {
  POTLAB_REQUIRE(u);
  POTLAB_REQUIRE(out);
  return guarded(
      [&] { *out = potlab::lifted_potential(u->value, k, cap, base); });
}

potlab_status potlab_structural_cap(size_t n, size_t k, double *out) {
  POTLAB_REQUIRE(out);
  *out = potlab::structural_cap(n, k);
  return POTLAB_OK;
}

}  // extern "C"
