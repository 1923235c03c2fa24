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
#include <iosfwd>
#include <string>
#include <vector>

#include "compound.hpp"
#include "entropy.hpp"
#include "xalpha.hpp"

namespace potlab {

/// Plain traces: step,i,j,kind,phi,delta_phi (start row leaves i, j, kind
/// empty). Lifted traces: step,kind,phi_lifted,delta,structural_cap.
void write_trace_csv(std::ostream &os, const PotentialTrace &trace);

/// {"n","steps","phi_start","phi_end","max_abs_delta"}
std::string trace_summary_json(const PotentialTrace &trace);

/// {"n","k","kind","steps","compound_dim","phi_lifted_F",
///  "max_step_delta_fft","structural_cap","implied_bound",
///  "implied_bound_structural"}
std::string lifted_summary_json(const LiftedSummary &s,
                                const std::string &kind);

struct XAlphaScanRow {
  std::size_t n = 0;
  double alpha = 0.0;
  double phi_exact = 0.0;        // direct summation over X_alpha
  double phi_closed_form = 0.0;
  double gap = 0.0;              // improved_gap, 0 at alpha = 0
  double gap_over_2 = 0.0;
  double naive_bound = 0.0;      // phi_closed_form / 2
};

/// `steps` evenly spaced angles covering [0, pi/2] inclusive (steps >= 2),
/// or {0} for steps == 1.
std::vector<double> alpha_grid(std::size_t steps);

/// One row per angle, in input order. jobs > 1 splits the angles across
/// threads; the result does not depend on jobs.
std::vector<XAlphaScanRow> xalpha_scan(std::size_t n,
                                       const std::vector<double> &alphas,
                                       Transform transform = Transform::kDft,
                                       double base = kDefaultLogBase,
                                       std::size_t jobs = 1);

/// n,alpha,phi_exact,phi_closed_form,gap,gap_over_2,naive_bound
void write_xalpha_csv(std::ostream &os, const std::vector<XAlphaScanRow> &rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Comma-separated, no quoting. Throws kParse on ragged rows.
CsvTable read_csv(std::istream &is);

/// Writes text to path, throwing kIo on failure.
void write_text_file(const std::string &path, const std::string &text);

}  // namespace potlab
