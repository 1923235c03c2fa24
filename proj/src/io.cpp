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

#include "io.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "error.hpp"
#include "format.hpp"

namespace potlab {

void write_trace_csv(std::ostream &os, const PotentialTrace &trace) {
  const bool lifted = trace.order > 0;
  if (lifted) {
    os << "step,kind,phi_lifted,delta,structural_cap\n";
    const std::string cap = format_double(trace.structural_cap.value_or(0.0));
    for (const auto &r : trace.records) {
      os << r.step << ',' << (r.kind ? to_string(*r.kind) : "") << ','
         << format_double(r.phi) << ',' << format_double(r.delta) << ','
         << cap << '\n';
    }
    return;
  }
  os << "step,i,j,kind,phi,delta_phi\n";
  for (const auto &r : trace.records) {
    os << r.step << ',';
    if (r.i) os << *r.i;
    os << ',';
    if (r.j) os << *r.j;
    os << ',' << (r.kind ? to_string(*r.kind) : "") << ','
       << format_double(r.phi) << ',' << format_double(r.delta) << '\n';
  }
}

std::string trace_summary_json(const PotentialTrace &trace) {
  std::ostringstream os;
  os << "{\"n\":" << trace.dimension << ",\"steps\":" << trace.steps()
     << ",\"phi_start\":" << format_double(trace.phi_start())
     << ",\"phi_end\":" << format_double(trace.phi_end())
     << ",\"max_abs_delta\":" << format_double(max_step_delta(trace)) << "}";
  return os.str();
}

std::string lifted_summary_json(const LiftedSummary &s,
                                const std::string &kind) {
  std::ostringstream os;
  os << "{\"n\":" << s.n << ",\"k\":" << s.k << ",\"kind\":\"" << kind
     << "\",\"steps\":" << s.steps << ",\"compound_dim\":" << s.compound_dim
     << ",\"phi_lifted_F\":" << format_double(s.phi_lifted_end)
     << ",\"max_step_delta_fft\":" << format_double(s.max_step_delta)
     << ",\"structural_cap\":" << format_double(s.structural_cap)
     << ",\"implied_bound\":" << format_double(s.implied_bound)
     << ",\"implied_bound_structural\":"
     << format_double(s.implied_bound_structural) << "}";
  return os.str();
}

std::vector<double> alpha_grid(std::size_t steps) {
  if (steps == 0) {
    throw Error(ErrorCode::kPrecondition, "alpha grid needs at least 1 point");
  }
  if (steps == 1) return {0.0};
  std::vector<double> grid(steps);
  const double top = std::numbers::pi / 2;
  for (std::size_t s = 0; s < steps; ++s)
    grid[s] = top * static_cast<double>(s) / static_cast<double>(steps - 1);
  grid.back() = top;
  return grid;
}

namespace {

XAlphaScanRow scan_point(const XAlphaFamily &family, double alpha,
                         double base) {
  XAlphaScanRow row;
  row.n = family.n();
  row.alpha = alpha;
  row.phi_exact = entropy_potential(family.matrix(alpha), base);
  row.phi_closed_form = x_alpha_entropy_closed_form(family.n(), alpha, base);
  row.gap = alpha == 0.0 ? 0.0 : improved_gap(family.n(), alpha, base);
  row.gap_over_2 = row.gap / 2.0;
  row.naive_bound = row.phi_closed_form / 2.0;
  return row;
}

}  // namespace

std::vector<XAlphaScanRow> xalpha_scan(std::size_t n,
                                       const std::vector<double> &alphas,
                                       Transform transform, double base,
                                       std::size_t jobs) {
  const XAlphaFamily family(n, transform);
  std::vector<XAlphaScanRow> rows(alphas.size());
  jobs = std::max<std::size_t>(1, std::min(jobs, alphas.size()));
  if (jobs == 1) {
    for (std::size_t a = 0; a < alphas.size(); ++a)
      rows[a] = scan_point(family, alphas[a], base);
    return rows;
  }
  // strided split; each worker writes only its own slots
  std::vector<std::future<void>> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t a = w; a < alphas.size(); a += jobs)
        rows[a] = scan_point(family, alphas[a], base);
    }));
  }
  for (auto &f : workers) f.get();
  return rows;
}

void write_xalpha_csv(std::ostream &os,
                      const std::vector<XAlphaScanRow> &rows) {
  os << "n,alpha,phi_exact,phi_closed_form,gap,gap_over_2,naive_bound\n";
  for (const auto &r : rows) {
    os << r.n << ',' << format_double(r.alpha) << ','
       << format_double(r.phi_exact) << ','
       << format_double(r.phi_closed_form) << ',' << format_double(r.gap)
       << ',' << format_double(r.gap_over_2) << ','
       << format_double(r.naive_bound) << '\n';
  }
}

namespace {

std::vector<std::string> split_fields(const std::string &line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

CsvTable read_csv(std::istream &is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) {
    throw Error(ErrorCode::kParse, "empty CSV input");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split_fields(line);
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != table.header.size()) {
      throw Error(ErrorCode::kParse,
                  "CSV line " + std::to_string(lineno) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  os << text;
  os.flush();
  if (!os) throw Error(ErrorCode::kIo, "write failed: " + path);
}

}  // namespace potlab
