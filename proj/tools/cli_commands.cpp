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

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "potlab/potlab.h"

namespace potlab::cli {

namespace {

// A failed library call or check, carrying the exit code to report.
struct CommandError {
  int exit_code;
  std::string message;
};

int exit_code_for(potlab_status status) {
  switch (status) {
    case POTLAB_ERR_IO: return kExitIo;
    case POTLAB_ERR_RESOURCE_LIMIT: return kExitResource;
    default: return kExitUsage;
  }
}

void check(potlab_status status) {
  if (status != POTLAB_OK) {
    throw CommandError{exit_code_for(status),
                       std::string(potlab_status_name(status)) + ": " +
                           potlab_last_error()};
  }
}

template <typename T, void (*Free)(T *)>
struct Deleter {
  void operator()(T *p) const noexcept { Free(p); }
};
using Matrix = std::unique_ptr<potlab_matrix,
                               Deleter<potlab_matrix, potlab_matrix_free>>;
using CircuitHandle =
    std::unique_ptr<potlab_circuit, Deleter<potlab_circuit, potlab_circuit_free>>;
using Trace =
    std::unique_ptr<potlab_trace, Deleter<potlab_trace, potlab_trace_free>>;
using Scan = std::unique_ptr<potlab_xalpha_scan,
                             Deleter<potlab_xalpha_scan, potlab_xalpha_scan_free>>;

std::string take_string(char *raw) {
  std::string s(raw);
  potlab_string_free(raw);
  return s;
}

CircuitHandle make_circuit(CircuitKind kind, std::size_t n) {
  potlab_circuit *c = nullptr;
  check(kind == CircuitKind::kFft ? potlab_circuit_fft(n, &c)
                                  : potlab_circuit_wht(n, &c));
  return CircuitHandle(c);
}

Matrix make_reference(CircuitKind kind, std::size_t n) {
  potlab_matrix *m = nullptr;
  check(kind == CircuitKind::kFft ? potlab_matrix_dft(n, &m)
                                  : potlab_matrix_wht(n, &m));
  return Matrix(m);
}

// Empty path means stdout.
std::string resolve_output(const ExperimentConfig &cfg,
                           const std::string &default_name) {
  if (cfg.out) return *cfg.out;
  if (const char *dir = std::getenv(kOutDirEnv); dir && *dir) {
    return (std::filesystem::path(dir) / default_name).string();
  }
  return {};
}

void emit(const std::string &path, const std::string &text,
          std::ostream &out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw CommandError{kExitIo, "cannot open " + path + " for writing"};
  os << text;
  os.flush();
  if (!os) throw CommandError{kExitIo, "write failed: " + path};
}

// Human-readable lines go to stderr when stdout carries data.
std::ostream &report_stream(const std::string &path, std::ostream &out,
                            std::ostream &err) {
  return path.empty() ? err : out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

int verify_circuit(const ExperimentConfig &cfg, std::ostream &out) {
  const std::size_t n = cfg.n;
  auto circuit = make_circuit(cfg.kind, n);
  auto reference = make_reference(cfg.kind, n);

  potlab_matrix *raw = nullptr;
  check(potlab_circuit_evaluate(circuit.get(), nullptr, &raw));
  Matrix product(raw);

  std::size_t steps = 0, swaps = 0, butterflies = 0;
  check(potlab_circuit_size(circuit.get(), &steps));
  for (std::size_t t = 0; t < steps; ++t) {
    potlab_step_kind kind{};
    check(potlab_circuit_step(circuit.get(), t, nullptr, nullptr, nullptr,
                              &kind));
    if (kind == POTLAB_STEP_SWAP) ++swaps;
    if (kind == POTLAB_STEP_BUTTERFLY) ++butterflies;
  }
  double distance = 0.0, defect = 0.0;
  check(potlab_frobenius_distance(product.get(), reference.get(), &distance));
  check(potlab_circuit_max_state_defect(circuit.get(), nullptr, &defect));

  const double tol = cfg.tol.value_or(1e-10 * static_cast<double>(n));
  const bool pass = distance <= tol && defect <= tol;
  out << "verify-circuit kind=" << kind_name(cfg.kind) << " n=" << n
      << " steps=" << steps << " swaps=" << swaps
      << " butterflies=" << butterflies << " distance=" << fmt(distance)
      << " max_state_defect=" << fmt(defect) << " tol=" << fmt(tol) << ' '
      << (pass ? "PASS" : "FAIL") << '\n';
  if (cfg.out) {
    std::ostringstream js;
    js << std::setprecision(17) << "{\"kind\":\"" << kind_name(cfg.kind)
       << "\",\"n\":" << n << ",\"steps\":" << steps << ",\"swaps\":" << swaps
       << ",\"butterflies\":" << butterflies << ",\"distance\":" << distance
       << ",\"max_state_defect\":" << defect << ",\"tol\":" << tol
       << ",\"pass\":" << (pass ? "true" : "false") << "}\n";
    emit(*cfg.out, js.str(), out);
  }
  return pass ? kExitPass : kExitTolerance;
}

int entropy_trace(const ExperimentConfig &cfg, std::ostream &out,
                  std::ostream &err) {
  auto circuit = make_circuit(cfg.kind, cfg.n);
  potlab_trace *raw = nullptr;
  check(potlab_potential_trace(circuit.get(), nullptr, cfg.log_base, &raw));
  Trace trace(raw);
  potlab_trace_summary s{};
  check(potlab_trace_summarize(trace.get(), &s));

  const bool json = cfg.format == Format::kJson;
  const std::string stem = std::string("trace_") + kind_name(cfg.kind) +
                           "_n" + std::to_string(cfg.n);
  const std::string path = resolve_output(cfg, stem + (json ? ".json" : ".csv"));
  char *text = nullptr;
  if (json) {
    check(potlab_trace_summary_json(trace.get(), kind_name(cfg.kind), &text));
    emit(path, take_string(text) + "\n", out);
  } else {
    check(potlab_trace_to_csv(trace.get(), &text));
    emit(path, take_string(text), out);
  }

  // per-step cap is 2 bits; other bases rescale it
  const double step_cap = 2.0 / std::log2(cfg.log_base);
  const double bound = (s.phi_end - s.phi_start) / step_cap;
  const bool pass = s.max_abs_delta <= step_cap + cfg.tol.value_or(1e-9);
  report_stream(path, out, err)
      << "entropy-trace kind=" << kind_name(cfg.kind) << " n=" << cfg.n
      << " steps=" << s.steps << " phi_final=" << fmt(s.phi_end)
      << " max_abs_delta=" << fmt(s.max_abs_delta)
      << " bound=" << fmt(bound) << " <= steps=" << s.steps << ' '
      << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitPass : kExitTolerance;
}

int xalpha_scan(const ExperimentConfig &cfg, std::ostream &out,
                std::ostream &err) {
  std::vector<double> alphas;
  if (cfg.alpha) {
    alphas.push_back(*cfg.alpha);
  } else {
    alphas.resize(cfg.alpha_steps);
    check(potlab_alpha_grid(cfg.alpha_steps, alphas.data()));
  }
  const potlab_transform transform = cfg.kind == CircuitKind::kFft
                                         ? POTLAB_TRANSFORM_DFT
                                         : POTLAB_TRANSFORM_WHT;
  potlab_xalpha_scan *raw = nullptr;
  check(potlab_xalpha_scan_run(cfg.n, alphas.data(), alphas.size(), transform,
                               cfg.log_base, cfg.jobs, &raw));
  Scan scan(raw);

  const double tol = cfg.tol.value_or(1e-9);
  double worst = 0.0;
  std::size_t rows = 0;
  check(potlab_xalpha_scan_length(scan.get(), &rows));
  for (std::size_t r = 0; r < rows; ++r) {
    potlab_xalpha_row row{};
    check(potlab_xalpha_scan_row(scan.get(), r, &row));
    worst = std::max(worst, std::abs(row.phi_exact - row.phi_closed_form));
  }

  const std::string path =
      resolve_output(cfg, "xalpha_n" + std::to_string(cfg.n) + ".csv");
  char *text = nullptr;
  check(potlab_xalpha_scan_to_csv(scan.get(), &text));
  emit(path, take_string(text), out);

  const bool pass = worst <= tol;
  report_stream(path, out, err)
      << "xalpha-scan n=" << cfg.n << " points=" << rows
      << " max_closed_form_error=" << fmt(worst) << ' '
      << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitPass : kExitTolerance;
}

int compound_scan(const ExperimentConfig &cfg, std::ostream &out,
                  std::ostream &err) {
  if (!cfg.k) throw CommandError{kExitUsage, "compound-scan needs --k"};
  const std::size_t k = *cfg.k;
  if (k == 0 || k > cfg.n) {
    throw CommandError{kExitUsage, "--k must lie in [1, n]"};
  }
  std::uint64_t dim = 0;
  check(potlab_binomial(cfg.n, k, &dim));
  if (dim > cfg.cap) {
    throw CommandError{kExitResource,
                       "C(" + std::to_string(cfg.n) + "," + std::to_string(k) +
                           ") = " + std::to_string(dim) + " exceeds --cap " +
                           std::to_string(cfg.cap)};
  }
  auto circuit = make_circuit(cfg.kind, cfg.n);
  potlab_trace *raw = nullptr;
  check(potlab_lifted_trace(circuit.get(), k, cfg.cap, cfg.log_base, &raw));
  Trace trace(raw);
  potlab_trace_summary s{};
  check(potlab_trace_summarize(trace.get(), &s));

  char *text = nullptr;
  check(potlab_trace_summary_json(trace.get(), kind_name(cfg.kind), &text));
  const std::string summary = take_string(text) + "\n";

  const std::string stem = std::string("compound_") + kind_name(cfg.kind) +
                           "_n" + std::to_string(cfg.n) + "_k" +
                           std::to_string(k);
  std::string path;
  if (cfg.format == Format::kJson) {
    path = resolve_output(cfg, stem + ".json");
    emit(path, summary, out);
  } else {
    path = resolve_output(cfg, stem + ".csv");
    check(potlab_trace_to_csv(trace.get(), &text));
    emit(path, take_string(text), out);
    if (!path.empty()) {
      emit(std::filesystem::path(path).replace_extension(".json").string(),
           summary, out);
    }
  }

  const bool pass =
      std::isfinite(s.phi_end) &&
      s.max_abs_delta <= s.structural_cap / std::log2(cfg.log_base) +
                             cfg.tol.value_or(1e-9);
  report_stream(path, out, err)
      << "compound-scan kind=" << kind_name(cfg.kind) << " n=" << cfg.n
      << " k=" << k << " compound_dim=" << s.compound_dim
      << " phi_lifted_end=" << fmt(s.phi_end)
      << " max_step_delta=" << fmt(s.max_abs_delta)
      << " structural_cap=" << fmt(s.structural_cap)
      << " implied_bound=" << fmt(s.implied_bound)
      << " implied_bound_structural=" << fmt(s.implied_bound_structural) << ' '
      << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitPass : kExitTolerance;
}

int reduce_demo(const ExperimentConfig &cfg, std::ostream &out) {
  if (!cfg.alpha) throw CommandError{kExitUsage, "reduce-demo needs --alpha"};
  const std::size_t n = cfg.n;
  const double alpha = *cfg.alpha;
  const std::uint64_t seed = cfg.seed.value_or(1);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(2 * n);
  for (double &v : x) v = gauss(rng);

  std::vector<double> y(2 * n);
  check(potlab_reduce_dft_via_xalpha(n, x.data(), alpha, POTLAB_TRANSFORM_DFT,
                                     y.data()));

  potlab_matrix *raw = nullptr;
  check(potlab_matrix_from_entries(n, 1, x.data(), &raw));
  Matrix column(raw);
  auto dft = make_reference(CircuitKind::kFft, n);
  check(potlab_matrix_multiply(dft.get(), column.get(), &raw));
  Matrix expected(raw);

  double error = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double re = 0.0, im = 0.0;
    check(potlab_matrix_get(expected.get(), i, 0, &re, &im));
    error = std::max(error, std::abs(std::complex<double>(y[2 * i] - re,
                                                          y[2 * i + 1] - im)));
  }
  const double tol = cfg.tol.value_or(1e-9 / std::abs(std::sin(alpha)));
  const bool pass = error <= tol;
  out << "reduce-demo n=" << n << " alpha=" << fmt(alpha) << " seed=" << seed
      << " max_error=" << fmt(error) << " tol=" << fmt(tol) << ' '
      << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitPass : kExitTolerance;
}

}  // namespace

int run(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err) {
  try {
    switch (cfg.command) {
      case Command::kVerifyCircuit: return verify_circuit(cfg, out);
      case Command::kEntropyTrace: return entropy_trace(cfg, out, err);
      case Command::kXAlphaScan: return xalpha_scan(cfg, out, err);
      case Command::kCompoundScan: return compound_scan(cfg, out, err);
      case Command::kReduceDemo: return reduce_demo(cfg, out);
    }
  } catch (const CommandError &e) {
    err << "error: " << e.message << '\n';
    return e.exit_code;
  }
  return kExitUsage;
}

}  // namespace potlab::cli
