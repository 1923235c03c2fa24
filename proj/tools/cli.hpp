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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace potlab::cli {

enum class Command {
  kVerifyCircuit,
  kEntropyTrace,
  kXAlphaScan,
  kCompoundScan,
  kReduceDemo,
};

enum class CircuitKind { kFft, kWht };
enum class Format { kCsv, kJson };

// Exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitTolerance = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitResource = 4;

inline constexpr const char *kOutDirEnv = "POTLAB_OUT_DIR";

struct ExperimentConfig {
  Command command = Command::kVerifyCircuit;
  std::size_t n = 8;
  std::optional<std::size_t> k;
  std::optional<double> alpha;
  std::size_t alpha_steps = 9;
  CircuitKind kind = CircuitKind::kFft;
  std::optional<std::uint64_t> seed;
  double log_base = 2.0;
  std::optional<double> tol;
  std::optional<std::string> out;
  Format format = Format::kCsv;
  std::size_t cap = 5000;
  std::size_t jobs = 1;

  friend bool operator==(const ExperimentConfig &,
                         const ExperimentConfig &) = default;
};

struct ParseResult {
  std::optional<ExperimentConfig> config;  // empty when parsing stopped
  int exit_code = kExitPass;               // meaningful when config is empty
};

/// args excludes the program name. Usage errors and --help are reported on
/// `out` / `err` and leave config empty.
ParseResult parse_config(const std::vector<std::string> &args,
                         std::ostream &out, std::ostream &err);

/// Canonical flag list for cfg: subcommand first, then every flag that has
/// a value, in a fixed order. parse_config(to_args(cfg)) == cfg.
std::vector<std::string> to_args(const ExperimentConfig &cfg);

/// Accepts plain numbers and multiples of pi: "pi", "pi/4", "3*pi/8", "-pi/2".
double parse_angle(const std::string &text);

const char *command_name(Command c);
const char *kind_name(CircuitKind k);

/// Runs one subcommand; returns its exit code.
int run(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err);

/// parse_config + run.
int main_with_args(const std::vector<std::string> &args, std::ostream &out,
                   std::ostream &err);

}  // namespace potlab::cli
