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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cli.hpp"

namespace potlab::cli {

namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_real(const std::string &text) {
  double v = 0.0;
  const char *first = text.data();
  const char *last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v)) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return v;
}

constexpr Command kCommands[] = {Command::kVerifyCircuit,
                                 Command::kEntropyTrace, Command::kXAlphaScan,
                                 Command::kCompoundScan, Command::kReduceDemo};

const char *command_help(Command c) {
  switch (c) {
    case Command::kVerifyCircuit:
      return "build an FFT/WHT rotation circuit and check it against the "
             "dense transform";
    case Command::kEntropyTrace:
      return "entropy potential along an FFT/WHT circuit (trace CSV or "
             "summary JSON)";
    case Command::kXAlphaScan:
      return "exact and closed-form potential of X_alpha over an angle grid";
    case Command::kCompoundScan:
      return "lifted potential through the order-k compound along a circuit";
    case Command::kReduceDemo:
      return "recover Fx from X_alpha applied to a zero-padded input";
  }
  return "";
}

// Raw flag text; converted after CLI11 has matched everything.
struct RawFlags {
  std::string n, k, alpha, alpha_steps, kind, seed, log_base, tol, out,
      format, cap, jobs;
};

void add_flags(CLI::App &sub, RawFlags &raw) {
  sub.add_option("--n", raw.n, "transform size n");
  sub.add_option("--k", raw.k, "compound order k");
  sub.add_option("--alpha", raw.alpha,
                 "angle in radians; accepts pi, pi/4, 3*pi/8");
  sub.add_option("--alpha-steps", raw.alpha_steps,
                 "grid points over [0, pi/2] (default 9)");
  sub.add_option("--kind", raw.kind, "circuit kind: fft or wht");
  sub.add_option("--seed", raw.seed, "random seed");
  sub.add_option("--log-base", raw.log_base, "logarithm base (default 2)");
  sub.add_option("--tol", raw.tol, "override the pass/fail tolerance");
  sub.add_option("--out", raw.out, "output path");
  sub.add_option("--format", raw.format, "csv or json");
  sub.add_option("--cap", raw.cap, "largest compound dimension (default 5000)");
  sub.add_option("--jobs", raw.jobs, "worker threads for grid scans");
}

std::size_t parse_count(const std::string &flag, const std::string &text) {
  std::size_t v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument(flag + " expects a nonnegative integer, got '" +
                                text + "'");
  }
  return v;
}

ExperimentConfig convert(Command command, const CLI::App &sub,
                         const RawFlags &raw) {
  ExperimentConfig cfg;
  cfg.command = command;
  auto given = [&](const char *flag) { return sub.count(flag) > 0; };
  if (given("--n")) cfg.n = parse_count("--n", raw.n);
  if (given("--k")) cfg.k = parse_count("--k", raw.k);
  if (given("--alpha")) cfg.alpha = parse_angle(raw.alpha);
  if (given("--alpha-steps"))
    cfg.alpha_steps = parse_count("--alpha-steps", raw.alpha_steps);
  if (given("--kind")) {
    if (raw.kind == "fft") cfg.kind = CircuitKind::kFft;
    else if (raw.kind == "wht") cfg.kind = CircuitKind::kWht;
    else throw std::invalid_argument("--kind must be fft or wht");
  }
  if (given("--seed")) cfg.seed = parse_count("--seed", raw.seed);
  if (given("--log-base")) cfg.log_base = parse_real(raw.log_base);
  if (given("--tol")) cfg.tol = parse_real(raw.tol);
  if (given("--out")) cfg.out = raw.out;
  if (given("--format")) {
    if (raw.format == "csv") cfg.format = Format::kCsv;
    else if (raw.format == "json") cfg.format = Format::kJson;
    else throw std::invalid_argument("--format must be csv or json");
  }
  if (given("--cap")) cfg.cap = parse_count("--cap", raw.cap);
  if (given("--jobs")) cfg.jobs = parse_count("--jobs", raw.jobs);
  return cfg;
}

}  // namespace

const char *command_name(Command c) {
  switch (c) {
    case Command::kVerifyCircuit: return "verify-circuit";
    case Command::kEntropyTrace: return "entropy-trace";
    case Command::kXAlphaScan: return "xalpha-scan";
    case Command::kCompoundScan: return "compound-scan";
    case Command::kReduceDemo: return "reduce-demo";
  }
  return "";
}

const char *kind_name(CircuitKind k) {
  return k == CircuitKind::kFft ? "fft" : "wht";
}

double parse_angle(const std::string &text) {
  const auto pos = text.find("pi");
  if (pos == std::string::npos) return parse_real(text);
  double scale = 1.0;
  std::string head = text.substr(0, pos);
  if (head == "-") {
    scale = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') {
      throw std::invalid_argument("bad angle '" + text + "'");
    }
    head.pop_back();
    scale = parse_real(head);
  }
  double value = scale * std::numbers::pi;
  const std::string tail = text.substr(pos + 2);
  if (!tail.empty()) {
    if (tail.front() != '/') {
      throw std::invalid_argument("bad angle '" + text + "'");
    }
    const double div = parse_real(tail.substr(1));
    if (div == 0.0) throw std::invalid_argument("angle divides by zero");
    value /= div;
  }
  return value;
}

ParseResult parse_config(const std::vector<std::string> &args,
                         std::ostream &out, std::ostream &err) {
  CLI::App app{"potlab: entropy-potential experiments on rotation circuits",
               "potlab"};
  app.require_subcommand(1);
  RawFlags raw;
  std::vector<std::pair<Command, CLI::App *>> subs;
  for (Command c : kCommands) {
    CLI::App *sub = app.add_subcommand(command_name(c), command_help(c));
    add_flags(*sub, raw);
    subs.emplace_back(c, sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kExitPass : kExitUsage};
  }
  try {
    for (auto &[command, sub] : subs) {
      if (sub->parsed()) return {convert(command, *sub, raw), kExitPass};
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return {std::nullopt, kExitUsage};
  }
  err << "error: no subcommand given\n";
  return {std::nullopt, kExitUsage};
}

std::vector<std::string> to_args(const ExperimentConfig &cfg) {
  std::vector<std::string> args{command_name(cfg.command)};
  auto push = [&](const char *flag, std::string value) {
    args.emplace_back(flag);
    args.push_back(std::move(value));
  };
  push("--n", std::to_string(cfg.n));
  if (cfg.k) push("--k", std::to_string(*cfg.k));
  if (cfg.alpha) push("--alpha", format_number(*cfg.alpha));
  push("--alpha-steps", std::to_string(cfg.alpha_steps));
  push("--kind", kind_name(cfg.kind));
  if (cfg.seed) push("--seed", std::to_string(*cfg.seed));
  push("--log-base", format_number(cfg.log_base));
  if (cfg.tol) push("--tol", format_number(*cfg.tol));
  if (cfg.out) push("--out", *cfg.out);
  push("--format", cfg.format == Format::kCsv ? "csv" : "json");
  push("--cap", std::to_string(cfg.cap));
  push("--jobs", std::to_string(cfg.jobs));
  return args;
}

int main_with_args(const std::vector<std::string> &args, std::ostream &out,
                   std::ostream &err) {
  ParseResult parsed = parse_config(args, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace potlab::cli
