// Copyright 2026 The privmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// privmech: analyze, construct, certify and simulate finite privacy
// mechanisms.
//
// Exit codes: 0 success, 1 an applicable bound check failed, 2 usage,
// parse, validation or precondition error. Data goes to stdout (or
// --output), diagnostics to stderr.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "privmech/json_io.hpp"
#include "privmech/privmech.hpp"

namespace {

using privmech::Json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::uint64_t seed = 0;
  std::string output;
  std::string format;

  // channel input
  std::string input_path;
  std::string input_json;

  // construct
  std::string kind;

  // simulate / sweep
  std::int64_t k = 0;
  double alpha = 0;
  std::int64_t n = 0;
  std::vector<std::int64_t> n_grid;
  std::int64_t replicates = 1000;
  std::string source = "uniform";

  // bounds-check random mode
  std::string random_shape;
  std::int64_t count = 1;
  double concentration = 1.0;
};

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw privmech::Error(privmech::ErrorCode::kParseError,
                          "cannot open " + path);
  }
  return read_all(in);
}

privmech::Channel load_channel(const Options& opt) {
  std::string text;
  if (!opt.input_json.empty()) {
    text = opt.input_json;
  } else if (!opt.input_path.empty() && opt.input_path != "-") {
    text = read_file(opt.input_path);
  } else {
    text = read_all(std::cin);
  }
  return privmech::channel_from_json(privmech::parse_json(text));
}

privmech::Distribution load_source(const Options& opt) {
  if (opt.source == "uniform") return privmech::uniform_distribution(opt.k);
  const std::string text =
      opt.source.starts_with("@") ? read_file(opt.source.substr(1)) : opt.source;
  return privmech::distribution_from_json(privmech::parse_json(text));
}

Json stamp(Json body, std::uint64_t seed) {
  Json out;
  out["tool"] = "privmech";
  out["version"] = privmech::kVersion;
  out["seed"] = seed;
  for (auto& [key, value] : body.items()) out[key] = value;
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) {
        throw privmech::Error(privmech::ErrorCode::kInvalidArgument,
                              "cannot write " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void report_failed_checks() {
  std::cerr << "privmech: an applicable bound check FAILED. The inequalities "
               "are theorems, so this indicates either an implementation bug "
               "or a counterexample; please file the channel and seed.\n";
}

int cmd_analyze(const Options& opt) {
  const privmech::Channel w = load_channel(opt);
  const auto checks = privmech::run_all_checks(w);
  Json body;
  body["report"] = privmech::to_json(privmech::make_privacy_report(w));
  Json arr = Json::array();
  bool all_passed = true;
  for (const auto& c : checks) {
    arr.push_back(privmech::to_json(c));
    all_passed = all_passed && c.passed;
  }
  body["checks"] = std::move(arr);
  body["all_passed"] = all_passed;
  Output out(opt.output);
  out.stream() << stamp(std::move(body), opt.seed).dump(2) << '\n';
  if (!all_passed) {
    report_failed_checks();
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_construct(const Options& opt) {
  std::optional<privmech::Channel> w;
  if (opt.kind == "rr") {
    w = privmech::randomized_response(opt.k, opt.alpha);
  } else if (opt.kind == "z") {
    w = privmech::z_channel(opt.alpha);
  } else if (opt.kind == "staircase") {
    w = privmech::maxl_staircase(opt.k, opt.alpha);
  } else {
    throw privmech::Error(privmech::ErrorCode::kInvalidArgument,
                          "unknown mechanism kind '" + opt.kind + "'");
  }
  Json body = privmech::channel_to_json(*w);
  body["kind"] = opt.kind;
  if (opt.kind != "z") body["k"] = opt.k;
  body["alpha_bits"] = opt.alpha;
  Output out(opt.output);
  out.stream() << stamp(std::move(body), opt.seed).dump() << '\n';
  return kExitOk;
}

// Parses "RxC".
std::pair<std::int64_t, std::int64_t> parse_shape(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x != std::string::npos) {
      return {std::stoll(s.substr(0, x)), std::stoll(s.substr(x + 1))};
    }
  } catch (...) {
  }
  throw privmech::Error(privmech::ErrorCode::kInvalidArgument,
                        "shape must look like 4x5, got '" + s + "'");
}

int cmd_bounds_check(const Options& opt) {
  Output out(opt.output);
  bool all_passed = true;
  auto emit = [&](const privmech::Channel& w, Json extra) {
    for (const auto& c : privmech::run_all_checks(w)) {
      Json line = privmech::to_json(c);
      for (auto& [key, value] : extra.items()) line[key] = value;
      out.stream() << stamp(std::move(line), opt.seed).dump() << '\n';
      all_passed = all_passed && c.passed;
    }
  };
  if (!opt.random_shape.empty()) {
    const auto [rows, cols] = parse_shape(opt.random_shape);
    for (std::int64_t i = 0; i < opt.count; ++i) {
      const std::uint64_t channel_seed = privmech::derive_seed(opt.seed, i);
      const auto w = privmech::random_channel(rows, cols, opt.concentration,
                                              channel_seed);
      emit(w, Json{{"channel_index", i}, {"channel_seed", channel_seed}});
    }
  } else {
    emit(load_channel(opt), Json::object());
  }
  if (!all_passed) {
    report_failed_checks();
    return kExitCheckFailed;
  }
  return kExitOk;
}

Json risk_record(const Options& opt, std::int64_t n,
                 const privmech::RiskEstimate& r) {
  Json body;
  body["k"] = opt.k;
  body["alpha_bits"] = opt.alpha;
  body["n"] = n;
  const Json fields = privmech::to_json(r);
  for (auto& [key, value] : fields.items()) body[key] = value;
  return body;
}

// Turns a staircase precondition failure into a message naming the
// smallest usable k.
void check_staircase(const Options& opt) {
  if (opt.k >= 2 && opt.alpha > 0 && std::exp2(opt.alpha) > double(opt.k)) {
    throw privmech::Error(
        privmech::ErrorCode::kAlphaOutOfRange,
        "staircase mechanism needs 2^alpha <= k (alpha = " +
            privmech::format_double(opt.alpha) + " needs k >= " +
            std::to_string(std::int64_t(std::ceil(std::exp2(opt.alpha)))) +
            ")");
  }
}

int cmd_simulate(const Options& opt) {
  check_staircase(opt);
  const privmech::SimulationConfig cfg{opt.k, opt.alpha, opt.n,
                                       opt.replicates, opt.seed,
                                       load_source(opt)};
  if (opt.format == "csv") {
    const auto rows = privmech::scaling_sweep(
        opt.k, opt.alpha, std::vector<std::int64_t>{opt.n}, opt.replicates,
        opt.seed, cfg.source);
    Output out(opt.output);
    out.stream() << privmech::sweep_csv(rows);
    return kExitOk;
  }
  const privmech::RiskEstimate r = privmech::empirical_risk(cfg);
  Output out(opt.output);
  out.stream() << stamp(risk_record(opt, opt.n, r), opt.seed).dump(2) << '\n';
  return kExitOk;
}

int cmd_sweep(const Options& opt) {
  check_staircase(opt);
  const auto rows = privmech::scaling_sweep(opt.k, opt.alpha, opt.n_grid,
                                            opt.replicates, opt.seed,
                                            load_source(opt));
  Output out(opt.output);
  if (opt.format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(privmech::to_json(r));
    Json body;
    body["rows"] = std::move(arr);
    out.stream() << stamp(std::move(body), opt.seed).dump(2) << '\n';
  } else {
    out.stream() << privmech::sweep_csv(rows);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Contraction, LDP and maximal-leakage analysis of finite "
               "privacy mechanisms"};
  app.set_version_flag("--version", std::string(privmech::kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", opt.seed, "RNG seed, echoed into every output")
      ->capture_default_str();
  app.add_option("-o,--output", opt.output, "Output path (default stdout)");

  auto add_channel_input = [&](CLI::App* sub) {
    auto* path = sub->add_option("-i,--input", opt.input_path,
                                 "Channel JSON file ('-' for stdin)");
    auto* inline_json =
        sub->add_option("--json", opt.input_json, "Inline channel JSON");
    path->excludes(inline_json);
  };

  auto* analyze = app.add_subcommand("analyze", "Privacy report and bound checks for a channel");
  add_channel_input(analyze);

  auto* construct = app.add_subcommand("construct", "Emit a named mechanism as channel JSON");
  construct->add_option("kind", opt.kind, "rr | z | staircase")
      ->required()
      ->check(CLI::IsMember({"rr", "z", "staircase"}));
  construct->add_option("--k", opt.k, "Alphabet size (rr, staircase)");
  construct->add_option("--alpha", opt.alpha, "Privacy level in bits")
      ->required();

  auto* bounds = app.add_subcommand("bounds-check", "One JSON line per bound verdict");
  add_channel_input(bounds);
  auto* shape = bounds->add_option("--random", opt.random_shape,
                                   "Check seeded random channels of shape RxC");
  bounds->add_option("--count", opt.count, "Number of random channels")
      ->needs(shape)
      ->check(CLI::PositiveNumber);
  bounds->add_option("--concentration", opt.concentration,
                     "Dirichlet concentration for random rows")
      ->needs(shape)
      ->check(CLI::PositiveNumber);

  auto add_sim_flags = [&](CLI::App* sub) {
    sub->add_option("--k", opt.k, "Alphabet size")->required();
    sub->add_option("--alpha", opt.alpha, "MaxL budget in bits")->required();
    sub->add_option("--replicates", opt.replicates, "Monte Carlo replicates")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--source", opt.source,
                    "'uniform', inline distribution JSON, or @file")
        ->capture_default_str();
  };

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo risk of the staircase estimator");
  add_sim_flags(simulate);
  simulate->add_option("--n", opt.n, "Sample size")->required();
  simulate->add_option("--format", opt.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* sweep = app.add_subcommand("sweep", "Risk over a grid of sample sizes (CSV)");
  add_sim_flags(sweep);
  sweep->add_option("--n-grid", opt.n_grid, "Comma-separated sample sizes")
      ->required()
      ->delimiter(',');
  sweep->add_option("--format", opt.format, "csv | json")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(opt);
    if (*construct) return cmd_construct(opt);
    if (*bounds) return cmd_bounds_check(opt);
    if (*simulate) return cmd_simulate(opt);
    if (*sweep) return cmd_sweep(opt);
  } catch (const privmech::Error& e) {
    std::cerr << "privmech: " << e.what() << '\n';
    if (e.detail().minimal_n) {
      std::cerr << "privmech: minimal valid n = " << *e.detail().minimal_n
                << '\n';
    }
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "privmech: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
