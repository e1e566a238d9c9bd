// Copyright 2026 The tepir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tepir/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tepir/bounds.hpp"
#include "tepir/error.hpp"
#include "tepir/io.hpp"
#include "tepir/verify.hpp"

namespace tepir {
namespace {

const std::vector<std::string> kAllChecks = {"correctness", "system", "structural", "statistical"};

std::uint64_t parse_seed(const std::string& text, const std::string& source) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::kUsage, source + " is not a 64-bit unsigned integer: '" + text + "'");
  }
  return v;
}

struct Raw {
  std::optional<int> n, k, t, e;
  std::optional<std::uint64_t> q;
  std::optional<std::string> seed;
  std::string config_path;
  std::string sabotage = "none";
  std::vector<int> coalition;
};

// Missing numeric parameters are filled from a JSON config (keys n, k, t,
// e, q, seed); command-line values win.
void merge_config(Raw& raw) {
  if (raw.config_path.empty()) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(raw.config_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kUsage, raw.config_path + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kUsage, raw.config_path + ": expected an object");
  try {
    auto fill = [&](std::optional<int>& slot, const char* key) {
      if (!slot && j.contains(key)) slot = j[key].get<int>();
    };
    fill(raw.n, "n");
    fill(raw.k, "k");
    fill(raw.t, "t");
    fill(raw.e, "e");
    if (!raw.q && j.contains("q") && !j["q"].is_null()) raw.q = j["q"].get<std::uint64_t>();
    if (!raw.seed && j.contains("seed")) {
      raw.seed = j["seed"].is_string() ? j["seed"].get<std::string>()
                                       : std::to_string(j["seed"].get<std::uint64_t>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kUsage, raw.config_path + ": " + e.what());
  }
}

int require(const std::optional<int>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::kUsage, std::string("missing --") + flag);
  return *v;
}

void add_params(CLI::App* sub, Raw& raw, bool with_t = true) {
  sub->add_option("--n", raw.n, "number of databases N");
  sub->add_option("--k", raw.k, "number of files K");
  if (with_t) sub->add_option("--t", raw.t, "collusion size T");
  sub->add_option("--e", raw.e, "eavesdropped databases E");
  sub->add_option("--q", raw.q, "field modulus (prime, at least N^K + 1)");
  sub->add_option("--seed", raw.seed, "64-bit master seed (falls back to TEPIR_SEED)");
  sub->add_option("--config", raw.config_path, "JSON file with keys n, k, t, e, q, seed");
}

std::string yes_no(bool v) { return v ? "PASS" : "FAIL"; }

SchemeParams params_of(const RunConfig& c) { return derive(c.n, c.k, c.t, c.e, c.q); }

int run_command(const RunConfig& c, std::ostream& out) {
  const SchemeParams P = params_of(c);
  const Scheme scheme(P);
  const auto seeds = SessionSeeds::from_master(c.seed);
  Rng files = make_stream(seeds.message, "files");
  const MessageStore store = MessageStore::random(P, files);
  const auto res = run_retrieval(scheme, c.index - 1, store, seeds, c.sabotage);
  const bool ok = res.recovered == store.files[c.index - 1];
  if (!c.out.empty()) emit_transcript(c.out, res.transcript);
  if (c.json) {
    out << dump_json({{"command", "run"},
                      {"config", config_json(P)},
                      {"seed", c.seed},
                      {"sabotage", std::string(to_string(c.sabotage))},
                      {"rate", to_string(res.rate)},
                      {"secrecy", to_string(res.secrecy)},
                      {"file_length", P.l},
                      {"downloaded", res.transcript.answer_count()},
                      {"user_resamples", res.user.resamples},
                      {"desired_index_commitment", res.transcript.desired_index_commitment},
                      {"recovered", ok}});
  } else {
    out << "N=" << P.n << " K=" << P.k << " T=" << P.t << " E=" << P.e << " q=" << P.q << "\n"
        << "file length       " << P.l << "\n"
        << "downloaded        " << res.transcript.answer_count() << " symbols\n"
        << "rate              " << to_string(res.rate) << "\n"
        << "secrecy           " << to_string(res.secrecy) << "\n"
        << "recovered file " << c.index << "  " << (ok ? "ok" : "MISMATCH") << "\n";
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

int verify_command(const RunConfig& c, std::ostream& out) {
  const SchemeParams P = params_of(c);
  const Scheme scheme(P);
  std::vector<Report> reports;
  auto wanted = [&](const std::string& name) {
    return std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end();
  };
  if (wanted("correctness")) reports.push_back(verify_correctness(scheme, c.trials, c.seed, c.sabotage));
  if (wanted("system")) {
    auto generate = [&](std::uint64_t s) {
      const auto seeds = SessionSeeds::from_master(s);
      return scheme.start_session(0, seeds.user, c.sabotage).transcript;
    };
    reports.push_back(verify_system_privacy(scheme, generate, c.seed, c.seeds));
  }
  if (wanted("structural")) {
    Report merged{"user-privacy-structural", config_json(P), true, nlohmann::json::array()};
    for (int l = 0; l < P.k; ++l) {
      const auto seeds = SessionSeeds::from_master(c.seed + l);
      const auto one = verify_user_privacy_structural(
          scheme, scheme.make_user_state(l, seeds.user, c.sabotage));
      merged.pass = merged.pass && one.pass;
      merged.details.push_back({{"index", l + 1}, {"pass", one.pass}, {"report", one.details}});
    }
    reports.push_back(merged);
  }
  if (wanted("statistical")) {
    std::vector<int> coalition;
    for (int m : c.coalition) {
      if (m < 1 || m > P.n) throw Error(ErrorCode::kInvalidParameters, "--coalition member outside [1, N]");
      coalition.push_back(m - 1);
    }
    StatisticalOptions opt;
    opt.samples = c.samples;
    opt.projection_bits = c.projection_bits;
    opt.tolerance = c.tolerance;
    opt.seed = c.seed;
    opt.sabotage = c.sabotage;
    reports.push_back(verify_user_privacy_statistical(scheme, coalition, opt));
  }
  bool all = true;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    all = all && r.pass;
    arr.push_back(r.to_json());
  }
  if (!c.out.empty()) emit_report(c.out, arr);
  if (c.json) {
    out << dump_json(arr);
  } else {
    for (const auto& r : reports) out << r.check << "  " << yes_no(r.pass) << "\n";
  }
  return all ? kExitOk : kExitVerificationFailed;
}

int bounds_command(const RunConfig& c, std::ostream& out) {
  const BoundReport r = bound_report(c.n, c.k, c.t, c.e);
  if (c.json) {
    out << dump_json(bound_report_json(r));
    return kExitOk;
  }
  auto opt = [](const std::optional<Rational>& v) { return v ? to_string(*v) : std::string("-"); };
  out << "N=" << r.n << " K=" << r.k << " T=" << r.t << " E=" << r.e << "\n"
      << "outer bound       " << to_string(r.outer_bound) << "  (" << to_decimal(r.outer_bound)
      << ")\n"
      << "inner bound       " << to_string(r.inner_bound) << "  (" << to_decimal(r.inner_bound)
      << ")\n"
      << "gap               " << to_string(r.gap) << "\n"
      << "capacity (E>=T)   " << opt(r.capacity_e_ge_t) << "\n"
      << "secrecy lower     " << opt(r.secrecy_lower_bound) << "\n"
      << "secrecy achieved  " << opt(r.achieved_secrecy) << "\n";
  return kExitOk;
}

int figures_command(const RunConfig& c, std::ostream& out) {
  const auto rows = figure_sweep(c.figure, c.k);
  const std::string header = figure_header(c.figure);
  if (c.out.empty()) {
    out << sweep_csv(rows, header);
  } else {
    emit_csv(c.out, rows, header);
  }
  return kExitOk;
}

int all_collude_command(const RunConfig& c, std::ostream& out) {
  const SchemeParams P = params_of(c);
  const auto seeds = SessionSeeds::from_master(c.seed);
  Rng files = make_stream(seeds.message, "files");
  const MessageStore store = MessageStore::random(P, files);
  const auto res = run_all_collude(P, store, seeds.common);
  bool ok = true;
  for (int k = 0; k < P.k; ++k) ok = ok && res.recovered[k] == store.files[k];
  const Rational outer = outer_bound(P.n, P.k, P.t, P.e);
  const Rational inner = inner_bound(P.n, P.k, P.t, P.e);
  if (c.json) {
    out << dump_json({{"command", "all-collude"},
                      {"config", config_json(P)},
                      {"seed", c.seed},
                      {"rate", to_string(res.rate)},
                      {"outer_bound", to_string(outer)},
                      {"inner_bound", to_string(inner)},
                      {"recovered_all", ok}});
  } else {
    out << "N=" << P.n << " K=" << P.k << " T=" << P.t << " E=" << P.e << " q=" << P.q << "\n"
        << "rate              " << to_string(res.rate) << "\n"
        << "bounds            " << to_string(outer) << " / " << to_string(inner) << "\n"
        << "recovered all     " << (ok ? "ok" : "MISMATCH") << "\n";
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage: return kExitUsage;
    case ErrorCode::kIo: return kExitIo;
    case ErrorCode::kInvalidParameters:
    case ErrorCode::kNonPrimeModulus:
    case ErrorCode::kFieldTooSmall: return kExitInvalidParameters;
    default: return kExitVerificationFailed;
  }
}

RunConfig parse_args(int argc, const char* const* argv, std::optional<std::string> env_seed) {
  RunConfig c;
  Raw raw;
  std::string checks;
  CLI::App app{"Private retrieval with colluding databases and eavesdroppers", "tepir"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "retrieve one file and report the rate");
  add_params(run, raw);
  run->add_option("--index", c.index, "desired file, 1-based");
  run->add_option("--out", c.out, "write the transcript as JSON");
  run->add_option("--sabotage", raw.sabotage, "none|no-rotation|zero-randomness|singular-s|no-cancel");
  run->add_flag("--json", c.json, "machine-readable output");

  auto* verify = app.add_subcommand("verify", "check correctness and both privacy properties");
  add_params(verify, raw);
  verify->add_option("--trials", c.trials, "correctness trials per desired index");
  verify->add_option("--seeds", c.seeds, "seeds for the system-privacy sweep");
  verify->add_option("--samples", c.samples, "sessions per index for the statistical test");
  verify->add_option("--bits", c.projection_bits, "projection bits for the statistical test");
  verify->add_option("--tolerance", c.tolerance, "TV tolerance before sampling noise");
  verify->add_option("--coalition", raw.coalition, "1-based colluding databases (default 1..T)");
  verify->add_option("--checks", checks, "comma list of correctness,system,structural,statistical");
  verify->add_option("--sabotage", raw.sabotage, "none|no-rotation|zero-randomness|singular-s|no-cancel");
  verify->add_option("--out", c.out, "write the reports as JSON");
  verify->add_flag("--json", c.json, "machine-readable output");

  auto* bounds = app.add_subcommand("bounds", "evaluate the rate and secrecy bounds exactly");
  add_params(bounds, raw);
  bounds->add_flag("--json", c.json, "machine-readable output");

  auto* figures = app.add_subcommand("figures", "bound curves as CSV");
  figures->add_option("--fig", c.figure, "1: vary T (N=10, E=3); 2: vary E (N=10, T=7)")
      ->check(CLI::IsMember({1, 2}));
  figures->add_option("--k", raw.k, "number of files K");
  figures->add_option("--out", c.out, "CSV path (default stdout)");
  figures->add_flag("--json", c.json, "accepted for uniformity; CSV is always emitted");

  auto* all = app.add_subcommand("all-collude", "T = N scheme: download every file masked");
  add_params(all, raw);
  all->add_flag("--json", c.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help;
    std::ostringstream ignored;
    app.exit(e, help, ignored);
    c.help = help.str();
    return c;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::kUsage, e.what());
  }

  merge_config(raw);
  if (raw.seed) {
    c.seed = parse_seed(*raw.seed, "--seed");
  } else if (env_seed) {
    c.seed = parse_seed(*env_seed, "TEPIR_SEED");
  }
  c.q = raw.q;
  const auto sab = parse_sabotage(raw.sabotage);
  if (!sab) throw Error(ErrorCode::kUsage, "unknown sabotage mode '" + raw.sabotage + "'");
  c.sabotage = *sab;

  if (run->parsed()) c.subcommand = Subcommand::kRun;
  if (verify->parsed()) c.subcommand = Subcommand::kVerify;
  if (bounds->parsed()) c.subcommand = Subcommand::kBounds;
  if (figures->parsed()) c.subcommand = Subcommand::kFigures;
  if (all->parsed()) c.subcommand = Subcommand::kAllCollude;

  if (c.subcommand == Subcommand::kFigures) {
    c.k = require(raw.k, "k");
    if (c.k < 1) throw Error(ErrorCode::kInvalidParameters, "K must be at least 1");
    return c;
  }
  c.n = require(raw.n, "n");
  c.k = require(raw.k, "k");
  c.e = require(raw.e, "e");
  if (c.subcommand == Subcommand::kAllCollude) {
    c.t = raw.t.value_or(c.n);
    if (c.t != c.n) throw Error(ErrorCode::kInvalidParameters, "all-collude needs T = N");
  } else {
    c.t = require(raw.t, "t");
  }

  switch (c.subcommand) {
    case Subcommand::kBounds:
      bound_report(c.n, c.k, c.t, c.e);  // validates the region
      break;
    case Subcommand::kAllCollude:
      derive_shape(c.n, c.k, c.t, c.e);
      break;
    case Subcommand::kRun:
    case Subcommand::kVerify: {
      const SchemeShape s = derive_shape(c.n, c.k, c.t, c.e);
      if (s.all_collude()) {
        throw Error(ErrorCode::kInvalidParameters, "T = N is served by the all-collude command");
      }
      if (c.index < 1 || c.index > c.k) {
        throw Error(ErrorCode::kInvalidParameters, "--index must lie in [1, K]");
      }
      break;
    }
    case Subcommand::kFigures:
      break;
  }

  if (c.subcommand == Subcommand::kVerify) {
    if (checks.empty()) {
      c.checks = kAllChecks;
    } else {
      std::stringstream ss(checks);
      for (std::string item; std::getline(ss, item, ',');) {
        if (std::find(kAllChecks.begin(), kAllChecks.end(), item) == kAllChecks.end()) {
          throw Error(ErrorCode::kUsage, "unknown check '" + item + "'");
        }
        c.checks.push_back(item);
      }
    }
    if (raw.coalition.empty()) {
      for (int m = 1; m <= c.t; ++m) c.coalition.push_back(m);
    } else {
      c.coalition = raw.coalition;
    }
  }
  return c;
}

int execute(const RunConfig& c, std::ostream& out) {
  if (!c.help.empty()) {
    out << c.help;
    return kExitOk;
  }
  switch (c.subcommand) {
    case Subcommand::kRun: return run_command(c, out);
    case Subcommand::kVerify: return verify_command(c, out);
    case Subcommand::kBounds: return bounds_command(c, out);
    case Subcommand::kFigures: return figures_command(c, out);
    case Subcommand::kAllCollude: return all_collude_command(c, out);
  }
  return kExitUsage;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const char* env = std::getenv("TEPIR_SEED");
    const RunConfig c =
        parse_args(argc, argv, env ? std::optional<std::string>(env) : std::nullopt);
    return execute(c, out);
  } catch (const Error& e) {
    err << "tepir: " << e.what() << "\n";
    return exit_code(e.code());
  }
}

}  // namespace tepir
