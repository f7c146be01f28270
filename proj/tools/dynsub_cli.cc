// Copyright 2026 The Authors.
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

// Command-line front end over the dynsub C API.
//
//   dynsub run --algo card|matroid-half|matroid-amplified [options]
//   dynsub gen-stream --family bipartite|tree --seed S --out FILE
//   dynsub verify-hard --instance FILE
//   dynsub bench --sweep key=a,b,c [options]
//
// Exit status: 0 success, 2 invariant violation, 1 usage or other error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "dynsub/dynsub.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInvariant = 2;

int ExitFor(dsm_status status) {
  if (status == DSM_OK) return kExitOk;
  if (status == DSM_ERR_INVARIANT) return kExitInvariant;
  return kExitError;
}

int Report(dsm_status status) {
  if (status != DSM_OK) {
    std::cerr << "error: " << dsm_last_error() << "\n";
  }
  return ExitFor(status);
}

struct ParamsDeleter {
  void operator()(dsm_params* p) const { dsm_params_free(p); }
};
using ParamsPtr = std::unique_ptr<dsm_params, ParamsDeleter>;

// Flags shared by `run` and `bench`. Values left unset fall back to the
// config file, then to library defaults.
struct RunFlags {
  std::string config;
  std::optional<std::string> algo, mode, oracle, stream, matroid, opt_mode;
  std::optional<double> epsilon, opt;
  std::optional<long long> k, m, seed;
  std::vector<std::string> sets;
};

void AddRunFlags(CLI::App* cmd, RunFlags* f) {
  cmd->add_option("--config", f->config, "key = value config file");
  cmd->add_option("--algo", f->algo, "card | matroid-half | matroid-amplified");
  cmd->add_option("--epsilon", f->epsilon, "accuracy parameter");
  cmd->add_option("--k", f->k, "cardinality bound");
  cmd->add_option("--opt", f->opt, "known optimum handed to the algorithm");
  cmd->add_option("--mode", f->mode, "guided | exhaustive");
  cmd->add_option("--m", f->m, "stage count of the amplified run");
  cmd->add_option("--seed", f->seed, "run seed");
  cmd->add_option("--oracle", f->oracle,
                  "coverage file, instance descriptor, or random-coverage");
  cmd->add_option("--stream", f->stream, "stream file");
  cmd->add_option("--matroid", f->matroid, "partition matroid file");
  cmd->add_option("--opt-mode", f->opt_mode,
                  "auto | brute-force | greedy-bound | known");
  cmd->add_option("--set", f->sets, "extra key=value override (repeatable)");
}

dsm_status SetParam(dsm_params* p, const std::string& key,
                    const std::string& value) {
  return dsm_params_set(p, key.c_str(), value.c_str());
}

template <typename T>
std::string Text(const T& v) {
  if constexpr (std::is_same_v<T, std::string>) {
    return v;
  } else {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
  }
}

// Builds params: config file first, then explicit flags.
dsm_status BuildParams(const RunFlags& f, ParamsPtr* out) {
  ParamsPtr p(dsm_params_new());
  if (!p) return DSM_ERR_INTERNAL;
  dsm_status s = DSM_OK;
  if (!f.config.empty()) {
    s = dsm_params_load(p.get(), f.config.c_str());
    if (s != DSM_OK) return s;
  }
  auto put = [&](const char* key, const auto& opt) {
    if (s == DSM_OK && opt) s = SetParam(p.get(), key, Text(*opt));
  };
  put("algo", f.algo);
  put("epsilon", f.epsilon);
  put("k", f.k);
  put("opt", f.opt);
  put("mode", f.mode);
  put("m", f.m);
  put("seed", f.seed);
  put("oracle", f.oracle);
  put("stream", f.stream);
  put("matroid", f.matroid);
  put("opt_mode", f.opt_mode);
  for (const std::string& kv : f.sets) {
    if (s != DSM_OK) break;
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
      return DSM_ERR_USAGE;
    }
    s = SetParam(p.get(), kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (s == DSM_OK) *out = std::move(p);
  return s;
}

int CmdRun(const RunFlags& flags, const std::string& report,
           const std::string& format, bool summary) {
  ParamsPtr params;
  dsm_status s = BuildParams(flags, &params);
  if (s != DSM_OK) return Report(s);
  dsm_run* run = nullptr;
  s = dsm_run_execute(params.get(), &run);
  if (s != DSM_OK) return Report(s);
  std::unique_ptr<dsm_run, void (*)(dsm_run*)> guard(run, dsm_run_free);
  const char* text = nullptr;
  const bool to_stdout = report.empty() || report == "-";
  s = dsm_run_report(run, format.c_str(), to_stdout ? nullptr : report.c_str(),
                     &text);
  if (s != DSM_OK) return Report(s);
  if (to_stdout && text) std::cout << text;
  if (summary) {
    const size_t n = dsm_run_record_count(run);
    dsm_round_record last{};
    if (n > 0) dsm_run_get_record(run, n - 1, &last);
    std::cerr << "rounds=" << n << " value=" << last.value
              << " opt=" << last.opt << " ratio=" << last.ratio
              << " algorithm_queries=" << dsm_run_algorithm_queries(run)
              << "\n";
  }
  return kExitOk;
}

int CmdGenerate(const std::string& family, unsigned long long seed,
                const std::string& out, std::string descriptor,
                const std::vector<std::string>& kvs) {
  ParamsPtr params(dsm_params_new());
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --param expects key=value, got '" << kv << "'\n";
      return kExitError;
    }
    const dsm_status s =
        SetParam(params.get(), kv.substr(0, eq), kv.substr(eq + 1));
    if (s != DSM_OK) return Report(s);
  }
  if (descriptor.empty()) descriptor = out + ".json";
  uint64_t length = 0;
  const dsm_status s = dsm_generate(family.c_str(), params.get(), seed,
                                    out.c_str(), descriptor.c_str(), &length);
  if (s != DSM_OK) return Report(s);
  std::cout << "family=" << family << " ops=" << length << " stream=" << out
            << " descriptor=" << descriptor << "\n";
  return kExitOk;
}

int CmdVerify(const std::string& instance, const std::vector<std::string>& kvs) {
  ParamsPtr params(dsm_params_new());
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --param expects key=value, got '" << kv << "'\n";
      return kExitError;
    }
    const dsm_status s =
        SetParam(params.get(), kv.substr(0, eq), kv.substr(eq + 1));
    if (s != DSM_OK) return Report(s);
  }
  dsm_verify* v = nullptr;
  const dsm_status s = dsm_verify_instance(instance.c_str(), params.get(), &v);
  if (!v) return Report(s);
  std::unique_ptr<dsm_verify, void (*)(dsm_verify*)> guard(v, dsm_verify_free);
  std::cout << "family " << dsm_verify_family(v) << "\n";
  for (size_t i = 0; i < dsm_verify_check_count(v); ++i) {
    dsm_check c{};
    dsm_verify_get_check(v, i, &c);
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (c.detail && *c.detail) std::cout << "  " << c.detail;
    std::cout << "\n";
  }
  return Report(s);
}

int CmdBench(const RunFlags& flags, const std::string& sweep) {
  const auto eq = sweep.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == sweep.size()) {
    std::cerr << "error: --sweep expects key=a,b,c\n";
    return kExitError;
  }
  ParamsPtr params;
  dsm_status s = BuildParams(flags, &params);
  if (s != DSM_OK) return Report(s);
  const std::string key = sweep.substr(0, eq);
  const std::string values = sweep.substr(eq + 1);
  dsm_sweep* out = nullptr;
  s = dsm_sweep_execute(params.get(), key.c_str(), values.c_str(), &out);
  if (s != DSM_OK) return Report(s);
  std::unique_ptr<dsm_sweep, void (*)(dsm_sweep*)> guard(out, dsm_sweep_free);
  std::printf("%s,rounds,final_value,final_opt,final_ratio,min_ratio,"
              "q_total,q_per_round\n",
              key.c_str());
  for (size_t i = 0; i < dsm_sweep_row_count(out); ++i) {
    dsm_sweep_row r{};
    dsm_sweep_get_row(out, i, &r);
    std::printf("%s,%llu,%.17g,%.17g,%.17g,%.17g,%llu,%.17g\n", r.value,
                static_cast<unsigned long long>(r.rounds), r.final_value,
                r.final_opt, r.final_ratio, r.min_ratio,
                static_cast<unsigned long long>(r.q_total), r.q_per_round);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic submodular maximization toolkit"};
  app.require_subcommand(1);

  RunFlags run_flags;
  std::string report, format = "csv";
  bool summary = false;
  CLI::App* run = app.add_subcommand("run", "replay a stream through an algorithm");
  AddRunFlags(run, &run_flags);
  run->add_option("--report", report, "report path ('-' for stdout)");
  run->add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_flag("--summary", summary, "print a one-line summary to stderr");

  std::string family, out, descriptor;
  unsigned long long seed = 1;
  std::vector<std::string> gen_params;
  CLI::App* gen = app.add_subcommand("gen-stream", "generate a hard instance");
  gen->add_option("--family", family, "bipartite | tree")
      ->required()
      ->check(CLI::IsMember({"bipartite", "tree"}));
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out, "stream file")->required();
  gen->add_option("--descriptor", descriptor,
                  "descriptor file (default: <out>.json)");
  gen->add_option("--param", gen_params, "key=value (repeatable)");

  std::string instance;
  std::vector<std::string> verify_params;
  CLI::App* verify =
      app.add_subcommand("verify-hard", "check a hard-instance descriptor");
  verify->add_option("--instance", instance, "descriptor file")->required();
  verify->add_option("--param", verify_params,
                     "seed|sets|trials|leaves=value (repeatable)");

  RunFlags bench_flags;
  std::string sweep;
  CLI::App* bench = app.add_subcommand("bench", "parameter sweep");
  AddRunFlags(bench, &bench_flags);
  bench->add_option("--sweep", sweep, "key=a,b,c")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  if (run->parsed()) return CmdRun(run_flags, report, format, summary);
  if (gen->parsed()) {
    return CmdGenerate(family, seed, out, descriptor, gen_params);
  }
  if (verify->parsed()) return CmdVerify(instance, verify_params);
  if (bench->parsed()) return CmdBench(bench_flags, sweep);
  return kExitError;
}
