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

#include "dynsub/dynsub.h"

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dynsub/branch_space.h"
#include "dynsub/cardinality.h"
#include "dynsub/counted_oracle.h"
#include "dynsub/coverage.h"
#include "dynsub/errors.h"
#include "dynsub/harness.h"
#include "dynsub/instance_io.h"
#include "dynsub/oracle_checks.h"

struct dsm_params {
  std::vector<std::pair<std::string, std::string>> entries;
};

struct dsm_oracle {
  std::unique_ptr<dynsub::CountedOracle> oracle;
};

struct dsm_card {
  std::unique_ptr<dynsub::ThresholdBucketGreedy> fixed;
  std::unique_ptr<dynsub::GuessLadder> ladder;
};

struct dsm_run {
  dynsub::RunConfig config;
  dynsub::RunResult result;
  std::string text;
};

struct dsm_sweep {
  std::vector<dynsub::SweepRow> rows;
};

struct dsm_verify {
  std::string family;
  std::vector<dynsub::CheckResult> checks;
};

namespace {

thread_local std::string last_error;

dsm_status Fail(dsm_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, mapping exceptions onto status codes.
template <typename F>
dsm_status Guard(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const dynsub::UsageError& e) {
    return Fail(DSM_ERR_USAGE, e.what());
  } catch (const dynsub::InvariantViolation& e) {
    return Fail(DSM_ERR_INVARIANT, e.what());
  } catch (const dynsub::IoError& e) {
    return Fail(DSM_ERR_IO, e.what());
  } catch (const dynsub::BranchBudgetError& e) {
    return Fail(DSM_ERR_BUDGET, e.what());
  } catch (const dynsub::EnumerationBudgetError& e) {
    return Fail(DSM_ERR_BUDGET, e.what());
  } catch (const std::domain_error& e) {
    return Fail(DSM_ERR_DOMAIN, e.what());
  } catch (const std::out_of_range& e) {
    return Fail(DSM_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return Fail(DSM_ERR_USAGE, e.what());
  } catch (const std::exception& e) {
    return Fail(DSM_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(DSM_ERR_INTERNAL, "unknown error");
  }
}

dsm_status NullArg(const char* name) {
  return Fail(DSM_ERR_USAGE, std::string("null argument: ") + name);
}

dynsub::RunConfig ConfigFrom(const dsm_params* params) {
  dynsub::RunConfig cfg;
  if (params) {
    for (const auto& [k, v] : params->entries) cfg.Set(k, v);
  }
  return cfg;
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

extern "C" {

const char* dsm_last_error(void) { return last_error.c_str(); }

const char* dsm_version(void) { return "1.0.0"; }

dsm_params* dsm_params_new(void) { return new (std::nothrow) dsm_params(); }

void dsm_params_free(dsm_params* p) { delete p; }

dsm_status dsm_params_set(dsm_params* p, const char* key, const char* value) {
  if (!p) return NullArg("params");
  if (!key || !value) return NullArg("key/value");
  return Guard([&] {
    for (auto& [k, v] : p->entries) {
      if (k == key) {
        v = value;
        return DSM_OK;
      }
    }
    p->entries.emplace_back(key, value);
    return DSM_OK;
  });
}

dsm_status dsm_params_load(dsm_params* p, const char* path) {
  if (!p) return NullArg("params");
  if (!path) return NullArg("path");
  return Guard([&] {
    std::ifstream in(path);
    if (!in) throw dynsub::IoError(std::string("cannot open config ") + path);
    for (const auto& [k, v] : dynsub::ParseKeyValues(in)) {
      dsm_params_set(p, k.c_str(), v.c_str());
    }
    return DSM_OK;
  });
}

size_t dsm_params_count(const dsm_params* p) {
  return p ? p->entries.size() : 0;
}

const char* dsm_params_key(const dsm_params* p, size_t i) {
  return p && i < p->entries.size() ? p->entries[i].first.c_str() : nullptr;
}

const char* dsm_params_value(const dsm_params* p, size_t i) {
  return p && i < p->entries.size() ? p->entries[i].second.c_str() : nullptr;
}

dsm_status dsm_oracle_open(const char* source, const dsm_params* params,
                           dsm_oracle** out) {
  if (!source) return NullArg("source");
  if (!out) return NullArg("out");
  *out = nullptr;
  return Guard([&] {
    dynsub::RunConfig cfg = ConfigFrom(params);
    cfg.oracle = source;
    cfg.stream.clear();
    cfg.matroid.clear();
    auto handle = std::make_unique<dsm_oracle>();
    handle->oracle =
        std::make_unique<dynsub::CountedOracle>(dynsub::LoadInputs(cfg).f);
    *out = handle.release();
    return DSM_OK;
  });
}

void dsm_oracle_free(dsm_oracle* o) { delete o; }

size_t dsm_oracle_ground_size(const dsm_oracle* o) {
  return o ? o->oracle->ground_size() : 0;
}

dsm_status dsm_oracle_eval(dsm_oracle* o, const uint32_t* set, size_t n,
                           double* value) {
  if (!o) return NullArg("oracle");
  if ((!set && n > 0) || !value) return NullArg("set/value");
  return Guard([&] {
    *value = o->oracle->Eval(std::span<const uint32_t>(set, n));
    return DSM_OK;
  });
}

uint64_t dsm_oracle_query_count(const dsm_oracle* o) {
  return o ? o->oracle->query_count() : 0;
}

dsm_status dsm_card_new(dsm_oracle* o, size_t k, double epsilon, double opt,
                        dsm_card** out) {
  if (!o) return NullArg("oracle");
  if (!out) return NullArg("out");
  *out = nullptr;
  return Guard([&] {
    auto handle = std::make_unique<dsm_card>();
    if (opt > 0.0) {
      handle->fixed = std::make_unique<dynsub::ThresholdBucketGreedy>(
          *o->oracle, k, epsilon, opt);
    } else {
      handle->ladder =
          std::make_unique<dynsub::GuessLadder>(*o->oracle, k, epsilon);
    }
    *out = handle.release();
    return DSM_OK;
  });
}

void dsm_card_free(dsm_card* c) { delete c; }

dsm_status dsm_card_insert(dsm_card* c, uint32_t element) {
  if (!c) return NullArg("card");
  return Guard([&] {
    c->fixed ? c->fixed->Insert(element) : c->ladder->Insert(element);
    return DSM_OK;
  });
}

double dsm_card_value(const dsm_card* c) {
  if (!c) return 0.0;
  return c->fixed ? c->fixed->value() : c->ladder->SolutionValue();
}

dsm_status dsm_card_solution(const dsm_card* c, uint32_t* ids, size_t cap,
                             size_t* n) {
  if (!c) return NullArg("card");
  if (!n || (!ids && cap > 0)) return NullArg("ids/n");
  return Guard([&] {
    const dynsub::ElementSet s =
        c->fixed ? c->fixed->solution() : c->ladder->Solution();
    *n = s.size();
    for (size_t i = 0; i < s.size() && i < cap; ++i) ids[i] = s[i];
    return DSM_OK;
  });
}

dsm_status dsm_run_execute(const dsm_params* params, dsm_run** out) {
  if (!out) return NullArg("out");
  *out = nullptr;
  return Guard([&] {
    auto handle = std::make_unique<dsm_run>();
    handle->config = ConfigFrom(params);
    handle->result = dynsub::RunStream(handle->config);
    *out = handle.release();
    return DSM_OK;
  });
}

void dsm_run_free(dsm_run* r) { delete r; }

size_t dsm_run_record_count(const dsm_run* r) {
  return r ? r->result.records.size() : 0;
}

dsm_status dsm_run_get_record(const dsm_run* r, size_t i, dsm_round_record* out) {
  if (!r || !out) return NullArg("run/out");
  if (i >= r->result.records.size()) {
    return Fail(DSM_ERR_USAGE, "record index out of range");
  }
  const auto& rec = r->result.records[i];
  out->t = rec.t;
  out->op = rec.op == dynsub::OpKind::kInsert ? 'I' : 'D';
  out->ground = rec.ground;
  out->value = rec.value;
  out->opt = rec.opt;
  out->ratio = rec.ratio;
  out->q_round = rec.q_round;
  out->q_total = rec.q_total;
  out->opt_is_bound = rec.opt_is_bound ? 1 : 0;
  return DSM_OK;
}

uint64_t dsm_run_algorithm_queries(const dsm_run* r) {
  return r ? r->result.algorithm_queries : 0;
}

uint64_t dsm_run_harness_queries(const dsm_run* r) {
  return r ? r->result.harness_queries : 0;
}

dsm_status dsm_run_report(dsm_run* r, const char* format, const char* path,
                          const char** text) {
  if (!r || !format) return NullArg("run/format");
  return Guard([&] {
    const std::string f = format;
    dynsub::ReportFormat fmt;
    if (f == "csv") {
      fmt = dynsub::ReportFormat::kCsv;
    } else if (f == "json") {
      fmt = dynsub::ReportFormat::kJson;
    } else {
      throw dynsub::UsageError("report format must be csv or json");
    }
    const auto echo = dynsub::ReportEcho(r->config, r->result);
    if (!path || std::string(path) == "-") {
      if (!text) throw dynsub::UsageError("null argument: text");
      r->text = dynsub::FormatReport(r->result.records, fmt, &echo);
      *text = r->text.c_str();
      return DSM_OK;
    }
    dynsub::EmitReport(r->result.records, fmt, path, &echo);
    if (text) *text = nullptr;
    return DSM_OK;
  });
}

dsm_status dsm_sweep_execute(const dsm_params* params, const char* key,
                             const char* values, dsm_sweep** out) {
  if (!key || !values || !out) return NullArg("key/values/out");
  *out = nullptr;
  return Guard([&] {
    auto handle = std::make_unique<dsm_sweep>();
    handle->rows =
        dynsub::RunSweep(ConfigFrom(params), key, SplitList(values));
    *out = handle.release();
    return DSM_OK;
  });
}

void dsm_sweep_free(dsm_sweep* s) { delete s; }

size_t dsm_sweep_row_count(const dsm_sweep* s) {
  return s ? s->rows.size() : 0;
}

dsm_status dsm_sweep_get_row(const dsm_sweep* s, size_t i, dsm_sweep_row* out) {
  if (!s || !out) return NullArg("sweep/out");
  if (i >= s->rows.size()) return Fail(DSM_ERR_USAGE, "row index out of range");
  const auto& row = s->rows[i];
  out->value = row.value.c_str();
  out->rounds = row.rounds;
  out->final_value = row.final_value;
  out->final_opt = row.final_opt;
  out->final_ratio = row.final_ratio;
  out->min_ratio = row.min_ratio;
  out->q_total = row.q_total;
  out->q_per_round = row.q_per_round;
  return DSM_OK;
}

dsm_status dsm_generate(const char* family, const dsm_params* params,
                        uint64_t seed, const char* stream_path,
                        const char* descriptor_path, uint64_t* stream_length) {
  if (!family || !stream_path || !descriptor_path) {
    return NullArg("family/stream_path/descriptor_path");
  }
  return Guard([&] {
    std::vector<std::pair<std::string, std::string>> kv;
    if (params) kv = params->entries;
    dynsub::GeneratedInstance g =
        dynsub::GenerateHardInstance(family, kv, seed);
    g.instance.stream_path = stream_path;
    dynsub::WriteStreamFile(g.stream, stream_path);
    dynsub::WriteInstanceFile(g.instance, descriptor_path);
    if (stream_length) *stream_length = g.stream.size();
    return DSM_OK;
  });
}

dsm_status dsm_verify_instance(const char* descriptor_path,
                               const dsm_params* params, dsm_verify** out) {
  if (!descriptor_path || !out) return NullArg("descriptor_path/out");
  *out = nullptr;
  return Guard([&] {
    dynsub::VerifyOptions opts;
    if (params) {
      for (const auto& [k, v] : params->entries) {
        std::size_t pos = 0;
        unsigned long long n = 0;
        try {
          n = std::stoull(v, &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos == 0 || pos != v.size()) {
          throw dynsub::UsageError("verify: '" + k + "' expects an integer");
        }
        if (k == "seed") {
          opts.seed = n;
        } else if (k == "sets") {
          opts.random_sets = n;
        } else if (k == "trials") {
          opts.submodular_trials = n;
        } else if (k == "leaves") {
          opts.max_leaves = n;
        } else {
          throw dynsub::UsageError("verify: unknown parameter '" + k + "'");
        }
      }
    }
    const dynsub::HardInstance inst = dynsub::ReadInstanceFile(descriptor_path);
    auto handle = std::make_unique<dsm_verify>();
    handle->family = inst.family();
    handle->checks = dynsub::VerifyInstance(inst, opts);
    bool ok = true;
    for (const auto& c : handle->checks) ok &= c.passed;
    *out = handle.release();
    return ok ? DSM_OK
              : Fail(DSM_ERR_INVARIANT, "hard-instance invariant check failed");
  });
}

void dsm_verify_free(dsm_verify* v) { delete v; }

size_t dsm_verify_check_count(const dsm_verify* v) {
  return v ? v->checks.size() : 0;
}

dsm_status dsm_verify_get_check(const dsm_verify* v, size_t i, dsm_check* out) {
  if (!v || !out) return NullArg("verify/out");
  if (i >= v->checks.size()) return Fail(DSM_ERR_USAGE, "check index out of range");
  out->name = v->checks[i].name.c_str();
  out->passed = v->checks[i].passed ? 1 : 0;
  out->detail = v->checks[i].detail.c_str();
  return DSM_OK;
}

const char* dsm_verify_family(const dsm_verify* v) {
  return v ? v->family.c_str() : "";
}

}  // extern "C"
