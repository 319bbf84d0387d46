#pragma once

// Benchmark sweeps over planted instances, one CSV row per instance.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "gcd_engine.hpp"
#include "instance.hpp"

namespace spgcd::bench {

inline constexpr const char* kCsvHeader = "suite,n,terms,degree,seed,wall_ms,retries,success";

struct BenchRow {
  std::string suite;
  int n = 0;
  std::size_t terms = 0;
  long degree = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0;
  int retries = 0;
  bool success = false;
  bool timed_out = false;
};

inline std::string format_row(const BenchRow& r) {
  char ms[64];
  std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
  return r.suite + "," + std::to_string(r.n) + "," + std::to_string(r.terms) + "," + std::to_string(r.degree) + "," +
         std::to_string(r.seed) + "," + ms + "," + std::to_string(r.retries) + "," + (r.success ? "true" : "false");
}

enum class Suite { terms, vars, degree };
enum class Preset { desk, full };

inline Suite parse_suite(const std::string& s) {
  if (s == "terms") return Suite::terms;
  if (s == "vars") return Suite::vars;
  if (s == "degree") return Suite::degree;
  throw invalid_input("unknown suite '" + s + "' (expected terms, vars or degree)");
}

inline std::string suite_name(Suite s) {
  switch (s) {
    case Suite::terms: return "terms";
    case Suite::vars: return "vars";
    case Suite::degree: return "degree";
  }
  return "";
}

inline Preset parse_preset(const std::string& s) {
  if (s == "desk") return Preset::desk;
  if (s == "full") return Preset::full;
  throw invalid_input("unknown preset '" + s + "' (expected desk or full)");
}

/// Values of the swept parameter.
inline std::vector<long> default_points(Suite s, Preset preset) {
  std::vector<long> v;
  switch (s) {
    case Suite::terms:
      if (preset == Preset::desk) return {2, 10, 20, 30, 50};
      for (long t = 2; t <= 152; t += 10) v.push_back(t);
      return v;
    case Suite::vars:
      if (preset == Preset::desk) return {1, 2, 4, 8, 16};
      return {1, 2, 3, 5, 10, 20, 50, 100, 150, 200};
    case Suite::degree:
      if (preset == Preset::desk) return {5, 100, 400, 1600};
      v.push_back(5);
      for (long d = 525; d <= 29525; d += 500) v.push_back(d);
      return v;
  }
  return v;
}

/// Fixed parameters per suite: (n, terms, degree) with the swept one replaced.
inline InstanceSpec point_spec(Suite s, long value, u64 p) {
  InstanceSpec spec;
  spec.p = p;
  switch (s) {
    case Suite::terms:
      spec.n = 6;
      spec.degree = 30;
      spec.terms = static_cast<std::size_t>(value);
      break;
    case Suite::vars:
      spec.n = static_cast<int>(value);
      spec.terms = 30;
      spec.degree = 100;
      break;
    case Suite::degree:
      spec.n = 6;
      spec.terms = 30;
      spec.degree = value;
      break;
  }
  return spec;
}

inline double default_time_limit_seconds(Suite s) { return s == Suite::degree ? 100.0 : 60.0; }

/// Engine settings used for sweeps: no field extension and linear term
/// growth, as in the original experiments.
inline GcdConfig bench_config(u64 p) {
  GcdConfig cfg;
  cfg.term_strategy = TermStrategy::linear;
  cfg.field_extension = FieldExtension::none;
  if (p == 10000019) cfg.omega = 6;
  return cfg;
}

/// One planted instance, timed end to end around the GCD call.
inline BenchRow run_instance(Suite suite, const InstanceSpec& spec, GcdConfig cfg) {
  BenchRow row;
  row.suite = suite_name(suite);
  row.n = spec.n;
  row.terms = spec.terms;
  row.degree = spec.degree;
  row.seed = spec.seed;
  auto inst = generate_instance(spec);
  cfg.seed = spec.seed;
  StageTrace trace;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto g = gcd(inst.field, inst.A, inst.B, cfg, &trace);
    row.success = sparse::equal(inst.field, g, inst.G);
  } catch (const gcd_failure& e) {
    row.success = false;
    row.timed_out = !e.retryable();
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  row.retries = trace.retries;
  return row;
}

struct SweepOptions {
  Suite suite = Suite::terms;
  std::vector<long> points;
  int instances = 5;
  double time_limit_s = 60;
  std::uint64_t seed = 1;
  u64 p = 10000019;
  int jobs = 1;
};

/// Runs the sweep, calling emit(row) in deterministic order.  A point with
/// an instance over the time limit ends the sweep.
template <class Emit>
void run_sweep(const SweepOptions& opt, Emit&& emit) {
  GcdConfig cfg = bench_config(opt.p);
  cfg.time_limit = std::chrono::milliseconds(static_cast<long long>(opt.time_limit_s * 1000));
  std::uint64_t next_seed = opt.seed;
  for (long value : opt.points) {
    std::vector<InstanceSpec> specs;
    for (int i = 0; i < opt.instances; ++i) {
      auto spec = point_spec(opt.suite, value, opt.p);
      spec.seed = next_seed++;
      specs.push_back(spec);
    }
    std::vector<BenchRow> rows(specs.size());
    const std::size_t jobs = static_cast<std::size_t>(std::max(1, opt.jobs));
    for (std::size_t start = 0; start < specs.size(); start += jobs) {
      const std::size_t stop = std::min(specs.size(), start + jobs);
      if (stop - start == 1) {
        rows[start] = run_instance(opt.suite, specs[start], cfg);
        continue;
      }
      std::vector<std::thread> pool;
      for (std::size_t i = start; i < stop; ++i)
        pool.emplace_back([&, i] { rows[i] = run_instance(opt.suite, specs[i], cfg); });
      for (auto& t : pool) t.join();
    }
    bool over = false;
    for (const auto& r : rows) {
      emit(r);
      over = over || r.timed_out || r.wall_ms > opt.time_limit_s * 1000;
    }
    if (over) break;
  }
}

}  // namespace spgcd::bench
