#pragma once

// Command-line front end: gcd, gen, bench, verify.  run_cli takes explicit
// streams so the commands can be driven in-process.
//
// Exit codes: 0 success, 1 usage or parse error, 2 GCD failure after
// retries, 3 verification failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "errors.hpp"
#include "gcd_engine.hpp"
#include "instance.hpp"
#include "oracle.hpp"
#include "polyfile.hpp"

namespace spgcd::cli {

enum exit_code : int { kOk = 0, kUsage = 1, kGcdFailure = 2, kVerifyFailure = 3 };

inline PolyFile read_polyfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open '" + path + "'");
  try {
    return parse_polyfile(in);
  } catch (const invalid_input& e) {
    throw invalid_input(path + ": " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw invalid_input("cannot write '" + path + "'");
  out << text;
}

inline std::optional<std::uint64_t> seed_from_env() {
  const char* s = std::getenv("SPGCD_SEED");
  if (!s || !*s) return std::nullopt;
  u64 v = 0;
  if (!detail::parse_u64(s, v)) throw invalid_input("SPGCD_SEED must be a nonnegative integer");
  return v;
}

inline TermStrategy parse_term_strategy(const std::string& s) {
  if (s == "linear") return TermStrategy::linear;
  if (s == "doubling") return TermStrategy::doubling;
  throw invalid_input("term strategy must be doubling or linear");
}

inline FieldExtension parse_extension(const std::string& s) {
  if (s == "formula") return FieldExtension::by_formula;
  if (s == "none") return FieldExtension::none;
  throw invalid_input("extension must be formula or none");
}

inline IsolationStrategy parse_isolation(const std::string& s) {
  if (s == "doubling") return IsolationStrategy::doubling;
  if (s == "full") return IsolationStrategy::full;
  throw invalid_input("isolation must be doubling or full");
}

struct GcdArgs {
  std::string file_a, file_b, output;
  double epsilon = 1e-3;
  std::optional<std::uint64_t> seed;
  std::optional<u64> omega;
  int retries = 3;
  std::string term_strategy = "linear";
  std::string extension = "formula";
  std::string isolation = "doubling";
  bool trace = false;
};

inline int cmd_gcd(const GcdArgs& args, std::ostream& out, std::ostream& err) {
  PolyFile a, b;
  GcdConfig cfg;
  try {
    a = read_polyfile(args.file_a);
    b = read_polyfile(args.file_b);
    if (a.field.characteristic() != b.field.characteristic())
      throw invalid_input("inputs use different primes (" + std::to_string(a.field.characteristic()) + " vs " +
                          std::to_string(b.field.characteristic()) + ")");
    if (a.poly.nvars != b.poly.nvars) throw invalid_input("inputs have different variable counts");
    cfg.epsilon = args.epsilon;
    cfg.seed = args.seed ? *args.seed : seed_from_env().value_or(0);
    cfg.max_retries = args.retries;
    cfg.term_strategy = parse_term_strategy(args.term_strategy);
    cfg.field_extension = parse_extension(args.extension);
    cfg.isolation_strategy = parse_isolation(args.isolation);
    cfg.omega = args.omega;
    if (!cfg.omega && a.field.characteristic() == 10000019) cfg.omega = 6;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  StageTrace trace;
  SparsePoly<PrimeField> g;
  try {
    g = gcd(a.field, a.poly, b.poly, cfg, &trace);
  } catch (const gcd_failure& e) {
    err << "gcd failed: " << e.what() << '\n';
    return kGcdFailure;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (args.trace) {
    err << "s =";
    for (auto v : trace.s) err << ' ' << v;
    err << "\nfield degrees: k=" << trace.base_degree << " r=" << trace.r << " m=" << trace.m
        << "\nlayers: " << trace.bounds.layers() << ", T=" << trace.bounds.T << "\nretries: " << trace.retries
        << "\nstage ms:";
    for (double ms : trace.stage_ms) err << ' ' << ms;
    err << '\n';
  }
  const std::string text = render_polyfile(a.field, g);
  if (args.output.empty() || args.output == "-") {
    out << text;
  } else {
    try {
      write_text(args.output, text);
    } catch (const error& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }
  }
  return kOk;
}

struct GenArgs {
  int n = 6;
  std::size_t terms = 30;
  long degree = 30;
  u64 p = 10000019;
  std::optional<std::uint64_t> seed;
  std::string out_prefix;
};

/// Writes <prefix>A.poly, <prefix>B.poly and <prefix>G.poly.
inline int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  try {
    InstanceSpec spec;
    spec.n = args.n;
    spec.terms = args.terms;
    spec.degree = args.degree;
    spec.p = args.p;
    spec.seed = args.seed ? *args.seed : seed_from_env().value_or(0);
    auto inst = generate_instance(spec);
    write_text(args.out_prefix + "A.poly", render_polyfile(inst.field, inst.A));
    write_text(args.out_prefix + "B.poly", render_polyfile(inst.field, inst.B));
    write_text(args.out_prefix + "G.poly", render_polyfile(inst.field, inst.G));
    out << "wrote " << args.out_prefix << "{A,B,G}.poly (#A=" << inst.A.size() << ", #B=" << inst.B.size()
        << ", #G=" << inst.G.size() << ")\n";
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

struct BenchArgs {
  std::string suite = "terms";
  std::string csv = "-";
  std::optional<double> time_limit;
  std::optional<std::string> points;
  int instances = 5;
  std::string preset = "desk";
  int jobs = 1;
  std::uint64_t seed = 1;
  u64 p = 10000019;
};

inline std::vector<long> parse_points(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    auto t = detail::tokens(tok);
    if (t.empty()) continue;
    u64 x = 0;
    if (t.size() != 1 || !detail::parse_u64(t[0], x)) throw invalid_input("bad sweep point '" + tok + "'");
    v.push_back(static_cast<long>(x));
  }
  return v;
}

inline int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  bench::SweepOptions opt;
  try {
    opt.suite = bench::parse_suite(args.suite);
    const auto preset = bench::parse_preset(args.preset);
    opt.points = args.points ? parse_points(*args.points) : bench::default_points(opt.suite, preset);
    opt.instances = args.instances;
    opt.time_limit_s = args.time_limit.value_or(bench::default_time_limit_seconds(opt.suite));
    opt.seed = args.seed;
    opt.p = args.p;
    opt.jobs = args.jobs;
    if (opt.instances < 1) throw invalid_input("instances must be positive");
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  std::ostream* csv = &out;
  if (args.csv != "-") {
    const bool fresh = !std::filesystem::exists(args.csv) || std::filesystem::file_size(args.csv) == 0;
    file.open(args.csv, std::ios::app);
    if (!file) {
      err << "error: cannot open '" << args.csv << "'\n";
      return kUsage;
    }
    if (fresh) file << bench::kCsvHeader << '\n' << std::flush;
    csv = &file;
  } else {
    out << bench::kCsvHeader << '\n';
  }
  try {
    bench::run_sweep(opt, [&](const bench::BenchRow& row) { *csv << bench::format_row(row) + "\n" << std::flush; });
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (!*csv) {
    err << "error: failed writing CSV\n";
    return kUsage;
  }
  return kOk;
}

struct VerifyArgs {
  std::string file_g, file_a, file_b;
};

inline int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  PolyFile g, a, b;
  try {
    g = read_polyfile(args.file_g);
    a = read_polyfile(args.file_a);
    b = read_polyfile(args.file_b);
    const u64 p = g.field.characteristic();
    if (a.field.characteristic() != p || b.field.characteristic() != p)
      throw invalid_input("files use different primes");
    if (a.poly.nvars != g.poly.nvars || b.poly.nvars != g.poly.nvars)
      throw invalid_input("files have different variable counts");
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  const PrimeField& f = g.field;
  if (g.poly.empty()) {
    out << "divisibility: FAIL (G is zero)\n";
    return kVerifyFailure;
  }
  const bool div_a = oracle::divides_exactly(f, g.poly, a.poly).has_value();
  const bool div_b = oracle::divides_exactly(f, g.poly, b.poly).has_value();
  out << "divisibility: " << (div_a && div_b ? "ok" : "FAIL") << " (G | A: " << (div_a ? "yes" : "no")
      << ", G | B: " << (div_b ? "yes" : "no") << ")\n";
  bool ok = div_a && div_b;
  if (oracle::within_budget(a.poly) && oracle::within_budget(b.poly)) {
    auto ref = oracle::dense_gcd(f, a.poly, b.poly);
    const bool agree = sparse::equal(f, ref, sparse::make_lex_monic(f, g.poly));
    out << "dense oracle: " << (agree ? "agrees" : "DISAGREES") << '\n';
    ok = ok && agree;
  } else {
    out << "dense oracle: skipped (outside budget), divisibility-only check\n";
  }
  return ok ? kOk : kVerifyFailure;
}

/// Parses argv-style arguments (args[0] is the program name) and runs the
/// selected command.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse multivariate polynomial GCD over prime fields", "spgcd"};
  app.require_subcommand(1);

  GcdArgs gcd_args;
  auto* gcd_cmd = app.add_subcommand("gcd", "GCD of two polynomial files");
  gcd_cmd->add_option("fileA", gcd_args.file_a, "first polynomial")->required();
  gcd_cmd->add_option("fileB", gcd_args.file_b, "second polynomial")->required();
  gcd_cmd->add_option("-o,--output", gcd_args.output, "output path (default: stdout)");
  gcd_cmd->add_option("--epsilon", gcd_args.epsilon, "failure tolerance in (0,1)")->capture_default_str();
  gcd_cmd->add_option("--seed", gcd_args.seed, "random seed (fallback: SPGCD_SEED, then 0)");
  gcd_cmd->add_option("--omega", gcd_args.omega, "primitive root of F_p (default: 6 for p=10000019, else searched)");
  gcd_cmd->add_option("--retries", gcd_args.retries, "retries after a failed attempt")->capture_default_str();
  gcd_cmd->add_option("--term-strategy", gcd_args.term_strategy, "doubling or linear")->capture_default_str();
  gcd_cmd->add_option("--extension", gcd_args.extension, "formula or none")->capture_default_str();
  gcd_cmd->add_option("--isolation", gcd_args.isolation, "doubling or full")->capture_default_str();
  gcd_cmd->add_flag("--trace", gcd_args.trace, "print stage details to stderr");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "generate a planted-GCD instance");
  gen_cmd->add_option("--n", gen_args.n, "number of variables")->capture_default_str();
  gen_cmd->add_option("--terms", gen_args.terms, "terms of G, A', B'")->capture_default_str();
  gen_cmd->add_option("--deg", gen_args.degree, "total degree bound")->capture_default_str();
  gen_cmd->add_option("--p", gen_args.p, "prime modulus")->capture_default_str();
  gen_cmd->add_option("--seed", gen_args.seed, "random seed (fallback: SPGCD_SEED, then 0)");
  gen_cmd->add_option("--out-prefix", gen_args.out_prefix, "output prefix")->required();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "benchmark sweep to CSV");
  bench_cmd->add_option("--suite", bench_args.suite, "terms, vars or degree")->capture_default_str();
  bench_cmd->add_option("--csv", bench_args.csv, "CSV path, appended to ('-' for stdout)")->capture_default_str();
  bench_cmd->add_option("--time-limit", bench_args.time_limit, "seconds per instance (default 60, degree 100)");
  bench_cmd->add_option("--points", bench_args.points, "comma-separated sweep values (overrides preset)");
  bench_cmd->add_option("--instances", bench_args.instances, "instances per point")->capture_default_str();
  bench_cmd->add_option("--preset", bench_args.preset, "desk or full")->capture_default_str();
  bench_cmd->add_option("--jobs", bench_args.jobs, "parallel instances")->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.seed, "first instance seed")->capture_default_str();
  bench_cmd->add_option("--p", bench_args.p, "prime modulus")->capture_default_str();

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "check that G divides A and B");
  verify_cmd->add_option("fileG", verify_args.file_g)->required();
  verify_cmd->add_option("fileA", verify_args.file_a)->required();
  verify_cmd->add_option("fileB", verify_args.file_b)->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }

  if (*gcd_cmd) return cmd_gcd(gcd_args, out, err);
  if (*gen_cmd) return cmd_gen(gen_args, out, err);
  if (*bench_cmd) return cmd_bench(bench_args, out, err);
  return cmd_verify(verify_args, out, err);
}

}  // namespace spgcd::cli
