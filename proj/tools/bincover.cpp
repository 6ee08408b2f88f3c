// Command-line harness: run strategies, compute advice, solve optima,
// generate instances and check competitive bounds.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bincover/bincover.hpp"

namespace fs = std::filesystem;
using namespace bincover;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2, kBoundViolation = 3, kLimit = 4 };

constexpr const char* kBuiltinExample = "@example";

struct LoadedInstance {
  NormalizedInput input;
  std::string id;
};

LoadedInstance load_instance(const std::string& path) {
  if (path == kBuiltinExample) return {normalize_sequence(worked_example().values()), "example"};
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file " + path);
  const auto raw = read_instance(in);
  return {normalize_sequence(raw), fs::path(path).stem().string()};
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open certificate file " + path);
  return read_certificate(in);
}

void dump_covering(std::ostream& os, const Covering& c) {
  for (const auto& bin : c.bins) {
    os << "  bin " << bin.id() << " [" << to_string(bin.kind());
    if (bin.kind() == BinKind::TBin) os << ' ' << bin.t();
    os << "] load " << bin.load() << (bin.covered() ? " covered" : " open") << ":";
    for (const auto& item : bin.items()) os << ' ' << item.value << "@" << item.source_index;
    os << '\n';
  }
}

void emit_csv(const std::string& path, const std::vector<RunReport>& reports) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open csv file " + path);
  write_csv(out, reports);
}

StrategyKind parse_strategy(const std::string& s) {
  if (s == "dnf") return StrategyKind::Dnf;
  if (s == "dh") return StrategyKind::Dh;
  if (s == "adh") return StrategyKind::Adh;
  throw CLI::ValidationError("--strategy", "expected dnf, dh or adh");
}

std::vector<NamedInstance> instances_from_dir(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<NamedInstance> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    NamedInstance inst{f.stem().string(), normalize_sequence(read_instance(in)).sequence, std::nullopt};
    auto cert_path = f;
    cert_path.replace_extension(".cert");
    if (fs::exists(cert_path)) inst.certificate = load_certificate(cert_path.string());
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online bin covering with advice: strategies, oracle, exact optimum and bound checks"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run a strategy on an instance");
  std::string run_instance, run_strategy = "adh", run_tape, run_x, run_csv, run_cert;
  int run_k = 4;
  std::optional<std::int64_t> run_m;
  std::size_t run_limit = kDefaultOptLimit;
  bool run_dump = false, run_timing = false;
  run_cmd->add_option("instance", run_instance, "Instance file, or @example for the built-in example")->required();
  run_cmd->add_option("--strategy,-s", run_strategy, "dnf | dh | adh");
  run_cmd->add_option("--k", run_k, "Number of size classes");
  run_cmd->add_option("--tape", run_tape, "Read advice from a tape file");
  run_cmd->add_option("--m", run_m, "Explicit advice m");
  run_cmd->add_option("--x", run_x, "Explicit advice x_m (p/q or decimal)");
  run_cmd->add_option("--limit", run_limit, "Exact optimum size limit");
  run_cmd->add_option("--csv", run_csv, "Write a CSV report");
  run_cmd->add_option("--certificate", run_cert, "Certificate used to pin OPT (bundled for @example)");
  run_cmd->add_flag("--dump", run_dump, "Print the covering");
  run_cmd->add_flag("--timing", run_timing, "Fill the ms column");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Compute advice by sweeping m");
  std::string oracle_instance, oracle_tape;
  int oracle_k = 4;
  oracle_cmd->add_option("instance", oracle_instance, "Instance file or @example")->required();
  oracle_cmd->add_option("--k", oracle_k, "Number of size classes");
  oracle_cmd->add_option("--emit-tape,--tape", oracle_tape, "Write the advice tape (.bin for packed form)");

  // opt
  auto* opt_cmd = app.add_subcommand("opt", "Exact optimum or certificate verification");
  std::string opt_instance, opt_cert, opt_out;
  std::size_t opt_limit = kDefaultOptLimit;
  opt_cmd->add_option("instance", opt_instance, "Instance file or @example")->required();
  opt_cmd->add_option("--certificate", opt_cert, "Certificate to verify");
  opt_cmd->add_option("--limit", opt_limit, "Exact solver size limit");
  opt_cmd->add_option("--out", opt_out, "Write the optimal certificate");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  std::string gen_kind, gen_out, gen_cert_out, gen_big = "11/20", gen_small = "9/100", gen_min = "1/100",
                                               gen_max = "99/100";
  std::int64_t gen_n = 10, gen_den = 100;
  std::uint64_t gen_seed = 1;
  gen_cmd->add_option("kind", gen_kind, "example | tightness | random")->required();
  gen_cmd->add_option("--n", gen_n, "Tightness N or random length");
  gen_cmd->add_option("--big", gen_big, "Tightness big item");
  gen_cmd->add_option("--small", gen_small, "Tightness small item");
  gen_cmd->add_option("--min", gen_min, "Random lower value");
  gen_cmd->add_option("--max", gen_max, "Random upper value");
  gen_cmd->add_option("--den", gen_den, "Random denominator bound");
  gen_cmd->add_option("--seed", gen_seed, "Random seed");
  gen_cmd->add_option("--out", gen_out, "Output file (stdout if omitted)");
  gen_cmd->add_option("--certificate-out", gen_cert_out, "Write the known optimal certificate");

  // verify-bounds
  auto* vb_cmd = app.add_subcommand("verify-bounds", "Check competitive bounds over generated instances");
  std::string vb_gen = "random", vb_dir, vb_csv, vb_min = "1/100", vb_max = "99/100";
  std::vector<int> vb_ks{2, 3, 4};
  std::size_t vb_trials = 100, vb_limit = kDefaultOptLimit, vb_n_min = 4, vb_n_max = 12;
  std::int64_t vb_den = 100;
  std::uint64_t vb_seed = 1;
  bool vb_timing = false;
  vb_cmd->add_option("--gen", vb_gen, "random | tightness | example");
  vb_cmd->add_option("--dir", vb_dir, "Directory of .txt instances (optional .cert beside each)");
  vb_cmd->add_option("--k", vb_ks, "Size-class counts")->delimiter(',');
  vb_cmd->add_option("--trials", vb_trials, "Random instance count");
  vb_cmd->add_option("--seed", vb_seed, "Seed");
  vb_cmd->add_option("--n-min", vb_n_min, "Smallest n (tightness: smallest N)");
  vb_cmd->add_option("--n-max", vb_n_max, "Largest n (tightness: largest N)");
  vb_cmd->add_option("--min", vb_min, "Random lower value");
  vb_cmd->add_option("--max", vb_max, "Random upper value");
  vb_cmd->add_option("--den", vb_den, "Random denominator bound");
  vb_cmd->add_option("--limit", vb_limit, "Exact solver size limit");
  vb_cmd->add_option("--csv", vb_csv, "Write CSV of all reports");
  vb_cmd->add_flag("--timing", vb_timing, "Fill the ms column");

  // encode/decode advice
  auto* enc_cmd = app.add_subcommand("encode-advice", "Encode (m, x_m) onto an advice tape");
  std::uint64_t enc_m = 0;
  std::string enc_x = "1", enc_tape;
  enc_cmd->add_option("--m", enc_m, "Number of critical bins")->required();
  enc_cmd->add_option("--x", enc_x, "x_m as p/q or decimal");
  enc_cmd->add_option("--tape", enc_tape, "Write tape file (.bin for packed form)");

  auto* dec_cmd = app.add_subcommand("decode-advice", "Decode an advice tape");
  std::string dec_tape, dec_bits;
  dec_cmd->add_option("--tape", dec_tape, "Tape file");
  dec_cmd->add_option("bits", dec_bits, "ASCII bits instead of a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) {
      const auto loaded = load_instance(run_instance);
      const Sequence& seq = loaded.input.sequence;
      StrategyConfig config;
      config.kind = parse_strategy(run_strategy);
      config.k = run_k;
      std::optional<AdvicePayload> advice;
      const auto start = std::chrono::steady_clock::now();
      if (config.kind == StrategyKind::Adh) {
        if (!run_tape.empty()) {
          advice = decode_advice(load_tape(run_tape));
        } else if (run_m) {
          if (run_x.empty()) throw CLI::ValidationError("--x", "explicit advice needs both --m and --x");
          config.m = *run_m;
          config.x_m = parse_rational(run_x);
          advice = AdvicePayload{static_cast<std::uint64_t>(*run_m), config.x_m};
        } else {
          advice = compute_advice(seq, run_k).payload();
        }
        config.m = static_cast<std::int64_t>(advice->m);
        config.x_m = advice->x_m;
      }
      const Covering covering = with_prepacked(run(config, seq), loaded.input.prepacked);

      RunReport report;
      report.instance_id = loaded.id;
      report.n = seq.size();
      report.k = run_k;
      report.strategy = config.kind;
      report.advice = advice;
      report.covered = covering.covered_count;
      Sequence full = seq;
      for (const auto& b : loaded.input.prepacked)
        for (const auto& item : b.items()) full.items.push_back(item);
      std::optional<Certificate> cert;
      if (!run_cert.empty()) {
        cert = load_certificate(run_cert);
      } else if (run_instance == kBuiltinExample) {
        cert = worked_certificate();
      }
      const OptInfo opt = determine_opt(full, run_limit, cert);
      report.opt_kind = opt.kind;
      report.opt = opt.value;
      if (config.kind == StrategyKind::Adh) {
        report.bound = bound_spec_for(run_k);
        if (report.bound) report.bound_ok = check_bound(report.covered, report.opt, *report.bound);
      }
      if (run_timing)
        report.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                        .count();
      std::cout << describe(report) << '\n';
      if (!loaded.input.prepacked.empty())
        std::cout << "prepacked " << loaded.input.prepacked.size() << " bins for values >= 1 (counted in covered)\n";
      if (!loaded.input.discarded_zeros.empty())
        std::cout << "discarded " << loaded.input.discarded_zeros.size() << " zero values\n";
      if (run_dump) dump_covering(std::cout, covering);
      emit_csv(run_csv, {report});
      return kOk;
    }

    if (*oracle_cmd) {
      const auto loaded = load_instance(oracle_instance);
      const auto result = compute_advice(loaded.input.sequence, oracle_k);
      std::cout << "m " << result.m << "\nx_m " << result.x_m << "\ncovered " << result.covered << "\n";
      std::cout << "sweep\n  m  x_m  covered\n";
      for (const auto& e : result.sweep) std::cout << "  " << e.m << "  " << e.x_m << "  " << e.covered << '\n';
      const BitString tape = encode_advice(result.payload());
      std::cout << "tape " << tape.to_ascii() << " (" << tape.size() << " bits)\n";
      if (!oracle_tape.empty()) save_tape(oracle_tape, tape);
      return kOk;
    }

    if (*opt_cmd) {
      const auto loaded = load_instance(opt_instance);
      const Sequence& seq = loaded.input.sequence;
      const std::int64_t floor_bound = floor_load_bound(seq);
      if (!opt_cert.empty()) {
        const std::size_t c = verify_certificate(seq, load_certificate(opt_cert));
        if (static_cast<std::int64_t>(c) == floor_bound) {
          std::cout << "OPT = " << c << " (certificate " << c << " = floor bound " << floor_bound << ")\n";
          return kOk;
        }
        std::cout << "certificate " << c << " <= OPT <= floor bound " << floor_bound << '\n';
      }
      if (seq.size() > opt_limit) {
        std::cout << "bound-only: OPT <= " << floor_bound << " (n=" << seq.size() << " exceeds limit "
                  << opt_limit << ")\n";
        return kLimit;
      }
      const auto solved = opt_exact(seq, opt_limit);
      std::cout << "OPT = " << solved.count << " (exact, floor bound " << floor_bound << ")\n";
      write_certificate(std::cout, solved.certificate);
      if (!opt_out.empty()) {
        std::ofstream out(opt_out);
        write_certificate(out, solved.certificate);
      }
      return kOk;
    }

    if (*gen_cmd) {
      std::vector<Rational> values;
      std::optional<Certificate> cert;
      if (gen_kind == "example") {
        values = worked_example().values();
        cert = worked_certificate();
      } else if (gen_kind == "tightness") {
        const TightnessSpec spec{gen_n, parse_rational(gen_big), parse_rational(gen_small)};
        values = tightness_family(spec).values();
        cert = tightness_certificate(spec);
      } else if (gen_kind == "random") {
        RandomSpec spec{static_cast<std::size_t>(gen_n), parse_rational(gen_min), parse_rational(gen_max),
                        gen_den, gen_seed};
        values = random_instance(spec).values();
      } else {
        throw CLI::ValidationError("kind", "expected example, tightness or random");
      }
      if (gen_out.empty()) {
        write_instance(std::cout, values);
      } else {
        std::ofstream out(gen_out);
        write_instance(out, values);
      }
      if (!gen_cert_out.empty()) {
        if (!cert) throw CLI::ValidationError("--certificate-out", "random instances have no known certificate");
        std::ofstream out(gen_cert_out);
        write_certificate(out, *cert);
      }
      return kOk;
    }

    if (*vb_cmd) {
      std::vector<NamedInstance> instances;
      if (!vb_dir.empty()) {
        instances = instances_from_dir(vb_dir);
      } else if (vb_gen == "random") {
        RandomSuiteSpec spec;
        spec.trials = vb_trials;
        spec.seed = vb_seed;
        spec.n_min = vb_n_min;
        spec.n_max = vb_n_max;
        spec.value_min = parse_rational(vb_min);
        spec.value_max = parse_rational(vb_max);
        spec.denominator_bound = vb_den;
        instances = random_suite(spec);
      } else if (vb_gen == "tightness") {
        std::vector<std::int64_t> sizes;
        for (auto n = vb_n_min; n <= vb_n_max; ++n) sizes.push_back(static_cast<std::int64_t>(n));
        instances = tightness_suite(sizes);
      } else if (vb_gen == "example") {
        instances.push_back({"example", worked_example(), worked_certificate()});
      } else {
        throw CLI::ValidationError("--gen", "expected random, tightness or example");
      }
      VerifyOptions opts;
      opts.ks = vb_ks;
      opts.limit = vb_limit;
      opts.timing = vb_timing;
      const auto outcome = verify_bounds(instances, opts);
      emit_csv(vb_csv, outcome.reports);
      std::size_t bound_only = 0;
      for (const auto& r : outcome.reports) bound_only += r.opt_kind == OptKind::BoundOnly;
      std::cout << "instances " << instances.size() << ", runs " << outcome.reports.size() << ", identity checks "
                << outcome.identity_checks << ", bound-only runs " << bound_only << '\n';
      for (const auto& [k, q] : outcome.min_ratio) std::cout << "k=" << k << " min ratio " << q << '\n';
      for (const auto& v : outcome.violations) std::cout << "VIOLATION " << v << '\n';
      std::cout << (outcome.ok() ? "all bounds hold" : "violations found") << '\n';
      return outcome.ok() ? kOk : kBoundViolation;
    }

    if (*enc_cmd) {
      const AdvicePayload p{enc_m, parse_rational(enc_x)};
      const BitString tape = encode_advice(p);
      std::cout << tape.to_ascii() << '\n';
      if (!enc_tape.empty()) save_tape(enc_tape, tape);
      return kOk;
    }

    if (*dec_cmd) {
      BitString tape;
      if (!dec_tape.empty()) {
        tape = load_tape(dec_tape);
      } else if (!dec_bits.empty()) {
        tape = BitString::from_ascii(dec_bits);
      } else {
        throw CLI::ValidationError("decode-advice", "give --tape or bits");
      }
      TapeCursor cursor(tape);
      const auto p = decode_advice(cursor);
      std::cout << "m " << p.m << "\nx_m " << p.x_m << "\nbits read " << cursor.position() << '\n';
      return kOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const LimitExceeded& e) {
    std::cerr << "limit exceeded: " << e.what() << '\n';
    return kLimit;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}
