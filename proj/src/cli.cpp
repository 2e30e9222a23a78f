// Copyright 2026 The grng Authors. All Rights Reserved.
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

#include "grng/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grng/error.hpp"
#include "grng/qkdmod.hpp"
#include "grng/sample_io.hpp"
#include "grng/stats.hpp"

namespace grng::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kAlgorithms = {"box-muller", "polar", "clt"};
const std::vector<std::string> kModes = {"reference", "pipeline"};

// Usage-level failures: the request itself is malformed.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed_text(const std::string& text) {
  std::string_view s = text;
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  }
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError("seed must be a 64-bit unsigned integer (decimal or 0x-hex), got '" + text + "'");
  }
  return v;
}

// Options shared by the generating subcommands.
struct GenOptions {
  std::string algo = "box-muller";
  std::string mode = "reference";
  unsigned k = 12;
  std::string seed = "1";
  std::string poly;

  void attach(CLI::App* app) {
    app->add_option("--algo", algo, "Transform")->check(CLI::IsMember(kAlgorithms))->capture_default_str();
    app->add_option("--mode", mode, "Precision mode")->check(CLI::IsMember(kModes))->capture_default_str();
    app->add_option("--k", k, "Uniforms per central-limit sample")
        ->check(CLI::Range(2u, 1u << 20))
        ->capture_default_str();
    app->add_option("--seed", seed, "Master seed (decimal or 0x-hex)")->envname("GRNG_SEED")->capture_default_str();
    app->add_option("--poly", poly, "LFSR feedback polynomial, e.g. x^32+x^8+x^5+x^2+1 or 0x100000125");
  }

  RunConfig config(std::size_t n, std::size_t shards, std::ostream& err) const {
    RunConfig c;
    c.algorithm = parse_algorithm(algo);
    c.mode = parse_precision_mode(mode);
    c.k = k;
    c.n = n;
    c.master_seed = parse_seed_text(seed);
    c.shards = shards;
    if (!poly.empty()) {
      c.taps = gf2::Poly::parse(poly);
      LfsrConfig lc{c.taps.degree(), c.taps, 1};
      lc.validate();
      if (!verify_primitive(lc)) {
        err << "warning: " << c.taps.to_string() << " is not primitive; LFSR periods will be short\n";
      }
    }
    return c;
  }
};

ordered_json consumption_json(const Consumption& c) {
  ordered_json j;
  j["outputs"] = c.outputs;
  j["uniforms"] = c.uniforms;
  j["proposals"] = c.proposals;
  j["rejected"] = c.rejected;
  return j;
}

ordered_json core_counts_json(const fp::CoreCounts& counts) {
  ordered_json j = ordered_json::object();
  for (std::size_t i = 0; i < fp::kCoreKindCount; ++i) {
    if (counts[i] != 0) j[std::string(fp::core_name(static_cast<fp::CoreKind>(i)))] = counts[i];
  }
  return j;
}

ordered_json run_metadata(const RunConfig& config, const RunOutput& run) {
  ordered_json j;
  j["algorithm"] = algorithm_id(config.algorithm);
  j["mode"] = precision_mode_id(config.mode);
  if (config.algorithm == Algorithm::kCentralLimit) j["k"] = config.k;
  j["n"] = config.n;
  j["seed"] = config.master_seed;
  j["shards"] = config.shards;
  j["lfsr"] = {{"taps", config.taps.to_string()}, {"taps_hex", config.taps.to_hex()}, {"order", config.taps.degree()}};
  j["lane_seeds"] = run.lane_seeds;
  j["consumption"] = consumption_json(run.consumption);
  if (config.mode == PrecisionMode::kPipeline) j["core_counts"] = core_counts_json(run.core_counts);
  return j;
}

// Writes `body` to the path (or `out` for "-") and the sidecar next to it
// (or to `err` when writing to stdout).
void emit(const std::string& path, const std::string& body, const ordered_json& meta, std::ostream& out,
          std::ostream& err) {
  if (path == "-") {
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.flush();
    err << meta.dump() << '\n';
    return;
  }
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::kIoError, "cannot open '" + path + "' for writing");
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!f) throw Error(Errc::kIoError, "failed writing '" + path + "'");
  }
  std::ofstream m(path + ".meta.json", std::ios::binary);
  if (!m) throw Error(Errc::kIoError, "cannot open '" + path + ".meta.json' for writing");
  m << meta.dump(2) << '\n';
}

void write_text(const std::string& path, const std::string& body, std::ostream& out) {
  if (path == "-") {
    out << body;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::kIoError, "cannot open '" + path + "' for writing");
  f << body;
  if (!f) throw Error(Errc::kIoError, "failed writing '" + path + "'");
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string test_label(const stats::TestReport& r) {
  switch (r.test) {
    case stats::TestKind::kChiSquare: return "Chi-Square (" + std::to_string(*r.dof + 1) + " bins)";
    case stats::TestKind::kAndersonDarling: return "Anderson-Darling";
    case stats::TestKind::kKolmogorovSmirnov: return "Kolmogorov-Smirnov";
  }
  return "?";
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

// --- subcommands -----------------------------------------------------------

struct GenCommand {
  GenOptions gen;
  std::size_t n = 0;
  std::size_t shards = 1;
  std::string format = "csv";
  std::string out_path = "-";

  void attach(CLI::App* app) {
    gen.attach(app);
    app->add_option("--n", n, "Number of samples")->required()->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));
    app->add_option("--shards", shards, "Independent worker streams")
        ->check(CLI::Range(std::size_t{1}, std::size_t{4096}))
        ->capture_default_str();
    app->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "bin"}))
        ->capture_default_str();
    app->add_option("--out", out_path, "Output path ('-' for stdout)")->capture_default_str();
  }

  void run(std::ostream& out, std::ostream& err) const {
    const RunConfig config = gen.config(n, shards, err);
    const RunOutput result = run_generation(config);
    const io::SampleFormat f = io::parse_format(format);
    std::ostringstream body;
    io::write_samples(body, result.values, f, config.mode);
    ordered_json meta = run_metadata(config, result);
    meta["format"] = format;
    emit(out_path, body.str(), meta, out, err);
  }
};

struct TestCommand {
  std::string input;
  std::vector<std::string> suite = {"chi2", "ad", "ks"};
  double alpha = stats::kDefaultAlpha;
  std::size_t bins = stats::kDefaultChiSquareBins;
  std::string format = "table";
  std::string out_path = "-";

  void attach(CLI::App* app) {
    app->add_option("input", input, "Sample file (csv, json or bin; '-' for stdin)")->required();
    app->add_option("--suite", suite, "Comma-separated subset of chi2,ad,ks")->delimiter(',')->capture_default_str();
    app->add_option("--alpha", alpha, "Significance level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app->add_option("--bins", bins, "Chi-square equal-probability bins")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20))
        ->capture_default_str();
    app->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
    app->add_option("--out", out_path, "Report path ('-' for stdout)")->capture_default_str();
  }

  void run(std::ostream& out, std::ostream&) const {
    std::vector<stats::TestKind> kinds;
    for (const auto& id : suite) {
      const auto kind = stats::parse_test_id(id);
      if (!kind) throw UsageError("unknown test '" + id + "' in --suite (expected chi2, ad, ks)");
      kinds.push_back(*kind);
    }
    if (kinds.empty()) throw UsageError("--suite is empty");
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
    const io::SampleSet samples = io::read_samples_file(input);
    std::vector<stats::TestReport> reports;
    for (const auto kind : kinds) {
      switch (kind) {
        case stats::TestKind::kChiSquare: reports.push_back(stats::chi_square_gof(samples.values, alpha, bins)); break;
        case stats::TestKind::kAndersonDarling: reports.push_back(stats::anderson_darling(samples.values, alpha)); break;
        case stats::TestKind::kKolmogorovSmirnov: reports.push_back(stats::kolmogorov_smirnov(samples.values, alpha)); break;
      }
    }
    std::string body;
    if (format == "json") {
      body = "[";
      for (std::size_t i = 0; i < reports.size(); ++i) body += (i ? "," : "") + reports[i].to_json();
      body += "]\n";
    } else {
      body = "# n = " + std::to_string(samples.values.size()) + ", alpha = " + fmt("%g", alpha) + "\n";
      body += pad("Test", 22) + pad("Null Hypothesis", 17) + pad("P Value", 12) + "Test Statistic\n";
      for (const auto& r : reports) {
        body += pad(test_label(r), 22) + pad(r.rejected ? "Rejected" : "Non-rejected", 17) +
                pad(r.p_value_text(), 12) + fmt("%.6g", r.statistic) + "\n";
      }
    }
    write_text(out_path, body, out);
  }
};

struct HistCommand {
  std::string input;
  std::size_t bins = 100;
  std::vector<double> range;
  std::string out_path = "-";

  void attach(CLI::App* app) {
    app->add_option("input", input, "Sample file (csv, json or bin; '-' for stdin)")->required();
    app->add_option("--bins", bins, "Number of equal-width bins")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24))
        ->capture_default_str();
    app->add_option("--range", range, "Histogram range lo,hi (default: sample min,max)")
        ->delimiter(',')
        ->expected(2);
    app->add_option("--out", out_path, "CSV path ('-' for stdout)")->capture_default_str();
  }

  void run(std::ostream& out, std::ostream& err) const {
    std::optional<std::pair<double, double>> r;
    if (!range.empty()) {
      if (!(range[0] < range[1])) throw UsageError("--range needs lo < hi");
      r = std::pair{range[0], range[1]};
    }
    const io::SampleSet samples = io::read_samples_file(input);
    const stats::Histogram h = stats::build_histogram(samples.values, bins, r);
    if (h.outside != 0) err << h.outside << " samples fell outside the histogram range\n";
    write_text(out_path, h.to_csv(), out);
  }
};

struct BenchCommand {
  GenOptions gen;
  std::size_t n = 1000000;
  std::vector<std::string> algos = kAlgorithms;
  std::vector<std::string> modes = kModes;
  std::string format = "table";

  void attach(CLI::App* app) {
    app->add_option("--n", n, "Samples per run")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40))->capture_default_str();
    app->add_option("--algos", algos, "Comma-separated algorithms")
        ->delimiter(',')
        ->check(CLI::IsMember(kAlgorithms))
        ->capture_default_str();
    app->add_option("--modes", modes, "Comma-separated precision modes")
        ->delimiter(',')
        ->check(CLI::IsMember(kModes))
        ->capture_default_str();
    app->add_option("--k", gen.k, "Uniforms per central-limit sample")->check(CLI::Range(2u, 1u << 20));
    app->add_option("--seed", gen.seed, "Master seed (decimal or 0x-hex)")->envname("GRNG_SEED");
    app->add_option("--format", format, "Report format")->check(CLI::IsMember({"table", "json"}));
  }

  void run(std::ostream& out, std::ostream& err) const {
    ordered_json rows = ordered_json::array();
    std::string table = pad("algorithm", 12) + pad("mode", 11) + pad("n", 10) + pad("seconds", 10) +
                        pad("samples/s", 12) + pad("uniforms/out", 14) + "cores per graph\n";
    for (const auto& a : algos) {
      for (const auto& m : modes) {
        GenOptions g = gen;
        g.algo = a;
        g.mode = m;
        const RunConfig config = g.config(n, 1, err);
        const auto t0 = std::chrono::steady_clock::now();
        const RunOutput run = run_generation(config);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double rate = static_cast<double>(n) / secs;
        const double upo = static_cast<double>(run.consumption.uniforms) / static_cast<double>(n);
        const auto graph = fp::static_core_counts(config.algorithm, config.k, true);
        std::string cores;
        for (std::size_t i = 0; i < fp::kCoreKindCount; ++i) {
          if (graph[i] == 0) continue;
          if (!cores.empty()) cores += ' ';
          cores += std::string(fp::core_name(static_cast<fp::CoreKind>(i))) + "=" + std::to_string(graph[i]);
        }
        table += pad(a, 12) + pad(m, 11) + pad(std::to_string(n), 10) + pad(fmt("%.3f", secs), 10) +
                 pad(fmt("%.4g", rate), 12) + pad(fmt("%.4f", upo), 14) + cores + "\n";
        ordered_json row;
        row["algorithm"] = a;
        row["mode"] = m;
        row["n"] = n;
        row["seconds"] = secs;
        row["samples_per_second"] = rate;
        row["uniforms_per_output"] = upo;
        row["consumption"] = consumption_json(run.consumption);
        row["graph_core_counts"] = core_counts_json(graph);
        if (config.mode == PrecisionMode::kPipeline) row["core_invocations"] = core_counts_json(run.core_counts);
        rows.push_back(row);
      }
    }
    if (format == "json") out << rows.dump(2) << '\n';
    else out << table;
  }
};

struct QuadratureCommand {
  GenOptions gen;
  std::size_t n = 0;
  double variance = 1.0;
  std::string format = "csv";
  std::string out_path = "-";

  void attach(CLI::App* app) {
    gen.attach(app);
    app->add_option("--n", n, "Number of (q, p) pairs")->required()->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));
    app->add_option("--variance", variance, "Modulation variance V (shot-noise units)")->capture_default_str();
    app->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app->add_option("--out", out_path, "Output path ('-' for stdout)")->capture_default_str();
  }

  void run(std::ostream& out, std::ostream& err) const {
    if (!(variance > 0.0) || !std::isfinite(variance)) throw UsageError("--variance must be finite and > 0");
    const RunConfig config = gen.config(2 * n, 1, err);
    const RunOutput run = run_generation(config);
    const auto pairs = qkd::quadrature_stream(run.values, qkd::ModulationConfig{variance, n});
    ordered_json meta = run_metadata(config, run);
    meta["pairs"] = n;
    meta["variance"] = variance;
    meta["format"] = format;
    emit(out_path, format == "json" ? qkd::to_json(pairs) : qkd::to_csv(pairs), meta, out, err);
  }
};

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument:
    case Errc::kBadPolynomial:
    case Errc::kBadSeed:
    case Errc::kZeroSeed:
      return kExitUsage;
    default:
      return kExitData;
  }
}

}  // namespace

RunOutput run_generation(const RunConfig& config) {
  if (config.shards == 0) throw Error(Errc::kInvalidArgument, "shard count must be >= 1");
  StreamOptions options;
  options.algorithm = config.algorithm;
  options.mode = config.mode;
  options.k = config.k;
  const std::size_t lanes = lanes_required(options);
  const auto seeds = derive_lane_seeds(config.master_seed, lanes * config.shards, config.taps.degree());

  struct ShardResult {
    std::vector<double> values;
    Consumption consumption;
    fp::CoreCounts cores;
  };
  std::vector<std::future<ShardResult>> jobs;
  RunOutput result;
  for (std::size_t s = 0; s < config.shards; ++s) {
    std::vector<std::uint64_t> shard_seeds(seeds.begin() + static_cast<std::ptrdiff_t>(s * lanes),
                                           seeds.begin() + static_cast<std::ptrdiff_t>((s + 1) * lanes));
    const std::size_t count = config.n / config.shards + (s < config.n % config.shards ? 1 : 0);
    result.lane_seeds.push_back(shard_seeds);
    jobs.push_back(std::async(std::launch::async, [options, taps = config.taps, shard_seeds, count] {
      GaussianStream gs(options, std::make_unique<LfsrSource>(taps, shard_seeds));
      ShardResult r;
      r.values = gs.generate(count);
      r.consumption = gs.consumption();
      r.cores = gs.core_counts();
      return r;
    }));
  }
  result.values.reserve(config.n);
  for (auto& job : jobs) {
    ShardResult r = job.get();
    result.values.insert(result.values.end(), r.values.begin(), r.values.end());
    result.consumption.outputs += r.consumption.outputs;
    result.consumption.uniforms += r.consumption.uniforms;
    result.consumption.proposals += r.consumption.proposals;
    result.consumption.rejected += r.consumption.rejected;
    for (std::size_t i = 0; i < fp::kCoreKindCount; ++i) result.core_counts[i] += r.cores[i];
  }
  return result;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"grng: LFSR-driven Gaussian random number generation and normality testing"};
  app.name("grng");
  app.require_subcommand(1);
  GenCommand gen;
  TestCommand test;
  HistCommand hist;
  BenchCommand bench;
  QuadratureCommand quad;
  auto* gen_app = app.add_subcommand("gen", "Generate Gaussian samples");
  auto* test_app = app.add_subcommand("test", "Run normality tests on a sample file");
  auto* hist_app = app.add_subcommand("hist", "Histogram a sample file as CSV");
  auto* bench_app = app.add_subcommand("bench", "Throughput per algorithm and precision mode");
  auto* quad_app = app.add_subcommand("quadrature", "Gaussian-modulated (q, p) quadrature pairs");
  gen.attach(gen_app);
  test.attach(test_app);
  hist.attach(hist_app);
  bench.attach(bench_app);
  quad.attach(quad_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_app) gen.run(out, err);
    else if (*test_app) test.run(out, err);
    else if (*hist_app) hist.run(out, err);
    else if (*bench_app) bench.run(out, err);
    else if (*quad_app) quad.run(out, err);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace grng::cli
