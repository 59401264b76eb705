// Command-line front end. Kept in a header so the test suite can drive it
// in-process.
//
// Exit status: 0 success, 1 runtime or I/O failure, 2 invalid arguments,
// 3 a report was produced but its verdict is "fail".
#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "charlaw/batch.hpp"
#include "charlaw/haar.hpp"
#include "charlaw/laws.hpp"
#include "charlaw/product_laws.hpp"
#include "charlaw/report.hpp"

namespace charlaw::cli {

struct RunConfig {
  std::string command;
  std::size_t n = 8;
  std::size_t n_small = 100;
  std::size_t count = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string sampler;
  std::string test;
  std::string left;
  std::string right;
  std::size_t n_right = 0;
  std::vector<double> t_grid;
  double level = 1e-3;
  std::string out = "-";
  std::string format = "csv";
};

inline void to_json(json& j, const RunConfig& c) {
  j = json{{"command", c.command}, {"n", c.n},         {"count", c.count},   {"seed", c.seed},
           {"workers", c.workers}, {"level", c.level}, {"format", c.format}, {"out", c.out}};
  if (c.command == "sample") j["sampler"] = c.sampler;
  if (c.command == "compare") {
    j["test"] = c.test;
    if (!c.left.empty()) j["left"] = c.left;
    if (!c.right.empty()) j["right"] = c.right;
    if (c.n_right) j["n_right"] = c.n_right;
  }
  if (c.command == "clt") j["n_small"] = c.n_small;
  if (c.command == "process") j["t_grid"] = c.t_grid;
}

class CliError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::vector<double> parse_tgrid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double t = 0.0;
    try {
      t = std::stod(item, &used);
    } catch (const std::exception&) {
      throw CliError("--tgrid: cannot parse '" + item + "'");
    }
    if (used != item.size()) throw CliError("--tgrid: cannot parse '" + item + "'");
    if (!(t >= 0.0 && t < 1.0)) throw CliError("--tgrid: values must lie in [0, 1)");
    if (!grid.empty() && !(t > grid.back())) throw CliError("--tgrid: values must be strictly increasing");
    grid.push_back(t);
  }
  if (grid.empty()) throw CliError("--tgrid: empty grid");
  return grid;
}

namespace detail {

// Writes `body` to path, or stdout for "-".
template <typename Body>
void emit(const std::string& path, std::ostream& stdout_stream, Body body) {
  if (path == "-") {
    body(stdout_stream);
    stdout_stream.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  body(file);
  file.flush();
  if (!file) throw std::runtime_error("write failed: " + path);
}

inline int emit_report(const RunConfig& cfg, const TestReport& report, std::ostream& out) {
  json j = report;
  j["metadata"]["config"] = cfg;
  emit(cfg.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return report.pass ? 0 : 3;
}

inline std::string comparison_help() {
  std::string s = "Comparison: one of";
  for (const auto& c : named_comparisons()) s += "\n  " + c.name + ": " + c.description;
  s += "\n  custom: --left/--right sampler ids";
  return s;
}

inline std::string sampler_help() {
  std::string s = "Sampler id: one of";
  for (const auto& [id, info] : sampler_registry()) s += "\n  " + id + ": " + info.description;
  return s;
}

inline double seconds_per_call(std::size_t calls, const std::function<void()>& f) {
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < calls; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / static_cast<double>(calls);
}

}  // namespace detail

/// Wall-time per sample of det(Id - G) through Ginibre QR + LU versus the O(n)
/// product sampler.
inline json run_bench(std::size_t n, std::size_t matrix_samples, std::size_t product_samples, std::uint64_t seed) {
  RngStream rng_matrix = RngStream(seed).substream(0);
  RngStream rng_product = RngStream(seed).substream(1);
  Complex sink_matrix{}, sink_product{};
  const double t_matrix = detail::seconds_per_call(matrix_samples, [&] {
    sink_matrix += det_id_minus(sample_haar_unitary_ginibre(n, rng_matrix));
  });
  const double t_product = detail::seconds_per_call(product_samples, [&] {
    sink_product += sample_unitary_product(n, rng_product);
  });
  return json{{"n", n},
              {"matrix_path", {{"samples", matrix_samples}, {"seconds_per_sample", t_matrix}}},
              {"product_path", {{"samples", product_samples}, {"seconds_per_sample", t_product}}},
              {"speedup", t_matrix / t_product},
              {"checksum", {std::abs(sink_matrix), std::abs(sink_product)}}};
}

inline int execute(const RunConfig& cfg, std::ostream& out) {
  if (cfg.count < 1) throw CliError("--count must be at least 1");
  if (cfg.n < 1) throw CliError("--n must be at least 1");

  if (cfg.command == "sample") {
    const SampleBatch batch = generate_batch(cfg.sampler, cfg.n, cfg.count, cfg.seed, cfg.workers);
    if (cfg.format == "json") {
      json values = json::array();
      for (const auto& z : batch.values) values.push_back({z.real(), z.imag()});
      json j{{"sampler_id", batch.sampler_id}, {"n", batch.n}, {"seed", batch.seed},
             {"count", batch.count()},        {"values", values}, {"config", cfg}};
      detail::emit(cfg.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    } else {
      detail::emit(cfg.out, out, [&](std::ostream& os) { write_batch_csv(os, batch.values); });
    }
    return 0;
  }

  if (cfg.command == "compare") {
    ComparisonDescriptor d;
    if (cfg.test == "custom") {
      if (cfg.left.empty() || cfg.right.empty()) throw CliError("compare custom needs --left and --right");
      d = {"custom", cfg.left, cfg.right, cfg.n, cfg.n, cfg.count, cfg.seed, cfg.level, cfg.workers, false, true};
      find_sampler(cfg.left);
      find_sampler(cfg.right);
    } else {
      d = make_descriptor(cfg.test, cfg.n, cfg.count, cfg.seed, cfg.level, cfg.workers);
    }
    if (cfg.n_right) d.n_right = cfg.n_right;
    return detail::emit_report(cfg, compare_laws(d), out);
  }

  if (cfg.command == "cycles") return detail::emit_report(cfg, cycle_count_report(cfg.n, cfg.count, cfg.seed, cfg.workers), out);

  if (cfg.command == "clt") {
    if (cfg.n_small < 1 || cfg.n_small > cfg.n) throw CliError("clt needs 1 <= --n-small <= --n");
    if (cfg.count < 2) throw CliError("clt needs --count >= 2");
    return detail::emit_report(
        cfg, variance_scaling_report(cfg.n_small, cfg.n, cfg.count, cfg.seed, cfg.workers, 0.1, cfg.level), out);
  }

  if (cfg.command == "process") {
    const auto paths = generate_parallel<LogProcessPath>(
        cfg.count, cfg.seed, cfg.workers, [&](RngStream& rng) { return sample_log_process(cfg.n, cfg.t_grid, rng); });
    if (cfg.format == "json") {
      json j{{"n", cfg.n}, {"t_grid", cfg.t_grid}, {"paths", json::array()}, {"config", cfg}};
      for (const auto& p : paths) {
        json row = json::array();
        for (const auto& v : p.values) row.push_back({v.real(), v.imag()});
        j["paths"].push_back(row);
      }
      detail::emit(cfg.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    } else {
      detail::emit(cfg.out, out, [&](std::ostream& os) {
        os << "path,t,re,im\n" << std::setprecision(17);
        for (std::size_t i = 0; i < paths.size(); ++i)
          for (std::size_t k = 0; k < paths[i].values.size(); ++k)
            os << i << ',' << paths[i].t_grid[k] << ',' << paths[i].values[k].real() << ','
               << paths[i].values[k].imag() << '\n';
      });
    }
    return 0;
  }

  if (cfg.command == "bench") {
    json j = run_bench(cfg.n, cfg.count, std::max<std::size_t>(1000, 100 * cfg.count), cfg.seed);
    j["config"] = cfg;
    detail::emit(cfg.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    return 0;
  }

  throw CliError("unknown command: " + cfg.command);
}

/// Parses argv and runs the selected command. Messages go to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"charlaw: equalities in law for det(Id - G) under Haar measure"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string tgrid = "0,0.25,0.5,0.75";

  struct Defaults {
    std::size_t n;
    std::size_t count;
    std::string format;
  };
  std::vector<std::pair<CLI::App*, Defaults>> subcommands;

  // All subcommands bind the same RunConfig; only one of them fires.
  auto add_common = [&](CLI::App* sub, Defaults d) {
    const auto dflt = [](auto v) { return " (default " + std::to_string(v) + ")"; };
    sub->add_option("--n", cfg.n, "Matrix / model size" + dflt(d.n))->check(CLI::PositiveNumber);
    sub->add_option("--count", cfg.count, "Number of samples or paths" + dflt(d.count))->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Root 64-bit seed (default 0)");
    sub->add_option("--workers", cfg.workers, "Worker threads; output does not depend on it (default 1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "Output file, '-' for stdout (default -)");
    sub->add_option("--format", cfg.format, "Output format csv|json (default " + d.format + ")")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--level", cfg.level, "KS significance level (default 0.001)")->check(CLI::Range(0.0, 1.0));
    subcommands.emplace_back(sub, std::move(d));
  };

  std::vector<std::string> sampler_ids;
  for (const auto& [id, info] : sampler_registry()) sampler_ids.push_back(id);
  std::vector<std::string> test_ids{"custom"};
  for (const auto& c : named_comparisons()) test_ids.push_back(c.name);

  // Default sizes keep each command well under a minute on one core.
  auto* sample = app.add_subcommand("sample", "Emit a batch of samples as CSV (index,re,im). Default < 1 s.");
  sample->add_option("sampler", cfg.sampler, detail::sampler_help())->required()->check(CLI::IsMember(sampler_ids));
  add_common(sample, {8, 1000, "csv"});

  auto* compare = app.add_subcommand("compare", "Run an equality-in-law comparison; JSON report. Default ~1 s.");
  compare->add_option("test", cfg.test, detail::comparison_help())->required()->check(CLI::IsMember(test_ids));
  compare->add_option("--left", cfg.left, "Left sampler (custom)")->check(CLI::IsMember(sampler_ids));
  compare->add_option("--right", cfg.right, "Right sampler (custom)")->check(CLI::IsMember(sampler_ids));
  compare->add_option("--n-right", cfg.n_right, "Size for the right sampler (defaults to --n)");
  add_common(compare, {8, 10000, "json"});

  auto* cycles = app.add_subcommand("cycles", "Cycle-count law vs exact Stirling law; JSON report. Default < 1 s.");
  add_common(cycles, {8, 100000, "json"});

  auto* clt = app.add_subcommand("clt", "Variance scaling of log det(Id - G); JSON report. Default ~20 s.");
  clt->add_option("--n-small", cfg.n_small, "Smaller size (default 100)")->check(CLI::PositiveNumber);
  add_common(clt, {10000, 20000, "json"});

  auto* process = app.add_subcommand("process", "Log partial-product paths as CSV (path,t,re,im). Default < 1 s.");
  process->add_option("--tgrid", tgrid, "Comma-separated t values in [0,1) (default " + tgrid + ")");
  add_common(process, {1000, 1000, "csv"});

  auto* bench = app.add_subcommand("bench", "Matrix path vs O(n) product path timing; JSON. Default ~10 s.");
  add_common(bench, {512, 3, "json"});

  try {
    app.parse(argc, argv);
    for (const auto& [sub, d] : subcommands) {
      if (!sub->parsed()) continue;
      cfg.command = sub->get_name();
      if (sub->count("--n") == 0) cfg.n = d.n;
      if (sub->count("--count") == 0) cfg.count = d.count;
      if (sub->count("--format") == 0) cfg.format = d.format;
    }
    if (cfg.command == "process") cfg.t_grid = parse_tgrid(tgrid);
    return execute(cfg, out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace charlaw::cli
