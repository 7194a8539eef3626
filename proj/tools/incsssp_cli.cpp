// incsssp: replay, generate and benchmark incremental SSSP insertion streams.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "incsssp/incsssp.hpp"

namespace {

using namespace incsssp;

constexpr int kExitVerifyFailed = 2;
constexpr int kExitParseError = 3;

// "p/q" or a plain integer.
Rational parse_rational(const std::string& text, const char* what) {
  auto number = [&](std::string_view part) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw Error(ErrorKind::kInvalidConfig, std::string(what) + ": expected <p>/<q>, got '" + text + "'");
    }
    return v;
  };
  const std::string_view t(text);
  const auto slash = t.find('/');
  const std::int64_t p = number(t.substr(0, slash));
  const std::int64_t q = slash == std::string_view::npos ? 1 : number(t.substr(slash + 1));
  if (q == 0) throw Error(ErrorKind::kInvalidConfig, std::string(what) + ": zero denominator");
  return Rational(p, q);
}

Mode parse_mode(const std::string& m) {
  if (m == "det") return Mode::kDeterministic;
  if (m == "rand") return Mode::kRandomized;
  return Mode::kBaselineNoSync;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

std::string ratio_text(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental approximate single-source shortest paths"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Replay an insertion stream");
  std::string stream_path, mode = "det", eps_text, metrics_path;
  bool verify = false, json = false, raw_epsilon = false, timing = false;
  std::uint64_t seed = 0;
  std::int64_t cb = 0;
  double iter_mult = 1.0;
  std::int64_t corrupt = -1;
  run->add_option("stream", stream_path, "Stream file ('-' for stdin)")->required();
  run->add_option("--mode", mode, "det | rand | nosync")->check(CLI::IsMember({"det", "rand", "nosync"}));
  run->add_flag("--verify", verify, "Oracle check after every insertion; exit 2 on any violation");
  run->add_option("--metrics", metrics_path,
                  std::string("Write per-insertion CSV with columns: ") + kMetricsHeader);
  run->add_option("--seed", seed, "Seed for all randomness");
  run->add_option("--eps", eps_text, "Approximation slack p/q (overrides the stream header)");
  run->add_option("--cb-mult", cb, "Phase divisor c_B in B = floor(sqrt(m)/c_B) (default 6*ceil(lg n))");
  run->add_option("--iter-mult", iter_mult, "Multiplier on the fixing-phase sample count");
  run->add_flag("--raw-epsilon", raw_epsilon, "Randomized mode: do not rescale eps internally");
  run->add_flag("--json", json, "Print a JSON summary instead of echo lines");
  run->add_flag("--timing", timing, "Record wall_time_ns (output no longer byte-reproducible)");
  run->add_option("--debug-corrupt", corrupt, "Fault injection: corrupt this vertex's answer after insertion 1")
      ->group("");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a stream");
  gen->require_subcommand(1);
  auto* gen_random = gen->add_subcommand("random", "Uniform random insertions");
  std::size_t gn = 16, gm = 32;
  Weight gw = 10;
  double qrate = 0.0;
  std::string out_path = "-";
  gen_random->add_option("--n", gn)->required();
  gen_random->add_option("--m", gm)->required();
  gen_random->add_option("--W", gw)->required();
  gen_random->add_option("--seed", seed);
  gen_random->add_option("--query-rate", qrate);
  gen_random->add_option("-o,--output", out_path);
  auto* gen_fig = gen->add_subcommand("figure1", "Quadratic-error construction for head-only propagation");
  std::int64_t fig_b = 16;
  std::string fig_g = "1/1";
  gen_fig->add_option("--B", fig_b)->required();
  gen_fig->add_option("--gran", fig_g, "Error quantum p/q before weight scaling");
  gen_fig->add_option("-o,--output", out_path);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Relaxation-count scaling over random streams with n = m");
  int lo = 9, hi = 12, seeds = 3;
  Weight sweep_w = 64;
  sweep->add_option("--mode", mode)->check(CLI::IsMember({"det", "rand", "nosync"}));
  sweep->add_option("--min-exp", lo);
  sweep->add_option("--max-exp", hi);
  sweep->add_option("--seeds", seeds);
  sweep->add_option("--W", sweep_w);
  sweep->add_option("--eps", eps_text);
  sweep->add_option("--cb-mult", cb);
  sweep->add_option("--iter-mult", iter_mult);
  sweep->add_flag("--raw-epsilon", raw_epsilon);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      std::stringstream buf;
      if (stream_path == "-") {
        buf << std::cin.rdbuf();
      } else {
        std::ifstream in(stream_path, std::ios::binary);
        if (!in) {
          std::cerr << "cannot open " << stream_path << "\n";
          return 1;
        }
        buf << in.rdbuf();
      }
      InsertionStream stream;
      try {
        stream = parse_stream(buf.str());
      } catch (const ParseError& e) {
        std::cerr << stream_path << ": " << e.what() << "\n";
        return kExitParseError;
      }

      RunOptions opt;
      opt.mode = parse_mode(mode);
      opt.verify = verify;
      opt.seed = seed;
      if (!eps_text.empty()) opt.eps = parse_rational(eps_text, "--eps");
      if (cb > 0) opt.phase_divisor = cb;
      opt.fixing_iteration_multiplier = iter_mult;
      opt.raw_epsilon = raw_epsilon;
      opt.timing = timing;
      if (corrupt >= 0) {
        opt.corrupt_vertex = static_cast<Vertex>(corrupt);
        opt.verify = true;
      }

      const RunResult result = run_stream(stream, opt);
      if (!metrics_path.empty() && !write_file(metrics_path, metrics_csv(result))) {
        std::cerr << "cannot write " << metrics_path << "\n";
        return 1;
      }
      if (json) {
        nlohmann::json j;
        j["insertions"] = result.rows.size();
        j["total_relaxations"] = result.total_relaxations;
        j["verified"] = result.verified;
        j["violations"] = result.violations;
        j["answers"] = result.answers;
        j["max_ratio"] = ratio_text(result.max_ratio);
        std::cout << j.dump(2) << "\n";
      } else {
        for (const std::string& line : result.answers) std::cout << line << "\n";
      }
      for (const std::string& v : result.violations) std::cerr << "violation: " << v << "\n";
      return result.ok() ? 0 : kExitVerifyFailed;
    }

    if (*gen) {
      std::string text;
      if (*gen_random) {
        text = serialize(random_stream(gn, gm, gw, seed, qrate));
      } else {
        const Figure1Instance inst = figure1_stream({fig_b, parse_rational(fig_g, "--gran")});
        text = "# sink " + std::to_string(inst.sink) + " scaled quantum " + ratio_text(inst.scaled_gran) + "\n" +
               serialize(inst.stream);
      }
      if (out_path == "-") {
        std::cout << text;
      } else if (!write_file(out_path, text)) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
      }
      return 0;
    }

    if (*sweep) {
      std::vector<std::pair<double, double>> points;
      for (int e = lo; e <= hi; ++e) {
        const std::size_t m = std::size_t{1} << e;
        for (int sd = 0; sd < seeds; ++sd) {
          RunOptions opt;
          opt.mode = parse_mode(mode);
          opt.seed = static_cast<std::uint64_t>(sd);
          if (!eps_text.empty()) opt.eps = parse_rational(eps_text, "--eps");
          if (cb > 0) opt.phase_divisor = cb;
          opt.fixing_iteration_multiplier = iter_mult;
          opt.raw_epsilon = raw_epsilon;
          const RunResult r = run_stream(random_stream(m, m, sweep_w, 1000 + sd), opt);
          points.emplace_back(static_cast<double>(m), static_cast<double>(std::max<std::int64_t>(1, r.total_relaxations)));
          std::cout << "m=" << m << " seed=" << sd << " relaxations=" << r.total_relaxations << "\n";
        }
      }
      std::cout << "loglog_slope=" << loglog_slope(points) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
