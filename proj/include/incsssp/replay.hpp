#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "incsssp/stream_io.hpp"

namespace incsssp {

struct RunOptions {
  Mode mode = Mode::kDeterministic;
  bool verify = false;
  std::uint64_t seed = 0;
  std::optional<Rational> eps;  ///< overrides the stream header
  std::optional<std::int64_t> phase_divisor;
  double fixing_iteration_multiplier = 1.0;
  bool raw_epsilon = false;
  bool timing = false;  ///< fill wall_time_ns (breaks byte-identical output)
  /// Fault injection: after the first insertion, overwrite this vertex's
  /// answer with truth - 1.
  std::optional<Vertex> corrupt_vertex;
};

struct MetricsRow {
  std::size_t index = 0;
  std::int64_t relaxation_count = 0;
  std::int64_t touched_count = 0;
  std::int64_t fixing_phases_run = 0;
  std::int64_t rebuilds_run = 0;
  std::int64_t max_additive_error = -1;  ///< -1 when not verified
  std::int64_t wall_time_ns = 0;
};

inline constexpr const char* kMetricsHeader =
    "index,relaxation_count,touched_count,fixing_phases_run,rebuilds_run,max_additive_error,wall_time_ns";

struct RunResult {
  std::vector<MetricsRow> rows;
  std::vector<std::string> answers;     ///< echo lines for q / p events
  std::vector<std::string> violations;  ///< human-readable verification failures
  std::int64_t total_relaxations = 0;
  Rational max_ratio{1};
  bool verified = false;

  bool ok() const { return violations.empty(); }
};

namespace detail {

inline void describe(const VerifyReport& r, std::vector<std::string>& out) {
  const std::string at = "insertion " + std::to_string(r.insertion_index) + ": ";
  for (const auto& v : r.lower_violations) {
    out.push_back(at + "vertex " + std::to_string(v.vertex) + " estimate " + std::to_string(v.estimate) +
                  " below truth " + std::to_string(v.truth));
  }
  for (const auto& v : r.upper_violations) {
    out.push_back(at + "vertex " + std::to_string(v.vertex) + " estimate " +
                  (v.estimate == kUnreachable ? std::string("inf") : std::to_string(v.estimate)) +
                  " above bound for truth " + std::to_string(v.truth));
  }
  for (const auto& b : r.invariant_breaches) {
    out.push_back(at + "structure " + std::to_string(b.structure) + " edge (" + std::to_string(b.edge.tail) + ", " +
                  std::to_string(b.edge.head) + ") breaks the per-edge bound");
  }
  for (auto id : r.range_audit_failures) out.push_back(at + "structure " + std::to_string(id) + " failed its twin audit");
  for (auto v : r.short_tree_mismatches) out.push_back(at + "short tree inexact at vertex " + std::to_string(v));
  for (auto v : r.min_table_mismatches) out.push_back(at + "min table stale at vertex " + std::to_string(v));
}

inline std::string dist_text(Dist d) { return d == kUnreachable ? "inf" : std::to_string(d); }

}  // namespace detail

inline Config config_for(const InsertionStream& s, const RunOptions& opt) {
  Config cfg;
  cfg.n = s.n;
  cfg.m_budget = std::max<std::size_t>(1, s.budget);
  cfg.max_weight = s.max_weight;
  cfg.source = 0;
  cfg.eps = opt.eps.value_or(s.eps.value_or(Rational(1, 4)));
  cfg.mode = opt.mode;
  cfg.seed = opt.seed;
  cfg.phase_divisor = opt.phase_divisor;
  cfg.fixing_iteration_multiplier = opt.fixing_iteration_multiplier;
  cfg.raw_epsilon = opt.raw_epsilon;
  return cfg;
}

/// Replays a stream through the frontend, optionally verifying against the
/// oracle after every insertion.
inline RunResult run_stream(const InsertionStream& s, const RunOptions& opt) {
  RunResult out;
  out.verified = opt.verify;
  IncrSSSP algo(config_for(s, opt));
  algo.preprocess(s.initial_edges);
  IncrSSSP::Stats prev = algo.stats();
  std::size_t index = 0;

  for (const Event& ev : s.events) {
    switch (ev.kind) {
      case Event::Kind::kInsert: {
        const auto start = std::chrono::steady_clock::now();
        algo.insert(ev.u, ev.v, ev.w);
        const auto stop = std::chrono::steady_clock::now();
        ++index;
        const IncrSSSP::Stats now = algo.stats();
        MetricsRow row;
        row.index = index;
        row.relaxation_count = now.relaxations - prev.relaxations;
        row.touched_count = now.touched - prev.touched;
        row.fixing_phases_run = now.fixing_phases - prev.fixing_phases;
        row.rebuilds_run = now.rebuilds - prev.rebuilds;
        if (opt.timing) row.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
        prev = now;
        if (opt.verify) {
          const ExactDistances truth = dijkstra(algo.graph(), 0);
          if (opt.corrupt_vertex && index == 1) {
            const Dist t = truth.d[*opt.corrupt_vertex];
            algo.debug_corrupt_answer(*opt.corrupt_vertex, t == kUnreachable ? 0 : t - 1);
          }
          const VerifyReport rep = verify(algo, truth, algo.guarantee_eps());
          row.max_additive_error = rep.max_additive_error;
          out.max_ratio = std::max(out.max_ratio, rep.max_ratio);
          detail::describe(rep, out.violations);
        }
        out.rows.push_back(row);
        break;
      }
      case Event::Kind::kQuery:
        out.answers.push_back("q " + std::to_string(ev.u) + " " + detail::dist_text(algo.query(ev.u)));
        break;
      case Event::Kind::kPath: {
        std::string line = "p " + std::to_string(ev.u);
        if (algo.query(ev.u) == kUnreachable) {
          line += " unreachable";
        } else {
          for (Vertex x : algo.report_path(ev.u)) line += " " + std::to_string(x);
        }
        out.answers.push_back(line);
        break;
      }
    }
  }
  out.total_relaxations = algo.stats().relaxations;
  return out;
}

inline std::string metrics_csv(const RunResult& r) {
  std::ostringstream out;
  out << kMetricsHeader << '\n';
  for (const MetricsRow& row : r.rows) {
    out << row.index << ',' << row.relaxation_count << ',' << row.touched_count << ',' << row.fixing_phases_run << ','
        << row.rebuilds_run << ',' << row.max_additive_error << ',' << row.wall_time_ns << '\n';
  }
  return out.str();
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<std::pair<double, double>>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(points.size());
  const double denom = k * sxx - sx * sx;
  return denom == 0 ? 0.0 : (k * sxy - sx * sy) / denom;
}

}  // namespace incsssp
