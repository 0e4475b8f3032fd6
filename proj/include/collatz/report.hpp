#ifndef COLLATZ_REPORT_HPP
#define COLLATZ_REPORT_HPP

// JSON and CSV renderings of the module results. Naturals are written as
// decimal strings so documents stay exact at any size; every document
// carries a versioned "schema" tag matching a file under schemas/.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "collatz/anb.hpp"
#include "collatz/dynamics.hpp"
#include "collatz/halfsplit.hpp"
#include "collatz/montecarlo.hpp"
#include "collatz/sweep.hpp"

namespace collatz::report {

using nlohmann::ordered_json;

inline std::string schema_tag(std::string_view name) { return "collatz-lab/" + std::string(name) + "/v1"; }

/// Shortest round-trip decimal for a double, fixed across platforms.
inline std::string fmt_double(double v, int precision = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

inline std::string fmt_fixed(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline ordered_json rational_json(const Rational& q) { return q.get_str(); }

inline ordered_json naturals_json(const std::vector<Natural>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

// ---------------------------------------------------------------------------
// Trajectories: one row per step, then a summary document.

struct TrajectoryRow {
  std::size_t step = 0;
  Natural value;
  Natural next;
  StepKind kind = StepKind::Increase;
  std::optional<unsigned> k;
};

inline std::vector<TrajectoryRow> trajectory_rows(const Trajectory& t, const ParityExponents* parity = nullptr) {
  std::vector<TrajectoryRow> rows;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    TrajectoryRow r{i + 1, t.values[i], t.values[i + 1], t.steps[i], std::nullopt};
    if (parity) r.k = parity->exponents[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline ordered_json row_json(const TrajectoryRow& r) {
  ordered_json j;
  j["schema"] = schema_tag("trajectory-row");
  j["step"] = r.step;
  j["value"] = to_string(r.value);
  j["next"] = to_string(r.next);
  j["kind"] = to_string(r.kind);
  if (r.k) j["k"] = *r.k;
  return j;
}

struct TrajectorySummary {
  std::string map;
  std::optional<AnbParams> params;
  Natural start;
  Natural final_value;
  std::size_t steps = 0;
  Termination terminated = Termination::ReachedOne;
  StepCounts counts;
  std::optional<std::uint64_t> exponent_sum;
  std::optional<Rational> mean_k;
  std::optional<CycleRecord> cycle;
};

inline ordered_json cycle_json(const CycleRecord& c) {
  ordered_json j;
  j["a"] = c.params.a;
  j["b"] = c.params.b;
  j["members"] = naturals_json(c.members);
  j["exponents"] = c.exponents;
  j["exponent_sum"] = c.exponent_sum();
  j["product_residue"] = to_string(cycle_product_residue(c));
  j["verified"] = verify_cycle(c);
  return j;
}

inline ordered_json summary_json(const TrajectorySummary& s) {
  ordered_json j;
  j["schema"] = schema_tag("trajectory-summary");
  j["map"] = s.map;
  if (s.params) {
    j["a"] = s.params->a;
    j["b"] = s.params->b;
  }
  j["start"] = to_string(s.start);
  j["final"] = to_string(s.final_value);
  j["steps"] = s.steps;
  j["terminated"] = to_string(s.terminated);
  j["increases"] = s.counts.increase;
  j["decreases"] = s.counts.decrease;
  if (s.exponent_sum) j["exponent_sum"] = *s.exponent_sum;
  if (s.mean_k) j["mean_k"] = rational_json(*s.mean_k);
  if (s.cycle) j["cycle"] = cycle_json(*s.cycle);
  return j;
}

inline std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::ostringstream out;
  out << "step,value,next,kind,k\n";
  for (const auto& r : rows) {
    out << r.step << ',' << r.value << ',' << r.next << ',' << to_string(r.kind) << ',';
    if (r.k) out << *r.k;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Half-split

inline ordered_json halfsplit_json(const HalfSplitReport& r) {
  ordered_json j;
  j["M"] = r.M;
  j["first"] = r.subrange.first;
  j["last"] = r.subrange.last;
  j["covered"] = r.covered;
  j["exact"] = r.exact_half_split();
  ordered_json steps = ordered_json::array();
  for (std::size_t n = 1; n <= r.per_step.size(); ++n) {
    const auto& t = r.per_step[n - 1];
    steps.push_back({{"step", n}, {"increase", t.increase}, {"decrease", t.decrease}, {"in_range", r.in_range(n)}});
  }
  j["per_step"] = std::move(steps);
  return j;
}

inline std::string halfsplit_csv(const HalfSplitReport& r) {
  std::ostringstream out;
  out << "M,step,increase,decrease,in_range\n";
  for (std::size_t n = 1; n <= r.per_step.size(); ++n)
    out << r.M << ',' << n << ',' << r.per_step[n - 1].increase << ',' << r.per_step[n - 1].decrease << ','
        << (r.in_range(n) ? 1 : 0) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Sweep

inline ordered_json sweep_json(const SweepReport& r) {
  ordered_json j;
  j["schema"] = schema_tag("sweep");
  j["limit"] = r.limit;
  j["verified"] = r.verified_count;
  j["failures"] = r.failures;
  j["max_total_stopping_time"] = {{"value", r.max_total_stopping_time}, {"x", r.argmax_total_stopping_time}};
  j["max_stopping_time"] = {{"value", r.max_stopping_time}, {"x", r.argmax_stopping_time}};
  j["max_excursion"] = {{"value", to_string(r.max_excursion)}, {"x", r.argmax_excursion}};
  if (r.argmax_ratio != 0)
    j["max_ratio"] = {{"value", fmt_double(r.max_ratio)}, {"x", r.argmax_ratio}};
  else
    j["max_ratio"] = nullptr;
  j["reference_constant"] = fmt_double(kStoppingTimeReference, 6);
  return j;
}

inline std::string sweep_csv(const SweepReport& r) {
  std::ostringstream out;
  out << "limit,verified,failures,max_total_stopping_time,argmax_total,max_stopping_time,argmax_stopping,"
         "max_excursion,argmax_excursion,max_ratio,argmax_ratio\n";
  out << r.limit << ',' << r.verified_count << ',' << r.failures.size() << ',' << r.max_total_stopping_time << ','
      << r.argmax_total_stopping_time << ',' << r.max_stopping_time << ',' << r.argmax_stopping_time << ','
      << r.max_excursion << ',' << r.argmax_excursion << ',' << (r.argmax_ratio ? fmt_double(r.max_ratio) : "")
      << ',' << r.argmax_ratio << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Monte Carlo table: sample, xi, 1+xi, s, 2^(1+xi)

struct TableRow {
  std::uint64_t sample = 0;
  double xi = 0;
  double one_plus_xi = 0;
  double s = 0;
  double two_pow = 0;
  std::optional<std::uint64_t> seed;
};

struct IntervalRow {
  double level = 0;
  ConfidenceInterval mu;
  ConfidenceInterval chi;
};

struct MonteCarloSummary {
  std::string source;  // "simulated" or "fixture:published14"
  std::optional<std::uint64_t> base_seed;
  std::uint64_t length = 0;
  std::vector<TableRow> rows;
  SampleStats xi_stats;
  SampleStats mu_stats;
  IntervalMode mode = IntervalMode::Normal;
  std::vector<IntervalRow> intervals;
};

inline ordered_json montecarlo_json(const MonteCarloSummary& m) {
  ordered_json j;
  j["schema"] = schema_tag("montecarlo");
  j["source"] = m.source;
  if (m.base_seed) {
    j["generator"] = std::string(kGeneratorId);
    j["seed"] = *m.base_seed;
  }
  j["length"] = m.length;
  j["samples"] = m.rows.size();
  ordered_json rows = ordered_json::array();
  for (const auto& r : m.rows) {
    ordered_json row;
    row["sample"] = r.sample;
    if (r.seed) row["seed"] = *r.seed;
    row["xi"] = fmt_double(r.xi);
    row["one_plus_xi"] = fmt_double(r.one_plus_xi);
    row["s"] = fmt_double(r.s);
    row["two_pow_one_plus_xi"] = fmt_double(r.two_pow);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["mean_xi"] = fmt_double(m.xi_stats.mean);
  j["mean_one_plus_xi"] = fmt_double(m.mu_stats.mean);
  j["std_one_plus_xi"] = fmt_double(m.mu_stats.stddev);
  j["interval_mode"] = std::string(to_string(m.mode));
  ordered_json ivs = ordered_json::array();
  for (const auto& iv : m.intervals) {
    ivs.push_back({{"level", fmt_double(iv.level, 2)},
                   {"mu", {fmt_double(iv.mu.lo), fmt_double(iv.mu.hi)}},
                   {"chi", {fmt_double(iv.chi.lo), fmt_double(iv.chi.hi)}}});
  }
  j["intervals"] = std::move(ivs);
  return j;
}

/// Table-layout CSV; the seed goes in a leading comment line.
inline std::string montecarlo_csv(const MonteCarloSummary& m) {
  std::ostringstream out;
  out << "# source=" << m.source;
  if (m.base_seed) out << " generator=" << kGeneratorId << " seed=" << *m.base_seed;
  out << " length=" << m.length << '\n';
  out << "sample,xi,one_plus_xi,s,two_pow_one_plus_xi\n";
  for (const auto& r : m.rows)
    out << r.sample << ',' << fmt_fixed(r.xi) << ',' << fmt_fixed(r.one_plus_xi) << ',' << fmt_fixed(r.s) << ','
        << fmt_fixed(r.two_pow) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// an+b cycle catalog

inline ordered_json cycles_json(const AnbParams& p, std::uint64_t max_start, std::uint64_t max_steps,
                                const std::vector<CycleRecord>& cycles) {
  ordered_json j;
  j["schema"] = schema_tag("anb-cycles");
  j["a"] = p.a;
  j["b"] = p.b;
  j["max_start"] = max_start;
  j["max_steps"] = max_steps;
  ordered_json list = ordered_json::array();
  for (const auto& c : cycles) list.push_back(cycle_json(c));
  j["cycles"] = std::move(list);
  return j;
}

inline std::string cycles_csv(const std::vector<CycleRecord>& cycles) {
  std::ostringstream out;
  out << "a,b,length,members,exponents,product_residue\n";
  for (const auto& c : cycles) {
    out << c.params.a << ',' << c.params.b << ',' << c.members.size() << ',';
    for (std::size_t i = 0; i < c.members.size(); ++i) out << (i ? " " : "") << c.members[i];
    out << ',';
    for (std::size_t i = 0; i < c.exponents.size(); ++i) out << (i ? " " : "") << c.exponents[i];
    out << ',' << cycle_product_residue(c) << '\n';
  }
  return out.str();
}

}  // namespace collatz::report

#endif  // COLLATZ_REPORT_HPP
