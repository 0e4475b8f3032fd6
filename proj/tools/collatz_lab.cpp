// collatz_lab: command-line front end to the collatz headers.
//
// Exit codes: 0 ok, 1 usage, 2 step limit / inconclusive, 3 resource limit,
// 4 a verification check failed.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "collatz/collatz.hpp"
#include "collatz/report.hpp"

namespace {

using namespace collatz;
using report::ordered_json;

enum Exit : int { kOk = 0, kUsage = 1, kInconclusive = 2, kResource = 3, kCheckFailed = 4 };

struct Output {
  std::string format = "text";
  std::string path;
};

void emit(const Output& out, const std::string& text) {
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw ResourceError("cannot open output file " + out.path);
  f << text;
}

std::string dump(const ordered_json& j) { return j.dump() + "\n"; }

// ---------------------------------------------------------------------------
// trajectory

struct TrajectoryArgs {
  std::string x0;
  std::string map = "general";
  unsigned long a = 3, b = 1;
  std::uint64_t max_steps = kDefaultMaxSteps;
};

int run_trajectory(const TrajectoryArgs& args, const Output& out) {
  const Natural x0 = natural_from_string(args.x0);
  report::TrajectorySummary summary;
  summary.map = args.map;
  summary.start = x0;
  std::vector<report::TrajectoryRow> rows;

  if (args.map == "general") {
    const Trajectory t = trajectory_general(x0, args.max_steps);
    rows = report::trajectory_rows(t);
    summary.terminated = t.terminated;
    summary.counts = classify_counts(t);
    summary.final_value = t.values.back();
    summary.steps = t.step_count();
  } else if (args.map == "odd" || args.map == "anb") {
    OddTrajectory odd;
    if (args.map == "odd") {
      odd = trajectory_odd(x0, args.max_steps);
    } else {
      const AnbParams p{args.a, args.b};
      AnbTrajectory t = trajectory_anb(x0, p, args.max_steps);
      summary.params = p;
      if (t.cycle_entry) summary.cycle = canonical_cycle(t.odd.trajectory.values[*t.cycle_entry], p);
      odd = std::move(t.odd);
    }
    rows = report::trajectory_rows(odd.trajectory, &odd.parity);
    summary.terminated = odd.trajectory.terminated;
    summary.counts = classify_counts(odd.trajectory);
    summary.final_value = odd.trajectory.values.back();
    summary.steps = odd.trajectory.step_count();
    summary.exponent_sum = odd.parity.total();
    if (odd.parity.size() > 0) summary.mean_k = odd.parity.mean_k();
  } else {
    throw PreconditionError("unknown map '" + args.map + "' (general, odd, anb)");
  }

  std::string text;
  if (out.format == "json") {
    for (const auto& r : rows) text += dump(report::row_json(r));
    text += dump(report::summary_json(summary));
  } else if (out.format == "csv") {
    text = report::trajectory_csv(rows);
  } else {
    std::ostringstream s;
    for (const auto& r : rows) {
      s << r.step << '\t' << r.value << " -> " << r.next << '\t' << to_string(r.kind);
      if (r.k) s << "\tk=" << *r.k;
      s << '\n';
    }
    s << to_string(summary.terminated) << " after " << summary.steps << " steps";
    if (summary.cycle) {
      s << "; cycle [";
      for (std::size_t i = 0; i < summary.cycle->members.size(); ++i) s << (i ? "," : "") << summary.cycle->members[i];
      s << ']';
    }
    s << '\n';
    text = s.str();
  }
  emit(out, text);
  return summary.terminated == Termination::StepLimit ? kInconclusive : kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string which;
  unsigned k = 12;
  unsigned samples = 10;
  std::uint64_t seed = 1;
  std::uint64_t max_x0 = 9999;
  unsigned max_n = 50, max_m = 50;
  unsigned long a = 5, b = 1;
  unsigned starts = 200;
  unsigned steps = 50;
  unsigned M = 10;
  std::optional<std::uint64_t> first, last;
  std::string mode = "direct";
  unsigned threads = 1;
};

struct VerifyOutcome {
  std::uint64_t checked = 0;
  bool passed = true;
  ordered_json counterexample = nullptr;
  ordered_json detail = nullptr;
};

VerifyOutcome verify_shift_law_grid(const VerifyArgs& a, ordered_json& params) {
  params["k_max"] = a.k;
  params["samples"] = a.samples;
  params["seed"] = a.seed;
  VerifyOutcome o;
  std::mt19937_64 rng(a.seed);
  std::vector<Natural> ms;
  for (unsigned s = 0; s < a.samples; ++s) ms.push_back(natural_from_u64(rng()));
  for (unsigned k = 1; k <= a.k; ++k)
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << k); ++i)
      for (const Natural& m : ms) {
        const auto r = verify_shift_law(k, m, i);
        ++o.checked;
        if (!r.holds) {
          o.passed = false;
          o.counterexample = {{"k", k}, {"m", to_string(m)}, {"i", i}, {"lhs", to_string(r.lhs)}, {"rhs", to_string(r.rhs)}};
          return o;
        }
      }
  return o;
}

VerifyOutcome verify_closed_form_grid(const VerifyArgs& a, ordered_json& params) {
  params["max_x0"] = a.max_x0;
  VerifyOutcome o;
  for (std::uint64_t x = 1; x <= a.max_x0; x += 2) {
    const auto r = closed_form_check_all(natural_from_u64(x));
    o.checked += r.steps_checked;
    if (r.first_failure) {
      const auto c = closed_form_check(natural_from_u64(x), *r.first_failure);
      o.passed = false;
      o.counterexample = {{"x0", x}, {"n", *r.first_failure}, {"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}};
      return o;
    }
  }
  return o;
}

VerifyOutcome verify_bohm(const VerifyArgs& a, ordered_json& params) {
  params["max_x0"] = a.max_x0;
  VerifyOutcome o;
  for (std::uint64_t x = 3; x <= a.max_x0; x += 2) {
    const auto t = trajectory_odd(natural_from_u64(x));
    if (t.trajectory.terminated != Termination::ReachedOne) {
      o.passed = false;
      o.counterexample = {{"x0", x}, {"reason", "step limit before reaching 1"}};
      return o;
    }
    const Rational r = bohm_sontacchi_reconstruct(t.parity.prefix_sums);
    ++o.checked;
    if (r != Rational(natural_from_u64(x))) {
      o.passed = false;
      o.counterexample = {{"x0", x}, {"reconstructed", r.get_str()}};
      return o;
    }
  }
  return o;
}

VerifyOutcome verify_geom(const VerifyArgs& a, ordered_json& params) {
  params["max_n"] = a.max_n;
  params["max_m"] = a.max_m;
  VerifyOutcome o;
  for (unsigned n = 0; n <= a.max_n; ++n)
    for (unsigned m = 0; m <= a.max_m; ++m) {
      const auto r = geometric_sum_identity(n, m);
      ++o.checked;
      if (!r.holds) {
        o.passed = false;
        o.counterexample = {{"n", n}, {"m", m}, {"lhs", r.lhs.get_str()}, {"rhs", r.rhs.get_str()}};
        return o;
      }
    }
  return o;
}

VerifyOutcome verify_anb_eq(const VerifyArgs& a, ordered_json& params) {
  const AnbParams p{a.a, a.b};
  validate(p);
  params["a"] = a.a;
  params["b"] = a.b;
  params["starts"] = a.starts;
  params["steps"] = a.steps;
  params["seed"] = a.seed;
  VerifyOutcome o;
  std::mt19937_64 rng(a.seed);
  for (unsigned s = 0; s < a.starts; ++s) {
    const Natural x0 = natural_from_u64((rng() >> 2) | 1);
    for (unsigned n = 1; n <= a.steps; ++n) {
      const auto r = closed_form_anb_check(x0, p, n);
      ++o.checked;
      if (!r.holds) {
        o.passed = false;
        o.counterexample = {{"x0", to_string(x0)}, {"n", n}, {"lhs", to_string(r.lhs)}, {"rhs", to_string(r.rhs)}};
        return o;
      }
    }
  }
  return o;
}

VerifyOutcome verify_halfsplit(const VerifyArgs& a, ordered_json& params) {
  params["M"] = a.M;
  params["mode"] = a.mode;
  std::optional<Interval> sub;
  if (a.first || a.last) {
    if (a.mode != "direct") throw PreconditionError("subranges need --mode direct");
    sub = Interval{a.first.value_or(1), a.last.value_or(a.M < 64 ? std::uint64_t{1} << a.M : 0)};
    params["first"] = sub->first;
    params["last"] = sub->last;
  }
  HalfSplitReport r;
  if (a.mode == "direct")
    r = halfsplit_verify(a.M, sub, a.threads);
  else if (a.mode == "class")
    r = halfsplit_by_class(a.M);
  else
    throw PreconditionError("unknown mode '" + a.mode + "' (direct, class)");
  VerifyOutcome o;
  o.detail = report::halfsplit_json(r);
  if (!r.full_range()) return o;  // a partial range is a tally to merge, not a check
  const std::uint64_t half = std::uint64_t{1} << (a.M - 1);
  for (unsigned n = 1; n + 1 <= a.M; ++n) {
    ++o.checked;
    const auto& t = r.per_step[n - 1];
    if (t.increase != half || t.decrease != half) {
      o.passed = false;
      o.counterexample = {{"step", n}, {"increase", t.increase}, {"decrease", t.decrease}};
      return o;
    }
  }
  return o;
}

int run_verify(const VerifyArgs& a, const Output& out) {
  ordered_json params = ordered_json::object();
  VerifyOutcome o;
  if (a.which == "shift-law")
    o = verify_shift_law_grid(a, params);
  else if (a.which == "closed-form")
    o = verify_closed_form_grid(a, params);
  else if (a.which == "bohm")
    o = verify_bohm(a, params);
  else if (a.which == "geom")
    o = verify_geom(a, params);
  else if (a.which == "anb-eq")
    o = verify_anb_eq(a, params);
  else if (a.which == "halfsplit")
    o = verify_halfsplit(a, params);
  else
    throw PreconditionError("unknown check '" + a.which + "'");

  std::string text;
  if (out.format == "json") {
    ordered_json j;
    j["schema"] = report::schema_tag("verify");
    j["check"] = a.which;
    j["parameters"] = params;
    j["checked"] = o.checked;
    j["passed"] = o.passed;
    j["counterexample"] = o.counterexample;
    if (!o.detail.is_null()) j["halfsplit"] = o.detail;
    text = dump(j);
  } else if (out.format == "csv") {
    if (!o.detail.is_null()) {
      std::ostringstream s;
      s << "M,step,increase,decrease,in_range\n";
      for (const auto& st : o.detail["per_step"])
        s << a.M << ',' << st["step"].get<unsigned>() << ',' << st["increase"].get<std::uint64_t>() << ','
          << st["decrease"].get<std::uint64_t>() << ',' << (st["in_range"].get<bool>() ? 1 : 0) << '\n';
      text = s.str();
    } else {
      text = "check,checked,passed\n" + a.which + ',' + std::to_string(o.checked) + ',' + (o.passed ? "1" : "0") + '\n';
    }
  } else {
    std::ostringstream s;
    s << a.which << ": " << o.checked << " checks, " << (o.passed ? "pass" : "FAIL") << '\n';
    if (!o.counterexample.is_null()) s << "counterexample: " << o.counterexample.dump() << '\n';
    if (!o.detail.is_null())
      for (const auto& st : o.detail["per_step"])
        s << "step " << st["step"].get<unsigned>() << ": increase " << st["increase"].get<std::uint64_t>()
          << ", decrease " << st["decrease"].get<std::uint64_t>() << (st["in_range"].get<bool>() ? "" : "  (outside range)")
          << '\n';
    text = s.str();
  }
  emit(out, text);
  return o.passed ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// montecarlo

struct MonteCarloArgs {
  std::uint64_t length = 100;
  std::uint64_t samples = 14;
  std::uint64_t seed = 1;
  std::string level = "all";
  std::string interval = "normal";
  std::string fixture;
  unsigned threads = 1;
};

int run_montecarlo(const MonteCarloArgs& a, const Output& out) {
  report::MonteCarloSummary m;
  if (!a.fixture.empty()) {
    if (a.fixture != "published14") throw PreconditionError("unknown fixture '" + a.fixture + "' (published14)");
    m.source = "fixture:published14";
    m.length = kPublishedSampleLength;
    for (const auto& r : kPublishedTable)
      m.rows.push_back({static_cast<std::uint64_t>(r.sample), r.xi, r.one_plus_xi, r.s, r.two_pow, std::nullopt});
  } else {
    if (a.samples < 1) throw PreconditionError("--samples must be at least 1");
    m.source = "simulated";
    m.base_seed = a.seed;
    m.length = a.length;
    const auto batch = simulate_batch(a.length, a.samples, a.seed, a.threads);
    for (std::size_t j = 0; j < batch.size(); ++j) {
      const auto& s = batch[j];
      m.rows.push_back({j + 1, s.xi, s.one_plus_xi(), s.indicator_std, s.two_pow_one_plus_xi(), sample_seed(a.seed, j)});
    }
  }
  std::vector<double> xi, mu;
  for (const auto& r : m.rows) {
    xi.push_back(r.xi);
    mu.push_back(r.one_plus_xi);
  }
  m.xi_stats = describe(xi);
  m.mu_stats = describe(mu);
  if (a.interval == "normal")
    m.mode = IntervalMode::Normal;
  else if (a.interval == "t")
    m.mode = IntervalMode::StudentT;
  else
    throw PreconditionError("unknown interval mode '" + a.interval + "' (normal, t)");

  std::vector<double> levels;
  if (a.level == "all")
    levels = {0.95, 0.98, 0.99};
  else
    levels = {std::stod(a.level)};
  if (m.rows.size() >= 2) {
    for (double level : levels) {
      SampleStats s = m.mu_stats;
      s.level = level;
      const auto ci = confidence_interval(s, m.mode);
      m.intervals.push_back({level, ci, exponentiate_interval(ci)});
    }
  } else {
    for (double level : levels) z_critical(level);
  }

  std::string text;
  if (out.format == "json") {
    ordered_json j = report::montecarlo_json(m);
    if (!a.fixture.empty()) {
      ordered_json printed = ordered_json::array();
      for (const auto& p : kPublishedIntervals)
        printed.push_back({{"level", report::fmt_double(p.level, 2)},
                           {"bounds", {report::fmt_double(p.lo, 5), report::fmt_double(p.hi, 5)}}});
      j["printed_intervals"] = std::move(printed);
    }
    text = dump(j);
  } else if (out.format == "csv") {
    text = report::montecarlo_csv(m);
  } else {
    std::ostringstream s;
    s << "source " << m.source;
    if (m.base_seed) s << "  generator " << kGeneratorId << "  seed " << *m.base_seed;
    s << "  length " << m.length << "  samples " << m.rows.size() << '\n';
    s << "sample\txi\t1+xi\ts\t2^(1+xi)\n";
    for (const auto& r : m.rows)
      s << r.sample << '\t' << report::fmt_fixed(r.xi) << '\t' << report::fmt_fixed(r.one_plus_xi) << '\t'
        << report::fmt_fixed(r.s) << '\t' << report::fmt_fixed(r.two_pow) << '\n';
    s << "mean xi " << report::fmt_fixed(m.xi_stats.mean, 5) << "  mean 1+xi " << report::fmt_fixed(m.mu_stats.mean, 5)
      << "  std 1+xi " << report::fmt_fixed(m.mu_stats.stddev, 5) << '\n';
    for (const auto& iv : m.intervals)
      s << "level " << report::fmt_fixed(iv.level, 2) << " (" << to_string(m.mode) << ")  mu "
        << report::fmt_fixed(iv.mu.lo) << " .. " << report::fmt_fixed(iv.mu.hi) << "  chi=2^mu "
        << report::fmt_fixed(iv.chi.lo) << " .. " << report::fmt_fixed(iv.chi.hi) << '\n';
    if (!a.fixture.empty()) {
      s << "printed bounds (not reproduced by either interval on mu or chi):\n";
      for (const auto& p : kPublishedIntervals)
        s << "level " << report::fmt_fixed(p.level, 2) << "  " << report::fmt_fixed(p.lo) << " .. "
          << report::fmt_fixed(p.hi) << '\n';
    }
    text = s.str();
  }
  emit(out, text);
  return kOk;
}

// ---------------------------------------------------------------------------
// sweep

int run_sweep(std::uint64_t limit, const SweepOptions& opts, const Output& out) {
  const SweepReport r = sweep_to_one(limit, opts);
  std::string text;
  if (out.format == "json") {
    text = dump(report::sweep_json(r));
  } else if (out.format == "csv") {
    text = report::sweep_csv(r);
  } else {
    std::ostringstream s;
    s << "limit " << r.limit << ": verified " << r.verified_count << ", unverified " << r.failures.size() << '\n';
    s << "max total stopping time " << r.max_total_stopping_time << " at " << r.argmax_total_stopping_time << '\n';
    s << "max stopping time " << r.max_stopping_time << " at " << r.argmax_stopping_time << '\n';
    s << "max excursion " << r.max_excursion << " at " << r.argmax_excursion << '\n';
    if (r.argmax_ratio)
      s << "max total/ln(x) " << report::fmt_fixed(r.max_ratio, 6) << " at " << r.argmax_ratio << "  (reference "
        << kStoppingTimeReference << ")\n";
    text = s.str();
  }
  emit(out, text);
  return r.failures.empty() ? kOk : kInconclusive;
}

// ---------------------------------------------------------------------------
// anb-cycles

int run_cycles(const AnbParams& p, std::uint64_t max_start, std::uint64_t max_steps, const Output& out) {
  validate(p);
  const auto cycles = cycle_catalog(p, max_start, max_steps);
  std::string text;
  if (out.format == "json") {
    text = dump(report::cycles_json(p, max_start, max_steps, cycles));
  } else if (out.format == "csv") {
    text = report::cycles_csv(cycles);
  } else {
    std::ostringstream s;
    s << p.a << "n+" << p.b << ": " << cycles.size() << " cycles from odd starts <= " << max_start << '\n';
    for (const auto& c : cycles) {
      s << '[';
      for (std::size_t i = 0; i < c.members.size(); ++i) s << (i ? "," : "") << c.members[i];
      s << "]  k=";
      for (std::size_t i = 0; i < c.exponents.size(); ++i) s << (i ? "," : "") << c.exponents[i];
      s << (verify_cycle(c) ? "  verified" : "  NOT verified") << '\n';
    }
    text = s.str();
  }
  emit(out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collatz trajectory, identity and statistics laboratory"};
  app.require_subcommand(1);
  Output out;
  const std::vector<std::string> formats{"json", "csv", "text"};
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", out.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("-o,--output", out.path, "Write to a file instead of stdout");
  };

  TrajectoryArgs traj;
  auto* t = app.add_subcommand("trajectory", "Print a trajectory with step kinds and exponents");
  t->add_option("x0", traj.x0, "Starting value")->required();
  t->add_option("--map", traj.map, "general, odd or anb")->check(CLI::IsMember({"general", "odd", "anb"}));
  t->add_option("--a", traj.a, "Multiplier for --map anb");
  t->add_option("--b", traj.b, "Offset for --map anb");
  t->add_option("--max-steps", traj.max_steps, "Step limit");
  add_output(t);

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run an exact identity check");
  v->add_option("check", ver.which, "shift-law, closed-form, bohm, geom, anb-eq or halfsplit")
      ->required()
      ->check(CLI::IsMember({"shift-law", "closed-form", "bohm", "geom", "anb-eq", "halfsplit"}));
  v->add_option("--k", ver.k, "shift-law: largest k");
  v->add_option("--samples", ver.samples, "shift-law: seeded m values per class");
  v->add_option("--seed", ver.seed, "shift-law, anb-eq: seed");
  v->add_option("--max-x0", ver.max_x0, "closed-form, bohm: largest odd start");
  v->add_option("--max-n", ver.max_n, "geom: largest n");
  v->add_option("--max-m", ver.max_m, "geom: largest m");
  v->add_option("--a", ver.a, "anb-eq: multiplier");
  v->add_option("--b", ver.b, "anb-eq: offset");
  v->add_option("--starts", ver.starts, "anb-eq: seeded odd starts");
  v->add_option("--steps", ver.steps, "anb-eq: steps per start");
  v->add_option("--M", ver.M, "halfsplit: range exponent");
  v->add_option("--first", ver.first, "halfsplit: subrange start");
  v->add_option("--last", ver.last, "halfsplit: subrange end");
  v->add_option("--mode", ver.mode, "halfsplit: direct or class");
  v->add_option("--threads", ver.threads, "halfsplit: worker threads (0 = all cores)");
  add_output(v);

  MonteCarloArgs mc;
  auto* m = app.add_subcommand("montecarlo", "Seeded zero/one ratio experiment and intervals");
  m->add_option("--length", mc.length, "Draws per sample");
  m->add_option("--samples", mc.samples, "Number of samples");
  m->add_option("--seed", mc.seed, "Base seed");
  m->add_option("--level", mc.level, "0.95, 0.98, 0.99 or all")->check(CLI::IsMember({"0.95", "0.98", "0.99", "all"}));
  m->add_option("--interval", mc.interval, "normal or t")->check(CLI::IsMember({"normal", "t"}));
  m->add_option("--fixture", mc.fixture, "Use the embedded 14-row table (published14)");
  m->add_option("--threads", mc.threads, "Worker threads (0 = all cores)");
  add_output(m);

  std::uint64_t sweep_limit = 0;
  SweepOptions sweep_opts;
  auto* s = app.add_subcommand("sweep", "Check every x <= limit reaches 1");
  s->add_option("--limit", sweep_limit, "Upper bound")->required();
  s->add_option("--max-steps", sweep_opts.max_steps, "Step limit per value");
  s->add_option("--threads", sweep_opts.threads, "Worker threads (0 = all cores)");
  add_output(s);

  AnbParams cyc_params{5, 1};
  std::uint64_t cyc_max_start = 99, cyc_max_steps = 1000;
  auto* c = app.add_subcommand("anb-cycles", "Catalog cycles of the odd an+b map");
  c->add_option("--a", cyc_params.a, "Multiplier");
  c->add_option("--b", cyc_params.b, "Offset");
  c->add_option("--max-start", cyc_max_start, "Largest odd start scanned");
  c->add_option("--max-steps", cyc_max_steps, "Steps per start before giving up");
  add_output(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*t) return run_trajectory(traj, out);
    if (*v) return run_verify(ver, out);
    if (*m) return run_montecarlo(mc, out);
    if (*s) return run_sweep(sweep_limit, sweep_opts, out);
    if (*c) return run_cycles(cyc_params, cyc_max_start, cyc_max_steps, out);
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
