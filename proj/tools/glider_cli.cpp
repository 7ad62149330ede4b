// Copyright 2026 The Glider Guidance Authors
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

// Command-line front end: fields, planning, guidance, simulation and
// evaluation.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "glider/io.hpp"

namespace {

using glider::io::Json;

constexpr const char* kEnvHelp =
    "Environment overrides for defaults (explicit file values and flags take precedence):\n"
    "  GLIDER_EPS_TOL      step-control error tolerance (default 1e-4)\n"
    "  GLIDER_H            initial step fraction (default 0.25)\n"
    "  GLIDER_H_MIN        minimum step fraction (default 1e-4)\n"
    "  GLIDER_H_MAX        maximum step fraction (default 0.25)\n"
    "  GLIDER_TAU          step safety factor (default 0.9)\n"
    "  GLIDER_N_SEGMENTS   travel-time segments per leg (default 10)\n"
    "  GLIDER_N_INTERVALS  integration intervals per leg (default 10)\n"
    "\nExit status: 0 success, 1 domain error, 2 usage error. Errors are written to\n"
    "stderr as a JSON object.";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double env_double(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (*end != '\0') throw UsageError(std::string(name) + " is not a number");
  return v;
}

std::size_t env_count(const char* name, std::size_t fallback) {
  const double v = env_double(name, static_cast<double>(fallback));
  if (v < 1.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
    throw UsageError(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

// Flag overrides shared by every subcommand.
struct Overrides {
  std::optional<double> eps_tol;
  std::optional<std::size_t> n_segments;
  std::optional<std::size_t> n_intervals;
};

glider::io::Defaults env_defaults() {
  glider::io::Defaults d;
  d.ctrl.eps_tol = env_double("GLIDER_EPS_TOL", d.ctrl.eps_tol);
  d.ctrl.h = env_double("GLIDER_H", d.ctrl.h);
  d.ctrl.h_min = env_double("GLIDER_H_MIN", d.ctrl.h_min);
  d.ctrl.h_max = env_double("GLIDER_H_MAX", d.ctrl.h_max);
  d.ctrl.tau = env_double("GLIDER_TAU", d.ctrl.tau);
  d.heading.n_segments = env_count("GLIDER_N_SEGMENTS", d.heading.n_segments);
  d.heading.n_intervals = env_count("GLIDER_N_INTERVALS", d.heading.n_intervals);
  if (d.ctrl.h > d.ctrl.h_max) d.ctrl.h = d.ctrl.h_max;
  d.ctrl.validate();
  return d;
}

void apply(const Overrides& o, glider::StepControl& ctrl, glider::HeadingOptions& heading) {
  if (o.eps_tol) ctrl.eps_tol = *o.eps_tol;
  if (o.n_segments) heading.n_segments = *o.n_segments;
  if (o.n_intervals) heading.n_intervals = *o.n_intervals;
  ctrl.validate();
}

glider::Scenario load_scenario(const std::string& path, const Overrides& o) {
  glider::Scenario s = glider::io::scenario_from_json(glider::io::read_json_file(path), env_defaults());
  apply(o, s.ctrl, s.heading);
  return s;
}

glider::Scenario with_overrides(glider::Scenario s, const Overrides& o) {
  const auto d = env_defaults();
  s.ctrl = d.ctrl;
  s.heading.n_segments = d.heading.n_segments;
  s.heading.n_intervals = d.heading.n_intervals;
  apply(o, s.ctrl, s.heading);
  return s;
}

std::vector<glider::Scenario> builtin_suite(const std::string& name, const Overrides& o) {
  std::vector<glider::Scenario> out;
  if (name == "jet20") {
    for (auto& s : glider::jet20_suite()) out.push_back(with_overrides(std::move(s), o));
  } else if (name == "scaled-jet") {
    out.push_back(with_overrides(glider::scaled_jet_scenario(), o));
  } else {
    throw UsageError("unknown suite '" + name + "' (expected jet20 or scaled-jet)");
  }
  return out;
}

void emit_json(const std::string& path, const Json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    glider::io::write_json_file(path, j);
  }
}

template <class Writer>
void emit_text(const std::string& path, Writer&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw glider::FormatError("cannot write '" + path + "'");
  write(out);
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results are indexed,
// so output order does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(jobs, n); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Json plan_summary_json(const glider::PlanResult& plan) {
  return {{"total_time", plan.total_time},
          {"length", plan.length()},
          {"n_waypoints", plan.waypoints.size()},
          {"cost_calls", plan.stats.cost_calls},
          {"compute_seconds", plan.stats.compute_seconds}};
}

glider::io::GuidanceContext context_for(const glider::Scenario& s, const glider::HeadingOptions& heading,
                                        const glider::PlanResult& plan, const glider::GuidanceResult& g) {
  return {s.name, s.glider, s.ctrl, heading, glider::summarize_plan(plan), g.total_error_calls()};
}

// Guidance inputs: either a scenario, or separate glider and field files.
struct GuidanceInputs {
  std::string config;
  std::string glider;
  std::string field;
  std::string method;
  std::string bracket;
};

glider::Scenario guidance_scenario(const GuidanceInputs& in, const Overrides& o) {
  glider::Scenario s;
  if (!in.config.empty()) {
    s = load_scenario(in.config, o);
  } else {
    if (in.glider.empty() || in.field.empty()) throw UsageError("give --config, or both --glider and --field");
    const auto d = env_defaults();
    s.name = "custom";
    s.ctrl = d.ctrl;
    s.heading = d.heading;
    apply(o, s.ctrl, s.heading);
  }
  if (!in.glider.empty()) s.glider = glider::io::glider_from_json(glider::io::read_json_file(in.glider));
  if (!in.field.empty()) s.field = glider::io::field_from_json(glider::io::read_json_file(in.field));
  if (!in.method.empty()) s.method = glider::heading_method_from_string(in.method);
  if (!in.bracket.empty()) s.heading.bracket = glider::bracket_method_from_string(in.bracket);
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"Glider path planning and guidance toolkit"};
  app.footer(kEnvHelp);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Overrides o;
  auto add_overrides = [&o](CLI::App* sub) {
    sub->add_option("--eps-tol", o.eps_tol, "Step-control error tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--n-segments", o.n_segments, "Travel-time segments per leg")->check(CLI::PositiveNumber);
    sub->add_option("--n-intervals", o.n_intervals, "Integration intervals per leg")->check(CLI::PositiveNumber);
  };

  // currents -----------------------------------------------------------------
  auto* currents = app.add_subcommand("currents", "Sample a current field");
  currents->require_subcommand(1);
  std::string field_path;
  std::string out_path;
  double sx = 0.0, sy = 0.0, sz = 0.0, st = 0.0;
  auto* sample = currents->add_subcommand("sample", "One current record as JSON");
  sample->add_option("--field", field_path, "Field config JSON")->required()->check(CLI::ExistingFile);
  sample->add_option("--x", sx, "x position")->required();
  sample->add_option("--y", sy, "y position")->required();
  sample->add_option("--z", sz, "Depth, positive down");
  sample->add_option("--t", st, "Time");
  sample->add_option("--out", out_path, "Output file (default stdout)");

  std::vector<double> x_range, y_range, times;
  std::size_t nx = 0, ny = 0;
  auto* grid = currents->add_subcommand("grid", "Lattice of currents as CSV x,y,z,t,u,v");
  grid->add_option("--field", field_path, "Field config JSON")->required()->check(CLI::ExistingFile);
  grid->add_option("--x-range", x_range, "x lower and upper bound")->required()->expected(2);
  grid->add_option("--y-range", y_range, "y lower and upper bound")->required()->expected(2);
  grid->add_option("--nx", nx, "Points along x")->required()->check(CLI::PositiveNumber);
  grid->add_option("--ny", ny, "Points along y")->required()->check(CLI::PositiveNumber);
  grid->add_option("--z", sz, "Depth, positive down");
  grid->add_option("--t", times, "Sample times (repeatable)");
  grid->add_option("--out", out_path, "Output CSV (default stdout)");

  // plan / smooth ----------------------------------------------------------------
  std::string config_path;
  bool smooth_flag = false;
  auto* plan = app.add_subcommand("plan", "Plan a time-optimal route with A*TVE");
  plan->add_option("--config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  plan->add_flag("--smooth", smooth_flag, "Smooth the planned route");
  plan->add_option("--out", out_path, "Plan JSON (default stdout)");
  add_overrides(plan);

  std::string plan_path;
  double smooth_tolerance = 1e-3;
  auto* smooth = app.add_subcommand("smooth", "Remove waypoints from an existing plan");
  smooth->add_option("--plan", plan_path, "Plan JSON")->required()->check(CLI::ExistingFile);
  smooth->add_option("--config", config_path, "Scenario JSON supplying field, glider and step control")
      ->required()
      ->check(CLI::ExistingFile);
  smooth->add_option("--tolerance", smooth_tolerance, "Allowed relative travel-time increase")
      ->check(CLI::NonNegativeNumber);
  smooth->add_option("--out", out_path, "Plan JSON (default stdout)");
  add_overrides(smooth);

  // drlist / schedule ------------------------------------------------------------
  GuidanceInputs gin;
  std::string diagnostics_path;
  auto add_guidance = [&](CLI::App* sub) {
    sub->add_option("--path", plan_path, "Plan JSON holding the waypoint path")->required()->check(CLI::ExistingFile);
    sub->add_option("--method", gin.method, "Heading method")->check(CLI::IsMember({"calc", "sim", "opt"}));
    sub->add_option("--bracket", gin.bracket, "Bracketing method for opt")
        ->check(CLI::IsMember({"golden", "fibonacci", "brent"}));
    sub->add_option("--config", gin.config, "Scenario JSON")->check(CLI::ExistingFile);
    sub->add_option("--glider", gin.glider, "Glider JSON")->check(CLI::ExistingFile);
    sub->add_option("--field", gin.field, "Field config JSON")->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "Output JSON (default stdout)");
    sub->add_option("--diagnostics", diagnostics_path, "Per-leg heading diagnostics JSON");
    add_overrides(sub);
  };
  auto* drlist = app.add_subcommand("drlist", "Build a dead-reckoning waypoint list");
  add_guidance(drlist);
  auto* schedule = app.add_subcommand("schedule", "Build a timed heading schedule");
  add_guidance(schedule);

  // simulate ----------------------------------------------------------------
  std::string drlist_path, schedule_path, glider_path, headings_path, metrics_path;
  auto* simulate = app.add_subcommand("simulate", "Fly a DR list or heading schedule through a field");
  auto* src_dr = simulate->add_option("--drlist", drlist_path, "DR list JSON")->check(CLI::ExistingFile);
  auto* src_sc = simulate->add_option("--schedule", schedule_path, "Heading schedule JSON")->check(CLI::ExistingFile);
  src_dr->excludes(src_sc);
  simulate->add_option("--field", field_path, "Field config JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--glider", glider_path, "Glider JSON (default: the one embedded in the input)")
      ->check(CLI::ExistingFile);
  simulate->add_option("--plan", plan_path, "Plan JSON to measure against (default: embedded summary)")
      ->check(CLI::ExistingFile);
  simulate->add_option("--out", out_path, "Track CSV t,x,y,z")->required();
  simulate->add_option("--headings", headings_path, "Heading CSV t_start,heading_rad");
  simulate->add_option("--metrics", metrics_path, "Metrics report JSON");
  add_overrides(simulate);

  // evaluate / bench-bracketing -------------------------------------------------
  std::string scenario_path, suite_name, csv_path;
  std::size_t jobs = 1;
  auto add_source = [&](CLI::App* sub) {
    auto* a = sub->add_option("--scenario", scenario_path, "Scenario JSON")->check(CLI::ExistingFile);
    auto* b = sub->add_option("--suite", suite_name, "Built-in suite: jet20 or scaled-jet");
    a->excludes(b);
    sub->add_option("--out", out_path, "Report JSON (default stdout)");
    sub->add_option("--csv", csv_path, "Summary CSV");
    sub->add_option("--jobs", jobs, "Parallel workers for suites")->check(CLI::PositiveNumber);
    add_overrides(sub);
  };
  auto* evaluate = app.add_subcommand("evaluate", "Plan, guide and simulate scenarios");
  add_source(evaluate);
  evaluate->add_flag("--smooth", smooth_flag, "Smooth plans before guidance");
  auto* bench = app.add_subcommand("bench-bracketing", "Error-function calls of golden, Fibonacci and Brent");
  add_source(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (sample->parsed()) {
    const auto field = glider::io::field_from_json(glider::io::read_json_file(field_path));
    const auto c = field.current({sx, sy, sz}, st);
    emit_json(out_path, glider::io::versioned({{"x", sx}, {"y", sy}, {"z", sz}, {"t", st}, {"u", c.x}, {"v", c.y},
                                               {"speed", glider::norm(c)}}));
    return 0;
  }
  if (grid->parsed()) {
    const auto field = glider::io::field_from_json(glider::io::read_json_file(field_path));
    glider::io::LatticeSpec spec{{x_range[0], x_range[1]}, {y_range[0], y_range[1]}, nx, ny, sz, {}};
    spec.times = times.empty() ? std::vector<double>{0.0} : times;
    emit_text(out_path, [&](std::ostream& os) { glider::io::write_lattice_csv(os, field, spec); });
    return 0;
  }
  if (plan->parsed()) {
    glider::Scenario s = load_scenario(config_path, o);
    if (smooth_flag) s.smooth = true;
    emit_json(out_path, glider::io::to_json(glider::plan_scenario(s)));
    return 0;
  }
  if (smooth->parsed()) {
    const glider::Scenario s = load_scenario(config_path, o);
    const auto input = glider::io::plan_from_json(glider::io::read_json_file(plan_path));
    const auto out = glider::smooth_path(input, s.field, s.glider, s.ctrl, {s.heading.n_segments, smooth_tolerance});
    emit_json(out_path, glider::io::to_json(out));
    return 0;
  }
  if (drlist->parsed() || schedule->parsed()) {
    const glider::Scenario s = guidance_scenario(gin, o);
    const auto input = glider::io::plan_from_json(glider::io::read_json_file(plan_path));
    glider::GuidanceResult g;
    try {
      g = glider::build_guidance(glider::path_from_plan(input), s.method, s.glider, s.field, s.ctrl, s.heading);
    } catch (const glider::GuidanceError& e) {
      throw glider::StageError("guidance", e.what(), e.kind());
    }
    const auto ctx = context_for(s, s.heading, input, g);
    if (drlist->parsed()) {
      emit_json(out_path, glider::io::to_json(glider::io::DRListDocument{g.dr, ctx}));
    } else {
      emit_json(out_path, glider::io::to_json(glider::io::ScheduleDocument{g.schedule, input.waypoints.front(),
                                                                          s.method, ctx}));
    }
    if (!diagnostics_path.empty())
      glider::io::write_json_file(diagnostics_path, glider::io::versioned({{"legs", glider::io::to_json(g.legs)}}));
    return 0;
  }
  if (simulate->parsed()) {
    if (drlist_path.empty() && schedule_path.empty()) throw UsageError("simulate needs --drlist or --schedule");
    const auto field = glider::io::field_from_json(glider::io::read_json_file(field_path));
    glider::io::GuidanceContext ctx;
    std::optional<glider::io::DRListDocument> dr;
    std::optional<glider::io::ScheduleDocument> sched;
    if (!drlist_path.empty()) {
      dr = glider::io::drlist_from_json(glider::io::read_json_file(drlist_path));
      ctx = dr->context;
    } else {
      sched = glider::io::schedule_from_json(glider::io::read_json_file(schedule_path));
      ctx = sched->context;
    }
    if (!glider_path.empty()) ctx.glider = glider::io::glider_from_json(glider::io::read_json_file(glider_path));
    if (!ctx.glider) throw UsageError("no glider parameters: pass --glider");
    const auto d = env_defaults();
    glider::StepControl ctrl = ctx.ctrl.value_or(d.ctrl);
    glider::HeadingOptions heading = ctx.heading.value_or(d.heading);
    apply(o, ctrl, heading);
    glider::Track track;
    double t0 = 0.0;
    try {
      if (dr) {
        track = glider::simulate_dr_mission(dr->dr, field, *ctx.glider, ctrl, heading.n_intervals);
        t0 = dr->dr.t0;
      } else {
        track = glider::simulate_heading_schedule(sched->schedule, sched->start, field, *ctx.glider, ctrl,
                                                  heading.n_intervals);
        t0 = sched->schedule.entries.front().t_start;
      }
    } catch (const glider::GuidanceError& e) {
      throw glider::StageError("simulate", e.what(), e.kind());
    }
    for (const auto& w : track.warnings)
      std::cerr << Json{{"warning", w}}.dump() << '\n';
    emit_text(out_path, [&](std::ostream& os) { glider::io::write_track_csv(os, track); });
    if (!headings_path.empty())
      emit_text(headings_path, [&](std::ostream& os) { glider::io::write_headings_csv(os, track.headings); });
    if (!metrics_path.empty()) {
      if (!plan_path.empty())
        ctx.plan = glider::summarize_plan(glider::io::plan_from_json(glider::io::read_json_file(plan_path)));
      if (!ctx.plan) throw UsageError("metrics need a plan: pass --plan");
      glider::MetricsReport r = glider::measure_track(*ctx.plan, track, t0);
      r.scenario = ctx.scenario;
      r.method = dr ? dr->dr.method : sched->method;
      r.bracket = heading.bracket;
      r.error_calls = ctx.error_calls;
      glider::io::write_json_file(metrics_path, glider::io::to_json(r));
    }
    return 0;
  }
  if (evaluate->parsed() || bench->parsed()) {
    std::vector<glider::Scenario> scenarios;
    if (!scenario_path.empty()) {
      scenarios.push_back(load_scenario(scenario_path, o));
    } else if (!suite_name.empty()) {
      scenarios = builtin_suite(suite_name, o);
    } else {
      throw UsageError("give --scenario or --suite");
    }
    if (smooth_flag)
      for (auto& s : scenarios) s.smooth = true;

    if (evaluate->parsed() && !scenario_path.empty()) {
      // Single scenario: the scenario's own heading method.
      const glider::MetricsReport r = glider::run_scenario(scenarios.front());
      emit_json(out_path, glider::io::to_json(r));
      if (!csv_path.empty())
        emit_text(csv_path, [&](std::ostream& os) {
          glider::io::write_metrics_csv_header(os);
          glider::io::write_metrics_csv_row(os, r);
        });
      return 0;
    }

    std::vector<Json> entries(scenarios.size());
    std::vector<std::string> csv_rows(scenarios.size());
    if (evaluate->parsed()) {
      parallel_for(scenarios.size(), jobs, [&](std::size_t i) {
        const auto& s = scenarios[i];
        const auto p = glider::plan_scenario(s);
        Json methods = Json::array();
        std::ostringstream rows;
        for (const auto& m : glider::compare_methods(s, p)) {
          if (m.report) {
            methods.push_back(glider::io::metrics_json(*m.report));
            glider::io::write_metrics_csv_row(rows, *m.report);
          } else {
            methods.push_back({{"method", glider::to_string(m.method)}, {"error", m.failure_kind},
                               {"message", m.failure}});
          }
        }
        entries[i] = {{"scenario", s.name}, {"plan", plan_summary_json(p)}, {"methods", methods}};
        csv_rows[i] = rows.str();
      });
      emit_json(out_path, glider::io::versioned({{"suite", suite_name}, {"scenarios", entries}}));
      if (!csv_path.empty())
        emit_text(csv_path, [&](std::ostream& os) {
          glider::io::write_metrics_csv_header(os);
          for (const auto& r : csv_rows) os << r;
        });
      return 0;
    }

    std::vector<std::array<glider::BracketBenchRow, 3>> results(scenarios.size());
    parallel_for(scenarios.size(), jobs, [&](std::size_t i) {
      glider::Scenario s = scenarios[i];
      s.method = glider::HeadingMethod::opt;
      results[i] = glider::bench_bracketing(s);
    });
    std::size_t totals[3] = {0, 0, 0};
    Json rows = Json::array();
    for (std::size_t i = 0; i < scenarios.size(); ++i)
      for (std::size_t k = 0; k < 3; ++k) {
        const auto& r = results[i][k];
        totals[k] += r.error_calls;
        rows.push_back({{"scenario", scenarios[i].name}, {"method", glider::to_string(r.method)},
                        {"n_calls", r.error_calls}, {"path_elements", r.path_elements},
                        {"position_error", r.position_error}});
      }
    emit_json(out_path, glider::io::versioned({{"rows", rows},
                                               {"totals", {{"golden", totals[0]}, {"fibonacci", totals[1]},
                                                           {"brent", totals[2]}}}}));
    if (!csv_path.empty())
      emit_text(csv_path, [&](std::ostream& os) {
        os << "scenario,method,n_calls,path_elements,position_error\n";
        for (const auto& r : rows)
          os << r["scenario"].get<std::string>() << ',' << r["method"].get<std::string>() << ','
             << r["n_calls"].get<std::size_t>() << ',' << r["path_elements"].get<std::size_t>() << ','
             << glider::io::format_double(r["position_error"].get<double>()) << '\n';
      });
    return 0;
  }
  return 0;
}

Json error_json(const std::string& kind, const std::string& message, const std::string& stage = {}) {
  Json j = {{"error", kind}, {"message", message}};
  if (!stage.empty()) j["stage"] = stage;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << error_json("usage", e.what()).dump() << '\n';
    return 2;
  } catch (const glider::StageError& e) {
    std::cerr << error_json(e.kind(), e.what(), e.stage()).dump() << '\n';
    return 1;
  } catch (const glider::GuidanceError& e) {
    std::cerr << error_json(e.kind(), e.what()).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << error_json("internal", e.what()).dump() << '\n';
    return 1;
  }
}
