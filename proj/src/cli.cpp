// Copyright 2026 The cslab Authors
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

#include "cslab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cslab/bounds.hpp"
#include "cslab/config.hpp"
#include "cslab/csv.hpp"
#include "cslab/error.hpp"
#include "cslab/experiments.hpp"
#include "cslab/rng.hpp"
#include "cslab/signal_model.hpp"
#include "cslab/typicality.hpp"

namespace cslab {
namespace {

// Flags shared by `bounds` and `thresholds`.
struct PointFlags {
  int metric = 0;
  std::string regime = "linear";
  double alpha = 0.5;
  double gamma = 0.5;
  std::optional<double> beta;
  std::optional<double> snr;
  std::size_t l = 0;
  std::optional<std::size_t> m;
  std::size_t n = 0;
  double nu = 1.0;
  double power = 1.0;
  std::optional<double> zeta;
  std::optional<double> delta;
  std::optional<double> mu2;
  double target = 1e-2;
};

void add_point_flags(CLI::App* app, PointFlags& f, bool metric_required) {
  app->add_option("--metric", f.metric,
                  metric_required ? "error metric: 1 exact, 2 overlap, 3 energy (required)"
                                  : "error metric: 1 exact, 2 overlap, 3 energy (default all)")
      ->check(CLI::Range(1, 3));
  app->add_option("--regime", f.regime, "linear or sublinear")
      ->check(CLI::IsMember({"linear", "sublinear"}))
      ->capture_default_str();
  app->add_option("--alpha", f.alpha, "metric-2 overlap tolerance")->capture_default_str();
  app->add_option("--gamma", f.gamma, "metric-3 energy tolerance")->capture_default_str();
  app->add_option("--beta", f.beta, "m / l in the linear regime");
  app->add_option("--snr", f.snr, "P / nu^2; sets power = snr * nu^2");
  app->add_option("--l", f.l, "sparsity L (required)");
  app->add_option("--m", f.m, "ambient dimension M (default floor(beta * l))");
  app->add_option("--n", f.n, "number of measurements N for the bound evaluation")
      ->capture_default_str();
  app->add_option("--nu", f.nu, "noise standard deviation")->capture_default_str();
  app->add_option("--power", f.power, "signal power P")->capture_default_str();
  app->add_option("--zeta", f.zeta, "delta' scale (default per metric)");
  app->add_option("--delta", f.delta, "typicality tolerance delta (default from delta')");
  app->add_option("--mu2", f.mu2, "squared smallest modulus (default P / L, flat signal)");
  app->add_option("--target", f.target, "union-bound target for achievability N")
      ->capture_default_str();
}

RegimePoint make_point(const PointFlags& f, Metric metric) {
  if (f.l == 0) throw ConfigError("l", "--l must be at least 1");
  if (!(f.nu > 0.0)) throw ConfigError("nu", "--nu must be positive");
  RegimePoint pt;
  pt.l = f.l;
  pt.nu = f.nu;
  pt.p = f.snr ? *f.snr * f.nu * f.nu : f.power;
  if (!(pt.p > 0.0)) throw ConfigError(f.snr ? "snr" : "power", "signal power must be positive");
  if (f.m) {
    pt.m = *f.m;
    pt.beta = f.beta ? *f.beta : static_cast<double>(pt.m) / static_cast<double>(pt.l);
  } else if (f.beta) {
    pt.beta = *f.beta;
    pt.m = static_cast<std::size_t>(std::floor(pt.beta * static_cast<double>(pt.l) + 1e-9));
  } else {
    throw ConfigError("m", "give --m or --beta");
  }
  if (pt.m < pt.l) throw ConfigError("m", "--m must be at least --l");
  pt.n = f.n;
  pt.alpha = f.alpha;
  pt.gamma = f.gamma;
  pt.zeta = f.zeta ? *f.zeta : default_zeta(metric);
  pt.mu2 = f.mu2 ? *f.mu2 : pt.p / static_cast<double>(pt.l);
  if (f.delta) pt.delta = *f.delta;
  return pt;
}

Regime regime_of(const std::string& s) { return s == "sublinear" ? Regime::kSublinear : Regime::kLinear; }

int run_bounds(const PointFlags& f, std::ostream& out) {
  if (f.metric == 0) throw ConfigError("metric", "--metric is required");
  const Metric metric = metric_from_int(f.metric);
  const Regime regime = regime_of(f.regime);
  const RegimePoint pt = make_point(f, metric);
  const BoundReport r = make_bound_report(metric, regime, pt, f.target);
  out << "metric " << f.metric << ", " << f.regime << " regime, M = " << pt.m << ", L = " << pt.l
      << ", P/nu^2 = " << pt.p / (pt.nu * pt.nu) << '\n';
  out << "converse N = " << r.converse_n << '\n';
  if (r.achievability_n) {
    out << "achievability N = " << *r.achievability_n << '\n';
  } else {
    out << "achievability N = unavailable\n";
  }
  if (pt.n > pt.l) {
    out << "at N = " << pt.n << ":\n";
    out << "  atypicality bound = " << r.atypicality_bound << '\n';
    for (std::size_t k = 0; k < r.false_typicality_bound.size(); ++k) {
      out << "  false-typicality bound (overlap " << k << ") = " << r.false_typicality_bound[k]
          << '\n';
    }
    if (r.union_bound) out << "  union bound = " << *r.union_bound << '\n';
  }
  for (const auto& note : r.notes) out << "note: " << note << '\n';
  return kExitOk;
}

int run_thresholds(const PointFlags& f, std::ostream& out) {
  const Regime regime = regime_of(f.regime);
  std::vector<int> metrics = f.metric ? std::vector<int>{f.metric} : std::vector<int>{1, 2, 3};
  out << std::left << std::setw(8) << "metric" << std::setw(18) << "achievability-n"
      << "converse-n\n";
  for (int m : metrics) {
    const Metric metric = metric_from_int(m);
    const RegimePoint pt = make_point(f, metric);
    std::string ach;
    try {
      ach = std::to_string(achievability_threshold(metric, regime, pt, f.target));
    } catch (const DomainError&) {
      ach = "unavailable";
    }
    out << std::setw(8) << m << std::setw(18) << ach << converse_threshold(metric, regime, pt)
        << '\n';
  }
  out << "note: converse values keep the leading-order term only\n";
  return kExitOk;
}

void write_output(const std::vector<CsvRow>& rows, const std::vector<std::string>& schema,
                  const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    write_csv(out, rows, schema);
  } else {
    emit_csv(rows, schema, path);
  }
}

std::string format_set(const IndexSet& s) {
  std::ostringstream o;
  o << '{';
  for (std::size_t i = 0; i < s.size(); ++i) o << (i ? ", " : "") << s[i];
  o << '}';
  return o.str();
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cslab: support recovery by joint typicality, bounds and Monte Carlo sweeps"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "print help for every subcommand");
  app.footer(
      "Subcommands: sweep, bounds, tails, decode-demo, thresholds. Run '<subcommand> --help' "
      "for its flags.\nEnvironment: CS_LAB_THREADS sets the sweep worker count.");

  // sweep
  std::string config_path;
  std::vector<std::string> overrides;
  std::string sweep_out = "-";
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over (M, L, N), one CSV row per point");
  sweep->add_option("--config", config_path, "flat key = value config file");
  sweep->add_option("--set", overrides, "inline override key=value (repeatable, wins over file)");
  sweep->add_option("--out", sweep_out, "CSV output path, '-' for stdout")->capture_default_str();
  sweep->add_option("--threads", threads, "worker threads (default CS_LAB_THREADS or all cores)");
  std::ostringstream keys;
  for (const auto& k : config_keys()) keys << ' ' << k;
  sweep->footer("Config keys:" + keys.str());

  // bounds
  PointFlags bounds_flags;
  auto* bounds = app.add_subcommand("bounds", "evaluate analytic bounds and thresholds at a point");
  add_point_flags(bounds, bounds_flags, true);

  // thresholds
  PointFlags thr_flags;
  auto* thresholds =
      app.add_subcommand("thresholds", "achievability (bisection) and converse N side by side");
  add_point_flags(thresholds, thr_flags, false);

  // tails
  std::size_t tail_k = 100;
  std::vector<double> tail_lambda{0.5, 1.0, 2.0, 3.0};
  std::size_t tail_trials = 100000;
  std::uint64_t tail_seed = 1;
  std::string tail_out = "-";
  auto* tails = app.add_subcommand("tails", "chi-square deviation frequencies against e^-lambda");
  tails->add_option("--k", tail_k, "degrees of freedom (number of exponential terms)")
      ->capture_default_str();
  tails->add_option("--lambda", tail_lambda, "comma-separated lambda grid")
      ->delimiter(',')
      ->capture_default_str();
  tails->add_option("--trials", tail_trials, "Monte Carlo trials")->capture_default_str();
  tails->add_option("--seed", tail_seed, "master seed")->capture_default_str();
  tails->add_option("--out", tail_out, "CSV output path, '-' for stdout")->capture_default_str();

  // decode-demo
  std::size_t demo_m = 12, demo_l = 3, demo_n = 12;
  double demo_nu = 0.1, demo_power = 1.0;
  std::uint64_t demo_seed = 1;
  int demo_metric = 2;
  std::string demo_policy = "min-deviation";
  double demo_alpha = 0.4, demo_gamma = 0.5;
  auto* demo = app.add_subcommand("decode-demo", "draw one instance and decode it verbosely");
  demo->add_option("--m", demo_m, "ambient dimension M")->capture_default_str();
  demo->add_option("--l", demo_l, "sparsity L")->capture_default_str();
  demo->add_option("--n", demo_n, "measurements N")->capture_default_str();
  demo->add_option("--nu", demo_nu, "noise standard deviation")->capture_default_str();
  demo->add_option("--power", demo_power, "signal power P (flat profile)")->capture_default_str();
  demo->add_option("--seed", demo_seed, "master seed")->capture_default_str();
  demo->add_option("--metric", demo_metric, "metric whose default delta' is used")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  demo->add_option("--policy", demo_policy, "unique or min-deviation")
      ->check(CLI::IsMember({"unique", "min-deviation"}))
      ->capture_default_str();
  demo->add_option("--alpha", demo_alpha, "metric-2 tolerance")->capture_default_str();
  demo->add_option("--gamma", demo_gamma, "metric-3 tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    if (parsed.empty()) {
      out << app.help("", CLI::AppFormatMode::All);
    } else {
      out << parsed.front()->help();
    }
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (*sweep) {
      ExperimentConfig cfg;
      if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
      for (const auto& o : overrides) {
        const auto [k, v] = split_override(o);
        apply_setting(cfg, k, v);
      }
      expand_points(cfg);
      const auto rows = run_sweep(cfg, threads ? threads : default_threads());
      std::vector<CsvRow> csv;
      for (const auto& r : rows) csv.push_back(sweep_row(r));
      write_output(csv, sweep_schema(), sweep_out, out);
      return kExitOk;
    }
    if (*bounds) return run_bounds(bounds_flags, out);
    if (*thresholds) return run_thresholds(thr_flags, out);
    if (*tails) {
      const auto rows = tail_check(tail_k, tail_trials, tail_lambda, tail_seed);
      std::vector<CsvRow> csv;
      for (const auto& r : rows) csv.push_back(tail_row(r));
      write_output(csv, tail_schema(), tail_out, out);
      return kExitOk;
    }
    if (*demo) {
      ExperimentConfig cfg;
      cfg.metric = metric_from_int(demo_metric);
      cfg.alpha = demo_alpha;
      cfg.gamma = demo_gamma;
      cfg.nu = demo_nu;
      cfg.power = demo_power;
      cfg.trials = 1;
      cfg.master_seed = demo_seed;
      cfg.profile.beta.reset();
      cfg.regime = Regime::kSublinear;
      cfg.decoder_policy =
          demo_policy == "unique" ? DecodePolicy::kUnique : DecodePolicy::kMinDeviation;
      cfg.m_list = {demo_m};
      cfg.l_list = {demo_l};
      cfg.n_list = {demo_n};
      const ConfigPoint pt = expand_points(cfg).front();

      SeedRecord seeds;
      seeds.matrix_seed = derive_seed(demo_seed, SeedRole::kMatrix, 0, 0);
      seeds.noise_seed = derive_seed(demo_seed, SeedRole::kNoise, 0, 0);
      seeds.signal_seed = derive_seed(demo_seed, SeedRole::kSignal, 0, 0);
      const auto inst = make_instance(pt.n, pt.m, pt.l, cfg.profile, demo_power, demo_nu, seeds);
      const double mu_x = mu(inst.signal);
      TypicalityParams params{decoder_delta(cfg, pt, mu_x * mu_x), demo_nu, pt.l,
                              cfg.decoder_policy};
      const auto report = typicality_decode(inst.y, inst.a, params, {}, &inst.signal.support());
      const auto ml = ml_decode(inst.y, inst.a, pt.l);
      const auto s = score(report.chosen, inst.signal, demo_alpha, demo_gamma);
      out << "M = " << pt.m << ", L = " << pt.l << ", N = " << pt.n << ", nu = " << demo_nu
          << ", mu^2 = " << mu_x * mu_x << ", delta = " << params.delta << '\n';
      out << "true support:      " << format_set(inst.signal.support()) << '\n';
      out << "subsets scanned:   " << report.scanned << '\n';
      out << "typical sets:      " << report.typical_count
          << (report.overflow ? " (list truncated)" : "") << '\n';
      out << "true set typical:  " << (report.true_set_typical ? "yes" : "no") << '\n';
      out << "chosen (" << policy_name(cfg.decoder_policy)
          << "): " << (report.chosen ? format_set(*report.chosen) : std::string("none")) << '\n';
      out << "ml estimate:       " << format_set(ml) << '\n';
      out << "metric 1/2/3:      " << s.metric1 << ' ' << s.metric2 << ' ' << s.metric3
          << " (overlap " << s.overlap_count << ", captured energy " << s.captured_energy << ")\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "config error [" << e.key() << "]: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitRuntimeError;
}

}  // namespace cslab
