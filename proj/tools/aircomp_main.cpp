#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "aircomp/harness/csv.hpp"

namespace fs = std::filesystem;
using namespace aircomp;

namespace {

void print_plan(const planner::Plan& p) {
  std::cout << "n                " << p.n << "\n"
            << "snr_db           " << harness::format_real(p.snr_db) << "\n"
            << "bits             " << p.bits << "\n"
            << "required_snr_db  " << harness::format_real(p.required_snr_db)
            << "\n"
            << "m1_continuous    " << harness::format_real(p.m1_continuous)
            << "\n"
            << "m2_continuous    " << harness::format_real(p.m2_continuous)
            << "\n"
            << "m1               " << p.m1 << "\n"
            << "m2               " << p.m2 << "\n"
            << "snr_eff_db       " << harness::format_real(p.snr_eff_db) << "\n"
            << "feasible         " << (p.feasible ? "yes" : "no") << "\n"
            << "m_d              " << p.m_d << "\n"
            << "gain_analytic    " << harness::format_real(p.gain_analytic)
            << "\n"
            << "gain_continuous  " << harness::format_real(p.gain_continuous)
            << "\n"
            << "gain_integer     " << harness::format_real(p.gain_integer)
            << "\n";
}

int do_plan(int n, double snr_db, int bits, std::int64_t md) {
  planner::Plan p = planner::optimal_plan(n, snr_db, bits);
  if (md > 0) {
    double sc = static_cast<double>(md) / static_cast<double>(p.m_d);
    p.m_d = md;
    p.gain_analytic *= sc;
    p.gain_continuous *= sc;
    p.gain_integer *= sc;
  }
  print_plan(p);
  return 0;
}

harness::ScenarioConfig load_for(const std::string& path, bool seed_set,
                                 std::uint64_t seed) {
  harness::ScenarioConfig cfg = harness::load_config(path);
  if (seed_set) cfg.seed = seed;
  return cfg;
}

int do_run(const harness::ScenarioConfig& cfg, const std::string& out_flag,
           harness::ExecMode mode) {
  if (!cfg.scalar())
    throw harness::ConfigError(
        "run expects a single n and snr_db; use sweep for grids");
  auto res = harness::run_scenario(cfg, cfg.n_values.front(),
                                   cfg.snr_db_values.front(), mode);
  std::string out = !out_flag.empty() ? out_flag
                    : !cfg.out.empty() ? cfg.out
                                       : std::string("results.csv");
  harness::write_results_csv(out, {res}, cfg.bits);
  std::cout << "function=" << harness::to_string(res.kind) << " n=" << res.n
            << " snr_db=" << harness::format_real(res.snr_db)
            << " trials=" << res.trials.size()
            << " m1=" << res.plan.m1 << " m2=" << res.plan.m2
            << " rms_error=" << harness::format_real(res.rms_error)
            << " lsb=" << harness::format_real(res.output_lsb) << "\n"
            << "wrote " << out << "\n";
  return 0;
}

int do_sweep(const harness::ScenarioConfig& cfg, const std::string& out_dir,
             harness::ExecMode mode) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw harness::IoError("cannot create output directory: " + out_dir);

  auto results = harness::run_sweep(cfg, mode);
  auto pts = planner::gain_curve(cfg.n_values, cfg.snr_db_values, cfg.bits,
                                 cfg.baseline, planner::GainFunction::sum);

  std::string results_path = (fs::path(out_dir) / "results.csv").string();
  std::string summary_path = (fs::path(out_dir) / "summary.csv").string();
  std::string gain_path = (fs::path(out_dir) / "gain_sum.csv").string();
  harness::write_results_csv(results_path, results, cfg.bits);
  harness::write_summary_csv(summary_path, results);
  harness::write_gain_sum_csv(gain_path, pts);
  std::cout << "wrote " << results_path << "\n"
            << "wrote " << summary_path << "\n"
            << "wrote " << gain_path << "\n";
  return 0;
}

int do_figure(const std::string& which, harness::ScenarioConfig cfg,
              const std::string& out, harness::ExecMode mode) {
  if (which == "gain-sum") {
    auto pts = planner::gain_curve(cfg.n_values, cfg.snr_db_values, cfg.bits,
                                   cfg.baseline, planner::GainFunction::sum);
    harness::write_gain_sum_csv(out, pts);
  } else if (which == "gain-max") {
    auto pts = planner::gain_curve(cfg.n_values, cfg.snr_db_values, cfg.bits,
                                   cfg.baseline, planner::GainFunction::max,
                                   cfg.detection, cfg.request_overhead_samples);
    harness::write_gain_max_csv(out, pts, cfg.bits, cfg.baseline,
                                cfg.detection, cfg.request_overhead_samples);
  } else {  // bit-error
    if (!cfg.scalar())
      throw harness::ConfigError("figure bit-error expects scalar n/snr_db");
    if (cfg.function.kind != harness::FunctionKind::sum)
      throw harness::ConfigError("figure bit-error requires function sum");
    if (cfg.running_depth == 0) {
      auto plan = planner::optimal_plan(cfg.n_values.front(),
                                        cfg.snr_db_values.front(), cfg.bits,
                                        cfg.baseline);
      cfg.running_depth = static_cast<int>(
          cfg.m1_override > 0 ? cfg.m1_override : plan.m1);
    }
    auto res = harness::run_scenario(cfg, cfg.n_values.front(),
                                     cfg.snr_db_values.front(), mode);
    harness::write_bit_depth_csv(out, res);
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"over-the-air aggregation: analytical planner and baseband "
               "Monte Carlo harness"};
  app.require_subcommand(1);

  int plan_n = 0, plan_bits = 0;
  double plan_snr = 0.0;
  std::int64_t plan_md = 0;
  auto* plan = app.add_subcommand("plan", "print the repetition plan and gain");
  plan->add_option("--n", plan_n, "cluster size")
      ->required()
      ->check(CLI::PositiveNumber);
  plan->add_option("--snr-db", plan_snr, "per-sensor link SNR in dB")
      ->required();
  plan->add_option("--bits", plan_bits, "result resolution in bits")
      ->required()
      ->check(CLI::Range(1, 24));
  plan->add_option("--md", plan_md, "override baseline samples per measurement")
      ->check(CLI::PositiveNumber);

  std::string run_config, run_out;
  std::uint64_t run_seed = 0;
  bool run_serial = false;
  auto* run = app.add_subcommand("run", "Monte Carlo run of one scenario");
  run->add_option("--config", run_config, "JSON scenario config")->required();
  auto* run_seed_opt = run->add_option("--seed", run_seed, "override seed");
  run->add_option("--out", run_out, "output CSV path");
  run->add_flag("--serial", run_serial, "single-threaded reference path");

  std::string sweep_config, sweep_out;
  std::uint64_t sweep_seed = 0;
  bool sweep_serial = false;
  auto* sweep = app.add_subcommand("sweep", "run the configured (n, snr) grid");
  sweep->add_option("--config", sweep_config, "JSON scenario config")
      ->required();
  sweep->add_option("--out", sweep_out, "output directory")->required();
  auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "override seed");
  sweep->add_flag("--serial", sweep_serial, "single-threaded reference path");

  std::string fig_which, fig_config, fig_out;
  bool fig_serial = false;
  auto* figure = app.add_subcommand("figure", "emit plot-ready CSV tables");
  figure->add_option("kind", fig_which, "gain-sum, gain-max or bit-error")
      ->required()
      ->check(CLI::IsMember({"gain-sum", "gain-max", "bit-error"}));
  figure->add_option("--config", fig_config, "JSON scenario config")
      ->required();
  figure->add_option("--out", fig_out, "output CSV path")->required();
  figure->add_flag("--serial", fig_serial, "single-threaded reference path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(plan))
      return do_plan(plan_n, plan_snr, plan_bits, plan_md);
    if (app.got_subcommand(run))
      return do_run(load_for(run_config, run_seed_opt->count() > 0, run_seed),
                    run_out,
                    run_serial ? harness::ExecMode::serial
                               : harness::ExecMode::parallel);
    if (app.got_subcommand(sweep))
      return do_sweep(
          load_for(sweep_config, sweep_seed_opt->count() > 0, sweep_seed),
          sweep_out,
          sweep_serial ? harness::ExecMode::serial
                       : harness::ExecMode::parallel);
    if (app.got_subcommand(figure))
      return do_figure(fig_which, harness::load_config(fig_config), fig_out,
                       fig_serial ? harness::ExecMode::serial
                                  : harness::ExecMode::parallel);
  } catch (const harness::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const harness::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
