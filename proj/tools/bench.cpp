#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "aircomp/harness/scenario.hpp"

using namespace aircomp;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool rows_equal(const harness::ScenarioResult& a,
                const harness::ScenarioResult& b) {
  if (a.trials.size() != b.trials.size()) return false;
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    const auto& x = a.trials[i];
    const auto& y = b.trials[i];
    if (x.true_value != y.true_value || x.computed_value != y.computed_value ||
        x.abs_error != y.abs_error || x.bit_correct != y.bit_correct ||
        x.repetitions_used != y.repetitions_used)
      return false;
  }
  return a.rms_error == b.rms_error;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 100, trials = 2000, bits = 8;
  double snr_db = 10.0;
  std::string fn = "sum";
  std::uint64_t seed = 1;

  CLI::App app{"compare the serial reference path against the parallel one"};
  app.add_option("--n", n)->check(CLI::PositiveNumber);
  app.add_option("--trials", trials)->check(CLI::PositiveNumber);
  app.add_option("--bits", bits)->check(CLI::Range(1, 24));
  app.add_option("--snr-db", snr_db);
  app.add_option("--function", fn);
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  harness::ScenarioConfig cfg;
  cfg.n_values = {n};
  cfg.snr_db_values = {snr_db};
  cfg.bits = bits;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.function.kind = harness::function_from_string(fn);

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif

  auto t0 = Clock::now();
  auto serial = harness::run_scenario(cfg, n, snr_db, harness::ExecMode::serial);
  double ts = seconds_since(t0);

  t0 = Clock::now();
  auto parallel =
      harness::run_scenario(cfg, n, snr_db, harness::ExecMode::parallel);
  double tp = seconds_since(t0);

  std::printf("function=%s n=%d snr_db=%g bits=%d trials=%d m1=%lld m2=%lld\n",
              fn.c_str(), n, snr_db, bits, trials,
              static_cast<long long>(serial.plan.m1),
              static_cast<long long>(serial.plan.m2));
  std::printf("serial    %8.3f s   %10.1f trials/s\n", ts, trials / ts);
  std::printf("parallel  %8.3f s   %10.1f trials/s   (%d threads)\n", tp,
              trials / tp, threads);
  std::printf("speedup   %8.2fx\n", ts / tp);

  if (!rows_equal(serial, parallel)) {
    std::printf("MISMATCH: serial and parallel results differ\n");
    return 1;
  }
  std::printf("results identical across paths\n");
  return 0;
}
