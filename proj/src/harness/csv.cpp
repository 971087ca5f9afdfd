#include "aircomp/harness/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace aircomp::harness {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write output file: " + path);
  return out;
}

void scenario_cols(std::ofstream& out, const ScenarioResult& r) {
  out << r.n << ',' << format_real(r.snr_db) << ',' << r.bits << ','
      << to_string(r.kind) << ',' << r.plan.m1 << ',' << r.plan.m2 << ','
      << r.plan.m_d << ',' << format_real(r.plan.gain_analytic) << ','
      << format_real(r.plan.gain_continuous);
}

}  // namespace

void write_results_csv(const std::string& path,
                       const std::vector<ScenarioResult>& results, int bits) {
  auto out = open_out(path);
  out << "record,n,snr_db,bits,function,m1,m2,m_d,gain_analytic,"
         "gain_continuous,rms_error,lsb,trials,seed,trial,true_value,"
         "computed_value,abs_error";
  for (int j = 0; j < bits; ++j) out << ",bit_correct_" << j;
  out << ",repetitions_used\n";

  for (const ScenarioResult& r : results) {
    if (r.bits != bits)
      throw std::invalid_argument("results mix bit widths in one file");
    for (const TrialRow& t : r.trials) {
      out << "trial,";
      scenario_cols(out, r);
      out << ",,," << r.trials.size() << ',' << r.seed << ',' << t.trial << ','
          << format_real(t.true_value) << ',' << format_real(t.computed_value)
          << ',' << format_real(t.abs_error);
      for (int j = 0; j < bits; ++j)
        out << ',' << static_cast<int>(t.bit_correct[j]);
      out << ',' << t.repetitions_used << '\n';
    }
    out << "summary,";
    scenario_cols(out, r);
    out << ',' << format_real(r.rms_error) << ',' << format_real(r.output_lsb)
        << ',' << r.trials.size() << ',' << r.seed << ",,,,";
    for (int j = 0; j < bits; ++j) out << ',';
    out << ",\n";
  }
}

void write_summary_csv(const std::string& path,
                       const std::vector<ScenarioResult>& results) {
  auto out = open_out(path);
  out << "n,snr_db,bits,function,m1,m2,m_d,gain_analytic,gain_continuous,"
         "rms_error,lsb,trials,seed\n";
  for (const ScenarioResult& r : results) {
    scenario_cols(out, r);
    out << ',' << format_real(r.rms_error) << ',' << format_real(r.output_lsb)
        << ',' << r.trials.size() << ',' << r.seed << '\n';
  }
}

void write_bit_depth_csv(const std::string& path, const ScenarioResult& r) {
  auto out = open_out(path);
  out << "n,snr_db,bits,function,m1,m2,depth,bit,correct_fraction,trials,"
         "seed\n";
  double tn = static_cast<double>(r.trials.size());

  auto row = [&](int depth, int bit, double frac) {
    out << r.n << ',' << format_real(r.snr_db) << ',' << r.bits << ','
        << to_string(r.kind) << ',' << r.plan.m1 << ',' << r.plan.m2 << ','
        << depth << ',' << bit << ',' << format_real(frac) << ','
        << r.trials.size() << ',' << r.seed << '\n';
  };

  if (r.running_depth > 0) {
    int depth = r.trials.empty()
                    ? 0
                    : static_cast<int>(r.trials.front().depth_bits.size()) /
                          r.bits;
    for (int d = 0; d < depth; ++d)
      for (int j = 0; j < r.bits; ++j) {
        long c = 0;
        for (const TrialRow& t : r.trials)
          c += t.depth_bits[static_cast<std::size_t>(d) * r.bits + j];
        row(d + 1, j, static_cast<double>(c) / tn);
      }
    return;
  }
  for (int j = 0; j < r.bits; ++j) {
    long c = 0;
    for (const TrialRow& t : r.trials) c += t.bit_correct[j];
    row(static_cast<int>(r.plan.m1), j, static_cast<double>(c) / tn);
  }
}

void write_gain_sum_csv(const std::string& path,
                        const std::vector<planner::GainPoint>& pts) {
  auto out = open_out(path);
  out << "n,snr_db,bits,m1_continuous,m2_continuous,m1,m2,m_d,snr_eff_db,"
         "required_snr_db,feasible,gain_analytic,gain_continuous,"
         "gain_integer\n";
  for (const auto& p : pts) {
    const planner::Plan& pl = p.plan;
    out << pl.n << ',' << format_real(pl.snr_db) << ',' << pl.bits << ','
        << format_real(pl.m1_continuous) << ',' << format_real(pl.m2_continuous)
        << ',' << pl.m1 << ',' << pl.m2 << ',' << pl.m_d << ','
        << format_real(pl.snr_eff_db) << ',' << format_real(pl.required_snr_db)
        << ',' << (pl.feasible ? 1 : 0) << ',' << format_real(pl.gain_analytic)
        << ',' << format_real(pl.gain_continuous) << ','
        << format_real(pl.gain_integer) << '\n';
  }
}

void write_gain_max_csv(const std::string& path,
                        const std::vector<planner::GainPoint>& pts, int bits,
                        const planner::BaselineModel& baseline,
                        const phy::DetectionConfig& det,
                        int request_overhead_samples) {
  auto out = open_out(path);
  out << "n,bits,slot_samples,request_overhead_samples,m_d,gain\n";
  for (const auto& p : pts) {
    out << p.n << ',' << bits << ',' << det.slot_samples << ','
        << request_overhead_samples << ',' << baseline.samples_per_measurement()
        << ',' << format_real(p.gain) << '\n';
  }
}

}  // namespace aircomp::harness
