// Configuration-driven parameter sweeps: one grid point per record, with the
// closure phase computed four ways (closed form, Bargmann invariant,
// quadrature over the lifts, simulated experiment) and cross-checked.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gp3/nmr.hpp"
#include "gp3/types.hpp"

namespace gp3 {

enum class SweepVar { s1_0, s2_0 };
enum class OutputFormat { csv, json };

struct SweepConfig {
  double theta = kPi / 4.0;
  double varphi = 0.0;
  SweepVar sweep_var = SweepVar::s1_0;
  double fixed_value = kPi / 4.0;  // value of the non-swept s-parameter
  double start = 0.0;              // grid over [0, pi/2]
  double stop = kPi / 2.0;
  int count = 17;
  GateMode mode = GateMode::ideal;
  double quad_tolerance = 1e-10;
  double dev_threshold = 1e-6;  // rad, pass/fail bound on max_pairwise_dev
  std::string out_path;         // empty: derived from format
  OutputFormat format = OutputFormat::csv;
};

struct SweepRecord {
  double s1_0 = 0.0;
  double s2_0 = 0.0;
  double theta = 0.0;
  double varphi = 0.0;
  double beta_formula = 0.0;     // closed form
  double beta_bargmann = 0.0;    // overlap-product invariant
  double beta_quadrature = 0.0;  // phase functionals over the three lifts
  double beta_sim = 0.0;         // simulated interferometry readout
  double duration_ms = 0.0;
  double max_pairwise_dev = 0.0;  // circular, over the defined betas
  bool flagged = false;           // cycle failed to close at this point
};

struct SweepSummary {
  std::vector<SweepRecord> records;
  int flagged_count = 0;
  double max_dev = 0.0;                  // over unflagged records
  double rms_sim_vs_formula_deg = 0.0;   // degrees

  bool passed(double dev_threshold) const {
    return flagged_count == 0 && max_dev < dev_threshold;
  }
};

// Angles in config files are raw radians or multiples of pi ("0.25pi").
double parse_angle(const std::string& text);

// Flat key = value text; '#' starts a comment. Keys: theta, varphi, s1_0,
// s2_0, sweep, start, stop, count, mode, format, out, quad_tolerance,
// dev_threshold. Exactly one of s1_0/s2_0 fixes the non-swept parameter.
SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::string& path);

SweepSummary run_sweep(const SweepConfig& cfg);

// Fixed header and field order matching SweepRecord; deterministic bytes.
void emit(const std::vector<SweepRecord>& records, OutputFormat format,
          std::ostream& out);
void emit_file(const std::vector<SweepRecord>& records, OutputFormat format,
               const std::string& path);

std::vector<SweepRecord> parse_records_json(std::istream& in);

// The two bundled demo sweeps: theta = pi/4, s2_0 = pi/4 fixed, s1_0 swept
// over 17 points on [0, pi/2], with varphi = 0 and pi/4 respectively.
SweepConfig fig4a_config();
SweepConfig fig4b_config();

}  // namespace gp3
