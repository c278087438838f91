#include "gp3/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gp3/evolution.hpp"
#include "gp3/geometry.hpp"

namespace gp3 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* kFieldNames[] = {"s1_0",           "s2_0",
                             "theta",          "varphi",
                             "beta_formula",   "beta_bargmann",
                             "beta_quadrature", "beta_sim",
                             "duration_ms",    "max_pairwise_dev"};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_field(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int parsed = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse integer for key " + key + ": " + value);
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number for key " + key + ": " + value);
  }
}

double record_field(const SweepRecord& r, int i) {
  switch (i) {
    case 0: return r.s1_0;
    case 1: return r.s2_0;
    case 2: return r.theta;
    case 3: return r.varphi;
    case 4: return r.beta_formula;
    case 5: return r.beta_bargmann;
    case 6: return r.beta_quadrature;
    case 7: return r.beta_sim;
    case 8: return r.duration_ms;
    default: return r.max_pairwise_dev;
  }
}

void set_record_field(SweepRecord& r, int i, double v) {
  switch (i) {
    case 0: r.s1_0 = v; break;
    case 1: r.s2_0 = v; break;
    case 2: r.theta = v; break;
    case 3: r.varphi = v; break;
    case 4: r.beta_formula = v; break;
    case 5: r.beta_bargmann = v; break;
    case 6: r.beta_quadrature = v; break;
    case 7: r.beta_sim = v; break;
    case 8: r.duration_ms = v; break;
    default: r.max_pairwise_dev = v; break;
  }
}

double max_pairwise_circular(const double* betas, int n) {
  double dev = kNaN;
  for (int i = 0; i < n; ++i) {
    if (std::isnan(betas[i])) continue;
    for (int j = i + 1; j < n; ++j) {
      if (std::isnan(betas[j])) continue;
      const double d = circular_distance(betas[i], betas[j]);
      if (std::isnan(dev) || d > dev) dev = d;
    }
  }
  return dev;
}

}  // namespace

double parse_angle(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty angle value");
  double scale = 1.0;
  std::string body = t;
  if (t.size() >= 2 && t.substr(t.size() - 2) == "pi") {
    scale = kPi;
    body = trim(t.substr(0, t.size() - 2));
    if (body.empty()) body = "1";
    else if (body == "-") body = "-1";
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(body, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse angle: " + t);
  }
  if (used != body.size()) throw ConfigError("cannot parse angle: " + t);
  return value * scale;
}

SweepConfig parse_config(std::istream& in) {
  SweepConfig cfg;
  bool have_s1 = false, have_s2 = false, have_sweep = false, have_out = false;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value', got: " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError("empty value for key: " + key);

    if (key == "theta") {
      cfg.theta = parse_angle(value);
    } else if (key == "varphi") {
      cfg.varphi = parse_angle(value);
    } else if (key == "s1_0") {
      cfg.fixed_value = parse_angle(value);
      have_s1 = true;
    } else if (key == "s2_0") {
      cfg.fixed_value = parse_angle(value);
      have_s2 = true;
    } else if (key == "sweep") {
      if (value == "s1_0") cfg.sweep_var = SweepVar::s1_0;
      else if (value == "s2_0") cfg.sweep_var = SweepVar::s2_0;
      else throw ConfigError("sweep must be s1_0 or s2_0");
      have_sweep = true;
    } else if (key == "start") {
      cfg.start = parse_angle(value);
    } else if (key == "stop") {
      cfg.stop = parse_angle(value);
    } else if (key == "count") {
      cfg.count = parse_int(key, value);
    } else if (key == "mode") {
      if (value == "ideal") cfg.mode = GateMode::ideal;
      else if (value == "pulse") cfg.mode = GateMode::pulse;
      else throw ConfigError("mode must be ideal or pulse");
    } else if (key == "format") {
      if (value == "csv") cfg.format = OutputFormat::csv;
      else if (value == "json") cfg.format = OutputFormat::json;
      else throw ConfigError("format must be csv or json");
    } else if (key == "out") {
      cfg.out_path = value;
      have_out = true;
    } else if (key == "quad_tolerance") {
      cfg.quad_tolerance = parse_real(key, value);
    } else if (key == "dev_threshold") {
      cfg.dev_threshold = parse_real(key, value);
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }

  if (!have_sweep) throw ConfigError("config must set sweep = s1_0 | s2_0");
  const bool fixed_is_s2 = cfg.sweep_var == SweepVar::s1_0;
  if (fixed_is_s2 ? !have_s2 : !have_s1) {
    throw ConfigError("config must fix the non-swept parameter");
  }
  if ((fixed_is_s2 && have_s1) || (!fixed_is_s2 && have_s2)) {
    throw ConfigError("the swept parameter must not also be fixed");
  }
  if (cfg.count < 2) throw ConfigError("count must be at least 2");
  if (!(cfg.start >= 0.0 && cfg.stop <= kPi / 2.0 && cfg.start < cfg.stop)) {
    throw ConfigError("grid must satisfy 0 <= start < stop <= pi/2");
  }
  if (!(cfg.fixed_value >= 0.0 && cfg.fixed_value <= kPi / 2.0)) {
    throw ConfigError("fixed s-parameter must lie in [0, pi/2]");
  }
  if (!(cfg.varphi >= 0.0 && cfg.varphi <= kPi / 2.0)) {
    throw ConfigError("varphi must lie in [0, pi/2]");
  }
  if (!std::isfinite(cfg.theta)) throw ConfigError("theta must be finite");
  if (!(cfg.quad_tolerance > 0.0)) {
    throw ConfigError("quad_tolerance must be positive");
  }
  if (!(cfg.dev_threshold > 0.0)) {
    throw ConfigError("dev_threshold must be positive");
  }
  if (!have_out) {
    cfg.out_path = cfg.format == OutputFormat::csv ? "sweep.csv" : "sweep.json";
  }
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

SweepSummary run_sweep(const SweepConfig& cfg) {
  SweepSummary summary;
  const SpinSystem sys;
  const QuadratureConfig quad{cfg.quad_tolerance, 1 << 16, 1e-5};

  double sum_sq_deg = 0.0;
  int compared = 0;

  for (int i = 0; i < cfg.count; ++i) {
    const double sv =
        cfg.start + (cfg.stop - cfg.start) * i / double(cfg.count - 1);
    SweepRecord rec;
    rec.s1_0 = cfg.sweep_var == SweepVar::s1_0 ? sv : cfg.fixed_value;
    rec.s2_0 = cfg.sweep_var == SweepVar::s2_0 ? sv : cfg.fixed_value;
    rec.theta = cfg.theta;
    rec.varphi = cfg.varphi;
    rec.beta_formula = rec.beta_bargmann = rec.beta_quadrature = rec.beta_sim =
        rec.duration_ms = kNaN;

    try {
      const CycleParams c(rec.s1_0, rec.s2_0, rec.theta, rec.varphi);
      rec.beta_formula = beta_predicted(c);
      rec.beta_quadrature = run_cycle(c, quad).geometric;
      const ExperimentResult ex = full_experiment(c, cfg.mode, sys);
      rec.beta_sim = ex.beta;
      rec.duration_ms = ex.duration * 1e3;
      try {
        rec.beta_bargmann = bargmann_gp(
            {StateVec::basis(4, 0), psi2(c), psi3(c)});
      } catch (const DegeneracyError&) {
        // a leg touches an orthogonal vertex: the invariant is undefined
        // there while the cycle itself still closes
      }
    } catch (const std::exception&) {
      rec.flagged = true;
      rec.beta_formula = rec.beta_bargmann = rec.beta_quadrature =
          rec.beta_sim = rec.duration_ms = kNaN;
    }

    const double betas[] = {rec.beta_formula, rec.beta_bargmann,
                            rec.beta_quadrature, rec.beta_sim};
    rec.max_pairwise_dev = max_pairwise_circular(betas, 4);

    if (rec.flagged) {
      ++summary.flagged_count;
    } else {
      if (!std::isnan(rec.max_pairwise_dev) &&
          rec.max_pairwise_dev > summary.max_dev) {
        summary.max_dev = rec.max_pairwise_dev;
      }
      if (!std::isnan(rec.beta_sim) && !std::isnan(rec.beta_formula)) {
        const double d_deg =
            circular_distance(rec.beta_sim, rec.beta_formula) * 180.0 / kPi;
        sum_sq_deg += d_deg * d_deg;
        ++compared;
      }
    }
    summary.records.push_back(rec);
  }

  summary.rms_sim_vs_formula_deg =
      compared > 0 ? std::sqrt(sum_sq_deg / compared) : kNaN;
  return summary;
}

void emit(const std::vector<SweepRecord>& records, OutputFormat format,
          std::ostream& out) {
  if (records.empty()) throw std::invalid_argument("no records to emit");
  if (format == OutputFormat::csv) {
    for (int i = 0; i < 10; ++i) out << kFieldNames[i] << ',';
    out << "flagged\n";
    for (const auto& r : records) {
      for (int i = 0; i < 10; ++i) out << format_field(record_field(r, i)) << ',';
      out << (r.flagged ? 1 : 0) << '\n';
    }
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json obj;
    for (int i = 0; i < 10; ++i) obj[kFieldNames[i]] = record_field(r, i);
    obj["flagged"] = r.flagged;
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

void emit_file(const std::vector<SweepRecord>& records, OutputFormat format,
               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output path: " + path);
  emit(records, format, out);
  if (!out) throw Error("failed writing output path: " + path);
}

std::vector<SweepRecord> parse_records_json(std::istream& in) {
  const auto parsed = nlohmann::json::parse(in);
  std::vector<SweepRecord> records;
  for (const auto& obj : parsed) {
    SweepRecord r;
    for (int i = 0; i < 10; ++i) {
      const auto& v = obj.at(kFieldNames[i]);
      set_record_field(r, i, v.is_null() ? kNaN : v.get<double>());
    }
    r.flagged = obj.at("flagged").get<bool>();
    records.push_back(r);
  }
  return records;
}

SweepConfig fig4a_config() {
  SweepConfig cfg;
  cfg.theta = kPi / 4.0;
  cfg.varphi = 0.0;
  cfg.sweep_var = SweepVar::s1_0;
  cfg.fixed_value = kPi / 4.0;
  cfg.out_path = "fig4a.csv";
  return cfg;
}

SweepConfig fig4b_config() {
  SweepConfig cfg = fig4a_config();
  cfg.varphi = kPi / 4.0;
  cfg.out_path = "fig4b.csv";
  return cfg;
}

}  // namespace gp3
