#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "specreg/experiment.hpp"
#include "specreg/model_matrices.hpp"
#include "specreg/report_json.hpp"
#include "specreg/spectra.hpp"

namespace specreg {

using nlohmann::json;

namespace {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_fixed(double x, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

// Writes through `path.tmp` and renames; a failed write leaves no file behind.
void write_file(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("failed to write " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("failed to finalize " + path.string());
  }
}

std::string svg_scatter(const CellRecord& cell, const std::string& config_echo, bool stamp) {
  constexpr double kSize = 480.0;
  constexpr double kHalfWidth = 1.5;
  auto px = [](double x) { return (x + kHalfWidth) / (2.0 * kHalfWidth) * kSize; };
  auto py = [](double y) { return (kHalfWidth - y) / (2.0 * kHalfWidth) * kSize; };

  std::string echo = config_echo;
  for (auto pos = echo.find("--"); pos != std::string::npos; pos = echo.find("--")) echo.replace(pos, 2, "- -");

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
  s << "<!-- config: " << echo << " -->\n";
  if (stamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    s << "<!-- generated: " << buf << " -->\n";
  }
  s << "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";
  s << "<line x1=\"0\" y1=\"240\" x2=\"480\" y2=\"240\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  s << "<line x1=\"240\" y1=\"0\" x2=\"240\" y2=\"480\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  s << "<circle cx=\"240\" cy=\"240\" r=\"" << format_fixed(kSize / (2.0 * kHalfWidth), 3)
    << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1\"/>\n";
  s << "<text x=\"8\" y=\"18\" font-family=\"sans-serif\" font-size=\"12\">N=" << cell.n << " b=" << cell.b
    << " trial=" << cell.trial << "</text>\n";
  s << "<g fill=\"#1f77b4\">\n";
  for (const auto& z : cell.eigenvalues) {
    s << "<circle cx=\"" << format_fixed(px(z.real()), 3) << "\" cy=\"" << format_fixed(py(z.imag()), 3)
      << "\" r=\"1.5\"/>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

}  // namespace

std::string log_tail_key(double eps) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "log_tail_%g", eps);
  return buf;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["preset"] = to_string(c.preset);
  j["N_list"] = c.n_list;
  j["b_rule"] = c.b_rule.to_string();
  j["s"] = c.s;
  j["kappa"] = c.kappa;
  j["kappa_prime"] = c.kappa_prime;
  j["ensemble"] = to_string(c.ensemble);
  j["beta"] = beta(c.ensemble);
  j["gamma_decay"] = c.gamma_decay ? json(*c.gamma_decay) : json(nullptr);
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["corner_exponent"] = c.corner_exponent;
  j["g_factor"] = c.g_factor;
  j["tail_eps"] = c.tail_eps;
  j["tail_z"] = {c.tail_z.real(), c.tail_z.imag()};
  j["large"] = c.large;
  j["stamp"] = c.stamp;
  j["jobs"] = c.jobs;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c = preset_defaults(parse_preset(j.at("preset").get<std::string>()));
  c.n_list = j.at("N_list").get<std::vector<int>>();
  c.b_rule = BRule::parse(j.at("b_rule").get<std::string>());
  c.s = j.at("s").get<double>();
  c.kappa = j.at("kappa").get<double>();
  c.kappa_prime = j.at("kappa_prime").get<double>();
  c.ensemble = parse_ensemble(j.at("ensemble").get<std::string>());
  if (j.at("gamma_decay").is_null()) {
    c.gamma_decay.reset();
  } else {
    c.gamma_decay = j.at("gamma_decay").get<double>();
  }
  c.trials = j.at("trials").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.out = j.at("out").get<std::string>();
  c.corner_exponent = j.at("corner_exponent").get<double>();
  c.g_factor = j.at("g_factor").get<double>();
  c.tail_eps = j.at("tail_eps").get<std::vector<double>>();
  const auto z = j.at("tail_z").get<std::vector<double>>();
  c.tail_z = Complex(z.at(0), z.at(1));
  c.large = j.at("large").get<bool>();
  c.stamp = j.at("stamp").get<bool>();
  c.jobs = j.at("jobs").get<int>();
  return c;
}

json bound_terms_to_json(const BoundTerms& t) {
  return {{"b", t.b},   {"N", t.n},   {"g", t.g}, {"hypothesis_ok", t.hypothesis_ok},
          {"S1", t.s1}, {"S2", t.s2}, {"explicit_bound", t.explicit_bound}};
}

json bound_report_to_json(const BoundReport& r) {
  json j = bound_terms_to_json(r.terms);
  j["simplified_bound"] = r.simplified_bound;
  j["trials"] = r.trials;
  j["observed_max_rho"] = r.observed_max_rho;
  j["observed_max_power_norm"] = r.observed_max_power_norm;
  j["degraded_trials"] = r.degraded_trials;
  j["power_backbone_ok"] = r.power_backbone_ok;
  j["gelfand_ok"] = r.gelfand_ok;
  j["verdict"] = r.pass ? "pass" : "fail";
  json rho = json::array();
  json power = json::array();
  for (const auto& t : r.per_trial) {
    rho.push_back(t.rho);
    power.push_back(t.power_norm);
  }
  j["rho"] = rho;
  j["power_norm"] = power;
  return j;
}

json corollary_report_to_json(const CorollaryReport& r) {
  json j;
  j["bound"] = r.bound.value;
  j["gamma_ok"] = r.bound.gamma_ok;
  j["b_ok"] = r.bound.b_ok;
  j["slack"] = r.slack;
  j["trials"] = r.trials;
  j["norm_event_failures"] = r.norm_event_failures;
  j["violations"] = r.violations;
  j["explicit_violations"] = r.explicit_violations;
  j["observed_max_rho"] = r.observed_max_rho;
  json rho = json::array();
  for (const auto& t : r.per_trial) rho.push_back(t.rho);
  j["rho"] = rho;
  return j;
}

json lemma_product_to_json(const LemmaProductReport& r) {
  return {{"b", r.b},
          {"N", r.n},
          {"k", r.k},
          {"cases", r.cases},
          {"worst_ratio", r.worst_ratio},
          {"verdict", r.pass ? "pass" : "fail"}};
}

json secsum_to_json(const SecsumReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"ell", e.ell}, {"admissible", e.admissible}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"holds", e.holds}});
  }
  return {{"b", r.b},
          {"N", r.n},
          {"g", r.g},
          {"threshold", r.threshold},
          {"hypothesis_ok", r.hypothesis_ok},
          {"entries", entries},
          {"verdict", r.pass ? "pass" : "fail"}};
}

json relations_to_json(const RelationReport& r) {
  return {{"b", r.b},
          {"N", r.n},
          {"relation1_cases", r.relation1_cases},
          {"relation1_ok", r.relation1_ok},
          {"relation2_cases", r.relation2_cases},
          {"relation2_ok", r.relation2_ok}};
}

json summary_to_json(const RunRecord& record) {
  const auto& cfg = record.config;
  json j;
  j["config"] = config_to_json(cfg);
  json results = json::array();
  for (int n : cfg.n_list) {
    json entry;
    entry["n"] = n;
    entry["b"] = cfg.b_rule.resolve(n);
    json trials = json::array(), radius = json::array(), mean = json::array(), radial = json::array(),
         angular = json::array(), residual = json::array(), degraded = json::array(), errors = json::array(),
         deviation = json::array();
    std::vector<json> tails(cfg.tail_eps.size(), json::array());
    std::vector<json> zeros(cfg.tail_eps.size(), json::array());
    bool any_deviation = false;
    for (const auto& c : record.cells) {
      if (c.n != n) continue;
      const bool ok = c.error.empty();
      trials.push_back(c.trial);
      radius.push_back(ok ? c.spectral_radius : nan());
      mean.push_back(ok ? c.mean_modulus : nan());
      radial.push_back(ok ? c.radial_ks : nan());
      angular.push_back(ok ? c.angular_ks : nan());
      residual.push_back(ok ? c.residual : nan());
      degraded.push_back(c.degraded);
      errors.push_back(c.error);
      for (std::size_t e = 0; e < cfg.tail_eps.size(); ++e) {
        const bool have = ok && e < c.log_tails.size();
        tails[e].push_back(have ? c.log_tails[e].value : nan());
        zeros[e].push_back(have ? c.log_tails[e].zero_atoms : 0);
      }
      if (c.exact_max_deviation) any_deviation = true;
      deviation.push_back(c.exact_max_deviation ? *c.exact_max_deviation : nan());
    }
    entry["trials"] = trials;
    entry["spectral_radius"] = radius;
    entry["mean_modulus"] = mean;
    entry["radial_ks"] = radial;
    entry["angular_ks"] = angular;
    entry["residual"] = residual;
    entry["degraded"] = degraded;
    entry["errors"] = errors;
    for (std::size_t e = 0; e < cfg.tail_eps.size(); ++e) {
      entry[log_tail_key(cfg.tail_eps[e])] = tails[e];
      entry[log_tail_key(cfg.tail_eps[e]) + "_zero_atoms"] = zeros[e];
    }
    if (any_deviation) entry["exact_max_deviation"] = deviation;
    results.push_back(entry);
  }
  j["results"] = results;
  if (!record.bound_reports.empty()) {
    json reports = json::array();
    for (const auto& r : record.bound_reports) reports.push_back(bound_report_to_json(r));
    j["bound_reports"] = reports;
  }
  if (!record.lemma_reports.empty()) {
    json reports = json::array();
    for (const auto& r : record.lemma_reports) {
      json products = json::array();
      for (const auto& p : r.products) products.push_back(lemma_product_to_json(p));
      reports.push_back({{"n", r.n},
                         {"b", r.b},
                         {"products", products},
                         {"secsum", secsum_to_json(r.secsum)},
                         {"relations", relations_to_json(r.relations)}});
    }
    j["lemma_reports"] = reports;
  }
  return j;
}

void emit_outputs(const RunRecord& record, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const json config = config_to_json(record.config);

  std::string csv = "n,trial,index,re,im\n";
  for (const auto& c : record.cells) {
    for (std::size_t i = 0; i < c.eigenvalues.size(); ++i) {
      csv += std::to_string(c.n) + "," + std::to_string(c.trial) + "," + std::to_string(i) + "," +
             format_g17(c.eigenvalues[i].real()) + "," + format_g17(c.eigenvalues[i].imag()) + "\n";
    }
  }
  write_file(dir / "eigenvalues.csv", csv);
  write_file(dir / "summary.json", summary_to_json(record).dump(2) + "\n");

  json timings;
  timings["config"] = config;
  json cells = json::array();
  for (const auto& c : record.cells) {
    cells.push_back({{"n", c.n},
                     {"trial", c.trial},
                     {"build_s", c.timing.build},
                     {"spectrum_s", c.timing.spectrum},
                     {"measures_s", c.timing.measures}});
  }
  timings["cells"] = cells;
  write_file(dir / "timings.json", timings.dump(2) + "\n");

  const std::string echo = config.dump();
  for (const auto& c : record.cells) {
    const auto name = "scatter_n" + std::to_string(c.n) + "_t" + std::to_string(c.trial) + ".svg";
    write_file(dir / name, svg_scatter(c, echo, record.config.stamp));
  }
}

namespace {

std::map<std::pair<int, int>, std::vector<Complex>> read_eigenvalue_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("audit: cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "n,trial,index,re,im") throw std::runtime_error("audit: unexpected CSV header '" + line + "'");
  std::map<std::pair<int, int>, std::vector<Complex>> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string f[5];
    for (auto& x : f) std::getline(ss, x, ',');
    auto& v = out[{std::stoi(f[0]), std::stoi(f[1])}];
    if (static_cast<std::size_t>(std::stoul(f[2])) != v.size()) {
      throw std::runtime_error("audit: CSV rows out of order at '" + line + "'");
    }
    v.emplace_back(std::strtod(f[3].c_str(), nullptr), std::strtod(f[4].c_str(), nullptr));
  }
  return out;
}

struct Comparer {
  AuditReport& report;
  double tol;

  void operator()(const std::string& what, const json& stored, double recomputed) {
    ++report.values_checked;
    const double s = stored.is_null() ? nan() : stored.get<double>();
    const double diff = std::abs(s - recomputed);
    if (!(diff <= tol * std::max(1.0, std::abs(recomputed)))) {
      ++report.mismatches;
      report.messages.push_back(what + ": stored " + format_g17(s) + " vs recomputed " + format_g17(recomputed));
    }
    if (std::isfinite(diff)) report.max_abs_diff = std::max(report.max_abs_diff, diff);
  }
};

}  // namespace

AuditReport audit_outputs(const std::filesystem::path& dir, double tol) {
  std::ifstream in(dir / "summary.json");
  if (!in) throw std::runtime_error("audit: cannot open " + (dir / "summary.json").string());
  const json summary = json::parse(in);
  const ExperimentConfig config = config_from_json(summary.at("config"));
  const auto eig = read_eigenvalue_csv(dir / "eigenvalues.csv");

  AuditReport report;
  Comparer compare{report, tol};
  for (const auto& entry : summary.at("results")) {
    const int n = entry.at("n").get<int>();
    const auto& trials = entry.at("trials");
    for (std::size_t i = 0; i < trials.size(); ++i) {
      const int trial = trials[i].get<int>();
      if (!entry.at("errors")[i].get<std::string>().empty()) continue;
      const auto it = eig.find({n, trial});
      const std::string tag = "N=" + std::to_string(n) + " trial=" + std::to_string(trial);
      if (it == eig.end()) {
        ++report.mismatches;
        report.messages.push_back(tag + ": eigenvalues missing from CSV");
        continue;
      }
      ++report.cells_checked;
      const SpectrumStats stats = spectrum_stats(it->second);
      compare(tag + " spectral_radius", entry.at("spectral_radius")[i], stats.spectral_radius);
      compare(tag + " mean_modulus", entry.at("mean_modulus")[i], stats.mean_modulus);
      compare(tag + " radial_ks", entry.at("radial_ks")[i], stats.radial_ks);
      compare(tag + " angular_ks", entry.at("angular_ks")[i], stats.angular_ks);
      if (entry.contains("exact_max_deviation")) {
        const Complex delta = std::pow(static_cast<double>(n), -config.corner_exponent);
        compare(tag + " exact_max_deviation", entry.at("exact_max_deviation")[i],
                matched_max_deviation(exact_perturbed_shift_spectrum(n, delta).values, it->second));
      }
      if (!config.tail_eps.empty()) {
        const RealMeasure nu = hermitized_shifted_measure(build_cell_matrix(config, n, trial), config.tail_z);
        for (double eps : config.tail_eps) {
          const auto tail = log_tail(nu, eps);
          compare(tag + " " + log_tail_key(eps), entry.at(log_tail_key(eps))[i], tail.value);
          compare(tag + " " + log_tail_key(eps) + "_zero_atoms", entry.at(log_tail_key(eps) + "_zero_atoms")[i],
                  static_cast<double>(tail.zero_atoms));
        }
      }
    }
  }
  return report;
}

}  // namespace specreg
