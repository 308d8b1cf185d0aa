#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specreg/bounds.hpp"
#include "specreg/experiment.hpp"
#include "specreg/report_json.hpp"
#include "specreg/spectra.hpp"

namespace fs = std::filesystem;
using namespace specreg;

namespace {

struct CommonOptions {
  std::string config_file;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> trials;
  bool large = false;
  bool stamp = false;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--config", o.config_file, "Flat key = value config file")->check(CLI::ExistingFile);
  app->add_option("--set", o.sets, "Override one config key, KEY=VALUE (repeatable)");
  app->add_option("--seed", o.seed, "Base RNG seed");
  app->add_option("--out", o.out, "Output directory");
  app->add_option("--trials", o.trials, "Trials per N")->check(CLI::PositiveNumber);
  app->add_flag("--large", o.large, "Allow N above the desk-scale ceiling");
  app->add_flag("--stamp", o.stamp, "Embed a timestamp in SVG outputs");
}

// Precedence: preset defaults < config file < --set < dedicated flags.
ExperimentConfig resolve(Preset fallback, const CommonOptions& o, std::optional<Preset> forced = std::nullopt) {
  KeyValues values;
  if (!o.config_file.empty()) values = read_key_values(o.config_file);
  for (const auto& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects KEY=VALUE, got '" + s + "'");
    values[s.substr(0, eq)] = s.substr(eq + 1);
  }
  if (forced) values["preset"] = to_string(*forced);
  if (o.seed) values["seed"] = std::to_string(*o.seed);
  if (o.out) values["out"] = *o.out;
  if (o.trials) values["trials"] = std::to_string(*o.trials);
  if (o.large) values["large"] = "true";
  if (o.stamp) values["stamp"] = "true";
  ExperimentConfig config = resolve_config(fallback, values);
  config.validate();
  return config;
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("failed to write " + path.string());
}

std::string cell_name(const std::string& stem, int n, int trial) {
  return stem + "_n" + std::to_string(n) + "_t" + std::to_string(trial) + ".csv";
}

int cmd_generate(const ExperimentConfig& config) {
  fs::create_directories(config.out);
  for (int n : config.n_list) {
    for (int t = 0; t < config.trials; ++t) {
      const ComplexMatrix m = build_cell_matrix(config, n, t);
      std::string csv = "row,col,re,im\n";
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const Complex v = m(i, j);
          if (v == Complex(0.0, 0.0)) continue;
          csv += std::to_string(i) + "," + std::to_string(j) + "," + g17(v.real()) + "," + g17(v.imag()) + "\n";
        }
      }
      const fs::path path = fs::path(config.out) / cell_name("matrix", n, t);
      write_text(path, csv);
      std::cout << path.string() << "\n";
    }
  }
  return 0;
}

int cmd_spectrum(const ExperimentConfig& config) {
  fs::create_directories(config.out);
  std::printf("%6s %6s %5s %22s %22s %12s %s\n", "N", "b", "trial", "spectral_radius", "operator_norm", "residual",
              "degraded");
  for (int n : config.n_list) {
    for (int t = 0; t < config.trials; ++t) {
      const ComplexMatrix m = build_cell_matrix(config, n, t);
      const auto eig = eigenvalues(m);
      const auto sv = singular_values(m);
      std::string csv = "kind,index,re,im\n";
      double rho = 0.0;
      for (std::size_t i = 0; i < eig.values.size(); ++i) {
        rho = std::max(rho, std::abs(eig.values[i]));
        csv += "eig," + std::to_string(i) + "," + g17(eig.values[i].real()) + "," + g17(eig.values[i].imag()) + "\n";
      }
      for (std::size_t i = 0; i < sv.values.size(); ++i) {
        csv += "sv," + std::to_string(i) + "," + g17(sv.values[i]) + ",0\n";
      }
      write_text(fs::path(config.out) / cell_name("spectrum", n, t), csv);
      std::printf("%6d %6d %5d %22.15g %22.15g %12.3e %s\n", n, config.b_rule.resolve(n), t, rho,
                  sv.values.empty() ? 0.0 : sv.values.front(), std::max(eig.residual, sv.residual),
                  eig.degraded || sv.degraded ? "yes" : "no");
    }
  }
  return 0;
}

int cmd_experiment(const ExperimentConfig& config) {
  const RunRecord record = run_experiment(config);
  emit_outputs(record, config.out);
  int failures = 0;
  for (const auto& c : record.cells) {
    if (!c.error.empty()) {
      ++failures;
      std::cerr << "cell N=" << c.n << " trial=" << c.trial << " failed: " << c.error << "\n";
    }
  }
  std::cout << "wrote " << record.cells.size() << " cells to " << config.out << "\n";
  return failures == 0 ? 0 : 1;
}

int cmd_bounds(const ExperimentConfig& config) {
  fs::create_directories(config.out);
  nlohmann::json reports = nlohmann::json::array();
  bool ok = true;
  std::printf("%6s %4s %12s %14s %14s %10s %10s %s\n", "N", "b", "g", "max_rho", "explicit", "backbone", "gelfand",
              "verdict");
  for (int n : config.n_list) {
    const int b = config.b_rule.resolve(n);
    const double g = config.g_factor / (b * std::sqrt(static_cast<double>(n)));
    const BoundReport r = check_bound_empirical(b, n, g, config.trials, config.seed);
    ok = ok && r.pass && r.power_backbone_ok;
    std::printf("%6d %4d %12.4e %14.6g %14.6g %10s %10s %s\n", n, b, g, r.observed_max_rho, r.terms.explicit_bound,
                r.power_backbone_ok ? "ok" : "FAIL", r.gelfand_ok ? "ok" : "FAIL", r.pass ? "pass" : "fail");
    nlohmann::json j = bound_report_to_json(r);
    if (config.gamma_decay) {
      const CorollaryReport c = check_corollary_empirical(*config.gamma_decay, b, n, config.trials, config.seed,
                                                          config.ensemble);
      std::printf("       corollary bound %.6g: %d violations, %d norm-event failures, max rho %.6g\n",
                  c.bound.value, c.violations, c.norm_event_failures, c.observed_max_rho);
      j["corollary"] = corollary_report_to_json(c);
    }
    reports.push_back(j);
  }
  nlohmann::json out;
  out["config"] = config_to_json(config);
  out["bound_reports"] = reports;
  write_text(fs::path(config.out) / "bounds.json", out.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_verify_lemmas(const ExperimentConfig& config) {
  const RunRecord record = run_experiment(config);
  emit_outputs(record, config.out);
  bool ok = true;
  for (const auto& r : record.lemma_reports) {
    for (const auto& p : r.products) {
      std::printf("product  b=%d N=%d k=%d cases=%ld worst_ratio=%.12f %s\n", p.b, p.n, p.k, p.cases, p.worst_ratio,
                  p.pass ? "pass" : "FAIL");
      ok = ok && p.pass;
    }
    std::printf("secsum   b=%d N=%d g=%.4e entries=%zu %s\n", r.secsum.b, r.secsum.n, r.secsum.g,
                r.secsum.entries.size(), r.secsum.pass ? "pass" : "FAIL");
    std::printf("relation b=%d N=%d relation1=%s relation2=%s\n", r.relations.b, r.relations.n,
                r.relations.relation1_ok ? "pass" : "FAIL", r.relations.relation2_ok ? "pass" : "FAIL");
    ok = ok && r.secsum.pass && r.relations.relation1_ok && r.relations.relation2_ok;
  }
  return ok ? 0 : 1;
}

int cmd_audit(const std::string& dir, double tol) {
  const AuditReport r = audit_outputs(dir, tol);
  for (const auto& m : r.messages) std::cout << "mismatch: " << m << "\n";
  std::printf("audited %d cells, %d values, max |diff| %.3e: %s\n", r.cells_checked, r.values_checked,
              r.max_abs_diff, r.ok() ? "ok" : "MISMATCH");
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral regularization laboratory"};
  app.require_subcommand(1);

  CommonOptions generate_opts, spectrum_opts, experiment_opts, bounds_opts, lemmas_opts, audit_opts;

  auto* generate = app.add_subcommand("generate", "Write cell matrices as sparse CSV (row,col,re,im)");
  add_common(generate, generate_opts);

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and singular values of each cell matrix");
  add_common(spectrum, spectrum_opts);

  std::string preset_name;
  auto* experiment = app.add_subcommand("experiment", "Run a preset and emit CSV, JSON and SVG outputs");
  experiment->add_option("preset", preset_name, "fig2, fig3, corner, bounds, lemmas or custom")->required();
  add_common(experiment, experiment_opts);

  auto* bounds = app.add_subcommand("bounds", "Monte Carlo check of the explicit spectral radius bound");
  add_common(bounds, bounds_opts);

  auto* lemmas = app.add_subcommand("verify-lemmas", "Check the norm-product lemmas and norm relations");
  add_common(lemmas, lemmas_opts);

  std::string audit_dir;
  double audit_tol = 1e-12;
  auto* audit = app.add_subcommand("audit", "Recompute summary.json from eigenvalues.csv and the config echo");
  audit->add_option("dir", audit_dir, "Output directory of a previous run");
  audit->add_option("--tol", audit_tol, "Relative agreement tolerance");
  add_common(audit, audit_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return cmd_generate(resolve(Preset::custom, generate_opts));
    if (*spectrum) return cmd_spectrum(resolve(Preset::custom, spectrum_opts));
    if (*experiment) {
      const Preset p = parse_preset(preset_name);
      return cmd_experiment(resolve(p, experiment_opts, p));
    }
    if (*bounds) return cmd_bounds(resolve(Preset::bounds, bounds_opts));
    if (*lemmas) return cmd_verify_lemmas(resolve(Preset::lemmas, lemmas_opts, Preset::lemmas));
    if (*audit) {
      if (audit_dir.empty()) audit_dir = audit_opts.out.value_or("");
      if (audit_dir.empty()) throw std::invalid_argument("audit: give a directory or --out");
      return cmd_audit(audit_dir, audit_tol);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
