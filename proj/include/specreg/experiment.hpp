#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specreg/bounds.hpp"
#include "specreg/matrix.hpp"
#include "specreg/measures.hpp"
#include "specreg/noise.hpp"

namespace specreg {

enum class Preset { fig2, fig3, corner, bounds, lemmas, custom };

std::string to_string(Preset p);
Preset parse_preset(const std::string& text);

/// How the block size b is chosen for each N.
struct BRule {
  enum class Kind { shift, log_n, fixed };
  Kind kind = Kind::shift;
  int fixed_b = 0;

  /// shift: b = N-1 (the plain shift T_N); logN: b = ceil(ln N); fixed: b.
  int resolve(int n) const;
  std::string to_string() const;
  static BRule parse(const std::string& text);
};

/// Largest N accepted without the `large` flag.
inline constexpr int kDeskScaleMaxN = 2048;

struct ExperimentConfig {
  Preset preset = Preset::custom;
  std::vector<int> n_list;
  BRule b_rule;
  /// Noise entries have standard deviation N^{-s}.
  double s = 3.5;
  double kappa = 1.0;
  double kappa_prime = 7.0;
  EnsembleKind ensemble = EnsembleKind::complex_gaussian;
  /// When set, noise is exp(-gamma_decay * b) times a unit-variance Gaussian.
  std::optional<double> gamma_decay;
  int trials = 1;
  std::uint64_t seed = 1;
  std::string out = "out";

  /// corner preset: delta = N^{-corner_exponent}.
  double corner_exponent = 3.0;
  /// bounds preset: g = g_factor / (b sqrt N).
  double g_factor = 0.25;
  /// Log-tail levels; empty disables the hermitized log-tail stage.
  std::vector<double> tail_eps{0.1, 0.01};
  /// Shift z of the hermitized measure used for log tails.
  Complex tail_z{0.5, 0.0};

  bool large = false;
  bool stamp = false;
  int jobs = 1;

  VarianceProfile profile() const { return {kappa, kappa_prime, s}; }
  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

/// Defaults for a preset; fields can then be overridden.
ExperimentConfig preset_defaults(Preset p);

using KeyValues = std::map<std::string, std::string>;

/// Flat `key = value` text, one entry per line, `#` starts a comment.
KeyValues read_key_values(const std::filesystem::path& path);
KeyValues parse_key_values(const std::string& text);

/// Applies overrides; unknown keys are rejected. Recognised keys are the field
/// names above: preset, N_list, b_rule, s, kappa, kappa_prime, ensemble,
/// gamma_decay, trials, seed, out, corner_exponent, g_factor, tail_eps, tail_z,
/// large, stamp, jobs.
void apply_overrides(ExperimentConfig& config, const KeyValues& values);

/// Builds a config: preset defaults (preset taken from `values` when present),
/// then `values` applied on top.
ExperimentConfig resolve_config(Preset fallback, const KeyValues& values);

/// Stream identity of one (N, trial) cell.
SeedSpec cell_seed(const ExperimentConfig& config, int n, int trial);

/// The matrix studied in cell (N, trial): model per b_rule plus the configured
/// perturbation.
ComplexMatrix build_cell_matrix(const ExperimentConfig& config, int n, int trial);

struct CellTiming {
  double build = 0.0;
  double spectrum = 0.0;
  double measures = 0.0;
};

struct CellRecord {
  int n = 0;
  int b = 0;
  int trial = 0;
  std::vector<Complex> eigenvalues;
  double residual = 0.0;
  bool degraded = false;
  double spectral_radius = 0.0;
  double mean_modulus = 0.0;
  double radial_ks = 0.0;
  double angular_ks = 0.0;
  std::vector<LogTail> log_tails;  // parallel to config.tail_eps
  std::optional<double> exact_max_deviation;
  std::string error;
  CellTiming timing;
};

struct LemmaRecord {
  int n = 0;
  int b = 0;
  std::vector<LemmaProductReport> products;
  SecsumReport secsum;
  RelationReport relations;
};

struct RunRecord {
  ExperimentConfig config;
  /// Ordered by (position of N in N_list, trial).
  std::vector<CellRecord> cells;
  std::vector<BoundReport> bound_reports;
  std::vector<LemmaRecord> lemma_reports;
};

/// Validates the config, then computes every cell. Per-cell failures are
/// recorded in CellRecord::error and the run continues.
RunRecord run_experiment(const ExperimentConfig& config);

/// Summary statistics of one eigenvalue list, as stored in the JSON summary.
struct SpectrumStats {
  double spectral_radius = 0.0;
  double mean_modulus = 0.0;
  double radial_ks = 0.0;
  double angular_ks = 0.0;
};

SpectrumStats spectrum_stats(const std::vector<Complex>& values);

/// Largest distance between matched points of two equal-size multisets (greedy
/// nearest-neighbour pairing; exact when the reference points are separated by
/// more than twice the deviation).
double matched_max_deviation(const std::vector<Complex>& reference, const std::vector<Complex>& computed);

/// Writes eigenvalues.csv, summary.json, timings.json and one SVG scatter per
/// (N, trial) into `dir`. Files are written through a temporary and renamed.
void emit_outputs(const RunRecord& record, const std::filesystem::path& dir);

struct AuditReport {
  int cells_checked = 0;
  int values_checked = 0;
  int mismatches = 0;
  double max_abs_diff = 0.0;
  std::vector<std::string> messages;
  bool ok() const { return mismatches == 0; }
};

/// Recomputes every per-cell number in summary.json from eigenvalues.csv and
/// the echoed config (log tails by regenerating the cell matrices).
AuditReport audit_outputs(const std::filesystem::path& dir, double tol = 1e-12);

}  // namespace specreg
