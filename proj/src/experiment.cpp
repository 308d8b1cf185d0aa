#include "specreg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "specreg/brown_reference.hpp"
#include "specreg/model_matrices.hpp"
#include "specreg/spectra.hpp"

namespace specreg {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not a number: '" + v + "'");
  }
}

long long to_integer(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not an integer: '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config key '" + key + "': not a boolean: '" + v + "'");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string to_string(Preset p) {
  switch (p) {
    case Preset::fig2: return "fig2";
    case Preset::fig3: return "fig3";
    case Preset::corner: return "corner";
    case Preset::bounds: return "bounds";
    case Preset::lemmas: return "lemmas";
    case Preset::custom: return "custom";
  }
  return "custom";
}

Preset parse_preset(const std::string& text) {
  for (Preset p : {Preset::fig2, Preset::fig3, Preset::corner, Preset::bounds, Preset::lemmas, Preset::custom}) {
    if (to_string(p) == text) return p;
  }
  throw std::invalid_argument("unknown preset '" + text + "' (expected fig2, fig3, corner, bounds, lemmas, custom)");
}

int BRule::resolve(int n) const {
  switch (kind) {
    case Kind::shift: return n - 1;
    case Kind::log_n: return static_cast<int>(std::ceil(std::log(static_cast<double>(n))));
    case Kind::fixed: return fixed_b;
  }
  return n - 1;
}

std::string BRule::to_string() const {
  switch (kind) {
    case Kind::shift: return "shift";
    case Kind::log_n: return "logN";
    case Kind::fixed: return "fixed(" + std::to_string(fixed_b) + ")";
  }
  return "shift";
}

BRule BRule::parse(const std::string& raw) {
  const std::string text = trim(raw);
  if (text == "shift") return {Kind::shift, 0};
  if (text == "logN") return {Kind::log_n, 0};
  std::string digits;
  if (text.rfind("fixed(", 0) == 0 && text.back() == ')') {
    digits = text.substr(6, text.size() - 7);
  } else if (text.rfind("fixed:", 0) == 0) {
    digits = text.substr(6);
  } else {
    throw std::invalid_argument("b_rule: expected shift, logN or fixed(b), got '" + text + "'");
  }
  const long long b = to_integer("b_rule", trim(digits));
  if (b < 1) throw std::invalid_argument("b_rule: fixed b must be >= 1");
  return {Kind::fixed, static_cast<int>(b)};
}

void ExperimentConfig::validate() const {
  if (n_list.empty()) throw std::invalid_argument("config: N_list must be nonempty");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
  for (int n : n_list) {
    if (n < 2) throw std::invalid_argument("config: every N must be >= 2");
    if (n > kDeskScaleMaxN && !large) {
      throw std::invalid_argument("config: N=" + std::to_string(n) + " exceeds " + std::to_string(kDeskScaleMaxN) +
                                  "; pass --large to allow it");
    }
    const int b = b_rule.resolve(n);
    if (b < 1 || b > n - 1) {
      throw std::invalid_argument("config: b_rule " + b_rule.to_string() + " gives b=" + std::to_string(b) +
                                  " outside [1, N-1] for N=" + std::to_string(n));
    }
  }
  for (double e : tail_eps) {
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("config: tail_eps values must lie in (0, 1)");
  }
  switch (preset) {
    case Preset::corner:
      if (!(corner_exponent > 0.0)) throw std::invalid_argument("config: corner_exponent must be > 0");
      break;
    case Preset::bounds:
      if (!(g_factor > 0.0)) throw std::invalid_argument("config: g_factor must be > 0");
      break;
    case Preset::lemmas:
      break;
    default:
      if (gamma_decay) {
        if (!std::isfinite(*gamma_decay)) throw std::invalid_argument("config: gamma_decay must be finite");
      } else {
        profile().validate();
      }
  }
}

ExperimentConfig preset_defaults(Preset p) {
  ExperimentConfig c;
  c.preset = p;
  switch (p) {
    case Preset::fig2:
    case Preset::custom:
      c.n_list = {50, 100, 500};
      c.b_rule = {BRule::Kind::shift, 0};
      break;
    case Preset::fig3:
      c.n_list = {50, 100, 500};
      c.b_rule = {BRule::Kind::log_n, 0};
      break;
    case Preset::corner:
      c.n_list = {100};
      c.b_rule = {BRule::Kind::shift, 0};
      break;
    case Preset::bounds:
      c.n_list = {64};
      c.b_rule = {BRule::Kind::fixed, 4};
      c.trials = 20;
      break;
    case Preset::lemmas:
      c.n_list = {12, 20};
      c.b_rule = {BRule::Kind::fixed, 3};
      c.trials = 10;
      c.tail_eps.clear();
      break;
  }
  c.out = "out/" + to_string(p);
  return c;
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues out;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str());
}

void apply_overrides(ExperimentConfig& c, const KeyValues& values) {
  for (const auto& [key, v] : values) {
    if (key == "preset") {
      c.preset = parse_preset(v);
    } else if (key == "N_list") {
      c.n_list.clear();
      for (const auto& item : split(v, ',')) c.n_list.push_back(static_cast<int>(to_integer(key, item)));
    } else if (key == "b_rule") {
      c.b_rule = BRule::parse(v);
    } else if (key == "s") {
      c.s = to_double(key, v);
    } else if (key == "kappa") {
      c.kappa = to_double(key, v);
    } else if (key == "kappa_prime") {
      c.kappa_prime = to_double(key, v);
    } else if (key == "ensemble") {
      c.ensemble = parse_ensemble(v);
    } else if (key == "gamma_decay") {
      if (v.empty() || v == "none") {
        c.gamma_decay.reset();
      } else {
        c.gamma_decay = to_double(key, v);
      }
    } else if (key == "trials") {
      c.trials = static_cast<int>(to_integer(key, v));
    } else if (key == "seed") {
      const long long s = to_integer(key, v);
      if (s < 0) throw std::invalid_argument("config key 'seed' must be >= 0");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "out") {
      c.out = v;
    } else if (key == "corner_exponent") {
      c.corner_exponent = to_double(key, v);
    } else if (key == "g_factor") {
      c.g_factor = to_double(key, v);
    } else if (key == "tail_eps") {
      c.tail_eps.clear();
      if (v != "none") {
        for (const auto& item : split(v, ',')) c.tail_eps.push_back(to_double(key, item));
      }
    } else if (key == "tail_z") {
      const auto parts = split(v, ',');
      if (parts.empty() || parts.size() > 2) throw std::invalid_argument("config key 'tail_z': expected re[,im]");
      c.tail_z = Complex(to_double(key, parts[0]), parts.size() == 2 ? to_double(key, parts[1]) : 0.0);
    } else if (key == "large") {
      c.large = to_bool(key, v);
    } else if (key == "stamp") {
      c.stamp = to_bool(key, v);
    } else if (key == "jobs") {
      c.jobs = static_cast<int>(to_integer(key, v));
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

ExperimentConfig resolve_config(Preset fallback, const KeyValues& values) {
  Preset p = fallback;
  if (const auto it = values.find("preset"); it != values.end()) p = parse_preset(it->second);
  ExperimentConfig c = preset_defaults(p);
  apply_overrides(c, values);
  return c;
}

SeedSpec cell_seed(const ExperimentConfig& config, int n, int trial) {
  return {config.seed, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint32_t>(trial)};
}

ComplexMatrix build_cell_matrix(const ExperimentConfig& config, int n, int trial) {
  const int b = config.b_rule.resolve(n);
  ComplexMatrix m = block_nilpotent(b, n);
  const SeedSpec seed = cell_seed(config, n, trial);
  switch (config.preset) {
    case Preset::corner:
      m += corner_perturbation(n, std::pow(static_cast<double>(n), -config.corner_exponent));
      break;
    case Preset::bounds:
      m += sample_bounded_norm_matrix(n, config.g_factor / (b * std::sqrt(static_cast<double>(n))), seed);
      break;
    case Preset::lemmas:
      throw std::invalid_argument("build_cell_matrix: the lemmas preset has no spectral cells");
    default:
      if (config.gamma_decay) {
        m += std::exp(-*config.gamma_decay * b) * sample_gaussian_entries(n, 1.0, config.ensemble, seed);
      } else {
        m += sample_gaussian_matrix(n, config.profile(), config.ensemble, seed);
      }
  }
  return m;
}

SpectrumStats spectrum_stats(const std::vector<Complex>& values) {
  const PlanarMeasure measure = empirical_from_points(values);
  const CircleLaw circle = circle_law_reference();
  SpectrumStats out;
  out.spectral_radius = max_modulus(measure);
  out.mean_modulus = mean_modulus(measure);
  out.radial_ks = radial_ks_distance(measure, circle);
  out.angular_ks = angular_ks_distance(measure, circle);
  return out;
}

double matched_max_deviation(const std::vector<Complex>& reference, const std::vector<Complex>& computed) {
  if (reference.size() != computed.size()) {
    throw std::invalid_argument("matched_max_deviation: multisets differ in size");
  }
  std::vector<bool> used(computed.size(), false);
  double worst = 0.0;
  for (const auto& r : reference) {
    std::size_t best = computed.size();
    double best_d = 0.0;
    for (std::size_t j = 0; j < computed.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(computed[j] - r);
      if (best == computed.size() || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

namespace {

CellRecord compute_cell(const ExperimentConfig& config, int n, int trial) {
  CellRecord cell;
  cell.n = n;
  cell.b = config.b_rule.resolve(n);
  cell.trial = trial;
  try {
    auto t0 = std::chrono::steady_clock::now();
    const ComplexMatrix m = build_cell_matrix(config, n, trial);
    cell.timing.build = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto spec = eigenvalues(m);
    cell.timing.spectrum = seconds_since(t0);
    cell.eigenvalues = std::move(spec.values);
    cell.residual = spec.residual;
    cell.degraded = spec.degraded;

    t0 = std::chrono::steady_clock::now();
    const SpectrumStats stats = spectrum_stats(cell.eigenvalues);
    cell.spectral_radius = stats.spectral_radius;
    cell.mean_modulus = stats.mean_modulus;
    cell.radial_ks = stats.radial_ks;
    cell.angular_ks = stats.angular_ks;
    if (!config.tail_eps.empty()) {
      const RealMeasure nu = hermitized_shifted_measure(m, config.tail_z);
      for (double eps : config.tail_eps) cell.log_tails.push_back(log_tail(nu, eps));
    }
    if (config.preset == Preset::corner) {
      const Complex delta = std::pow(static_cast<double>(n), -config.corner_exponent);
      cell.exact_max_deviation =
          matched_max_deviation(exact_perturbed_shift_spectrum(n, delta).values, cell.eigenvalues);
    }
    cell.timing.measures = seconds_since(t0);
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

}  // namespace

RunRecord run_experiment(const ExperimentConfig& config) {
  config.validate();
  RunRecord record;
  record.config = config;

  if (config.preset == Preset::lemmas) {
    for (int n : config.n_list) {
      LemmaRecord lr;
      lr.n = n;
      lr.b = config.b_rule.resolve(n);
      for (int k : {lr.b + 1, lr.b + 2}) {
        if (k <= 16) lr.products.push_back(verify_lemma_secsum1(lr.b, n, k, config.trials, config.seed));
      }
      const double threshold = 2.0 / (std::exp(1.5) * std::sqrt(static_cast<double>(n)) * lr.b);
      lr.secsum = verify_lemma_secsum(lr.b, n, threshold);
      lr.relations = verify_norm_relations(lr.b, n);
      record.lemma_reports.push_back(std::move(lr));
    }
    return record;
  }

  for (int n : config.n_list) {
    if (n > kDeskScaleMaxN) {
      std::cerr << "warning: N=" << n << " is beyond desk scale; dense eigensolves will be slow\n";
    }
  }

  std::vector<std::pair<int, int>> cells;
  for (int n : config.n_list)
    for (int t = 0; t < config.trials; ++t) cells.emplace_back(n, t);
  record.cells.resize(cells.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      record.cells[i] = compute_cell(config, cells[i].first, cells[i].second);
    }
  };
  const int workers = std::min<int>(config.jobs, static_cast<int>(cells.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  if (config.preset == Preset::bounds) {
    for (int n : config.n_list) {
      const int b = config.b_rule.resolve(n);
      const double g = config.g_factor / (b * std::sqrt(static_cast<double>(n)));
      std::vector<ComplexMatrix> rs;
      for (int t = 0; t < config.trials; ++t) rs.push_back(sample_bounded_norm_matrix(n, g, cell_seed(config, n, t)));
      BoundReport report = check_bound_with(b, rs);
      record.bound_reports.push_back(std::move(report));
    }
  }
  return record;
}

}  // namespace specreg
