#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "archetypal/csv.hpp"
#include "archetypal/init.hpp"
#include "archetypal/solvers.hpp"
#include "archetypal/synth.hpp"
#include "archetypal/uniqueness.hpp"

namespace archetypal::cli {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

fs::path out_dir(const Config& cfg) {
  fs::path dir = cfg.get("out_dir", ".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json echo(const Config& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.values()) j[k] = v;
  return j;
}

Index get_count(const Config& cfg, const std::string& key, long long fallback) {
  const long long v = cfg.get_int(key, fallback);
  if (v < 1) throw InvalidInput("setting '" + key + "' must be positive");
  return static_cast<Index>(v);
}

Matrix load_required(const Config& cfg, const std::string& key) {
  if (!cfg.has(key)) throw InvalidInput("missing setting '" + key + "'");
  return load_matrix_csv(cfg.get(key, ""));
}

// Builds one dataset for the configured generator.
NoisyDataset make_dataset(const Config& cfg, std::uint64_t seed, double sigma) {
  const std::string gen = cfg.get("generator", "spectra");
  if (gen == "spectra") {
    const Index r = get_count(cfg, "r", 4);
    const Index n = get_count(cfg, "n", 250);
    const ArchetypeSet h0 =
        cfg.has("h0") ? load_required(cfg, "h0")
                      : gen_smooth_spectra(r, get_count(cfg, "d", 87),
                                           cfg.get_u64("h0_seed", 7));
    if (h0.rows() != r) throw InvalidInput("H0 file rows do not match r");
    const MixtureRecipe recipe = r == 4 ? MixtureRecipe::spectra_default(n, sigma)
                                        : MixtureRecipe::full_support(n, r, 5.0, sigma);
    return gen_dataset(h0, recipe, seed);
  }
  NoisyDataset ds;
  if (gen == "toy") {
    ds = gen_toy_2d(get_count(cfg, "n", 500), seed);
  } else if (gen == "separable") {
    ds = gen_separable(get_count(cfg, "n", 250), get_count(cfg, "r", 4),
                       get_count(cfg, "d", 87), seed);
  } else {
    throw InvalidInput("unknown generator '" + gen + "' (spectra, toy, separable)");
  }
  add_noise(ds, sigma);
  return ds;
}

struct FitChoice {
  std::string solver;
  std::string init;
  SolverConfig solver_cfg;
};

FitChoice fit_choice(const Config& cfg) {
  FitChoice c;
  c.solver = cfg.get("solver", "palm");
  c.init = cfg.get("init", "spa");
  if (c.solver != "palm" && c.solver != "sgd" && c.solver != "altmin" &&
      c.solver != "altmin-inf") {
    throw InvalidInput("unknown solver '" + c.solver + "' (palm, sgd, altmin, altmin-inf)");
  }
  if (c.init != "spa" && c.init != "spectral") {
    throw InvalidInput("unknown init '" + c.init + "' (spectral, spa)");
  }
  SolverConfig& s = c.solver_cfg;
  s.lambda = cfg.get_double("lambda", 1.0);
  if (c.solver == "altmin-inf") s.lambda = std::numeric_limits<double>::infinity();
  s.max_iter = static_cast<std::size_t>(get_count(cfg, "max_iter", 5000));
  s.rel_tol = cfg.get_double("rel_tol", s.rel_tol);
  s.grad_tol = cfg.get_double("grad_tol", s.grad_tol);
  s.sgd_batch = static_cast<std::size_t>(cfg.get_int("batch", 0));
  s.seed = cfg.get_u64("seed", 0);
  return c;
}

FitReport run_fit(const DataMatrix& x, Index r, const FitChoice& c) {
  const InitResult init = c.init == "spa" ? successive_projections_init(x, r)
                                          : spectral_init(x, r);
  SolverConfig s = c.solver_cfg;
  s.validate();
  if (c.solver == "palm") return fit_palm(x, init.archetypes, s);
  if (c.solver == "sgd") return fit_sgd(x, init.archetypes, s);
  return fit_altmin(x, init.archetypes, s);
}

json spectrum_json(const Matrix& m) {
  const SpectrumDiagnostics s = spectrum(m);
  return {{"sigma_max", s.sigma_max}, {"sigma_min", s.sigma_min}, {"kappa", s.kappa}};
}

json trace_json(const std::vector<double>& t) {
  json j = json::array();
  for (double v : t) j.push_back(number(v));
  return j;
}

}  // namespace

int cmd_synth(const Config& cfg) {
  const double sigma = cfg.get_double("sigma", 0.0);
  const NoisyDataset ds = make_dataset(cfg, cfg.get_u64("seed", 0), sigma);
  const fs::path dir = out_dir(cfg);
  save_matrix_csv(ds.x, dir / "X.csv");
  save_matrix_csv(ds.x0, dir / "X0.csv");
  save_matrix_csv(ds.w0, dir / "W0.csv");
  save_matrix_csv(ds.h0, dir / "H0.csv");
  json meta;
  meta["generator"] = cfg.get("generator", "spectra");
  meta["seed"] = ds.seed;
  meta["sigma"] = ds.sigma;
  meta["delta"] = ds.delta;
  meta["n"] = ds.x.rows();
  meta["d"] = ds.x.cols();
  meta["r"] = ds.h0.rows();
  write_json(dir / "meta.json", meta);
  return kOk;
}

int cmd_fit(const Config& cfg) {
  const DataMatrix x = load_required(cfg, "input");
  const Index r = get_count(cfg, "r", 4);
  const FitChoice choice = fit_choice(cfg);
  const FitReport rep = run_fit(x, r, choice);

  const fs::path dir = out_dir(cfg);
  save_matrix_csv(rep.archetypes, dir / "H_hat.csv");
  save_matrix_csv(rep.weights, dir / "W_hat.csv");
  json j;
  j["config"] = echo(cfg);
  j["solver"] = choice.solver;
  j["init"] = choice.init;
  j["lambda"] = number(choice.solver_cfg.lambda);
  j["r"] = r;
  j["iterations"] = rep.iterations;
  j["converged"] = rep.converged;
  j["stop_reason"] = to_string(rep.stop_reason);
  j["final_risk"] = number(rep.risk_trace.empty() ? NAN : rep.risk_trace.back());
  j["final_grad_norm"] = number(rep.final_grad_norm);
  j["wall_seconds"] = rep.wall_seconds;
  j["projections_converged"] = rep.projections_converged;
  json reseeded = json::array();
  for (const auto& [it, l] : rep.reseeded) reseeded.push_back({{"iteration", it}, {"archetype", l}});
  j["reseeded"] = reseeded;
  j["risk_trace"] = trace_json(rep.risk_trace);
  if (!rep.psi_trace.empty()) j["psi_trace"] = trace_json(rep.psi_trace);
  if (cfg.has("h0")) {
    const ArchetypeSet h0 = load_required(cfg, "h0");
    j["loss_L"] = loss_L(h0, rep.archetypes);
  }
  write_json(dir / "report.json", j);
  return kOk;
}

int cmd_eval(const Config& cfg) {
  const ArchetypeSet h0 = load_required(cfg, "h0");
  const ArchetypeSet hhat = load_required(cfg, "h_hat");
  if (h0.cols() != hhat.cols()) {
    throw InvalidInput("H0 has " + std::to_string(h0.cols()) + " columns but H_hat has " +
                       std::to_string(hhat.cols()));
  }
  const Vector nearest = nearest_sq_distances(h0, hhat);
  const double l = nearest.sum();
  json j;
  j["loss_L"] = l;
  j["loss_L_sqrt"] = std::sqrt(l);
  j["nearest_sq_distances"] = std::vector<double>(nearest.data(), nearest.data() + nearest.size());
  j["spectrum_h0"] = spectrum_json(h0);
  j["spectrum_h_hat"] = spectrum_json(hhat);
  write_json(out_dir(cfg) / "metrics.json", j);
  return kOk;
}

int cmd_sweep(const Config& cfg) {
  const std::vector<double> grid =
      cfg.get_doubles("sigma_grid", {0.0, 5e-4, 1e-3, 2e-3, 4e-3});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || (i > 0 && grid[i] < grid[i - 1])) {
      throw InvalidInput("sigma_grid must be non-negative and ascending");
    }
  }
  std::vector<std::uint64_t> seeds;
  if (cfg.has("seeds")) {
    seeds = cfg.get_u64s("seeds", {});
  } else {
    const Index reps = get_count(cfg, "replicates", 10);
    const std::uint64_t base = cfg.get_u64("seed", 0);
    for (Index k = 0; k < reps; ++k) seeds.push_back(base + static_cast<std::uint64_t>(k));
  }
  if (seeds.empty()) throw InvalidInput("sweep needs at least one seed");
  const Index r = get_count(cfg, "r", 4);
  FitChoice choice = fit_choice(cfg);
  const double lambda_low = cfg.get_double("lambda_low", 4.0);
  const double lambda_high = cfg.get_double("lambda_high", 0.8);
  const double lambda_switch = cfg.get_double("lambda_switch", 1e-3);

  std::ostringstream csv;
  csv << "# sigma,mean,std";
  for (std::uint64_t s : seeds) csv << ",seed_" << s;
  csv << "\n";
  json cells = json::array();
  json failures = json::array();
  for (double sigma : grid) {
    if (!cfg.has("lambda") && choice.solver != "altmin-inf") {
      choice.solver_cfg.lambda = sigma <= lambda_switch ? lambda_low : lambda_high;
    }
    std::vector<double> values;
    for (std::uint64_t seed : seeds) {
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        const NoisyDataset ds = make_dataset(cfg, seed, sigma);
        FitChoice c = choice;
        c.solver_cfg.seed = seed;
        const FitReport rep = run_fit(ds.x, r, c);
        v = std::sqrt(loss_L(ds.h0, rep.archetypes));
        cells.push_back({{"sigma", sigma},
                         {"seed", seed},
                         {"lambda", number(c.solver_cfg.lambda)},
                         {"loss_L_sqrt", v},
                         {"iterations", rep.iterations},
                         {"stop_reason", to_string(rep.stop_reason)}});
      } catch (const Error& e) {
        failures.push_back({{"sigma", sigma}, {"seed", seed}, {"error", e.what()}});
      }
      values.push_back(v);
    }
    double sum = 0.0;
    std::size_t ok = 0;
    for (double v : values) {
      if (!std::isnan(v)) {
        sum += v;
        ++ok;
      }
    }
    const double mean = ok > 0 ? sum / static_cast<double>(ok) : NAN;
    double ss = 0.0;
    for (double v : values) {
      if (!std::isnan(v)) ss += (v - mean) * (v - mean);
    }
    const double sd = ok > 1 ? std::sqrt(ss / static_cast<double>(ok - 1)) : 0.0;
    csv << fmt(sigma) << ',' << fmt(mean) << ',' << fmt(sd);
    for (double v : values) csv << ',' << fmt(v);
    csv << "\n";
  }
  const fs::path dir = out_dir(cfg);
  write_text(dir / "curve.csv", csv.str());
  json j;
  j["config"] = echo(cfg);
  j["cells"] = cells;
  j["failures"] = failures;
  write_json(dir / "sweep_report.json", j);
  return failures.empty() ? kOk : kPartialFailure;
}

int cmd_alpha(const Config& cfg) {
  std::vector<double> grid = cfg.get_doubles("L_grid", {});
  if (grid.empty()) {
    for (int i = 1; i <= 9; ++i) grid.push_back(0.05 * i);
  }
  AlphaSearchConfig search;
  search.restarts = static_cast<std::size_t>(get_count(cfg, "restarts", 200));
  search.evals_per_restart = static_cast<std::size_t>(get_count(cfg, "evals_per_restart", 600));
  search.seed = cfg.get_u64("seed", 0);

  std::ostringstream csv;
  csv << "# L,alpha_hat,evals,flagged\n";
  bool any_flagged = false;
  for (double cut : grid) {
    const HexagonFamily fam = hexagon_family(cut);
    const AlphaEstimate est = estimate_alpha(fam.x0, fam.h0, search);
    const bool flagged = est.feasible_evals == 0;
    any_flagged = any_flagged || flagged;
    csv << fmt(cut) << ',' << fmt(est.alpha_hat) << ',' << est.search_evals << ','
        << (flagged ? 1 : 0) << "\n";
  }
  write_text(out_dir(cfg) / "alpha_curve.csv", csv.str());
  return any_flagged ? kPartialFailure : kOk;
}

int run_command(const std::string& name, const Config& cfg, std::ostream& err) {
  try {
    if (name == "synth") return cmd_synth(cfg);
    if (name == "fit") return cmd_fit(cfg);
    if (name == "eval") return cmd_eval(cfg);
    if (name == "sweep") return cmd_sweep(cfg);
    if (name == "alpha") return cmd_alpha(cfg);
    err << "unknown command '" << name << "'\n";
    return kInputError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const DegeneracyError& e) {
    err << "degenerate input: " << e.what() << "\n";
    return kNumericalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace archetypal::cli
