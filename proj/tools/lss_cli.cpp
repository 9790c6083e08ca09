// Apache License, Version 2.0, refer to LICENSE.txt
//
// Command-line front end: run named experiments to CSV + summary JSON, list
// the catalog, and run the detailed-balance self-check.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lss/baselines.hpp"
#include "lss/diagnostics.hpp"
#include "lss/discrete.hpp"
#include "lss/experiments.hpp"
#include "lss/io.hpp"
#include "lss/latent_slice.hpp"
#include "lss/targets.hpp"

namespace {

using namespace lss;

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::size_t default_iters;
  std::size_t default_burnin;
  std::size_t default_thin;
  double default_lambda;
  int default_k;
};

// stable catalog order; defaults follow the experiments they reproduce
const std::vector<ExperimentInfo>& catalog() {
  static const std::vector<ExperimentInfo> entries{
      {"bimodal", "two-normal mixture at -10/+10, latent slice, d=1", 2000, 0, 1,
       0.01, 0},
      {"bivariate", "bivariate normal, rho=0.95, latent slice block", 20000, 0,
       1, 0.1, 0},
      {"gauss50", "isotropic normal in d=50, latent slice block", 5000, 0, 1,
       0.1, 0},
      {"funnel", "funnel in d=10, latent slice block", 200000, 0, 100, 0.2, 0},
      {"funnel-slice-baseline",
       "funnel via per-coordinate stepping-out slice sweeps", 200000, 0, 100,
       0.2, 0},
      {"mdp", "Dirichlet-process normal mixture, window-kernel allocations",
       20000, 15000, 1, 0.1, 5},
      {"finite-mixture",
       "exponential mixture with unknown component count (window kernel on M)",
       10000, 2000, 1, 0.1, 3},
      {"gp", "GP regression, elliptical sampler with latent-slice angle", 2000,
       500, 1, 0.1, 0},
      {"gp-standard-ess", "GP regression, standard elliptical sampler", 2000,
       500, 1, 0.1, 0},
      {"state-space", "Poisson state space, 500-dim block update", 2000, 500, 1,
       0.1, 0},
      {"spike-slab", "spike-and-slab regression, 90-dim block update", 10000,
       2000, 1, 0.1, 0},
  };
  return entries;
}

struct RunOptions {
  std::string experiment;
  std::uint64_t seed = 1;
  std::optional<std::size_t> iters;
  std::optional<std::size_t> burnin;
  std::optional<std::size_t> thin;
  std::optional<double> lambda;
  std::optional<int> k;
  std::string out_dir = ".";
  std::string data_file;      // frozen dataset CSV to run on
  std::string data_out_file;  // freeze the generated dataset here
  int chains = 1;
};

ChainOutput run_latent_chain(const LogDensity& target,
                             const std::vector<double>& init, double lambda,
                             std::size_t iters, std::size_t burnin,
                             std::size_t thin, Rng& rng) {
  LatentSliceConfig cfg;
  cfg.lambda = lambda;
  return run_chain(target, init, cfg, iters, burnin, thin, rng);
}

ChainOutput run_funnel_baseline(std::size_t iters, std::size_t burnin,
                                std::size_t thin, Rng& rng) {
  const LogDensity target = targets::funnel();
  SteppingOutConfig cfg{2.0, 10};
  std::vector<double> y(10, 0.0);
  ChainOutput out;
  out.dim = 10;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 1; i <= iters; ++i) {
    gibbs_sweep_slice(y, target, cfg, rng);
    out.shrink_counts.push_back(1);
    if (i > burnin && (i - burnin) % thin == 0) {
      out.samples.insert(out.samples.end(), y.begin(), y.end());
      out.kept_iteration.push_back(i);
      ++out.n_kept;
    }
  }
  out.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

std::vector<diag::ChainSummary> summarize_chain(const ChainOutput& chain) {
  std::vector<diag::ChainSummary> summaries;
  summaries.reserve(chain.dim);
  for (std::size_t c = 0; c < chain.dim; ++c)
    summaries.push_back(diag::summarize(chain.column(c)));
  return summaries;
}

ChainOutput series_to_chain(const std::vector<double>& series,
                            double wall_time_s) {
  ChainOutput out;
  out.dim = 1;
  out.n_kept = series.size();
  out.samples = series;
  out.kept_iteration.resize(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) out.kept_iteration[i] = i + 1;
  out.wall_time_s = wall_time_s;
  return out;
}

//! One chain of one named experiment.
ChainOutput run_one(const std::string& name, const RunOptions& opt,
                    std::uint64_t stream) {
  const auto& info = *std::find_if(catalog().begin(), catalog().end(),
                                   [&](const auto& e) { return e.name == name; });
  const std::size_t iters = opt.iters.value_or(info.default_iters);
  const std::size_t burnin = opt.burnin.value_or(info.default_burnin);
  const std::size_t thin = opt.thin.value_or(info.default_thin);
  const double lambda = opt.lambda.value_or(info.default_lambda);
  const int k = opt.k.value_or(info.default_k);
  Rng rng(opt.seed, stream);

  if (name == "bimodal")
    return run_latent_chain(targets::bimodal_mixture(), {0.0}, lambda, iters,
                            burnin, thin, rng);
  if (name == "bivariate")
    return run_latent_chain(targets::correlated_gaussian(0.95), {0.0, 0.0},
                            lambda, iters, burnin, thin, rng);
  if (name == "gauss50")
    return run_latent_chain(targets::isotropic_gaussian(50),
                            std::vector<double>(50, 0.0), lambda, iters, burnin,
                            thin, rng);
  if (name == "funnel")
    return run_latent_chain(targets::funnel(), std::vector<double>(10, 0.0),
                            lambda, iters, burnin, thin, rng);
  if (name == "funnel-slice-baseline")
    return run_funnel_baseline(iters, burnin, thin, rng);

  // data-bearing experiments: --data runs on a frozen CSV, --data-out
  // freezes the dataset that was used
  const bool frozen = !opt.data_file.empty();
  auto freeze = [&](const io::Table& table) {
    if (!opt.data_out_file.empty() && stream == 0)
      io::write_table_csv(opt.data_out_file, table);
  };

  if (name == "mdp") {
    const auto data = frozen
                          ? io::series_from_table(io::read_table_csv(opt.data_file))
                          : targets::generate_mdp_data(rng);
    freeze(io::table_from_series("x", data));
    const experiments::MdpHyper hyper;
    auto state = experiments::mdp_init(data, hyper, k, rng);
    std::vector<double> predictive;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 1; i <= iters; ++i) {
      experiments::mdp_gibbs_iteration(state, data, hyper, k, rng);
      if (i > burnin)
        predictive.push_back(experiments::mdp_predictive_draw(state, hyper, rng));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return series_to_chain(predictive, secs);
  }
  if (name == "finite-mixture") {
    const auto data = frozen
                          ? io::series_from_table(io::read_table_csv(opt.data_file))
                          : targets::generate_exponential_data(rng);
    freeze(io::table_from_series("x", data));
    const experiments::FiniteMixtureHyper hyper;
    auto state = experiments::finite_mixture_init(data.size(), rng);
    std::vector<double> m_series;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 1; i <= iters; ++i) {
      experiments::finite_mixture_iteration(state, data, hyper, k, rng);
      if (i > burnin && (i - burnin) % thin == 0)
        m_series.push_back(static_cast<double>(state.m));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return series_to_chain(m_series, secs);
  }
  if (name == "gp" || name == "gp-standard-ess") {
    const auto variant = name == "gp" ? EllipticalVariant::latent_slice
                                      : EllipticalVariant::standard;
    const auto data = frozen ? io::gp_from_table(io::read_table_csv(opt.data_file))
                             : targets::generate_gp_data(rng);
    freeze(io::table_from_gp(data));
    const auto t0 = std::chrono::steady_clock::now();
    const auto result =
        experiments::gp_regression_run(variant, data, iters, burnin, rng);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    ChainOutput out;
    out.dim = result.posterior_mean.size();
    out.n_kept = 1;
    out.samples = result.posterior_mean;  // one row: the posterior mean curve
    out.kept_iteration = {iters};
    out.wall_time_s = secs;
    std::fprintf(stderr, "gp: posterior-mean RMSE to truth = %.4f\n",
                 result.rmse_to_truth);
    return out;
  }
  if (name == "state-space") {
    const auto data =
        frozen ? io::state_space_from_table(io::read_table_csv(opt.data_file))
               : targets::generate_state_space_data(rng);
    freeze(io::table_from_state_space(data));
    const auto result =
        experiments::state_space_run(data, iters, burnin, lambda, rng);
    std::fprintf(stderr, "state-space: posterior mean of theta = %.4f\n",
                 result.theta_posterior_mean);
    return series_to_chain(result.theta_samples, result.wall_time_s);
  }
  if (name == "spike-slab") {
    const auto data =
        frozen ? io::spike_slab_from_table(io::read_table_csv(opt.data_file))
               : targets::generate_spike_slab_data(rng);
    freeze(io::table_from_spike_slab(data));
    const auto result =
        experiments::spike_slab_run(data, iters, burnin, lambda, rng);
    ChainOutput out;
    out.dim = result.p;
    out.n_kept = result.n_kept;
    out.samples = result.beta_samples;
    out.kept_iteration.resize(result.n_kept);
    for (std::size_t i = 0; i < result.n_kept; ++i)
      out.kept_iteration[i] = burnin + i + 1;
    out.wall_time_s = result.wall_time_s;
    return out;
  }
  throw std::runtime_error("unknown experiment: " + name);
}

int command_run(const RunOptions& opt) {
  const auto hit = std::find_if(catalog().begin(), catalog().end(),
                                [&](const auto& e) { return e.name == opt.experiment; });
  if (hit == catalog().end())
    throw std::runtime_error("unknown experiment: " + opt.experiment +
                             " (see `lss list`)");
  const std::filesystem::path dir(opt.out_dir);

  // independent seeded chains; stream index = chain index
  std::vector<ChainOutput> chains(static_cast<std::size_t>(opt.chains));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (opt.chains > 1)
  for (int c = 0; c < opt.chains; ++c) {
    try {
      chains[static_cast<std::size_t>(c)] =
          run_one(opt.experiment, opt, static_cast<std::uint64_t>(c));
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (int c = 0; c < opt.chains; ++c) {
    const auto& chain = chains[static_cast<std::size_t>(c)];
    const std::string suffix =
        opt.chains > 1 ? "_chain" + std::to_string(c) : "";
    const auto csv = dir / (opt.experiment + suffix + "_samples.csv");
    io::write_samples_csv(csv, chain);
    const auto summary = dir / (opt.experiment + suffix + "_summary.json");
    io::write_summary_json(summary, opt.experiment, opt.seed, chain.n_kept,
                           chain.wall_time_s,
                           chain.n_kept >= 10
                               ? summarize_chain(chain)
                               : std::vector<diag::ChainSummary>{});
    std::printf("wrote %s (%zu rows x %zu cols, %.2fs)\n", csv.c_str(),
                chain.n_kept, chain.dim, chain.wall_time_s);
  }
  return 0;
}

int command_db_check(int k, long n_states, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> pmf(static_cast<std::size_t>(n_states));
  for (auto& p : pmf) p = 0.05 + rng.next_double();
  const DiscreteTarget target{
      [&pmf](long z) {
        return z >= 0 && z < static_cast<long>(pmf.size())
                   ? std::log(pmf[static_cast<std::size_t>(z)])
                   : kNegInf;
      },
      0};
  const double residual = detailed_balance_residual(target, n_states - 1, k);
  std::printf("max detailed-balance residual over %ld states, k=%d: %.3e\n",
              n_states, k, residual);
  return residual < 1e-12 ? 0 : 2;
}

int command_list() {
  for (const auto& e : catalog())
    std::printf("%-22s %s\n", e.name.c_str(), e.description.c_str());
  return 0;
}

void apply_config_file(const std::string& path, RunOptions& opt,
                       const CLI::App& run_cmd) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  // flags given on the command line win over file values
  auto unset = [&](const char* flag) {
    return run_cmd.get_option(flag)->count() == 0;
  };
  if (doc.contains("experiment") && unset("--experiment"))
    opt.experiment = doc["experiment"].get<std::string>();
  if (doc.contains("seed") && unset("--seed"))
    opt.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("iters") && unset("--iters"))
    opt.iters = doc["iters"].get<std::size_t>();
  if (doc.contains("burnin") && unset("--burnin"))
    opt.burnin = doc["burnin"].get<std::size_t>();
  if (doc.contains("thin") && unset("--thin"))
    opt.thin = doc["thin"].get<std::size_t>();
  if (doc.contains("lambda") && unset("--lambda"))
    opt.lambda = doc["lambda"].get<double>();
  if (doc.contains("k") && unset("--k")) opt.k = doc["k"].get<int>();
  if (doc.contains("out") && unset("--out"))
    opt.out_dir = doc["out"].get<std::string>();
  if (doc.contains("data") && unset("--data"))
    opt.data_file = doc["data"].get<std::string>();
  if (doc.contains("data_out") && unset("--data-out"))
    opt.data_out_file = doc["data_out"].get<std::string>();
  if (doc.contains("chains") && unset("--chains"))
    opt.chains = doc["chains"].get<int>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latent slice sampling toolkit"};
  app.require_subcommand(1);

  RunOptions opt;
  std::string config_file;
  std::size_t iters_flag = 0, burnin_flag = 0, thin_flag = 0;
  double lambda_flag = 0.0;
  int k_flag = 0;

  // every flag also reads from the LSS_* environment
  auto* run_cmd = app.add_subcommand("run", "run a named experiment");
  run_cmd->add_option("--experiment", opt.experiment, "experiment name")
      ->envname("LSS_EXPERIMENT");
  run_cmd->add_option("--seed", opt.seed, "rng seed")->envname("LSS_SEED");
  auto* o_iters =
      run_cmd->add_option("--iters", iters_flag, "iterations")->envname("LSS_ITERS");
  auto* o_burn = run_cmd->add_option("--burnin", burnin_flag, "burn-in iterations")
                     ->envname("LSS_BURNIN");
  auto* o_thin =
      run_cmd->add_option("--thin", thin_flag, "thinning stride")->envname("LSS_THIN");
  auto* o_lambda =
      run_cmd->add_option("--lambda", lambda_flag, "latent slice scale rate")
          ->envname("LSS_LAMBDA");
  auto* o_k = run_cmd->add_option("--k", k_flag, "discrete window width")
                  ->envname("LSS_K");
  run_cmd->add_option("--out", opt.out_dir, "output directory")
      ->envname("LSS_OUT");
  run_cmd->add_option("--config", config_file, "JSON config file")
      ->envname("LSS_CONFIG");
  run_cmd->add_option("--data", opt.data_file, "frozen dataset CSV to run on")
      ->envname("LSS_DATA");
  run_cmd->add_option("--data-out", opt.data_out_file,
                      "write the dataset used to this CSV")
      ->envname("LSS_DATA_OUT");
  run_cmd->add_option("--chains", opt.chains, "independent seeded chains")
      ->envname("LSS_CHAINS")
      ->check(CLI::PositiveNumber);

  int db_k = 3;
  long db_states = 10;
  std::uint64_t db_seed = 1;
  auto* db_cmd = app.add_subcommand("db-check", "detailed-balance self-check");
  db_cmd->add_option("--k", db_k, "window width")->envname("LSS_K");
  db_cmd->add_option("--n-states", db_states, "support size")
      ->envname("LSS_N_STATES");
  db_cmd->add_option("--seed", db_seed, "rng seed for the random pmf")
      ->envname("LSS_SEED");

  auto* list_cmd = app.add_subcommand("list", "list the experiment catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1, --help exits 0
  }

  try {
    if (list_cmd->parsed()) return command_list();
    if (db_cmd->parsed()) return command_db_check(db_k, db_states, db_seed);
    if (o_iters->count()) opt.iters = iters_flag;
    if (o_burn->count()) opt.burnin = burnin_flag;
    if (o_thin->count()) opt.thin = thin_flag;
    if (o_lambda->count()) opt.lambda = lambda_flag;
    if (o_k->count()) opt.k = k_flag;
    if (!config_file.empty()) apply_config_file(config_file, opt, *run_cmd);
    if (opt.experiment.empty())
      throw std::runtime_error("run: --experiment is required");
    return command_run(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
