#include "mabcs/env_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mabcs {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

void validate(const EnvConfig& cfg) {
  require(cfg.clients >= 1, "clients must be >= 1");
  require(cfg.cell_radius_m > 0.0, "cell_radius_m must be positive");
  require(cfg.carrier_ghz > 0.0, "carrier_ghz must be positive");
  require(cfg.bs_height_m > 0.0, "bs_height_m must be positive");
  require(cfg.client_height_m > 0.0, "client_height_m must be positive");
  require(std::isfinite(cfg.tx_power_dbm), "tx_power_dbm must be finite");
  require(std::isfinite(cfg.antenna_gain_dbi), "antenna_gain_dbi must be finite");
  require(cfg.rb_bandwidth_hz > 0.0, "rb_bandwidth_hz must be positive");
  require(cfg.noise_figure_db >= 0.0, "noise_figure_db must be non-negative");
  require(cfg.delta_loss > 0.0, "delta_loss must be positive");
  require(cfg.rho_max > 0.0, "rho_max must be positive");
  require(cfg.model_size_mbit > 0.0, "model_size_mbit must be positive");
  if (cfg.eta) require(std::isfinite(*cfg.eta) && *cfg.eta < 2.0, "eta must be < 2 (or none)");
  require(cfg.min_resource_fraction > 0.0 && cfg.min_resource_fraction < 1.0,
          "min_resource_fraction must be in (0, 1)");
  require(cfg.min_gamma > 0.0 && cfg.min_gamma <= cfg.max_gamma,
          "min_gamma must be positive and <= max_gamma");
  require(cfg.min_dataset_size > 0 && cfg.min_dataset_size <= cfg.max_dataset_size,
          "min_dataset_size must be positive and <= max_dataset_size");
}

double disk_distance(double u, double radius_m) { return radius_m * std::sqrt(u); }

std::vector<double> place_clients(RngStream& rng, int count, double radius_m) {
  if (count < 1) throw std::domain_error("place_clients: need at least one client");
  if (!(radius_m > 0.0)) throw std::domain_error("place_clients: radius must be positive");
  std::vector<double> distances(static_cast<std::size_t>(count));
  for (double& d : distances) d = disk_distance(rng.uniform01(), radius_m);
  return distances;
}

double pathloss_db(double distance_m, double carrier_ghz) {
  const double d = std::max(distance_m, kMinPathlossDistanceM);
  return 22.7 + 36.7 * std::log10(d) + 26.0 * std::log10(carrier_ghz);
}

double noise_power_dbm(const EnvConfig& cfg) {
  return -174.0 + 10.0 * std::log10(cfg.rb_bandwidth_hz) + cfg.noise_figure_db;
}

double throughput_from_sinr_db(double sinr_db, const EnvConfig& cfg) {
  if (sinr_db == -std::numeric_limits<double>::infinity()) return 0.0;
  const double sinr = std::pow(10.0, sinr_db / 10.0);
  const double rho = std::min(cfg.rho_max, std::log2(1.0 + sinr) / cfg.delta_loss);
  return rho * cfg.rb_bandwidth_hz / 1e6;
}

double mean_throughput(double distance_m, const EnvConfig& cfg) {
  const double sinr_db = cfg.tx_power_dbm + cfg.antenna_gain_dbi -
                         pathloss_db(distance_m, cfg.carrier_ghz) - noise_power_dbm(cfg);
  return throughput_from_sinr_db(sinr_db, cfg);
}

std::vector<ClientProfile> init_population(RngStream& rng, const EnvConfig& cfg) {
  validate(cfg);
  const std::vector<double> distances = place_clients(rng, cfg.clients, cfg.cell_radius_m);
  std::vector<ClientProfile> profiles(distances.size());
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    profiles[k].client_id = static_cast<ClientId>(k);
    profiles[k].distance_m = distances[k];
    profiles[k].theta_mean = mean_throughput(distances[k], cfg);
  }
  for (ClientProfile& p : profiles) p.gamma_mean = rng.uniform_real(cfg.min_gamma, cfg.max_gamma);
  for (ClientProfile& p : profiles)
    p.dataset_size = static_cast<int>(rng.uniform_int(cfg.min_dataset_size, cfg.max_dataset_size));
  return profiles;
}

TruncNormalParams fluctuation_params(double mean, double eta, double min_fraction) {
  const double sigma = std::pow(mean, eta / 2.0);
  return {mean, sigma, std::max(mean - sigma, min_fraction * mean), mean + sigma};
}

std::vector<ResourceRealization> realize_round_resources(
    const std::vector<ClientProfile>& profiles, int round_index, const EnvConfig& cfg,
    std::uint64_t master_seed) {
  if (cfg.eta && !(*cfg.eta < 2.0)) throw ConfigError("eta must be < 2 (or none)");
  std::vector<ResourceRealization> out;
  out.reserve(profiles.size());
  const auto round = static_cast<std::uint64_t>(round_index);
  for (const ClientProfile& p : profiles) {
    ResourceRealization r;
    r.round_index = round_index;
    r.client_id = p.client_id;
    if (cfg.eta) {
      const auto client = static_cast<std::uint64_t>(p.client_id);
      RngStream theta_rng(master_seed, "theta", {round, client});
      RngStream gamma_rng(master_seed, "gamma", {round, client});
      r.theta_tmp = sample_trunc_normal(
          theta_rng, fluctuation_params(p.theta_mean, *cfg.eta, cfg.min_resource_fraction));
      r.gamma_tmp = sample_trunc_normal(
          gamma_rng, fluctuation_params(p.gamma_mean, *cfg.eta, cfg.min_resource_fraction));
    } else {
      r.theta_tmp = p.theta_mean;
      r.gamma_tmp = p.gamma_mean;
    }
    r.t_update_s = static_cast<double>(p.dataset_size) / r.gamma_tmp;
    r.t_upload_s = cfg.model_size_mbit / r.theta_tmp;
    out.push_back(r);
  }
  return out;
}

}  // namespace mabcs
