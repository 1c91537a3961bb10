#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mabcs/errors.hpp"
#include "mabcs/stochastics.hpp"

namespace mabcs {

using ClientId = int;

/// Radio, population and fluctuation parameters of the simulated cell.
///
/// Defaults describe a 2 km single cell at 2.5 GHz with 10 resource blocks
/// (1.8 MHz) per client. `antenna_gain_dbi` is the total link antenna gain
/// (20 dBi at the base station, 0 dBi at the client) and `noise_figure_db` is
/// the calibration constant that sets the population mean throughput to about
/// 1.4 Mbit/s.
struct EnvConfig {
  int clients = 100;
  double cell_radius_m = 2000.0;
  double carrier_ghz = 2.5;
  double bs_height_m = 11.0;
  double client_height_m = 1.0;
  double tx_power_dbm = 20.0;
  double antenna_gain_dbi = 20.0;
  double rb_bandwidth_hz = 1.8e6;
  double noise_figure_db = 6.0;
  double delta_loss = 1.6;
  double rho_max = 4.8;
  /// 18.3 MB of 32-bit weights.
  double model_size_mbit = 146.4;
  /// Fluctuation exponent (sigma^2 = mean^eta). Empty: resources never fluctuate.
  std::optional<double> eta = 1.5;
  /// Lower truncation bound is never below this fraction of the mean.
  double min_resource_fraction = 0.1;
  double min_gamma = 10.0;
  double max_gamma = 100.0;
  int min_dataset_size = 100;
  int max_dataset_size = 1000;
};

/// Throws ConfigError on a violated invariant.
void validate(const EnvConfig& cfg);

struct ClientProfile {
  ClientId client_id = 0;
  double distance_m = 0.0;
  /// Mbit/s
  double theta_mean = 0.0;
  /// samples/s
  double gamma_mean = 0.0;
  int dataset_size = 0;
};

struct ResourceRealization {
  int round_index = 0;
  ClientId client_id = 0;
  double theta_tmp = 0.0;
  double gamma_tmp = 0.0;
  double t_update_s = 0.0;
  double t_upload_s = 0.0;
};

inline constexpr double kMinPathlossDistanceM = 10.0;

/// Area-uniform radius for a unit draw u: radius * sqrt(u).
double disk_distance(double u, double radius_m);

std::vector<double> place_clients(RngStream& rng, int count, double radius_m);

/// Median urban-micro NLOS pathloss. Distances below 10 m are clamped to 10 m.
double pathloss_db(double distance_m, double carrier_ghz);

/// Thermal noise over the configured bandwidth plus the receiver noise figure.
double noise_power_dbm(const EnvConfig& cfg);

/// Attenuated Shannon throughput in Mbit/s for a given SINR; -inf dB gives 0.
double throughput_from_sinr_db(double sinr_db, const EnvConfig& cfg);

double mean_throughput(double distance_m, const EnvConfig& cfg);

std::vector<ClientProfile> init_population(RngStream& rng, const EnvConfig& cfg);

/// Parameters of the per-round truncated normal around `mean`.
TruncNormalParams fluctuation_params(double mean, double eta, double min_fraction);

/// Draws this round's throughput and compute capability for every client.
/// Streams are keyed by (round, client, quantity), so the result does not
/// depend on which clients any strategy selected.
std::vector<ResourceRealization> realize_round_resources(
    const std::vector<ClientProfile>& profiles, int round_index, const EnvConfig& cfg,
    std::uint64_t master_seed);

}  // namespace mabcs
