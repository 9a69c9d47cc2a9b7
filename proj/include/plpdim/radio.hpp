#pragma once

#include <vector>

namespace plpdim {

/// Link-budget parameters, all in consistent linear units (mW, Hz, bps, km).
/// dB/dBm inputs are converted once at scenario load.
struct RadioConfig {
    double power_mw;            // P
    double prop_const;          // a, linear
    double half_pathloss_exp;   // b; path loss exponent is 2b
    double prb_bandwidth_hz;    // W
    int mimo_layers;            // theta = min(Tx, Rx)
    double noise_mw;            // sigma^2
    double sinr_threshold;      // Theta*, linear
    double service_rate_bps;    // C*
    int n_max;                  // operator cap on PRBs per user

    void validate() const;      // throws std::invalid_argument on bad fields
};

/// One annulus with its own interference margin (linear, >= 1).
struct InterferenceRegion {
    double inner_km;
    double outer_km;
    double margin;  // IM = (I + sigma^2) / sigma^2
};

/// Either a single interference power for whole-cell analysis, or a list of
/// annular regions that partition [0, R].
struct InterferenceProfile {
    double single_i_mw = 0.0;
    std::vector<InterferenceRegion> regions;  // empty => single-I mode

    bool has_regions() const { return !regions.empty(); }
    /// Interference power seen at distance x (region lookup in region mode).
    double interference_at(double x_km, double noise_mw) const;
};

/// Radii d_0 = 0 < d_1 < ... < d_N from the closed form; untruncated.
/// Demand accounting clamps them to the disk (or annulus) of interest.
struct RingPartition {
    std::vector<double> radii_km;  // size n_terminal + 1, radii_km[0] == 0
    int n_terminal;                // N

    /// PRB demand of a user at distance x per the partition: the first n
    /// with x <= d_n, or N when x lies beyond d_N.
    int ring_index(double x_km) const;
};

namespace radio {

double db_to_linear(double db);
double linear_to_db(double lin);
double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

/// SINR at distance x: (P x^{-2b} / a) / (I + sigma^2). x = 0 is a domain error.
double sinr(double x_km, const RadioConfig& cfg, double i_mw);

/// Shannon-MIMO throughput: theta * W * log2(1 + SINR(x)).
double throughput(double x_km, const RadioConfig& cfg, double i_mw);

/// N = min(N_max, ceil(C* / (theta W log2(1 + Theta*)))).
int terminal_n(const RadioConfig& cfg);

/// PRBs needed at distance x: min(ceil(C*/C(x)), N).
int prb_demand(double x_km, const RadioConfig& cfg, double i_mw);

/// Ring radii d_n = [a(I+sigma^2)/P (2^{C*/(n theta W)} - 1)]^{-1/(2b)}.
RingPartition ring_radii(const RadioConfig& cfg, double i_mw);

/// Invert IM = (I + sigma^2)/sigma^2 for the interference power.
double interference_from_margin(double im_linear, double noise_mw);

/// PRB demand at x under a (possibly region-dependent) interference profile.
int prb_demand_profiled(double x_km, const RadioConfig& cfg, const InterferenceProfile& iprof);

}  // namespace radio
}  // namespace plpdim
