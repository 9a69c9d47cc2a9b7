#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plpdim/congestion.hpp"
#include "plpdim/geometry.hpp"
#include "plpdim/radio.hpp"

namespace plpdim {

struct EstimatorSettings {
    int n_realizations = 1000;
    int n_user_draws = 1;        // user draws per realization in MC mode
    std::uint64_t seed = 1;
    double quad_rel_tol = 1e-9;
    int threads = 1;
    int m_search_cap = 4096;
};

/// A fully resolved study input: radio config in linear units, geometry,
/// traffic expressed as the road user intensity delta.
struct Scenario {
    RadioConfig radio;
    InterferenceProfile interference;
    double radius_km = 0.0;
    double lambda = 0.0;               // road intensity, km^-1
    double delta = 0.0;                // user intensity on roads, km^-1
    std::optional<double> tau_bps;     // original traffic forecast, if given
    EstimatorSettings est;

    /// delta implied by a cell throughput tau: tau / (C* lambda pi R^2).
    static double delta_from_tau(double tau_bps, double service_rate_bps, double lambda,
                                 double radius_km);
};

struct DimensioningResult {
    int m_star = 0;
    double achieved_pi = 0.0;
    double pi_target = 0.0;
    double ci_halfwidth = 0.0;
};

struct SweepRow {
    double tau_bps = 0.0;
    DimensioningResult result;
    std::string error;  // nonempty when this grid point failed
};

namespace dimensioning {

/// Fixed set of PLP realizations reused across M probes and grid points
/// (common random numbers). Each realization index owns its RNG substream.
std::vector<PlpRealization> sample_realizations(double lambda, double radius_km, int count,
                                                std::uint64_t seed, int threads);

/// Per-realization demand profiles divided by delta; scaling by delta gives
/// the profile for any traffic level on the same realizations.
/// The annulus restricts users to (inner, outer]; rings are recomputed per
/// interference region overlapping it.
std::vector<DemandProfile> unit_profiles(const std::vector<PlpRealization>& plps,
                                         const RadioConfig& cfg,
                                         const InterferenceProfile& iprof, double inner_km,
                                         double outer_km, int threads);

/// Mean over realizations of the conditional congestion probability, with
/// the standard error of the mean. Deterministic for a fixed profile set.
CongestionEstimate conditional_average(const std::vector<DemandProfile>& units, double delta,
                                       int m, double rel_tol, int threads);

/// Pi(M) averaged over freshly sampled PLP realizations.
CongestionEstimate congestion_avg(const Scenario& sc, int m);

/// Empirical frequency of {Gamma >= M} over fresh (PLP, users) draws,
/// n_realizations x n_user_draws samples, with binomial standard error.
CongestionEstimate congestion_mc(const Scenario& sc, int m);

/// Gamma samples underlying congestion_mc; exposed so an M grid can share
/// one set of draws.
std::vector<std::int64_t> mc_gamma_samples(const Scenario& sc, int threads_override = 0);

CongestionEstimate mc_estimate_from_samples(const std::vector<std::int64_t>& gammas, int m);

/// Minimal M with Pi(M) <= pi_target by exponential bracketing plus binary
/// search over one fixed realization set.
DimensioningResult dimension(const Scenario& sc, double pi_target);

DimensioningResult dimension_on_units(const std::vector<DemandProfile>& units, double delta,
                                      double pi_target, const EstimatorSettings& est);

/// One dimension() solve per tau, sharing the realization set.
std::vector<SweepRow> sweep_traffic(const Scenario& sc, double pi_target,
                                    const std::vector<double>& tau_grid);

struct RegionSweep {
    std::string name;
    InterferenceRegion region;
    std::vector<SweepRow> rows;
};

/// Independent dimensioning per annular region of the interference profile;
/// users restricted to each annulus, rings computed with its interference.
std::vector<RegionSweep> region_study(const Scenario& sc, double pi_target,
                                      const std::vector<double>& tau_grid,
                                      const std::vector<std::string>& names = {});

}  // namespace dimensioning
}  // namespace plpdim
