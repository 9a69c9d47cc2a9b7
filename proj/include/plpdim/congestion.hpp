#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "plpdim/geometry.hpp"
#include "plpdim/radio.hpp"

namespace plpdim {

/// Mean user counts per PRB ring: mu[n-1] users needing n PRBs each.
struct DemandProfile {
    std::vector<double> mu;

    double total() const;        // sum of mu_n (= alpha at the terminal radius)
    double mean_gamma() const;   // E[Gamma] = sum n * mu_n
};

struct CongestionEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
};

namespace congestion {

/// Conditional mean user count inside B(0,d): 2*delta*sum over lines with
/// r_j < d of sqrt(d^2 - r_j^2).
double alpha(const PlpRealization& plp, double d, double delta);

/// Per-ring mean user counts restricted to the annulus (inner, outer]; the
/// terminal ring absorbs everything beyond d_N (demand is capped there).
/// Ring boundaries are clamped to the annulus.
DemandProfile demand_profile_annulus(const PlpRealization& plp, const RingPartition& rings,
                                     double delta, double inner_km, double outer_km);

/// Whole-disk Cox profile: annulus (0, R] of the realization.
DemandProfile demand_profile_cox(const PlpRealization& plp, const RingPartition& rings,
                                 double delta);

/// Spatial-PPP profile: mu_n = u * (d~_n^2 - d~_{n-1}^2) / R^2 with radii
/// clamped to R and the terminal ring extended to R.
DemandProfile demand_profile_ppp(double u, const RingPartition& rings, double radius_km);

/// P(Gamma >= M | phi) by the closed-form integral
///   1 - (1/pi) e^{-sum mu} \int_0^pi e^{p} sin(M t/2)/sin(t/2)
///                                   cos((M-1) t/2 - q) dt,
/// p(t) = sum mu_n cos(n t), q(t) = sum mu_n sin(n t).
/// Clamped to [0,1]; M = 0 returns exactly 1.
double congestion_conditional(const DemandProfile& profile, int m, double rel_tol = 1e-9);

/// Exact pmf of Gamma = sum n X_n by convolution of truncated Poisson pmfs
/// (the n-th supported on multiples of n); total neglected mass < 1e-12.
std::vector<double> brute_force_pmf(const DemandProfile& profile);

/// Tail sum P(Gamma >= M) from the exact pmf. Independent oracle for the
/// quadrature path; must stay free of it.
double brute_force_ccdf(const DemandProfile& profile, int m);

/// PGF of Gamma: e^{-sum mu} e^{sum mu_n z^n}, |z| <= 1.
std::complex<double> pgf_eval(const DemandProfile& profile, std::complex<double> z);

/// Draw users on the realization, map each through the PRB demand, sum.
std::int64_t sample_gamma(const PlpRealization& plp, const RadioConfig& cfg,
                          const InterferenceProfile& iprof, double delta,
                          std::mt19937_64& rng);

}  // namespace congestion
}  // namespace plpdim
