#include "plpdim/dimensioning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "plpdim/rng.hpp"

namespace plpdim {

double Scenario::delta_from_tau(double tau_bps, double service_rate_bps, double lambda,
                                double radius_km) {
    const double denom = service_rate_bps * lambda * std::numbers::pi * radius_km * radius_km;
    if (denom <= 0.0)
        throw std::invalid_argument("delta_from_tau: C*, lambda and R must be positive");
    return tau_bps / denom;
}

namespace dimensioning {

namespace {

// Purpose tags keep the analytic and MC paths on disjoint substreams.
constexpr std::uint64_t kPurposePlp = 0x706c705f73657431ULL;
constexpr std::uint64_t kPurposeMc = 0x6d635f64726177ULL;

// Static index striping; each index writes its own slot, so the result is
// independent of the thread count.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    threads = std::clamp(threads, 1, n > 0 ? n : 1);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([=]() {
            for (int i = t; i < n; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<PlpRealization> sample_realizations(double lambda, double radius_km, int count,
                                                std::uint64_t seed, int threads) {
    std::vector<PlpRealization> out(static_cast<std::size_t>(count));
    parallel_for(count, threads, [&](int i) {
        auto eng = rng::engine(seed ^ kPurposePlp, static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i)] =
            geometry::sample_plp(lambda, radius_km, eng, static_cast<std::uint64_t>(i));
    });
    return out;
}

std::vector<DemandProfile> unit_profiles(const std::vector<PlpRealization>& plps,
                                         const RadioConfig& cfg,
                                         const InterferenceProfile& iprof, double inner_km,
                                         double outer_km, int threads) {
    // One ring partition per interference region overlapping the annulus.
    struct Piece {
        RingPartition rings;
        double lo, hi;
    };
    std::vector<Piece> pieces;
    if (iprof.has_regions()) {
        for (const auto& reg : iprof.regions) {
            const double lo = std::max(reg.inner_km, inner_km);
            const double hi = std::min(reg.outer_km, outer_km);
            if (hi <= lo) continue;
            const double i_mw = radio::interference_from_margin(reg.margin, cfg.noise_mw);
            pieces.push_back({radio::ring_radii(cfg, i_mw), lo, hi});
        }
    } else {
        pieces.push_back({radio::ring_radii(cfg, iprof.single_i_mw), inner_km, outer_km});
    }

    const int n = static_cast<int>(plps.size());
    std::vector<DemandProfile> out(plps.size());
    parallel_for(n, threads, [&](int i) {
        const auto& plp = plps[static_cast<std::size_t>(i)];
        DemandProfile acc;
        for (const auto& piece : pieces) {
            DemandProfile part =
                congestion::demand_profile_annulus(plp, piece.rings, 1.0, piece.lo, piece.hi);
            if (acc.mu.size() < part.mu.size()) acc.mu.resize(part.mu.size(), 0.0);
            for (std::size_t k = 0; k < part.mu.size(); ++k) acc.mu[k] += part.mu[k];
        }
        out[static_cast<std::size_t>(i)] = std::move(acc);
    });
    return out;
}

CongestionEstimate conditional_average(const std::vector<DemandProfile>& units, double delta,
                                       int m, double rel_tol, int threads) {
    const int n = static_cast<int>(units.size());
    if (n < 1) throw std::invalid_argument("conditional_average: need >= 1 realization");
    std::vector<double> vals(units.size());
    parallel_for(n, threads, [&](int i) {
        DemandProfile scaled;
        scaled.mu.reserve(units[static_cast<std::size_t>(i)].mu.size());
        for (double g : units[static_cast<std::size_t>(i)].mu) scaled.mu.push_back(delta * g);
        vals[static_cast<std::size_t>(i)] =
            congestion::congestion_conditional(scaled, m, rel_tol);
    });
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    const double sem = (n > 1) ? std::sqrt(var / (static_cast<double>(n) * (n - 1))) : 0.0;
    return {mean, sem, n};
}

CongestionEstimate congestion_avg(const Scenario& sc, int m) {
    const auto plps = sample_realizations(sc.lambda, sc.radius_km, sc.est.n_realizations,
                                          sc.est.seed, sc.est.threads);
    const auto units =
        unit_profiles(plps, sc.radio, sc.interference, 0.0, sc.radius_km, sc.est.threads);
    return conditional_average(units, sc.delta, m, sc.est.quad_rel_tol, sc.est.threads);
}

std::vector<std::int64_t> mc_gamma_samples(const Scenario& sc, int threads_override) {
    const int n_real = sc.est.n_realizations;
    const int n_draws = std::max(1, sc.est.n_user_draws);
    const int threads = threads_override > 0 ? threads_override : sc.est.threads;
    std::vector<std::int64_t> gammas(static_cast<std::size_t>(n_real) *
                                     static_cast<std::size_t>(n_draws));
    parallel_for(n_real, threads, [&](int i) {
        auto eng = rng::engine(sc.est.seed ^ kPurposeMc, static_cast<std::uint64_t>(i));
        const PlpRealization plp =
            geometry::sample_plp(sc.lambda, sc.radius_km, eng, static_cast<std::uint64_t>(i));
        for (int d = 0; d < n_draws; ++d) {
            gammas[static_cast<std::size_t>(i) * n_draws + static_cast<std::size_t>(d)] =
                congestion::sample_gamma(plp, sc.radio, sc.interference, sc.delta, eng);
        }
    });
    return gammas;
}

CongestionEstimate mc_estimate_from_samples(const std::vector<std::int64_t>& gammas, int m) {
    const auto n = static_cast<std::int64_t>(gammas.size());
    std::int64_t hits = 0;
    for (std::int64_t g : gammas)
        if (g >= m) ++hits;
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    const double se = std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(n)));
    return {p, se, n};
}

CongestionEstimate congestion_mc(const Scenario& sc, int m) {
    if (sc.est.n_realizations < 1 || sc.est.n_user_draws < 1)
        throw std::invalid_argument("congestion_mc: sample counts must be >= 1");
    if (m <= 0) return {1.0, 0.0, static_cast<std::int64_t>(sc.est.n_realizations) *
                                       sc.est.n_user_draws};
    return mc_estimate_from_samples(mc_gamma_samples(sc), m);
}

DimensioningResult dimension_on_units(const std::vector<DemandProfile>& units, double delta,
                                      double pi_target, const EstimatorSettings& est) {
    if (pi_target <= 0.0 || pi_target >= 1.0)
        throw std::invalid_argument("dimension: pi_target must lie in (0,1)");
    auto pi_of = [&](int m) {
        return conditional_average(units, delta, m, est.quad_rel_tol, est.threads);
    };

    CongestionEstimate at = pi_of(1);
    int lo = 0;  // invariant: Pi(lo) > target (Pi(0) = 1)
    int hi = 1;
    while (at.value > pi_target) {
        lo = hi;
        hi *= 2;
        if (hi > est.m_search_cap) {
            at = pi_of(est.m_search_cap);
            if (at.value > pi_target)
                throw std::runtime_error(
                    "dimension: target unreachable within M cap; Pi(" +
                    std::to_string(est.m_search_cap) + ") = " + std::to_string(at.value));
            hi = est.m_search_cap;
            break;
        }
        at = pi_of(hi);
    }
    // binary search for minimal M in (lo, hi] with Pi(M) <= target
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        const CongestionEstimate cand = pi_of(mid);
        if (cand.value <= pi_target) {
            hi = mid;
            at = cand;
        } else {
            lo = mid;
        }
    }
    DimensioningResult res;
    res.m_star = hi;
    res.achieved_pi = at.value;
    res.pi_target = pi_target;
    res.ci_halfwidth = 1.96 * at.std_error;
    return res;
}

DimensioningResult dimension(const Scenario& sc, double pi_target) {
    const auto plps = sample_realizations(sc.lambda, sc.radius_km, sc.est.n_realizations,
                                          sc.est.seed, sc.est.threads);
    const auto units =
        unit_profiles(plps, sc.radio, sc.interference, 0.0, sc.radius_km, sc.est.threads);
    return dimension_on_units(units, sc.delta, pi_target, sc.est);
}

std::vector<SweepRow> sweep_traffic(const Scenario& sc, double pi_target,
                                    const std::vector<double>& tau_grid) {
    if (tau_grid.empty()) throw std::invalid_argument("sweep_traffic: empty tau grid");
    const auto plps = sample_realizations(sc.lambda, sc.radius_km, sc.est.n_realizations,
                                          sc.est.seed, sc.est.threads);
    const auto units =
        unit_profiles(plps, sc.radio, sc.interference, 0.0, sc.radius_km, sc.est.threads);
    std::vector<SweepRow> rows;
    rows.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        SweepRow row;
        row.tau_bps = tau;
        try {
            const double delta =
                Scenario::delta_from_tau(tau, sc.radio.service_rate_bps, sc.lambda, sc.radius_km);
            row.result = dimension_on_units(units, delta, pi_target, sc.est);
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RegionSweep> region_study(const Scenario& sc, double pi_target,
                                      const std::vector<double>& tau_grid,
                                      const std::vector<std::string>& names) {
    if (!sc.interference.has_regions())
        throw std::invalid_argument("region_study: scenario has no interference regions");
    const auto plps = sample_realizations(sc.lambda, sc.radius_km, sc.est.n_realizations,
                                          sc.est.seed, sc.est.threads);
    std::vector<RegionSweep> out;
    for (std::size_t k = 0; k < sc.interference.regions.size(); ++k) {
        const auto& reg = sc.interference.regions[k];
        RegionSweep sweep;
        sweep.region = reg;
        sweep.name = (k < names.size()) ? names[k] : "region" + std::to_string(k);
        InterferenceProfile single;
        single.single_i_mw = radio::interference_from_margin(reg.margin, sc.radio.noise_mw);
        const auto units = unit_profiles(plps, sc.radio, single, reg.inner_km, reg.outer_km,
                                         sc.est.threads);
        for (double tau : tau_grid) {
            SweepRow row;
            row.tau_bps = tau;
            try {
                const double delta = Scenario::delta_from_tau(tau, sc.radio.service_rate_bps,
                                                              sc.lambda, sc.radius_km);
                row.result = dimension_on_units(units, delta, pi_target, sc.est);
            } catch (const std::exception& ex) {
                row.error = ex.what();
            }
            sweep.rows.push_back(std::move(row));
        }
        out.push_back(std::move(sweep));
    }
    return out;
}

}  // namespace dimensioning
}  // namespace plpdim
