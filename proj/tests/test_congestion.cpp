#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "plpdim/congestion.hpp"
#include "plpdim/geometry.hpp"
#include "plpdim/radio.hpp"
#include "plpdim/rng.hpp"

using namespace plpdim;
namespace cg = plpdim::congestion;

namespace {

DemandProfile profile(std::initializer_list<double> mu) {
    DemandProfile p;
    p.mu.assign(mu);
    return p;
}

RadioConfig tight_config() {
    RadioConfig cfg;
    cfg.power_mw = radio::dbm_to_mw(30.0);
    cfg.prop_const = radio::db_to_linear(130.0);
    cfg.half_pathloss_exp = 3.5 / 2.0;
    cfg.prb_bandwidth_hz = 180e3;
    cfg.mimo_layers = 2;
    cfg.noise_mw = radio::dbm_to_mw(-93.0);
    cfg.sinr_threshold = radio::db_to_linear(-10.0);
    cfg.service_rate_bps = 1e6;
    cfg.n_max = 1000000;
    return cfg;
}

DemandProfile random_profile(std::mt19937_64& eng, int max_n, double max_total) {
    std::uniform_int_distribution<int> un(1, max_n);
    std::uniform_real_distribution<double> uu(0.0, 1.0);
    const int n = un(eng);
    DemandProfile p;
    p.mu.resize(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& m : p.mu) {
        // mixed continuous draw, occasionally zero
        m = (uu(eng) < 0.15) ? 0.0 : -std::log(uu(eng));
        total += m;
    }
    const double budget = uu(eng) * max_total;
    if (total > 0.0)
        for (auto& m : p.mu) m *= budget / total;
    return p;
}

}  // namespace

TEST_CASE("alpha") {
    PlpRealization empty;
    empty.radius_km = 0.6;
    CHECK(cg::alpha(empty, 0.5, 2.0) == 0.0);

    PlpRealization one;
    one.radius_km = 0.6;
    one.lines = {{0.0, 0.3}};
    CHECK(cg::alpha(one, 0.5, 2.0) == doctest::Approx(2.0));  // 2 * 2 * 0.5
}

TEST_CASE("alpha: expectation over the PLP equals pi^2 lambda delta d^2") {
    const double lambda = 5.0, delta = 2.0, d = 0.45, radius = 0.6;
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        auto eng = rng::engine(21, static_cast<std::uint64_t>(i));
        const auto plp = geometry::sample_plp(lambda, radius, eng);
        const double a = cg::alpha(plp, d, delta);
        sum += a;
        sum2 += a * a;
    }
    const double mean = sum / n;
    // expected chord mass within distance d is pi times the equivalent-PPP mean
    const double expected = std::numbers::pi * geometry::mean_users_in_disk(lambda, delta, d);
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - expected) < 3.0 * se);
}

TEST_CASE("demand profiles telescope") {
    const auto cfg = tight_config();
    const auto rings = radio::ring_radii(cfg, 0.0);

    PlpRealization empty;
    empty.radius_km = 0.6;
    auto prof = cg::demand_profile_cox(empty, rings, 2.0);
    CHECK(prof.total() == 0.0);

    auto eng = rng::engine(33);
    const auto plp = geometry::sample_plp(5.0, 0.6, eng);
    prof = cg::demand_profile_cox(plp, rings, 2.0);
    for (double m : prof.mu) CHECK(m >= 0.0);
    // terminal ring is truncated at R, so the total is alpha at R
    CHECK(prof.total() == doctest::Approx(cg::alpha(plp, 0.6, 2.0)).epsilon(1e-12));
}

TEST_CASE("demand_profile_ppp") {
    const auto cfg = tight_config();
    const auto rings = radio::ring_radii(cfg, 0.0);
    auto prof = cg::demand_profile_ppp(0.0, rings, 0.6);
    CHECK(prof.total() == 0.0);
    prof = cg::demand_profile_ppp(25.0, rings, 0.6);
    CHECK(prof.total() == doctest::Approx(25.0).epsilon(1e-12));

    // two equal-area rings by hand: u = 25 -> (12.5, 12.5)
    RingPartition two;
    two.n_terminal = 2;
    two.radii_km = {0.0, 0.6 / std::sqrt(2.0), 0.6};
    prof = cg::demand_profile_ppp(25.0, two, 0.6);
    CHECK(prof.mu[0] == doctest::Approx(12.5).epsilon(1e-12));
    CHECK(prof.mu[1] == doctest::Approx(12.5).epsilon(1e-12));
}

TEST_CASE("congestion_conditional: closed forms") {
    CHECK(cg::congestion_conditional(profile({1.0}), 0) == 1.0);
    // Gamma ~ Poisson(1): P(Gamma >= 1) = 1 - e^{-1}
    CHECK(cg::congestion_conditional(profile({1.0}), 1) ==
          doctest::Approx(0.6321205588285577).epsilon(1e-10));
    // mu = (0.5, 0.5), M = 2: 1 - 1.5 e^{-1} by enumeration
    CHECK(cg::congestion_conditional(profile({0.5, 0.5}), 2) ==
          doctest::Approx(0.4481808382428365).epsilon(1e-10));
    // degenerate: all-zero profile
    CHECK(cg::congestion_conditional(profile({0.0, 0.0}), 1) == 0.0);
    CHECK_THROWS_AS(cg::congestion_conditional(profile({1.0}), -1), std::invalid_argument);
}

TEST_CASE("brute_force_ccdf: Poisson landmark and normalization") {
    CHECK(cg::brute_force_ccdf(profile({1.0}), 0) == 1.0);
    CHECK(cg::brute_force_ccdf(profile({1.0}), 1) ==
          doctest::Approx(0.6321205588285577).epsilon(1e-12));
    const auto pmf = cg::brute_force_pmf(profile({2.5, 0.0, 1.25, 3.0}));
    double total = 0.0;
    for (double p : pmf) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oracle equivalence on random profiles") {
    auto eng = rng::engine(777);
    for (int trial = 0; trial < 40; ++trial) {
        const auto prof = random_profile(eng, 10, 20.0);
        for (int m = 0; m <= 100; m += 7) {
            const double a = cg::congestion_conditional(prof, m);
            const double b = cg::brute_force_ccdf(prof, m);
            CHECK(std::abs(a - b) <= 1e-8);
        }
    }
}

TEST_CASE("monotone non-increasing in M on a fixed profile") {
    const auto prof = profile({3.0, 2.0, 1.0, 0.5});
    double prev = 2.0;
    for (int m = 0; m <= 40; ++m) {
        const double v = cg::congestion_conditional(prof, m);
        CHECK(v <= prev + 1e-9);
        prev = v;
    }
}

TEST_CASE("pgf_eval") {
    const auto prof = profile({1.5, 0.25, 0.75});
    CHECK(std::abs(cg::pgf_eval(prof, {1.0, 0.0}) - std::complex<double>(1.0, 0.0)) < 1e-12);
    CHECK(cg::pgf_eval(prof, {0.0, 0.0}).real() ==
          doctest::Approx(std::exp(-prof.total())).epsilon(1e-12));
    // finite-difference derivative at z = 1 equals E[Gamma]
    const double h = 1e-6;
    const double deriv =
        (cg::pgf_eval(prof, {1.0, 0.0}).real() - cg::pgf_eval(prof, {1.0 - h, 0.0}).real()) / h;
    CHECK(deriv == doctest::Approx(prof.mean_gamma()).epsilon(1e-4));
    // and the pmf oracle agrees on the mean
    const auto pmf = cg::brute_force_pmf(prof);
    double mean = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) mean += static_cast<double>(k) * pmf[k];
    CHECK(mean == doctest::Approx(prof.mean_gamma()).epsilon(1e-10));
}

TEST_CASE("sample_gamma: trivial cases and moment check") {
    const auto cfg = tight_config();
    InterferenceProfile no_interference;
    PlpRealization empty;
    empty.radius_km = 0.6;
    auto eng = rng::engine(9);
    CHECK(cg::sample_gamma(empty, cfg, no_interference, 5.0, eng) == 0);

    const auto plp = geometry::sample_plp(5.0, 0.6, eng);
    CHECK(cg::sample_gamma(plp, cfg, no_interference, 0.0, eng) == 0);

    const auto rings = radio::ring_radii(cfg, 0.0);
    const double delta = 2.0;
    const auto prof = cg::demand_profile_cox(plp, rings, delta);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        auto e = rng::engine(31, static_cast<std::uint64_t>(i));
        const auto g = static_cast<double>(cg::sample_gamma(plp, cfg, no_interference, delta, e));
        sum += g;
        sum2 += g * g;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - prof.mean_gamma()) < 3.0 * se);
}

TEST_CASE("all users inside d_1 make Gamma equal the user count") {
    // huge service headroom: every user needs exactly one PRB
    auto cfg = tight_config();
    cfg.service_rate_bps = 1e3;
    const auto rings = radio::ring_radii(cfg, 0.0);
    CHECK(rings.radii_km[1] > 0.6);
    InterferenceProfile no_interference;
    auto eng = rng::engine(12);
    const auto plp = geometry::sample_plp(5.0, 0.6, eng);
    auto e1 = rng::engine(13);
    auto e2 = rng::engine(13);
    const auto users = geometry::sample_users_on_realization(plp, 2.0, e1);
    const auto gamma = cg::sample_gamma(plp, cfg, no_interference, 2.0, e2);
    CHECK(gamma == static_cast<std::int64_t>(users.distances_km.size()));
}
