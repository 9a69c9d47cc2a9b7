#include "plpdim/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace plpdim::geometry {

namespace {
constexpr double kPi = std::numbers::pi;
}

PlpRealization sample_plp(double lambda, double radius_km, std::mt19937_64& rng,
                          std::uint64_t seed_tag) {
    if (lambda < 0.0) throw std::invalid_argument("sample_plp: lambda must be >= 0");
    if (radius_km <= 0.0) throw std::invalid_argument("sample_plp: radius must be > 0");

    PlpRealization out;
    out.radius_km = radius_km;
    out.lambda = lambda;
    out.seed_tag = seed_tag;

    const double mean = 2.0 * kPi * lambda * radius_km;
    std::size_t count = 0;
    if (mean > 0.0) {
        std::poisson_distribution<std::size_t> pois(mean);
        count = pois(rng);
    }
    out.lines.reserve(count);
    std::uniform_real_distribution<double> ur(0.0, radius_km);
    std::uniform_real_distribution<double> utheta(-kPi, kPi);  // (-pi, pi]
    for (std::size_t i = 0; i < count; ++i) {
        const double r = ur(rng);
        double theta = utheta(rng);
        if (theta == -kPi) theta = kPi;
        out.lines.push_back({r, theta});
    }
    return out;
}

double chord_half_length(double r, double d) {
    if (d <= r) return 0.0;
    return std::sqrt((d - r) * (d + r));
}

UserPositions sample_users_on_realization(const PlpRealization& plp, double delta,
                                          std::mt19937_64& rng) {
    if (delta < 0.0)
        throw std::invalid_argument("sample_users_on_realization: delta must be >= 0");

    UserPositions out;
    if (delta == 0.0) return out;
    for (const Line& line : plp.lines) {
        const double half = chord_half_length(line.r, plp.radius_km);
        if (half <= 0.0) continue;
        std::poisson_distribution<std::size_t> pois(2.0 * delta * half);
        const std::size_t count = pois(rng);
        std::uniform_real_distribution<double> ut(-half, half);
        for (std::size_t i = 0; i < count; ++i) {
            const double t = ut(rng);
            out.distances_km.push_back(std::hypot(line.r, t));
        }
    }
    return out;
}

UserPositions sample_spatial_ppp(double intensity, double radius_km, std::mt19937_64& rng) {
    if (intensity < 0.0)
        throw std::invalid_argument("sample_spatial_ppp: intensity must be >= 0");
    if (radius_km <= 0.0) throw std::invalid_argument("sample_spatial_ppp: radius must be > 0");

    UserPositions out;
    const double mean = intensity * kPi * radius_km * radius_km;
    if (mean == 0.0) return out;
    std::poisson_distribution<std::size_t> pois(mean);
    const std::size_t count = pois(rng);
    out.distances_km.reserve(count);
    std::uniform_real_distribution<double> uu(0.0, 1.0);
    for (std::size_t i = 0; i < count; ++i) {
        // distance CDF is x^2/R^2 on [0,R]
        out.distances_km.push_back(radius_km * std::sqrt(uu(rng)));
    }
    return out;
}

double mean_users_in_disk(double lambda, double delta, double radius_km) {
    return lambda * delta * kPi * radius_km * radius_km;
}

}  // namespace plpdim::geometry
