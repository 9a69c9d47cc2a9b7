#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace plpdim {

/// A road, parametrized by the foot of the perpendicular from the cell
/// center: distance r >= 0 and angle theta in (-pi, pi].
struct Line {
    double r;
    double theta;
};

/// A sampled Poisson Line Process restricted to the disk B(0, radius_km).
struct PlpRealization {
    std::vector<Line> lines;
    double radius_km = 0.0;
    double lambda = 0.0;           // road intensity, km^-1 (E[#lines] = 2*pi*lambda*R)
    std::uint64_t seed_tag = 0;    // reproducibility identifier
};

/// User locations flattened over all roads; only the distance from the
/// origin matters downstream, so that is all we keep.
struct UserPositions {
    std::vector<double> distances_km;
};

namespace geometry {

/// Sample a PLP in B(0,R): line count ~ Poisson(2*pi*lambda*R), with r
/// uniform on [0,R] and theta uniform on (-pi, pi].
PlpRealization sample_plp(double lambda, double radius_km, std::mt19937_64& rng,
                          std::uint64_t seed_tag = 0);

/// Half-length of the chord cut from a disk of radius d by a line at
/// distance r from the center: sqrt(d^2 - r^2) if d > r, else 0.
double chord_half_length(double r, double d);

/// Linear PPP of intensity delta on each chord; returns distances from the
/// origin of all users inside the disk.
UserPositions sample_users_on_realization(const PlpRealization& plp, double delta,
                                          std::mt19937_64& rng);

/// Homogeneous spatial PPP baseline: count ~ Poisson(intensity*pi*R^2),
/// positions uniform on the disk, returned as distances (CDF x^2/R^2).
UserPositions sample_spatial_ppp(double intensity, double radius_km, std::mt19937_64& rng);

/// Mean user count of the Cox process in B(0,R): lambda*delta*pi*R^2.
double mean_users_in_disk(double lambda, double delta, double radius_km);

}  // namespace geometry
}  // namespace plpdim
