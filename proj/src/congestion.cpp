#include "plpdim/congestion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace plpdim {

namespace {
constexpr double kPi = std::numbers::pi;
}

double DemandProfile::total() const {
    double s = 0.0;
    for (double m : mu) s += m;
    return s;
}

double DemandProfile::mean_gamma() const {
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) s += (static_cast<double>(i) + 1.0) * mu[i];
    return s;
}

namespace congestion {

double alpha(const PlpRealization& plp, double d, double delta) {
    double s = 0.0;
    for (const Line& line : plp.lines) s += geometry::chord_half_length(line.r, d);
    return 2.0 * delta * s;
}

DemandProfile demand_profile_annulus(const PlpRealization& plp, const RingPartition& rings,
                                     double delta, double inner_km, double outer_km) {
    const int n_term = rings.n_terminal;
    DemandProfile out;
    out.mu.assign(static_cast<std::size_t>(n_term), 0.0);
    for (int n = 1; n <= n_term; ++n) {
        // ring n occupies (d_{n-1}, d_n], with the terminal ring open-ended
        const double lo = std::max(rings.radii_km[static_cast<std::size_t>(n - 1)], inner_km);
        const double hi = (n == n_term)
                              ? outer_km
                              : std::min(rings.radii_km[static_cast<std::size_t>(n)], outer_km);
        if (hi <= lo) continue;
        double s = 0.0;
        for (const Line& line : plp.lines)
            s += geometry::chord_half_length(line.r, hi) - geometry::chord_half_length(line.r, lo);
        out.mu[static_cast<std::size_t>(n - 1)] = 2.0 * delta * s;
    }
    return out;
}

DemandProfile demand_profile_cox(const PlpRealization& plp, const RingPartition& rings,
                                 double delta) {
    return demand_profile_annulus(plp, rings, delta, 0.0, plp.radius_km);
}

DemandProfile demand_profile_ppp(double u, const RingPartition& rings, double radius_km) {
    if (u < 0.0) throw std::invalid_argument("demand_profile_ppp: u must be >= 0");
    const int n_term = rings.n_terminal;
    const double r2 = radius_km * radius_km;
    DemandProfile out;
    out.mu.assign(static_cast<std::size_t>(n_term), 0.0);
    for (int n = 1; n <= n_term; ++n) {
        const double lo = std::min(rings.radii_km[static_cast<std::size_t>(n - 1)], radius_km);
        const double hi = (n == n_term)
                              ? radius_km
                              : std::min(rings.radii_km[static_cast<std::size_t>(n)], radius_km);
        if (hi <= lo) continue;
        out.mu[static_cast<std::size_t>(n - 1)] = u * (hi * hi - lo * lo) / r2;
    }
    return out;
}

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct IntegrandParams {
    const std::vector<double>* mu;
    double mu_total;
    int m;
};

// e^{p(t) - S} * sin(M t / 2)/sin(t / 2) * cos((M-1) t / 2 - q(t)),
// with the Dirichlet kernel's removable singularity at t = 0 taken by limit.
double integrand(double t, const IntegrandParams& par) {
    const auto& mu = *par.mu;
    double p = 0.0, q = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] == 0.0) continue;
        const double nt = (static_cast<double>(i) + 1.0) * t;
        p += mu[i] * std::cos(nt);
        q += mu[i] * std::sin(nt);
    }
    const double m = static_cast<double>(par.m);
    const double s_half = std::sin(0.5 * t);
    const double dirichlet = (s_half == 0.0) ? m : std::sin(0.5 * m * t) / s_half;
    return std::exp(p - par.mu_total) * dirichlet * std::cos(0.5 * (m - 1.0) * t - q);
}

// One GK7-15 panel: returns (K15 estimate, |K15 - G7|).
std::pair<double, double> gk15(double a, double b, const IntegrandParams& par) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[2 * i] = integrand(c - h * kKronrodNodes[i], par);
        fv[2 * i + 1] = integrand(c + h * kKronrodNodes[i], par);
    }
    fv[14] = integrand(c, par);
    double kron = kKronrodWeights[7] * fv[14];
    double gauss = kGaussWeights[3] * fv[14];
    for (int i = 0; i < 7; ++i) kron += kKronrodWeights[i] * (fv[2 * i] + fv[2 * i + 1]);
    for (int i = 0; i < 3; ++i)
        gauss += kGaussWeights[i] * (fv[4 * i + 2] + fv[4 * i + 3]);
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

double adaptive_integral(const IntegrandParams& par, double rel_tol) {
    // Panel count scales with the integrand's oscillation budget.
    double freq = 0.5 * par.m;
    for (std::size_t i = 0; i < par.mu->size(); ++i)
        freq += (static_cast<double>(i) + 1.0) * (*par.mu)[i];
    const int n_panels = std::clamp(static_cast<int>(std::ceil(0.5 * freq)) + 4, 8, 4096);

    struct Panel {
        double a, b, val, err;
        int depth;
    };
    std::vector<Panel> stack;
    stack.reserve(static_cast<std::size_t>(n_panels) + 64);
    double total = 0.0, total_err = 0.0;
    const double w = kPi / n_panels;
    for (int i = 0; i < n_panels; ++i) {
        const double a = i * w, b = (i + 1) * w;
        auto [v, e] = gk15(a, b, par);
        stack.push_back({a, b, v, e, 0});
        total += v;
    }
    const double tol = std::max(1e-13, rel_tol * std::max(1.0, std::abs(total)));

    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const double local_tol = tol * (p.b - p.a) / kPi;
        if (p.err <= local_tol || p.depth >= 40) {
            if (p.depth >= 40 && p.err > local_tol * 1e3)
                throw std::runtime_error(
                    "congestion_conditional: quadrature failed to converge "
                    "(panel error " + std::to_string(p.err) + ")");
            total_err += p.err;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        auto [v1, e1] = gk15(p.a, mid, par);
        auto [v2, e2] = gk15(mid, p.b, par);
        total += (v1 + v2) - p.val;
        stack.push_back({p.a, mid, v1, e1, p.depth + 1});
        stack.push_back({mid, p.b, v2, e2, p.depth + 1});
    }
    (void)total_err;
    return total;
}

}  // namespace

double congestion_conditional(const DemandProfile& profile, int m, double rel_tol) {
    if (m < 0) throw std::invalid_argument("congestion_conditional: M must be >= 0");
    if (m == 0) return 1.0;
    const double mu_total = profile.total();
    if (mu_total == 0.0) return 0.0;
    IntegrandParams par{&profile.mu, mu_total, m};
    const double integral = adaptive_integral(par, rel_tol);
    return std::clamp(1.0 - integral / kPi, 0.0, 1.0);
}

std::vector<double> brute_force_pmf(const DemandProfile& profile) {
    constexpr double kTotalCutoff = 1e-12;
    int n_active = 0;
    for (double m : profile.mu)
        if (m > 0.0) ++n_active;
    std::vector<double> pmf{1.0};
    if (n_active == 0) return pmf;
    const double cutoff = kTotalCutoff / n_active;

    for (std::size_t i = 0; i < profile.mu.size(); ++i) {
        const double mu = profile.mu[i];
        if (mu == 0.0) continue;
        const int n = static_cast<int>(i) + 1;
        // Poisson(mu) pmf truncated where the remaining tail mass < cutoff
        std::vector<double> pois;
        double pk = std::exp(-mu);
        double cum = pk;
        pois.push_back(pk);
        int k = 0;
        while (1.0 - cum >= cutoff || static_cast<double>(k) < mu) {
            ++k;
            pk *= mu / k;
            cum += pk;
            pois.push_back(pk);
            if (pois.size() > 100000)
                throw std::runtime_error("brute_force_pmf: truncation bound not reachable");
        }
        std::vector<double> next(pmf.size() + pois.size() * static_cast<std::size_t>(n), 0.0);
        for (std::size_t g = 0; g < pmf.size(); ++g) {
            if (pmf[g] == 0.0) continue;
            for (std::size_t kk = 0; kk < pois.size(); ++kk)
                next[g + kk * static_cast<std::size_t>(n)] += pmf[g] * pois[kk];
        }
        pmf = std::move(next);
    }
    return pmf;
}

double brute_force_ccdf(const DemandProfile& profile, int m) {
    if (m <= 0) return 1.0;
    const std::vector<double> pmf = brute_force_pmf(profile);
    if (static_cast<std::size_t>(m) >= pmf.size()) return 0.0;
    // tail-first summation keeps the small probabilities from being swamped
    double tail = 0.0;
    for (std::size_t k = pmf.size(); k-- > static_cast<std::size_t>(m);) tail += pmf[k];
    return tail;
}

std::complex<double> pgf_eval(const DemandProfile& profile, std::complex<double> z) {
    std::complex<double> expo(-profile.total(), 0.0);
    std::complex<double> zn(1.0, 0.0);
    for (double mu : profile.mu) {
        zn *= z;
        expo += mu * zn;
    }
    return std::exp(expo);
}

std::int64_t sample_gamma(const PlpRealization& plp, const RadioConfig& cfg,
                          const InterferenceProfile& iprof, double delta,
                          std::mt19937_64& rng) {
    const UserPositions users = geometry::sample_users_on_realization(plp, delta, rng);
    std::int64_t gamma = 0;
    for (double x : users.distances_km) gamma += radio::prb_demand_profiled(x, cfg, iprof);
    return gamma;
}

}  // namespace congestion
}  // namespace plpdim
