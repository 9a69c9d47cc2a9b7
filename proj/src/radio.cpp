#include "plpdim/radio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plpdim {

void RadioConfig::validate() const {
    if (power_mw <= 0.0) throw std::invalid_argument("RadioConfig: power must be > 0");
    if (prop_const <= 0.0) throw std::invalid_argument("RadioConfig: prop_const must be > 0");
    if (half_pathloss_exp <= 0.5)
        throw std::invalid_argument("RadioConfig: path loss exponent 2b must exceed 1");
    if (prb_bandwidth_hz <= 0.0)
        throw std::invalid_argument("RadioConfig: PRB bandwidth must be > 0");
    if (mimo_layers < 1) throw std::invalid_argument("RadioConfig: mimo_layers must be >= 1");
    if (noise_mw <= 0.0) throw std::invalid_argument("RadioConfig: noise must be > 0");
    if (sinr_threshold <= 0.0)
        throw std::invalid_argument("RadioConfig: SINR threshold must be > 0 (linear)");
    if (service_rate_bps <= 0.0)
        throw std::invalid_argument("RadioConfig: service rate must be > 0");
    if (n_max < 1) throw std::invalid_argument("RadioConfig: n_max must be >= 1");
}

double InterferenceProfile::interference_at(double x_km, double noise_mw) const {
    if (regions.empty()) return single_i_mw;
    for (const auto& reg : regions) {
        // regions partition [0,R] as (inner, outer], with the first closed at 0
        if (x_km > reg.inner_km && x_km <= reg.outer_km)
            return radio::interference_from_margin(reg.margin, noise_mw);
        if (x_km == 0.0 && reg.inner_km == 0.0)
            return radio::interference_from_margin(reg.margin, noise_mw);
    }
    // beyond the last region boundary (numerical spill): use the outermost
    return radio::interference_from_margin(regions.back().margin, noise_mw);
}

int RingPartition::ring_index(double x_km) const {
    auto it = std::lower_bound(radii_km.begin() + 1, radii_km.end(), x_km);
    if (it == radii_km.end()) return n_terminal;
    return static_cast<int>(it - radii_km.begin());
}

namespace radio {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double sinr(double x_km, const RadioConfig& cfg, double i_mw) {
    if (x_km <= 0.0) throw std::domain_error("sinr: x must be > 0");
    const double rx = cfg.power_mw * std::pow(x_km, -2.0 * cfg.half_pathloss_exp) / cfg.prop_const;
    return rx / (i_mw + cfg.noise_mw);
}

double throughput(double x_km, const RadioConfig& cfg, double i_mw) {
    return cfg.mimo_layers * cfg.prb_bandwidth_hz * std::log2(1.0 + sinr(x_km, cfg, i_mw));
}

int terminal_n(const RadioConfig& cfg) {
    const double per_prb = cfg.mimo_layers * cfg.prb_bandwidth_hz *
                           std::log2(1.0 + cfg.sinr_threshold);
    const double n = std::ceil(cfg.service_rate_bps / per_prb);
    const int n_cap = (n > static_cast<double>(cfg.n_max)) ? cfg.n_max : static_cast<int>(n);
    return std::max(1, n_cap);
}

int prb_demand(double x_km, const RadioConfig& cfg, double i_mw) {
    const int n_term = terminal_n(cfg);
    const double c = throughput(x_km, cfg, i_mw);
    const double n = std::ceil(cfg.service_rate_bps / c);
    if (!(n < static_cast<double>(n_term))) return n_term;
    return std::max(1, static_cast<int>(n));
}

RingPartition ring_radii(const RadioConfig& cfg, double i_mw) {
    if (i_mw < 0.0) throw std::invalid_argument("ring_radii: interference must be >= 0");
    const int n_term = terminal_n(cfg);
    RingPartition out;
    out.n_terminal = n_term;
    out.radii_km.resize(static_cast<std::size_t>(n_term) + 1);
    out.radii_km[0] = 0.0;
    const double k = cfg.prop_const * (i_mw + cfg.noise_mw) / cfg.power_mw;
    const double per_layer_hz = cfg.mimo_layers * cfg.prb_bandwidth_hz;
    for (int n = 1; n <= n_term; ++n) {
        const double gain = std::exp2(cfg.service_rate_bps / (n * per_layer_hz)) - 1.0;
        out.radii_km[static_cast<std::size_t>(n)] =
            std::pow(k * gain, -1.0 / (2.0 * cfg.half_pathloss_exp));
    }
    return out;
}

double interference_from_margin(double im_linear, double noise_mw) {
    if (im_linear < 1.0)
        throw std::invalid_argument("interference_from_margin: IM must be >= 1 (linear)");
    return (im_linear - 1.0) * noise_mw;
}

int prb_demand_profiled(double x_km, const RadioConfig& cfg, const InterferenceProfile& iprof) {
    return prb_demand(x_km, cfg, iprof.interference_at(x_km, cfg.noise_mw));
}

}  // namespace radio
}  // namespace plpdim
