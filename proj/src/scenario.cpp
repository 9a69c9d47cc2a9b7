#include "plpdim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace plpdim::scenario {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

void check_keys(const json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return it.key() == k;
            }) == allowed.end())
            throw std::invalid_argument("scenario: unknown key '" + section + "." + it.key() +
                                        "'");
    }
}

const json& require(const json& obj, const std::string& section, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw std::invalid_argument("scenario: missing required key '" + section + "." + key +
                                    "'");
    return *it;
}

double num(const json& obj, const std::string& section, const char* key) {
    const json& v = require(obj, section, key);
    if (!v.is_number())
        throw std::invalid_argument("scenario: key '" + section + "." + key +
                                    "' must be a number");
    return v.get<double>();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

InterferenceProfile parse_interference(const json& j, double radius_km, double noise_mw) {
    InterferenceProfile out;
    check_keys(j, "interference", {"i_mw", "im_db", "regions"});
    const int given = static_cast<int>(j.contains("i_mw")) + j.contains("im_db") +
                      j.contains("regions");
    if (given != 1)
        throw std::invalid_argument(
            "scenario: interference needs exactly one of 'i_mw', 'im_db', 'regions'");
    if (j.contains("i_mw")) {
        out.single_i_mw = num(j, "interference", "i_mw");
        if (out.single_i_mw < 0.0)
            throw std::invalid_argument("scenario: interference.i_mw must be >= 0");
    } else if (j.contains("im_db")) {
        const double im_db = num(j, "interference", "im_db");
        out.single_i_mw =
            radio::interference_from_margin(radio::db_to_linear(im_db), noise_mw);
    } else {
        for (std::size_t k = 0; k < j["regions"].size(); ++k) {
            const json& rj = j["regions"][k];
            const std::string sec = "interference.regions[" + std::to_string(k) + "]";
            check_keys(rj, sec, {"inner_km", "outer_km", "im_db"});
            InterferenceRegion reg;
            reg.inner_km = num(rj, sec, "inner_km");
            reg.outer_km = num(rj, sec, "outer_km");
            reg.margin = radio::db_to_linear(num(rj, sec, "im_db"));
            if (reg.margin < 1.0)
                throw std::invalid_argument("scenario: " + sec + ".im_db must be >= 0 dB");
            out.regions.push_back(reg);
        }
        std::sort(out.regions.begin(), out.regions.end(),
                  [](const auto& a, const auto& b) { return a.inner_km < b.inner_km; });
        if (out.regions.empty() || std::abs(out.regions.front().inner_km) > 1e-12 ||
            std::abs(out.regions.back().outer_km - radius_km) > 1e-9)
            throw std::invalid_argument(
                "scenario: interference.regions must cover [0, R] exactly");
        for (std::size_t k = 0; k + 1 < out.regions.size(); ++k) {
            if (std::abs(out.regions[k].outer_km - out.regions[k + 1].inner_km) > 1e-9)
                throw std::invalid_argument(
                    "scenario: interference.regions must partition [0, R] without gaps");
        }
    }
    return out;
}

json canonical(const LoadedScenario& ls) {
    const Scenario& sc = ls.scenario;
    json c;
    c["radio"] = {{"power_mw", sc.radio.power_mw},
                  {"prop_const", sc.radio.prop_const},
                  {"half_pathloss_exp", sc.radio.half_pathloss_exp},
                  {"prb_bandwidth_hz", sc.radio.prb_bandwidth_hz},
                  {"mimo_layers", sc.radio.mimo_layers},
                  {"noise_mw", sc.radio.noise_mw},
                  {"sinr_threshold", sc.radio.sinr_threshold},
                  {"service_rate_bps", sc.radio.service_rate_bps},
                  {"n_max", sc.radio.n_max}};
    c["geometry"] = {{"radius_km", sc.radius_km}, {"lambda", sc.lambda}};
    c["traffic"] = {{"delta", sc.delta}};
    if (sc.tau_bps) c["traffic"]["tau_bps"] = *sc.tau_bps;
    if (sc.interference.has_regions()) {
        json regs = json::array();
        for (const auto& r : sc.interference.regions)
            regs.push_back({{"inner_km", r.inner_km},
                            {"outer_km", r.outer_km},
                            {"margin", r.margin}});
        c["interference"] = {{"regions", regs}};
    } else {
        c["interference"] = {{"i_mw", sc.interference.single_i_mw}};
    }
    c["estimator"] = {{"n_realizations", sc.est.n_realizations},
                      {"n_user_draws", sc.est.n_user_draws},
                      {"seed", sc.est.seed},
                      {"quad_rel_tol", sc.est.quad_rel_tol},
                      {"m_search_cap", sc.est.m_search_cap}};
    json study;
    switch (ls.study.type) {
        case StudyType::kCongestion: study["type"] = "congestion"; break;
        case StudyType::kDimension: study["type"] = "dimension"; break;
        case StudyType::kCompare: study["type"] = "compare"; break;
        case StudyType::kRegions: study["type"] = "regions"; break;
    }
    if (!ls.study.m_grid.empty()) study["m_grid"] = ls.study.m_grid;
    if (!ls.study.tau_grid_bps.empty()) study["tau_grid_bps"] = ls.study.tau_grid_bps;
    if (ls.study.pi_target > 0.0) study["pi_target"] = ls.study.pi_target;
    c["study"] = study;
    return c;
}

std::string header(const LoadedScenario& ls) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "# plpdim %s\n# scenario_hash=%016llx\n# seed=%llu\n",
                  kVersion, static_cast<unsigned long long>(ls.hash),
                  static_cast<unsigned long long>(ls.scenario.est.seed));
    return buf;
}

std::vector<std::string> region_names_or_default(const LoadedScenario& ls) {
    if (!ls.study.region_names.empty()) return ls.study.region_names;
    if (ls.scenario.interference.regions.size() == 3) return {"center", "middle", "edge"};
    std::vector<std::string> names;
    for (std::size_t k = 0; k < ls.scenario.interference.regions.size(); ++k)
        names.push_back("region" + std::to_string(k));
    return names;
}

// Spatial-PPP demand profile under a (possibly region-dependent)
// interference profile: uniform user density u/(pi R^2), area weights.
DemandProfile ppp_profile(const RadioConfig& cfg, const InterferenceProfile& iprof, double u,
                          double radius_km) {
    struct Piece {
        RingPartition rings;
        double lo, hi;
    };
    std::vector<Piece> pieces;
    if (iprof.has_regions()) {
        for (const auto& reg : iprof.regions) {
            const double i_mw = radio::interference_from_margin(reg.margin, cfg.noise_mw);
            pieces.push_back({radio::ring_radii(cfg, i_mw), reg.inner_km,
                              std::min(reg.outer_km, radius_km)});
        }
    } else {
        pieces.push_back({radio::ring_radii(cfg, iprof.single_i_mw), 0.0, radius_km});
    }
    DemandProfile out;
    const double r2 = radius_km * radius_km;
    for (const auto& piece : pieces) {
        const int n_term = piece.rings.n_terminal;
        if (out.mu.size() < static_cast<std::size_t>(n_term))
            out.mu.resize(static_cast<std::size_t>(n_term), 0.0);
        for (int n = 1; n <= n_term; ++n) {
            const double lo =
                std::max(piece.rings.radii_km[static_cast<std::size_t>(n - 1)], piece.lo);
            const double hi =
                (n == n_term)
                    ? piece.hi
                    : std::min(piece.rings.radii_km[static_cast<std::size_t>(n)], piece.hi);
            if (hi <= lo) continue;
            out.mu[static_cast<std::size_t>(n - 1)] += u * (hi * hi - lo * lo) / r2;
        }
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

LoadedScenario parse(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& ex) {
        throw std::invalid_argument(std::string("scenario: JSON parse error: ") + ex.what());
    }
    check_keys(j, "", {"radio", "geometry", "traffic", "interference", "estimator", "study"});

    LoadedScenario ls;
    Scenario& sc = ls.scenario;

    const json& radio = require(j, "", "radio");
    check_keys(radio, "radio",
               {"power_dbm", "prop_const_db", "pathloss_exponent", "prb_bandwidth_hz",
                "mimo_layers", "noise_dbm", "sinr_threshold_db", "n_max"});
    sc.radio.power_mw = radio::dbm_to_mw(num(radio, "radio", "power_dbm"));
    sc.radio.prop_const = radio::db_to_linear(num(radio, "radio", "prop_const_db"));
    sc.radio.half_pathloss_exp = num(radio, "radio", "pathloss_exponent") / 2.0;
    sc.radio.prb_bandwidth_hz = num(radio, "radio", "prb_bandwidth_hz");
    sc.radio.mimo_layers = static_cast<int>(num(radio, "radio", "mimo_layers"));
    sc.radio.noise_mw = radio::dbm_to_mw(num(radio, "radio", "noise_dbm"));
    sc.radio.sinr_threshold = radio::db_to_linear(num(radio, "radio", "sinr_threshold_db"));
    sc.radio.n_max = static_cast<int>(num(radio, "radio", "n_max"));

    const json& geom = require(j, "", "geometry");
    check_keys(geom, "geometry", {"radius_km", "lambda_per_km"});
    sc.radius_km = num(geom, "geometry", "radius_km");
    sc.lambda = num(geom, "geometry", "lambda_per_km");
    if (sc.radius_km <= 0.0)
        throw std::invalid_argument("scenario: geometry.radius_km must be > 0");
    if (sc.lambda < 0.0)
        throw std::invalid_argument("scenario: geometry.lambda_per_km must be >= 0");

    const json& traffic = require(j, "", "traffic");
    check_keys(traffic, "traffic", {"service_rate_bps", "tau_bps", "delta_per_km"});
    sc.radio.service_rate_bps = num(traffic, "traffic", "service_rate_bps");
    sc.radio.validate();
    if (traffic.contains("tau_bps") && traffic.contains("delta_per_km"))
        throw std::invalid_argument(
            "scenario: traffic must give exactly one of 'tau_bps' and 'delta_per_km'");
    if (traffic.contains("tau_bps")) {
        sc.tau_bps = num(traffic, "traffic", "tau_bps");
        sc.delta = Scenario::delta_from_tau(*sc.tau_bps, sc.radio.service_rate_bps, sc.lambda,
                                            sc.radius_km);
    } else if (traffic.contains("delta_per_km")) {
        sc.delta = num(traffic, "traffic", "delta_per_km");
        if (sc.delta < 0.0)
            throw std::invalid_argument("scenario: traffic.delta_per_km must be >= 0");
    }

    sc.interference =
        parse_interference(require(j, "", "interference"), sc.radius_km, sc.radio.noise_mw);

    const json& est = require(j, "", "estimator");
    check_keys(est, "estimator",
               {"n_realizations", "n_user_draws", "seed", "quad_rel_tol", "m_search_cap"});
    sc.est.n_realizations = static_cast<int>(num(est, "estimator", "n_realizations"));
    if (est.contains("n_user_draws"))
        sc.est.n_user_draws = static_cast<int>(num(est, "estimator", "n_user_draws"));
    sc.est.seed = require(est, "estimator", "seed").get<std::uint64_t>();
    if (est.contains("quad_rel_tol")) sc.est.quad_rel_tol = num(est, "estimator", "quad_rel_tol");
    if (est.contains("m_search_cap"))
        sc.est.m_search_cap = static_cast<int>(num(est, "estimator", "m_search_cap"));
    if (sc.est.n_realizations < 1 || sc.est.n_user_draws < 1)
        throw std::invalid_argument("scenario: estimator counts must be >= 1");

    const json& study = require(j, "", "study");
    check_keys(study, "study", {"type", "m_grid", "tau_grid_bps", "pi_target", "region_names"});
    const std::string type = require(study, "study", "type").get<std::string>();
    if (type == "congestion") ls.study.type = StudyType::kCongestion;
    else if (type == "dimension") ls.study.type = StudyType::kDimension;
    else if (type == "compare") ls.study.type = StudyType::kCompare;
    else if (type == "regions") ls.study.type = StudyType::kRegions;
    else throw std::invalid_argument("scenario: unknown study.type '" + type + "'");

    if (ls.study.type == StudyType::kCongestion || ls.study.type == StudyType::kCompare) {
        for (const json& v : require(study, "study", "m_grid"))
            ls.study.m_grid.push_back(v.get<int>());
        if (ls.study.m_grid.empty())
            throw std::invalid_argument("scenario: study.m_grid must be nonempty");
        if (!sc.tau_bps && !traffic.contains("delta_per_km"))
            throw std::invalid_argument(
                "scenario: congestion/compare studies need traffic.tau_bps or delta_per_km");
    } else {
        for (const json& v : require(study, "study", "tau_grid_bps"))
            ls.study.tau_grid_bps.push_back(v.get<double>());
        if (ls.study.tau_grid_bps.empty() ||
            !std::is_sorted(ls.study.tau_grid_bps.begin(), ls.study.tau_grid_bps.end()))
            throw std::invalid_argument("scenario: study.tau_grid_bps must be nonempty and increasing");
        ls.study.pi_target = num(study, "study", "pi_target");
        if (ls.study.pi_target <= 0.0 || ls.study.pi_target >= 1.0)
            throw std::invalid_argument("scenario: study.pi_target must lie in (0,1)");
        if (study.contains("region_names"))
            for (const json& v : study["region_names"])
                ls.study.region_names.push_back(v.get<std::string>());
    }
    if (ls.study.type == StudyType::kRegions && !sc.interference.has_regions())
        throw std::invalid_argument("scenario: a regions study needs interference.regions");

    rehash(ls);
    return ls;
}

LoadedScenario load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("scenario: cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void rehash(LoadedScenario& ls) { ls.hash = fnv1a(canonical(ls).dump()); }

std::string run_congestion(const LoadedScenario& ls) {
    const Scenario& sc = ls.scenario;
    const auto plps = dimensioning::sample_realizations(
        sc.lambda, sc.radius_km, sc.est.n_realizations, sc.est.seed, sc.est.threads);
    const auto units = dimensioning::unit_profiles(plps, sc.radio, sc.interference, 0.0,
                                                   sc.radius_km, sc.est.threads);
    const auto gammas = dimensioning::mc_gamma_samples(sc);

    std::ostringstream out;
    out << header(ls) << "M,pi_analytic,pi_mc,mc_stderr\n";
    for (int m : ls.study.m_grid) {
        const auto analytic = (m <= 0)
                                  ? CongestionEstimate{1.0, 0.0, sc.est.n_realizations}
                                  : dimensioning::conditional_average(
                                        units, sc.delta, m, sc.est.quad_rel_tol, sc.est.threads);
        const auto mc = (m <= 0)
                            ? CongestionEstimate{1.0, 0.0,
                                                 static_cast<std::int64_t>(gammas.size())}
                            : dimensioning::mc_estimate_from_samples(gammas, m);
        out << m << ',' << format_double(analytic.value) << ',' << format_double(mc.value)
            << ',' << format_double(mc.std_error) << '\n';
    }
    return out.str();
}

std::string run_compare(const LoadedScenario& ls) {
    const Scenario& sc = ls.scenario;
    const auto plps = dimensioning::sample_realizations(
        sc.lambda, sc.radius_km, sc.est.n_realizations, sc.est.seed, sc.est.threads);
    const auto units = dimensioning::unit_profiles(plps, sc.radio, sc.interference, 0.0,
                                                   sc.radius_km, sc.est.threads);
    const double u = geometry::mean_users_in_disk(sc.lambda, sc.delta, sc.radius_km);
    const DemandProfile ppp = ppp_profile(sc.radio, sc.interference, u, sc.radius_km);

    std::ostringstream out;
    out << header(ls) << "M,pi_cox,pi_ppp\n";
    for (int m : ls.study.m_grid) {
        const double cox = (m <= 0) ? 1.0
                                    : dimensioning::conditional_average(units, sc.delta, m,
                                                                        sc.est.quad_rel_tol,
                                                                        sc.est.threads)
                                          .value;
        const double ppp_pi =
            (m <= 0) ? 1.0 : congestion::congestion_conditional(ppp, m, sc.est.quad_rel_tol);
        out << m << ',' << format_double(cox) << ',' << format_double(ppp_pi) << '\n';
    }
    return out.str();
}

std::string run_dimension(const LoadedScenario& ls) {
    const auto rows =
        dimensioning::sweep_traffic(ls.scenario, ls.study.pi_target, ls.study.tau_grid_bps);
    std::ostringstream out;
    out << header(ls) << "tau_bps,pi_target,m_star,achieved_pi,ci_halfwidth,status\n";
    for (const auto& row : rows) {
        out << format_double(row.tau_bps) << ',' << format_double(ls.study.pi_target) << ',';
        if (row.error.empty()) {
            out << row.result.m_star << ',' << format_double(row.result.achieved_pi) << ','
                << format_double(row.result.ci_halfwidth) << ",ok\n";
        } else {
            out << ",,," << "error:" << row.error << '\n';
        }
    }
    return out.str();
}

std::string run_regions(const LoadedScenario& ls) {
    const Scenario& sc = ls.scenario;
    const auto names = region_names_or_default(ls);
    const auto sweeps =
        dimensioning::region_study(sc, ls.study.pi_target, ls.study.tau_grid_bps, names);

    // whole-cell comparison: as-configured interference vs noise-limited
    Scenario noise_free = sc;
    noise_free.interference = InterferenceProfile{};
    const auto cell_with =
        dimensioning::sweep_traffic(sc, ls.study.pi_target, ls.study.tau_grid_bps);
    const auto cell_without =
        dimensioning::sweep_traffic(noise_free, ls.study.pi_target, ls.study.tau_grid_bps);

    std::ostringstream out;
    out << header(ls)
        << "region,inner_km,outer_km,im_db,tau_bps,pi_target,m_star,achieved_pi,ci_halfwidth,"
           "status\n";
    auto emit = [&](const std::string& name, double inner, double outer, double im_db,
                    const SweepRow& row) {
        out << name << ',' << format_double(inner) << ',' << format_double(outer) << ','
            << format_double(im_db) << ',' << format_double(row.tau_bps) << ','
            << format_double(ls.study.pi_target) << ',';
        if (row.error.empty()) {
            out << row.result.m_star << ',' << format_double(row.result.achieved_pi) << ','
                << format_double(row.result.ci_halfwidth) << ",ok\n";
        } else {
            out << ",,," << "error:" << row.error << '\n';
        }
    };
    for (const auto& sweep : sweeps)
        for (const auto& row : sweep.rows)
            emit(sweep.name, sweep.region.inner_km, sweep.region.outer_km,
                 radio::linear_to_db(sweep.region.margin), row);
    for (const auto& row : cell_with) emit("cell_interference", 0.0, sc.radius_km, -1.0, row);
    for (const auto& row : cell_without) emit("cell_noise_limited", 0.0, sc.radius_km, 0.0, row);
    return out.str();
}

std::string run_study(const std::string& command, const LoadedScenario& ls) {
    if (command == "congestion") return run_congestion(ls);
    if (command == "dimension") return run_dimension(ls);
    if (command == "compare") return run_compare(ls);
    if (command == "regions") return run_regions(ls);
    throw std::invalid_argument("unknown study command '" + command + "'");
}

}  // namespace plpdim::scenario
