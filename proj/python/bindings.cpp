#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plpdim/congestion.hpp"
#include "plpdim/dimensioning.hpp"
#include "plpdim/geometry.hpp"
#include "plpdim/radio.hpp"
#include "plpdim/rng.hpp"
#include "plpdim/scenario.hpp"

namespace py = pybind11;
using namespace plpdim;

PYBIND11_MODULE(_plpdim, m) {
    m.doc() = "PRB dimensioning for cells whose users live on roads modeled by a "
              "Poisson line process";

    py::class_<Line>(m, "Line")
        .def(py::init<double, double>(), py::arg("r"), py::arg("theta"))
        .def_readwrite("r", &Line::r)
        .def_readwrite("theta", &Line::theta);

    py::class_<PlpRealization>(m, "PlpRealization")
        .def_readonly("lines", &PlpRealization::lines)
        .def_readonly("radius_km", &PlpRealization::radius_km)
        .def_readonly("lambda_", &PlpRealization::lambda)
        .def_readonly("seed_tag", &PlpRealization::seed_tag);

    py::class_<UserPositions>(m, "UserPositions")
        .def_readonly("distances_km", &UserPositions::distances_km);

    py::class_<RadioConfig>(m, "RadioConfig")
        .def(py::init([](double power_mw, double prop_const, double half_pathloss_exp,
                         double prb_bandwidth_hz, int mimo_layers, double noise_mw,
                         double sinr_threshold, double service_rate_bps, int n_max) {
                 RadioConfig cfg{power_mw, prop_const, half_pathloss_exp, prb_bandwidth_hz,
                                 mimo_layers, noise_mw, sinr_threshold, service_rate_bps,
                                 n_max};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("power_mw"), py::arg("prop_const"), py::arg("half_pathloss_exp"),
             py::arg("prb_bandwidth_hz"), py::arg("mimo_layers"), py::arg("noise_mw"),
             py::arg("sinr_threshold"), py::arg("service_rate_bps"), py::arg("n_max"))
        .def_readonly("power_mw", &RadioConfig::power_mw)
        .def_readonly("noise_mw", &RadioConfig::noise_mw);

    py::class_<RingPartition>(m, "RingPartition")
        .def_readonly("radii_km", &RingPartition::radii_km)
        .def_readonly("n_terminal", &RingPartition::n_terminal)
        .def("ring_index", &RingPartition::ring_index);

    py::class_<DemandProfile>(m, "DemandProfile")
        .def(py::init([](std::vector<double> mu) {
                 DemandProfile p;
                 p.mu = std::move(mu);
                 return p;
             }),
             py::arg("mu"))
        .def_readonly("mu", &DemandProfile::mu)
        .def("total", &DemandProfile::total)
        .def("mean_gamma", &DemandProfile::mean_gamma);

    py::class_<CongestionEstimate>(m, "CongestionEstimate")
        .def_readonly("value", &CongestionEstimate::value)
        .def_readonly("std_error", &CongestionEstimate::std_error)
        .def_readonly("n_samples", &CongestionEstimate::n_samples);

    // sampling (seeded, reproducible)
    m.def(
        "sample_plp",
        [](double lambda, double radius_km, std::uint64_t seed) {
            auto eng = rng::engine(seed);
            return geometry::sample_plp(lambda, radius_km, eng, seed);
        },
        py::arg("lambda_"), py::arg("radius_km"), py::arg("seed"));
    m.def(
        "sample_users_on_realization",
        [](const PlpRealization& plp, double delta, std::uint64_t seed) {
            auto eng = rng::engine(seed);
            return geometry::sample_users_on_realization(plp, delta, eng);
        },
        py::arg("plp"), py::arg("delta"), py::arg("seed"));
    m.def(
        "sample_spatial_ppp",
        [](double intensity, double radius_km, std::uint64_t seed) {
            auto eng = rng::engine(seed);
            return geometry::sample_spatial_ppp(intensity, radius_km, eng);
        },
        py::arg("intensity"), py::arg("radius_km"), py::arg("seed"));

    m.def("chord_half_length", &geometry::chord_half_length, py::arg("r"), py::arg("d"));
    m.def("mean_users_in_disk", &geometry::mean_users_in_disk, py::arg("lambda_"),
          py::arg("delta"), py::arg("radius_km"));

    // link budget
    m.def("sinr", &radio::sinr, py::arg("x_km"), py::arg("cfg"), py::arg("i_mw"));
    m.def("throughput", &radio::throughput, py::arg("x_km"), py::arg("cfg"), py::arg("i_mw"));
    m.def("prb_demand", &radio::prb_demand, py::arg("x_km"), py::arg("cfg"), py::arg("i_mw"));
    m.def("terminal_n", &radio::terminal_n, py::arg("cfg"));
    m.def("ring_radii", &radio::ring_radii, py::arg("cfg"), py::arg("i_mw"));
    m.def("interference_from_margin", &radio::interference_from_margin, py::arg("im_linear"),
          py::arg("noise_mw"));
    m.def("db_to_linear", &radio::db_to_linear);
    m.def("dbm_to_mw", &radio::dbm_to_mw);

    // congestion
    m.def("alpha", &congestion::alpha, py::arg("plp"), py::arg("d"), py::arg("delta"));
    m.def("demand_profile_cox", &congestion::demand_profile_cox, py::arg("plp"),
          py::arg("rings"), py::arg("delta"));
    m.def("demand_profile_ppp", &congestion::demand_profile_ppp, py::arg("u"), py::arg("rings"),
          py::arg("radius_km"));
    m.def("congestion_conditional", &congestion::congestion_conditional, py::arg("profile"),
          py::arg("m"), py::arg("rel_tol") = 1e-9);
    m.def("brute_force_ccdf", &congestion::brute_force_ccdf, py::arg("profile"), py::arg("m"));
    m.def("pgf_eval", &congestion::pgf_eval, py::arg("profile"), py::arg("z"));

    // scenario-level estimators and the dimensioning solver
    py::class_<EstimatorSettings>(m, "EstimatorSettings")
        .def(py::init<>())
        .def_readwrite("n_realizations", &EstimatorSettings::n_realizations)
        .def_readwrite("n_user_draws", &EstimatorSettings::n_user_draws)
        .def_readwrite("seed", &EstimatorSettings::seed)
        .def_readwrite("quad_rel_tol", &EstimatorSettings::quad_rel_tol)
        .def_readwrite("threads", &EstimatorSettings::threads)
        .def_readwrite("m_search_cap", &EstimatorSettings::m_search_cap);

    py::class_<DimensioningResult>(m, "DimensioningResult")
        .def_readonly("m_star", &DimensioningResult::m_star)
        .def_readonly("achieved_pi", &DimensioningResult::achieved_pi)
        .def_readonly("pi_target", &DimensioningResult::pi_target)
        .def_readonly("ci_halfwidth", &DimensioningResult::ci_halfwidth);

    py::class_<LoadedScenario>(m, "LoadedScenario")
        .def_readonly("hash", &LoadedScenario::hash);

    m.def("load_scenario", &scenario::load_file, py::arg("path"));
    m.def("parse_scenario", &scenario::parse, py::arg("json_text"));
    m.def(
        "run_study",
        [](const std::string& command, LoadedScenario ls, int threads) {
            ls.scenario.est.threads = threads;
            scenario::rehash(ls);
            return scenario::run_study(command, ls);
        },
        py::arg("command"), py::arg("scenario"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "congestion_avg",
        [](const LoadedScenario& ls, int m) {
            return dimensioning::congestion_avg(ls.scenario, m);
        },
        py::arg("scenario"), py::arg("m"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "congestion_mc",
        [](const LoadedScenario& ls, int m) {
            return dimensioning::congestion_mc(ls.scenario, m);
        },
        py::arg("scenario"), py::arg("m"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "dimension",
        [](const LoadedScenario& ls, double pi_target) {
            return dimensioning::dimension(ls.scenario, pi_target);
        },
        py::arg("scenario"), py::arg("pi_target"), py::call_guard<py::gil_scoped_release>());
}
