#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <variant>

#include "isac_mi/alloc.hpp"
#include "isac_mi/curves.hpp"
#include "isac_mi/downlink.hpp"
#include "isac_mi/errors.hpp"
#include "isac_mi/mi_core.hpp"
#include "isac_mi/region.hpp"
#include "isac_mi/scenario_io.hpp"
#include "isac_mi/uplink.hpp"
#include "isac_mi/validate.hpp"

namespace py = pybind11;
using namespace isac_mi;

namespace {

// A float is white noise of that power; a matrix is a colored covariance.
using NoiseArg = std::variant<double, CMatrix>;

NoiseModel to_noise(const NoiseArg& n) {
  if (const double* p = std::get_if<double>(&n)) return NoiseModel::white(*p);
  return NoiseModel::colored(std::get<CMatrix>(n));
}

ScenarioConfig to_scenario(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return scenario_from_json(doc);
}

py::tuple point(const RatePoint& p) { return py::make_tuple(p.cr, p.sr); }

py::list frontier(const RateRegion& r) {
  py::list out;
  for (const auto& p : r.frontier) out.append(point(p));
  return out;
}

RateRegion to_region(const std::vector<std::pair<double, double>>& pts) {
  std::vector<RatePoint> v;
  for (const auto& [cr, sr] : pts) v.push_back({cr, sr});
  return pareto_frontier(v);
}

py::dict sweep_dict(const RegionSweep& s) {
  py::list rows;
  for (const auto& p : s.points) {
    rows.append(py::dict(py::arg("cr") = p.mean.cr, py::arg("sr") = p.mean.sr, py::arg("label") = p.label,
                         py::arg("stderr_cr") = p.std_error.cr, py::arg("stderr_sr") = p.std_error.sr));
  }
  return py::dict(py::arg("frontier") = frontier(s.region), py::arg("points") = rows);
}

py::dict slope_dict(const SlopeEstimate& s) {
  return py::dict(py::arg("numeric") = s.numeric, py::arg("analytic") = s.analytic,
                  py::arg("abs_error") = s.abs_error);
}

}  // namespace

PYBIND11_MODULE(_isac_mi, m) {
  m.doc() = "Mutual-information evaluation of ISAC and FDSAC systems";

  auto base = py::register_exception<IsacError>(m, "IsacError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DegenerateNoiseError>(m, "DegenerateNoiseError", base.ptr());
  py::register_exception<InfeasibleFrameError>(m, "InfeasibleFrameError", base.ptr());
  py::register_exception<UnreliableRegimeError>(m, "UnreliableRegimeError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  m.def(
      "water_fill",
      [](const std::vector<double>& gains, double budget, double noise) {
        const auto r = water_fill(gains, budget, noise);
        return py::make_tuple(r.allocations, r.water_level);
      },
      py::arg("gains"), py::arg("budget"), py::arg("noise"),
      "Returns (allocations, water_level).");

  m.def(
      "comm_mi",
      [](const CMatrix& h, const std::vector<double>& p, const NoiseArg& n) { return comm_mi(h, p, to_noise(n)); },
      py::arg("h"), py::arg("powers"), py::arg("noise"));

  m.def(
      "mmse_sic_user_rates",
      [](const CMatrix& h, const std::vector<double>& p, const NoiseArg& n, const std::vector<int>& order) {
        return mmse_sic_user_rates(h, p, to_noise(n), order);
      },
      py::arg("h"), py::arg("powers"), py::arg("noise"), py::arg("order"));

  m.def(
      "sensing_mi",
      [](const CMatrix& r, const CMatrix& q, int l, int n, const NoiseArg& noise) {
        return sensing_mi(r, q, l, n, to_noise(noise));
      },
      py::arg("r_corr"), py::arg("q_cov"), py::arg("l_frame"), py::arg("n_rx"), py::arg("noise"));

  m.def("sr_optimal_covariance", &sr_optimal_covariance, py::arg("r_corr"), py::arg("budget"), py::arg("sigma2_s"),
        py::arg("l_frame"), py::arg("n_rx"));
  m.def("synthesize_waveform", &synthesize_waveform, py::arg("q_cov"), py::arg("l_frame"));

  m.def(
      "sum_power_iwf",
      [](const CMatrix& h, double budget, double sigma2_c) {
        const auto s = sum_power_iwf(h, budget, sigma2_c);
        return py::dict(py::arg("user_powers") = s.user_powers, py::arg("sum_rate") = s.sum_rate,
                        py::arg("bc_covariances") = s.bc_covariances, py::arg("encoding_order") = s.encoding_order,
                        py::arg("iterations") = s.iterations);
      },
      py::arg("channels"), py::arg("budget"), py::arg("sigma2_c"));

  m.def(
      "mac_to_bc_transform",
      [](const CMatrix& h, const std::vector<double>& p, double sigma2_c) {
        const auto b = mac_to_bc_transform(h, p, sigma2_c);
        return py::make_tuple(b.covariances, b.encoding_order);
      },
      py::arg("channels"), py::arg("mac_powers"), py::arg("sigma2_c"));

  m.def(
      "dpc_rates",
      [](const CMatrix& h, const std::vector<CMatrix>& covs, const std::vector<int>& order, double s2) {
        return dpc_rates(h, covs, order, s2);
      },
      py::arg("channels"), py::arg("bc_covariances"), py::arg("order"), py::arg("sigma2_c"));

  m.def(
      "pareto_frontier",
      [](const std::vector<std::pair<double, double>>& pts) { return frontier(to_region(pts)); }, py::arg("points"));
  m.def(
      "convexify",
      [](const std::vector<std::pair<double, double>>& pts) { return frontier(convexify(to_region(pts))); },
      py::arg("points"));
  m.def(
      "contains",
      [](const std::vector<std::pair<double, double>>& outer, const std::vector<std::pair<double, double>>& inner,
         double tol) { return contains(to_region(outer), to_region(inner), tol); },
      py::arg("outer"), py::arg("inner"), py::arg("tol") = 1e-9);

  m.def(
      "default_scenario",
      [](const std::string& kind) { return scenario_to_json(default_scenario(parse_scenario_kind(kind))).dump(); },
      py::arg("kind"), "Default scenario of a kind, as JSON text.");
  m.def(
      "normalize_scenario", [](const std::string& text) { return scenario_to_json(to_scenario(text)).dump(); },
      py::arg("scenario_json"), "Validates a scenario and fills in defaults.");

  m.def(
      "region",
      [](const std::string& text, const std::string& mode) {
        const ScenarioConfig cfg = to_scenario(text);
        RegionMode rm;
        if (mode == "isac") {
          rm = RegionMode::Isac;
        } else if (mode == "fdsac") {
          rm = RegionMode::Fdsac;
        } else {
          throw ConfigError("mode must be 'isac' or 'fdsac'");
        }
        py::gil_scoped_release release;
        RegionSweep s = cfg.kind == ScenarioKind::Uplink
                            ? (rm == RegionMode::Isac ? uplink_isac_region_sweep(cfg) : uplink_fdsac_region_sweep(cfg))
                            : downlink_region_sweep(cfg, rm);
        py::gil_scoped_acquire acquire;
        return sweep_dict(s);
      },
      py::arg("scenario_json"), py::arg("mode"));

  m.def(
      "rate_curves",
      [](const std::string& text, std::vector<double> powers) {
        const ScenarioConfig cfg = to_scenario(text);
        std::vector<CurveRow> rows;
        {
          py::gil_scoped_release release;
          rows = rate_curves(cfg, powers);
        }
        py::list out;
        for (const auto& r : rows) out.append(py::make_tuple(r.power, point(r.isac), point(r.fdsac)));
        return out;
      },
      py::arg("scenario_json"), py::arg("powers"), "Rows of (power, (cr, sr) isac, (cr, sr) fdsac).");

  m.def(
      "slopes",
      [](const std::string& text) {
        const ScenarioConfig cfg = to_scenario(text);
        SlopeReport r;
        {
          py::gil_scoped_release release;
          r = slope_report(cfg);
        }
        return py::dict(
            py::arg("isac") = py::dict(py::arg("cr") = slope_dict(r.isac.cr_slope),
                                       py::arg("sr") = slope_dict(r.isac.sr_slope)),
            py::arg("fdsac") = py::dict(py::arg("cr") = slope_dict(r.fdsac.cr_slope),
                                        py::arg("sr") = slope_dict(r.fdsac.sr_slope)));
      },
      py::arg("scenario_json"));

  m.def(
      "validate",
      [](bool inject_water_fill_sign_error) {
        ValidationOptions opts;
        opts.inject_water_fill_sign_error = inject_water_fill_sign_error;
        std::ostringstream sink;
        py::list out;
        for (const auto& r : run_validation(opts, sink)) out.append(py::make_tuple(r.name, r.passed, r.detail));
        return out;
      },
      py::arg("inject_water_fill_sign_error") = false, "Runs the oracle suite; rows of (name, passed, detail).");
}
