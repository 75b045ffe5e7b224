#include "isac_mi/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace isac_mi {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

const json& object_at(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_object()) throw ConfigError(std::string("field '") + key + "' must be an object");
  return v;
}

}  // namespace

ScenarioConfig scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) throw ConfigError("missing string field 'kind'");
  reject_unknown(doc,
                 {"kind", "dims", "power", "target", "rho_grid", "alpha_grid", "kappa_grid", "mc_trials", "seed",
                  "snr_sweep", "curve_rho", "curve_alpha", "curve_kappa"},
                 "scenario");

  ScenarioConfig cfg = default_scenario(parse_scenario_kind(doc.at("kind").get<std::string>()));

  if (doc.contains("dims")) {
    const json& d = object_at(doc, "dims");
    reject_unknown(d, {"m_tx", "n_rx", "k_users", "l_frame"}, "dims");
    read(d, "m_tx", cfg.dims.m_tx);
    read(d, "n_rx", cfg.dims.n_rx);
    read(d, "k_users", cfg.dims.k_users);
    read(d, "l_frame", cfg.dims.l_frame);
  }
  if (doc.contains("power")) {
    const json& p = object_at(doc, "power");
    reject_unknown(p, {"p_total", "sigma2_c", "sigma2_s"}, "power");
    read(p, "p_total", cfg.power.p_total);
    read(p, "sigma2_c", cfg.power.sigma2_c);
    read(p, "sigma2_s", cfg.power.sigma2_s);
  }
  if (doc.contains("target")) {
    const json& t = object_at(doc, "target");
    reject_unknown(t, {"corr_coeff"}, "target");
    read(t, "corr_coeff", cfg.target_corr_coeff);
  }
  read(doc, "rho_grid", cfg.rho_grid);
  read(doc, "alpha_grid", cfg.alpha_grid);
  read(doc, "kappa_grid", cfg.kappa_grid);
  read(doc, "mc_trials", cfg.mc_trials);
  read(doc, "seed", cfg.seed);
  read(doc, "curve_rho", cfg.curve_rho);
  read(doc, "curve_alpha", cfg.curve_alpha);
  read(doc, "curve_kappa", cfg.curve_kappa);
  if (doc.contains("snr_sweep")) {
    std::vector<double> db;
    read(doc, "snr_sweep", db);
    cfg.snr_sweep.clear();
    for (double v : db) {
      if (!std::isfinite(v)) throw ConfigError("snr_sweep: non-finite entry");
      cfg.snr_sweep.push_back(cfg.power.sigma2_c * db_to_linear(v));
    }
  } else {
    // Defaults are stored relative to a unit noise floor.
    for (double& p : cfg.snr_sweep) p *= cfg.power.sigma2_c;
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return scenario_from_json(doc);
}

json scenario_to_json(const ScenarioConfig& cfg) {
  json sweep = json::array();
  for (double p : cfg.snr_sweep) sweep.push_back(linear_to_db(p / cfg.power.sigma2_c));
  return json{
      {"kind", std::string(to_string(cfg.kind))},
      {"dims", {{"m_tx", cfg.dims.m_tx}, {"n_rx", cfg.dims.n_rx}, {"k_users", cfg.dims.k_users},
                {"l_frame", cfg.dims.l_frame}}},
      {"power", {{"p_total", cfg.power.p_total}, {"sigma2_c", cfg.power.sigma2_c},
                 {"sigma2_s", cfg.power.sigma2_s}}},
      {"target", {{"corr_coeff", cfg.target_corr_coeff}}},
      {"rho_grid", cfg.rho_grid},
      {"alpha_grid", cfg.alpha_grid},
      {"kappa_grid", cfg.kappa_grid},
      {"mc_trials", cfg.mc_trials},
      {"seed", cfg.seed},
      {"snr_sweep", sweep},
      {"curve_rho", cfg.curve_rho},
      {"curve_alpha", cfg.curve_alpha},
      {"curve_kappa", cfg.curve_kappa},
  };
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IsacError("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw IsacError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace isac_mi
