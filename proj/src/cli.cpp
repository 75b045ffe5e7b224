#include "isac_mi/cli.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include "isac_mi/curves.hpp"
#include "isac_mi/downlink.hpp"
#include "isac_mi/errors.hpp"
#include "isac_mi/scenario_io.hpp"
#include "isac_mi/uplink.hpp"

#ifndef ISAC_MI_VERSION
#define ISAC_MI_VERSION "0.0.0"
#endif

namespace isac_mi::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Body writes its files and returns their names (relative to out_dir).
using Body = std::function<std::vector<std::string>(const ScenarioConfig&, const fs::path&)>;

int run(const std::string& command, const fs::path& config, const fs::path& out_dir, std::ostream& out,
        std::ostream& err, const Body& body) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioConfig cfg;
  try {
    cfg = load_scenario(config);
  } catch (const IsacError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  std::vector<std::string> outputs;
  try {
    fs::create_directories(out_dir);
    outputs = body(cfg, out_dir);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical failure in " << command << " (" << to_string(cfg.kind) << "): " << e.what() << '\n';
    return kExitNumerical;
  }
  RunManifest m;
  m.command = command;
  m.scenario_json = scenario_to_json(cfg).dump();
  m.seed = cfg.seed;
  m.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  m.outputs = outputs;
  try {
    write_file_atomic(out_dir / "run_manifest.json", manifest_json(m));
  } catch (const std::exception& e) {
    err << "cannot write manifest: " << e.what() << '\n';
    return kExitNumerical;
  }
  for (const auto& o : outputs) out << (out_dir / o).string() << '\n';
  return kExitOk;
}

RegionSweep sweep_for(const ScenarioConfig& cfg, RegionMode mode) {
  if (cfg.kind == ScenarioKind::Uplink) {
    return mode == RegionMode::Isac ? uplink_isac_region_sweep(cfg) : uplink_fdsac_region_sweep(cfg);
  }
  return downlink_region_sweep(cfg, mode);
}

std::string region_csv(const RegionSweep& sweep) {
  std::ostringstream os;
  os << kRegionHeader << '\n';
  for (const auto& p : sweep.points) {
    os << num(p.mean.cr) << ',' << num(p.mean.sr) << ',' << p.label << ',' << num(p.std_error.cr) << ','
       << num(p.std_error.sr) << '\n';
  }
  return os.str();
}

json slope_json(const SlopeEstimate& s) {
  return {{"numeric", s.numeric}, {"analytic", s.analytic}, {"abs_error", s.abs_error}};
}

}  // namespace

const char* version() { return ISAC_MI_VERSION; }

std::string manifest_json(const RunManifest& m) {
  json doc{{"command", m.command},
           {"tool_version", version()},
           {"seed", m.seed},
           {"duration_s", m.duration_s},
           {"outputs", m.outputs},
           {"scenario", json::parse(m.scenario_json)}};
  return doc.dump(2) + "\n";
}

int cmd_region(const fs::path& config, const std::string& mode, const fs::path& out_dir, std::ostream& out,
               std::ostream& err) {
  if (mode != "isac" && mode != "fdsac" && mode != "both") {
    err << "config error: --mode must be isac, fdsac or both\n";
    return kExitConfig;
  }
  return run("region", config, out_dir, out, err, [&](const ScenarioConfig& cfg, const fs::path& dir) {
    std::vector<std::string> files;
    for (const auto& [name, m] : {std::pair{"isac", RegionMode::Isac}, std::pair{"fdsac", RegionMode::Fdsac}}) {
      if (mode != "both" && mode != name) continue;
      const std::string file = "region_" + std::string(to_string(cfg.kind)) + "_" + name + ".csv";
      write_file_atomic(dir / file, region_csv(sweep_for(cfg, m)));
      files.push_back(file);
    }
    return files;
  });
}

int cmd_curves(const fs::path& config, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  return run("curves", config, out_dir, out, err, [](const ScenarioConfig& cfg, const fs::path& dir) {
    if (cfg.snr_sweep.empty()) throw ConfigError("snr_sweep is empty");
    std::ostringstream os;
    os << kCurvesHeader << '\n';
    for (const auto& row : rate_curves(cfg, cfg.snr_sweep)) {
      os << num(linear_to_db(row.power / cfg.power.sigma2_c)) << ',' << num(row.isac.cr) << ','
         << num(row.isac.sr) << ',' << num(row.fdsac.cr) << ',' << num(row.fdsac.sr) << '\n';
    }
    const std::string file = "curves_" + std::string(to_string(cfg.kind)) + ".csv";
    write_file_atomic(dir / file, os.str());
    return std::vector<std::string>{file};
  });
}

int cmd_slopes(const fs::path& config, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  return run("slopes", config, out_dir, out, err, [](const ScenarioConfig& cfg, const fs::path& dir) {
    const SlopeReport r = slope_report(cfg);
    const json doc{
        {"scenario", to_string(cfg.kind)},
        {"power_lo", r.power_lo},
        {"power_hi", r.power_hi},
        {"isac", {{"cr", slope_json(r.isac.cr_slope)}, {"sr", slope_json(r.isac.sr_slope)}}},
        {"fdsac", {{"cr", slope_json(r.fdsac.cr_slope)}, {"sr", slope_json(r.fdsac.sr_slope)}}},
    };
    const std::string file = "slopes_" + std::string(to_string(cfg.kind)) + ".json";
    write_file_atomic(dir / file, doc.dump(2) + "\n");
    return std::vector<std::string>{file};
  });
}

int cmd_validate(const ValidationOptions& options, std::ostream& out, std::ostream& err) {
  const auto results = run_validation(options, out);
  for (const auto& r : results) {
    if (!r.passed) {
      err << "validation failed: " << r.name << '\n';
      return kExitCheckFailed;
    }
  }
  return kExitOk;
}

}  // namespace isac_mi::cli
