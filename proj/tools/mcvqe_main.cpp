// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: energies, analytical gradients, layered
// finite-difference validation, and adiabatic excited-state dynamics for the
// exciton-model MC-VQE stack.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcvqe/dynamics.hpp"
#include "mcvqe/errors.hpp"
#include "mcvqe/oracle.hpp"
#include "mcvqe/parallel.hpp"
#include "mcvqe/system.hpp"
#include "mcvqe/validate.hpp"

using json = nlohmann::json;
using namespace mcvqe;

namespace {

struct CliOptions {
  std::string synthetic_file, system_file, config_file, out_dir;
  std::vector<std::string> overrides;  // --set key=value
  // flag presence is tracked by CLI11 counts; values land in the config json
  int ntheta = 2;
  std::string entangler = "truncated";
  int layers = 1;
  std::string response = "yy";
  std::string method = "mcvqe";
  int state = 1;
  int threads = 0;
  std::uint64_t seed = 12345;
  double gtol = 1e-10;
  // per-command
  std::string layer = "pauli";
  std::string methods_list = "fci,cis,yy,yn,ny,nn";
  double step = 0.0;
  int steps = 300;
  double dt = 20.0;
  double temperature = 300.0;
  bool oracles = false;
  bool dump_densities = false;
};

json default_config() {
  return json{{"ntheta", 2},        {"entangler", "truncated"},
              {"layers", 1},        {"response", "yy"},
              {"method", "mcvqe"},  {"state", 1},
              {"threads", 0},       {"seed", 12345},
              {"gtol", 1e-10},      {"max_iter", 2000}};
}

json parse_override_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    return json(text);  // bare strings need no quotes
  }
}

// defaults < config file < --set overrides < explicit flags
json resolve_config(const CliOptions& opt, const CLI::App* cmd) {
  json cfg = default_config();
  if (!opt.config_file.empty()) {
    std::ifstream in(opt.config_file);
    if (!in) throw ValidationError("cannot open config file: " + opt.config_file);
    json file_cfg;
    try {
      file_cfg = json::parse(in);
    } catch (const json::exception& e) {
      throw ValidationError("config parse error: " + std::string(e.what()));
    }
    cfg.update(file_cfg);
  }
  for (const std::string& kv : opt.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ValidationError("--set expects key=value, got: " + kv);
    cfg[kv.substr(0, eq)] = parse_override_value(kv.substr(eq + 1));
  }
  auto flag = [&](const char* name, const json& value) {
    if (cmd->count(name)) cfg[std::string(name).substr(2)] = value;
  };
  flag("--ntheta", opt.ntheta);
  flag("--entangler", opt.entangler);
  flag("--layers", opt.layers);
  flag("--response", opt.response);
  flag("--method", opt.method);
  flag("--state", opt.state);
  flag("--threads", opt.threads);
  flag("--seed", opt.seed);
  flag("--gtol", opt.gtol);
  return cfg;
}

MethodSpec spec_from_config(const json& cfg, const std::string& method,
                            const std::string& response) {
  MethodSpec spec;
  if (method == "fci")
    spec.method = Method::Fci;
  else if (method == "cis")
    spec.method = Method::Cis;
  else if (method == "mcvqe")
    spec.method = Method::McVqe;
  else
    throw ValidationError("unknown method: " + method);
  if (response == "yy")
    spec.toggles = {true, true};
  else if (response == "yn")
    spec.toggles = {true, false};
  else if (response == "ny")
    spec.toggles = {false, true};
  else if (response == "nn")
    spec.toggles = {false, false};
  else
    throw ValidationError("unknown response toggles: " + response);
  const std::string entangler = cfg.at("entangler").get<std::string>();
  if (entangler == "truncated")
    spec.layout.kind = EntanglerLayout::Kind::Truncated;
  else if (entangler == "so4")
    spec.layout.kind = EntanglerLayout::Kind::So4Chain;
  else if (entangler == "identity")
    spec.layout.kind = EntanglerLayout::Kind::Identity;
  else
    throw ValidationError("unknown entangler layout: " + entangler);
  spec.layout.layers = cfg.at("layers").get<int>();
  spec.options.num_states = cfg.at("ntheta").get<int>();
  spec.options.gtol = cfg.at("gtol").get<double>();
  spec.options.max_iter = cfg.at("max_iter").get<int>();
  return spec;
}

System load_system(const CliOptions& opt) {
  if (!opt.synthetic_file.empty() && !opt.system_file.empty())
    throw ValidationError("--system and --synthetic are mutually exclusive");
  if (!opt.synthetic_file.empty()) return load_synthetic_file(opt.synthetic_file);
  if (!opt.system_file.empty())
    return system_from_tabulated(load_tabulated(opt.system_file));
  throw ValidationError("one of --system or --synthetic is required");
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

json densities_to_json(const PauliCoeffs& c) {
  json out;
  out["e"] = c.e;
  out["x"] = vector_to_json(c.x);
  out["z"] = vector_to_json(c.z);
  out["xx"] = vector_to_json(c.xx);
  out["xz"] = vector_to_json(c.xz);
  out["zx"] = vector_to_json(c.zx);
  out["zz"] = vector_to_json(c.zz);
  return out;
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& payload) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << payload;
}

void emit_report(const json& report, const CliOptions& opt,
                 const std::string& filename) {
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  write_file(opt.out_dir, filename, text);
}

int cmd_energy(const CliOptions& opt, const json& cfg) {
  const System sys = load_system(opt);
  const MethodSpec spec =
      spec_from_config(cfg, cfg.at("method").get<std::string>(),
                       cfg.at("response").get<std::string>());
  json report;
  report["config"] = cfg;
  report["seed"] = cfg.at("seed").get<std::uint64_t>();

  const DimerCouplings couplings = build_couplings(sys.props, sys.pairs);
  const PauliCoeffs h = build_pauli(sys.props, couplings, sys.pairs);
  const CisStates cis = solve_cis(build_cis(h, sys.pairs));
  report["cis_energies"] = vector_to_json(cis.energies);

  if (spec.method == Method::McVqe) {
    McVqe engine(h, sys.pairs, cis, spec.layout, spec.options);
    const McVqeSolution sol = engine.solve();
    report["energies"] = vector_to_json(sol.energies);
    report["subspace_hamiltonian"] = matrix_to_json(sol.subspace_h);
    report["sa_vqe"] = {{"iterations", sol.iterations},
                        {"grad_norm", sol.grad_norm},
                        {"parameters", vector_to_json(sol.theta)}};
  } else {
    report["energies"] = vector_to_json(state_energies(h, sys.pairs, spec));
  }
  if (opt.oracles) {
    const DenseSpectrum fci = fci_solve(h, sys.pairs);
    report["fci_energies"] = vector_to_json(fci.energies.head(
        std::min<Eigen::Index>(spec.options.num_states, fci.energies.size())));
    report["cis_oracle_energies"] =
        vector_to_json(cis.energies.head(spec.options.num_states));
  }
  emit_report(report, opt, "energy.json");
  return 0;
}

int cmd_gradient(const CliOptions& opt, const json& cfg) {
  const System sys = load_system(opt);
  const MethodSpec spec =
      spec_from_config(cfg, cfg.at("method").get<std::string>(),
                       cfg.at("response").get<std::string>());
  json report;
  report["config"] = cfg;
  report["seed"] = cfg.at("seed").get<std::uint64_t>();
  report["method"] = method_label(spec);

  std::string csv = "state,atom,gx,gy,gz\n";
  char buf[128];
  json states = json::array();
  Eigen::VectorXd warm;
  bool have_warm = false;
  for (int state = 0; state < spec.options.num_states; ++state) {
    const GradientResult res =
        compute_gradient(sys, spec, state, have_warm ? &warm : nullptr);
    if (spec.method == Method::McVqe) {
      warm = res.theta;
      have_warm = true;
    }
    json js;
    js["state"] = state;
    js["energy"] = res.energies[state];
    json grad = json::array();
    for (std::size_t z = 0; z < res.gradient.size(); ++z) {
      const Eigen::Vector3d& g = res.gradient[z];
      grad.push_back({g[0], g[1], g[2]});
      std::snprintf(buf, sizeof(buf), "%d,%zu,%.17g,%.17g,%.17g\n", state, z,
                    g[0], g[1], g[2]);
      csv += buf;
    }
    js["gradient"] = grad;
    js["se_residual"] = res.info.se_residual;
    js["hessian_regularized"] = res.info.hessian_regularized;
    if (opt.dump_densities) {
      js["densities"] = {
          {"unrelaxed", densities_to_json(res.densities.unrelaxed)},
          {"vqe_response", densities_to_json(res.densities.vqe_response)},
          {"crs_response", densities_to_json(res.densities.crs_response)},
          {"relaxed", densities_to_json(res.densities.relaxed)}};
    }
    states.push_back(js);
  }
  report["states"] = states;
  write_file(opt.out_dir, "gradients.csv", csv);
  emit_report(report, opt, "gradient.json");
  return 0;
}

int cmd_validate(const CliOptions& opt, const json& cfg) {
  const System sys = load_system(opt);
  std::vector<MethodSpec> methods;
  std::string token;
  std::istringstream stream(opt.methods_list);
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    if (token == "fci")
      methods.push_back(spec_from_config(cfg, "fci", "yy"));
    else if (token == "cis")
      methods.push_back(spec_from_config(cfg, "cis", "yy"));
    else
      methods.push_back(spec_from_config(cfg, "mcvqe", token));
  }
  const ValidationLayer layer = layer_from_name(opt.layer);
  const auto rows = validate_layer(sys, layer, methods, opt.step);

  json report;
  report["config"] = cfg;
  report["seed"] = cfg.at("seed").get<std::uint64_t>();
  report["layer"] = layer_name(layer);
  report["step"] = opt.step > 0.0 ? opt.step : default_step(layer);
  json jrows = json::array();
  for (const DeviationRow& row : rows) {
    json jr;
    jr["method"] = row.method;
    jr["worst"] = row.worst;
    for (const auto& [cls, dev] : row.classes) jr[cls] = dev;
    jrows.push_back(jr);
  }
  report["rows"] = jrows;
  emit_report(report, opt, "validation.json");
  return 0;
}

int cmd_dynamics(const CliOptions& opt, const json& cfg) {
  const System sys = load_system(opt);
  const MethodSpec spec =
      spec_from_config(cfg, cfg.at("method").get<std::string>(),
                       cfg.at("response").get<std::string>());
  const int state = cfg.at("state").get<int>();
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
  const Trajectory traj =
      run_dynamics(sys, spec, state, opt.steps, opt.dt, opt.temperature, seed);

  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  write_file(opt.out_dir.empty() ? "." : opt.out_dir, "trajectory.csv",
             csv.str());

  json report;
  report["config"] = cfg;
  report["seed"] = seed;
  report["method"] = method_label(spec);
  report["steps"] = opt.steps;
  report["dt"] = opt.dt;
  report["temperature"] = opt.temperature;
  report["frames"] = traj.frames.size();
  report["max_total_energy_excursion"] = traj.max_excursion;
  report["failed"] = traj.failed;
  if (traj.failed) report["failure"] = traj.failure;
  emit_report(report, opt, "dynamics.json");
  if (traj.failed) throw ConvergenceError("dynamics failed: " + traj.failure);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "MC-VQE exciton-model energies, analytic gradients, and dynamics"};
  app.require_subcommand(1);
  CliOptions opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--system", opt.system_file, "tabulated system JSON file");
    cmd->add_option("--synthetic", opt.synthetic_file,
                    "synthetic monomer-model JSON file");
    cmd->add_option("--config", opt.config_file, "run-config JSON file");
    cmd->add_option("--set", opt.overrides, "config override key=value");
    cmd->add_option("--ntheta", opt.ntheta, "number of MC-VQE states");
    cmd->add_option("--entangler", opt.entangler,
                    "entangler layout: truncated|so4|identity");
    cmd->add_option("--layers", opt.layers, "so4 brick layers");
    cmd->add_option("--response", opt.response, "response toggles: yy|yn|ny|nn");
    cmd->add_option("--method", opt.method, "fci|cis|mcvqe");
    cmd->add_option("--state", opt.state, "active/target state index");
    cmd->add_option("--threads", opt.threads,
                    "worker threads for circuit batches (0 = cores)");
    cmd->add_option("--seed", opt.seed, "PRNG seed");
    cmd->add_option("--gtol", opt.gtol, "SA-VQE gradient tolerance");
    cmd->add_option("--out", opt.out_dir, "output directory for artifacts");
    return cmd;
  };

  CLI::App* energy = add_common(app.add_subcommand("energy", "state energies"));
  energy->add_flag("--oracles", opt.oracles, "include FCI/CIS oracle energies");

  CLI::App* gradient =
      add_common(app.add_subcommand("gradient", "analytic nuclear gradients"));
  gradient->add_flag("--dump-densities", opt.dump_densities,
                     "include density matrices in the report");

  CLI::App* validate = add_common(app.add_subcommand(
      "validate", "analytic vs finite-difference deviation tables"));
  validate->add_option("--layer", opt.layer, "pauli|monomer|property|nuclear");
  validate->add_option("--step", opt.step,
                       "finite-difference step (0 = layer default)");
  validate->add_option("--methods", opt.methods_list,
                       "comma list: fci,cis,yy,yn,ny,nn");

  CLI::App* dynamics = add_common(
      app.add_subcommand("dynamics", "NVE excited-state molecular dynamics"));
  dynamics->add_option("--steps", opt.steps, "number of velocity Verlet steps");
  dynamics->add_option("--dt", opt.dt, "timestep in a.u.");
  dynamics->add_option("--temperature", opt.temperature,
                       "Maxwell initial-condition temperature (K)");

  try {
    app.parse(argc, argv);
    CLI::App* cmd = app.get_subcommands().front();
    const json cfg = resolve_config(opt, cmd);
    set_num_threads(cfg.at("threads").get<int>());
    if (cmd == energy) return cmd_energy(opt, cfg);
    if (cmd == gradient) return cmd_gradient(opt, cfg);
    if (cmd == validate) return cmd_validate(opt, cfg);
    if (cmd == dynamics) return cmd_dynamics(opt, cfg);
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 3;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
