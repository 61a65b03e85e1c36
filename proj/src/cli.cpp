#include "kerrsol/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <thread>

#include "kerrsol/config.hpp"
#include "kerrsol/dynamics.hpp"
#include "kerrsol/pipeline.hpp"
#include "kerrsol/reports.hpp"
#include "kerrsol/snapshot_io.hpp"

namespace fs = std::filesystem;

namespace kerrsol {

namespace {

constexpr const char* kEngineVersion = "kerrsol 1.0.0";

std::string trim_copy(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& s, const char* what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument(std::string("malformed ") + what + ": '" + s + "'");
  }
}

std::string out_path(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

void progress_line(const std::string& tag, int index, double time) {
  std::fprintf(stderr, "%s snapshot %d t=%s t_d\n", tag.c_str(), index,
               fmt_num(time).c_str());
}

std::vector<std::pair<std::string, std::string>> manifest_base(
    const SimulationConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("engine", kEngineVersion);
  m.emplace_back("config_hash", config_hash(cfg));
  std::istringstream lines(canonical_config_text(cfg));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    m.emplace_back("config." + line.substr(0, eq), line.substr(eq + 1));
  }
  return m;
}

int run_evolve(const std::string& config_path, const std::string& out_dir) {
  const SimulationConfig cfg = load_config(config_path);
  cfg.validate();
  const GridSpec grid = cfg.grid();
  const auto t_start = std::chrono::steady_clock::now();

  const std::string snap_path = out_path(out_dir, "snapshots.ksnap");
  SnapshotWriter writer(snap_path, grid);
  SplitStepIntegrator integrator(grid, cfg);
  int index = 0;
  integrator.evolve_with(make_fundamental_soliton(grid, cfg),
                         [&](const GaussianFieldState& s) {
                           writer.append(s);
                           progress_line("evolve", index++, s.time);
                         });
  writer.close();

  auto manifest = manifest_base(cfg);
  manifest.emplace_back("snapshot_count", std::to_string(writer.count()));
  manifest.emplace_back("output.snapshots", "snapshots.ksnap");
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  manifest.emplace_back("wallclock_seconds", fmt_num(wall));
  write_manifest(out_path(out_dir, "manifest.txt"), manifest);
  return 0;
}

std::vector<GaussianFieldState> read_all_snapshots(const std::string& path) {
  SnapshotReader reader(path);
  std::vector<GaussianFieldState> out;
  while (auto s = reader.next()) out.push_back(std::move(*s));
  if (out.empty()) throw std::runtime_error("snapshot container is empty");
  return out;
}

const Eigen::MatrixXd& recipe_map(const NarrowScan& scan, const std::string& recipe) {
  if (recipe == "fig4") return scan.eta12;
  if (recipe == "fig5") return scan.eta_tilde12;
  return scan.tau_tilde12;
}

PipelineOptions light_options() {
  PipelineOptions opt;
  opt.sym_single = opt.sym_eta = opt.sym_tau = opt.asym_eta = opt.asym_tau = false;
  return opt;
}

int run_analyze(const std::string& snapshots, const std::string& config_path,
                const std::string& recipe, const std::optional<std::string>& windows,
                const std::string& out_dir) {
  if (snapshots.empty() && config_path.empty())
    throw std::invalid_argument("analyze needs --snapshots or --config");

  if (windows) {
    if (snapshots.empty())
      throw std::invalid_argument("--windows requires --snapshots");
    const auto selections = parse_windows_spec(*windows);
    std::vector<CorrelationReport> rows;
    SnapshotReader reader(snapshots);
    while (auto s = reader.next()) {
      const SpectralMoments spec = SpectralMoments::from_state(*s);
      for (const auto& sel : selections)
        rows.push_back(sel.w2 ? make_report(spec, sel.w1, *sel.w2)
                              : make_report(spec, sel.w1));
    }
    write_report_csv(out_path(out_dir, "window_reports.csv"), rows);
    return 0;
  }

  if (recipe.empty())
    throw std::invalid_argument("analyze needs --recipe or --windows");

  const bool is_map_recipe = recipe == "fig4" || recipe == "fig5" || recipe == "fig6";
  if (recipe != "fig2" && recipe != "fig3" && !is_map_recipe)
    throw std::invalid_argument("unknown analyze recipe '" + recipe +
                                "' (fig2..fig6; fig7..fig11 are sweep recipes)");

  if (!snapshots.empty()) {
    const auto states = read_all_snapshots(snapshots);
    const int n = states.front().grid.n_points();
    Eigen::VectorXd freqs(n);
    for (int r = 0; r < n; ++r) freqs[r] = states.front().grid.frequency(r);

    if (recipe == "fig2" || recipe == "fig3") {
      std::vector<double> times;
      Eigen::MatrixXd surface(states.size(), n);
      for (size_t i = 0; i < states.size(); ++i) {
        const SpectralMoments spec = SpectralMoments::from_state(states[i]);
        surface.row(static_cast<int>(i)) =
            narrow_scan(spec).eta11.transpose();
        times.push_back(states[i].time);
      }
      if (recipe == "fig3") {
        write_surface_csv(out_path(out_dir, "fig3_eta11_surface.csv"), times, freqs,
                          surface);
      } else {
        std::vector<Eigen::VectorXd> cols{surface.col(n / 2)};
        write_curves_csv(out_path(out_dir, "fig2_eta11_mid.csv"), times,
                         {"eta11_mid"}, cols);
      }
      return 0;
    }

    for (const double t : {5.0, 10.0}) {
      bool found = false;
      for (const auto& s : states)
        if (std::abs(s.time - t) < 1e-6) {
          const NarrowScan scan =
              narrow_scan(SpectralMoments::from_state(s), default_narrow_half_width, true);
          write_map_csv(out_path(out_dir, recipe + "_t" + fmt_num(t) + ".csv"), freqs,
                        recipe_map(scan, recipe));
          found = true;
        }
      if (!found)
        throw std::runtime_error("container has no snapshot at t=" + fmt_num(t));
    }
    return 0;
  }

  // recipe bundles executed from a base config
  const SimulationConfig base = load_config(config_path);
  if (recipe == "fig2") {
    const std::vector<double> gammas{0.0, 0.005, 0.01, 0.02, 0.03};
    std::vector<Eigen::VectorXd> cols;
    std::vector<std::string> labels;
    std::vector<double> times;
    for (const double g : gammas) {
      SimulationConfig cfg = base;
      cfg.gamma_td = g;
      cfg.t_final = 16.0;
      const RunTrajectory run = analyze_run(cfg, light_options());
      if (times.empty()) times = run.times;
      cols.push_back(Eigen::Map<const Eigen::VectorXd>(run.eta11_mid.data(),
                                                       run.eta11_mid.size()));
      labels.push_back("eta11_mid_gamma=" + fmt_num(g));
    }
    write_curves_csv(out_path(out_dir, "fig2_eta11_mid.csv"), times, labels, cols);
    return 0;
  }
  if (recipe == "fig3") {
    for (const double g : {0.0, 0.03}) {
      SimulationConfig cfg = base;
      cfg.gamma_td = g;
      cfg.t_final = 16.0;
      const RunTrajectory run = analyze_run(cfg, light_options());
      write_surface_csv(
          out_path(out_dir, "fig3_eta11_surface_gamma" + fmt_num(g) + ".csv"),
          run.times, run.freqs, run.eta11_surface);
    }
    return 0;
  }

  for (const double g : {0.0, 0.03}) {
    SimulationConfig cfg = base;
    cfg.gamma_td = g;
    cfg.t_final = 10.0;
    const GridSpec grid = cfg.grid();
    Eigen::VectorXd freqs(grid.n_points());
    for (int r = 0; r < grid.n_points(); ++r) freqs[r] = grid.frequency(r);
    SplitStepIntegrator integrator(grid, cfg);
    integrator.evolve_with(make_fundamental_soliton(grid, cfg),
                           [&](const GaussianFieldState& s) {
                             for (const double t : {5.0, 10.0})
                               if (std::abs(s.time - t) < 1e-6) {
                                 const NarrowScan scan = narrow_scan(
                                     SpectralMoments::from_state(s),
                                     default_narrow_half_width, true);
                                 write_map_csv(
                                     out_path(out_dir, recipe + "_gamma" + fmt_num(g) +
                                                           "_t" + fmt_num(t) + ".csv"),
                                     freqs, recipe_map(scan, recipe));
                               }
                           });
  }
  return 0;
}

int run_optimize(const std::string& snapshots, const std::string& objective,
                 const std::string& mode, int coarsening, const std::string& out_dir) {
  const auto states = read_all_snapshots(snapshots);
  const double reference = total_photon_number(states.front());

  std::vector<double> times;
  std::vector<WindowSearchResult> results;
  std::vector<double> omega0;
  for (const auto& s : states) {
    const SpectralMoments spec = SpectralMoments::from_state(s);
    times.push_back(s.time);
    if (objective == "eta11") {
      results.push_back(optimize_symmetric_single(spec, reference));
      omega0.push_back(omega0_crossing(spec, default_narrow_half_width));
    } else {
      const PairObjective obj = objective == "eta-tilde" ? PairObjective::eta_tilde
                                                         : PairObjective::tau_tilde;
      results.push_back(mode == "asymmetric"
                            ? optimize_asymmetric_pair(spec, obj, coarsening, reference)
                            : optimize_symmetric_pair(spec, obj, reference));
    }
  }
  const std::string name = "optimize_" + objective + "_" + mode + ".csv";
  write_trajectory_csv(out_path(out_dir, name), times, results,
                       objective == "eta11" ? &omega0 : nullptr);
  return 0;
}

struct SweepJobResult {
  double gamma = 0.0;
  bool ok = false;
  std::string error;
  RunTrajectory run;
};

int run_sweep(const std::string& config_path, const std::string& gamma_text,
              const std::string& out_dir, int threads, int coarsening, bool asym_tau) {
  const SimulationConfig base = load_config(config_path);
  const std::vector<double> gammas =
      gamma_text.empty() ? std::vector<double>{0.0, 0.005, 0.01, 0.02, 0.03}
                         : parse_gamma_list(gamma_text);
  if (gammas.empty()) throw std::invalid_argument("empty gamma list");

  std::vector<SweepJobResult> jobs(gammas.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < gammas.size(); i = next.fetch_add(1)) {
      SweepJobResult& job = jobs[i];
      job.gamma = gammas[i];
      try {
        SimulationConfig cfg = base;
        cfg.gamma_td = gammas[i];
        PipelineOptions opt;
        opt.coarsening = coarsening;
        opt.asym_tau = asym_tau;
        const std::string tag = "sweep gamma=" + fmt_num(gammas[i]);
        opt.progress = [tag](int index, double t) { progress_line(tag, index, t); };
        job.run = analyze_run(cfg, opt);
        job.ok = true;
      } catch (const std::exception& e) {
        job.error = e.what();
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(gammas.size())));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::ofstream summary;
  const std::string summary_path = out_path(out_dir, "summary.csv");
  summary.open(summary_path);
  summary << "gamma_td,min_eta11,t_min_eta11,fraction_at_min,fano_db_at_min,"
             "min_sym_eta_tilde12,t_min_sym_eta_tilde12,"
             "min_sym_tau_tilde12,t_min_sym_tau_tilde12,beam_fraction_at_min_tau,"
             "min_asym_eta_tilde12,t_min_asym_eta_tilde12\n";

  bool any_failed = false;
  for (const auto& job : jobs) {
    if (!job.ok) {
      any_failed = true;
      std::fprintf(stderr, "sweep gamma=%s failed: %s\n", fmt_num(job.gamma).c_str(),
                   job.error.c_str());
      continue;
    }
    const RunTrajectory& run = job.run;
    const std::string suffix = "_gamma" + fmt_num(job.gamma) + ".csv";

    std::vector<double> obj_single, obj_eta, obj_tau, obj_aeta;
    for (const auto& r : run.sym_single) obj_single.push_back(r.objective);
    for (const auto& r : run.sym_eta) obj_eta.push_back(r.objective);
    for (const auto& r : run.sym_tau) obj_tau.push_back(r.objective);
    for (const auto& r : run.asym_eta) obj_aeta.push_back(r.objective);

    write_trajectory_csv(out_path(out_dir, "fig7_symmetric_single" + suffix), run.times,
                         run.sym_single, &run.omega0);
    write_trajectory_csv(out_path(out_dir, "fig8_symmetric_eta_tilde" + suffix),
                         run.times, run.sym_eta);
    write_trajectory_csv(out_path(out_dir, "fig9_symmetric_tau_tilde" + suffix),
                         run.times, run.sym_tau);
    write_trajectory_csv(out_path(out_dir, "fig10_asymmetric_eta_tilde" + suffix),
                         run.times, run.asym_eta);
    if (asym_tau)
      write_trajectory_csv(out_path(out_dir, "fig11_asymmetric_tau_tilde" + suffix),
                           run.times, run.asym_tau);

    const auto [i_s, v_s] = trajectory_min(obj_single);
    const auto [i_e, v_e] = trajectory_min(obj_eta);
    const auto [i_t, v_t] = trajectory_min(obj_tau);
    const auto [i_a, v_a] = trajectory_min(obj_aeta);
    const double fano = 1.0 / (1.0 - v_s);
    summary << fmt_num(job.gamma) << "," << fmt_num(v_s) << ","
            << fmt_num(run.times[i_s]) << "," << fmt_num(run.sym_single[i_s].fraction1)
            << "," << fmt_num(-10.0 * std::log10(fano)) << "," << fmt_num(v_e) << ","
            << fmt_num(run.times[i_e]) << "," << fmt_num(v_t) << ","
            << fmt_num(run.times[i_t]) << "," << fmt_num(run.sym_tau[i_t].fraction1)
            << "," << fmt_num(v_a) << "," << fmt_num(run.times[i_a]) << "\n";
  }
  summary.close();

  auto manifest = manifest_base(base);
  std::string glist;
  for (const double g : gammas) glist += (glist.empty() ? "" : " ") + fmt_num(g);
  manifest.emplace_back("gamma_list", glist);
  manifest.emplace_back("coarsening", std::to_string(coarsening));
  write_manifest(out_path(out_dir, "manifest.txt"), manifest);

  return any_failed ? 3 : 0;
}

int run_oracle_validate() {
  const OracleValidation v = run_oracle_validation();
  std::printf("%-42s %12s %12s %12s %12s %9s %s\n", "case", "dev_mean", "dev_C",
              "dev_M", "max", "bound", "status");
  for (const auto& c : v.cases)
    std::printf("%-42s %12.3e %12.3e %12.3e %12.3e %9.0e %s\n", c.name.c_str(),
                c.dev_mean, c.dev_c, c.dev_m, c.max_deviation, c.bound,
                c.pass ? "pass" : "FAIL");
  std::printf("closure-error sweep:");
  for (size_t i = 0; i < v.sweep_g.size(); ++i)
    std::printf(" g=%g dev=%.3e", v.sweep_g[i], v.sweep_dev[i]);
  std::printf("\nmeasured order in g: %.3f (monotone: %s)\n", v.measured_order,
              v.monotone ? "yes" : "no");
  std::printf("oracle validation: %s\n", v.pass ? "pass" : "FAIL");
  return v.pass ? 0 : 2;
}

}  // namespace

std::vector<double> parse_gamma_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim_copy(item);
    if (item.empty()) continue;
    const double g = to_double(item, "gamma value");
    if (g < 0.0) throw std::invalid_argument("gamma values must be >= 0");
    out.push_back(g);
  }
  return out;
}

std::vector<WindowSelection> parse_windows_spec(const std::string& text) {
  std::vector<WindowSelection> out;
  std::stringstream ss(text);
  std::string entry;
  while (std::getline(ss, entry, ';')) {
    entry = trim_copy(entry);
    if (entry.empty()) continue;
    std::vector<double> vals;
    std::stringstream es(entry);
    std::string num;
    while (std::getline(es, num, ',')) vals.push_back(to_double(trim_copy(num), "window bound"));
    if (vals.size() == 2) {
      out.push_back({SpectralWindow(vals[0], vals[1]), std::nullopt});
    } else if (vals.size() == 4) {
      if (!(vals[1] <= vals[2] || vals[3] <= vals[0]))
        throw std::invalid_argument("window pair must be disjoint: '" + entry + "'");
      out.push_back({SpectralWindow(vals[0], vals[1]), SpectralWindow(vals[2], vals[3])});
    } else {
      throw std::invalid_argument("window entry needs 2 or 4 numbers: '" + entry + "'");
    }
  }
  return out;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Gaussian-cumulant simulator for damped Kerr-fiber solitons and their "
               "spectral photon-number correlations"};
  app.require_subcommand(1);

  std::string config_path, snapshots, out_dir = ".", recipe, gamma_list, objective = "eta11",
              mode = "symmetric";
  std::optional<std::string> windows;
  int threads = 1, coarsening = 2;
  bool asym_tau = false;

  auto* evolve_cmd = app.add_subcommand("evolve", "propagate a soliton and write snapshots");
  evolve_cmd->add_option("--config", config_path, "key=value config file")->required();
  evolve_cmd->add_option("--out", out_dir, "output directory");

  auto* analyze_cmd = app.add_subcommand("analyze", "emit CSV reports from snapshots or a recipe");
  analyze_cmd->add_option("--snapshots", snapshots, "snapshot container");
  analyze_cmd->add_option("--config", config_path, "base config for recipe bundles");
  analyze_cmd->add_option("--recipe", recipe, "fig2|fig3|fig4|fig5|fig6");
  analyze_cmd->add_option("--windows", windows,
                          "window list 'lo,hi[,lo2,hi2];...' (may be empty)");
  analyze_cmd->add_option("--out", out_dir, "output directory");

  auto* optimize_cmd = app.add_subcommand("optimize", "window optimization over a snapshot container");
  optimize_cmd->add_option("--snapshots", snapshots, "snapshot container")->required();
  optimize_cmd->add_option("--objective", objective, "eta11|eta-tilde|tau-tilde");
  optimize_cmd->add_option("--mode", mode, "symmetric|asymmetric");
  optimize_cmd->add_option("--coarsening", coarsening, "asymmetric search stride");
  optimize_cmd->add_option("--out", out_dir, "output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "independent runs over a damping list");
  sweep_cmd->add_option("--config", config_path, "base config")->required();
  sweep_cmd->add_option("--gamma", gamma_list, "comma list of gamma*t_d values");
  sweep_cmd->add_option("--out", out_dir, "output directory");
  sweep_cmd->add_option("--threads", threads, "parallel sweep jobs");
  sweep_cmd->add_option("--coarsening", coarsening, "asymmetric search stride");
  sweep_cmd->add_flag("--asym-tau", asym_tau, "also optimize tau-tilde asymmetrically");

  auto* oracle_cmd = app.add_subcommand("oracle-validate",
                                        "validate the moment equations against the Fock oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (evolve_cmd->parsed()) return run_evolve(config_path, out_dir);
    if (analyze_cmd->parsed())
      return run_analyze(snapshots, config_path, recipe, windows, out_dir);
    if (optimize_cmd->parsed())
      return run_optimize(snapshots, objective, mode, coarsening, out_dir);
    if (sweep_cmd->parsed())
      return run_sweep(config_path, gamma_list, out_dir, threads, coarsening, asym_tau);
    if (oracle_cmd->parsed()) return run_oracle_validate();
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}

}  // namespace kerrsol
