#include "cli.hpp"

#include "nucpath/error.hpp"
#include "nucpath/hankel.hpp"
#include "nucpath/io.hpp"
#include "nucpath/path.hpp"
#include "nucpath/solver.hpp"
#include "nucpath/systems.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>

namespace nucpath::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string config;
  int order = 0;
  int dominant = 0;
  std::uint64_t seed = 1;
  int k_max = 31;
  double t = 0.0;
  double epsilon = 0.01;
  int grid_points = 20;
  double rank_tol = kDefaultRankTol;
  double rho = 1.0;
  int max_iters = 5000;
  double tol = 1e-9;
  std::string out = ".";
  std::string format = "both";
  bool verify = false;
  bool zero_w = false;
  int jobs = 1;

  SolverOptions solver() const {
    SolverOptions opts;
    opts.rho = rho;
    opts.max_iters = max_iters;
    opts.primal_tol = tol;
    opts.dual_tol = tol;
    opts.rank_tol = rank_tol;
    return opts;
  }
};

// Values from the JSON config file fill in every option that was not given
// on the command line.
void apply_config(CLI::App& cmd, RunConfig& cfg) {
  if (cfg.config.empty()) return;
  const nlohmann::json j = read_json(cfg.config);
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  auto take = [&](const char* key, auto& field) {
    const std::string flag = std::string("--") + key;
    const std::string alt = [&] {
      std::string s = key;
      for (auto& c : s) if (c == '-') c = '_';
      return s;
    }();
    const char* found = j.contains(key) ? key : (j.contains(alt) ? alt.c_str() : nullptr);
    if (found == nullptr) return;
    auto* opt = cmd.get_option_no_throw(flag);
    if (opt != nullptr && opt->count() > 0) return;
    try {
      field = j.at(found).get<std::decay_t<decltype(field)>>();
    } catch (const nlohmann::json::exception&) {
      throw UsageError(fmt::format("config key '{}' has the wrong type", found));
    }
  };
  take("input", cfg.input);
  take("order", cfg.order);
  take("dominant", cfg.dominant);
  take("seed", cfg.seed);
  take("k-max", cfg.k_max);
  take("t", cfg.t);
  take("epsilon", cfg.epsilon);
  take("grid-points", cfg.grid_points);
  take("rank-tol", cfg.rank_tol);
  take("rho", cfg.rho);
  take("max-iters", cfg.max_iters);
  take("tol", cfg.tol);
  take("out", cfg.out);
  take("format", cfg.format);
  take("verify", cfg.verify);
  take("zero-w", cfg.zero_w);
  take("jobs", cfg.jobs);
}

void validate(const RunConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  if (cfg.grid_points < 2) throw UsageError("--grid-points must be >= 2");
  if (!(cfg.rank_tol > 0.0 && cfg.rank_tol < 1.0)) {
    throw UsageError("--rank-tol must lie in (0, 1)");
  }
  if (!(cfg.rho > 0.0)) throw UsageError("--rho must be positive");
  if (cfg.max_iters < 1) throw UsageError("--max-iters must be >= 1");
  if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
  if (cfg.jobs < 1) throw UsageError("--jobs must be >= 1");
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "both") {
    throw UsageError("--format must be json, csv or both");
  }
  if (cfg.k_max < 1) throw UsageError("--k-max must be positive");
}

int normalized_k_max(int k_max, std::ostream& err) {
  if (k_max % 2 == 0) {
    err << fmt::format("warning: k_max {} is even, using {}\n", k_max, k_max + 1);
    return k_max + 1;
  }
  return k_max;
}

ImpulseResponse load_input(const RunConfig& cfg, std::ostream& err) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  const fs::path file(cfg.input);
  if (file.extension() == ".json") {
    const nlohmann::json j = read_json(file);
    if (j.contains("poles")) {
      const SystemSpec spec = system_from_json(j);
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw IoError(cfg.input + ": " + e.what());
      }
      return impulse_response(spec, normalized_k_max(cfg.k_max, err));
    }
  }
  LoadedImpulse loaded = read_impulse(file);
  if (loaded.padded) {
    err << fmt::format("warning: {} has even length, padded to k_max = {}\n",
                       cfg.input, loaded.g.k_max());
  }
  return loaded.g;
}

fs::path prepare_out(const RunConfig& cfg) {
  const fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.out + ": " + ec.message());
  return dir;
}

std::string join(const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_double(v[i]);
  }
  return s;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.order < 1) throw UsageError("--order must be >= 1");
  if (cfg.dominant < 0 || cfg.dominant > cfg.order) {
    throw UsageError("--dominant must lie in [0, order]");
  }
  const int k_max = normalized_k_max(cfg.k_max, err);
  const SystemSpec spec =
      cfg.dominant > 0
          ? random_banded_system(cfg.seed, dominant_band_layout(cfg.order, cfg.dominant))
          : random_system(cfg.order, cfg.seed);
  const ImpulseResponse g = impulse_response(spec, k_max);
  if (!check_truncation(spec, k_max)) {
    err << fmt::format("warning: truncation tail exceeds 1e-8 of the energy at k_max = {}\n",
                       k_max);
  }

  const fs::path dir = prepare_out(cfg);
  write_system_json(dir / "system.json", spec);
  if (cfg.format != "json") write_impulse_csv(dir / "impulse.csv", g);
  if (cfg.format != "csv") write_impulse_json(dir / "impulse.json", g);

  out << fmt::format("order {} seed {} k_max {}\n", cfg.order, cfg.seed, k_max);
  out << "hankel_singular_values " << join(hankel_singular_values(g)) << '\n';
  out << "t_max " << format_double(compute_t_max(g)) << '\n';
  return kOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(cfg.t > 0.0)) throw UsageError("--t must be positive");
  const ImpulseResponse g_o = load_input(cfg, err);
  const SolveResult res = solve_constrained(g_o, cfg.t, cfg.solver());

  const fs::path dir = prepare_out(cfg);
  write_impulse_csv(dir / "solution.csv", ImpulseResponse(res.model()));

  out << "t " << format_double(res.t) << '\n';
  out << "objective " << format_double(res.objective) << '\n';
  out << "nuclear_norm " << format_double(res.nuclear_norm_value) << '\n';
  out << "iterations " << res.iterations << '\n';
  out << "primal_residual " << format_double(res.primal_residual) << '\n';
  out << "dual_residual " << format_double(res.dual_residual) << '\n';
  if (!res.converged) {
    err << fmt::format("error: solver did not converge in {} iterations "
                       "(primal {:.3e}, dual {:.3e})\n",
                       res.iterations, res.primal_residual, res.dual_residual);
    return kNumerical;
  }
  return kOk;
}

void write_path(const RunConfig& cfg, const PathResult& path) {
  const fs::path dir = prepare_out(cfg);
  if (cfg.format != "csv") write_json(dir / "path.json", path_to_json(path));
  if (cfg.format != "json") {
    write_text(dir / "samples.csv", samples_to_csv(path));
    write_text(dir / "singular_values.csv", singular_values_to_csv(path));
  }
}

int cmd_path(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ImpulseResponse g_o = load_input(cfg, err);
  const auto mode = cfg.zero_w ? SubgradientMode::zero_w : SubgradientMode::dual_aligned;
  const auto start = std::chrono::steady_clock::now();
  PathResult path;
  try {
    path = compute_path(g_o, cfg.epsilon, cfg.grid_points, cfg.solver(), mode);
  } catch (const PathAborted& e) {
    write_path(cfg, e.partial());
    err << "error: " << e.what() << " (partial path written)\n";
    return kNumerical;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_path(cfg, path);

  out << "m " << path.m() << '\n';
  out << "t_max " << format_double(path.t_max) << '\n';
  out << "breakpoints";
  for (double t : path.breakpoints) out << ' ' << format_double(t);
  out << '\n';
  out << fmt::format("wall_time {:.3f} s\n", seconds);

  if (cfg.verify) {
    const auto checks = verify_sandwich(path, g_o, 5, 0x5eedULL, cfg.solver(), cfg.jobs);
    bool all_ok = true;
    for (const auto& c : checks) {
      out << fmt::format("verify t={} exact={} approx={} gap={} {}\n", format_double(c.t),
                         format_double(c.f_exact), format_double(c.f_approx),
                         format_double(c.gap), c.ok ? "ok" : "FAIL");
      all_ok = all_ok && c.ok;
    }
    if (!all_ok) {
      err << "error: sandwich verification failed\n";
      return kNumerical;
    }
  }
  return kOk;
}

void add_solver_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--rank-tol", cfg.rank_tol, "Relative singular-value cutoff");
  cmd->add_option("--rho", cfg.rho, "Initial splitting penalty");
  cmd->add_option("--max-iters", cfg.max_iters, "Iteration limit per solve");
  cmd->add_option("--tol", cfg.tol, "Relative primal/dual residual tolerance");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Certified regularization paths for Hankel nuclear-norm H2 model reduction"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a random stable system");
  gen->add_option("--order", cfg.order, "System order")->required();
  gen->add_option("--dominant", cfg.dominant, "Number of dominant (slow) poles");
  gen->add_option("--seed", cfg.seed, "Generator seed");
  gen->add_option("--k-max", cfg.k_max, "Impulse-response length (made odd)");
  gen->add_option("--out", cfg.out, "Output directory");
  gen->add_option("--format", cfg.format, "json, csv or both");
  gen->add_option("--config", cfg.config, "JSON config file");

  auto* solve = app.add_subcommand("solve", "Solve the constrained problem at one level t");
  solve->add_option("--input", cfg.input, "Impulse CSV/JSON or system JSON");
  solve->add_option("--t", cfg.t, "Constraint level t > 0");
  solve->add_option("--k-max", cfg.k_max, "k_max when --input is a system JSON");
  solve->add_option("--out", cfg.out, "Output directory");
  solve->add_option("--config", cfg.config, "JSON config file");
  add_solver_flags(solve, cfg);

  auto* path = app.add_subcommand("path", "Compute the certified regularization path");
  path->add_option("--input", cfg.input, "Impulse CSV/JSON or system JSON");
  path->add_option("--epsilon", cfg.epsilon, "Duality-gap tolerance");
  path->add_option("--grid-points", cfg.grid_points, "Samples per segment");
  path->add_option("--k-max", cfg.k_max, "k_max when --input is a system JSON");
  path->add_option("--out", cfg.out, "Output directory");
  path->add_option("--format", cfg.format, "json, csv or both");
  path->add_flag("--verify", cfg.verify, "Re-solve at 5 sampled t and check the bounds");
  path->add_flag("--zero-w", cfg.zero_w, "Use W = 0 in the subgradient");
  path->add_option("--jobs", cfg.jobs, "Threads for --verify re-solves");
  path->add_option("--config", cfg.config, "JSON config file");
  add_solver_flags(path, cfg);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    apply_config(*active, cfg);
    validate(cfg);
    if (active == gen) return cmd_gen(cfg, out, err);
    if (active == solve) return cmd_solve(cfg, out, err);
    return cmd_path(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace nucpath::cli
