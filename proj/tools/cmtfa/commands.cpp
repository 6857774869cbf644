#include "cmtfa/commands.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cmtfa/certificate.hpp"
#include "cmtfa/dominance.hpp"
#include "cmtfa/errors.hpp"
#include "cmtfa/io.hpp"
#include "cmtfa/linalg.hpp"
#include "cmtfa/model.hpp"
#include "cmtfa/oracle.hpp"
#include "cmtfa/solver.hpp"
#include "cmtfa/treesim.hpp"

namespace cmtfa::cli {
namespace {

using io::Json;

// Raised by command bodies for a specific exit status.
struct CommandExit {
  int code;
  std::string message;
};

struct GlobalOptions {
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string format;  // empty: command default
  std::string output;
};

struct AlphaSource {
  std::string inline_list;
  std::string input_path;

  EdgeWeightVector load() const {
    if (!inline_list.empty() && !input_path.empty()) {
      throw CommandExit{kInvalidInput, "give either --alpha or --input, not both"};
    }
    if (!input_path.empty()) return io::edge_weights_from_json(io::read_json_file(input_path));
    if (inline_list.empty()) throw CommandExit{kInvalidInput, "missing --alpha or --input"};
    return EdgeWeightVector::parse(inline_list);
  }
};

void add_alpha_options(CLI::App* cmd, AlphaSource& source) {
  cmd->add_option("--alpha", source.inline_list, "Comma separated edge weights, e.g. 0.9,0.2,0.1");
  cmd->add_option("--input", source.input_path, "JSON file of the form {\"alpha\": [...]}");
}

std::string resolve_format(const GlobalOptions& g, std::string_view fallback,
                           std::initializer_list<std::string_view> allowed,
                           std::string_view command) {
  const std::string format = g.format.empty() ? std::string(fallback) : g.format;
  for (auto a : allowed) {
    if (a == format) return format;
  }
  throw CommandExit{kInvalidInput,
                    fmt::format("format '{}' is not supported by '{}'", format, command)};
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// --- commands --------------------------------------------------------------

int cmd_solve(const GlobalOptions& g, const AlphaSource& source, std::ostream& out,
              std::ostream& err) {
  const auto format = resolve_format(g, "json", {"json", "csv"}, "solve");
  const EdgeWeightVector alpha = source.load();
  const FactorDecomposition decomp = solve(alpha);

  const StarCovariance sigma = build_star_covariance(alpha);
  const double residual = linalg::max_abs_diff(
      decomp.sigma_t + Matrix(decomp.d.asDiagonal()), sigma.matrix());
  if (residual > 1e-12) {
    err << fmt::format("internal error: reconstruction residual {:.3g}\n", residual);
    return kInternalError;
  }
  if (format == "csv") {
    io::write_csv(out, decomp);
  } else {
    emit_json(out, io::to_json(decomp));
  }
  return kOk;
}

int cmd_certify(const GlobalOptions& g, const AlphaSource& source, std::ostream& out,
                std::ostream& err) {
  resolve_format(g, "json", {"json"}, "certify");
  const EdgeWeightVector alpha = source.load();
  const FactorDecomposition decomp = solve(alpha);
  const OptimalityCertificate cert = build_certificate(alpha);
  const VerificationReport report =
      verify_certificate(build_star_covariance(alpha), decomp, cert, g.tol);

  Json j;
  j["branch"] = to_string(decomp.branch);
  j["witness_columns"] = cert.columns();
  const Json body = io::to_json(report);
  for (const auto& [key, value] : body.items()) j[key] = value;
  emit_json(out, j);
  if (!report.pass) {
    err << "certificate verification failed\n";
    return kVerificationFailed;
  }
  return kOk;
}

struct OracleArgs {
  std::string method = "both";
  double resolution = 0.05;
  std::size_t rounds = 3;
  double step = 1.0;
  std::size_t max_iter = 4000;
};

int cmd_oracle(const GlobalOptions& g, const AlphaSource& source, const OracleArgs& a,
               std::ostream& out) {
  resolve_format(g, "json", {"json"}, "oracle");
  if (a.method != "grid" && a.method != "descent" && a.method != "both") {
    throw CommandExit{kInvalidInput, fmt::format("unknown oracle method '{}'", a.method)};
  }
  const EdgeWeightVector alpha = source.load();
  const StarCovariance sigma = build_star_covariance(alpha);

  Json j;
  j["alpha"] = io::to_json(alpha)["alpha"];
  j["closed_form_trace"] = solve(alpha).trace_sigma_t;
  if (a.method != "descent") {
    j["grid"] = io::to_json(brute_force_cmtfa(sigma, a.resolution, a.rounds));
  }
  if (a.method != "grid") {
    j["descent"] = io::to_json(projected_descent_cmtfa(sigma, a.step, a.max_iter, g.seed));
  }
  emit_json(out, j);
  return kOk;
}

struct SimulateArgs {
  std::string mode = "prob";
  std::size_t n = 3;
  std::size_t trials = 100000;
  std::size_t rows = 1000;
};

int cmd_simulate(const GlobalOptions& g, const AlphaSource& source, const SimulateArgs& a,
                 std::ostream& out) {
  if (a.mode == "prob") {
    resolve_format(g, "json", {"json"}, "simulate --mode prob");
    const Estimate e = mc_prob_nondominant(a.n, a.trials, g.seed);
    emit_json(out, Json{{"n", a.n},
                        {"seed", g.seed},
                        {"exact", prob_nondominant(a.n)},
                        {"symmetric", prob_nondominant_symmetric(a.n)},
                        {"estimate", io::to_json(e)}});
    return kOk;
  }
  if (a.mode == "density") {
    resolve_format(g, "json", {"json"}, "simulate --mode density");
    const DensityCheck d = density_sum_check(a.n, a.trials, g.seed);
    Json j{{"n", a.n}, {"seed", g.seed}, {"trials", a.trials}};
    const Json body = io::to_json(d);
    for (const auto& [key, value] : body.items()) j[key] = value;
    emit_json(out, j);
    return kOk;
  }
  if (a.mode == "samples") {
    const auto format = resolve_format(g, "csv", {"csv", "json"}, "simulate --mode samples");
    const SampleBatch batch = sample_star_model(source.load(), a.rows, g.seed);
    if (format == "csv") {
      io::write_csv(out, batch);
    } else {
      Json rows = Json::array();
      for (Eigen::Index r = 0; r < batch.observations.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < batch.observations.cols(); ++c) {
          row.push_back(batch.observations(r, c));
        }
        rows.push_back(std::move(row));
      }
      emit_json(out, Json{{"seed", batch.seed}, {"observations", std::move(rows)}});
    }
    return kOk;
  }
  throw CommandExit{kInvalidInput, fmt::format("unknown simulate mode '{}'", a.mode)};
}

struct TreeArgs {
  std::vector<std::size_t> sizes;
  double delta = -1.0;
  std::string input_path;
  std::optional<std::size_t> mc_trials;
};

int cmd_tree_check(const GlobalOptions& g, const TreeArgs& a, std::ostream& out) {
  resolve_format(g, "json", {"json"}, "tree-check");
  ClusterSpec spec;
  if (!a.input_path.empty()) {
    if (!a.sizes.empty()) {
      throw CommandExit{kInvalidInput, "give either --sizes/--delta or --input, not both"};
    }
    spec = io::cluster_spec_from_json(io::read_json_file(a.input_path));
  } else {
    spec.sizes = a.sizes;
    spec.delta = a.delta;
  }
  const TreeFeasibilityReport report = check_tree_feasibility(spec, a.mc_trials, g.seed);
  Json j{{"spec", io::to_json(spec)}};
  const Json body = io::to_json(report);
  for (const auto& [key, value] : body.items()) j[key] = value;
  emit_json(out, j);
  return kOk;
}

struct SweepArgs {
  std::string tail;
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
};

int cmd_sweep(const GlobalOptions& g, const SweepArgs& a, std::ostream& out) {
  const auto format = resolve_format(g, "csv", {"csv", "json"}, "sweep");
  if (!(a.step > 0.0)) throw CommandExit{kInvalidInput, "--step must be positive"};
  if (a.from > a.to) throw CommandExit{kInvalidInput, "--from must not exceed --to"};

  // Validate the tail on its own (it needs two entries to form a vector).
  std::vector<double> tail;
  {
    const auto probe = EdgeWeightVector::parse(a.tail + ",0.5");
    tail.assign(probe.entries().begin(), probe.entries().end() - 1);
  }

  struct Row {
    double alpha1, trace_nd, trace_dm, advantage;
  };
  std::vector<Row> rows;
  for (std::size_t k = 0;; ++k) {
    const double a1 = a.from + static_cast<double>(k) * a.step;
    if (a1 > a.to + 1e-9 * a.step) break;
    std::vector<double> entries{a1};
    entries.insert(entries.end(), tail.begin(), tail.end());
    const EdgeWeightVector alpha(std::move(entries));
    const DominanceVerdict verdict = classify(alpha);
    if (verdict.branch == Dominance::NonDominant || verdict.dominant_index != 0u) continue;
    rows.push_back({a1, alpha.as_vector().squaredNorm(),
                    solve_rank_n_minus_1(alpha).trace_sigma_t, trace_advantage(alpha)});
  }
  if (rows.empty()) {
    throw CommandExit{kInvalidInput, "the alpha1 range contains no point where alpha1 dominates"};
  }

  if (format == "csv") {
    out << "alpha1,trace_nd,trace_dm,advantage\n";
    for (const auto& r : rows) {
      out << io::format_number(r.alpha1) << ',' << io::format_number(r.trace_nd) << ','
          << io::format_number(r.trace_dm) << ',' << io::format_number(r.advantage) << '\n';
    }
  } else {
    Json j = Json::array();
    for (const auto& r : rows) {
      j.push_back(Json{{"alpha1", r.alpha1},
                       {"trace_nd", r.trace_nd},
                       {"trace_dm", r.trace_dm},
                       {"advantage", r.advantage}});
    }
    emit_json(out, j);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form constrained minimum trace factor analysis for latent star models"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "RNG seed for Monte Carlo and oracle starts");
  app.add_option("--tol", g.tol, "Verification tolerance");
  app.add_option("--format", g.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", g.output, "Write output to this file instead of stdout");

  AlphaSource alpha_source;
  std::function<int(std::ostream&)> action;

  auto* solve_cmd = app.add_subcommand("solve", "Closed-form CMTFA decomposition");
  add_alpha_options(solve_cmd, alpha_source);
  solve_cmd->callback(
      [&] { action = [&](std::ostream& o) { return cmd_solve(g, alpha_source, o, err); }; });

  auto* certify_cmd = app.add_subcommand("certify", "Build and verify the optimality certificate");
  add_alpha_options(certify_cmd, alpha_source);
  certify_cmd->callback(
      [&] { action = [&](std::ostream& o) { return cmd_certify(g, alpha_source, o, err); }; });

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force and descent oracles");
  add_alpha_options(oracle_cmd, alpha_source);
  oracle_cmd->add_option("--method", oracle_args.method, "grid, descent or both");
  oracle_cmd->add_option("--resolution", oracle_args.resolution, "Coarse grid resolution");
  oracle_cmd->add_option("--rounds", oracle_args.rounds, "Grid refinement rounds");
  oracle_cmd->add_option("--step", oracle_args.step, "Initial descent step fraction");
  oracle_cmd->add_option("--max-iter", oracle_args.max_iter, "Descent iteration cap");
  oracle_cmd->callback([&] {
    action = [&](std::ostream& o) { return cmd_oracle(g, alpha_source, oracle_args, o); };
  });

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo checks and star-model samples");
  add_alpha_options(sim_cmd, alpha_source);
  sim_cmd->add_option("--mode", sim_args.mode, "prob, density or samples");
  sim_cmd->add_option("--n", sim_args.n, "Cluster size for prob/density");
  sim_cmd->add_option("--trials", sim_args.trials, "Monte Carlo trials");
  sim_cmd->add_option("--rows", sim_args.rows, "Observations to draw in samples mode");
  sim_cmd->callback([&] {
    action = [&](std::ostream& o) { return cmd_simulate(g, alpha_source, sim_args, o); };
  });

  TreeArgs tree_args;
  auto* tree_cmd = app.add_subcommand("tree-check", "Cluster combination conditions");
  tree_cmd->add_option("--sizes", tree_args.sizes, "Cluster sizes, e.g. 4,4")->delimiter(',');
  tree_cmd->add_option("--delta", tree_args.delta, "Required joint probability");
  tree_cmd->add_option("--input", tree_args.input_path, "JSON {\"sizes\": [...], \"delta\": ...}");
  tree_cmd->add_option("--mc-trials", tree_args.mc_trials, "Also estimate by Monte Carlo");
  tree_cmd->callback(
      [&] { action = [&](std::ostream& o) { return cmd_tree_check(g, tree_args, o); }; });

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Trace advantage as |alpha_1| grows");
  sweep_cmd->add_option("--tail", sweep_args.tail, "Fixed |alpha_2|..|alpha_n|")->required();
  sweep_cmd->add_option("--from", sweep_args.from, "First alpha_1")->required();
  sweep_cmd->add_option("--to", sweep_args.to, "Last alpha_1")->required();
  sweep_cmd->add_option("--step", sweep_args.step, "alpha_1 increment")->required();
  sweep_cmd->callback(
      [&] { action = [&](std::ostream& o) { return cmd_sweep(g, sweep_args, o); }; });

  std::vector<const char*> argv{"cmtfa"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (g.output.empty()) return action(out);
    std::ostringstream buffer;
    const int code = action(buffer);
    std::ofstream file(g.output, std::ios::binary);
    if (!file) {
      err << fmt::format("error: cannot write '{}'\n", g.output);
      return kInvalidInput;
    }
    file << buffer.str();
    return code;
  } catch (const CommandExit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const BranchMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const ShapeMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace cmtfa::cli
