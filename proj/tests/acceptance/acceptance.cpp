// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cmtfa/certificate.hpp"
#include "cmtfa/commands.hpp"
#include "cmtfa/dominance.hpp"
#include "cmtfa/linalg.hpp"
#include "cmtfa/oracle.hpp"
#include "cmtfa/solver.hpp"
#include "cmtfa/treesim.hpp"
#include "support/generators.hpp"

using namespace cmtfa;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += why;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0: no limit
  std::function<Outcome()> body;
};

Outcome dichotomy() {
  Outcome o;
  testgen::AlphaGen gen(1001);
  std::size_t rank1 = 0, rank_nm1 = 0, bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = gen.size(3, 8);
    const auto alpha = gen.mixed(n);
    const auto f = solve(alpha);
    const std::size_t rank = linalg::numerical_rank(f.sigma_t);
    const std::size_t expected = f.branch == Branch::RankNMinus1 ? n - 1 : 1;
    if (rank == 1) ++rank1;
    else if (rank == n - 1) ++rank_nm1;
    if (rank != expected) ++bad;
  }
  o.require(bad == 0, fmt::format("{} cases with rank outside {{1, n-1}} or off-branch", bad));
  o.detail = fmt::format("rank1={} rank(n-1)={} bad={}", rank1, rank_nm1, bad) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  testgen::AlphaGen gen(1002);
  double worst_grid = 0.0, worst_descent = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto alpha = gen.mixed(gen.size(3, 4));
    const auto sigma = build_star_covariance(alpha);
    const double closed = solve(alpha).trace_sigma_t;
    worst_grid = std::max(worst_grid, std::abs(brute_force_cmtfa(sigma, 0.05, 3).best_trace - closed));
    worst_descent = std::max(
        worst_descent,
        std::abs(projected_descent_cmtfa(sigma, 1.0, 4000, static_cast<std::uint64_t>(trial))
                     .best_trace -
                 closed));
  }
  o.require(worst_grid <= 1e-3, "grid gap above 1e-3");
  o.require(worst_descent <= 1e-4, "descent gap above 1e-4");
  o.detail = fmt::format("max |grid - closed| = {:.3g}, max |descent - closed| = {:.3g}",
                         worst_grid, worst_descent) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome certificates() {
  Outcome o;
  testgen::AlphaGen gen(1003);
  std::size_t failed = 0, undetected = 0, tampers = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto alpha = gen.mixed(gen.size(3, 8));
    const auto sigma = build_star_covariance(alpha);
    const auto f = solve(alpha);
    const auto cert = build_certificate(alpha);
    const auto r = verify_certificate(sigma, f, cert, 1e-8);
    if (!(r.pass && r.d_nonneg && r.lambda_min_zero && r.null_space && r.eq13)) ++failed;
    for (Eigen::Index i = 0; i < f.d.size(); ++i) {
      for (double delta : {0.05, -0.05}) {
        auto tampered = f;
        tampered.d(i) += delta;
        ++tampers;
        if (verify_certificate(sigma, tampered, cert, 1e-8).pass) ++undetected;
      }
    }
  }
  o.require(failed == 0, fmt::format("{} genuine certificates rejected", failed));
  o.require(undetected == 0, fmt::format("{} tampered decompositions accepted", undetected));
  o.detail = fmt::format("500 certificates, {} rejected; {} tampers, {} undetected", failed,
                         tampers, undetected) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome worked_example() {
  Outcome o;
  const EdgeWeightVector alpha({0.9, 0.2, 0.1});
  const auto f = solve(alpha);
  const Vector diag = f.sigma_t.diagonal();
  o.require(f.branch == Branch::RankNMinus1, "branch is not RankNMinus1");
  o.require(std::abs(diag(0) - 0.27) <= 1e-12 && std::abs(diag(1) - 0.16) <= 1e-12 &&
                std::abs(diag(2) - 0.07) <= 1e-12,
            "diagonal differs from (0.27, 0.16, 0.07)");
  o.require(std::abs(f.trace_sigma_t - 0.5) <= 1e-12, "trace differs from 0.50");
  o.require(std::abs(trace_advantage(alpha) - 0.36) <= 1e-12, "advantage differs from 0.36");
  const Vector phi = sign_witness(alpha);
  o.require(phi == (Vector(3) << 1, -1, -1).finished(), "Phi differs from (1, -1, -1)");
  const double residual = (f.sigma_t * phi).norm();
  o.require(residual <= 1e-10, "null-space residual above 1e-10");
  const auto sigma = build_star_covariance(alpha);
  const double grid = brute_force_cmtfa(sigma, 0.05, 3).best_trace;
  const double descent = projected_descent_cmtfa(sigma, 1.0, 4000, 0).best_trace;
  o.require(std::abs(grid - 0.5) <= 1e-3, "grid oracle disagrees");
  o.require(std::abs(descent - 0.5) <= 1e-4, "descent oracle disagrees");
  o.detail = fmt::format("diag=({:.12g}, {:.12g}, {:.12g}) advantage={:.12g} residual={:.2g} "
                         "grid={:.9g} descent={:.12g}",
                         diag(0), diag(1), diag(2), trace_advantage(alpha), residual, grid,
                         descent) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome boundary_collapse() {
  Outcome o;
  const EdgeWeightVector alpha({0.7, 0.4, 0.3});
  const auto beta = build_beta(alpha);
  const double beta_nn = beta.beta(beta.beta.size() - 1);
  const double gap = linalg::max_abs_diff(solve_rank1(alpha).sigma_t,
                                          solve_rank_n_minus_1(alpha).sigma_t);
  const auto cert = build_certificate(alpha);
  const std::size_t rank = linalg::numerical_rank(cert.witness);
  o.require(std::abs(beta_nn - 1.0) <= 1e-12, "beta_nn differs from 1");
  o.require(gap <= 1e-12, "rank-1 and rank n-1 matrices differ");
  o.require(rank == 1, "witness rank is not 1");
  o.detail = fmt::format("beta_nn={:.15g} matrix gap={:.2g} witness rank={}", beta_nn, gap, rank) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome probability_law() {
  Outcome o;
  std::string parts;
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto e = mc_prob_nondominant(n, 100000, 2024);
    const double target = prob_nondominant(n);
    const double dev = std::abs(e.value - target);
    const double sym_dev = std::abs(e.value - prob_nondominant_symmetric(n));
    o.require(dev <= 0.01, fmt::format("n={} off 1-1/n! by {:.4f}", n, dev));
    parts += fmt::format("n={}: mc={:.5f} 1-1/n!={:.5f} 1-1/(n-1)!={:.5f} (dev {:.4f}); ", n,
                         e.value, target, prob_nondominant_symmetric(n), sym_dev);
  }
  for (std::size_t n = 3; n <= 4; ++n) {
    const auto d = density_sum_check(n, 100000, 2024);
    o.require(d.ks_deviation < 0.01, fmt::format("density n={} KS {:.4f}", n, d.ks_deviation));
    parts += fmt::format("density n={} KS={:.4f}; ", n, d.ks_deviation);
  }
  o.detail = parts + (o.detail.empty() ? "" : "FAILED: " + o.detail);
  return o;
}

Outcome implication_chain() {
  Outcome o;
  testgen::AlphaGen gen(1007);
  std::size_t violations = 0, sufficient = 0, necessary = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = gen.cluster_spec(5, 8, 0.5, 0.99);
    const auto r = check_tree_feasibility(spec, std::nullopt, 0);
    sufficient += r.sufficient_holds;
    necessary += r.necessary_holds;
    if (r.sufficient_holds && r.exact_joint_probability < spec.delta) ++violations;
    if (r.exact_joint_probability >= spec.delta && !r.necessary_holds) ++violations;
  }
  o.require(violations == 0, fmt::format("{} implication violations", violations));

  const auto a = check_tree_feasibility({{4, 4}, 0.9}, std::nullopt, 0);
  o.require(a.sufficient_holds && a.necessary_holds &&
                std::abs(a.threshold - 19.4868) < 1e-3 &&
                std::abs(a.exact_joint_probability - 0.9184) < 1e-4,
            "spec (4,4), 0.9 verdict");
  const auto b = check_tree_feasibility({{3, 3}, 0.9}, std::nullopt, 0);
  o.require(!b.necessary_holds && std::abs(b.exact_joint_probability - 0.6944) < 1e-4,
            "spec (3,3), 0.9 verdict");
  const auto c = check_tree_feasibility({{3}, 0.8}, std::nullopt, 0);
  o.require(c.sufficient_holds && std::abs(c.threshold - 5.0) < 1e-12 &&
                std::abs(c.exact_joint_probability - 0.8333) < 1e-4,
            "spec (3), 0.8 verdict");
  o.detail = fmt::format("200 specs: {} sufficient, {} necessary, {} violations; worked specs "
                         "checked",
                         sufficient, necessary, violations) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome sweep() {
  Outcome o;
  std::ostringstream out, err;
  const int code = cli::run({"sweep", "--tail", "0.2,0.1", "--from", "0.3", "--to", "0.95",
                             "--step", "0.05"},
                            out, err);
  o.require(code == 0, "sweep exited with " + std::to_string(code) + ": " + err.str());
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(cells, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() == 4) rows.emplace_back(v[0], v[3]);
  }
  o.require(rows.size() == 14, fmt::format("expected 14 rows, got {}", rows.size()));
  if (rows.empty()) return o;
  const double tail = 0.3;
  const double bound = 1.0 - 2.0 * tail + tail * tail;
  o.require(std::abs(rows.front().second) <= 1e-12, "first row is not the zero boundary point");
  bool increasing = true, bounded = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k > 0 && !(rows[k].second > rows[k - 1].second)) increasing = false;
    if (!(rows[k].second < bound)) bounded = false;
  }
  o.require(increasing, "advantage column not strictly increasing");
  o.require(bounded, "advantage reaches the upper bound");
  o.detail = fmt::format("{} rows, advantage {:.3g} .. {:.6g}, bound {:.2f}", rows.size(),
                         rows.front().second, rows.back().second, bound) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "rank dichotomy over 500 random vectors", 10.0, dichotomy},
      {2, "grid and descent oracles agree with the closed form", 120.0, oracle_agreement},
      {3, "certificates pass and tampering is detected", 0.0, certificates},
      {4, "worked example (0.9, 0.2, 0.1)", 0.0, worked_example},
      {5, "boundary collapse (0.7, 0.4, 0.3)", 0.0, boundary_collapse},
      {6, "non-dominance probability and sum density", 30.0, probability_law},
      {7, "cluster condition implication chain", 0.0, implication_chain},
      {8, "trace advantage sweep", 0.0, sweep},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && seconds > c.time_limit_s) {
      o.pass = false;
      o.detail += fmt::format("; runtime {:.2f}s over the {:.0f}s limit", seconds, c.time_limit_s);
    }
    if (!o.pass) ++failures;
    std::printf("[%s] AC%d %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                seconds, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
