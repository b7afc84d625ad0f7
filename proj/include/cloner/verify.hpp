#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "cloner/fidelity.hpp"
#include "cloner/machine.hpp"
#include "cloner/nocorr.hpp"
#include "cloner/oracle.hpp"

namespace cloner {

struct VerifyCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = true;

  void record(double deviation) {
    max_deviation = std::max(max_deviation, deviation);
    passed = max_deviation <= tolerance;
  }
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  unsigned long long seed = 0;
  int trials = 0;
  bool all_passed = true;

  VerifyCheck& check(const std::string& name, double tol) {
    for (auto& c : checks) {
      if (c.name == name) return c;
    }
    checks.push_back({name, 0.0, tol, true});
    return checks.back();
  }

  void finalize() {
    all_passed = true;
    for (const auto& c : checks) all_passed = all_passed && c.passed;
  }
};

// Random feasible point (B, γ, s) with s bounded away from the B-interval
// collapse so the branches stay distinguishable.
struct FeasiblePoint {
  double b = 0.0, gamma = 0.0, s = 0.0, theta = 0.0;
};

inline FeasiblePoint random_feasible_point(std::mt19937_64& rng,
                                           double s_min = 0.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FeasiblePoint pt;
  pt.s = s_min + (1.0 - s_min) * unit(rng);
  const double g_lo = 0.5 * (1.0 - pt.s);
  pt.gamma = g_lo + (1.0 - g_lo) * unit(rng);
  const BRange range = feasible_b_range(pt.gamma, pt.s);
  pt.b = range.b_min + (range.b_max - range.b_min) * unit(rng);
  pt.theta = theta_from_overlap(pt.s);
  return pt;
}

// Runs the full invariant suite at `trials` seeded-random feasible points.
// Failures are recorded in the report, never thrown.
inline VerifyReport run_verification(unsigned long long seed, int trials) {
  VerifyReport report;
  report.checks.reserve(32);  // keeps the references below stable
  report.seed = seed;
  report.trials = trials;
  std::mt19937_64 rng(seed);

  auto& ortho = report.check("machine_orthonormality", 1e-10);
  auto& round_trip = report.check("gamma_round_trip", 1e-10);
  auto& interval = report.check("b_interval_equivalence", 1e-12);
  auto& fid_oracle = report.check("fidelity_vs_oracle", 1e-9);
  auto& fid_branch = report.check("branch_vs_general_fidelity", 1e-10);
  auto& density = report.check("density_vs_partial_trace", 1e-12);
  auto& conc = report.check("concurrence_closed_vs_eigen", 1e-10);
  auto& tangle = report.check("tangle_closed_vs_state", 1e-9);
  auto& optimality = report.check("f_opt_dominates_f_p", 1e-9);
  auto& nocorr_chk = report.check("nocorr_product_output", 1e-8);

  for (int t = 0; t < trials; ++t) {
    const FeasiblePoint pt = random_feasible_point(rng);

    const double d2 = (1.0 - pt.gamma) / (1.0 + pt.s);
    const BRange range = feasible_b_range(pt.gamma, pt.s);
    interval.record(std::abs(range.b_max -
                             0.5 * std::sqrt(std::max(1.0 - 2.0 * d2, 0.0))));

    const FidelityBranches fb = branch_fidelities(pt.b, pt.gamma, pt.s);
    for (Branch br : kAllBranches) {
      const MachineParams params = solve_machine(pt.b, pt.gamma, pt.s, br);
      ortho.record(params.max_violation());

      const ThreeQubitState out = apply_machine(params, pt.theta);
      round_trip.record(std::abs(success_probability(out) - pt.gamma));

      const double f_closed = fidelity_general(params, pt.theta);
      fid_branch.record(std::abs(fb.value(br) - f_closed));

      const OracleOutcome oracle = oracle_clone(params, pt.theta, 1,
                                                DiscordOptions{}, false);
      fid_oracle.record(std::abs(f_closed - oracle.fidelity));

      const TwoModeState rho = output_density(out);
      density.record((rho.matrix - oracle.rho).cwiseAbs().maxCoeff());
      if (rho.abcd) {
        conc.record(
            std::abs(concurrence_closed(*rho.abcd) - concurrence_eigen(rho)));
      }
      tangle.record(std::abs(tangle_closed(pt.gamma, pt.b, pt.theta, br) -
                             tangle_from_state(out)));
    }

    if (pt.s > 0.05) {
      const double f_opt = optimal_fidelity(pt.gamma, pt.s);
      optimality.record(std::max(fb.f_p - f_opt, 0.0));
    }
  }

  // Correlation-free cloner spot checks, independent of the trial loop.
  if (trials > 0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 5; ++i) {
      const double s = unit(rng);
      for (int branch : {1, 2}) {
        const ProductReport pr = verify_product_output(s, branch);
        for (const ProductCheck& c : pr.checks) {
          if (!c.passed) nocorr_chk.record(c.deviation);
        }
      }
    }
  }

  report.finalize();
  return report;
}

}  // namespace cloner
