#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cloner/correlations.hpp"
#include "cloner/fidelity.hpp"
#include "cloner/machine.hpp"

namespace cloner {

// The cloning transformation as an explicit 8x2 linear map from
// span{|0⟩, |1⟩} (ancilla and probe fixed at |0⟩) into the three-qubit
// space, with basis index m1*4 + m2*2 + p.
struct CloningIsometry {
  Eigen::Matrix<double, 8, 2> matrix = Eigen::Matrix<double, 8, 2>::Zero();

  // Largest deviation of the columns from orthonormality; zero exactly
  // when the machine params satisfy the orthonormal conditions.
  double orthonormality_error() const {
    const Eigen::Matrix2d gram = matrix.transpose() * matrix;
    return (gram - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  }
};

inline CloningIsometry build_isometry(const MachineParams& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c) ||
      !std::isfinite(p.d)) {
    throw std::invalid_argument("machine params must be finite");
  }
  CloningIsometry iso;
  // |0⟩|0⟩|0⟩_p -> [A|00⟩ + B(|01⟩ + |10⟩) + C|11⟩]|0⟩_p + D|00⟩|1⟩_p
  iso.matrix(0, 0) = p.a;
  iso.matrix(2, 0) = p.b;
  iso.matrix(4, 0) = p.b;
  iso.matrix(6, 0) = p.c;
  iso.matrix(1, 0) = p.d;
  // |1⟩|0⟩|0⟩_p -> [A|11⟩ + B(|01⟩ + |10⟩) + C|00⟩]|0⟩_p + D|00⟩|1⟩_p
  iso.matrix(6, 1) = p.a;
  iso.matrix(2, 1) = p.b;
  iso.matrix(4, 1) = p.b;
  iso.matrix(0, 1) = p.c;
  iso.matrix(1, 1) = p.d;
  return iso;
}

// Everything the brute-force path recomputes from first principles.
struct OracleOutcome {
  double gamma = 0.0;
  double fidelity = 0.0;
  ThreeQubitState output;        // full (unprojected) output state
  Eigen::Vector4d collapsed;     // normalized |X⟩ after probe success
  Eigen::Matrix4d rho;           // two-mode reduced matrix (probe traced out)
  double concurrence = 0.0;
  double discord = 0.0;
  double tangle = 0.0;
};

// Evolves the input through the isometry and recomputes γ, fidelity, the
// reduced density matrix and all correlation measures numerically. Only
// state evolution, partial traces, eigenvalues and the grid optimizer are
// used; no closed-form formula enters this path.
inline OracleOutcome oracle_clone(const MachineParams& p, double theta,
                                  int which = 1,
                                  const DiscordOptions& discord_opts = {},
                                  bool with_discord = true) {
  if (!(theta >= 0.0 && theta <= kQuarterPi)) {
    throw std::domain_error("theta must lie in [0, pi/4]");
  }
  const CloningIsometry iso = build_isometry(p);
  const Eigen::Vector2d input = InputPair(theta).state(which);
  const Eigen::Matrix<double, 8, 1> psi = iso.matrix * input;

  OracleOutcome out;
  for (int i = 0; i < 8; ++i) out.output.amplitudes[i] = psi(i);

  // Project the probe onto |0⟩ (even indices) and normalize.
  Eigen::Vector4d success;
  for (int i = 0; i < 4; ++i) success(i) = psi(2 * i);
  out.gamma = success.squaredNorm();
  if (out.gamma < 1e-14) {
    throw std::domain_error("probe projection has vanishing probability");
  }
  out.collapsed = success / std::sqrt(out.gamma);

  // Fidelity: overlap of one reduced output mode with the input state.
  const Eigen::Matrix4d rho_x = out.collapsed * out.collapsed.transpose();
  Eigen::Matrix2d mode1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      mode1(i, j) = rho_x(2 * i, 2 * j) + rho_x(2 * i + 1, 2 * j + 1);
  out.fidelity = input.dot(mode1 * input);

  out.rho = reduce_over_probe(out.output);
  TwoModeState two_mode;
  two_mode.matrix = out.rho;
  out.concurrence = concurrence_eigen(two_mode);
  if (with_discord) out.discord = quantum_discord(two_mode, discord_opts);
  out.tangle = tangle_from_state(out.output);
  return out;
}

// One analytic-vs-oracle comparison at a point.
struct CheckEntry {
  std::string quantity;
  double analytic = 0.0;
  double oracle = 0.0;
  double difference = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct CrossCheckReport {
  std::vector<CheckEntry> entries;
  bool all_passed = true;

  void add(std::string quantity, double analytic, double oracle, double tol) {
    const double diff = std::abs(analytic - oracle);
    entries.push_back({std::move(quantity), analytic, oracle, diff, tol,
                       diff <= tol});
    all_passed = all_passed && entries.back().passed;
  }
};

struct CrossCheckTolerances {
  double fidelity = 1e-9;
  double density = 1e-12;
  double concurrence = 1e-10;
  double tangle = 1e-9;
};

// Identifies which solve_machine branch reproduces the given params, if any.
inline std::optional<Branch> identify_branch(const MachineParams& p,
                                             double gamma, double s) {
  for (Branch br : kAllBranches) {
    const MachineParams q = solve_machine(p.b, gamma, s, br);
    if (std::abs(q.a - p.a) < 1e-9 && std::abs(q.c - p.c) < 1e-9) return br;
  }
  return std::nullopt;
}

// Compares every closed-form quantity against the brute-force oracle at
// one point. Failures are recorded, not thrown.
inline CrossCheckReport cross_check(const MachineParams& p, double theta,
                                    const CrossCheckTolerances& tol = {}) {
  CrossCheckReport report;
  report.add("machine_orthonormality", p.max_violation(), 0.0, kOrthoTol);
  if (!report.all_passed) {
    // The closed forms presuppose valid params; stop at the failed gate.
    return report;
  }

  // Discord is minimized numerically on both sides, so it is not part of
  // the closed-form comparison; skip it to keep sweeps fast.
  const OracleOutcome oracle =
      oracle_clone(p, theta, 1, DiscordOptions{}, /*with_discord=*/false);
  const double s = overlap_from_theta(theta);

  report.add("fidelity_closed", fidelity_general(p, theta), oracle.fidelity,
             tol.fidelity);
  report.add("success_probability", success_probability(p, theta),
             oracle.gamma, tol.fidelity);

  const auto br = identify_branch(p, oracle.gamma, s);
  if (br) {
    const FidelityBranches fb = branch_fidelities(p.b, oracle.gamma, s);
    report.add(std::string("fidelity_branch_") + branch_label(*br),
               fb.value(*br), oracle.fidelity, tol.fidelity);
  }

  const OutputCoefficients k = output_coefficients(p, theta);
  const TwoModeState analytic_rho = two_mode_from_coefficients(k);
  report.add("density_matrix",
             (analytic_rho.matrix - oracle.rho).cwiseAbs().maxCoeff(), 0.0,
             tol.density);
  report.add("concurrence", concurrence_closed(k), oracle.concurrence,
             tol.concurrence);
  if (br) {
    // The closed-form tangle needs the branch to pick its root sign.
    report.add("tangle", tangle_closed(oracle.gamma, p.b, theta, *br),
               oracle.tangle, tol.tangle);
  }
  return report;
}

}  // namespace cloner
