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

// Machine family with γ = 1 and b² = ac at the matching θ: the two output
// modes form an exact product state.
struct NocorrSolution {
  MachineParams params;
  int branch = 1;
  double s = 0.0;
  double f_no = 0.0;
};

// Branch 1:
//   A' = (1 + s + √(1+s)) / (2 + 2s),  B' = √s / (2√(1+s)),
//   C' = (√(1+s) - (1+s)) / (2 + 2s),  D' = 0.
// Branch 2 is the global sign mirror.
inline NocorrSolution nocorr_params(double s, int branch) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("overlap s must lie in [0, 1]");
  }
  if (branch != 1 && branch != 2) {
    throw std::invalid_argument("nocorr branch must be 1 or 2");
  }
  const double u = std::sqrt(1.0 + s);
  double a = (1.0 + s + u) / (2.0 + 2.0 * s);
  double b = std::sqrt(s) / (2.0 * u);
  double c = (u - (1.0 + s)) / (2.0 + 2.0 * s);
  if (branch == 2) {
    a = -a;
    b = -b;
    c = -c;
  }
  NocorrSolution sol;
  sol.params = make_machine(a, b, c, 0.0);
  sol.branch = branch;
  sol.s = s;
  sol.f_no = 0.5 * (1.0 + std::pow(s, 1.5) + (1.0 - s) * u);
  return sol;
}

// Fidelity of the correlation-free cloner: ½[1 + s^{3/2} + (1-s)√(1+s)].
inline double nocorr_fidelity(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("overlap s must lie in [0, 1]");
  }
  return 0.5 * (1.0 + std::pow(s, 1.5) + (1.0 - s) * std::sqrt(1.0 + s));
}

// Structured result of the product-output verification.
struct ProductCheck {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ProductReport {
  std::vector<ProductCheck> checks;
  Eigen::Vector2d chi_tilde = Eigen::Vector2d::Zero();
  int matched_sign = 0;  // sign of the |1⟩ component relative to |0⟩'s
  bool all_passed = true;

  void add(std::string name, double deviation, double tolerance) {
    const bool ok = deviation <= tolerance;
    checks.push_back({std::move(name), deviation, tolerance, ok});
    all_passed = all_passed && ok;
  }
};

// Applies the nocorr machine at the matching θ and asserts the output
// two-mode state is an exact uncorrelated product |χ̃⟩⟨χ̃| ⊗ |χ̃⟩⟨χ̃|.
inline ProductReport verify_product_output(double s, int branch) {
  const NocorrSolution sol = nocorr_params(s, branch);
  const double theta = theta_from_overlap(s);
  const ThreeQubitState out = apply_machine(sol.params, theta);
  const TwoModeState rho = output_density(out);

  ProductReport report;
  report.add("gamma_equals_one",
             std::abs(success_probability(out) - 1.0), 1e-12);

  const OutputCoefficients k = output_coefficients(sol.params, theta);
  report.add("b_squared_equals_ac", std::abs(k.b * k.b - k.a * k.c), 1e-12);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho.matrix);
  report.add("rank_one", std::abs(es.eigenvalues()(2)), 1e-10);

  const Eigen::Matrix2d m1 = detail::trace_out_second(rho.matrix);
  const Eigen::Matrix2d m2 = detail::trace_out_first(rho.matrix);
  report.add("equal_marginals", (m1 - m2).cwiseAbs().maxCoeff(), 1e-12);

  report.add("concurrence_zero", concurrence_eigen(rho), 1e-10);
  report.add("discord_zero", quantum_discord(rho), 1e-8);

  // Signed rank-1 factorization of the success sector (a, b, b, c),
  // taken up to global sign: χ0² = |a|, χ0 χ1 = ±b, χ1² = |c|.
  const double flip = k.a < 0.0 ? -1.0 : 1.0;
  const double chi0 = std::sqrt(flip * k.a);
  const double chi1 = chi0 > 1e-12 ? flip * k.b / chi0 : std::sqrt(flip * k.c);
  report.chi_tilde << chi0, chi1;
  report.matched_sign = chi1 >= 0.0 ? +1 : -1;
  Eigen::Vector4d product;
  product << chi0 * chi0, chi0 * chi1, chi0 * chi1, chi1 * chi1;
  Eigen::Vector4d sector;
  sector << flip * k.a, flip * k.b, flip * k.b, flip * k.c;
  report.add("product_factorization", (product - sector).cwiseAbs().maxCoeff(),
             1e-10);
  return report;
}

}  // namespace cloner
