#pragma once

#include <cmath>
#include <stdexcept>

#include "cloner/machine.hpp"

namespace cloner {

// Success probability of a machine on the θ inputs without building the
// state: γ = 1 - D²(1 + sin 2θ).
inline double success_probability(const MachineParams& p, double theta) {
  return 1.0 - p.d * p.d * (1.0 + std::sin(2.0 * theta));
}

// General (unoptimized) fidelity of one reduced output mode against the
// input state, as a closed form in (A, B, C, D) and θ.
inline double fidelity_general(const MachineParams& p, double theta) {
  if (!p.valid()) {
    throw std::invalid_argument("machine params violate orthonormality");
  }
  if (!(theta >= 0.0 && theta <= kQuarterPi)) {
    throw std::domain_error("theta must lie in [0, pi/4]");
  }
  const double gamma = success_probability(p, theta);
  if (gamma <= 1e-14) {
    throw std::domain_error("fidelity undefined: success probability is 0");
  }
  const double a = p.a, b = p.b, c = p.c;
  return (1.0 / (4.0 * gamma)) *
         ((a - 2.0 * b - c) * (a + c) * std::cos(4.0 * theta) +
          2.0 * b * c + c * c + 3.0 * a * a +
          4.0 * (a + b) * (b + c) * std::sin(2.0 * theta) +
          2.0 * a * b + 4.0 * b * b);
}

// The four branch fidelities at fixed (B, γ, s) and their maximum f_p.
// Ties resolve to the earliest branch in the order 1+, 1-, 2+, 2-.
struct FidelityBranches {
  double f1_plus = 0.0, f1_minus = 0.0, f2_plus = 0.0, f2_minus = 0.0;
  double f_p = 0.0;
  Branch argmax_branch = Branch::OnePlus;

  double value(Branch b) const {
    switch (b) {
      case Branch::OnePlus: return f1_plus;
      case Branch::OneMinus: return f1_minus;
      case Branch::TwoPlus: return f2_plus;
      case Branch::TwoMinus: return f2_minus;
    }
    throw std::logic_error("unknown branch");
  }
};

inline FidelityBranches branch_fidelities(double b, double gamma, double s) {
  const BRange range = feasible_b_range(gamma, s);
  if (!range.contains(b, 1e-12)) {
    throw std::domain_error("B outside the feasible interval");
  }
  const double root = std::sqrt(clamp_root_arg(
      (s - 1.0 - 4.0 * b * b * (1.0 + s) + 2.0 * gamma) / (1.0 + s),
      "branch_fidelities"));
  const double k1 = (1.0 + s) * (1.0 + (2.0 * b - 1.0) * s) / (2.0 * gamma);
  const double k2 = (1.0 + s) * (-1.0 + (2.0 * b + 1.0) * s) / (2.0 * gamma);

  FidelityBranches out;
  out.f1_plus = 0.5 + k1 * root;
  out.f1_minus = 0.5 - k1 * root;
  out.f2_plus = 0.5 - k2 * root;
  out.f2_minus = 0.5 + k2 * root;

  out.f_p = out.f1_plus;
  out.argmax_branch = Branch::OnePlus;
  for (Branch br : {Branch::OneMinus, Branch::TwoPlus, Branch::TwoMinus}) {
    if (out.value(br) > out.f_p + 1e-12) {
      out.f_p = out.value(br);
      out.argmax_branch = br;
    }
  }
  return out;
}

inline std::pair<double, Branch> partially_optimal_fidelity(double b,
                                                            double gamma,
                                                            double s) {
  const FidelityBranches fb = branch_fidelities(b, gamma, s);
  return {fb.f_p, fb.argmax_branch};
}

// Stationary value of B and the resulting optimal fidelity. The s = 0
// limit is singular (the closed forms divide by s(1 + s)); orthogonal
// states are handled by the caller via B = 0.
struct OptimalSolution {
  double b1 = 0.0, b2 = 0.0;
  double m = 0.0;
  double f_opt = 0.0;
};

inline double optimal_m(double gamma, double s) {
  return std::sqrt(clamp_root_arg(
      1.0 + s * s * (9.0 * s * s + 16.0 * (1.0 + s) * gamma - 10.0),
      "optimal_m"));
}

inline std::pair<double, double> optimal_b(double gamma, double s) {
  if (s <= 0.0) {
    throw std::domain_error(
        "optimal_b singular at s = 0; use B = 0 for orthogonal states");
  }
  const BRange range = feasible_b_range(gamma, s);
  const double m = optimal_m(gamma, s);
  const double b1 = (s * s - 1.0 + m) / (8.0 * (s + s * s));
  if (std::abs(b1) > range.b_max + 1e-9) {
    throw std::runtime_error("stationary B falls outside the feasible interval");
  }
  return {b1, -b1};
}

inline OptimalSolution optimal_solution(double gamma, double s) {
  OptimalSolution sol;
  std::tie(sol.b1, sol.b2) = optimal_b(gamma, s);
  sol.m = optimal_m(gamma, s);
  const double rad = clamp_root_arg(
      (2.0 * (s - 1.0) * (1.0 - sol.m + 3.0 * s * s) +
       16.0 * s * s * gamma) /
          (s * s * (1.0 + s)),
      "optimal_fidelity");
  sol.f_opt = 0.5 + (3.0 + sol.m - 3.0 * s * s) / (32.0 * gamma) *
                        std::sqrt(rad);
  return sol;
}

inline double optimal_fidelity(double gamma, double s) {
  return optimal_solution(gamma, s).f_opt;
}

}  // namespace cloner
