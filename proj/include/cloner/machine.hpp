#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cloner {

inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

// Absolute tolerances used across the library.
inline constexpr double kOrthoTol = 1e-10;   // orthonormality of machine params
inline constexpr double kNormTol = 1e-12;    // state norms, traces
inline constexpr double kRootClamp = 1e-12;  // round-off slack on sqrt arguments

// Clamps a square-root argument that is negative only by round-off.
// Anything below -kRootClamp is a genuine domain violation.
inline double clamp_root_arg(double x, const char* what) {
  if (x < -kRootClamp) {
    throw std::domain_error(std::string(what) +
                            ": square-root argument negative (" +
                            std::to_string(x) + ")");
  }
  return x < 0.0 ? 0.0 : x;
}

// The four (A, C) solution families consistent with the orthonormality
// constraints, selected explicitly so downstream maxima can enumerate them.
enum class Branch { OnePlus, OneMinus, TwoPlus, TwoMinus };

inline constexpr std::array<Branch, 4> kAllBranches = {
    Branch::OnePlus, Branch::OneMinus, Branch::TwoPlus, Branch::TwoMinus};

inline const char* branch_label(Branch b) {
  switch (b) {
    case Branch::OnePlus: return "1+";
    case Branch::OneMinus: return "1-";
    case Branch::TwoPlus: return "2+";
    case Branch::TwoMinus: return "2-";
  }
  throw std::logic_error("unknown branch");
}

inline Branch branch_from_label(const std::string& s) {
  if (s == "1+") return Branch::OnePlus;
  if (s == "1-") return Branch::OneMinus;
  if (s == "2+") return Branch::TwoPlus;
  if (s == "2-") return Branch::TwoMinus;
  throw std::invalid_argument("branch must be one of 1+, 1-, 2+, 2-");
}

// 1 for the family with A = (±r + 1)/2, 2 for the sign-mirrored family.
inline int branch_family(Branch b) {
  return (b == Branch::OnePlus || b == Branch::OneMinus) ? 1 : 2;
}

// Overlap s = sin(2θ) of the two nonorthogonal input states.
inline double overlap_from_theta(double theta) {
  if (!(theta >= 0.0 && theta <= kQuarterPi)) {
    throw std::domain_error("theta must lie in [0, pi/4]");
  }
  return std::sin(2.0 * theta);
}

// Inverse of overlap_from_theta on [0, pi/4].
inline double theta_from_overlap(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("overlap s must lie in [0, 1]");
  }
  return 0.5 * std::asin(s);
}

// The pair of input states cos θ|0⟩ + sin θ|1⟩ and its partner with the
// roles of cos and sin exchanged. θ is canonical; s is always derived.
struct InputPair {
  double theta;

  explicit InputPair(double theta_) : theta(theta_) {
    if (!(theta >= 0.0 && theta <= kQuarterPi)) {
      throw std::domain_error("theta must lie in [0, pi/4]");
    }
  }

  double overlap() const { return std::sin(2.0 * theta); }

  Eigen::Vector2d state(int which) const {
    if (which != 1 && which != 2) {
      throw std::invalid_argument("input index must be 1 or 2");
    }
    double c = std::cos(theta), s = std::sin(theta);
    return which == 1 ? Eigen::Vector2d(c, s) : Eigen::Vector2d(s, c);
  }
};

// The real quadruple (A, B, C, D) defining the cloning transformation.
// Valid machines satisfy
//   A^2 + 2B^2 + C^2 + D^2 = 1   (normalization)
//   2AC + 2B^2 + D^2       = 0   (orthogonality)
struct MachineParams {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  double normalization_violation() const {
    return std::abs(a * a + 2.0 * b * b + c * c + d * d - 1.0);
  }
  double orthogonality_violation() const {
    return std::abs(2.0 * a * c + 2.0 * b * b + d * d);
  }
  double max_violation() const {
    return std::max(normalization_violation(), orthogonality_violation());
  }
  bool valid(double tol = kOrthoTol) const { return max_violation() <= tol; }
};

// Validating constructor for machines not produced by solve_machine.
inline MachineParams make_machine(double a, double b, double c, double d,
                                  double tol = kOrthoTol) {
  MachineParams p{a, b, c, d};
  if (!p.valid(tol)) {
    throw std::invalid_argument(
        "machine params violate orthonormality by " +
        std::to_string(p.max_violation()));
  }
  return p;
}

// Real 8-component pure state of (mode1, mode2, probe).
// Index convention: amplitudes[m1*4 + m2*2 + p], probe least significant.
struct ThreeQubitState {
  std::array<double, 8> amplitudes{};

  double norm() const {
    double n = 0.0;
    for (double x : amplitudes) n += x * x;
    return std::sqrt(n);
  }

  void validate(double tol = kNormTol) const {
    if (std::abs(norm() - 1.0) > tol) {
      throw std::invalid_argument("three-qubit state is not normalized");
    }
  }

  Eigen::Matrix<double, 8, 1> vector() const {
    Eigen::Matrix<double, 8, 1> v;
    for (int i = 0; i < 8; ++i) v(i) = amplitudes[i];
    return v;
  }
};

// The output-mode coefficients of a cloner output:
//   a = A cosθ + C sinθ, b = B(cosθ + sinθ),
//   c = C cosθ + A sinθ, d = D(cosθ + sinθ).
struct OutputCoefficients {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

inline OutputCoefficients output_coefficients(const MachineParams& p,
                                              double theta, int which = 1) {
  double ct = std::cos(theta), st = std::sin(theta);
  if (which == 2) std::swap(ct, st);
  return {p.a * ct + p.c * st, p.b * (ct + st), p.c * ct + p.a * st,
          p.d * (ct + st)};
}

// 4x4 real symmetric density matrix of the two output modes, optionally
// carrying the generating coefficients when built from a cloner output.
struct TwoModeState {
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Zero();
  std::optional<OutputCoefficients> abcd;

  void validate(double trace_tol = 1e-10, double eig_tol = 1e-10) const {
    if (std::abs(matrix.trace() - 1.0) > trace_tol) {
      throw std::invalid_argument("density matrix trace != 1");
    }
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > trace_tol) {
      throw std::invalid_argument("density matrix not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(matrix,
                                                      Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -eig_tol) {
      throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
  }
};

// Builds the two-mode density matrix directly from the output coefficients.
inline TwoModeState two_mode_from_coefficients(const OutputCoefficients& k) {
  TwoModeState rho;
  const double a = k.a, b = k.b, c = k.c, d = k.d;
  rho.matrix << a * a + d * d, a * b, a * b, a * c,
                a * b, b * b, b * b, b * c,
                a * b, b * b, b * b, b * c,
                a * c, b * c, b * c, c * c;
  rho.abcd = k;
  return rho;
}

// Symmetric feasible interval for the machine parameter B at fixed (γ, s).
struct BRange {
  double b_min = 0.0, b_max = 0.0;
  double gamma = 0.0, s = 0.0;

  bool contains(double b, double tol = 1e-12) const {
    return b >= b_min - tol && b <= b_max + tol;
  }
};

// Feasibility requires γ ≥ (1 - s)/2; then |B| ≤ (1/2)√((s + 2γ - 1)/(1 + s)).
// The same bound also reads (1/2)√(1 - 2D²) with D² = (1 - γ)/(1 + s);
// the two characterizations are checked against each other.
// Snaps a value that left [0, 1] by round-off only.
inline double snap_unit(double x) {
  if (x > 1.0 && x <= 1.0 + kRootClamp) return 1.0;
  if (x < 0.0 && x >= -kRootClamp) return 0.0;
  return x;
}

inline BRange feasible_b_range(double gamma, double s) {
  gamma = snap_unit(gamma);
  s = snap_unit(s);
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::domain_error("gamma must lie in [0, 1]");
  }
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("overlap s must lie in [0, 1]");
  }
  if (gamma < 0.5 * (1.0 - s) - kRootClamp) {
    throw std::domain_error("infeasible: gamma < (1 - s)/2");
  }
  const double arg = clamp_root_arg((s + 2.0 * gamma - 1.0) / (1.0 + s),
                                    "feasible_b_range");
  const double b_max = 0.5 * std::sqrt(arg);

  const double d2 = (1.0 - gamma) / (1.0 + s);
  const double alt = 0.5 * std::sqrt(clamp_root_arg(1.0 - 2.0 * d2,
                                                    "feasible_b_range"));
  if (std::abs(b_max - alt) > 1e-12) {
    throw std::logic_error("B-interval characterizations disagree");
  }
  return BRange{-b_max, b_max, gamma, s};
}

// Solves for the machine (A, B, C, D) on the selected branch:
//   D = √((1 - γ)/(1 + s)),  r = √((s + 2γ - 1)/(1 + s) - 4B²),
//   family 1: A = (±r + 1)/2, C = (±r - 1)/2,
//   family 2: A = (∓r - 1)/2, C = (∓r + 1)/2.
inline MachineParams solve_machine(double b, double gamma, double s,
                                   Branch branch) {
  gamma = snap_unit(gamma);
  s = snap_unit(s);
  const BRange range = feasible_b_range(gamma, s);
  if (!range.contains(b, 1e-12)) {
    throw std::domain_error("B outside the feasible interval");
  }
  const double d = std::sqrt((1.0 - gamma) / (1.0 + s));
  const double r = std::sqrt(clamp_root_arg(
      (s + 2.0 * gamma - 1.0) / (1.0 + s) - 4.0 * b * b, "solve_machine"));

  double a, c;
  switch (branch) {
    case Branch::OnePlus:  a = 0.5 * (r + 1.0);  c = 0.5 * (r - 1.0);  break;
    case Branch::OneMinus: a = 0.5 * (-r + 1.0); c = 0.5 * (-r - 1.0); break;
    case Branch::TwoPlus:  a = 0.5 * (-r - 1.0); c = 0.5 * (-r + 1.0); break;
    case Branch::TwoMinus: a = 0.5 * (r - 1.0);  c = 0.5 * (r + 1.0);  break;
    default: throw std::logic_error("unknown branch");
  }
  return make_machine(a, b, c, d);
}

// Applies the cloning transformation to input `which`, yielding the
// normalized three-qubit output with the probe-success sector
// (a, b, b, c) ⊗ |0⟩_p and the failure component d |00⟩|1⟩_p.
inline ThreeQubitState apply_machine(const MachineParams& p, double theta,
                                     int which = 1) {
  if (!p.valid()) {
    throw std::invalid_argument("machine params violate orthonormality");
  }
  if (!(theta >= 0.0 && theta <= kQuarterPi)) {
    throw std::domain_error("theta must lie in [0, pi/4]");
  }
  const OutputCoefficients k = output_coefficients(p, theta, which);
  ThreeQubitState out;
  out.amplitudes[0] = k.a;  // |00⟩|0⟩_p
  out.amplitudes[2] = k.b;  // |01⟩|0⟩_p
  out.amplitudes[4] = k.b;  // |10⟩|0⟩_p
  out.amplitudes[6] = k.c;  // |11⟩|0⟩_p
  out.amplitudes[1] = k.d;  // |00⟩|1⟩_p
  out.validate(1e-10);
  return out;
}

// Squared norm of the probe-|0⟩ projection: the success probability γ.
inline double success_probability(const ThreeQubitState& state) {
  state.validate(1e-10);
  double g = 0.0;
  for (int i = 0; i < 8; i += 2) g += state.amplitudes[i] * state.amplitudes[i];
  return g;
}

// Reduced density matrix of the two output modes (trace over the probe).
inline TwoModeState output_density(const ThreeQubitState& state) {
  state.validate(1e-10);
  TwoModeState rho;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      rho.matrix(i, j) = state.amplitudes[2 * i] * state.amplitudes[2 * j] +
                         state.amplitudes[2 * i + 1] * state.amplitudes[2 * j + 1];
    }
  }
  // Recover (a, b, c, d) when the state has the cloner-output shape.
  const auto& amp = state.amplitudes;
  if (std::abs(amp[2] - amp[4]) <= 1e-12 && std::abs(amp[3]) <= 1e-12 &&
      std::abs(amp[5]) <= 1e-12 && std::abs(amp[7]) <= 1e-12) {
    rho.abcd = OutputCoefficients{amp[0], amp[2], amp[6], amp[1]};
  }
  return rho;
}

}  // namespace cloner
