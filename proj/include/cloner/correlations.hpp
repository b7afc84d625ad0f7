#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "cloner/machine.hpp"

namespace cloner {

// sigma_y ⊗ sigma_y is real: antidiagonal (-1, 1, 1, -1).
inline const Eigen::Matrix4d& spin_flip_matrix() {
  static const Eigen::Matrix4d yy = [] {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 3) = -1.0; m(1, 2) = 1.0; m(2, 1) = 1.0; m(3, 0) = -1.0;
    return m;
  }();
  return yy;
}

// Closed-form concurrence of the cloner-output density matrix:
//   alpha = 2(b² - ac)² + c²d²,
//   beta  = 2|b² - ac| √((b² - ac)² + c²d²),
//   C = max{|√(alpha + beta) - √(alpha - beta)|, 0}.
inline double concurrence_closed(const OutputCoefficients& k) {
  const double w = k.b * k.b - k.a * k.c;
  const double cd = k.c * k.d;
  const double alpha = 2.0 * w * w + cd * cd;
  const double beta = 2.0 * std::abs(w) * std::sqrt(w * w + cd * cd);
  const double l3 = alpha + beta;
  const double l4 = std::max(alpha - beta, 0.0);
  return std::max(std::abs(std::sqrt(l3) - std::sqrt(l4)), 0.0);
}

// Wootters concurrence from the spectrum of rho (σy⊗σy) rho* (σy⊗σy).
// rho is real here (rho* = rho), so with S = √rho the product is similar
// to the symmetric matrix (S·σy⊗σy·S)², whose eigenvalues are the squared
// roots λ_i directly. The symmetric route keeps the doubly degenerate
// zero eigenvalues at machine precision, where the general nonsymmetric
// solver loses ~√ε on them.
inline double concurrence_eigen(const TwoModeState& rho) {
  rho.validate();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho.matrix);
  Eigen::Vector4d eigs = es.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    eigs(i) = eigs(i) < 0.0 ? 0.0 : eigs(i);  // clamp within -1e-12
  }
  const Eigen::Matrix4d sqrt_rho = es.eigenvectors() *
                                   eigs.cwiseSqrt().asDiagonal() *
                                   es.eigenvectors().transpose();
  const Eigen::Matrix4d sym = sqrt_rho * spin_flip_matrix() * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> ms(sym, Eigen::EigenvaluesOnly);
  std::array<double, 4> roots{};
  for (int i = 0; i < 4; ++i) roots[i] = std::abs(ms.eigenvalues()(i));
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

// von Neumann entropy in bits of a Hermitian matrix, 0 log 0 = 0.
template <typename Matrix>
double entropy_bits(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double p = es.eigenvalues()(i);
    if (p < 0.0) p = 0.0;  // round-off
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

// Projective measurement direction on the Bloch sphere: projectors onto
// cos(t/2)|0⟩ + e^{iφ} sin(t/2)|1⟩ and its orthogonal complement.
struct MeasurementBasis {
  double polar = 0.0;
  double azimuth = 0.0;

  std::array<Eigen::Matrix2cd, 2> projectors() const {
    using namespace std::complex_literals;
    Eigen::Vector2cd v;
    v << std::cos(polar / 2.0),
        std::exp(1i * azimuth) * std::sin(polar / 2.0);
    Eigen::Matrix2cd p0 = v * v.adjoint();
    Eigen::Matrix2cd p1 = Eigen::Matrix2cd::Identity() - p0;
    return {p0, p1};
  }
};

enum class MeasuredSide { A, B };

struct DiscordOptions {
  int grid_polar = 64;
  int grid_azimuth = 64;
  double refine_tol = 1e-9;
  MeasuredSide side = MeasuredSide::B;
};

namespace detail {

// Single-mode marginals of a real two-qubit density matrix.
inline Eigen::Matrix2d trace_out_second(const Eigen::Matrix4d& rho) {
  Eigen::Matrix2d out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  return out;
}

inline Eigen::Matrix2d trace_out_first(const Eigen::Matrix4d& rho) {
  Eigen::Matrix2d out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out(i, j) = rho(i, j) + rho(i + 2, j + 2);
  return out;
}

// Entropy in bits of a 2x2 Hermitian matrix with unit trace, closed form.
inline double entropy2_bits(const Eigen::Matrix2cd& rho) {
  const double tr = rho.trace().real();
  const double diff = (rho(0, 0) - rho(1, 1)).real();
  const double half_gap =
      std::sqrt(0.25 * diff * diff + std::norm(rho(0, 1)));
  double h = 0.0;
  for (double p : {0.5 * tr + half_gap, 0.5 * tr - half_gap}) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

// Average post-measurement entropy Σ_j q_j S(ρ_kept^j) for the projector
// pair defined by (t, φ) applied to the chosen side. Uses the identity
// Tr_B[(I⊗P)ρ(I⊗P)](i,i') = v† ρ_block(i,i') v for P = v v†, so no 4x4
// products are needed.
inline double conditional_entropy(const Eigen::Matrix4d& rho,
                                  const MeasurementBasis& basis,
                                  MeasuredSide side) {
  using namespace std::complex_literals;
  Eigen::Vector2cd v0;
  v0 << std::cos(basis.polar / 2.0),
      std::exp(1i * basis.azimuth) * std::sin(basis.polar / 2.0);
  Eigen::Vector2cd v1;
  v1 << -std::conj(v0(1)), std::conj(v0(0));

  double total = 0.0;
  for (const auto& v : {v0, v1}) {
    Eigen::Matrix2cd kept;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        std::complex<double> acc = 0.0;
        for (int m = 0; m < 2; ++m) {
          for (int n = 0; n < 2; ++n) {
            const double entry = side == MeasuredSide::B
                                     ? rho(2 * i + m, 2 * j + n)
                                     : rho(2 * m + i, 2 * n + j);
            acc += std::conj(v(m)) * entry * v(n);
          }
        }
        kept(i, j) = acc;
      }
    }
    const double q = kept.trace().real();
    if (q < 1e-14) continue;  // empty branch contributes nothing
    kept /= q;
    total += q * entropy2_bits(kept);
  }
  return total;
}

// Derivative-free simplex minimization in two variables.
inline std::pair<std::array<double, 2>, double> nelder_mead_2d(
    const std::function<double(double, double)>& f,
    std::array<double, 2> start, double step, double tol, int max_iter = 400) {
  struct Vertex {
    std::array<double, 2> x;
    double val;
  };
  std::array<Vertex, 3> simplex;
  simplex[0] = {start, f(start[0], start[1])};
  simplex[1] = {{start[0] + step, start[1]}, 0.0};
  simplex[1].val = f(simplex[1].x[0], simplex[1].x[1]);
  simplex[2] = {{start[0], start[1] + step}, 0.0};
  simplex[2].val = f(simplex[2].x[0], simplex[2].x[1]);

  auto eval = [&](const std::array<double, 2>& x) { return f(x[0], x[1]); };
  for (int it = 0; it < max_iter; ++it) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.val < b.val; });
    if (std::abs(simplex[2].val - simplex[0].val) < tol) break;

    const std::array<double, 2> centroid = {
        0.5 * (simplex[0].x[0] + simplex[1].x[0]),
        0.5 * (simplex[0].x[1] + simplex[1].x[1])};
    auto point = [&](double coef) {
      return std::array<double, 2>{
          centroid[0] + coef * (centroid[0] - simplex[2].x[0]),
          centroid[1] + coef * (centroid[1] - simplex[2].x[1])};
    };

    const auto refl = point(1.0);
    const double f_refl = eval(refl);
    if (f_refl < simplex[0].val) {
      const auto expd = point(2.0);
      const double f_expd = eval(expd);
      simplex[2] = f_expd < f_refl ? Vertex{expd, f_expd} : Vertex{refl, f_refl};
    } else if (f_refl < simplex[1].val) {
      simplex[2] = {refl, f_refl};
    } else {
      const auto contr = point(-0.5);
      const double f_contr = eval(contr);
      if (f_contr < simplex[2].val) {
        simplex[2] = {contr, f_contr};
      } else {
        for (int i = 1; i < 3; ++i) {
          for (int d = 0; d < 2; ++d) {
            simplex[i].x[d] = 0.5 * (simplex[i].x[d] + simplex[0].x[d]);
          }
          simplex[i].val = eval(simplex[i].x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const Vertex& a, const Vertex& b) { return a.val < b.val; });
  return {simplex[0].x, simplex[0].val};
}

}  // namespace detail

// Quantum discord via projective measurements on one subsystem:
//   Q = min_{basis} Σ_j q_j S(ρ_kept^j) + S(ρ_measured) - S(ρ_AB),
// minimized by a coarse (t, φ) grid followed by simplex refinement.
inline double quantum_discord(const TwoModeState& rho,
                              const DiscordOptions& opt = {}) {
  rho.validate();
  if (opt.grid_polar < 2 || opt.grid_azimuth < 1) {
    throw std::invalid_argument("discord grid too coarse");
  }
  const Eigen::Matrix4d& m = rho.matrix;
  const Eigen::Matrix2d marginal = opt.side == MeasuredSide::B
                                       ? detail::trace_out_first(m)
                                       : detail::trace_out_second(m);
  const double s_measured = entropy_bits<Eigen::Matrix2d>(marginal);
  const double s_joint = entropy_bits<Eigen::Matrix4d>(m);

  auto objective = [&](double t, double phi) {
    return detail::conditional_entropy(m, MeasurementBasis{t, phi}, opt.side);
  };

  double best = std::numeric_limits<double>::infinity();
  std::array<double, 2> best_x = {0.0, 0.0};
  const double pi = std::numbers::pi;
  for (int i = 0; i < opt.grid_polar; ++i) {
    const double t = pi * i / (opt.grid_polar - 1);
    for (int j = 0; j < opt.grid_azimuth; ++j) {
      const double phi = 2.0 * pi * j / opt.grid_azimuth;
      const double v = objective(t, phi);
      if (v < best) {
        best = v;
        best_x = {t, phi};
      }
    }
  }
  const double step = pi / opt.grid_polar;
  auto [x, refined] =
      detail::nelder_mead_2d(objective, best_x, step, opt.refine_tol);
  best = std::min(best, refined);

  const double q = best + s_measured - s_joint;
  return q < 0.0 ? 0.0 : q;  // clamp optimizer round-off
}

// Reduced two-mode density matrix of a pure three-qubit state (probe out).
inline Eigen::Matrix4d reduce_over_probe(const ThreeQubitState& state) {
  Eigen::Matrix4d rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      rho(i, j) = state.amplitudes[2 * i] * state.amplitudes[2 * j] +
                  state.amplitudes[2 * i + 1] * state.amplitudes[2 * j + 1];
  return rho;
}

// Tripartite tangle of a pure three-qubit state, computed from the
// two-mode reduced matrix and its spin flip:
//   τ = √([Tr ρ ρ̃]² - Tr[(ρ ρ̃)²]).
// With μ_i the eigenvalues of ρ ρ̃ the radicand equals 2 Σ_{i<j} μ_i μ_j,
// evaluated through the symmetric similarity ρ ρ̃ ~ (√ρ·σy⊗σy·√ρ)² so the
// near-zero eigenvalues do not cancel catastrophically under the square
// root.
inline double tangle_from_state(const ThreeQubitState& state) {
  state.validate(1e-10);
  const Eigen::Matrix4d rho = reduce_over_probe(state);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho);
  Eigen::Vector4d eigs = es.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    if (eigs(i) < -kRootClamp) {
      throw std::invalid_argument("reduced matrix has a negative eigenvalue");
    }
    eigs(i) = eigs(i) < 0.0 ? 0.0 : eigs(i);
  }
  const Eigen::Matrix4d sqrt_rho = es.eigenvectors() *
                                   eigs.cwiseSqrt().asDiagonal() *
                                   es.eigenvectors().transpose();
  const Eigen::Matrix4d sym = sqrt_rho * spin_flip_matrix() * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> ms(sym, Eigen::EigenvaluesOnly);
  double radicand = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double mu_i = ms.eigenvalues()(i) * ms.eigenvalues()(i);
      const double mu_j = ms.eigenvalues()(j) * ms.eigenvalues()(j);
      radicand += 2.0 * mu_i * mu_j;
    }
  }
  return std::sqrt(radicand);
}

// Closed form of the tangle for cloner outputs at (γ, B, θ):
//   τ = ((1-γ)/√2)[γ - 2B²(1 + sin 2θ) ∓ cos 2θ √(1 - 4B² - 2(1-γ)/(1 + sin 2θ))],
// where the root enters with - for the plus branches of either family and
// with + for the minus branches (the branch sign flips the sign of the
// square-root part of the machine coefficients A and C).
inline double tangle_closed(double gamma, double b, double theta,
                            Branch branch = Branch::OnePlus) {
  const double s = overlap_from_theta(theta);
  const BRange range = feasible_b_range(gamma, s);
  if (!range.contains(b, 1e-12)) {
    throw std::domain_error("B outside the feasible interval");
  }
  const double rad = clamp_root_arg(
      1.0 - 4.0 * b * b - 2.0 * (1.0 - gamma) / (1.0 + s), "tangle_closed");
  const double sign =
      (branch == Branch::OnePlus || branch == Branch::TwoPlus) ? -1.0 : 1.0;
  return ((1.0 - gamma) / std::numbers::sqrt2) *
         (gamma - 2.0 * b * b * (1.0 + s) +
          sign * std::cos(2.0 * theta) * std::sqrt(rad));
}

// Bundle of the three correlation measures with method metadata.
struct CorrelationReport {
  double concurrence = 0.0;
  double discord = 0.0;
  double tangle = 0.0;
  std::string concurrence_method;
  std::string tangle_method;
  DiscordOptions discord_options;
};

}  // namespace cloner
