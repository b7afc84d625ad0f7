#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "cloner/correlations.hpp"
#include "cloner/fidelity.hpp"
#include "cloner/machine.hpp"

namespace cloner {

enum class CorrelationKind { Concurrence, Discord, Tangle };

inline const char* correlation_name(CorrelationKind k) {
  switch (k) {
    case CorrelationKind::Concurrence: return "concurrence";
    case CorrelationKind::Discord: return "discord";
    case CorrelationKind::Tangle: return "tangle";
  }
  throw std::logic_error("unknown correlation kind");
}

// Parameterization of one figure dataset. Figures 1/3/5 sweep B at fixed
// (θ, γ) and plot f_p against a correlation measure; figures 2/4/6 sweep
// s at fixed γ and plot f_opt at the stationary B.
struct SweepSpec {
  std::string figure = "custom";
  CorrelationKind correlation = CorrelationKind::Concurrence;
  bool optimal = false;  // true for the f_opt figures (2/4/6)
  std::vector<double> thetas;
  std::vector<double> gammas;
  int b_points = 2001;
  int s_points = 501;
  // Sweep-scale discord settings; coarser than the library default since
  // a figure evaluates thousands of states.
  DiscordOptions discord = {32, 8, 1e-9, MeasuredSide::B};

  void validate() const {
    if (b_points < 2 || s_points < 2) {
      throw std::domain_error("grid densities must be at least 2");
    }
    for (double t : thetas) {
      if (!(t >= 0.0 && t <= kQuarterPi)) {
        throw std::domain_error("theta must lie in [0, pi/4]");
      }
    }
    for (double g : gammas) {
      if (!(g >= 0.0 && g <= 1.0)) {
        throw std::domain_error("gamma must lie in [0, 1]");
      }
    }
  }
};

inline SweepSpec figure_spec(const std::string& figure) {
  const double pi = std::numbers::pi;
  SweepSpec spec;
  spec.figure = figure;
  if (figure == "fig1" || figure == "fig3" || figure == "fig5") {
    spec.thetas = {0.0, pi / 20.0, pi / 10.0, pi / 4.0};
    spec.gammas = {0.8, 0.9, 1.0};
    spec.optimal = false;
  } else if (figure == "fig2" || figure == "fig4" || figure == "fig6") {
    spec.gammas = {0.7, 0.8, 0.9, 1.0};
    spec.optimal = true;
  } else {
    throw std::domain_error("unknown figure id: " + figure);
  }
  if (figure == "fig1" || figure == "fig2") {
    spec.correlation = CorrelationKind::Concurrence;
  } else if (figure == "fig3" || figure == "fig4") {
    spec.correlation = CorrelationKind::Discord;
  } else {
    spec.correlation = CorrelationKind::Tangle;
  }
  return spec;
}

struct SweepRecord {
  std::string figure;
  std::string branch;
  double theta = 0.0;
  double gamma = 0.0;
  double s = 0.0;
  double b = 0.0;
  double correlation = 0.0;
  double fidelity = 0.0;
};

// Notices for skipped infeasible cells, reported alongside the records.
struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<std::string> notices;
};

namespace detail {

inline double correlation_value(CorrelationKind kind,
                                const OutputCoefficients& k, double gamma,
                                double b, double theta, Branch branch,
                                const DiscordOptions& opts) {
  switch (kind) {
    case CorrelationKind::Concurrence:
      return concurrence_closed(k);
    case CorrelationKind::Discord:
      return quantum_discord(two_mode_from_coefficients(k), opts);
    case CorrelationKind::Tangle:
      return tangle_closed(gamma, b, theta, branch);
  }
  throw std::logic_error("unknown correlation kind");
}

// Better of the two branches within one (A, C) family, tie to the earlier.
inline std::pair<double, Branch> family_max(const FidelityBranches& fb,
                                            int family) {
  if (family == 1) {
    return fb.f1_plus >= fb.f1_minus - 1e-12
               ? std::make_pair(fb.f1_plus, Branch::OnePlus)
               : std::make_pair(fb.f1_minus, Branch::OneMinus);
  }
  return fb.f2_plus >= fb.f2_minus - 1e-12
             ? std::make_pair(fb.f2_plus, Branch::TwoPlus)
             : std::make_pair(fb.f2_minus, Branch::TwoMinus);
}

}  // namespace detail

// Generates the dataset behind one figure. Records are ordered
// lexicographically by (theta, gamma, branch, B-or-s) so runs are
// byte-stable.
inline SweepResult figure_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;

  if (!spec.optimal) {
    // Figures 1/3/5: per (θ, γ, family), sweep B across the feasible range.
    for (double theta : spec.thetas) {
      const double s = overlap_from_theta(theta);
      for (double gamma : spec.gammas) {
        if (gamma < 0.5 * (1.0 - s) - kRootClamp) {
          std::ostringstream msg;
          msg << "skipped infeasible cell theta=" << theta
              << " gamma=" << gamma << " (gamma < (1-s)/2)";
          result.notices.push_back(msg.str());
          continue;
        }
        const BRange range = feasible_b_range(gamma, s);
        for (int family : {1, 2}) {
          for (int i = 0; i < spec.b_points; ++i) {
            const double b =
                range.b_min +
                (range.b_max - range.b_min) * i / (spec.b_points - 1);
            const FidelityBranches fb = branch_fidelities(b, gamma, s);
            const auto [f, br] = detail::family_max(fb, family);
            const MachineParams params = solve_machine(b, gamma, s, br);
            const OutputCoefficients k = output_coefficients(params, theta);
            const double corr = detail::correlation_value(
                spec.correlation, k, gamma, b, theta, br, spec.discord);
            result.records.push_back({spec.figure, branch_label(br), theta,
                                      gamma, s, b, corr, f});
          }
        }
      }
    }
  } else {
    // Figures 2/4/6: per γ, sweep s over (0, 1] at the stationary B.
    for (int j = 1; j <= spec.s_points; ++j) {
      const double s = static_cast<double>(j) / spec.s_points;
      const double theta = theta_from_overlap(s);
      for (double gamma : spec.gammas) {
        if (gamma < 0.5 * (1.0 - s) - kRootClamp) {
          std::ostringstream msg;
          msg << "skipped infeasible cell s=" << s << " gamma=" << gamma
              << " (gamma < (1-s)/2)";
          result.notices.push_back(msg.str());
          continue;
        }
        const OptimalSolution sol = optimal_solution(gamma, s);
        const FidelityBranches fb = branch_fidelities(sol.b1, gamma, s);
        const MachineParams params =
            solve_machine(sol.b1, gamma, s, fb.argmax_branch);
        const OutputCoefficients k = output_coefficients(params, theta);
        const double corr = detail::correlation_value(
            spec.correlation, k, gamma, sol.b1, theta, fb.argmax_branch,
            spec.discord);
        result.records.push_back({spec.figure,
                                  branch_label(fb.argmax_branch), theta, gamma,
                                  s, sol.b1, corr, sol.f_opt});
      }
    }
  }

  std::stable_sort(result.records.begin(), result.records.end(),
                   [](const SweepRecord& x, const SweepRecord& y) {
                     return std::tie(x.theta, x.gamma, x.branch, x.b, x.s) <
                            std::tie(y.theta, y.gamma, y.branch, y.b, y.s);
                   });
  return result;
}

// Fixed-width scientific formatting, 12 significant digits.
inline std::string format_value(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

inline void write_csv(const SweepResult& result, std::ostream& os) {
  os << "figure,branch,theta,gamma,s,B,correlation,fidelity\n";
  for (const SweepRecord& r : result.records) {
    os << r.figure << ',' << r.branch << ',' << format_value(r.theta) << ','
       << format_value(r.gamma) << ',' << format_value(r.s) << ','
       << format_value(r.b) << ',' << format_value(r.correlation) << ','
       << format_value(r.fidelity) << '\n';
  }
}

inline void write_json(const SweepResult& result, std::ostream& os) {
  nlohmann::json doc = nlohmann::json::array();
  for (const SweepRecord& r : result.records) {
    doc.push_back({{"figure", r.figure},
                   {"branch", r.branch},
                   {"theta", r.theta},
                   {"gamma", r.gamma},
                   {"s", r.s},
                   {"B", r.b},
                   {"correlation", r.correlation},
                   {"fidelity", r.fidelity}});
  }
  os << doc.dump(2) << '\n';
}

}  // namespace cloner
