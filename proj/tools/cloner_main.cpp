#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cloner/correlations.hpp"
#include "cloner/fidelity.hpp"
#include "cloner/machine.hpp"
#include "cloner/nocorr.hpp"
#include "cloner/oracle.hpp"
#include "cloner/sweep.hpp"
#include "cloner/verify.hpp"

namespace {

void print_point_report(double b, double gamma, double theta,
                        cloner::Branch branch) {
  using namespace cloner;
  const double s = overlap_from_theta(theta);
  const MachineParams params = solve_machine(b, gamma, s, branch);
  const FidelityBranches fb = branch_fidelities(b, gamma, s);
  const ThreeQubitState out = apply_machine(params, theta);
  const TwoModeState rho = output_density(out);

  std::cout << std::setprecision(12);
  std::cout << "point: B=" << b << " gamma=" << gamma << " theta=" << theta
            << " s=" << s << " branch=" << branch_label(branch) << "\n";
  std::cout << "machine: A=" << params.a << " B=" << params.b
            << " C=" << params.c << " D=" << params.d << "\n";
  std::cout << "success_probability: " << success_probability(out) << "\n";
  std::cout << "fidelity_general: " << fidelity_general(params, theta) << "\n";
  std::cout << "branch_fidelities: f1+=" << fb.f1_plus
            << " f1-=" << fb.f1_minus << " f2+=" << fb.f2_plus
            << " f2-=" << fb.f2_minus << "\n";
  std::cout << "f_p: " << fb.f_p << " (branch "
            << branch_label(fb.argmax_branch) << ")\n";
  if (s > 0.0) {
    const OptimalSolution sol = optimal_solution(gamma, s);
    std::cout << "optimal: B1=" << sol.b1 << " f_opt=" << sol.f_opt << "\n";
  }
  std::cout << "concurrence: " << concurrence_eigen(rho) << "\n";
  std::cout << "discord: " << quantum_discord(rho) << "\n";
  std::cout << "tangle: " << tangle_from_state(out) << "\n";

  const CrossCheckReport check = cross_check(params, theta);
  std::cout << "oracle cross-check:\n";
  for (const CheckEntry& e : check.entries) {
    std::cout << "  " << (e.passed ? "ok  " : "FAIL") << ' ' << e.quantity
              << " diff=" << e.difference << " tol=" << e.tolerance << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unified 1->2 state-dependent / probabilistic quantum cloning lab"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value config file");

  // point
  double pt_b = 0.0, pt_gamma = 1.0, pt_theta = 0.0;
  std::string pt_branch = "1+";
  auto* point = app.add_subcommand("point", "Full report at one (B, gamma, theta, branch)");
  point->add_option("--b", pt_b, "Machine parameter B");
  point->add_option("--gamma", pt_gamma, "Success probability")->required();
  point->add_option("--theta", pt_theta, "Input angle in [0, pi/4]")->required();
  point->add_option("--branch", pt_branch, "Branch tag: 1+, 1-, 2+ or 2-");

  // sweep
  std::string sw_figure, sw_out;
  bool sw_json = false;
  int sw_b_points = 2001, sw_s_points = 501;
  int sw_grid_polar = 32, sw_grid_azimuth = 8;
  auto* sweep = app.add_subcommand("sweep", "Emit the dataset behind one figure");
  sweep->add_option("--figure", sw_figure, "fig1 .. fig6")->required();
  sweep->add_option("--out", sw_out, "Output file (default stdout)");
  sweep->add_flag("--json", sw_json, "Emit JSON instead of CSV");
  sweep->add_option("--b-points", sw_b_points, "B-grid density for figs 1/3/5");
  sweep->add_option("--s-points", sw_s_points, "s-grid density for figs 2/4/6");
  sweep->add_option("--discord-grid-polar", sw_grid_polar,
                    "Discord grid points in the polar angle");
  sweep->add_option("--discord-grid-azimuth", sw_grid_azimuth,
                    "Discord grid points in the azimuth angle");

  // verify
  unsigned long long vf_seed = 42;
  int vf_trials = 200;
  auto* verify = app.add_subcommand("verify", "Run the invariant suite at random points");
  verify->add_option("--seed", vf_seed, "RNG seed");
  verify->add_option("--trials", vf_trials, "Number of random feasible points");

  // nocorr
  double nc_s = 0.0;
  int nc_branch = 1;
  auto* nocorr = app.add_subcommand("nocorr", "Correlation-free cloner at overlap s");
  nocorr->add_option("--s", nc_s, "Overlap in [0, 1]")->required();
  nocorr->add_option("--branch", nc_branch, "Parameter family, 1 or 2");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*point) {
      print_point_report(pt_b, pt_gamma, pt_theta,
                         cloner::branch_from_label(pt_branch));
    } else if (*sweep) {
      cloner::SweepSpec spec = cloner::figure_spec(sw_figure);
      spec.b_points = sw_b_points;
      spec.s_points = sw_s_points;
      spec.discord.grid_polar = sw_grid_polar;
      spec.discord.grid_azimuth = sw_grid_azimuth;
      const cloner::SweepResult result = cloner::figure_sweep(spec);
      for (const std::string& notice : result.notices) {
        std::cerr << "notice: " << notice << "\n";
      }
      if (!sw_out.empty()) {
        std::ofstream os(sw_out);
        if (!os) throw std::runtime_error("cannot open " + sw_out);
        sw_json ? cloner::write_json(result, os)
                : cloner::write_csv(result, os);
      } else {
        sw_json ? cloner::write_json(result, std::cout)
                : cloner::write_csv(result, std::cout);
      }
    } else if (*verify) {
      const cloner::VerifyReport report =
          cloner::run_verification(vf_seed, vf_trials);
      std::cout << std::setprecision(6);
      std::cout << "verification: seed=" << report.seed
                << " trials=" << report.trials << "\n";
      if (report.trials == 0) {
        std::cout << "note: vacuous run, no random points checked\n";
      }
      for (const cloner::VerifyCheck& c : report.checks) {
        std::cout << "  " << (c.passed ? "ok  " : "FAIL") << ' ' << c.name
                  << " max_dev=" << c.max_deviation << " tol=" << c.tolerance
                  << "\n";
      }
      std::cout << (report.all_passed ? "all checks passed"
                                      : "verification FAILED")
                << "\n";
      return report.all_passed ? 0 : 2;
    } else if (*nocorr) {
      const cloner::NocorrSolution sol = cloner::nocorr_params(nc_s, nc_branch);
      std::cout << std::setprecision(12);
      std::cout << "nocorr: s=" << sol.s << " branch=" << sol.branch << "\n";
      std::cout << "machine: A=" << sol.params.a << " B=" << sol.params.b
                << " C=" << sol.params.c << " D=" << sol.params.d << "\n";
      std::cout << "f_no: " << sol.f_no << "\n";
      const cloner::ProductReport pr =
          cloner::verify_product_output(nc_s, nc_branch);
      std::cout << "chi_tilde: (" << pr.chi_tilde(0) << ", " << pr.chi_tilde(1)
                << "), matched sign " << (pr.matched_sign > 0 ? '+' : '-')
                << "\n";
      for (const cloner::ProductCheck& c : pr.checks) {
        std::cout << "  " << (c.passed ? "ok  " : "FAIL") << ' ' << c.name
                  << " dev=" << c.deviation << " tol=" << c.tolerance << "\n";
      }
      if (!pr.all_passed) return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
