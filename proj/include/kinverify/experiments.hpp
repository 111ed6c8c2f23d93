#pragma once

// Orchestration: the verification suites behind the CLI subcommands and the
// acceptance harness, the theorem-level ratio sweeps, the scaling-exponent
// fits, and the lambda-balancing of the multiplicative estimate.

#include <string>
#include <vector>

#include "kinverify/defect.hpp"
#include "kinverify/report.hpp"

namespace kinv {

struct ExperimentConfig {
    int grid_n = 48;  // t and v resolution; the x-axis uses a power of two
    double p = 2.0;
    std::vector<double> tau_list{1.0};
    std::vector<double> lambda_list{0.25, 0.5, 1.0, 2.0, 4.0};
    SplitVariant family = SplitVariant::S0Zero;
    bool quick = false;
};

// 1/q = 1/p + 1/Q with Q = 6; p = 2 gives q = 3/2.
double derived_q(double p);
// 2/3 - (d+1)/Q = 1/3 for d = 1.
double sigma_exponent();

struct CorollaryInputs {
    double A = 0.0;  // ||D_x^{1/3} f||_p (informational; balancing uses B, C, D)
    double B = 0.0;  // ||d_v f||_p
    double C = 0.0;  // ||S0||_p
    double D = 0.0;  // ||S1||_q
};

struct BalanceResult {
    double lambda = 0.0;
    double bound = 0.0;
    std::string branch;
};

// Case analysis on the objective lambda^{-1/3} B + lambda^{2/3} C +
// lambda^{sigma} D: lambda0 = B/C, lambda1 = (B/D)^{1/(sigma+1/3)}; B = 0 or
// C = D = 0 drive the bound to 0 in the respective limits.
BalanceResult balance_lambda(const CorollaryInputs& in);

// Verification suites.  Each returns one row per check with the tolerance
// that gates it; `quick` swaps in reduced resolutions with matching relaxed
// tolerances (recorded in the row notes).
ReportSet verify_group_suite(bool quick = false);
ReportSet verify_trajectory_suite(bool quick = false);
ReportSet verify_kernel_suite(bool quick = false);
ReportSet verify_defect_suite(int grid_n = 48, double tau = 1.0,
                              bool quick = false, bool with_refinement = true);
ReportSet run_lp_suite(bool quick = false);
ReportSet run_commute_suite(bool quick = false);
ReportSet run_step5_suite(bool quick = false);
ReportSet run_besov_experiment(const ExperimentConfig& cfg);
ReportSet run_sobolev_experiment(const ExperimentConfig& cfg);
ReportSet run_scaling_experiment(const ExperimentConfig& cfg);
ReportSet run_balance_suite(int n_random = 100);

// The union the `all` subcommand executes.
ReportSet run_all(const ExperimentConfig& cfg);

}  // namespace kinv
