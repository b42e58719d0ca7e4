#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "hqc/fock.hpp"
#include "hqc/measurement.hpp"
#include "hqc/states.hpp"

namespace hqc {

/// Minors below 1 - kVerdictTolerance are reported as nonclassical.
inline constexpr double kVerdictTolerance = 1e-6;

struct MomentVerdicts {
  bool squeezing = false;           // mu1 < 1
  bool qubit_nonclassical = false;  // mu2 < 1
  bool cross_nonclassical = false;  // mu12 < 1
};

/// Second-order moments of v = (1 (x) 1, y (x) 1, 1 (x) sigma_x).
struct MomentReport {
  Eigen::Matrix3d M = Eigen::Matrix3d::Identity();
  double mu1 = 1.0;   // variance of y
  double mu2 = 1.0;   // variance of sigma_x
  double mu12 = 1.0;  // det(M)
  /// mu1 * mu2 - covariance^2; equal to det(M) up to rounding.
  double mu12_expanded = 1.0;
  MomentVerdicts verdicts;
};

MomentVerdicts verdicts_for(double mu1, double mu2, double mu12);

MomentReport moment_matrix(const HybridOperator& rho);

struct Minors {
  double mu1;
  double mu2;
  double mu12;
};

/// Dephased cat: (1, 1 - tau^2 e^{-4 a0^2}, 1 - tau^2 e^{-4 a0^2}).
Minors closed_form_minors(const CatParams& params);

/// Variance of y in the oscillator state conditioned on the sigma_x outcome.
double conditional_variance_y(const HybridOperator& rho, Outcome s);
/// 1 -+ 4 a0^2 tau e^{-2 a0^2} / (1 +- tau e^{-2 a0^2})
double conditional_variance_y_closed_form(const CatParams& params, Outcome s);

/// Variance of sigma_x in the qubit state conditioned on the momentum y.
double conditional_variance_sigmax(const HybridOperator& rho, double y);
/// 1 - tau^2 cos^2(2 a0 y)
double conditional_variance_sigmax_closed_form(const CatParams& params, double y);

struct MomentSweepRow {
  double alpha0;
  Dephasing dephasing;
  double tau;
  double mu1, mu2, mu12;
  double mu1_plus, mu1_minus;
};

/// Closed-form row for one parameter set.
MomentSweepRow moment_sweep_row(const CatParams& params);

/// Columns alpha0,sigma,tau,mu1,mu2,mu12,mu1_plus,mu1_minus.
void write_moment_sweep_csv(const std::vector<MomentSweepRow>& rows, std::ostream& os);
/// Columns y,mu2_cond.
void write_conditional_sigmax_csv(const std::vector<double>& ys, const std::vector<double>& mu2,
                                  std::ostream& os);

}  // namespace hqc
