#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hqc/fock.hpp"

namespace hqc {

/// Hermitian witness observable. alpha0 is set for the cat witness.
struct WitnessSpec {
  HybridOperator L;
  std::optional<double> alpha0;
};

/// |a0><-a0| (x) |0><1| + |-a0><a0| (x) |1><0|
WitnessSpec cat_witness(double alpha0, const FockConfig& cfg);

/// Hermitian observable wrapper; throws Error(invalid_operator) otherwise.
WitnessSpec make_witness(CMatrix L, const FockConfig& cfg);

/// Side 1: tr_1[L (|a><a| (x) 1)], an operator on the qubit.
/// Side 2: tr_2[L (1 (x) |a><a|)], an operator on the oscillator.
CMatrix reduce_witness(const HybridOperator& L, const CVector& a, Subsystem side);

struct SeparabilityEigen {
  double g = 0;
  CVector a1;  // oscillator factor
  CVector a2;  // qubit factor
  double residual = 0;  // max of both eigen-equation residual norms
  int iterations = 0;
  bool maximizing = true;
  bool converged = false;
  std::vector<double> history;  // g after every half-step
};

struct SeparabilityResult {
  std::vector<SeparabilityEigen> eigenvalues;  // converged, deduplicated
  double g_min = 0;
  double g_max = 0;
  int restarts_used = 0;
  int non_converged = 0;
  std::vector<std::string> warnings;

  /// Eigenvalues sorted descending, merged within `radius`.
  std::vector<double> distinct_values(double radius) const;
};

struct SeesawOptions {
  int restarts = 64;
  int max_iter = 500;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Alternating eigen-optimization over the two tensor factors, run for
/// both the maximizing and the minimizing branch of every restart.
SeparabilityResult seesaw_solve(const WitnessSpec& w, const SeesawOptions& opts = {});

struct AnalyticSepEig {
  double g;
  CVector a1;
  QubitVector a2;
};

/// g = +-(1 +-' e^{-2 a0^2}) / 2, sorted descending, with the cat-state
/// and qubit eigenvectors.
std::vector<AnalyticSepEig> analytic_sep_eigs(double alpha0, const FockConfig& cfg);
std::vector<double> analytic_sep_values(double alpha0);

/// (1 + e^{-2 a0^2}) / 2
double separable_bound(double alpha0);

struct WitnessVerdict {
  double expectation = 0;
  double g_min = 0;
  double g_max = 0;
  bool entangled = false;
};

/// Uses the analytic bound; requires w.alpha0.
WitnessVerdict witness_verdict(const HybridOperator& rho, const WitnessSpec& w, double tol = 1e-9);
/// Uses the see-saw bounds [g_min, g_max].
WitnessVerdict witness_verdict(const HybridOperator& rho, const WitnessSpec& w,
                               const SeparabilityResult& bounds, double tol = 1e-9);

/// Smallest tau that the cat witness detects at this alpha0.
double detection_threshold(double alpha0);
/// sigma below which dephasing stays detectable; nullopt when nothing is.
std::optional<double> sigma_threshold(double alpha0);
/// alpha0 above which a state with this tau is detected; nullopt when never.
std::optional<double> alpha0_threshold(double tau);

struct WitnessSweepRow {
  double alpha0;
  double g_sep;
  double expectation_sigma0;
  double expectation_sigma_sqrt05;
  double expectation_sigma_sqrt2;
  std::optional<double> g_max_seesaw;
};

WitnessSweepRow witness_sweep_row(double alpha0);

/// Columns alpha0,g_sep,expectation_sigma0,expectation_sigma_sqrt05,
/// expectation_sigma_sqrt2 and, when any row carries it, g_max_seesaw.
void write_witness_csv(const std::vector<WitnessSweepRow>& rows, std::ostream& os);

}  // namespace hqc
