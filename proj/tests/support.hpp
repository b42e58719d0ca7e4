#pragma once

// Shared helpers for the test binaries: independent reference
// implementations and invariant checks.

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hqc/fock.hpp"
#include "hqc/error.hpp"

namespace hqc::testing {

inline constexpr double kPi = std::numbers::pi;

/// Frozen high-precision values (50-digit mpmath evaluation, rounded).
namespace frozen {
inline constexpr double tau_sigma_half = 0.882496902584595;     // e^{-1/8}
inline constexpr double w2_over_pi2 = 0.227972663195260;        // 1.5^2 / pi^2
inline constexpr double e_minus2 = 0.135335283236613;           // e^{-2}
inline constexpr double sinh_ratio = 1.41951963672988;          // sinh(1.5) / 1.5
inline constexpr double sinh_ratio_sq = 2.01503599906173;
inline constexpr double p01_origin = 0.0274321478193070;        // a0=1, sigma=0.5, w=1.5
inline constexpr double p_plus = 0.559716484133360;             // a0=1, sigma=0.5
inline constexpr double p_joint_origin_plus = 0.375503803582866;
inline constexpr double mu2_sigma_half = 0.985735766091001;     // a0=1, sigma=0.5
inline constexpr double mu2_pure = 0.981684361111266;           // a0=1, tau=1
inline constexpr double mu1_plus_pure = 0.523188311911530;
inline constexpr double mu1_minus_pure = 1.626070570998663;
inline constexpr double mu2_cond_origin = 0.221199216928595;    // tau(0.5)=0.882.., y=0
inline constexpr double g_big = 0.567667641618306;              // (1 + e^{-2}) / 2
inline constexpr double g_small = 0.432332358381694;            // (1 - e^{-2}) / 2
inline constexpr double alpha0_threshold_sqrt_half = 0.540421414647312;
}  // namespace frozen

/// Coherent state from the displacement operator exp(alpha a^+ - alpha* a)
/// applied to vacuum in an enlarged space, then cut to cfg.levels().
inline CVector displaced_vacuum(cplx alpha, int levels, int work_levels = 120) {
  CMatrix a = CMatrix::Zero(work_levels, work_levels);
  for (int n = 1; n < work_levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const CMatrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
  const CMatrix d = gen.exp();
  return d.col(0).head(levels);
}

/// Physicists' Hermite polynomial by explicit recursion, H_{n+1} = 2x H_n - 2n H_{n-1}.
inline double hermite_phys(int n, double x) {
  double h0 = 1.0, h1 = 2.0 * x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

/// <y|n> from the textbook position wavefunction with x -> y / sqrt(2),
/// rescaled to the unit-variance convention, times (-i)^n.
inline cplx quad_wavefunction_reference(int n, double y) {
  const double x = y / std::sqrt(2.0);
  double log_norm = -0.25 * std::log(kPi) - 0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0));
  const double psi = std::exp(log_norm - 0.5 * x * x) * hermite_phys(n, x);
  cplx phase = 1.0;
  for (int k = 0; k < n; ++k) phase *= cplx(0.0, -1.0);
  return phase * psi / std::pow(2.0, 0.25);
}

/// Explicit Kronecker product in (oscillator, qubit) order.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline CMatrix random_hermitian(std::mt19937_64& gen, int n) {
  std::normal_distribution<double> nd;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = cplx(nd(gen), nd(gen));
  }
  return 0.5 * (m + m.adjoint());
}

/// Density invariants used by the invariant suite.
inline void check_density(const HybridOperator& rho, double tol = 1e-9) {
  const DensityDiagnostics d = diagnose_density(rho.matrix());
  CHECK(d.hermiticity_error <= tol);
  CHECK(d.trace_error <= tol);
  CHECK(d.min_eigenvalue >= -tol);
}

template <class F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected hqc::Error");
  return ErrorKind::io;
}

}  // namespace hqc::testing
