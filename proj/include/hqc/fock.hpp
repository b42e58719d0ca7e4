#pragma once

// Truncated Fock space (levels 0..n_max) tensored with a qubit.
//
// Composite index convention, used everywhere in the library:
//   index(n, q) = 2 * n + q      (Fock-major, qubit-minor)
// so a hybrid operator is a (n_max+1) x (n_max+1) grid of 2x2 qubit blocks.

#include <Eigen/Dense>
#include <complex>

namespace hqc {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using QubitVector = Eigen::Vector2cd;
using QubitMatrix = Eigen::Matrix2cd;

inline constexpr cplx kI{0.0, 1.0};

struct FockConfig {
  int n_max = 40;
  double tol = 1e-9;

  int levels() const { return n_max + 1; }
  int hybrid_dim() const { return 2 * (n_max + 1); }
  /// Largest admissible |alpha|^2 for coherent amplitudes.
  double amplitude_guard() const { return n_max / 4.0; }

  /// Throws Error(validation) unless n_max >= 1 and tol > 0.
  void validate() const;
};

enum class Subsystem { oscillator = 1, qubit = 2 };
enum class OperatorKind { density, observable, general };

constexpr int hybrid_index(int n, int q) { return 2 * n + q; }

class HybridVector {
 public:
  explicit HybridVector(CVector amplitudes);

  int n_max() const { return static_cast<int>(amps_.size()) / 2 - 1; }
  int dim() const { return static_cast<int>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  cplx operator()(int n, int q) const { return amps_(hybrid_index(n, q)); }

  double norm() const { return amps_.norm(); }
  HybridVector normalized() const;

 private:
  CVector amps_;
};

class HybridOperator {
 public:
  /// Validates hermiticity, unit trace and positivity (smallest eigenvalue
  /// of the hermitized matrix >= -tol). Throws Error(invalid_operator).
  static HybridOperator density(CMatrix m, const FockConfig& cfg);
  static HybridOperator observable(CMatrix m, const FockConfig& cfg);
  static HybridOperator general(CMatrix m);
  static HybridOperator pure(const HybridVector& v, const FockConfig& cfg);

  const CMatrix& matrix() const { return m_; }
  OperatorKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  int n_max() const { return dim() / 2 - 1; }

  /// Oscillator operator <q| X |q'> for fixed qubit indices.
  CMatrix qubit_block(int q, int q_prime) const;

 private:
  HybridOperator(CMatrix m, OperatorKind kind) : m_(std::move(m)), kind_(kind) {}

  CMatrix m_;
  OperatorKind kind_;
};

struct DensityDiagnostics {
  double hermiticity_error = 0.0;  // max |X - X^dagger|
  double trace_error = 0.0;        // |tr X - 1|
  double min_eigenvalue = 0.0;     // of (X + X^dagger)/2

  bool ok(double tol) const {
    return hermiticity_error <= tol && trace_error <= tol && min_eigenvalue >= -tol;
  }
};

DensityDiagnostics diagnose_density(const CMatrix& m);
double hermiticity_error(const CMatrix& m);

/// c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!). Throws Error(amplitude_guard)
/// when |alpha|^2 exceeds cfg.amplitude_guard(); the vector is never
/// renormalized.
CVector coherent_vector(cplx alpha, const FockConfig& cfg);

struct LadderOps {
  CMatrix annihilation;
  CMatrix creation;
};

LadderOps ladder_ops(const FockConfig& cfg);

/// y = (a - a^dagger) / i, vacuum variance 1.
CMatrix quadrature_y(const FockConfig& cfg);

QubitMatrix pauli_x();
QubitMatrix pauli_z();

/// Kronecker product in (oscillator x qubit) order. The qubit factor must be
/// 2-dimensional, otherwise Error(dimension).
HybridOperator tensor_operator(const CMatrix& osc, const CMatrix& qubit);
HybridVector tensor_vector(const CVector& osc, const CVector& qubit);

/// Dispatches on shape: two column vectors give a HybridVector, anything
/// else a HybridOperator.
template <typename A, typename B>
auto tensor(const Eigen::MatrixBase<A>& osc, const Eigen::MatrixBase<B>& qubit) {
  if constexpr (A::ColsAtCompileTime == 1 && B::ColsAtCompileTime == 1) {
    return tensor_vector(CVector(osc), CVector(qubit));
  } else {
    return tensor_operator(CMatrix(osc), CMatrix(qubit));
  }
}

/// Traces out `traced`; returns the reduced operator of the other subsystem.
/// Requires a density operator.
CMatrix partial_trace(const HybridOperator& rho, Subsystem traced);

/// tr(rho * obs). Dimensions must agree.
cplx expectation(const HybridOperator& rho, const HybridOperator& obs);

}  // namespace hqc
