#include "hqc/fock.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "hqc/error.hpp"

namespace hqc {

void FockConfig::validate() const {
  if (n_max < 1) throw Error(ErrorKind::validation, "n_max must be >= 1");
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::validation, "tol must be a positive finite number");
  }
}

HybridVector::HybridVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 4 || amps_.size() % 2 != 0) {
    throw Error(ErrorKind::dimension, "hybrid vector dimension must be 2*(n_max+1) with n_max >= 1");
  }
}

HybridVector HybridVector::normalized() const {
  const double n = amps_.norm();
  if (n == 0.0) throw Error(ErrorKind::validation, "cannot normalize the zero vector");
  return HybridVector(amps_ / n);
}

double hermiticity_error(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityDiagnostics diagnose_density(const CMatrix& m) {
  DensityDiagnostics d;
  d.hermiticity_error = hermiticity_error(m);
  d.trace_error = std::abs(m.trace() - cplx(1.0, 0.0));
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

namespace {

void check_square_hybrid(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 4 || m.rows() % 2 != 0) {
    throw Error(ErrorKind::dimension, "hybrid operator must be square with dimension 2*(n_max+1)");
  }
}

}  // namespace

HybridOperator HybridOperator::density(CMatrix m, const FockConfig& cfg) {
  check_square_hybrid(m);
  const DensityDiagnostics d = diagnose_density(m);
  if (!d.ok(cfg.tol)) {
    std::ostringstream os;
    os << "not a density operator: hermiticity error " << d.hermiticity_error
       << ", trace error " << d.trace_error << ", min eigenvalue " << d.min_eigenvalue;
    throw Error(ErrorKind::invalid_operator, os.str());
  }
  return HybridOperator(std::move(m), OperatorKind::density);
}

HybridOperator HybridOperator::observable(CMatrix m, const FockConfig& cfg) {
  check_square_hybrid(m);
  const double herr = hermiticity_error(m);
  if (herr > cfg.tol) {
    throw Error(ErrorKind::invalid_operator,
                "observable is not hermitian (error " + std::to_string(herr) + ")");
  }
  return HybridOperator(std::move(m), OperatorKind::observable);
}

HybridOperator HybridOperator::general(CMatrix m) {
  check_square_hybrid(m);
  return HybridOperator(std::move(m), OperatorKind::general);
}

HybridOperator HybridOperator::pure(const HybridVector& v, const FockConfig& cfg) {
  const CVector u = v.normalized().amplitudes();
  return density(u * u.adjoint(), cfg);
}

CMatrix HybridOperator::qubit_block(int q, int q_prime) const {
  const int levels = n_max() + 1;
  CMatrix block(levels, levels);
  for (int n = 0; n < levels; ++n) {
    for (int m = 0; m < levels; ++m) {
      block(n, m) = m_(hybrid_index(n, q), hybrid_index(m, q_prime));
    }
  }
  return block;
}

CVector coherent_vector(cplx alpha, const FockConfig& cfg) {
  cfg.validate();
  const double mod2 = std::norm(alpha);
  if (mod2 > cfg.amplitude_guard()) {
    std::ostringstream os;
    os << "coherent amplitude |alpha|^2 = " << mod2 << " exceeds the truncation guard n_max/4 = "
       << cfg.amplitude_guard();
    throw Error(ErrorKind::amplitude_guard, os.str());
  }
  CVector c(cfg.levels());
  c(0) = std::exp(-0.5 * mod2);
  for (int n = 1; n <= cfg.n_max; ++n) {
    c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return c;
}

LadderOps ladder_ops(const FockConfig& cfg) {
  cfg.validate();
  CMatrix a = CMatrix::Zero(cfg.levels(), cfg.levels());
  for (int n = 1; n <= cfg.n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  CMatrix ad = a.adjoint();
  return {std::move(a), std::move(ad)};
}

CMatrix quadrature_y(const FockConfig& cfg) {
  const LadderOps ops = ladder_ops(cfg);
  return (ops.annihilation - ops.creation) / kI;
}

QubitMatrix pauli_x() {
  QubitMatrix s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

QubitMatrix pauli_z() {
  QubitMatrix s;
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

HybridOperator tensor_operator(const CMatrix& osc, const CMatrix& qubit) {
  if (qubit.rows() != 2 || qubit.cols() != 2) {
    throw Error(ErrorKind::dimension, "qubit factor must be 2x2");
  }
  if (osc.rows() != osc.cols() || osc.rows() < 2) {
    throw Error(ErrorKind::dimension, "oscillator factor must be square with at least 2 levels");
  }
  const Eigen::Index levels = osc.rows();
  CMatrix out(2 * levels, 2 * levels);
  for (Eigen::Index n = 0; n < levels; ++n) {
    for (Eigen::Index m = 0; m < levels; ++m) {
      out.block<2, 2>(2 * n, 2 * m) = osc(n, m) * qubit;
    }
  }
  return HybridOperator::general(std::move(out));
}

HybridVector tensor_vector(const CVector& osc, const CVector& qubit) {
  if (qubit.size() != 2) throw Error(ErrorKind::dimension, "qubit factor must have 2 components");
  if (osc.size() < 2) throw Error(ErrorKind::dimension, "oscillator factor needs at least 2 levels");
  CVector out(2 * osc.size());
  for (Eigen::Index n = 0; n < osc.size(); ++n) {
    out(2 * n) = osc(n) * qubit(0);
    out(2 * n + 1) = osc(n) * qubit(1);
  }
  return HybridVector(std::move(out));
}

CMatrix partial_trace(const HybridOperator& rho, Subsystem traced) {
  if (rho.kind() != OperatorKind::density) {
    throw Error(ErrorKind::invalid_operator, "partial trace requires a density operator");
  }
  const CMatrix& m = rho.matrix();
  const int levels = rho.n_max() + 1;
  if (traced == Subsystem::qubit) {
    return rho.qubit_block(0, 0) + rho.qubit_block(1, 1);
  }
  CMatrix q = CMatrix::Zero(2, 2);
  for (int n = 0; n < levels; ++n) q += m.block<2, 2>(2 * n, 2 * n);
  return q;
}

cplx expectation(const HybridOperator& rho, const HybridOperator& obs) {
  if (rho.dim() != obs.dim()) {
    throw Error(ErrorKind::dimension, "expectation: operator dimensions differ");
  }
  // tr(A B) = sum_ij A_ij B_ji
  return (rho.matrix().array() * obs.matrix().transpose().array()).sum();
}

}  // namespace hqc
