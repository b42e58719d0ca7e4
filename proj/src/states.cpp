#include "hqc/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hqc/error.hpp"
#include "hqc/quadrature.hpp"

namespace hqc {

Dephasing Dephasing::gaussian(double sigma) {
  if (std::isinf(sigma) && sigma > 0) return complete();
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::validation, "dephasing sigma must be >= 0");
  }
  return Dephasing(sigma, false);
}

Dephasing Dephasing::parse(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "infinity" || t == "+inf") return complete();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorKind::validation, "cannot parse dephasing sigma '" + text + "'");
  }
  if (pos != t.size()) throw Error(ErrorKind::validation, "cannot parse dephasing sigma '" + text + "'");
  return gaussian(v);
}

double Dephasing::sigma() const {
  return complete_ ? std::numeric_limits<double>::infinity() : sigma_;
}

double Dephasing::tau() const { return complete_ ? 0.0 : std::exp(-0.5 * sigma_ * sigma_); }

std::string Dephasing::to_string() const {
  if (complete_) return "inf";
  std::ostringstream os;
  os.precision(12);
  os << sigma_;
  return os.str();
}

void CatParams::validate() const {
  if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) {
    throw Error(ErrorKind::validation, "alpha0 must be a finite non-negative real");
  }
  if (!std::isfinite(phi)) throw Error(ErrorKind::validation, "phi must be finite");
}

namespace {

CVector qubit_basis(int n) {
  CVector q = CVector::Zero(2);
  q(n) = 1.0;
  return q;
}

}  // namespace

HybridVector classical_product(cplx alpha, int n, const FockConfig& cfg) {
  if (n != 0 && n != 1) throw Error(ErrorKind::validation, "qubit label must be 0 or 1");
  return tensor(coherent_vector(alpha, cfg), qubit_basis(n));
}

HybridVector cat_pure(const CatParams& params, const FockConfig& cfg) {
  params.validate();
  const CVector plus = coherent_vector(params.alpha0, cfg);
  const CVector minus = coherent_vector(-params.alpha0, cfg);
  const CVector v = (tensor(plus, qubit_basis(0)).amplitudes() +
                     std::polar(1.0, params.phi) * tensor(minus, qubit_basis(1)).amplitudes()) /
                    std::sqrt(2.0);
  return HybridVector(v);
}

HybridOperator dephased_cat_with_coherence(double alpha0, cplx coherence,
                                           const FockConfig& cfg) {
  if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) {
    throw Error(ErrorKind::validation, "alpha0 must be a finite non-negative real");
  }
  if (std::abs(coherence) > 1.0 + 1e-12) {
    throw Error(ErrorKind::validation, "phase coherence must satisfy |tau| <= 1");
  }
  const CVector plus = coherent_vector(alpha0, cfg);
  const CVector minus = coherent_vector(-alpha0, cfg);
  QubitMatrix e00 = QubitMatrix::Zero(), e11 = QubitMatrix::Zero();
  QubitMatrix e10 = QubitMatrix::Zero(), e01 = QubitMatrix::Zero();
  e00(0, 0) = 1.0;
  e11(1, 1) = 1.0;
  e10(1, 0) = 1.0;
  e01(0, 1) = 1.0;
  CMatrix m = 0.5 * (tensor(CMatrix(plus * plus.adjoint()), e00).matrix() +
                     tensor(CMatrix(minus * minus.adjoint()), e11).matrix());
  m += 0.5 * coherence * tensor(CMatrix(minus * plus.adjoint()), e10).matrix();
  m += 0.5 * std::conj(coherence) * tensor(CMatrix(plus * minus.adjoint()), e01).matrix();
  return HybridOperator::density(std::move(m), cfg);
}

HybridOperator dephased_cat(const CatParams& params, const FockConfig& cfg) {
  params.validate();
  return dephased_cat_with_coherence(params.alpha0, params.tau(), cfg);
}

ExampleState example_state(ExampleKind kind, cplx alpha, const FockConfig& cfg) {
  std::optional<std::string> warning;
  if (alpha == cplx(0.0, 0.0)) {
    warning = "alpha = 0: example state degenerates to a product with the vacuum";
  }
  const CVector plus = coherent_vector(alpha, cfg);
  const CVector minus = coherent_vector(-alpha, cfg);
  const CVector q0 = qubit_basis(0), q1 = qubit_basis(1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  switch (kind) {
    case ExampleKind::phi: {
      const double norm = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-2.0 * std::norm(alpha))));
      return {tensor(CVector((plus + minus) * norm), q0), warning};
    }
    case ExampleKind::psi:
      return {tensor(plus, CVector((q0 + q1) * inv_sqrt2)), warning};
    case ExampleKind::chi:
      return {HybridVector(CVector((tensor(plus, q0).amplitudes() + tensor(minus, q1).amplitudes()) *
                                   inv_sqrt2)),
              warning};
    case ExampleKind::mixed_superposition: {
      const CVector v = tensor(CVector(plus + minus), CVector(q0 + q1)).amplitudes() +
                        tensor(CVector(plus + kI * minus), CVector(q0 + kI * q1)).amplitudes();
      return {HybridVector(v).normalized(), warning};
    }
  }
  throw Error(ErrorKind::validation, "unknown example kind");
}

double dephasing_kernel_check(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::validation, "kernel check requires 0 < sigma < inf");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  constexpr int kCap = 1000;
  const int k_max = static_cast<int>(std::ceil(5.0 * sigma / two_pi)) + 2;
  if (k_max > kCap) {
    throw Error(ErrorKind::convergence, "wrapped Gaussian image sum exceeds the |k| cap");
  }
  const double norm = 1.0 / std::sqrt(two_pi * sigma * sigma);
  auto wrapped = [&](double phi) {
    double s = 0.0;
    for (int k = -k_max; k <= k_max; ++k) {
      const double d = phi - two_pi * k;
      s += std::exp(-d * d / (2.0 * sigma * sigma));
    }
    return s * norm;
  };
  const double re = quad::integrate([&](double p) { return wrapped(p) * std::cos(p); }, 0.0, two_pi,
                                    1e-13, 1e-12).value;
  const double im = quad::integrate([&](double p) { return wrapped(p) * std::sin(p); }, 0.0, two_pi,
                                    1e-13, 1e-12).value;
  if (std::abs(im) > 1e-9) {
    throw Error(ErrorKind::accuracy, "wrapped Gaussian kernel has a non-negligible imaginary part");
  }
  return re;
}

cplx dephasing_coherence(const std::function<double(double)>& weight) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double mass = quad::integrate(weight, 0.0, two_pi).value;
  if (!(mass > 0.0)) throw Error(ErrorKind::validation, "phase weight must have positive mass");
  const double re = quad::integrate([&](double p) { return weight(p) * std::cos(p); }, 0.0, two_pi).value;
  const double im = quad::integrate([&](double p) { return weight(p) * std::sin(p); }, 0.0, two_pi).value;
  return cplx(re, im) / mass;
}

}  // namespace hqc
