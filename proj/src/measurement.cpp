#include "hqc/measurement.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hqc/csv.hpp"
#include "hqc/error.hpp"
#include "hqc/quadrature.hpp"

namespace hqc {

namespace {

constexpr double kPi = std::numbers::pi;

// |y> (x) |s> in the composite basis: components conj(<y|n>) <q|s>.
CVector measurement_vector(double y, Outcome s, int n_max) {
  const CVector yv = quad_wavefunctions(y, n_max).conjugate();
  CVector v(2 * (n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    v(hybrid_index(n, 0)) = yv(n) * qubit_projection(s, 0);
    v(hybrid_index(n, 1)) = yv(n) * qubit_projection(s, 1);
  }
  return v;
}

void require_density(const HybridOperator& rho, const char* what) {
  if (rho.kind() != OperatorKind::density) {
    throw Error(ErrorKind::invalid_operator, std::string(what) + " requires a density operator");
  }
}

}  // namespace

double qubit_projection(Outcome s, int n) {
  if (n != 0 && n != 1) throw Error(ErrorKind::validation, "qubit label must be 0 or 1");
  const double r = 1.0 / std::sqrt(2.0);
  return n == 0 ? r : sign_of(s) * r;
}

CVector quad_wavefunctions(double y, int n_max) {
  CVector out(n_max + 1);
  double prev = 0.0;
  double cur = std::exp(-0.25 * y * y) / std::pow(2.0 * kPi, 0.25);
  cplx phase = 1.0;  // (-i)^n
  for (int n = 0; n <= n_max; ++n) {
    out(n) = phase * cur;
    const double next = (y * cur - std::sqrt(static_cast<double>(n)) * prev) / std::sqrt(n + 1.0);
    prev = cur;
    cur = next;
    phase *= -kI;
  }
  return out;
}

cplx quad_wavefunction(int n, double y, const FockConfig& cfg) {
  if (n < 0 || n > cfg.n_max) {
    throw Error(ErrorKind::validation, "Fock index out of range for quadrature wavefunction");
  }
  return quad_wavefunctions(y, n)(n);
}

JointDistribution::JointDistribution(Density density, Marginal marginal, Provenance provenance,
                                     std::optional<double> reliable_abs_y)
    : density_(std::move(density)),
      marginal_(std::move(marginal)),
      provenance_(std::move(provenance)),
      reliable_abs_y_(reliable_abs_y) {}

JointDistribution joint_closed_form(const CatParams& params) {
  params.validate();
  const double tau = params.tau();
  const double a0 = params.alpha0;
  auto density = [tau, a0](double y, Outcome s) {
    return std::exp(-0.5 * y * y) / (2.0 * std::sqrt(2.0 * kPi)) *
           (1.0 + sign_of(s) * tau * std::cos(2.0 * a0 * y));
  };
  auto marginal = [tau, a0](Outcome s) {
    return 0.5 * (1.0 + sign_of(s) * tau * std::exp(-2.0 * a0 * a0));
  };
  return JointDistribution(density, marginal, JointDistribution::ClosedForm{params});
}

JointDistribution joint_numeric(const HybridOperator& rho) {
  require_density(rho, "joint distribution");
  auto shared = std::make_shared<const HybridOperator>(rho);
  const int n_max = rho.n_max();
  auto density = [shared, n_max](double y, Outcome s) {
    const CVector v = measurement_vector(y, s, n_max);
    return v.dot(shared->matrix() * v).real();
  };
  auto marginal = [shared](Outcome s) {
    double p = 0.0;
    const CMatrix& m = shared->matrix();
    const int levels = shared->n_max() + 1;
    for (int n = 0; n < levels; ++n) {
      for (int q = 0; q < 2; ++q) {
        for (int qp = 0; qp < 2; ++qp) {
          p += (m(hybrid_index(n, q), hybrid_index(n, qp)) * qubit_projection(s, q) *
                qubit_projection(s, qp)).real();
        }
      }
    }
    return p;
  };
  return JointDistribution(density, marginal, JointDistribution::Numeric{shared},
                           2.0 * std::sqrt(static_cast<double>(n_max)));
}

Conditionals::Conditionals(JointDistribution joint, double floor)
    : joint_(std::move(joint)), floor_(floor) {}

double Conditionals::y_given(double y, Outcome s) const {
  const double ps = joint_.marginal(s);
  if (ps < floor_) {
    throw Error(ErrorKind::undefined_conditional,
                std::string("conditioning on outcome ") + to_string(s) + " of zero probability");
  }
  return joint_(y, s) / ps;
}

double Conditionals::outcome_given(Outcome s, double y) const {
  const double py = joint_.marginal_y(y);
  if (py < floor_) {
    std::ostringstream os;
    os << "conditioning on y = " << y << " of vanishing density";
    throw Error(ErrorKind::undefined_conditional, os.str());
  }
  return joint_(y, s) / py;
}

Conditionals conditionals(const JointDistribution& joint) { return Conditionals(joint); }

ConditionalState conditional_qubit_state(const HybridOperator& rho, double y) {
  require_density(rho, "conditional qubit state");
  const CVector yv = quad_wavefunctions(y, rho.n_max()).conjugate();  // |y> in Fock basis
  CMatrix q(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) q(a, b) = yv.dot(rho.qubit_block(a, b) * yv);
  }
  const double weight = q.trace().real();
  if (weight < kConditioningFloor) {
    std::ostringstream os;
    os << "conditioning on y = " << y << " of vanishing density";
    throw Error(ErrorKind::undefined_conditional, os.str());
  }
  return {q / weight, Condition{std::nullopt, y}, weight};
}

ConditionalState conditional_oscillator_state(const HybridOperator& rho, Outcome s) {
  require_density(rho, "conditional oscillator state");
  const int levels = rho.n_max() + 1;
  CMatrix osc = CMatrix::Zero(levels, levels);
  for (int q = 0; q < 2; ++q) {
    for (int qp = 0; qp < 2; ++qp) {
      osc += rho.qubit_block(q, qp) * (qubit_projection(s, qp) * qubit_projection(s, q));
    }
  }
  const double weight = osc.trace().real();
  if (weight < kConditioningFloor) {
    throw Error(ErrorKind::undefined_conditional,
                std::string("conditioning on outcome ") + to_string(s) + " of zero probability");
  }
  return {osc / weight, Condition{s, std::nullopt}, weight};
}

QubitMatrix conditional_qubit_state_closed_form(const CatParams& params, double y) {
  params.validate();
  const cplx c = params.tau() * std::polar(1.0, 2.0 * params.alpha0 * y);
  QubitMatrix q;
  q << 0.5, 0.5 * std::conj(c), 0.5 * c, 0.5;
  return q;
}

CMatrix conditional_oscillator_state_closed_form(const CatParams& params, Outcome s,
                                                 const FockConfig& cfg) {
  params.validate();
  const double tau = params.tau();
  const double a0 = params.alpha0;
  const double sg = sign_of(s);
  const double denom = 2.0 * (1.0 + sg * tau * std::exp(-2.0 * a0 * a0));
  if (denom < kConditioningFloor) {
    throw Error(ErrorKind::undefined_conditional,
                std::string("conditioning on outcome ") + to_string(s) + " of zero probability");
  }
  const CVector plus = coherent_vector(a0, cfg);
  const CVector minus = coherent_vector(-a0, cfg);
  const CMatrix num = plus * plus.adjoint() + minus * minus.adjoint() +
                      sg * tau * (minus * plus.adjoint() + plus * minus.adjoint());
  return num / denom;
}

double integrate_over_y(const std::function<double(double)>& f) {
  return quad::integrate(f, -8.0, 8.0, 1e-13, 1e-11).value;
}

void write_joint_csv(const JointDistribution& joint, const std::vector<double>& ys, std::ostream& os) {
  CsvWriter csv(os, {"y", "p_plus", "p_minus"});
  for (double y : ys) {
    csv << y << joint(y, Outcome::plus) << joint(y, Outcome::minus);
    csv.end_row();
  }
}

}  // namespace hqc
