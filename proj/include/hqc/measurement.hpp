#pragma once

// Joint measurement of the momentum quadrature y (x) 1 and the Pauli
// observable 1 (x) sigma_x, and the conditional states it induces.

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "hqc/fock.hpp"
#include "hqc/states.hpp"

namespace hqc {

enum class Outcome { plus, minus };

constexpr int sign_of(Outcome s) { return s == Outcome::plus ? 1 : -1; }
constexpr const char* to_string(Outcome s) { return s == Outcome::plus ? "+" : "-"; }

/// <+-|0> = 1/sqrt(2), <+-|1> = +-1/sqrt(2).
double qubit_projection(Outcome s, int n);

/// <y|n> = i^{-n} h_n(y), with h_n the real Hermite functions normalized
/// for unit vacuum variance. Throws Error(validation) for n outside 0..n_max.
cplx quad_wavefunction(int n, double y, const FockConfig& cfg);

/// All <y|n>, n = 0..n_max, from one pass of the three-term recurrence.
CVector quad_wavefunctions(double y, int n_max);

/// Bivariate density p(y, s) over momentum outcome y and sigma_x outcome s.
class JointDistribution {
 public:
  struct ClosedForm {
    CatParams params;
  };
  struct Numeric {
    std::shared_ptr<const HybridOperator> rho;
  };
  using Provenance = std::variant<ClosedForm, Numeric>;
  using Density = std::function<double(double, Outcome)>;
  using Marginal = std::function<double(Outcome)>;

  JointDistribution(Density density, Marginal marginal, Provenance provenance,
                    std::optional<double> reliable_abs_y = std::nullopt);

  double operator()(double y, Outcome s) const { return density_(y, s); }
  /// p(s) = int dy p(y, s)
  double marginal(Outcome s) const { return marginal_(s); }
  /// p(y) = p(y, +) + p(y, -)
  double marginal_y(double y) const { return density_(y, Outcome::plus) + density_(y, Outcome::minus); }

  const Provenance& provenance() const { return provenance_; }
  /// Beyond this |y| the truncated Fock expansion is not trustworthy.
  std::optional<double> reliable_abs_y() const { return reliable_abs_y_; }
  bool reliable_at(double y) const { return !reliable_abs_y_ || std::abs(y) <= *reliable_abs_y_; }

 private:
  Density density_;
  Marginal marginal_;
  Provenance provenance_;
  std::optional<double> reliable_abs_y_;
};

/// p(y, +-) = exp(-y^2/2) / (2 sqrt(2 pi)) (1 +- tau cos(2 a0 y)).
JointDistribution joint_closed_form(const CatParams& params);

/// p(y, s) = <y, s| rho |y, s> in truncated Fock space. Reliable for
/// |y| <= 2 sqrt(n_max).
JointDistribution joint_numeric(const HybridOperator& rho);

/// Conditional probabilities p(y|s) and p(s|y). Conditioning on an outcome
/// whose probability (density) is below `floor` throws
/// Error(undefined_conditional).
class Conditionals {
 public:
  explicit Conditionals(JointDistribution joint, double floor = 1e-12);

  double y_given(double y, Outcome s) const;
  double outcome_given(Outcome s, double y) const;

 private:
  JointDistribution joint_;
  double floor_;
};

Conditionals conditionals(const JointDistribution& joint);

struct Condition {
  std::optional<Outcome> outcome;
  std::optional<double> y;
};

struct ConditionalState {
  CMatrix state;      // density operator of the unmeasured subsystem
  Condition condition;
  double weight = 0;  // p(s), or the density p(y) when conditioning on y
};

/// Threshold below which a conditioning event is treated as impossible.
inline constexpr double kConditioningFloor = 1e-12;

ConditionalState conditional_qubit_state(const HybridOperator& rho, double y);
ConditionalState conditional_oscillator_state(const HybridOperator& rho, Outcome s);

/// (1 + tau e^{2i a0 y} |1><0| + h.c.) / 2
QubitMatrix conditional_qubit_state_closed_form(const CatParams& params, double y);
/// Dephased-cat oscillator state after observing s, built from coherent dyads.
CMatrix conditional_oscillator_state_closed_form(const CatParams& params, Outcome s,
                                                 const FockConfig& cfg);

/// Adaptive integral over y in [-8, 8].
double integrate_over_y(const std::function<double(double)>& f);

/// Columns y,p_plus,p_minus.
void write_joint_csv(const JointDistribution& joint, const std::vector<double>& ys, std::ostream& os);

}  // namespace hqc
