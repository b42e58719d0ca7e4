#include "hqc/moments.hpp"

#include <cmath>
#include <ostream>

#include "hqc/csv.hpp"
#include "hqc/error.hpp"

namespace hqc {

namespace {

double real_expectation(const CMatrix& rho, const CMatrix& obs) {
  return (rho.array() * obs.transpose().array()).sum().real();
}

}  // namespace

MomentVerdicts verdicts_for(double mu1, double mu2, double mu12) {
  const double bound = 1.0 - kVerdictTolerance;
  return {mu1 < bound, mu2 < bound, mu12 < bound};
}

MomentReport moment_matrix(const HybridOperator& rho) {
  if (rho.kind() != OperatorKind::density) {
    throw Error(ErrorKind::invalid_operator, "moment matrix requires a density operator");
  }
  FockConfig cfg;
  cfg.n_max = rho.n_max();
  const CMatrix y = quadrature_y(cfg);
  const CMatrix id_osc = CMatrix::Identity(cfg.levels(), cfg.levels());
  const CMatrix id_q = CMatrix::Identity(2, 2);
  const CMatrix sx = pauli_x();

  const CMatrix& r = rho.matrix();
  const double ey = real_expectation(r, tensor(y, id_q).matrix());
  const double es = real_expectation(r, tensor(id_osc, sx).matrix());
  const double eyy = real_expectation(r, tensor(CMatrix(y * y), id_q).matrix());
  const double eys = real_expectation(r, tensor(y, sx).matrix());
  const double ess = real_expectation(r, tensor(id_osc, CMatrix(sx * sx)).matrix());
  const double e11 = r.trace().real();

  MomentReport rep;
  rep.M << e11, ey, es,
           ey, eyy, eys,
           es, eys, ess;
  rep.mu1 = eyy - ey * ey;
  rep.mu2 = ess - es * es;
  rep.mu12 = rep.M.determinant();
  const double cov = eys - ey * es;
  rep.mu12_expanded = rep.mu1 * rep.mu2 - cov * cov;
  rep.verdicts = verdicts_for(rep.mu1, rep.mu2, rep.mu12);
  return rep;
}

Minors closed_form_minors(const CatParams& params) {
  params.validate();
  const double t = params.tau();
  const double m2 = 1.0 - t * t * std::exp(-4.0 * params.alpha0 * params.alpha0);
  return {1.0, m2, m2};
}

double conditional_variance_y(const HybridOperator& rho, Outcome s) {
  const ConditionalState c = conditional_oscillator_state(rho, s);
  FockConfig cfg;
  cfg.n_max = rho.n_max();
  const CMatrix y = quadrature_y(cfg);
  const double m1 = real_expectation(c.state, y);
  const double m2 = real_expectation(c.state, y * y);
  return m2 - m1 * m1;
}

double conditional_variance_y_closed_form(const CatParams& params, Outcome s) {
  params.validate();
  const double a0 = params.alpha0;
  const double g = params.tau() * std::exp(-2.0 * a0 * a0);
  const double sg = sign_of(s);
  const double denom = 1.0 + sg * g;
  if (denom < kConditioningFloor) {
    throw Error(ErrorKind::undefined_conditional, "conditioning on an outcome of zero probability");
  }
  return 1.0 - sg * 4.0 * a0 * a0 * g / denom;
}

double conditional_variance_sigmax(const HybridOperator& rho, double y) {
  const ConditionalState c = conditional_qubit_state(rho, y);
  const double mean = real_expectation(c.state, pauli_x());
  return 1.0 - mean * mean;
}

double conditional_variance_sigmax_closed_form(const CatParams& params, double y) {
  params.validate();
  const double c = params.tau() * std::cos(2.0 * params.alpha0 * y);
  return 1.0 - c * c;
}

MomentSweepRow moment_sweep_row(const CatParams& params) {
  const Minors m = closed_form_minors(params);
  return {params.alpha0,
          params.dephasing,
          params.tau(),
          m.mu1,
          m.mu2,
          m.mu12,
          conditional_variance_y_closed_form(params, Outcome::plus),
          conditional_variance_y_closed_form(params, Outcome::minus)};
}

void write_moment_sweep_csv(const std::vector<MomentSweepRow>& rows, std::ostream& os) {
  CsvWriter csv(os, {"alpha0", "sigma", "tau", "mu1", "mu2", "mu12", "mu1_plus", "mu1_minus"});
  for (const MomentSweepRow& r : rows) {
    csv << r.alpha0 << r.dephasing.sigma() << r.tau << r.mu1 << r.mu2 << r.mu12 << r.mu1_plus
        << r.mu1_minus;
    csv.end_row();
  }
}

void write_conditional_sigmax_csv(const std::vector<double>& ys, const std::vector<double>& mu2,
                                  std::ostream& os) {
  if (ys.size() != mu2.size()) throw Error(ErrorKind::dimension, "y and mu2 columns differ in length");
  CsvWriter csv(os, {"y", "mu2_cond"});
  for (std::size_t i = 0; i < ys.size(); ++i) {
    csv << ys[i] << mu2[i];
    csv.end_row();
  }
}

}  // namespace hqc
