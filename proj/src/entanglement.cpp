#include "hqc/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <limits>
#include <random>

#include "hqc/csv.hpp"
#include "hqc/error.hpp"
#include "hqc/rng.hpp"
#include "hqc/states.hpp"
#include "parallel.hpp"

namespace hqc {

namespace {

constexpr double kDegeneracyGap = 1e-10;
constexpr double kOverlapMerge = 0.999;

using Blocks = std::array<CMatrix, 4>;  // L_{qq'} at index 2q + q'

Blocks witness_blocks(const HybridOperator& L) {
  return {L.qubit_block(0, 0), L.qubit_block(0, 1), L.qubit_block(1, 0), L.qubit_block(1, 1)};
}

CMatrix reduce_to_oscillator(const Blocks& b, const CVector& a2) {
  CMatrix out = CMatrix::Zero(b[0].rows(), b[0].cols());
  for (int q = 0; q < 2; ++q) {
    for (int qp = 0; qp < 2; ++qp) out += (std::conj(a2(q)) * a2(qp)) * b[2 * q + qp];
  }
  return out;
}

CMatrix reduce_to_qubit(const Blocks& b, const CVector& a1) {
  CMatrix out(2, 2);
  for (int q = 0; q < 2; ++q) {
    for (int qp = 0; qp < 2; ++qp) out(q, qp) = a1.dot(b[2 * q + qp] * a1);
  }
  return out;
}

void fix_phase(CVector& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (std::abs(v(k)) > 0) v *= std::abs(v(k)) / v(k);
}

struct Extremal {
  double value;
  CVector vector;
};

// Largest (sign > 0) or smallest eigenpair. Inside a degenerate eigenspace
// the previous iterate's projection is kept.
Extremal extremal_eigen(const CMatrix& m, int sign, const CVector& previous) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::convergence, "eigen-solver failed");
  const Eigen::Index n = h.rows();
  const Eigen::Index pick = sign > 0 ? n - 1 : 0;
  const double value = es.eigenvalues()(pick);
  CVector proj = CVector::Zero(n);
  int multiplicity = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(es.eigenvalues()(k) - value) < kDegeneracyGap) {
      const CVector u = es.eigenvectors().col(k);
      proj += u * u.dot(previous);
      ++multiplicity;
    }
  }
  CVector v;
  if (multiplicity > 1 && proj.norm() > 1e-12) {
    v = proj.normalized();
  } else {
    v = es.eigenvectors().col(pick);
  }
  fix_phase(v);
  return {value, v};
}

CVector random_complex(std::mt19937_64& gen, Eigen::Index n, bool real) {
  std::normal_distribution<double> nd;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = nd(gen);
    v(i) = real ? cplx(re, 0.0) : cplx(re, nd(gen));
  }
  return v;
}

struct Start {
  CVector a1;
  CVector a2;
};

Start random_start(const WitnessSpec& w, std::uint64_t seed, std::size_t index, bool real) {
  std::mt19937_64 gen(stream_seed(seed, index));
  const int levels = w.L.n_max() + 1;
  FockConfig cfg;
  cfg.n_max = w.L.n_max();

  CVector a2 = random_complex(gen, 2, real).normalized();

  CVector a1 = 0.05 * random_complex(gen, levels, real);
  const CVector c = random_complex(gen, 4, real);
  if (w.alpha0) {
    a1 += c(0) * coherent_vector(*w.alpha0, cfg) + c(1) * coherent_vector(-*w.alpha0, cfg);
  }
  a1(0) += c(2);
  a1(1) += c(3);
  a1.normalize();
  return {a1, a2};
}

SeparabilityEigen run_branch(const Blocks& b, Start start, int sign, const SeesawOptions& opts) {
  SeparabilityEigen out;
  out.maximizing = sign > 0;
  CVector a1 = std::move(start.a1);
  CVector a2 = std::move(start.a2);
  CMatrix la2 = reduce_to_oscillator(b, a2);
  double g_prev = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= opts.max_iter; ++it) {
    Extremal e1 = extremal_eigen(la2, sign, a1);
    a1 = std::move(e1.vector);
    out.history.push_back(e1.value);

    const CMatrix la1 = reduce_to_qubit(b, a1);
    Extremal e2 = extremal_eigen(la1, sign, a2);
    a2 = std::move(e2.vector);
    const double g = e2.value;
    out.history.push_back(g);

    la2 = reduce_to_oscillator(b, a2);
    const double r1 = (la2 * a1 - g * a1).norm();
    const double r2 = (la1 * a2 - g * a2).norm();
    out.g = g;
    out.residual = std::max(r1, r2);
    out.iterations = it;
    if (std::abs(g - g_prev) < opts.tol && r1 < opts.tol && r2 < opts.tol) {
      out.converged = true;
      break;
    }
    g_prev = g;
  }
  out.a1 = std::move(a1);
  out.a2 = std::move(a2);
  return out;
}

double product_overlap(const SeparabilityEigen& x, const SeparabilityEigen& y) {
  return std::abs(x.a1.dot(y.a1)) * std::abs(x.a2.dot(y.a2));
}

bool is_real(const CMatrix& m) { return m.imag().cwiseAbs().maxCoeff() < 1e-14; }

}  // namespace

WitnessSpec make_witness(CMatrix L, const FockConfig& cfg) {
  return {HybridOperator::observable(std::move(L), cfg), std::nullopt};
}

WitnessSpec cat_witness(double alpha0, const FockConfig& cfg) {
  if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) {
    throw Error(ErrorKind::validation, "alpha0 must be finite and non-negative");
  }
  const CVector plus = coherent_vector(alpha0, cfg);
  const CVector minus = coherent_vector(-alpha0, cfg);
  CMatrix up = CMatrix::Zero(2, 2);
  up(0, 1) = 1.0;
  const CMatrix osc = plus * minus.adjoint();
  CMatrix L = tensor(osc, up).matrix();
  L += L.adjoint().eval();
  return {HybridOperator::observable(std::move(L), cfg), alpha0};
}

CMatrix reduce_witness(const HybridOperator& L, const CVector& a, Subsystem side) {
  if (std::abs(a.norm() - 1.0) > 1e-8) throw Error(ErrorKind::validation, "reduction vector must be normalized");
  const Blocks b = witness_blocks(L);
  if (side == Subsystem::oscillator) {
    if (a.size() != b[0].rows()) throw Error(ErrorKind::dimension, "oscillator vector has the wrong length");
    return reduce_to_qubit(b, a);
  }
  if (a.size() != 2) throw Error(ErrorKind::dimension, "qubit vector must have 2 components");
  return reduce_to_oscillator(b, a);
}

std::vector<double> SeparabilityResult::distinct_values(double radius) const {
  std::vector<double> g;
  for (const auto& e : eigenvalues) g.push_back(e.g);
  std::sort(g.begin(), g.end(), std::greater<>());
  std::vector<double> out;
  for (double v : g) {
    if (out.empty() || out.back() - v > radius) out.push_back(v);
  }
  return out;
}

SeparabilityResult seesaw_solve(const WitnessSpec& w, const SeesawOptions& opts) {
  if (opts.restarts < 1) throw Error(ErrorKind::validation, "restarts must be at least 1");
  if (opts.max_iter < 1) throw Error(ErrorKind::validation, "max_iter must be at least 1");
  if (!(opts.tol > 0.0)) throw Error(ErrorKind::validation, "tol must be positive");
  if (w.L.kind() != OperatorKind::observable) {
    throw Error(ErrorKind::invalid_operator, "witness must be a hermitian observable");
  }
  const Blocks b = witness_blocks(w.L);
  // For a real witness, real restarts stay on the real slice where the
  // saddle-type stationary points are attracting; alternate both kinds.
  const bool real_witness = is_real(w.L.matrix());

  const auto n = static_cast<std::size_t>(opts.restarts);
  std::vector<std::array<SeparabilityEigen, 2>> runs(n);
  detail::parallel_for(n, opts.threads, [&](std::size_t i) {
    const bool real = real_witness && (i % 2 == 1);
    const Start s = random_start(w, opts.seed, i, real);
    runs[i][0] = run_branch(b, s, +1, opts);
    runs[i][1] = run_branch(b, s, -1, opts);
  });

  SeparabilityResult res;
  res.restarts_used = opts.restarts;
  for (std::size_t i = 0; i < n; ++i) {
    for (SeparabilityEigen& e : runs[i]) {
      if (!e.converged) {
        ++res.non_converged;
        res.warnings.push_back("restart " + std::to_string(i) + (e.maximizing ? " (max" : " (min") +
                               " branch) did not converge within " + std::to_string(opts.max_iter) +
                               " iterations");
        continue;
      }
      const bool duplicate = std::any_of(res.eigenvalues.begin(), res.eigenvalues.end(), [&](const auto& k) {
        return std::abs(k.g - e.g) <= 10.0 * opts.tol && product_overlap(k, e) > kOverlapMerge;
      });
      if (!duplicate) res.eigenvalues.push_back(std::move(e));
    }
  }
  if (res.eigenvalues.empty()) {
    throw Error(ErrorKind::convergence, "no see-saw restart converged");
  }
  auto [lo, hi] = std::minmax_element(res.eigenvalues.begin(), res.eigenvalues.end(),
                                      [](const auto& x, const auto& y) { return x.g < y.g; });
  res.g_min = lo->g;
  res.g_max = hi->g;
  return res;
}

std::vector<double> analytic_sep_values(double alpha0) {
  if (!(alpha0 >= 0.0)) throw Error(ErrorKind::validation, "alpha0 must be non-negative");
  const double e = std::exp(-2.0 * alpha0 * alpha0);
  return {0.5 * (1.0 + e), 0.5 * (1.0 - e), -0.5 * (1.0 - e), -0.5 * (1.0 + e)};
}

std::vector<AnalyticSepEig> analytic_sep_eigs(double alpha0, const FockConfig& cfg) {
  if (!(alpha0 >= 0.0)) throw Error(ErrorKind::validation, "alpha0 must be non-negative");
  const double e = std::exp(-2.0 * alpha0 * alpha0);
  const CVector plus = coherent_vector(alpha0, cfg);
  const CVector minus = coherent_vector(-alpha0, cfg);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<AnalyticSepEig> out;
  for (int sign : {+1, -1}) {
    for (int parity : {+1, -1}) {
      CVector cat;
      if (1.0 + parity * e < 1e-14) {
        cat = CVector::Zero(cfg.levels());
        cat(1) = 1.0;  // odd cat as alpha0 -> 0
      } else {
        cat = (plus + parity * minus) / std::sqrt(2.0 * (1.0 + parity * e));
      }
      QubitVector q(r, sign * parity * r);
      out.push_back({sign * 0.5 * (1.0 + parity * e), cat, q});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.g > y.g; });
  return out;
}

double separable_bound(double alpha0) { return 0.5 * (1.0 + std::exp(-2.0 * alpha0 * alpha0)); }

WitnessVerdict witness_verdict(const HybridOperator& rho, const WitnessSpec& w, double tol) {
  if (!w.alpha0) {
    throw Error(ErrorKind::validation, "analytic bound needs the cat witness; pass see-saw bounds instead");
  }
  SeparabilityResult b;
  b.g_max = separable_bound(*w.alpha0);
  b.g_min = -b.g_max;
  return witness_verdict(rho, w, b, tol);
}

WitnessVerdict witness_verdict(const HybridOperator& rho, const WitnessSpec& w,
                               const SeparabilityResult& bounds, double tol) {
  if (rho.kind() != OperatorKind::density) {
    throw Error(ErrorKind::invalid_operator, "witness verdict requires a density operator");
  }
  WitnessVerdict v;
  v.expectation = expectation(rho, w.L).real();
  v.g_min = bounds.g_min;
  v.g_max = bounds.g_max;
  v.entangled = v.expectation > v.g_max + tol || v.expectation < v.g_min - tol;
  return v;
}

double detection_threshold(double alpha0) {
  if (!(alpha0 >= 0.0)) throw Error(ErrorKind::validation, "alpha0 must be non-negative");
  return separable_bound(alpha0);
}

std::optional<double> sigma_threshold(double alpha0) {
  const double t = detection_threshold(alpha0);
  if (t >= 1.0) return std::nullopt;
  return std::sqrt(-2.0 * std::log(t));
}

std::optional<double> alpha0_threshold(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw Error(ErrorKind::validation, "tau must lie in [0, 1]");
  if (2.0 * tau - 1.0 <= 0.0) return std::nullopt;
  return std::sqrt(-std::log(2.0 * tau - 1.0) / 2.0);
}

WitnessSweepRow witness_sweep_row(double alpha0) {
  return {alpha0,
          separable_bound(alpha0),
          1.0,
          Dephasing::gaussian(std::sqrt(0.5)).tau(),
          Dephasing::gaussian(std::sqrt(2.0)).tau(),
          std::nullopt};
}

void write_witness_csv(const std::vector<WitnessSweepRow>& rows, std::ostream& os) {
  const bool with_seesaw = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.g_max_seesaw.has_value(); });
  std::vector<std::string> header = {"alpha0", "g_sep", "expectation_sigma0", "expectation_sigma_sqrt05",
                                     "expectation_sigma_sqrt2"};
  if (with_seesaw) header.push_back("g_max_seesaw");
  CsvWriter csv(os, header);
  for (const auto& r : rows) {
    csv << r.alpha0 << r.g_sep << r.expectation_sigma0 << r.expectation_sigma_sqrt05 << r.expectation_sigma_sqrt2;
    if (with_seesaw) {
      if (r.g_max_seesaw) {
        csv << *r.g_max_seesaw;
      } else {
        csv << std::string_view("");
      }
    }
    csv.end_row();
  }
}

}  // namespace hqc
