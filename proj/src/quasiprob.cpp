#include "hqc/quasiprob.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hqc/csv.hpp"
#include "hqc/error.hpp"
#include "hqc/quadrature.hpp"
#include "parallel.hpp"

namespace hqc {

namespace {

constexpr double kPi = std::numbers::pi;

double real_sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double hat(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

// Evaluates the normally ordered characteristic matrix of a fixed density
// operator. rho is expanded in its eigenvectors so each evaluation costs a
// few triangular matrix-vector products instead of dense matrix products:
//   Phi_{n,n'} = sum_k lambda_k < e^{beta* a} v_k^(n'), e^{-beta* a} v_k^(n) >
class CharacteristicEvaluator {
 public:
  explicit CharacteristicEvaluator(const HybridOperator& rho) : levels_(rho.n_max() + 1) {
    if (rho.kind() != OperatorKind::density) {
      throw Error(ErrorKind::invalid_operator, "characteristic matrix requires a density operator");
    }
    guard_ = rho.n_max() / 4.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho.matrix() + rho.matrix().adjoint()));
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (std::abs(ev(k)) <= 1e-15 * scale) continue;
      weights_.push_back(ev(k));
      std::array<CVector, 2> parts{CVector(levels_), CVector(levels_)};
      for (int n = 0; n < levels_; ++n) {
        parts[0](n) = es.eigenvectors()(hybrid_index(n, 0), k);
        parts[1](n) = es.eigenvectors()(hybrid_index(n, 1), k);
      }
      components_.push_back(std::move(parts));
    }
    // coeff_(m, d) = sqrt((m+d)!/m!) / d!
    coeff_ = Eigen::MatrixXd::Zero(levels_, levels_);
    for (int m = 0; m < levels_; ++m) {
      for (int d = 0; m + d < levels_; ++d) {
        coeff_(m, d) = std::exp(0.5 * (std::lgamma(m + d + 1.0) - std::lgamma(m + 1.0)) -
                                std::lgamma(d + 1.0));
      }
    }
  }

  QubitMatrix operator()(cplx beta) const {
    if (std::norm(beta) > guard_) {
      std::ostringstream os;
      os << "|beta|^2 = " << std::norm(beta) << " exceeds the truncation guard " << guard_
         << "; the truncated displacement is not accurate";
      throw Error(ErrorKind::accuracy, os.str());
    }
    const cplx gamma = std::conj(beta);
    std::vector<cplx> pow_plus(levels_), pow_minus(levels_);
    pow_plus[0] = pow_minus[0] = 1.0;
    for (int d = 1; d < levels_; ++d) {
      pow_plus[d] = pow_plus[d - 1] * gamma;
      pow_minus[d] = pow_minus[d - 1] * (-gamma);
    }
    QubitMatrix phi = QubitMatrix::Zero();
    CVector left[2], right[2];
    for (std::size_t k = 0; k < components_.size(); ++k) {
      for (int q = 0; q < 2; ++q) {
        left[q] = apply_exp_a(pow_plus, components_[k][q]);
        right[q] = apply_exp_a(pow_minus, components_[k][q]);
      }
      for (int n = 0; n < 2; ++n) {
        for (int np = 0; np < 2; ++np) {
          phi(n, np) += weights_[k] * left[np].dot(right[n]);
        }
      }
    }
    return phi;
  }

 private:
  // (e^{g a} v)_m = sum_d coeff(m, d) g^d v_{m+d}
  CVector apply_exp_a(const std::vector<cplx>& powers, const CVector& v) const {
    CVector out(levels_);
    for (int m = 0; m < levels_; ++m) {
      cplx s = 0.0;
      for (int d = 0; m + d < levels_; ++d) s += coeff_(m, d) * powers[d] * v(m + d);
      out(m) = s;
    }
    return out;
  }

  int levels_;
  double guard_ = 0.0;
  std::vector<double> weights_;
  std::vector<std::array<CVector, 2>> components_;
  Eigen::MatrixXd coeff_;
};

std::array<CMatrix, 4> transform_to_grid(const CharacteristicEvaluator& phi, const GridSpec& grid,
                                         const FilterTransform& filter, int nodes_per_axis,
                                         unsigned threads) {
  std::vector<double> breaks{-filter.half_width};
  for (double k : filter.kinks) {
    if (k > -filter.half_width && k < filter.half_width) breaks.push_back(k);
  }
  breaks.push_back(filter.half_width);
  std::sort(breaks.begin(), breaks.end());
  const int pieces = static_cast<int>(breaks.size()) - 1;
  const int per_piece = std::max(1, nodes_per_axis / pieces);
  const quad::Rule rule = quad::composite_gauss_legendre(per_piece, breaks);
  const auto n = static_cast<Eigen::Index>(rule.nodes.size());

  // weighted[c](i, j): c = 2n + n', u along rows, v along columns
  std::array<CMatrix, 4> weighted;
  for (auto& m : weighted) m.resize(n, n);
  detail::parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t ii) {
    const auto i = static_cast<Eigen::Index>(ii);
    const double u = rule.nodes[ii];
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = rule.nodes[static_cast<std::size_t>(j)];
      const double w = rule.weights[ii] * rule.weights[static_cast<std::size_t>(j)] * filter.value(u, v);
      const QubitMatrix p = w == 0.0 ? QubitMatrix::Zero() : QubitMatrix(w * phi(cplx(u, v)));
      for (int c = 0; c < 4; ++c) weighted[c](i, j) = p(c / 2, c % 2);
    }
  });

  // exp(alpha beta* - alpha* beta) = exp(2i (y u - x v))
  CMatrix ey(grid.ny, n), ex_t(n, grid.nx);
  for (int b = 0; b < grid.ny; ++b) {
    for (Eigen::Index i = 0; i < n; ++i) ey(b, i) = std::polar(1.0, 2.0 * grid.y(b) * rule.nodes[i]);
  }
  for (int a = 0; a < grid.nx; ++a) {
    for (Eigen::Index j = 0; j < n; ++j) ex_t(j, a) = std::polar(1.0, -2.0 * grid.x(a) * rule.nodes[j]);
  }
  std::array<CMatrix, 4> out;
  for (int c = 0; c < 4; ++c) out[c] = (ey * weighted[c] * ex_t) / (kPi * kPi);
  return out;
}

}  // namespace

void FilterSpec::validate() const {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw Error(ErrorKind::validation, "filter width must satisfy 0 < w < inf");
  }
}

FilterTransform sinc2_transform(const FilterSpec& f) {
  f.validate();
  const double w = f.w;
  return {w, [w](double u, double v) { return hat(u / w) * hat(v / w); }, {0.0}};
}

double filter_value(cplx alpha, const FilterSpec& f) {
  f.validate();
  const double sx = real_sinc(f.w * alpha.real());
  const double sy = real_sinc(f.w * alpha.imag());
  return f.w * f.w / (kPi * kPi) * sx * sx * sy * sy;
}

cplx complex_sinc(cplx z) {
  if (std::abs(z) < 1e-6) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

QubitMatrix closed_form_pmatrix(const CatParams& params, cplx alpha, const FilterSpec& f) {
  params.validate();
  f.validate();
  const double w = f.w;
  const double a0 = params.alpha0;
  const double x = alpha.real(), y = alpha.imag();
  const double pref = w * w / (kPi * kPi);
  const double sy = real_sinc(w * y);
  const double s_minus = real_sinc(w * (x - a0));
  const double s_plus = real_sinc(w * (x + a0));
  const double sx = real_sinc(w * x);
  const cplx sz = complex_sinc(w * cplx(y, a0));

  QubitMatrix p;
  p(0, 0) = 0.5 * pref * s_minus * s_minus * sy * sy;
  p(1, 1) = 0.5 * pref * s_plus * s_plus * sy * sy;
  p(0, 1) = params.tau() * std::exp(-2.0 * a0 * a0) / 2.0 * pref * sx * sx * sz * sz;
  p(1, 0) = std::conj(p(0, 1));
  return p;
}

QubitMatrix characteristic_matrix(const HybridOperator& rho, cplx beta) {
  return CharacteristicEvaluator(rho)(beta);
}

void GridSpec::validate() const {
  if (nx < 1 || ny < 1) throw Error(ErrorKind::validation, "grid needs at least one point per axis");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max)) {
    throw Error(ErrorKind::validation, "grid bounds must be finite");
  }
  if ((nx > 1 && !(x_max > x_min)) || (ny > 1 && !(y_max > y_min))) {
    throw Error(ErrorKind::validation, "grid bounds must be increasing");
  }
}

PMatrixGrid::PMatrixGrid(GridSpec grid) : grid_(grid) {
  grid_.validate();
  values_.assign(grid_.size(), QubitMatrix::Zero());
}

PMatrixGrid closed_form_pmatrix_grid(const CatParams& params, const GridSpec& grid,
                                     const FilterSpec& f) {
  PMatrixGrid out(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      out.at(i, j) = closed_form_pmatrix(params, cplx(grid.x(i), grid.y(j)), f);
    }
  }
  return out;
}

PMatrixGrid numeric_pmatrix(const HybridOperator& rho, const GridSpec& grid, const FilterSpec& f,
                            const PMatrixQuadrature& opts) {
  return numeric_pmatrix(rho, grid, sinc2_transform(f), opts);
}

PMatrixGrid numeric_pmatrix(const HybridOperator& rho, const GridSpec& grid,
                            const FilterTransform& filter, const PMatrixQuadrature& opts) {
  grid.validate();
  if (!(filter.half_width > 0.0) || !filter.value) {
    throw Error(ErrorKind::validation, "filter transform needs a positive support and a value function");
  }
  const CharacteristicEvaluator phi(rho);

  int nodes = opts.initial_nodes;
  std::array<CMatrix, 4> previous = transform_to_grid(phi, grid, filter, nodes, opts.threads);
  double change = 0.0;
  for (;;) {
    const int next_nodes = 2 * nodes;
    if (next_nodes > opts.max_nodes) {
      std::ostringstream os;
      os << "P-matrix quadrature did not converge: change " << change << " at " << nodes
         << " nodes per axis";
      throw Error(ErrorKind::convergence, os.str());
    }
    std::array<CMatrix, 4> current = transform_to_grid(phi, grid, filter, next_nodes, opts.threads);
    change = 0.0;
    for (int c = 0; c < 4; ++c) change = std::max(change, (current[c] - previous[c]).cwiseAbs().maxCoeff());
    previous = std::move(current);
    nodes = next_nodes;
    if (change < opts.tol) break;
  }

  PMatrixGrid out(grid);
  out.quadrature_nodes = nodes;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      QubitMatrix& p = out.at(i, j);
      for (int c = 0; c < 4; ++c) p(c / 2, c % 2) = previous[c](j, i);
    }
  }
  return out;
}

ClassicalityReport classicality_flags(const PMatrixGrid& grid, double tol) {
  ClassicalityReport r;
  const GridSpec& g = grid.grid();
  double worst_off = tol, worst_00 = -tol, worst_11 = -tol;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const QubitMatrix& p = grid.at(i, j);
      const double off = std::abs(p(0, 1));
      if (off > worst_off) {
        worst_off = off;
        r.offdiagonal_nonzero = true;
        r.offdiagonal_witness = GridWitness{g.x(i), g.y(j), off};
      }
      if (p(0, 0).real() < worst_00) {
        worst_00 = p(0, 0).real();
        r.p00_negative = true;
        r.p00_witness = GridWitness{g.x(i), g.y(j), worst_00};
      }
      if (p(1, 1).real() < worst_11) {
        worst_11 = p(1, 1).real();
        r.p11_negative = true;
        r.p11_witness = GridWitness{g.x(i), g.y(j), worst_11};
      }
    }
  }
  return r;
}

double pmatrix_hermiticity_error(const PMatrixGrid& grid) {
  double e = 0.0;
  for (const QubitMatrix& p : grid.values()) {
    e = std::max({e, std::abs(p(0, 1) - std::conj(p(1, 0))), std::abs(p(0, 0).imag()),
                  std::abs(p(1, 1).imag())});
  }
  return e;
}

double integrated_trace(const PMatrixGrid& grid) {
  const GridSpec& g = grid.grid();
  if (g.nx < 2 || g.ny < 2) {
    throw Error(ErrorKind::validation, "integrated trace needs at least two points per axis");
  }
  const double dx = (g.x_max - g.x_min) / (g.nx - 1);
  const double dy = (g.y_max - g.y_min) / (g.ny - 1);
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double wy = (j == 0 || j == g.ny - 1) ? 0.5 : 1.0;
    for (int i = 0; i < g.nx; ++i) {
      const double wx = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
      const QubitMatrix& p = grid.at(i, j);
      s += wx * wy * (p(0, 0).real() + p(1, 1).real());
    }
  }
  return s * dx * dy;
}

void write_pmatrix_csv(const PMatrixGrid& grid, std::ostream& os) {
  CsvWriter csv(os, {"x", "y", "re_P00", "re_P11", "re_P01", "im_P01"});
  const GridSpec& g = grid.grid();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const QubitMatrix& p = grid.at(i, j);
      csv << g.x(i) << g.y(j) << p(0, 0).real() << p(1, 1).real() << p(0, 1).real()
          << p(0, 1).imag();
      csv.end_row();
    }
  }
}

}  // namespace hqc
