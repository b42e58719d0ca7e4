#pragma once

// Filtered P-matrix of hybrid oscillator-qubit states.
//
// P_{n,n'}(alpha) expands rho = int d^2alpha sum P_{n,n'} |alpha><alpha| (x) |n><n'|.
// The filtered version is the convolution of P with the sinc^2 kernel
// Omega~(alpha). Numerically it is evaluated in the Fourier domain:
//
//   P_Omega(alpha) = 1/pi^2 int d^2beta Phi(beta) Omega(beta) exp(alpha beta* - alpha* beta)
//
// with the normally ordered characteristic matrix Phi and Omega the Fourier
// transform of Omega~ under this kernel. For the sinc^2 filter of width w,
// Omega(u + iv) = hat(u/w) * hat(v/w), hat(t) = max(0, 1 - |t|).

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hqc/fock.hpp"
#include "hqc/states.hpp"

namespace hqc {

struct FilterSpec {
  double w = 1.5;
  void validate() const;
};

/// Fourier-domain filter with support inside [-half_width, half_width]^2.
/// `kinks` lists per-axis points where the transform is not smooth; the
/// quadrature splits there.
struct FilterTransform {
  double half_width = 0.0;
  std::function<double(double u, double v)> value;
  std::vector<double> kinks;
};

FilterTransform sinc2_transform(const FilterSpec& f);

/// (w^2/pi^2) sinc^2(w Re a) sinc^2(w Im a).
double filter_value(cplx alpha, const FilterSpec& f);

/// sin(z)/z, with a series branch near the removable singularity.
cplx complex_sinc(cplx z);

/// Closed-form filtered P-matrix of the dephased cat at one point.
/// Entry (n, n') is P_{Omega;n,n'}.
QubitMatrix closed_form_pmatrix(const CatParams& params, cplx alpha, const FilterSpec& f);

/// Phi_{n,n'}(beta) = tr[rho (exp(beta a^dagger) exp(-beta* a) (x) |n'><n|)].
/// Throws Error(accuracy) when |beta|^2 exceeds the truncation guard.
QubitMatrix characteristic_matrix(const HybridOperator& rho, cplx beta);

struct GridSpec {
  double x_min = -3.0, x_max = 3.0;
  int nx = 121;
  double y_min = -3.0, y_max = 3.0;
  int ny = 121;

  static GridSpec square(double lo, double hi, int n) { return {lo, hi, n, lo, hi, n}; }
  /// The line Re(alpha) = x, Im(alpha) in [lo, hi].
  static GridSpec cross_section(double x, double lo, double hi, int n) { return {x, x, 1, lo, hi, n}; }

  double x(int i) const { return nx == 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1); }
  double y(int j) const { return ny == 1 ? y_min : y_min + (y_max - y_min) * j / (ny - 1); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  void validate() const;
};

/// P-matrix values on a lattice. Storage is row-major in y then x: the
/// value at (x(i), y(j)) lives at index j * nx + i.
class PMatrixGrid {
 public:
  explicit PMatrixGrid(GridSpec grid);

  const GridSpec& grid() const { return grid_; }
  const QubitMatrix& at(int ix, int iy) const { return values_[index(ix, iy)]; }
  QubitMatrix& at(int ix, int iy) { return values_[index(ix, iy)]; }
  const std::vector<QubitMatrix>& values() const { return values_; }

  /// Gauss-Legendre nodes per axis used by the numeric route (0 otherwise).
  int quadrature_nodes = 0;

 private:
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(grid_.nx) + static_cast<std::size_t>(ix);
  }

  GridSpec grid_;
  std::vector<QubitMatrix> values_;
};

PMatrixGrid closed_form_pmatrix_grid(const CatParams& params, const GridSpec& grid,
                                     const FilterSpec& f);

struct PMatrixQuadrature {
  int initial_nodes = 64;  // per axis, split evenly across the kinks
  int max_nodes = 1024;
  double tol = 1e-6;       // max change between successive node doublings
  unsigned threads = 0;    // 0: hardware concurrency
};

/// Characteristic-function route for an arbitrary hybrid density operator.
PMatrixGrid numeric_pmatrix(const HybridOperator& rho, const GridSpec& grid, const FilterSpec& f,
                            const PMatrixQuadrature& opts = {});
PMatrixGrid numeric_pmatrix(const HybridOperator& rho, const GridSpec& grid,
                            const FilterTransform& filter, const PMatrixQuadrature& opts = {});

struct GridWitness {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

struct ClassicalityReport {
  bool offdiagonal_nonzero = false;
  bool p00_negative = false;
  bool p11_negative = false;
  std::optional<GridWitness> offdiagonal_witness;  // value = |P_01|
  std::optional<GridWitness> p00_witness;          // most negative P_00
  std::optional<GridWitness> p11_witness;

  bool classical() const { return !offdiagonal_nonzero && !p00_negative && !p11_negative; }
};

ClassicalityReport classicality_flags(const PMatrixGrid& grid, double tol);

/// max |P_01 - conj(P_10)| and max |Im P_nn| over the grid.
double pmatrix_hermiticity_error(const PMatrixGrid& grid);

/// Trapezoidal integral of P_00 + P_11 over the grid (needs nx, ny >= 2).
double integrated_trace(const PMatrixGrid& grid);

/// Columns x,y,re_P00,re_P11,re_P01,im_P01.
void write_pmatrix_csv(const PMatrixGrid& grid, std::ostream& os);

}  // namespace hqc
