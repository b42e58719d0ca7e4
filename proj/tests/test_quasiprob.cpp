#include "support.hpp"

#include <gsl/gsl_sf_expint.h>

#include <sstream>

#include "hqc/quadrature.hpp"
#include "hqc/quasiprob.hpp"

using namespace hqc;
using namespace hqc::testing;

namespace {

double max_deviation(const PMatrixGrid& a, const PMatrixGrid& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    d = std::max(d, (a.values()[k] - b.values()[k]).cwiseAbs().maxCoeff());
  }
  return d;
}

// Direct definition: trace of rho against exp(beta a^+) exp(-beta* a) (x) |n'><n|,
// built from matrix exponentials in a larger Fock space.
QubitMatrix characteristic_reference(const HybridOperator& rho, cplx beta) {
  const int levels = rho.n_max() + 1;
  const int work = levels + 60;
  CMatrix a = CMatrix::Zero(work, work);
  for (int n = 1; n < work; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const CMatrix d = CMatrix(beta * a.adjoint()).exp() * CMatrix(-std::conj(beta) * a).exp();
  const CMatrix dn = d.topLeftCorner(levels, levels);
  QubitMatrix out;
  for (int n = 0; n < 2; ++n) {
    for (int np = 0; np < 2; ++np) out(n, np) = (rho.qubit_block(n, np) * dn).trace();
  }
  return out;
}

// int_{-L}^{L} (w/pi) sinc^2(w x) dx, exactly.
double sinc2_mass(double w, double L) {
  const double u = w * L;
  return (2.0 / kPi) * (gsl_sf_Si(2.0 * u) - std::sin(u) * std::sin(u) / u);
}

}  // namespace

TEST_CASE("filter values") {
  const FilterSpec f{1.5};
  CHECK(filter_value(0.0, f) == doctest::Approx(frozen::w2_over_pi2).epsilon(1e-13));
  for (int k : {1, 2, -3}) {
    CHECK(std::abs(filter_value(cplx(k * kPi / 1.5, 0.3), f)) < 1e-30);
    CHECK(std::abs(filter_value(cplx(0.2, k * kPi / 1.5), f)) < 1e-30);
  }
  CHECK(error_kind_of([] { FilterSpec{0.0}.validate(); }) == ErrorKind::validation);
  CHECK(error_kind_of([] { FilterSpec{std::numeric_limits<double>::infinity()}.validate(); }) == ErrorKind::validation);
}

TEST_CASE("filter normalization") {
  // The filter separates into (w/pi) sinc^2 factors; integrate one axis.
  for (double w : {1.0, 1.5, 2.0}) {
    const FilterSpec f{w};
    auto axis = [&](double x) { return filter_value(cplx(x, 0.0), f) * kPi / w; };
    const double L = 40.0;
    double mass = 0.0;
    for (int k = -40; k < 40; ++k) mass += quad::integrate(axis, k, k + 1.0, 1e-14, 1e-12).value;
    CHECK(std::abs(mass * mass - std::pow(sinc2_mass(w, L), 2)) < 1e-9);
  }
  // The truncated mass approaches 1 as the window grows.
  CHECK(std::abs(sinc2_mass(1.5, 1e6) - 1.0) < 1e-6);
  // Unit mass is exact in the Fourier domain.
  CHECK(sinc2_transform(FilterSpec{1.5}).value(0.0, 0.0) == 1.0);
}

TEST_CASE("complex sinc") {
  CHECK(complex_sinc(0.0) == cplx(1.0));
  CHECK(std::abs(complex_sinc(cplx(0.0, 1.5)) - frozen::sinh_ratio) < 1e-13);
  CHECK(std::abs(std::pow(complex_sinc(cplx(0.0, 1.5)), 2) - frozen::sinh_ratio_sq) < 1e-12);
  // Continuity across the series switch.
  for (double r : {5e-7, 9.9e-7, 1.01e-6, 2e-6}) {
    const cplx z = std::polar(r, 0.7);
    CHECK(std::abs(complex_sinc(z) - (1.0 - z * z / 6.0)) < 1e-15);
  }
}

TEST_CASE("closed-form P-matrix") {
  const FilterSpec f{1.5};
  const CatParams p{1.0, Dephasing::gaussian(0.5), 0.0};

  SUBCASE("peak of the direct terms") {
    const QubitMatrix m = closed_form_pmatrix(p, cplx(1.0, 0.0), f);
    CHECK(m(0, 0).real() == doctest::Approx(0.5 * frozen::w2_over_pi2).epsilon(1e-12));
    const QubitMatrix n = closed_form_pmatrix(p, cplx(-1.0, 0.0), f);
    CHECK(n(1, 1).real() == doctest::Approx(0.5 * frozen::w2_over_pi2).epsilon(1e-12));
  }

  SUBCASE("off-diagonal at the origin") {
    const QubitMatrix m = closed_form_pmatrix(p, 0.0, f);
    CHECK(m(0, 1).real() == doctest::Approx(frozen::p01_origin).epsilon(1e-12));
    CHECK(std::abs(m(0, 1).imag()) < 1e-16);
  }

  SUBCASE("complete dephasing removes the off-diagonal") {
    const CatParams q{1.0, Dephasing::complete(), 0.0};
    for (cplx a : {cplx(0.0), cplx(0.3, -1.2), cplx(2.0, 2.0)}) {
      const QubitMatrix m = closed_form_pmatrix(q, a, f);
      CHECK(m(0, 1) == cplx(0.0));
      CHECK(m(1, 0) == cplx(0.0));
    }
  }

  SUBCASE("hermitian and non-negative diagonal") {
    const PMatrixGrid g = closed_form_pmatrix_grid(p, GridSpec::square(-3, 3, 41), f);
    CHECK(pmatrix_hermiticity_error(g) < 1e-10);
    for (const QubitMatrix& m : g.values()) {
      CHECK(m(0, 0).real() >= 0.0);
      CHECK(m(1, 1).real() >= 0.0);
    }
  }

  SUBCASE("integrated trace over a wide grid") {
    const CatParams q{1.0, Dephasing::complete(), 0.0};
    const PMatrixGrid g = closed_form_pmatrix_grid(q, GridSpec::square(-40, 40, 1601), f);
    CHECK(integrated_trace(g) == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("characteristic matrix") {
  FockConfig cfg;

  SUBCASE("beta = 0 gives the reduced qubit state") {
    const HybridOperator rho = dephased_cat({1.0, Dephasing::gaussian(0.5), 0.0}, cfg);
    const QubitMatrix phi = characteristic_matrix(rho, 0.0);
    CHECK((CMatrix(phi) - partial_trace(rho, Subsystem::oscillator)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(phi.trace() - 1.0) < 1e-12);
  }

  SUBCASE("vacuum is constant") {
    const HybridOperator vac = HybridOperator::pure(classical_product(0.0, 0, cfg), cfg);
    for (cplx b : {cplx(0.5, 0.5), cplx(-2.0, 1.0), cplx(0.0, 3.0)}) {
      CHECK(std::abs(characteristic_matrix(vac, b)(0, 0) - 1.0) < 1e-12);
    }
  }

  SUBCASE("coherent state phase factor") {
    const cplx a0(0.8, -0.3);
    const HybridOperator rho = HybridOperator::pure(classical_product(a0, 1, cfg), cfg);
    for (cplx b : {cplx(0.5, 0.5), cplx(-1.7, 1.0), cplx(1.2, -2.0)}) {
      const cplx v = characteristic_matrix(rho, b)(1, 1);
      CHECK(std::abs(v - std::exp(b * std::conj(a0) - std::conj(b) * a0)) < 1e-10);
      CHECK(std::abs(std::abs(v) - 1.0) < 1e-10);
    }
  }

  SUBCASE("matches the matrix-exponential definition") {
    FockConfig small;
    small.n_max = 20;
    const HybridOperator rho = HybridOperator::pure(example_state(ExampleKind::mixed_superposition, 0.9, small).state, small);
    for (cplx b : {cplx(0.4, -0.2), cplx(-1.0, 1.3)}) {
      const QubitMatrix ref = characteristic_reference(rho, b);
      CHECK((characteristic_matrix(rho, b) - ref).cwiseAbs().maxCoeff() < 1e-9);
    }
  }

  SUBCASE("accuracy guard") {
    const HybridOperator vac = HybridOperator::pure(classical_product(0.0, 0, cfg), cfg);
    CHECK(error_kind_of([&] { characteristic_matrix(vac, cplx(3.0, 2.0)); }) == ErrorKind::accuracy);
  }
}

TEST_CASE("numeric P-matrix agrees with the closed form on the cat family") {
  FockConfig cfg;
  for (double w : {1.0, 1.5, 2.0}) {
    for (double sigma : {0.0, 0.5}) {
      const CatParams p{1.0, Dephasing::gaussian(sigma), 0.0};
      const GridSpec grid = GridSpec::square(-3, 3, 41);
      const PMatrixGrid num = numeric_pmatrix(dephased_cat(p, cfg), grid, FilterSpec{w});
      const PMatrixGrid ref = closed_form_pmatrix_grid(p, grid, FilterSpec{w});
      CHECK(max_deviation(num, ref) < 1e-4);
      CHECK(pmatrix_hermiticity_error(num) < 1e-10);
    }
  }
}

TEST_CASE("classical product P-matrix is a translated filter") {
  FockConfig cfg;
  const FilterSpec f{1.5};
  const cplx a0(0.6, -0.4);
  const HybridOperator rho = HybridOperator::pure(classical_product(a0, 0, cfg), cfg);
  const GridSpec grid = GridSpec::square(-2.5, 2.5, 21);
  const PMatrixGrid g = numeric_pmatrix(rho, grid, f);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const QubitMatrix& m = g.at(i, j);
      const double expected = filter_value(cplx(grid.x(i), grid.y(j)) - a0, f);
      CHECK(std::abs(m(0, 0) - expected) < 1e-8);
      CHECK(std::abs(m(1, 1)) < 1e-12);
      CHECK(std::abs(m(0, 1)) < 1e-12);
    }
  }
  CHECK(classicality_flags(g, 1e-7).classical());
}

TEST_CASE("classicality flags") {
  FockConfig cfg;
  const FilterSpec f{1.5};

  SUBCASE("fully dephased cat is classical") {
    const HybridOperator rho = dephased_cat({1.0, Dephasing::complete(), 0.0}, cfg);
    const PMatrixGrid g = numeric_pmatrix(rho, GridSpec::square(-3, 3, 25), f);
    const ClassicalityReport r = classicality_flags(g, 1e-7);
    CHECK(r.classical());
    CHECK(!r.offdiagonal_witness);
  }

  SUBCASE("partially dephased cat has off-diagonal entries") {
    const HybridOperator rho = dephased_cat({1.0, Dephasing::gaussian(0.5), 0.0}, cfg);
    const PMatrixGrid g = numeric_pmatrix(rho, GridSpec::square(-3, 3, 25), f);
    const ClassicalityReport r = classicality_flags(g, 1e-7);
    CHECK(r.offdiagonal_nonzero);
    REQUIRE(r.offdiagonal_witness);
    CHECK(r.offdiagonal_witness->value > 1e-3);
    CHECK(!r.p00_negative);
    CHECK(!r.p11_negative);
  }

  SUBCASE("even cat has a negative diagonal") {
    // w = pi / alpha puts the interference minimum of P_00 at reachable y.
    const double alpha = 1.5;
    const FilterSpec wide{kPi / alpha};
    const HybridOperator phi = HybridOperator::pure(example_state(ExampleKind::phi, alpha, cfg).state, cfg);
    check_density(phi);
    const PMatrixGrid g = numeric_pmatrix(phi, GridSpec::cross_section(0.0, -1.5, 1.5, 61), wide);
    const ClassicalityReport r = classicality_flags(g, 1e-7);
    CHECK(r.p00_negative);
    REQUIRE(r.p00_witness);
    CHECK(r.p00_witness->value < -1e-3);
    CHECK(!r.offdiagonal_nonzero);
  }
}

TEST_CASE("grid evaluation does not depend on the thread count") {
  FockConfig cfg;
  const HybridOperator rho = dephased_cat({1.0, Dephasing::gaussian(0.5), 0.0}, cfg);
  const GridSpec grid = GridSpec::square(-2, 2, 9);
  PMatrixQuadrature one, many;
  one.threads = 1;
  many.threads = 4;
  const PMatrixGrid a = numeric_pmatrix(rho, grid, FilterSpec{1.5}, one);
  const PMatrixGrid b = numeric_pmatrix(rho, grid, FilterSpec{1.5}, many);
  CHECK(max_deviation(a, b) == 0.0);
}

TEST_CASE("quadrature non-convergence is reported") {
  FockConfig cfg;
  const HybridOperator rho = dephased_cat({1.0, Dephasing::gaussian(0.5), 0.0}, cfg);
  PMatrixQuadrature q;
  q.initial_nodes = 2;
  q.max_nodes = 4;
  q.tol = 1e-14;
  CHECK(error_kind_of([&] { numeric_pmatrix(rho, GridSpec::square(-3, 3, 5), FilterSpec{1.5}, q); }) ==
        ErrorKind::convergence);
}

TEST_CASE("user-supplied filter transform") {
  // Separable Gaussian transform truncated at 4 widths: a smooth filter with
  // no kinks. The P-matrix must remain hermitian and have unit-order mass.
  FockConfig cfg;
  FilterTransform g;
  g.half_width = 2.0;
  g.value = [](double u, double v) { return std::exp(-2.0 * (u * u + v * v)); };
  const HybridOperator rho = dephased_cat({1.0, Dephasing::gaussian(0.5), 0.0}, cfg);
  const PMatrixGrid grid = numeric_pmatrix(rho, GridSpec::square(-5, 5, 41), g);
  CHECK(pmatrix_hermiticity_error(grid) < 1e-10);
  CHECK(integrated_trace(grid) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("grid CSV layout") {
  const CatParams p{1.0, Dephasing::gaussian(0.5), 0.0};
  GridSpec spec{-1.0, 1.0, 3, 0.0, 1.0, 2};
  const PMatrixGrid g = closed_form_pmatrix_grid(p, spec, FilterSpec{1.5});
  std::ostringstream os;
  write_pmatrix_csv(g, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,re_P00,re_P11,re_P01,im_P01");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 6);
  // Row-major in y then x: x varies fastest.
  CHECK(rows[0].rfind("-1,0,", 0) == 0);
  CHECK(rows[1].rfind("0,0,", 0) == 0);
  CHECK(rows[3].rfind("-1,1,", 0) == 0);
}
