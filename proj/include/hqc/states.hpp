#pragma once

#include <functional>
#include <optional>
#include <string>

#include "hqc/fock.hpp"

namespace hqc {

/// Gaussian phase noise of standard deviation sigma, wrapped onto [0, 2pi).
/// Infinite sigma is a distinguished state (tau = 0) rather than a float inf.
class Dephasing {
 public:
  static Dephasing none() { return Dephasing(0.0, false); }
  static Dephasing gaussian(double sigma);
  static Dephasing complete() { return Dephasing(0.0, true); }
  /// Accepts a non-negative number or "inf"/"infinity".
  static Dephasing parse(const std::string& text);

  bool is_complete() const { return complete_; }
  /// +infinity when complete.
  double sigma() const;
  /// tau = exp(-sigma^2 / 2), exactly 0 when complete.
  double tau() const;
  std::string to_string() const;

 private:
  Dephasing(double sigma, bool complete) : sigma_(sigma), complete_(complete) {}

  double sigma_;
  bool complete_;
};

struct CatParams {
  double alpha0 = 1.0;
  Dephasing dephasing = Dephasing::none();
  double phi = 0.0;  // relative phase of the pure cat, [0, 2pi)

  double tau() const { return dephasing.tau(); }
  void validate() const;
};

/// |alpha> (x) |n>, n in {0, 1}.
HybridVector classical_product(cplx alpha, int n, const FockConfig& cfg);

/// (|a0>|0> + e^{i phi} |-a0>|1>) / sqrt(2)
HybridVector cat_pure(const CatParams& params, const FockConfig& cfg);

/// Phase-averaged cat: diagonal dyads with weight 1/2 and the two cross
/// dyads with weight tau/2.
HybridOperator dephased_cat(const CatParams& params, const FockConfig& cfg);

/// Same construction for an arbitrary phase distribution, given its first
/// Fourier coefficient (see dephasing_coherence). |coherence| <= 1.
HybridOperator dephased_cat_with_coherence(double alpha0, cplx coherence,
                                           const FockConfig& cfg);

enum class ExampleKind {
  phi,  // even cat (x) |0>
  psi,  // |alpha> (x) (|0> + |1>)/sqrt(2)
  chi,  // (|alpha>|0> + |-alpha>|1>)/sqrt(2)
  mixed_superposition,  // local and global superposition combined
};

struct ExampleState {
  HybridVector state;
  std::optional<std::string> warning;
};

/// alpha = 0 is accepted but yields a degenerate state and a warning.
ExampleState example_state(ExampleKind kind, cplx alpha, const FockConfig& cfg);

/// Numerically integrates the wrapped Gaussian against e^{i phi} over one
/// period and returns the real part (equal to exp(-sigma^2/2)). Requires
/// 0 < sigma < inf.
double dephasing_kernel_check(double sigma);

/// First Fourier coefficient int_0^{2pi} w(phi) e^{i phi} dphi of a
/// 2pi-periodic phase weight, after normalizing w to unit mass.
cplx dephasing_coherence(const std::function<double(double)>& weight);

}  // namespace hqc
