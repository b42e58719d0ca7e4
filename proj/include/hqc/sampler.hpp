#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hqc/measurement.hpp"
#include "hqc/moments.hpp"

namespace hqc {

inline constexpr const char* kGeneratorName = "mt19937_64 substreams seeded by splitmix64(seed, chunk)";

/// Simulated outcomes of the joint (y, sigma_x) measurement.
struct SampleBatch {
  std::vector<double> y;
  std::vector<Outcome> s;
  std::uint64_t seed = 0;
  std::string generator = kGeneratorName;
  std::string source;                              // "closed_form" or "numeric"
  std::map<std::string, std::string> source_params;

  std::size_t size() const { return y.size(); }
  std::size_t count(Outcome o) const;
};

struct SamplerOptions {
  std::size_t chunk = 1 << 16;  // samples per substream
  unsigned threads = 0;
  int table_points = 8001;      // numeric path: tabulation grid size
};

/// Closed-form distributions are sampled by rejection against a Gaussian
/// envelope, numeric ones by inverse CDF on a tabulated grid. The batch is
/// a function of (distribution, n, seed) only.
SampleBatch sample_joint(const JointDistribution& p, std::size_t n, std::uint64_t seed,
                         const SamplerOptions& opts = {});

struct Estimate {
  double value = 0;
  double error = 0;
};

struct EstimatedMoments {
  Eigen::Matrix3d M = Eigen::Matrix3d::Identity();
  Estimate mu1, mu2, mu12;
  Estimate mu1_plus, mu1_minus;  // variance of y given s
  int bootstrap_resamples = 0;
};

inline constexpr int kBootstrapResamples = 200;
inline constexpr double kConditioningBinWidth = 0.1;

/// Plug-in estimates with bootstrap standard errors. Requires n >= 100.
EstimatedMoments estimate_moments(const SampleBatch& b, int resamples = kBootstrapResamples);

/// Variance of sigma_x given y, from samples with |y_i - y| <= width/2.
/// Throws Error(undefined_conditional) for an empty bin.
Estimate estimate_conditional_sigmax(const SampleBatch& b, double y, double width = kConditioningBinWidth,
                                     int resamples = kBootstrapResamples);

/// Columns y,s with s written as +1 / -1.
void write_batch_csv(const SampleBatch& b, std::ostream& os);

}  // namespace hqc
