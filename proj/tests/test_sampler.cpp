#include "support.hpp"

#include <algorithm>
#include <sstream>

#include "hqc/sampler.hpp"
#include "hqc/states.hpp"

using namespace hqc;
using namespace hqc::testing;

namespace {

// CDF of y given s = + for the dephased cat, tabulated by trapezoid on a fine
// grid from the density phi(y) (1 + tau cos(2 a0 y)).
struct TabulatedCdf {
  double lo, h;
  std::vector<double> values;

  TabulatedCdf(double alpha0, double tau, double lim = 10.0, int points = 200001) : lo(-lim), h(2.0 * lim / (points - 1)) {
    values.resize(points);
    auto f = [&](double y) { return std::exp(-0.5 * y * y) * (1.0 + tau * std::cos(2.0 * alpha0 * y)); };
    values[0] = 0.0;
    for (int k = 1; k < points; ++k) {
      const double a = lo + (k - 1) * h;
      values[k] = values[k - 1] + 0.5 * h * (f(a) + f(a + h));
    }
    for (double& v : values) v /= values.back();
  }

  double operator()(double y) const {
    if (y <= lo) return 0.0;
    const double t = (y - lo) / h;
    const std::size_t k = static_cast<std::size_t>(t);
    if (k + 1 >= values.size()) return 1.0;
    return values[k] + (t - k) * (values[k + 1] - values[k]);
  }
};

double ks_statistic(std::vector<double> xs, const TabulatedCdf& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

std::vector<double> ys_with(const SampleBatch& b, Outcome s) {
  std::vector<double> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.s[i] == s) out.push_back(b.y[i]);
  }
  return out;
}

}  // namespace

TEST_CASE("completely dephased cat: y is standard normal, s is a fair coin") {
  const std::size_t n = 200000;
  const SampleBatch b = sample_joint(joint_closed_form({1.0, Dephasing::complete(), 0.0}), n, 11);
  REQUIRE(b.size() == n);
  double mean = 0.0, sq = 0.0;
  for (double y : b.y) {
    mean += y;
    sq += y * y;
  }
  mean /= n;
  sq /= n;
  CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(sq - 1.0) < 3.0 * std::sqrt(2.0 / n));
  const double frac = static_cast<double>(b.count(Outcome::plus)) / n;
  CHECK(std::abs(frac - 0.5) < 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
  CHECK(b.source == "closed_form");
  CHECK(b.seed == 11);
  CHECK(b.generator == kGeneratorName);
}

TEST_CASE("outcome frequency matches the marginal") {
  const std::size_t n = 1000000;
  const SampleBatch b = sample_joint(joint_closed_form({1.0, Dephasing::gaussian(0.5), 0.0}), n, 2026);
  const double p = frozen::p_plus;
  const double frac = static_cast<double>(b.count(Outcome::plus)) / n;
  CHECK(std::abs(frac - p) < 3.0 * std::sqrt(p * (1 - p) / n));
  CHECK(b.count(Outcome::plus) + b.count(Outcome::minus) == n);
}

TEST_CASE("conditional y distribution passes a KS test") {
  const double tau = frozen::tau_sigma_half;
  const SampleBatch b = sample_joint(joint_closed_form({1.0, Dephasing::gaussian(0.5), 0.0}), 100000, 5);
  const std::vector<double> plus = ys_with(b, Outcome::plus);
  const std::vector<double> minus = ys_with(b, Outcome::minus);
  // Critical value at the 0.001 level: 1.95 / sqrt(n).
  CHECK(ks_statistic(plus, TabulatedCdf(1.0, tau)) < 1.95 / std::sqrt(static_cast<double>(plus.size())));
  CHECK(ks_statistic(minus, TabulatedCdf(1.0, -tau)) < 1.95 / std::sqrt(static_cast<double>(minus.size())));
  // And clearly rejects the wrong branch.
  CHECK(ks_statistic(plus, TabulatedCdf(1.0, -tau)) > 5.0 / std::sqrt(static_cast<double>(plus.size())));
}

TEST_CASE("numeric path agrees with the closed form in distribution") {
  FockConfig cfg;
  const CatParams p{1.0, Dephasing::gaussian(0.5), 0.0};
  const SampleBatch b = sample_joint(joint_numeric(dephased_cat(p, cfg)), 100000, 8);
  CHECK(b.source == "numeric");
  const std::vector<double> plus = ys_with(b, Outcome::plus);
  CHECK(ks_statistic(plus, TabulatedCdf(1.0, p.tau())) < 1.95 / std::sqrt(static_cast<double>(plus.size())));
  const double frac = static_cast<double>(plus.size()) / b.size();
  CHECK(std::abs(frac - frozen::p_plus) < 3.0 * std::sqrt(frozen::p_plus * (1 - frozen::p_plus) / b.size()));
}

TEST_CASE("determinism") {
  const JointDistribution j = joint_closed_form({1.3, Dephasing::gaussian(0.2), 0.0});
  SamplerOptions one;
  one.threads = 1;
  SamplerOptions many;
  many.threads = 4;
  const SampleBatch a = sample_joint(j, 150000, 77, one);
  const SampleBatch b = sample_joint(j, 150000, 77, many);
  const SampleBatch c = sample_joint(j, 150000, 78, one);
  CHECK(a.y == b.y);
  CHECK(a.s == b.s);
  CHECK(a.y != c.y);
  // A prefix of a longer run is the shorter run.
  const SampleBatch shorter = sample_joint(j, 1000, 77, one);
  CHECK(std::equal(shorter.y.begin(), shorter.y.end(), a.y.begin()));
  CHECK(error_kind_of([&] { sample_joint(j, 0, 1); }) == ErrorKind::validation);
}

TEST_CASE("moment estimates") {
  SUBCASE("dephased cat") {
    const CatParams p{1.0, Dephasing::gaussian(0.5), 0.0};
    const SampleBatch b = sample_joint(joint_closed_form(p), 200000, 3);
    const EstimatedMoments e = estimate_moments(b);
    CHECK(e.bootstrap_resamples == kBootstrapResamples);
    CHECK(e.mu2.error > 0.0);
    CHECK(std::abs(e.mu2.value - frozen::mu2_sigma_half) < 3.0 * e.mu2.error);
    const Minors ref = closed_form_minors(p);
    CHECK(std::abs(e.mu1.value - ref.mu1) < 3.0 * e.mu1.error);
    CHECK(std::abs(e.mu12.value - ref.mu12) < 3.0 * e.mu12.error);
    CHECK(std::abs(e.mu1_plus.value - conditional_variance_y_closed_form(p, Outcome::plus)) < 3.0 * e.mu1_plus.error);
    CHECK(std::abs(e.mu1_minus.value - conditional_variance_y_closed_form(p, Outcome::minus)) < 3.0 * e.mu1_minus.error);
    CHECK(e.M(0, 0) == doctest::Approx(1.0));
  }

  SUBCASE("classical mixture") {
    const SampleBatch b = sample_joint(joint_closed_form({1.0, Dephasing::complete(), 0.0}), 100000, 4);
    const EstimatedMoments e = estimate_moments(b);
    for (const Estimate& x : {e.mu1, e.mu2, e.mu12}) CHECK(std::abs(x.value - 1.0) < 4.0 * x.error + 1e-3);
  }

  SUBCASE("bootstrap is reproducible") {
    const SampleBatch b = sample_joint(joint_closed_form({0.7, Dephasing::none(), 0.0}), 5000, 6);
    const EstimatedMoments x = estimate_moments(b, 50), y = estimate_moments(b, 50);
    CHECK(x.mu2.error == y.mu2.error);
    CHECK(x.bootstrap_resamples == 50);
  }

  SUBCASE("too few samples") {
    const SampleBatch b = sample_joint(joint_closed_form({1.0, Dephasing::none(), 0.0}), 50, 1);
    CHECK(error_kind_of([&] { estimate_moments(b); }) == ErrorKind::validation);
  }
}

TEST_CASE("conditional sigma_x variance from samples") {
  const CatParams p{1.0, Dephasing::gaussian(0.5), 0.0};
  const SampleBatch b = sample_joint(joint_closed_form(p), 1000000, 12);
  for (double y : {0.0, kPi / 4.0}) {
    const Estimate e = estimate_conditional_sigmax(b, y);
    // The bin averages over a width of 0.1; allow for that bias.
    CHECK(std::abs(e.value - conditional_variance_sigmax_closed_form(p, y)) < 4.0 * e.error + 5e-3);
  }
  CHECK(error_kind_of([&] { estimate_conditional_sigmax(b, 50.0); }) == ErrorKind::undefined_conditional);
}

TEST_CASE("batch CSV") {
  SampleBatch b;
  b.y = {0.5, -1.25};
  b.s = {Outcome::plus, Outcome::minus};
  std::ostringstream os;
  write_batch_csv(b, os);
  CHECK(os.str() == "y,s\n0.5,1\n-1.25,-1\n");
}
