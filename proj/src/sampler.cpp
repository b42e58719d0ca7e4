#include "hqc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <limits>
#include <random>
#include <sstream>

#include "hqc/csv.hpp"
#include "hqc/error.hpp"
#include "hqc/rng.hpp"
#include "parallel.hpp"

namespace hqc {

namespace {

constexpr std::uint64_t kBootstrapStream = 0xb5ad4eceda1ce2a9ULL;

struct Chunk {
  std::vector<double> y;
  std::vector<Outcome> s;
};

// Draws y from p(y|s) for the closed-form family: accept a standard normal
// proposal with probability (1 +- tau cos(2 a0 y)) / 2.
class RejectionSampler {
 public:
  RejectionSampler(double tau, double alpha0, double p_plus) : tau_(tau), a0_(alpha0), p_plus_(p_plus) {}

  void draw(std::mt19937_64& gen, std::size_t n, Chunk& out) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> nd;
    for (std::size_t i = 0; i < n; ++i) {
      const Outcome s = u(gen) < p_plus_ ? Outcome::plus : Outcome::minus;
      const double sg = sign_of(s);
      double y = 0;
      for (;;) {
        y = nd(gen);
        if (2.0 * u(gen) < 1.0 + sg * tau_ * std::cos(2.0 * a0_ * y)) break;
      }
      out.y.push_back(y);
      out.s.push_back(s);
    }
  }

 private:
  double tau_, a0_, p_plus_;
};

// Piecewise-uniform density between grid nodes, one CDF per outcome.
class TableSampler {
 public:
  TableSampler(const JointDistribution& p, double half_width, int points) {
    ys_.resize(points);
    const double h = 2.0 * half_width / (points - 1);
    for (int i = 0; i < points; ++i) ys_[i] = -half_width + i * h;
    double total = 0;
    for (int k = 0; k < 2; ++k) {
      const Outcome s = k == 0 ? Outcome::plus : Outcome::minus;
      std::vector<double> dens(points);
      for (int i = 0; i < points; ++i) {
        dens[i] = p(ys_[i], s);
        if (dens[i] < -1e-10) {
          std::ostringstream os;
          os << "tabulated density is negative (" << dens[i] << ") at y = " << ys_[i];
          throw Error(ErrorKind::sampling, os.str());
        }
        dens[i] = std::max(dens[i], 0.0);
      }
      cdf_[k].assign(points, 0.0);
      for (int i = 1; i < points; ++i) cdf_[k][i] = cdf_[k][i - 1] + 0.5 * h * (dens[i - 1] + dens[i]);
      mass_[k] = cdf_[k].back();
      const double expected = p.marginal(s);
      if (std::abs(mass_[k] - expected) > 1e-6) {
        std::ostringstream os;
        os << "tabulated mass " << mass_[k] << " for outcome " << to_string(s)
           << " disagrees with the marginal " << expected;
        throw Error(ErrorKind::sampling, os.str());
      }
      total += mass_[k];
    }
    p_plus_ = mass_[0] / total;
  }

  void draw(std::mt19937_64& gen, std::size_t n, Chunk& out) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const int k = u(gen) < p_plus_ ? 0 : 1;
      const std::vector<double>& c = cdf_[k];
      const double target = u(gen) * mass_[k];
      auto it = std::upper_bound(c.begin(), c.end(), target);
      std::size_t j = std::clamp<std::size_t>(it - c.begin(), 1, c.size() - 1);
      while (j > 1 && c[j] == c[j - 1]) --j;  // skip empty cells
      const double width = c[j] - c[j - 1];
      const double frac = width > 0 ? (target - c[j - 1]) / width : 0.5;
      out.y.push_back(ys_[j - 1] + std::clamp(frac, 0.0, 1.0) * (ys_[j] - ys_[j - 1]));
      out.s.push_back(k == 0 ? Outcome::plus : Outcome::minus);
    }
  }

 private:
  std::vector<double> ys_;
  std::vector<double> cdf_[2];
  double mass_[2] = {0, 0};
  double p_plus_ = 0.5;
};

template <class Sampler>
void run_chunks(const Sampler& sampler, std::size_t n, std::uint64_t seed, const SamplerOptions& opts,
                SampleBatch& batch) {
  const std::size_t chunk = std::max<std::size_t>(opts.chunk, 1);
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<Chunk> parts(chunks);
  detail::parallel_for(chunks, opts.threads, [&](std::size_t c) {
    std::mt19937_64 gen(stream_seed(seed, c));
    const std::size_t count = std::min(chunk, n - c * chunk);
    parts[c].y.reserve(count);
    parts[c].s.reserve(count);
    sampler.draw(gen, count, parts[c]);
  });
  batch.y.reserve(n);
  batch.s.reserve(n);
  for (const Chunk& p : parts) {
    batch.y.insert(batch.y.end(), p.y.begin(), p.y.end());
    batch.s.insert(batch.s.end(), p.s.begin(), p.s.end());
  }
}

std::string num(double v) { return format_number(v); }

struct Accum {
  double n = 0, sy = 0, ss = 0, syy = 0, sys = 0;
  double np = 0, syp = 0, syyp = 0;
  double nm = 0, sym = 0, syym = 0;

  void add(double y, Outcome s, double w = 1.0) {
    const double sg = sign_of(s);
    n += w;
    sy += w * y;
    ss += w * sg;
    syy += w * y * y;
    sys += w * y * sg;
    if (s == Outcome::plus) {
      np += w;
      syp += w * y;
      syyp += w * y * y;
    } else {
      nm += w;
      sym += w * y;
      syym += w * y * y;
    }
  }
};

struct PointEstimate {
  Eigen::Matrix3d M;
  double mu1, mu2, mu12, mu1_plus, mu1_minus;
};

double class_variance(double count, double sum, double sum_sq) {
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  const double mean = sum / count;
  return (sum_sq - count * mean * mean) / (count - 1);
}

PointEstimate finish(const Accum& a) {
  PointEstimate e;
  const double my = a.sy / a.n, ms = a.ss / a.n;
  const double myy = a.syy / a.n, mys = a.sys / a.n;
  e.M << 1.0, my, ms, my, myy, mys, ms, mys, 1.0;
  e.mu1 = myy - my * my;
  e.mu2 = 1.0 - ms * ms;
  e.mu12 = e.M.determinant();
  e.mu1_plus = class_variance(a.np, a.syp, a.syyp);
  e.mu1_minus = class_variance(a.nm, a.sym, a.syym);
  return e;
}

double stddev(const std::vector<double>& v) {
  std::vector<double> finite;
  for (double x : v) {
    if (std::isfinite(x)) finite.push_back(x);
  }
  if (finite.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mean = 0;
  for (double x : finite) mean += x;
  mean /= finite.size();
  double ss = 0;
  for (double x : finite) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (finite.size() - 1));
}

// Bootstrap resample counts: multinomial(n; 1/n, ...) drawn as n uniform indices.
std::vector<std::uint32_t> resample_counts(std::mt19937_64& gen, std::size_t n) {
  std::vector<std::uint32_t> counts(n, 0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t i = 0; i < n; ++i) ++counts[pick(gen)];
  return counts;
}

}  // namespace

std::size_t SampleBatch::count(Outcome o) const { return static_cast<std::size_t>(std::count(s.begin(), s.end(), o)); }

SampleBatch sample_joint(const JointDistribution& p, std::size_t n, std::uint64_t seed, const SamplerOptions& opts) {
  if (n < 1) throw Error(ErrorKind::validation, "sample count must be at least 1");
  SampleBatch batch;
  batch.seed = seed;
  if (const auto* cf = std::get_if<JointDistribution::ClosedForm>(&p.provenance())) {
    const CatParams& cp = cf->params;
    batch.source = "closed_form";
    batch.source_params = {{"alpha0", num(cp.alpha0)}, {"sigma", cp.dephasing.to_string()}, {"tau", num(cp.tau())}};
    RejectionSampler sampler(cp.tau(), cp.alpha0, p.marginal(Outcome::plus));
    run_chunks(sampler, n, seed, opts, batch);
  } else {
    const auto& nm = std::get<JointDistribution::Numeric>(p.provenance());
    batch.source = "numeric";
    batch.source_params = {{"n_max", std::to_string(nm.rho->n_max())}};
    const double half = std::min(p.reliable_abs_y().value_or(12.0), 12.0);
    TableSampler sampler(p, half, opts.table_points);
    run_chunks(sampler, n, seed, opts, batch);
  }
  return batch;
}

EstimatedMoments estimate_moments(const SampleBatch& b, int resamples) {
  const std::size_t n = b.size();
  if (n < 100) throw Error(ErrorKind::validation, "moment estimation needs at least 100 samples");
  if (resamples < 2) throw Error(ErrorKind::validation, "bootstrap needs at least 2 resamples");
  Accum all;
  for (std::size_t i = 0; i < n; ++i) all.add(b.y[i], b.s[i]);
  const PointEstimate point = finish(all);

  std::vector<double> mu1(resamples), mu2(resamples), mu12(resamples), mp(resamples), mm(resamples);
  std::mt19937_64 gen(stream_seed(b.seed ^ kBootstrapStream, 0));
  for (int r = 0; r < resamples; ++r) {
    const std::vector<std::uint32_t> counts = resample_counts(gen, n);
    Accum a;
    for (std::size_t i = 0; i < n; ++i) {
      if (counts[i]) a.add(b.y[i], b.s[i], counts[i]);
    }
    const PointEstimate e = finish(a);
    mu1[r] = e.mu1;
    mu2[r] = e.mu2;
    mu12[r] = e.mu12;
    mp[r] = e.mu1_plus;
    mm[r] = e.mu1_minus;
  }
  EstimatedMoments out;
  out.M = point.M;
  out.mu1 = {point.mu1, stddev(mu1)};
  out.mu2 = {point.mu2, stddev(mu2)};
  out.mu12 = {point.mu12, stddev(mu12)};
  out.mu1_plus = {point.mu1_plus, stddev(mp)};
  out.mu1_minus = {point.mu1_minus, stddev(mm)};
  out.bootstrap_resamples = resamples;
  return out;
}

Estimate estimate_conditional_sigmax(const SampleBatch& b, double y, double width, int resamples) {
  if (!(width > 0)) throw Error(ErrorKind::validation, "bin width must be positive");
  std::vector<double> signs;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (std::abs(b.y[i] - y) <= 0.5 * width) signs.push_back(sign_of(b.s[i]));
  }
  if (signs.empty()) {
    std::ostringstream os;
    os << "no samples in the conditioning bin around y = " << y;
    throw Error(ErrorKind::undefined_conditional, os.str());
  }
  auto variance = [](double count, double sum) {
    const double m = sum / count;
    return 1.0 - m * m;
  };
  double sum = 0;
  for (double v : signs) sum += v;
  const double value = variance(static_cast<double>(signs.size()), sum);

  std::mt19937_64 gen(stream_seed(b.seed ^ kBootstrapStream, 1));
  std::vector<double> boot(resamples);
  for (int r = 0; r < resamples; ++r) {
    const std::vector<std::uint32_t> counts = resample_counts(gen, signs.size());
    double s = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) s += counts[i] * signs[i];
    boot[r] = variance(static_cast<double>(signs.size()), s);
  }
  return {value, stddev(boot)};
}

void write_batch_csv(const SampleBatch& b, std::ostream& os) {
  CsvWriter csv(os, {"y", "s"});
  for (std::size_t i = 0; i < b.size(); ++i) {
    csv << b.y[i] << sign_of(b.s[i]);
    csv.end_row();
  }
}

}  // namespace hqc
