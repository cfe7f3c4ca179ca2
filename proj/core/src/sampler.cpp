#include "minclaim/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "minclaim/errors.hpp"
#include "minclaim/json_io.hpp"
#include "rng.hpp"

namespace minclaim {

namespace {

// Logarithmic-series frailty for the frank family: pmf -p^k/(k log(1-p)),
// sampled by inversion of a cumulative table that is extended on demand and
// cached across draws.
class LogSeriesSampler {
 public:
  explicit LogSeriesSampler(double p) : p_(p) {
    double first = -p_ / std::log1p(-p_);
    cumulative_.push_back(first);
    last_pmf_ = first;
  }

  double draw(detail::Rng& rng) {
    double u = rng.uniform01_pos();
    while (u > cumulative_.back()) {
      double k = static_cast<double>(cumulative_.size());
      double next = last_pmf_ * p_ * k / (k + 1.0);
      if (!(next > 0.0) || cumulative_.back() + next == cumulative_.back()) {
        break;  // tail mass below double resolution; clamp to the last bin
      }
      last_pmf_ = next;
      cumulative_.push_back(cumulative_.back() + next);
    }
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<double>(it - cumulative_.begin()) + 1.0;
  }

 private:
  double p_;
  double last_pmf_;
  std::vector<double> cumulative_;
};

}  // namespace

CopulaSample sample_archimedean(const CopulaSpec& copula, int n,
                                std::uint64_t seed) {
  copula.validate();
  if (n < 1) throw DomainError("need n >= 1 samples");
  switch (copula.family) {
    case CopulaFamily::Independence:
    case CopulaFamily::Clayton:
    case CopulaFamily::GumbelHougaard:
    case CopulaFamily::Frank:
      break;
    default:
      throw UnsupportedError("sampling supports independence, clayton, "
                             "gumbel_hougaard, and frank");
  }
  CopulaSample out;
  out.n_rows = n;
  out.n_cols = copula.dim;
  out.data.resize(static_cast<std::size_t>(n) *
                  static_cast<std::size_t>(copula.dim));
  detail::Rng rng(seed);
  const int d = copula.dim;
  const double theta = copula.theta;

  if (copula.family == CopulaFamily::Independence ||
      (copula.family == CopulaFamily::GumbelHougaard && theta == 1.0)) {
    for (double& cell : out.data) cell = rng.uniform01_pos();
    return out;
  }

  LogSeriesSampler log_series(copula.family == CopulaFamily::Frank
                                  ? -std::expm1(-theta)
                                  : 0.5);
  for (int row = 0; row < n; ++row) {
    double v = 0.0;
    switch (copula.family) {
      case CopulaFamily::Clayton:
        v = rng.gamma(1.0 / theta);
        break;
      case CopulaFamily::GumbelHougaard:
        v = rng.positive_stable(1.0 / theta);
        break;
      case CopulaFamily::Frank:
        v = log_series.draw(rng);
        break;
      default:
        break;
    }
    for (int col = 0; col < d; ++col) {
      double e = rng.exponential();
      double u;
      if (copula.family == CopulaFamily::Clayton) {
        u = std::pow(1.0 + e / v, -1.0 / theta);
      } else {
        u = copula.generator_inverse(e / v);
      }
      out.data[static_cast<std::size_t>(row) * static_cast<std::size_t>(d) +
               static_cast<std::size_t>(col)] = u;
    }
  }
  return out;
}

SampleBatch sample_smallest_claim(const Portfolio& pf, int n,
                                  std::uint64_t seed) {
  if (n < 1) throw DomainError("need n >= 1 samples");
  std::uint64_t state = seed;
  std::uint64_t copula_seed = detail::splitmix64_next(state);
  std::uint64_t bernoulli_seed = detail::splitmix64_next(state);
  CopulaSample joint = sample_archimedean(pf.copula, n, copula_seed);
  detail::Rng thinning(bernoulli_seed);

  SampleBatch batch;
  batch.n_samples = n;
  batch.seed = seed;
  batch.fingerprint = portfolio_fingerprint(pf);
  batch.y_min.resize(static_cast<std::size_t>(n));

  const int d = pf.size();
  std::vector<MarginalSpec> risks;
  risks.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) risks.push_back(pf.risk(i));

  for (int row = 0; row < n; ++row) {
    // Indicators are always drawn, all d of them, so the thinning stream
    // stays aligned regardless of outcomes.
    bool all_claim = true;
    for (int i = 0; i < d; ++i) {
      if (thinning.uniform01() >= pf.probs[static_cast<std::size_t>(i)]) {
        all_claim = false;
      }
    }
    double y = 0.0;
    if (all_claim) {
      // Survival orientation: X_i = F_bar^{-1}(U_i) so that
      // (F_bar_1(X_1), ..., F_bar_d(X_d)) is distributed as the copula.
      y = std::numeric_limits<double>::infinity();
      for (int i = 0; i < d; ++i) {
        double u = joint.at(row, i);
        double x = risks[static_cast<std::size_t>(i)].inverse_survival(u);
        y = std::min(y, x);
      }
    }
    batch.y_min[static_cast<std::size_t>(row)] = y;
  }
  return batch;
}

EmpiricalCurve empirical_survival(const SampleBatch& batch,
                                  const Portfolio& pf,
                                  const std::vector<double>& xs) {
  if (batch.y_min.empty()) throw DomainError("empty sample batch");
  std::vector<double> sorted = batch.y_min;
  std::sort(sorted.begin(), sorted.end());
  double n = static_cast<double>(sorted.size());
  EmpiricalCurve curve;
  curve.xs = xs;
  curve.survival.reserve(xs.size());
  curve.std_err.reserve(xs.size());
  for (double x : xs) {
    auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
    curve.survival.push_back(static_cast<double>(above) / n);
    double p = smallest_claim_survival(pf, x);
    curve.std_err.push_back(std::sqrt(p * (1.0 - p) / n));
  }
  return curve;
}

}  // namespace minclaim
