#include "minclaim/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "minclaim/errors.hpp"

namespace minclaim {

namespace {

// Survival values this small are indistinguishable from zero for every
// consumer here; clamping avoids subnormal noise in downstream ratios.
constexpr double kSurvivalFloor = 1e-300;

void check_x(double x) {
  if (!(x >= 0.0)) throw DomainError("x must be >= 0");
}

}  // namespace

// ---------------------------------------------------------------------------
// Baseline

Baseline Baseline::exponential(double rate) {
  Baseline b;
  b.kind = Kind::Exponential;
  b.rate = rate;
  b.validate();
  return b;
}

Baseline Baseline::stretched_exponential(double c, double k) {
  Baseline b;
  b.kind = Kind::StretchedExponential;
  b.c = c;
  b.k = k;
  b.validate();
  return b;
}

void Baseline::validate() const {
  switch (kind) {
    case Kind::Exponential:
      if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw DomainError("exponential baseline requires rate > 0");
      }
      break;
    case Kind::StretchedExponential:
      if (!(c > 0.0) || !std::isfinite(c) || !(k > 0.0) || !std::isfinite(k)) {
        throw DomainError("stretched_exponential baseline requires c, k > 0");
      }
      break;
  }
}

double Baseline::log_survival(double x) const {
  check_x(x);
  switch (kind) {
    case Kind::Exponential:
      return -rate * x;
    case Kind::StretchedExponential:
      return -c * std::pow(x, k);
  }
  return 0.0;
}

double Baseline::survival(double x) const { return std::exp(log_survival(x)); }

double Baseline::density(double x) const {
  return hazard(x) * survival(x);
}

double Baseline::cdf(double x) const { return -std::expm1(log_survival(x)); }

double Baseline::hazard(double x) const {
  check_x(x);
  switch (kind) {
    case Kind::Exponential:
      return rate;
    case Kind::StretchedExponential:
      return c * k * std::pow(x, k - 1.0);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// MarginalSpec

const char* family_name(MarginalFamily f) {
  switch (f) {
    case MarginalFamily::Phr: return "phr";
    case MarginalFamily::Prhr: return "prhr";
    case MarginalFamily::Harris: return "harris";
    case MarginalFamily::LomaxExponential: return "lomax_exponential";
  }
  return "unknown";
}

MarginalSpec MarginalSpec::phr(Baseline baseline, double lambda) {
  MarginalSpec m;
  m.family_ = MarginalFamily::Phr;
  m.baseline_ = baseline;
  m.lambda_ = lambda;
  m.validate_strict();
  return m;
}

MarginalSpec MarginalSpec::prhr(Baseline baseline, double lambda) {
  MarginalSpec m;
  m.family_ = MarginalFamily::Prhr;
  m.baseline_ = baseline;
  m.lambda_ = lambda;
  m.validate_strict();
  return m;
}

MarginalSpec MarginalSpec::harris(Baseline baseline, double lambda,
                                  double theta_h) {
  MarginalSpec m;
  m.family_ = MarginalFamily::Harris;
  m.baseline_ = baseline;
  m.lambda_ = lambda;
  m.theta_h_ = theta_h;
  m.validate_strict();
  return m;
}

MarginalSpec MarginalSpec::lomax_exponential(double alpha, double beta,
                                             double lambda) {
  MarginalSpec m;
  m.family_ = MarginalFamily::LomaxExponential;
  m.alpha_ = alpha;
  m.beta_ = beta;
  m.lambda_ = lambda;
  m.validate_strict();
  return m;
}

MarginalSpec MarginalSpec::unchecked(MarginalFamily family, Baseline baseline,
                                     double lambda, double theta_h,
                                     double alpha, double beta) {
  MarginalSpec m;
  m.family_ = family;
  m.baseline_ = baseline;
  m.lambda_ = lambda;
  m.theta_h_ = theta_h;
  m.alpha_ = alpha;
  m.beta_ = beta;
  baseline.validate();
  if (!(lambda > 0.0) || !(theta_h > 0.0) || !(alpha > 0.0) || !(beta > 0.0)) {
    throw DomainError("marginal parameters must be positive");
  }
  return m;
}

void MarginalSpec::validate_strict() const {
  baseline_.validate();
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw DomainError("marginal requires lambda > 0");
  }
  if (family_ == MarginalFamily::Harris &&
      (!(theta_h_ >= 1.0) || !std::isfinite(theta_h_))) {
    throw DomainError("harris requires theta_h >= 1");
  }
  if (family_ == MarginalFamily::LomaxExponential) {
    if (!(alpha_ > 0.0 && alpha_ <= 1.0)) {
      throw DomainError("lomax_exponential requires 0 < alpha <= 1");
    }
    if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
      throw DomainError("lomax_exponential requires beta > 0");
    }
  }
}

MarginalSpec MarginalSpec::with_lambda(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("marginal requires lambda > 0");
  }
  MarginalSpec m = *this;
  m.lambda_ = lambda;
  return m;
}

double MarginalSpec::survival(double x) const {
  check_x(x);
  if (x == 0.0) return 1.0;
  double s = 0.0;
  switch (family_) {
    case MarginalFamily::Phr:
      s = std::exp(lambda_ * baseline_.log_survival(x));
      break;
    case MarginalFamily::Prhr: {
      double f = baseline_.cdf(x);
      s = f > 0.0 ? -std::expm1(lambda_ * std::log(f)) : 1.0;
      break;
    }
    case MarginalFamily::Harris: {
      // (lambda T / D)^{1/theta}, T = F_bar^theta, D = 1 - (1-lambda) T;
      // log D via log1p so lambda near 1 or deep tails do not cancel.
      double ls = baseline_.log_survival(x);
      double t = std::exp(theta_h_ * ls);
      double log_d = std::log1p(-(1.0 - lambda_) * t);
      s = std::exp((std::log(lambda_) + theta_h_ * ls - log_d) / theta_h_);
      break;
    }
    case MarginalFamily::LomaxExponential: {
      // (lambda / (e^{beta x} + lambda - 1))^alpha; the denominator log is
      // split at beta x = 30 to dodge expm1 overflow on one side and
      // cancellation on the other.
      double bx = beta_ * x;
      double log_denom =
          bx > 30.0 ? bx + std::log1p((lambda_ - 1.0) * std::exp(-bx))
                    : std::log(std::expm1(bx) + lambda_);
      s = std::exp(alpha_ * (std::log(lambda_) - log_denom));
      break;
    }
  }
  return s < kSurvivalFloor ? 0.0 : s;
}

double MarginalSpec::density(double x) const {
  if (!(x > 0.0)) throw DomainError("density needs x > 0");
  switch (family_) {
    case MarginalFamily::Phr:
      // lambda f F_bar^{lambda-1} = lambda h_baseline F_bar^lambda
      return lambda_ * baseline_.hazard(x) *
             std::exp(lambda_ * baseline_.log_survival(x));
    case MarginalFamily::Prhr:
      return lambda_ * std::pow(baseline_.cdf(x), lambda_ - 1.0) *
             baseline_.density(x);
    case MarginalFamily::Harris: {
      double t = std::exp(theta_h_ * baseline_.log_survival(x));
      double d = 1.0 - (1.0 - lambda_) * t;
      return survival(x) * baseline_.hazard(x) / d;
    }
    case MarginalFamily::LomaxExponential: {
      double em = std::exp(-beta_ * x);
      return alpha_ * beta_ * survival(x) / (1.0 + (lambda_ - 1.0) * em);
    }
  }
  return 0.0;
}

double MarginalSpec::inverse_survival(double q) const {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("q must be in (0,1]");
  if (q == 1.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (survival(hi) > q) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 1100) {
      throw DomainError("inverse_survival failed to bracket q");
    }
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double s = survival(mid);
    if (std::fabs(s - q) <= 1e-12) return mid;
    (s > q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double MarginalSpec::survival_dlambda(double x) const {
  check_x(x);
  switch (family_) {
    case MarginalFamily::Phr: {
      double ls = baseline_.log_survival(x);
      return ls * std::exp(lambda_ * ls);
    }
    case MarginalFamily::Prhr: {
      double f = baseline_.cdf(x);
      if (f <= 0.0) return 0.0;
      double lf = std::log(f);
      return -lf * std::exp(lambda_ * lf);
    }
    case MarginalFamily::Harris: {
      // F_bar_H (1 - T) / (theta lambda D)
      double ls = baseline_.log_survival(x);
      double t = std::exp(theta_h_ * ls);
      double one_minus_t = -std::expm1(theta_h_ * ls);
      double d = 1.0 - (1.0 - lambda_) * t;
      return survival(x) * one_minus_t / (theta_h_ * lambda_ * d);
    }
    case MarginalFamily::LomaxExponential: {
      // alpha (E - 1) F_bar / (lambda (E + lambda - 1)), with the E ratio
      // rewritten through e^{-beta x} so it never overflows.
      double em = std::exp(-beta_ * x);
      double r = -std::expm1(-beta_ * x) / (1.0 + (lambda_ - 1.0) * em);
      return alpha_ * survival(x) * r / lambda_;
    }
  }
  return 0.0;
}

double MarginalSpec::survival_d2lambda(double x) const {
  check_x(x);
  switch (family_) {
    case MarginalFamily::Phr: {
      double ls = baseline_.log_survival(x);
      return ls * ls * std::exp(lambda_ * ls);
    }
    case MarginalFamily::Prhr: {
      double f = baseline_.cdf(x);
      if (f <= 0.0) return 0.0;
      double lf = std::log(f);
      return -lf * lf * std::exp(lambda_ * lf);
    }
    case MarginalFamily::Harris: {
      // F_bar_H (1-T) [ (1-T)(1/theta - 1) - 2 lambda T ] / (theta lambda^2 D^2)
      double ls = baseline_.log_survival(x);
      double t = std::exp(theta_h_ * ls);
      double one_minus_t = -std::expm1(theta_h_ * ls);
      double d = 1.0 - (1.0 - lambda_) * t;
      double bracket = one_minus_t * (1.0 / theta_h_ - 1.0) - 2.0 * lambda_ * t;
      return survival(x) * one_minus_t * bracket /
             (theta_h_ * lambda_ * lambda_ * d * d);
    }
    case MarginalFamily::LomaxExponential: {
      // alpha (E-1) [ (alpha-1)(E-1) - 2 lambda ] F_bar / (lambda^2 (E+lambda-1)^2)
      // via r = (E-1)/(E+lambda-1) and q = 2 lambda / (E+lambda-1).
      double em = std::exp(-beta_ * x);
      double den = 1.0 + (lambda_ - 1.0) * em;
      double r = -std::expm1(-beta_ * x) / den;
      double q = 2.0 * lambda_ * em / den;
      return alpha_ * survival(x) * r * ((alpha_ - 1.0) * r - q) /
             (lambda_ * lambda_);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Concavity certificate

ConcavityCertificate certify_lambda_concave_increasing(
    const MarginalSpec& shape, const std::vector<double>& x_grid,
    const std::vector<double>& lambda_grid) {
  if (x_grid.empty() || lambda_grid.empty()) {
    throw DomainError("certifier needs nonempty grids");
  }
  // Central differences with slack wide enough to absorb their roundoff at
  // the step sizes below, yet far under any structural violation.
  constexpr double kSlack = 1e-6;
  constexpr double kPartialRelTol = 1e-5;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  ConcavityCertificate cert;
  cert.min_monotone_slack = std::numeric_limits<double>::infinity();
  cert.max_second_diff = -std::numeric_limits<double>::infinity();
  double mono_x = 0.0, mono_lambda = 0.0;
  double sec_x = 0.0, sec_lambda = 0.0;
  double mismatch_x = 0.0, mismatch_lambda = 0.0;
  for (double lam : lambda_grid) {
    if (!(lam > 0.0)) throw DomainError("lambda grid must be positive");
    double h = std::min(std::max(1e-6, 1e-4 * lam), 0.5 * lam);
    // Cancellation floor of the difference quotients; folded into the
    // mismatch denominator so near-zero partials are not flagged on noise.
    double guard1 = 8.0 * kEps / h / kPartialRelTol;
    double guard2 = 32.0 * kEps / (h * h) / kPartialRelTol;
    MarginalSpec lo = shape.with_lambda(lam - h);
    MarginalSpec mid = shape.with_lambda(lam);
    MarginalSpec hi = shape.with_lambda(lam + h);
    for (double x : x_grid) {
      double sl = lo.survival(x);
      double s0 = mid.survival(x);
      double sh = hi.survival(x);
      double d1 = (sh - sl) / (2.0 * h);
      double d2 = (sh - 2.0 * s0 + sl) / (h * h);
      if (d1 < cert.min_monotone_slack) {
        cert.min_monotone_slack = d1;
        mono_x = x;
        mono_lambda = lam;
      }
      if (d2 > cert.max_second_diff) {
        cert.max_second_diff = d2;
        sec_x = x;
        sec_lambda = lam;
      }
      double cf1 = mid.survival_dlambda(x);
      double cf2 = mid.survival_d2lambda(x);
      double rel1 = std::fabs(cf1 - d1) /
                    (std::max(std::fabs(cf1), std::fabs(d1)) + guard1);
      double rel2 = std::fabs(cf2 - d2) /
                    (std::max(std::fabs(cf2), std::fabs(d2)) + guard2);
      double rel = std::max(rel1, rel2);
      if (rel > cert.max_partial_rel_err) {
        cert.max_partial_rel_err = rel;
        mismatch_x = x;
        mismatch_lambda = lam;
      }
    }
  }
  bool monotone_ok = cert.min_monotone_slack >= -kSlack;
  bool concave_ok = cert.max_second_diff <= kSlack;
  bool partials_ok = cert.max_partial_rel_err <= kPartialRelTol;
  cert.verdict = monotone_ok && concave_ok && partials_ok;
  char buf[180];
  if (!monotone_ok) {
    cert.witness_x = mono_x;
    cert.witness_lambda = mono_lambda;
    std::snprintf(buf, sizeof buf,
                  "survival decreases in lambda: slope %.6g at x=%.6g, "
                  "lambda=%.6g",
                  cert.min_monotone_slack, mono_x, mono_lambda);
  } else if (!concave_ok) {
    cert.witness_x = sec_x;
    cert.witness_lambda = sec_lambda;
    std::snprintf(buf, sizeof buf,
                  "survival convex in lambda: curvature %.6g at x=%.6g, "
                  "lambda=%.6g",
                  cert.max_second_diff, sec_x, sec_lambda);
  } else if (!partials_ok) {
    cert.witness_x = mismatch_x;
    cert.witness_lambda = mismatch_lambda;
    std::snprintf(buf, sizeof buf,
                  "closed-form partial disagrees with finite difference: "
                  "rel err %.6g at x=%.6g, lambda=%.6g",
                  cert.max_partial_rel_err, mismatch_x, mismatch_lambda);
  } else {
    cert.witness_x = mono_x;
    cert.witness_lambda = mono_lambda;
    std::snprintf(buf, sizeof buf,
                  "nondecreasing and concave on the grid (min slope %.6g, "
                  "max curvature %.6g)",
                  cert.min_monotone_slack, cert.max_second_diff);
  }
  cert.detail = buf;
  return cert;
}

}  // namespace minclaim
