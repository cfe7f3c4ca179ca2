#include "minclaim/portfolio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "minclaim/errors.hpp"

namespace minclaim {

namespace {

void check_grid(const std::vector<double>& xs) {
  if (xs.empty()) throw DomainError("x grid is empty");
  if (!(xs.front() >= 0.0)) throw DomainError("x grid must be non-negative");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw DomainError("x grid must be strictly increasing");
    }
  }
}

}  // namespace

Portfolio Portfolio::make(std::vector<double> lambdas,
                          std::vector<double> probs, MarginalSpec marginal,
                          CopulaSpec copula) {
  if (lambdas.empty() || lambdas.size() != probs.size()) {
    throw DomainError("lambdas and probs must be nonempty and equally long");
  }
  copula.validate();
  if (static_cast<std::size_t>(copula.dim) != lambdas.size()) {
    throw DomainError("copula dim must equal the number of risks");
  }
  for (double l : lambdas) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw DomainError("lambdas must be strictly positive");
    }
  }
  for (double p : probs) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw DomainError("probs must lie in (0,1]");
    }
  }
  return Portfolio{std::move(lambdas), std::move(probs), std::move(marginal),
                   std::move(copula)};
}

double Portfolio::prob_product() const {
  double p = 1.0;
  for (double pi : probs) p *= pi;
  return p;
}

MarginalSpec Portfolio::risk(int i) const {
  return marginal.with_lambda(lambdas.at(static_cast<std::size_t>(i)));
}

double smallest_claim_survival(const Portfolio& pf, double x) {
  if (!(x >= 0.0)) throw DomainError("x must be >= 0");
  if (x == 0.0) return pf.prob_product();
  std::vector<double> u(pf.lambdas.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = pf.risk(static_cast<int>(i)).survival(x);
  }
  return pf.prob_product() * pf.copula.eval(u);
}

double phr_gumbel_tilt(const Portfolio& pf) {
  if (pf.marginal.family() != MarginalFamily::Phr ||
      pf.copula.family != CopulaFamily::GumbelHougaard) {
    throw UnsupportedError(
        "closed form needs phr marginals and a gumbel_hougaard copula");
  }
  double s = 0.0;
  for (double l : pf.lambdas) s += std::pow(l, pf.copula.theta);
  return std::pow(s, 1.0 / pf.copula.theta);
}

double phr_gumbel_survival(const Portfolio& pf, double x) {
  double tilt = phr_gumbel_tilt(pf);
  if (!(x >= 0.0)) throw DomainError("x must be >= 0");
  if (x == 0.0) return pf.prob_product();
  return pf.prob_product() *
         std::exp(tilt * pf.marginal.baseline().log_survival(x));
}

AtomDensity smallest_claim_density(const Portfolio& pf, double x) {
  double tilt = phr_gumbel_tilt(pf);
  if (!(x > 0.0)) throw DomainError("density needs x > 0");
  const Baseline& base = pf.marginal.baseline();
  double continuous = pf.prob_product() * tilt * base.hazard(x) *
                      std::exp(tilt * base.log_survival(x));
  return {1.0 - pf.prob_product(), continuous};
}

// ---------------------------------------------------------------------------
// Bounds

const char* method_name(BoundsMethod m) {
  switch (m) {
    case BoundsMethod::Thm4: return "thm4";
    case BoundsMethod::Thm5: return "thm5";
    case BoundsMethod::Cor7: return "cor7";
    case BoundsMethod::Cor8: return "cor8";
    case BoundsMethod::Cor10: return "cor10";
    case BoundsMethod::Cor11: return "cor11";
    case BoundsMethod::Cor13: return "cor13";
    case BoundsMethod::Cor14: return "cor14";
  }
  return "unknown";
}

BoundsMethod method_from_name(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(c)));
  if (s == "thm4") return BoundsMethod::Thm4;
  if (s == "thm5") return BoundsMethod::Thm5;
  if (s == "cor7") return BoundsMethod::Cor7;
  if (s == "cor8") return BoundsMethod::Cor8;
  if (s == "cor10") return BoundsMethod::Cor10;
  if (s == "cor11") return BoundsMethod::Cor11;
  if (s == "cor13") return BoundsMethod::Cor13;
  if (s == "cor14") return BoundsMethod::Cor14;
  throw ParseError("unknown bounds method: " + name);
}

namespace {

bool is_diagonal_method(BoundsMethod m) {
  return m == BoundsMethod::Thm4 || m == BoundsMethod::Cor7 ||
         m == BoundsMethod::Cor10 || m == BoundsMethod::Cor13;
}

// Family the corollary specializes; Thm4/Thm5 accept any marginal.
bool method_matches_family(BoundsMethod m, MarginalFamily f) {
  switch (m) {
    case BoundsMethod::Thm4:
    case BoundsMethod::Thm5:
      return true;
    case BoundsMethod::Cor7:
    case BoundsMethod::Cor8:
      return f == MarginalFamily::Prhr;
    case BoundsMethod::Cor10:
    case BoundsMethod::Cor11:
      return f == MarginalFamily::Harris;
    case BoundsMethod::Cor13:
    case BoundsMethod::Cor14:
      return f == MarginalFamily::LomaxExponential;
  }
  return false;
}

// The corollary paths spell the family survival out in plain closed form,
// deliberately not reusing MarginalSpec::survival, so agreement with the
// generic path is a meaningful cross-check.
double plain_family_survival(const MarginalSpec& shape, double lambda,
                             double x) {
  double s = 0.0;
  switch (shape.family()) {
    case MarginalFamily::Prhr: {
      double f = 1.0 - shape.baseline().survival(x);
      s = 1.0 - std::pow(f, lambda);
      break;
    }
    case MarginalFamily::Harris: {
      double t = std::pow(shape.baseline().survival(x), shape.theta_h());
      s = std::pow(lambda * t / (1.0 - (1.0 - lambda) * t),
                   1.0 / shape.theta_h());
      break;
    }
    case MarginalFamily::LomaxExponential:
      s = std::pow(
          lambda / (std::exp(shape.beta() * x) + lambda - 1.0), shape.alpha());
      break;
    case MarginalFamily::Phr:
      s = std::pow(shape.baseline().survival(x), lambda);
      break;
  }
  // Terms like e^{beta x} + lambda - 1 can round an ulp below lambda at
  // x = 0, pushing the ratio just past 1; clamp so the copula diagonal sees
  // a valid argument.
  return std::clamp(s, 0.0, 1.0);
}

std::vector<double> certifier_lambda_grid(const Portfolio& pf,
                                          double lambda_mean) {
  std::vector<double> grid = pf.lambdas;
  grid.push_back(lambda_mean);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

BoundsCurve bounds_curve(const Portfolio& pf, std::vector<double> xs,
                         BoundsMethod method, const BoundsOptions& opts) {
  check_grid(xs);
  if (!method_matches_family(method, pf.marginal.family())) {
    throw UnsupportedError(std::string("method ") + method_name(method) +
                           " does not apply to " +
                           family_name(pf.marginal.family()) + " marginals");
  }
  double lambda_min =
      *std::min_element(pf.lambdas.begin(), pf.lambdas.end());
  double lambda_mean =
      std::accumulate(pf.lambdas.begin(), pf.lambdas.end(), 0.0) /
      static_cast<double>(pf.lambdas.size());

  BoundsCurve curve;
  curve.method = method;
  bool diagonal = is_diagonal_method(method);
  if (opts.verify_premises) {
    char buf[160];
    if (diagonal) {
      ProbeResult probe =
          schur_concavity_probe(pf.copula, opts.probe_trials, opts.probe_seed);
      std::snprintf(buf, sizeof buf, "worst violation %.3g over %d trials",
                    probe.worst_violation, probe.trials);
      curve.premises.push_back({"schur_concavity_probe", probe.verdict, buf});
      ConcavityCertificate cert = certify_lambda_concave_increasing(
          pf.marginal, xs, certifier_lambda_grid(pf, lambda_mean));
      curve.premises.push_back(
          {"certify_lambda_concave_increasing", cert.verdict, cert.detail});
    } else {
      GridCertificate cert = is_puod_on_grid(pf.copula, opts.grid_resolution);
      std::snprintf(buf, sizeof buf, "min slack %.3g at resolution %d",
                    cert.min_slack, cert.resolution);
      curve.premises.push_back({"is_puod_on_grid", cert.verdict, buf});
    }
    curve.premises_verified = true;
    for (const PremiseCheck& check : curve.premises) {
      if (!check.holds) {
        curve.premises_verified = false;
        if (!opts.force) throw PremiseError(check.name, check.detail);
      }
    }
  }

  double p = pf.prob_product();
  int n = pf.size();
  curve.lower.reserve(xs.size());
  curve.upper.reserve(xs.size());
  bool corollary = method != BoundsMethod::Thm4 && method != BoundsMethod::Thm5;
  MarginalSpec at_min = pf.marginal.with_lambda(lambda_min);
  MarginalSpec at_mean = pf.marginal.with_lambda(lambda_mean);
  for (double x : xs) {
    double s_min = corollary ? plain_family_survival(pf.marginal, lambda_min, x)
                             : at_min.survival(x);
    if (diagonal) {
      double s_mean = corollary
                          ? plain_family_survival(pf.marginal, lambda_mean, x)
                          : at_mean.survival(x);
      curve.lower.push_back(p * pf.copula.diagonal(s_min));
      curve.upper.push_back(p * pf.copula.diagonal(s_mean));
    } else {
      curve.lower.push_back(p * std::pow(s_min, static_cast<double>(n)));
      curve.upper.push_back(p * s_min);
    }
  }
  curve.xs = std::move(xs);
  return curve;
}

SurvivalCurve survival_curve(const Portfolio& pf,
                             const std::vector<double>& xs) {
  check_grid(xs);
  SurvivalCurve curve;
  curve.xs = xs;
  curve.values.reserve(xs.size());
  for (double x : xs) curve.values.push_back(smallest_claim_survival(pf, x));
  return curve;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) throw DomainError("linspace needs n >= 2, hi > lo");
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  xs.back() = hi;
  return xs;
}

double choose_x_max(const Portfolio& pf, double cut) {
  if (!(cut > 0.0 && cut < 1.0)) throw DomainError("cut must be in (0,1)");
  double target = cut * pf.prob_product();
  double hi = 1.0;
  int doublings = 0;
  while (smallest_claim_survival(pf, hi) >= target) {
    hi *= 2.0;
    if (++doublings > 200) throw DomainError("x_max search failed to bracket");
  }
  double lo = hi * 0.5 >= 1.0 ? hi * 0.5 : 0.0;
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    (smallest_claim_survival(pf, mid) >= target ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace minclaim
