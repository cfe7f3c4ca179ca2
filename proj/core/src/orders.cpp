#include "minclaim/orders.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "minclaim/errors.hpp"
#include "minclaim/majorization.hpp"

namespace minclaim {

namespace {

constexpr double kGridTol = 1e-10;
constexpr double kRegimeRelTol = 1e-12;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double prod(const std::vector<double>& v) {
  double p = 1.0;
  for (double x : v) p *= x;
  return p;
}

double power_sum(const std::vector<double>& v, double theta) {
  double s = 0.0;
  for (double x : v) s += std::pow(x, theta);
  return s;
}

bool rel_equal(double a, double b) {
  return std::fabs(a - b) <=
         kRegimeRelTol * std::max(std::fabs(a), std::fabs(b));
}

void check_params(const std::vector<double>& lambda,
                  const std::vector<double>& probs) {
  if (lambda.empty() || lambda.size() != probs.size()) {
    throw DomainError("lambda and prob vectors must be nonempty, equal length");
  }
  for (double l : lambda) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw DomainError("lambdas must be strictly positive");
    }
  }
  for (double p : probs) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("probs must lie in (0,1]");
  }
}

// Direction from a pair of "A is below B" / "B is below A" flags.
OrderDirection combine(bool a_leq_b, bool b_leq_a) {
  if (a_leq_b && b_leq_a) return OrderDirection::Equal;
  if (a_leq_b) return OrderDirection::ALeqB;
  if (b_leq_a) return OrderDirection::BLeqA;
  return OrderDirection::Incomparable;
}

// Monotonicity of a ratio sequence, tolerance kGridTol, with the worst
// violation location reported against the paired x values.
struct MonotoneScan {
  bool nondecreasing = true;
  bool nonincreasing = true;
  double worst_x = 0.0;
  double worst_margin = 0.0;
};

MonotoneScan scan_monotone(const std::vector<double>& xs,
                           const std::vector<double>& ratios) {
  MonotoneScan scan;
  double worst = 0.0;
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    double step = ratios[i] - ratios[i - 1];
    if (step < -kGridTol) scan.nondecreasing = false;
    if (step > kGridTol) scan.nonincreasing = false;
    if (std::fabs(step) > worst) {
      worst = std::fabs(step);
      scan.worst_x = xs[i];
      scan.worst_margin = step;
    }
  }
  return scan;
}

}  // namespace

const char* relation_name(OrderRelation r) {
  switch (r) {
    case OrderRelation::St: return "st";
    case OrderRelation::Hr: return "hr";
    case OrderRelation::Lr: return "lr";
  }
  return "unknown";
}

const char* direction_name(OrderDirection d) {
  switch (d) {
    case OrderDirection::ALeqB: return "A_leq_B";
    case OrderDirection::BLeqA: return "B_leq_A";
    case OrderDirection::Equal: return "equal";
    case OrderDirection::Incomparable: return "incomparable";
    case OrderDirection::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

OrderRelation relation_from_name(const std::string& name) {
  if (name == "st") return OrderRelation::St;
  if (name == "hr") return OrderRelation::Hr;
  if (name == "lr") return OrderRelation::Lr;
  throw ParseError("unknown order relation: " + name);
}

OrderVerdict check_st_on_grid(const Portfolio& a, const Portfolio& b,
                              const std::vector<double>& xs) {
  if (xs.empty()) throw DomainError("x grid is empty");
  OrderVerdict v;
  v.relation = OrderRelation::St;
  bool a_leq_b = true;
  bool b_leq_a = true;
  double worst_a = 0.0, worst_a_x = 0.0;
  double worst_b = 0.0, worst_b_x = 0.0;
  for (double x : xs) {
    double sa = smallest_claim_survival(a, x);
    double sb = smallest_claim_survival(b, x);
    double diff = sa - sb;  // > 0 means A survives more at x
    if (diff > kGridTol) {
      a_leq_b = false;
      if (diff > worst_a) {
        worst_a = diff;
        worst_a_x = x;
      }
    }
    if (diff < -kGridTol) {
      b_leq_a = false;
      if (-diff > worst_b) {
        worst_b = -diff;
        worst_b_x = x;
      }
    }
  }
  v.direction = combine(a_leq_b, b_leq_a);
  if (v.direction == OrderDirection::Incomparable) {
    // Report the worse of the two crossings.
    v.witness = worst_a >= worst_b ? Witness{worst_a_x, worst_a}
                                   : Witness{worst_b_x, -worst_b};
  }
  v.certificate["grid_points"] = std::to_string(xs.size());
  v.certificate["x_min"] = format_double(xs.front());
  v.certificate["x_max"] = format_double(xs.back());
  v.certificate["tolerance"] = format_double(kGridTol);
  return v;
}

OrderVerdict hr_characterization_gumbel_phr(
    const std::vector<double>& lambda_a, const std::vector<double>& probs_a,
    const std::vector<double>& lambda_b, const std::vector<double>& probs_b,
    double theta) {
  check_params(lambda_a, probs_a);
  check_params(lambda_b, probs_b);
  if (!(theta >= 1.0)) throw DomainError("gumbel_hougaard requires theta >= 1");
  double pa = prod(probs_a);
  double pb = prod(probs_b);
  double sa = power_sum(lambda_a, theta);
  double sb = power_sum(lambda_b, theta);
  // Ties are decided up to kRegimeRelTol so that rounding in the inputs
  // cannot flip an algebraic equality into a strict inequality.
  bool equal_probs = rel_equal(pa, pb);
  bool equal_sums = rel_equal(sa, sb);
  bool a_leq_b = (equal_probs || pa <= pb) && (equal_sums || sa >= sb);
  bool b_leq_a = (equal_probs || pb <= pa) && (equal_sums || sb >= sa);
  OrderVerdict v;
  v.relation = OrderRelation::Hr;
  v.direction = combine(a_leq_b, b_leq_a);
  v.certificate["prob_product_a"] = format_double(pa);
  v.certificate["prob_product_b"] = format_double(pb);
  v.certificate["lambda_power_sum_a"] = format_double(sa);
  v.certificate["lambda_power_sum_b"] = format_double(sb);
  v.certificate["condition"] =
      "A_leq_B iff prod(p_A) <= prod(p_B) and sum(lambda_A^theta) >= "
      "sum(lambda_B^theta)";
  if (v.direction == OrderDirection::Incomparable) {
    // The conditions are algebraic, not pointwise; flag the atom as the
    // natural witness location with the probability-product gap as margin.
    v.witness = Witness{0.0, pa - pb};
  }
  return v;
}

OrderVerdict lr_characterization(const std::vector<double>& lambda_a,
                                 const std::vector<double>& probs_a,
                                 const std::vector<double>& lambda_b,
                                 const std::vector<double>& probs_b,
                                 double theta) {
  check_params(lambda_a, probs_a);
  check_params(lambda_b, probs_b);
  if (!(theta >= 1.0)) throw DomainError("gumbel_hougaard requires theta >= 1");
  double pa = prod(probs_a);
  double pb = prod(probs_b);
  double sa = power_sum(lambda_a, theta);
  double sb = power_sum(lambda_b, theta);
  bool equal_probs = rel_equal(pa, pb);
  bool equal_sums = rel_equal(sa, sb);
  OrderVerdict v;
  v.relation = OrderRelation::Lr;
  v.certificate["prob_product_a"] = format_double(pa);
  v.certificate["prob_product_b"] = format_double(pb);
  v.certificate["lambda_power_sum_a"] = format_double(sa);
  v.certificate["lambda_power_sum_b"] = format_double(sb);
  if (equal_probs && equal_sums) {
    v.direction = OrderDirection::Equal;
    v.certificate["regime"] = "equal probability products and power sums";
  } else if (equal_probs) {
    // Equal claim probabilities: lr holds only with equal power sums.  The
    // density ratio otherwise moves one way at the atom and the other way
    // in the continuous part, so neither direction can hold.
    v.direction = OrderDirection::Incomparable;
    v.certificate["regime"] = "equal probability products";
    v.witness = Witness{0.0, sa - sb};
  } else if (equal_sums) {
    v.direction = pa < pb ? OrderDirection::ALeqB : OrderDirection::BLeqA;
    v.certificate["regime"] = "equal lambda power sums";
  } else {
    v.direction = OrderDirection::Inconclusive;
    v.certificate["regime"] = "no side condition applies";
  }
  return v;
}

namespace {

void require_phr_gumbel_pair(const Portfolio& a, const Portfolio& b) {
  phr_gumbel_tilt(a);  // throws UnsupportedError on the wrong family pair
  phr_gumbel_tilt(b);
  if (a.copula.theta != b.copula.theta) {
    throw UnsupportedError("portfolios must share the copula parameter");
  }
  const Baseline& ba = a.marginal.baseline();
  const Baseline& bb = b.marginal.baseline();
  if (ba.kind != bb.kind || ba.rate != bb.rate || ba.c != bb.c ||
      ba.k != bb.k) {
    throw UnsupportedError("portfolios must share the baseline");
  }
}

}  // namespace

OrderVerdict numeric_hr_check(const Portfolio& a, const Portfolio& b,
                              const std::vector<double>& xs) {
  require_phr_gumbel_pair(a, b);
  if (xs.empty()) throw DomainError("x grid is empty");
  OrderVerdict v;
  v.relation = OrderRelation::Hr;
  double tilt_a = phr_gumbel_tilt(a);
  double tilt_b = phr_gumbel_tilt(b);
  double pa = a.prob_product();
  double pb = b.prob_product();
  // Hazard of the continuous part is tilt * baseline hazard, so the hazard
  // comparison reduces to the tilts; the atom adds the step condition that
  // the late-start side must be the hr-smaller one.
  bool a_leq_b = true;
  bool b_leq_a = true;
  double worst_a = 0.0, worst_a_x = 0.0;
  double worst_b = 0.0, worst_b_x = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) continue;
    double hz = a.marginal.baseline().hazard(x);
    double diff = (tilt_a - tilt_b) * hz;  // hazard_A - hazard_B at x
    if (diff < -kGridTol) {
      a_leq_b = false;
      if (-diff > worst_a) {
        worst_a = -diff;
        worst_a_x = x;
      }
    }
    if (diff > kGridTol) {
      b_leq_a = false;
      if (diff > worst_b) {
        worst_b = diff;
        worst_b_x = x;
      }
    }
  }
  // Survival-ratio step across the atom at zero.
  if (pa > pb + kGridTol) {
    a_leq_b = false;
    if (pa - pb > worst_a) {
      worst_a = pa - pb;
      worst_a_x = 0.0;
    }
  }
  if (pb > pa + kGridTol) {
    b_leq_a = false;
    if (pb - pa > worst_b) {
      worst_b = pb - pa;
      worst_b_x = 0.0;
    }
  }
  v.direction = combine(a_leq_b, b_leq_a);
  if (v.direction == OrderDirection::Incomparable) {
    v.witness = worst_a >= worst_b ? Witness{worst_a_x, worst_a}
                                   : Witness{worst_b_x, -worst_b};
  }
  v.certificate["tilt_a"] = format_double(tilt_a);
  v.certificate["tilt_b"] = format_double(tilt_b);
  v.certificate["prob_product_a"] = format_double(pa);
  v.certificate["prob_product_b"] = format_double(pb);
  v.certificate["grid_points"] = std::to_string(xs.size());
  return v;
}

OrderVerdict numeric_lr_check(const Portfolio& a, const Portfolio& b,
                              const std::vector<double>& xs) {
  require_phr_gumbel_pair(a, b);
  if (xs.empty()) throw DomainError("x grid is empty");
  OrderVerdict v;
  v.relation = OrderRelation::Lr;
  double pa = a.prob_product();
  double pb = b.prob_product();
  // Ratio sequence: density_B / density_A, starting at the atom, then along
  // the positive grid points.  lr in a direction is monotonicity of this
  // sequence in the matching sense.
  std::vector<double> ratio_xs;
  std::vector<double> ratios;
  double atom_a = 1.0 - pa;
  double atom_b = 1.0 - pb;
  if (atom_a > 0.0 || atom_b > 0.0) {
    ratio_xs.push_back(0.0);
    ratios.push_back(atom_a > 0.0
                         ? atom_b / atom_a
                         : std::numeric_limits<double>::infinity());
  }
  for (double x : xs) {
    if (!(x > 0.0)) continue;
    double da = smallest_claim_density(a, x).continuous;
    double db = smallest_claim_density(b, x).continuous;
    if (da == 0.0 && db == 0.0) continue;  // both tails underflowed
    ratio_xs.push_back(x);
    ratios.push_back(da > 0.0 ? db / da
                              : std::numeric_limits<double>::infinity());
  }
  MonotoneScan scan = scan_monotone(ratio_xs, ratios);
  v.direction = combine(scan.nondecreasing, scan.nonincreasing);
  if (v.direction == OrderDirection::Incomparable) {
    v.witness = Witness{scan.worst_x, scan.worst_margin};
  }
  v.certificate["atom_ratio"] =
      ratios.empty() ? "none" : format_double(ratios.front());
  v.certificate["grid_points"] = std::to_string(ratio_xs.size());
  v.certificate["tolerance"] = format_double(kGridTol);
  return v;
}

namespace {

// Premise set for "a below b" in the usual stochastic order; a plays the
// starred role.  All five checks are recorded whether or not they hold.
bool premises_hold_directed(const Portfolio& a, const Portfolio& b,
                            int grid_resolution, double x_max,
                            const std::string& tag,
                            std::vector<PremiseCheck>* out) {
  char buf[160];
  bool all = true;
  auto push = [&](const std::string& name, bool holds,
                  const std::string& detail) {
    out->push_back({tag + name, holds, detail});
    all = all && holds;
  };

  double pa = a.prob_product();
  double pb = b.prob_product();
  std::snprintf(buf, sizeof buf, "%.6g vs %.6g", pa, pb);
  push("prob_product_leq", pa <= pb, buf);

  if (a.lambdas.size() == b.lambdas.size()) {
    bool supermaj = weakly_supermajorized(b.lambdas, a.lambdas);
    push("lambda_weakly_supermajorized", supermaj,
         "ascending prefix sums of the b tilts dominate those of a");
  } else {
    push("lambda_weakly_supermajorized", false, "length mismatch");
  }

  if (a.copula.dim == b.copula.dim) {
    GridCertificate dom =
        copula_dominates_on_grid(a.copula, b.copula, grid_resolution);
    std::snprintf(buf, sizeof buf, "min slack %.3g at resolution %d",
                  dom.min_slack, dom.resolution);
    push("copula_dominance", dom.verdict, buf);
  } else {
    push("copula_dominance", false, "dimension mismatch");
  }

  bool same_shape =
      a.marginal.family() == b.marginal.family() &&
      a.marginal.baseline().kind == b.marginal.baseline().kind;
  if (same_shape) {
    std::vector<double> lam = a.lambdas;
    lam.insert(lam.end(), b.lambdas.begin(), b.lambdas.end());
    std::sort(lam.begin(), lam.end());
    lam.erase(std::unique(lam.begin(), lam.end()), lam.end());
    std::vector<double> x_grid =
        linspace(0.0, x_max, std::max(grid_resolution, 8));
    ConcavityCertificate cert =
        certify_lambda_concave_increasing(a.marginal, x_grid, lam);
    push("marginal_concave_increasing", cert.verdict, cert.detail);
  } else {
    push("marginal_concave_increasing", false,
         "marginal families or baselines differ");
  }

  ProbeResult probe = schur_concavity_probe(a.copula, 2000,
                                            0x9e3779b97f4a7c15ull);
  std::snprintf(buf, sizeof buf, "worst violation %.3g over %d trials",
                probe.worst_violation, probe.trials);
  push("copula_schur_concave", probe.verdict, buf);

  return all;
}

}  // namespace

StPrediction predict_st_from_premises(const Portfolio& a, const Portfolio& b,
                                      int grid_resolution) {
  StPrediction pred;
  pred.verdict.relation = OrderRelation::St;
  double x_max = std::max(choose_x_max(a), choose_x_max(b));
  bool a_leq_b = premises_hold_directed(a, b, grid_resolution, x_max,
                                        "a_leq_b:", &pred.premises);
  bool b_leq_a = premises_hold_directed(b, a, grid_resolution, x_max,
                                        "b_leq_a:", &pred.premises);
  if (a_leq_b && b_leq_a) {
    pred.verdict.direction = OrderDirection::Equal;
  } else if (a_leq_b) {
    pred.verdict.direction = OrderDirection::ALeqB;
  } else if (b_leq_a) {
    pred.verdict.direction = OrderDirection::BLeqA;
  } else {
    pred.verdict.direction = OrderDirection::Inconclusive;
  }
  pred.verdict.certificate["grid_resolution"] =
      std::to_string(grid_resolution);
  pred.verdict.certificate["x_max"] = format_double(x_max);
  pred.verdict.certificate["basis"] = "sufficient premises only";
  return pred;
}

}  // namespace minclaim
