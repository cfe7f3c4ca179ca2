#ifndef MINCLAIM_PORTFOLIO_HPP
#define MINCLAIM_PORTFOLIO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minclaim/copula.hpp"
#include "minclaim/marginals.hpp"

namespace minclaim {

// A portfolio of n risks.  Risk i pays X_i ~ marginal(lambdas[i]) with
// probability probs[i] and zero otherwise; the claim sizes are coupled
// through an Archimedean survival copula, the occurrence indicators are
// independent of everything.  Y, the smallest claim, is min_i I_i X_i.
struct Portfolio {
  std::vector<double> lambdas;
  std::vector<double> probs;
  MarginalSpec marginal;  // lambda field is a template; lambdas[] overrides
  CopulaSpec copula;

  static Portfolio make(std::vector<double> lambdas, std::vector<double> probs,
                        MarginalSpec marginal, CopulaSpec copula);

  int size() const { return static_cast<int>(lambdas.size()); }
  double prob_product() const;
  MarginalSpec risk(int i) const;  // marginal with lambdas[i]
};

/// Exact survival of Y at x: prod(p) * C(F_bar(x;lambda_1), ...).
double smallest_claim_survival(const Portfolio& pf, double x);

// Closed form for PHR marginals under a Gumbel-Hougaard copula, where the
// minimum is again PHR with tilt Lambda = (sum lambda_i^theta)^{1/theta}.
double phr_gumbel_survival(const Portfolio& pf, double x);
double phr_gumbel_tilt(const Portfolio& pf);

// Y has an atom at zero of mass 1 - prod(p) and a continuous part on
// (0, inf); `continuous` is the defective density of the latter.  Available
// in the same closed-form setting as phr_gumbel_survival; needs x > 0.
struct AtomDensity {
  double atom;
  double continuous;
};

AtomDensity smallest_claim_density(const Portfolio& pf, double x);

enum class BoundsMethod { Thm4, Thm5, Cor7, Cor8, Cor10, Cor11, Cor13, Cor14 };

const char* method_name(BoundsMethod m);
BoundsMethod method_from_name(const std::string& name);

struct PremiseCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct BoundsCurve {
  std::vector<double> xs;
  std::vector<double> lower;
  std::vector<double> upper;
  BoundsMethod method = BoundsMethod::Thm4;
  bool premises_verified = false;
  std::vector<PremiseCheck> premises;
};

struct BoundsOptions {
  bool verify_premises = true;
  bool force = false;  // record failed premises instead of throwing
  int grid_resolution = 20;
  int probe_trials = 2000;
  std::uint64_t probe_seed = 0x9e3779b97f4a7c15ull;
};

// Two-sided bounds on the survival of Y over the given x grid.
//
// Thm4: diagonal bounds prod(p) * delta_C(F_bar(x; lambda)) at the smallest
//   and the mean tilt; premises are Schur-concavity of the copula (probe)
//   plus concavity/monotonicity of survival in lambda (certifier).
// Thm5: copula-free bounds prod(p) * [F_bar^n, F_bar] at the smallest tilt;
//   premise is PUOD of the copula (grid certificate).
// Cor7/8 (prhr), Cor10/11 (harris), Cor13/14 (lomax_exponential): the same
//   two bounds specialized per family and implemented independently from
//   their closed forms.
BoundsCurve bounds_curve(const Portfolio& pf, std::vector<double> xs,
                         BoundsMethod method, const BoundsOptions& opts = {});

struct SurvivalCurve {
  std::vector<double> xs;
  std::vector<double> values;
};

SurvivalCurve survival_curve(const Portfolio& pf,
                             const std::vector<double>& xs);

std::vector<double> linspace(double lo, double hi, int n);

// Smallest grid limit with survival below cut * prod(p): doubles an upper
// bracket then bisects.  Used to auto-size plotting grids.
double choose_x_max(const Portfolio& pf, double cut = 1e-4);

}  // namespace minclaim

#endif  // MINCLAIM_PORTFOLIO_HPP
