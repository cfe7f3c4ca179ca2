#ifndef MINCLAIM_MARGINALS_HPP
#define MINCLAIM_MARGINALS_HPP

#include <string>
#include <vector>

namespace minclaim {

// Baseline lifetime distribution on [0, inf) that the semiparametric
// families transform.  Log-space survival keeps the deep tail usable.
struct Baseline {
  enum class Kind { Exponential, StretchedExponential };

  Kind kind = Kind::Exponential;
  double rate = 1.0;  // Exponential(rate)
  double c = 1.0;     // StretchedExponential: F_bar(x) = exp(-c x^k)
  double k = 1.0;

  static Baseline exponential(double rate);
  static Baseline stretched_exponential(double c, double k);

  void validate() const;

  double log_survival(double x) const;
  double survival(double x) const;
  double density(double x) const;
  double cdf(double x) const;
  double hazard(double x) const;  // density / survival, underflow-free
};

enum class MarginalFamily {
  Phr,               // F_bar^lambda
  Prhr,              // 1 - F^lambda
  Harris,            // (lambda F_bar^theta / (1-(1-lambda) F_bar^theta))^{1/theta}
  LomaxExponential,  // (lambda / (e^{beta x} + lambda - 1))^alpha
};

const char* family_name(MarginalFamily f);

// One marginal claim-size distribution: a family, its shape parameters, and
// the tilt parameter lambda that the portfolio varies per risk.
class MarginalSpec {
 public:
  // Checked factories enforce the parameter ranges under which the library's
  // ordering results are valid (harris: theta >= 1; lomax_exponential:
  // 0 < alpha <= 1).  `unchecked` admits anything positive, for certifier
  // studies that deliberately step outside those ranges.
  static MarginalSpec phr(Baseline baseline, double lambda);
  static MarginalSpec prhr(Baseline baseline, double lambda);
  static MarginalSpec harris(Baseline baseline, double lambda, double theta_h);
  static MarginalSpec lomax_exponential(double alpha, double beta,
                                        double lambda);
  static MarginalSpec unchecked(MarginalFamily family, Baseline baseline,
                                double lambda, double theta_h, double alpha,
                                double beta);

  MarginalFamily family() const { return family_; }
  const Baseline& baseline() const { return baseline_; }
  double lambda() const { return lambda_; }
  double theta_h() const { return theta_h_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  // Same family and shape, different tilt.
  MarginalSpec with_lambda(double lambda) const;

  double survival(double x) const;
  double density(double x) const;  // x > 0; the atom at zero belongs upstream

  // Smallest x with survival(x) <= q, by bracketed bisection.
  double inverse_survival(double q) const;

  // Closed-form partials of survival in lambda, used to cross-check the
  // concavity certifier.
  double survival_dlambda(double x) const;
  double survival_d2lambda(double x) const;

 private:
  MarginalSpec() = default;
  void validate_strict() const;

  MarginalFamily family_ = MarginalFamily::Phr;
  Baseline baseline_;
  double lambda_ = 1.0;
  double theta_h_ = 1.0;  // Harris only
  double alpha_ = 1.0;    // LomaxExponential only
  double beta_ = 1.0;     // LomaxExponential only
};

// Finite-difference certificate that lambda -> survival(x; lambda) is
// nondecreasing and concave across a grid of (x, lambda) pairs.  For the
// harris and lomax_exponential families the closed-form partials are also
// compared against the finite differences; a mismatch fails the certificate.
struct ConcavityCertificate {
  bool verdict = false;
  double min_monotone_slack = 0.0;  // min over grid of central difference
  double max_second_diff = 0.0;     // max over grid of second difference
  double max_partial_rel_err = 0.0;  // closed form vs finite difference
  double witness_x = 0.0;
  double witness_lambda = 0.0;
  std::string detail;
};

ConcavityCertificate certify_lambda_concave_increasing(
    const MarginalSpec& shape, const std::vector<double>& x_grid,
    const std::vector<double>& lambda_grid);

}  // namespace minclaim

#endif  // MINCLAIM_MARGINALS_HPP
