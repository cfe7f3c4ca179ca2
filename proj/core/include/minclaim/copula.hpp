#ifndef MINCLAIM_COPULA_HPP
#define MINCLAIM_COPULA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace minclaim {

// Absolute slack allowed by grid certificates and randomized probes.  The
// copula formulas are smooth and well conditioned on the open cube, so any
// violation past this is a logic bug rather than roundoff.
inline constexpr double kGridEpsilon = 1e-9;

enum class CopulaFamily {
  Independence,
  Frank,
  Clayton,
  GumbelHougaard,
  LowerFrechet,
  UpperFrechet,
};

const char* family_name(CopulaFamily f);

// An n-dimensional copula, Archimedean except for the two Frechet bounds.
// Production evaluation uses the closed family forms; the generator
// composition phi^{-1}(sum phi(u_i)) is kept as an independent path for
// cross-checking (and as the only path for Frank above dimension 3).
struct CopulaSpec {
  CopulaFamily family = CopulaFamily::Independence;
  double theta = 0.0;  // dependence parameter; unused for Independence/Frechet
  int dim = 2;

  static CopulaSpec independence(int dim);
  static CopulaSpec frank(double theta, int dim);            // theta > 0
  static CopulaSpec clayton(double theta, int dim);          // theta > 0
  static CopulaSpec gumbel_hougaard(double theta, int dim);  // theta >= 1
  static CopulaSpec lower_frechet(int dim);
  static CopulaSpec upper_frechet(int dim);

  bool is_archimedean() const;
  void validate() const;  // throws DomainError on bad parameters

  // Generator phi: [0,1] -> [0,inf]; phi(1) = 0, phi(0) = +inf.
  double generator(double t) const;
  double generator_inverse(double s) const;  // phi^{-1}(+inf) = 0 exactly

  double eval(std::span<const double> u) const;
  double eval_via_generator(std::span<const double> u) const;
  double diagonal(double u) const;  // eval at (u,...,u)
};

struct FrechetBounds {
  double lower;
  double upper;
};

// Pointwise Frechet-Hoeffding bounds max(sum u - n + 1, 0) <= C(u) <= min(u).
FrechetBounds frechet_bounds(std::span<const double> u);

// Outcome of an inequality scan over the interior lattice
// {1/res, ..., (res-1)/res}^n.  Evidence at grid scale, not a proof.
struct GridCertificate {
  bool verdict = false;
  double min_slack = 0.0;
  std::vector<double> witness;  // lattice point attaining min_slack
  int resolution = 0;
};

// Scans C(u) - prod(u); verdict true iff slack >= -kGridEpsilon everywhere.
GridCertificate is_puod_on_grid(const CopulaSpec& c, int resolution);

// Scans C_large(u) - C_small(u); certifies C_small <= C_large on the lattice.
GridCertificate copula_dominates_on_grid(const CopulaSpec& c_small,
                                         const CopulaSpec& c_large,
                                         int resolution);

struct ProbeResult {
  bool verdict = false;
  double worst_violation = 0.0;  // most negative C(v) - C(u) seen
  int trials = 0;
};

// Randomized Schur-concavity probe: draws u in (0,1)^n, builds v from u by a
// Robin-Hood transfer (so v is majorized by u) and checks C(v) >= C(u).
ProbeResult schur_concavity_probe(const CopulaSpec& c, int trials,
                                  std::uint64_t seed);

}  // namespace minclaim

#endif  // MINCLAIM_COPULA_HPP
