#include "minclaim/copula.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "minclaim/errors.hpp"
#include "rng.hpp"

namespace minclaim {

namespace {

void check_unit_cube(std::span<const double> u, int dim) {
  if (static_cast<int>(u.size()) != dim) {
    throw DomainError("copula argument has size " + std::to_string(u.size()) +
                      ", expected dim " + std::to_string(dim));
  }
  for (double ui : u) {
    if (!(ui >= 0.0 && ui <= 1.0)) {
      throw DomainError("copula argument outside [0,1]");
    }
  }
}

bool any_zero(std::span<const double> u) {
  return std::any_of(u.begin(), u.end(), [](double v) { return v == 0.0; });
}

bool all_ones(std::span<const double> u) {
  return std::all_of(u.begin(), u.end(), [](double v) { return v == 1.0; });
}

}  // namespace

const char* family_name(CopulaFamily f) {
  switch (f) {
    case CopulaFamily::Independence: return "independence";
    case CopulaFamily::Frank: return "frank";
    case CopulaFamily::Clayton: return "clayton";
    case CopulaFamily::GumbelHougaard: return "gumbel_hougaard";
    case CopulaFamily::LowerFrechet: return "lower_frechet";
    case CopulaFamily::UpperFrechet: return "upper_frechet";
  }
  return "unknown";
}

CopulaSpec CopulaSpec::independence(int dim) {
  CopulaSpec c{CopulaFamily::Independence, 0.0, dim};
  c.validate();
  return c;
}

CopulaSpec CopulaSpec::frank(double theta, int dim) {
  CopulaSpec c{CopulaFamily::Frank, theta, dim};
  c.validate();
  return c;
}

CopulaSpec CopulaSpec::clayton(double theta, int dim) {
  CopulaSpec c{CopulaFamily::Clayton, theta, dim};
  c.validate();
  return c;
}

CopulaSpec CopulaSpec::gumbel_hougaard(double theta, int dim) {
  CopulaSpec c{CopulaFamily::GumbelHougaard, theta, dim};
  c.validate();
  return c;
}

CopulaSpec CopulaSpec::lower_frechet(int dim) {
  CopulaSpec c{CopulaFamily::LowerFrechet, 0.0, dim};
  c.validate();
  return c;
}

CopulaSpec CopulaSpec::upper_frechet(int dim) {
  CopulaSpec c{CopulaFamily::UpperFrechet, 0.0, dim};
  c.validate();
  return c;
}

bool CopulaSpec::is_archimedean() const {
  switch (family) {
    case CopulaFamily::Independence:
    case CopulaFamily::Frank:
    case CopulaFamily::Clayton:
    case CopulaFamily::GumbelHougaard:
      return true;
    case CopulaFamily::LowerFrechet:
    case CopulaFamily::UpperFrechet:
      return false;
  }
  return false;
}

void CopulaSpec::validate() const {
  if (dim < 1) {
    throw DomainError("copula dim must be >= 1, got " + std::to_string(dim));
  }
  switch (family) {
    case CopulaFamily::Frank:
      if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("frank requires theta > 0");
      }
      break;
    case CopulaFamily::Clayton:
      if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("clayton requires theta > 0");
      }
      break;
    case CopulaFamily::GumbelHougaard:
      if (!(theta >= 1.0) || !std::isfinite(theta)) {
        throw DomainError("gumbel_hougaard requires theta >= 1");
      }
      break;
    default:
      break;
  }
}

double CopulaSpec::generator(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("generator argument outside [0,1]");
  }
  switch (family) {
    case CopulaFamily::Independence:
      return -std::log(t);
    case CopulaFamily::Frank: {
      // -log((e^{-theta t} - 1)/(e^{-theta} - 1)), kept in expm1/log1p form
      // so t near 1 does not cancel.
      double a = std::expm1(-theta * t);
      double b = std::expm1(-theta);
      return -std::log1p((a - b) / b);
    }
    case CopulaFamily::Clayton:
      return (std::pow(t, -theta) - 1.0) / theta;
    case CopulaFamily::GumbelHougaard:
      return std::pow(-std::log(t), theta);
    case CopulaFamily::LowerFrechet:
    case CopulaFamily::UpperFrechet:
      throw UnsupportedError("generator undefined for the Frechet bounds");
  }
  throw UnsupportedError("unknown copula family");
}

double CopulaSpec::generator_inverse(double s) const {
  if (!(s >= 0.0)) {
    throw DomainError("generator inverse argument must be >= 0");
  }
  if (s == 0.0 && is_archimedean()) return 1.0;
  switch (family) {
    case CopulaFamily::Independence:
      return std::exp(-s);
    case CopulaFamily::Frank:
      return -std::log1p(std::exp(-s) * std::expm1(-theta)) / theta;
    case CopulaFamily::Clayton:
      return std::pow(1.0 + theta * s, -1.0 / theta);
    case CopulaFamily::GumbelHougaard:
      return std::exp(-std::pow(s, 1.0 / theta));
    case CopulaFamily::LowerFrechet:
    case CopulaFamily::UpperFrechet:
      throw UnsupportedError("generator undefined for the Frechet bounds");
  }
  throw UnsupportedError("unknown copula family");
}

double CopulaSpec::eval(std::span<const double> u) const {
  check_unit_cube(u, dim);
  if (any_zero(u)) return 0.0;
  if (all_ones(u)) return 1.0;
  switch (family) {
    case CopulaFamily::Independence: {
      double prod = 1.0;
      for (double ui : u) prod *= ui;
      return prod;
    }
    case CopulaFamily::Frank: {
      // Closed product form for up to three arguments; higher dimensions go
      // through the generator path.
      if (dim > 3) return eval_via_generator(u);
      // -(1/theta) log(1 + prod(e^{-theta u_i} - 1)/(e^{-theta} - 1)^{n-1});
      // accumulated as b * prod(a_i / b) so the log1p argument stays in
      // (-1, 0] regardless of dimension.
      double b = std::expm1(-theta);
      double scaled = 1.0;
      for (double ui : u) scaled *= std::expm1(-theta * ui) / b;
      return -std::log1p(b * scaled) / theta;
    }
    case CopulaFamily::Clayton: {
      double s = 0.0;
      for (double ui : u) s += std::pow(ui, -theta);
      s -= static_cast<double>(dim - 1);
      return std::pow(s, -1.0 / theta);
    }
    case CopulaFamily::GumbelHougaard: {
      double s = 0.0;
      for (double ui : u) s += std::pow(-std::log(ui), theta);
      return std::exp(-std::pow(s, 1.0 / theta));
    }
    case CopulaFamily::LowerFrechet: {
      double s = 0.0;
      for (double ui : u) s += ui;
      return std::max(s - static_cast<double>(dim - 1), 0.0);
    }
    case CopulaFamily::UpperFrechet:
      return *std::min_element(u.begin(), u.end());
  }
  throw UnsupportedError("unknown copula family");
}

double CopulaSpec::eval_via_generator(std::span<const double> u) const {
  if (!is_archimedean()) {
    throw UnsupportedError("generator path requires an Archimedean family");
  }
  check_unit_cube(u, dim);
  if (any_zero(u)) return 0.0;
  double s = 0.0;
  for (double ui : u) s += generator(ui);
  return generator_inverse(s);
}

double CopulaSpec::diagonal(double u) const {
  std::vector<double> point(static_cast<std::size_t>(dim), u);
  return eval(point);
}

FrechetBounds frechet_bounds(std::span<const double> u) {
  if (u.empty()) throw DomainError("frechet_bounds needs a nonempty argument");
  for (double ui : u) {
    if (!(ui >= 0.0 && ui <= 1.0)) {
      throw DomainError("copula argument outside [0,1]");
    }
  }
  double sum = 0.0;
  double lo = 1.0;
  for (double ui : u) {
    sum += ui;
    lo = std::min(lo, ui);
  }
  double n = static_cast<double>(u.size());
  return {std::max(sum - (n - 1.0), 0.0), lo};
}

namespace {

// Walks the interior lattice {1/res, ..., (res-1)/res}^dim and tracks the
// minimum of `slack` over it.
template <typename SlackFn>
GridCertificate scan_lattice(int dim, int resolution, SlackFn&& slack) {
  if (resolution < 2) {
    throw DomainError("grid resolution must be >= 2");
  }
  GridCertificate cert;
  cert.resolution = resolution;
  cert.min_slack = std::numeric_limits<double>::infinity();
  std::vector<int> idx(static_cast<std::size_t>(dim), 1);
  std::vector<double> u(static_cast<std::size_t>(dim));
  for (;;) {
    for (int i = 0; i < dim; ++i) {
      u[static_cast<std::size_t>(i)] =
          static_cast<double>(idx[static_cast<std::size_t>(i)]) / resolution;
    }
    double s = slack(u);
    if (s < cert.min_slack) {
      cert.min_slack = s;
      cert.witness = u;
    }
    int pos = 0;
    while (pos < dim && ++idx[static_cast<std::size_t>(pos)] == resolution) {
      idx[static_cast<std::size_t>(pos)] = 1;
      ++pos;
    }
    if (pos == dim) break;
  }
  cert.verdict = cert.min_slack >= -kGridEpsilon;
  return cert;
}

}  // namespace

GridCertificate is_puod_on_grid(const CopulaSpec& c, int resolution) {
  return scan_lattice(c.dim, resolution, [&](const std::vector<double>& u) {
    double prod = 1.0;
    for (double ui : u) prod *= ui;
    return c.eval(u) - prod;
  });
}

GridCertificate copula_dominates_on_grid(const CopulaSpec& c_small,
                                         const CopulaSpec& c_large,
                                         int resolution) {
  if (c_small.dim != c_large.dim) {
    throw DomainError("copula dimensions differ");
  }
  return scan_lattice(c_small.dim, resolution,
                      [&](const std::vector<double>& u) {
                        return c_large.eval(u) - c_small.eval(u);
                      });
}

ProbeResult schur_concavity_probe(const CopulaSpec& c, int trials,
                                  std::uint64_t seed) {
  if (trials < 1) throw DomainError("probe needs at least one trial");
  ProbeResult res;
  res.trials = trials;
  if (c.dim < 2) {
    res.verdict = true;
    return res;
  }
  detail::Rng rng(seed);
  std::vector<double> u(static_cast<std::size_t>(c.dim));
  std::vector<double> v(static_cast<std::size_t>(c.dim));
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    for (double& ui : u) ui = rng.uniform01_pos();
    // Robin-Hood transfer between two coordinates: v is majorized by u, so
    // Schur-concavity demands C(v) >= C(u).
    int i = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(c.dim));
    int j = static_cast<int>(rng.next_u64() %
                             static_cast<std::uint64_t>(c.dim - 1));
    if (j >= i) ++j;
    std::size_t lo = static_cast<std::size_t>(i);
    std::size_t hi = static_cast<std::size_t>(j);
    if (u[lo] > u[hi]) std::swap(lo, hi);
    double step = rng.uniform01() * 0.5 * (u[hi] - u[lo]);
    v = u;
    v[lo] += step;
    v[hi] -= step;
    double diff = c.eval(v) - c.eval(u);
    worst = std::min(worst, diff);
  }
  res.worst_violation = worst;
  res.verdict = worst >= -kGridEpsilon;
  return res;
}

}  // namespace minclaim
