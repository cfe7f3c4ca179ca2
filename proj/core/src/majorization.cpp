#include "minclaim/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "minclaim/errors.hpp"
#include "rng.hpp"

namespace minclaim {

namespace {

std::vector<double> ascending(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

void check_pair(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || a.size() != b.size()) {
    throw DomainError("majorization needs two nonempty vectors of equal length");
  }
  for (double v : a) {
    if (!std::isfinite(v)) throw DomainError("majorization entries must be finite");
  }
  for (double v : b) {
    if (!std::isfinite(v)) throw DomainError("majorization entries must be finite");
  }
}

}  // namespace

bool majorized(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b);
  auto sa = ascending(a);
  auto sb = ascending(b);
  double total_a = 0.0;
  double total_b = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    total_a += sa[i];
    total_b += sb[i];
  }
  if (std::fabs(total_a - total_b) > kMajorizationTol) return false;
  double pa = 0.0;
  double pb = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    pa += sa[i];
    pb += sb[i];
    if (pa < pb - kMajorizationTol) return false;
  }
  return true;
}

bool weakly_submajorized(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b);
  auto sa = ascending(a);
  auto sb = ascending(b);
  double suffix_a = 0.0;
  double suffix_b = 0.0;
  for (std::size_t i = sa.size(); i-- > 0;) {
    suffix_a += sa[i];
    suffix_b += sb[i];
    if (suffix_a > suffix_b + kMajorizationTol) return false;
  }
  return true;
}

bool weakly_supermajorized(std::span<const double> a,
                           std::span<const double> b) {
  check_pair(a, b);
  auto sa = ascending(a);
  auto sb = ascending(b);
  double prefix_a = 0.0;
  double prefix_b = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    prefix_a += sa[i];
    prefix_b += sb[i];
    if (prefix_a < prefix_b - kMajorizationTol) return false;
  }
  return true;
}

std::pair<std::vector<double>, std::vector<double>> random_comparable_pair(
    int n, MajorizationRelation relation, std::uint64_t seed) {
  if (n < 2) throw DomainError("random_comparable_pair needs n >= 2");
  detail::Rng rng(seed);
  std::vector<double> b(static_cast<std::size_t>(n));
  for (double& v : b) v = 0.25 + 4.75 * rng.uniform01();
  // Robin-Hood transfers shrink spread while preserving the sum, so the
  // result is majorized by b.
  std::vector<double> a = b;
  int transfers = 2 * n;
  for (int t = 0; t < transfers; ++t) {
    std::size_t i = static_cast<std::size_t>(rng.next_u64() %
                                             static_cast<std::uint64_t>(n));
    std::size_t j = static_cast<std::size_t>(rng.next_u64() %
                                             static_cast<std::uint64_t>(n - 1));
    if (j >= i) ++j;
    if (a[i] > a[j]) std::swap(i, j);
    double step = rng.uniform01() * 0.5 * (a[j] - a[i]);
    a[i] += step;
    a[j] -= step;
  }
  bool ok = false;
  switch (relation) {
    case MajorizationRelation::Majorized:
      ok = majorized(a, b);
      break;
    case MajorizationRelation::WeaklySubmajorized: {
      double scale = 0.5 + 0.5 * rng.uniform01();  // <= 1
      for (double& v : a) v *= scale;
      ok = weakly_submajorized(a, b);
      break;
    }
    case MajorizationRelation::WeaklySupermajorized: {
      double scale = 1.0 + 0.5 * rng.uniform01();  // >= 1
      for (double& v : a) v *= scale;
      ok = weakly_supermajorized(a, b);
      break;
    }
  }
  if (!ok) throw DomainError("random_comparable_pair failed self-validation");
  return {std::move(a), std::move(b)};
}

}  // namespace minclaim
