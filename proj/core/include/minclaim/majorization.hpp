#ifndef MINCLAIM_MAJORIZATION_HPP
#define MINCLAIM_MAJORIZATION_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace minclaim {

// Comparisons use ascending sorts and partial-sum inequalities with a fixed
// absolute tolerance, so ties at floating-point noise level count as holding.
inline constexpr double kMajorizationTol = 1e-12;

// a majorized-by b: equal totals and every ascending prefix sum of a is >=
// the matching prefix sum of b (equivalently descending prefixes of a <= b).
bool majorized(std::span<const double> a, std::span<const double> b);

// Weak submajorization (sum of the j largest of a <= same for b) and weak
// supermajorization (sum of the j smallest of a >= same for b).
bool weakly_submajorized(std::span<const double> a, std::span<const double> b);
bool weakly_supermajorized(std::span<const double> a,
                           std::span<const double> b);

enum class MajorizationRelation { Majorized, WeaklySubmajorized,
                                  WeaklySupermajorized };

// Draws a random positive vector b and derives a comparable to it under the
// requested relation (Robin-Hood transfers for majorization, uniform scaling
// for the weak orders).  The pair is re-validated before returning.
std::pair<std::vector<double>, std::vector<double>> random_comparable_pair(
    int n, MajorizationRelation relation, std::uint64_t seed);

}  // namespace minclaim

#endif  // MINCLAIM_MAJORIZATION_HPP
