#ifndef MINCLAIM_CSV_HPP
#define MINCLAIM_CSV_HPP

#include <string>

#include "minclaim/portfolio.hpp"
#include "minclaim/sampler.hpp"

namespace minclaim {

// CSV writers used by the command-line tool.  Numbers are printed with %.17g
// so a round trip through text reproduces the doubles exactly.

// Header: x,exact
std::string survival_csv(const SurvivalCurve& curve);

// Header: x,exact,lower,upper,method
std::string bounds_csv(const SurvivalCurve& exact, const BoundsCurve& bounds);

// Header: x,empirical,se,analytic,abs_err,within_3se
std::string simulation_csv(const EmpiricalCurve& empirical,
                           const SurvivalCurve& analytic);

// Writes the draws as a single `y` column next to a JSON sidecar holding
// seed, sample count, and portfolio fingerprint.  `path` names the CSV; the
// sidecar is `path` + ".json".
void export_batch(const SampleBatch& batch, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace minclaim

#endif  // MINCLAIM_CSV_HPP
