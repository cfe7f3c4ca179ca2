#ifndef MINCLAIM_JSON_IO_HPP
#define MINCLAIM_JSON_IO_HPP

#include <string>

#include "minclaim/orders.hpp"
#include "minclaim/portfolio.hpp"

namespace minclaim {

// JSON (de)serialization over strings so the JSON library stays a private
// dependency of the core.  Parsers throw ParseError with the offending key
// named; semantic violations (bad theta, size mismatches) become DomainError
// through the usual factories.

std::string to_json(const CopulaSpec& c, int indent = -1);
CopulaSpec copula_from_json(const std::string& text);

std::string to_json(const MarginalSpec& m, int indent = -1);
MarginalSpec marginal_from_json(const std::string& text);

std::string to_json(const Portfolio& pf, int indent = -1);
Portfolio portfolio_from_json(const std::string& text);

std::string to_json(const OrderVerdict& v, int indent = -1);

// FNV-1a 64-bit hash of the canonical (sorted-key, compact) portfolio JSON,
// as 16 lowercase hex digits.  Stable across runs and platforms.
std::string portfolio_fingerprint(const Portfolio& pf);

}  // namespace minclaim

#endif  // MINCLAIM_JSON_IO_HPP
