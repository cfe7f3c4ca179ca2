#include "minclaim/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "minclaim/errors.hpp"

namespace minclaim {

namespace {

using nlohmann::json;

const json& require_field(const json& node, const std::string& path,
                          const char* key) {
  auto it = node.find(key);
  if (it == node.end()) throw ParseError("missing field: " + path + key);
  return *it;
}

double number_field(const json& node, const std::string& path,
                    const char* key) {
  const json& v = require_field(node, path, key);
  if (!v.is_number()) {
    throw ParseError("field " + path + key + " must be a number");
  }
  return v.get<double>();
}

double number_field_or(const json& node, const std::string& path,
                       const char* key, double fallback) {
  if (node.find(key) == node.end()) return fallback;
  return number_field(node, path, key);
}

int int_field(const json& node, const std::string& path, const char* key) {
  const json& v = require_field(node, path, key);
  if (!v.is_number_integer()) {
    throw ParseError("field " + path + key + " must be an integer");
  }
  return v.get<int>();
}

std::string string_field(const json& node, const std::string& path,
                         const char* key) {
  const json& v = require_field(node, path, key);
  if (!v.is_string()) {
    throw ParseError("field " + path + key + " must be a string");
  }
  return v.get<std::string>();
}

std::vector<double> number_array_field(const json& node,
                                       const std::string& path,
                                       const char* key) {
  const json& v = require_field(node, path, key);
  if (!v.is_array() || v.empty()) {
    throw ParseError("field " + path + key +
                     " must be a nonempty array of numbers");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) {
      throw ParseError("field " + path + key +
                       " must be a nonempty array of numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

void require_object(const json& node, const std::string& what) {
  if (!node.is_object()) throw ParseError(what + " must be a JSON object");
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

CopulaSpec copula_from_node(const json& node, const std::string& path) {
  require_object(node, path.empty() ? "copula" : path + "copula");
  std::string family = string_field(node, path, "family");
  CopulaSpec c;
  if (family == "independence") {
    c.family = CopulaFamily::Independence;
  } else if (family == "frank") {
    c.family = CopulaFamily::Frank;
  } else if (family == "clayton") {
    c.family = CopulaFamily::Clayton;
  } else if (family == "gumbel_hougaard") {
    c.family = CopulaFamily::GumbelHougaard;
  } else if (family == "lower_frechet") {
    c.family = CopulaFamily::LowerFrechet;
  } else if (family == "upper_frechet") {
    c.family = CopulaFamily::UpperFrechet;
  } else {
    throw ParseError("unknown copula family: " + family);
  }
  c.dim = int_field(node, path, "dim");
  bool needs_theta = c.family == CopulaFamily::Frank ||
                     c.family == CopulaFamily::Clayton ||
                     c.family == CopulaFamily::GumbelHougaard;
  c.theta = needs_theta ? number_field(node, path, "theta")
                        : number_field_or(node, path, "theta", 0.0);
  c.validate();
  return c;
}

Baseline baseline_from_node(const json& node, const std::string& path) {
  require_object(node, path + "baseline");
  std::string kind = string_field(node, path, "kind");
  if (kind == "exponential") {
    return Baseline::exponential(number_field_or(node, path, "rate", 1.0));
  }
  if (kind == "stretched_exponential") {
    return Baseline::stretched_exponential(number_field(node, path, "c"),
                                           number_field(node, path, "k"));
  }
  throw ParseError("unknown baseline kind: " + kind);
}

MarginalSpec marginal_from_node(const json& node, const std::string& path) {
  require_object(node, path.empty() ? "marginal" : path + "marginal");
  std::string model = string_field(node, path, "model");
  // lambda is a template value here; the portfolio's lambdas[] override it.
  double lambda = number_field_or(node, path, "lambda", 1.0);
  if (model == "phr" || model == "prhr" || model == "harris") {
    Baseline baseline = baseline_from_node(
        require_field(node, path, "baseline"), path + "baseline.");
    if (model == "phr") return MarginalSpec::phr(baseline, lambda);
    if (model == "prhr") return MarginalSpec::prhr(baseline, lambda);
    return MarginalSpec::harris(baseline, lambda,
                                number_field(node, path, "theta_h"));
  }
  if (model == "lomax_exponential") {
    return MarginalSpec::lomax_exponential(number_field(node, path, "alpha"),
                                           number_field(node, path, "beta"),
                                           lambda);
  }
  throw ParseError("unknown marginal model: " + model);
}

json copula_to_node(const CopulaSpec& c) {
  json node;
  node["family"] = family_name(c.family);
  node["dim"] = c.dim;
  if (c.family == CopulaFamily::Frank || c.family == CopulaFamily::Clayton ||
      c.family == CopulaFamily::GumbelHougaard) {
    node["theta"] = c.theta;
  }
  return node;
}

json baseline_to_node(const Baseline& b) {
  json node;
  if (b.kind == Baseline::Kind::Exponential) {
    node["kind"] = "exponential";
    node["rate"] = b.rate;
  } else {
    node["kind"] = "stretched_exponential";
    node["c"] = b.c;
    node["k"] = b.k;
  }
  return node;
}

json marginal_to_node(const MarginalSpec& m) {
  json node;
  node["model"] = family_name(m.family());
  node["lambda"] = m.lambda();
  switch (m.family()) {
    case MarginalFamily::Phr:
    case MarginalFamily::Prhr:
      node["baseline"] = baseline_to_node(m.baseline());
      break;
    case MarginalFamily::Harris:
      node["baseline"] = baseline_to_node(m.baseline());
      node["theta_h"] = m.theta_h();
      break;
    case MarginalFamily::LomaxExponential:
      node["alpha"] = m.alpha();
      node["beta"] = m.beta();
      break;
  }
  return node;
}

json portfolio_to_node(const Portfolio& pf) {
  json node;
  node["lambdas"] = pf.lambdas;
  node["probs"] = pf.probs;
  node["marginal"] = marginal_to_node(pf.marginal);
  node["copula"] = copula_to_node(pf.copula);
  return node;
}

}  // namespace

std::string to_json(const CopulaSpec& c, int indent) {
  return copula_to_node(c).dump(indent);
}

CopulaSpec copula_from_json(const std::string& text) {
  return copula_from_node(parse_text(text), "");
}

std::string to_json(const MarginalSpec& m, int indent) {
  return marginal_to_node(m).dump(indent);
}

MarginalSpec marginal_from_json(const std::string& text) {
  return marginal_from_node(parse_text(text), "");
}

std::string to_json(const Portfolio& pf, int indent) {
  return portfolio_to_node(pf).dump(indent);
}

Portfolio portfolio_from_json(const std::string& text) {
  json node = parse_text(text);
  require_object(node, "portfolio");
  std::vector<double> lambdas = number_array_field(node, "", "lambdas");
  std::vector<double> probs = number_array_field(node, "", "probs");
  MarginalSpec marginal =
      marginal_from_node(require_field(node, "", "marginal"), "marginal.");
  CopulaSpec copula =
      copula_from_node(require_field(node, "", "copula"), "copula.");
  return Portfolio::make(std::move(lambdas), std::move(probs),
                         std::move(marginal), std::move(copula));
}

std::string to_json(const OrderVerdict& v, int indent) {
  json node;
  node["relation"] = relation_name(v.relation);
  node["direction"] = direction_name(v.direction);
  if (v.witness.has_value()) {
    node["witness"] = json{{"x", v.witness->x}, {"margin", v.witness->margin}};
  } else {
    node["witness"] = nullptr;
  }
  node["certificate"] = v.certificate;
  return node.dump(indent);
}

std::string portfolio_fingerprint(const Portfolio& pf) {
  // nlohmann::json orders object keys, so a compact dump is canonical.
  std::string canonical = portfolio_to_node(pf).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace minclaim
