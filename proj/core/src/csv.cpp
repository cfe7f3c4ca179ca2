#include "minclaim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "minclaim/errors.hpp"

namespace minclaim {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

void check_sizes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DomainError(std::string("curve size mismatch in ") + what);
}

}  // namespace

std::string survival_csv(const SurvivalCurve& curve) {
  check_sizes(curve.xs.size(), curve.values.size(), "survival_csv");
  std::string out = "x,exact\n";
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    out += fmt(curve.xs[i]);
    out += ',';
    out += fmt(curve.values[i]);
    out += '\n';
  }
  return out;
}

std::string bounds_csv(const SurvivalCurve& exact, const BoundsCurve& bounds) {
  check_sizes(exact.xs.size(), bounds.xs.size(), "bounds_csv");
  check_sizes(bounds.xs.size(), bounds.lower.size(), "bounds_csv");
  check_sizes(bounds.xs.size(), bounds.upper.size(), "bounds_csv");
  const char* method = method_name(bounds.method);
  std::string out = "x,exact,lower,upper,method\n";
  for (std::size_t i = 0; i < bounds.xs.size(); ++i) {
    out += fmt(bounds.xs[i]);
    out += ',';
    out += fmt(exact.values[i]);
    out += ',';
    out += fmt(bounds.lower[i]);
    out += ',';
    out += fmt(bounds.upper[i]);
    out += ',';
    out += method;
    out += '\n';
  }
  return out;
}

std::string simulation_csv(const EmpiricalCurve& empirical,
                           const SurvivalCurve& analytic) {
  check_sizes(empirical.xs.size(), analytic.xs.size(), "simulation_csv");
  check_sizes(empirical.xs.size(), empirical.survival.size(),
              "simulation_csv");
  std::string out = "x,empirical,se,analytic,abs_err,within_3se\n";
  for (std::size_t i = 0; i < empirical.xs.size(); ++i) {
    double err = std::fabs(empirical.survival[i] - analytic.values[i]);
    bool ok = err <= 3.0 * empirical.std_err[i];
    out += fmt(empirical.xs[i]);
    out += ',';
    out += fmt(empirical.survival[i]);
    out += ',';
    out += fmt(empirical.std_err[i]);
    out += ',';
    out += fmt(analytic.values[i]);
    out += ',';
    out += fmt(err);
    out += ',';
    out += ok ? "true" : "false";
    out += '\n';
  }
  return out;
}

void export_batch(const SampleBatch& batch, const std::string& path) {
  std::string csv = "y\n";
  for (double y : batch.y_min) {
    csv += fmt(y);
    csv += '\n';
  }
  write_text_file(path, csv);
  std::ostringstream sidecar;
  sidecar << "{\"seed\":" << batch.seed << ",\"n_samples\":" << batch.n_samples
          << ",\"fingerprint\":\"" << batch.fingerprint << "\"}\n";
  write_text_file(path + ".json", sidecar.str());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open for writing: " + path);
  out << content;
  if (!out) throw DomainError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace minclaim
