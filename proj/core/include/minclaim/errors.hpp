#ifndef MINCLAIM_ERRORS_HPP
#define MINCLAIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace minclaim {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Operation not defined for the given family / model combination.
class UnsupportedError : public std::logic_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::logic_error(what) {}
};

// Malformed JSON / CSV / flag input; message names the offending field.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A theorem premise failed numerical certification.  `condition()` names
// the failed premise so callers can report it verbatim.
class PremiseError : public std::runtime_error {
 public:
  PremiseError(std::string condition, const std::string& detail)
      : std::runtime_error("premise failed: " + condition + " (" + detail + ")"),
        condition_(std::move(condition)) {}

  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

}  // namespace minclaim

#endif  // MINCLAIM_ERRORS_HPP
