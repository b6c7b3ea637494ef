#ifndef DYCKM_ERRORS_HPP
#define DYCKM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dyckm {

// Thrown when an enumeration or search would exceed a configured cap.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a construction cannot be completed within its budget
// (e.g. no valid approximant fits the requested period).
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a measure fails the strict transport condition somewhere it is
// required; carries the offending parameter value for reporting.
struct transport_error : std::runtime_error {
  transport_error(const std::string& what, std::string where)
      : std::runtime_error(what), location(std::move(where)) {}
  std::string location;
};

}  // namespace dyckm

#endif
