#pragma once

#include <stdexcept>
#include <string>

namespace softac {

/// Violated precondition (shape mismatch, bad argument).
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite value where a finite one is required (loss, gradient, output).
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace softac
