#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nds {

/// Which admissibility condition an input failed.
enum class Violation {
  parity,         // chi1 * chi2 (-1) != 1
  not_primitive,  // conductor smaller than modulus
  principal,      // trivial character where a nontrivial one is required
  not_coprime,    // gcd(a, c) != 1
  not_divisible,  // q1 q2 does not divide c (or q2 does not divide c)
  domain,         // any other out-of-range argument
};

std::string_view to_string(Violation v);

/// Raised when inputs do not satisfy the preconditions of a newform Dedekind
/// sum evaluation. The violated condition is available for callers that map
/// failures to exit codes or messages.
class AdmissibilityError : public std::invalid_argument {
 public:
  AdmissibilityError(Violation v, const std::string& what)
      : std::invalid_argument(what), violation_(v) {}

  Violation violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

}  // namespace nds
