#pragma once

#include <stdexcept>
#include <string>

namespace spgcd {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class division_by_zero : public error {
 public:
  division_by_zero() : error("division by zero in field arithmetic") {}
};

class factorization_budget_exceeded : public error {
 public:
  using error::error;
};

/// The target is not a power of the base within the requested bound.
class not_a_power : public error {
 public:
  not_a_power() : error("no exponent within bound maps the base onto the target") {}
};

class zero_polynomial : public error {
 public:
  zero_polynomial() : error("operation undefined on the zero polynomial") {}
};

class zero_scale : public error {
 public:
  zero_scale() : error("diversification scale contains a zero entry") {}
};

class root_deficit : public error {
 public:
  root_deficit(std::size_t found, std::size_t wanted)
      : error("found " + std::to_string(found) + " of " + std::to_string(wanted) + " roots") {}
};

class singular_system : public error {
 public:
  singular_system() : error("Vandermonde nodes are zero or not pairwise distinct") {}
};

class diversity_violation : public error {
 public:
  diversity_violation() : error("recovered coefficients are not pairwise distinct") {}
};

/// An interpolated polynomial does not reproduce its input evaluations.
class verification_mismatch : public error {
 public:
  verification_mismatch() : error("interpolated polynomial disagrees with its evaluations") {}
};

class length_mismatch : public error {
 public:
  using error::error;
};

class invalid_input : public error {
 public:
  using error::error;
};

class budget_exceeded : public error {
 public:
  using error::error;
};

/// A stage of the randomized GCD pipeline gave up.  `retryable()` is false
/// for hard aborts (term cap, time limit).
class gcd_failure : public error {
 public:
  gcd_failure(std::string stage, std::string cause, bool retryable = true)
      : error("stage " + stage + ": " + cause),
        stage_(std::move(stage)),
        cause_(std::move(cause)),
        retryable_(retryable) {}

  const std::string& stage() const noexcept { return stage_; }
  const std::string& cause() const noexcept { return cause_; }
  bool retryable() const noexcept { return retryable_; }

 private:
  std::string stage_;
  std::string cause_;
  bool retryable_;
};

}  // namespace spgcd
