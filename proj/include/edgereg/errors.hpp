#pragma once

#include <chrono>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace edgereg {

/// Malformed input: bad file syntax, loops, unknown vertices, bad arguments.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two values built over different ring contexts were combined.
class ContextMismatch : public std::invalid_argument {
 public:
  ContextMismatch() : std::invalid_argument("monomials live in different ring contexts") {}
};

/// A configured resource cap was hit. Distinct from mathematical errors so
/// callers can clip instead of fail.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t size)
      : std::runtime_error(what + " (size " + std::to_string(size) + ")"), size_(size) {}

  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_;
};

/// A precondition of a structural identity does not hold for the given input.
class HypothesisViolation : public std::runtime_error {
 public:
  HypothesisViolation(const std::string& what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}

  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

/// Resource caps shared by the heavy routines. Zero means unlimited.
struct Budgets {
  std::size_t max_lattice = 200'000;
  std::size_t max_lp_calls = 20'000'000;
  std::size_t max_generators = 2'000'000;
  double max_seconds = 0;
};

/// Wall-clock cap derived from Budgets::max_seconds.
class Deadline {
 public:
  explicit Deadline(double seconds)
      : active_(seconds > 0),
        end_(std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                    std::chrono::duration<double>(seconds))) {}

  void check(const char* what, std::size_t size) const {
    if (active_ && std::chrono::steady_clock::now() > end_) throw BudgetExceeded(std::string(what) + ": time cap exceeded", size);
  }

 private:
  bool active_;
  std::chrono::steady_clock::time_point end_;
};

}  // namespace edgereg
