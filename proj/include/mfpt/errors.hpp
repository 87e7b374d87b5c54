#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mfpt {

/// Broad failure classes; the CLI maps them onto process exit codes.
enum class error_category { usage = 2, domain = 3, convergence = 4 };

class error : public std::runtime_error {
 public:
  error(error_category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  error_category category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  error_category category_;
};

/// Invalid coupling, level, or argument outside an operation's domain.
class domain_error : public error {
 public:
  explicit domain_error(const std::string& what)
      : error(error_category::domain, what) {}
};

/// Double-well coupling at or below the critical coupling (SSB phase).
class phase_error : public domain_error {
 public:
  using domain_error::domain_error;
};

class convergence_error : public error {
 public:
  explicit convergence_error(const std::string& what)
      : error(error_category::convergence, what) {}
};

/// Float-mode recursion lost too many digits to cancellation.
class precision_error : public convergence_error {
 public:
  using convergence_error::convergence_error;
};

/// The series magnitudes never turn around, so no term of least magnitude exists.
class no_tlm_error : public convergence_error {
 public:
  using convergence_error::convergence_error;
};

class quadrature_error : public convergence_error {
 public:
  using convergence_error::convergence_error;
};

/// Singularity estimators did not settle. Carries the raw estimate sequences
/// so callers can inspect them before supplying r_c by hand.
class non_convergence_error : public convergence_error {
 public:
  non_convergence_error(const std::string& what, std::vector<double> radius,
                        std::vector<double> exponent)
      : convergence_error(what),
        radius_(std::move(radius)),
        exponent_(std::move(exponent)) {}

  const std::vector<double>& radius_estimates() const noexcept { return radius_; }
  const std::vector<double>& exponent_estimates() const noexcept { return exponent_; }

 private:
  std::vector<double> radius_;
  std::vector<double> exponent_;
};

}  // namespace mfpt
