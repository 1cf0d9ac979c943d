#ifndef POLARITON_ERRORS_HPP
#define POLARITON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polariton {

// Perturbative elimination of the upper atomic level requires Delta != 0.
class SingularDetuningError : public std::runtime_error {
 public:
  explicit SingularDetuningError(const std::string& what)
      : std::runtime_error(what) {}
};

// B = sqrt(g^2 + Omega_L^2) vanished; the polariton basis is undefined.
class DegenerateCouplingError : public std::runtime_error {
 public:
  explicit DegenerateCouplingError(const std::string& what)
      : std::runtime_error(what) {}
};

// The dark branch could not be identified in the exact spectrum.
class RegimeError : public std::runtime_error {
 public:
  explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

class EigensolverError : public std::runtime_error {
 public:
  EigensolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class StepSizeUnderflowError : public std::runtime_error {
 public:
  explicit StepSizeUnderflowError(const std::string& what)
      : std::runtime_error(what) {}
};

class PositivityError : public std::runtime_error {
 public:
  PositivityError(const std::string& what, double time, double min_eigenvalue)
      : std::runtime_error(what), time_(time), min_eigenvalue_(min_eigenvalue) {}
  double time() const { return time_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double time_;
  double min_eigenvalue_;
};

// Configuration file problem; line is 1-based, 0 when not line-specific.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace polariton

#endif
