#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace ffbt {

// Bad caller input: negative orders, L < 1, non-square tables, missing bounds.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of the operation (e.g. r > 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// pi^2 |k|^2 too close to z_{m,n}^2 for c(k;m,n) to be meaningful.
class NearResonanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Field grid size does not match the transform order (L != 2K+1) or the
// two factors of a convolution live on different grids.
class GridMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The sampled function produced a non-finite value.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Query outside the regime where the estimate is defined (|k|_inf > K).
class OutOfRegimeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WarningHandler = std::function<void(const std::string&)>;

/// Installs a sink for non-fatal diagnostics and returns the previous one.
/// The default handler prints "warning: <msg>" to stderr.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(const std::string& message);

}  // namespace ffbt
