#pragma once

#include <stdexcept>
#include <string>

namespace cyc {

/// Argument outside the domain of the operation (for instance |z| >= 1).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numeric parameter is out of its documented range.
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data violates a type invariant (non-monotone sequence, negative mass, ...).
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A constructive search (mass scaling, envelope check) did not succeed.
class construction_failed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No polynomial degree under the hard cap meets the requested sup-error.
class truncation_infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw validation_error(what);
}

inline void require_param(bool cond, const std::string& what) {
  if (!cond) throw parameter_error(what);
}

}  // namespace detail
}  // namespace cyc
