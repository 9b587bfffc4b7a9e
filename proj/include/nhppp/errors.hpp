// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file errors.hpp
/// Exception hierarchy shared by every sampler and tool.
#pragma once

#include <stdexcept>
#include <string>

namespace nhppp {

enum class ErrorKind {
  domain,                  ///< parameter outside its mathematical domain
  impossible_condition,    ///< conditioning on a probability-zero event
  bracket,                 ///< root-finding target outside the bracket
  numeric,                 ///< iteration failed to converge
  argument,                ///< inconsistent or missing arguments
  majorization_violation,  ///< thinning majorizer does not dominate
  unsupported,             ///< operation not defined for this variant
  parse,                   ///< malformed input file or flag value
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define NHPPP_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  }

NHPPP_DEFINE_ERROR(DomainError, domain);
NHPPP_DEFINE_ERROR(ImpossibleConditionError, impossible_condition);
NHPPP_DEFINE_ERROR(BracketError, bracket);
NHPPP_DEFINE_ERROR(NumericError, numeric);
NHPPP_DEFINE_ERROR(ArgumentError, argument);
NHPPP_DEFINE_ERROR(MajorizationViolation, majorization_violation);
NHPPP_DEFINE_ERROR(UnsupportedError, unsupported);
NHPPP_DEFINE_ERROR(ParseError, parse);

#undef NHPPP_DEFINE_ERROR

}  // namespace nhppp
