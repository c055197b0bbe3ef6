#pragma once

#include <stdexcept>
#include <string>

namespace qsdc {

// Parameter violations throw std::invalid_argument; out-of-domain special
// function arguments throw std::domain_error. The types below cover the
// remaining failure modes of the numeric layer.

// Root bracket does not straddle a sign change.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iteration cap reached or result failed its residual check.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested solution exists mathematically nowhere in the search range
// (e.g. no compensating transmissivity in [0, t_max]).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsdc
