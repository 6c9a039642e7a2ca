#pragma once

#include <stdexcept>
#include <string>

namespace cvw {

// Parameter outside the physical domain (p ∉ [0,1], λ ≥ 1, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A spectrum or probability table with entries below the clipping floor.
class invalid_spectrum : public domain_error {
 public:
  using domain_error::domain_error;
};

// The Fock cutoff is too small for the requested tail tolerance.
class truncation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent evaluation routes disagree beyond their tolerance.
class consistency_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative procedure failed to meet its stopping criterion.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvw
