#pragma once

#include <stdexcept>

namespace satnoma {

// Scenario or configuration rejected at construction/parse time.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A numerical procedure failed to meet its accuracy contract
// (series truncation cap hit, quadrature not converged, probability
// outside [0,1] beyond the allowed slack).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace satnoma
