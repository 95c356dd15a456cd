#pragma once

#include <stdexcept>
#include <string>

namespace horolab {

// An operation ran on valid input but the numerics did not settle: quadrature
// that did not converge, reduction loops past their cap, low-signal fits.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace horolab
