#ifndef NULLCERT_ERRORS_HPP
#define NULLCERT_ERRORS_HPP

#include <stdexcept>

namespace nullcert {

// A configured work budget (frontier size, subset count, candidate count)
// was hit before the computation finished.  Distinct from a proven negative
// result.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nullcert

#endif  // NULLCERT_ERRORS_HPP
