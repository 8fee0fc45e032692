#ifndef CRSNOMA_ERRORS_HPP_
#define CRSNOMA_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crsnoma {

/// A closed form or quadrature produced a non-finite or unconverged value.
/// Carries the SNR and the index of the offending term (or panel).
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double rho, std::size_t term)
      : std::runtime_error(what + " (rho=" + std::to_string(rho) +
                           ", term=" + std::to_string(term) + ")"),
        rho_(rho),
        term_(term) {}

  double rho() const noexcept { return rho_; }
  std::size_t term() const noexcept { return term_; }

 private:
  double rho_;
  std::size_t term_;
};

}  // namespace crsnoma

#endif  // CRSNOMA_ERRORS_HPP_
