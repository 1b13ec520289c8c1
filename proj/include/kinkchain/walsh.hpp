#pragma once

#include <span>
#include <vector>

namespace kinkchain::walsh {

// In-place unnormalised Walsh-Hadamard transform. Index s encodes a spin
// configuration (bit i-1 set <=> sigma_i = -1) or a site set, and
// sigma(X) = (-1)^popcount(X & s).
void transform(std::span<double> a);

// Coefficients c(X) -> pointwise values f(sigma) = sum_X c(X) sigma(X).
[[nodiscard]] std::vector<double> to_values(std::vector<double> coeffs);

// Pointwise values -> coefficients, the inverse of to_values.
[[nodiscard]] std::vector<double> to_coefficients(std::vector<double> values);

}  // namespace kinkchain::walsh
