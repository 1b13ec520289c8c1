#include "kinkchain/walsh.hpp"

namespace kinkchain::walsh {

void transform(std::span<double> a) {
  const std::size_t n = a.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = a[j];
        const double y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

std::vector<double> to_values(std::vector<double> coeffs) {
  transform(coeffs);
  return coeffs;
}

std::vector<double> to_coefficients(std::vector<double> values) {
  transform(values);
  const double scale = 1.0 / static_cast<double>(values.size());
  for (double& v : values) v *= scale;
  return values;
}

}  // namespace kinkchain::walsh
