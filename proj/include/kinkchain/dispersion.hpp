#pragma once

#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "kinkchain/interface.hpp"

namespace kinkchain {

enum class SeriesSource { Kt, Ed, Extrapolated };

[[nodiscard]] std::string to_string(SeriesSource s);
[[nodiscard]] SeriesSource series_source_from_string(const std::string& name);

// k_j = pi j / N
[[nodiscard]] double grid_k(int n_sites, int j);

struct DispersionSample {
  int j = 0;
  double k = 0.0;
  double value = 0.0;  // NaN marks a missing grid point
};

// value(k) = sum_s c_s e^{iks}, s in [-N+1, N].
struct DispersionSeries {
  int n_sites = 0;
  SeriesSource source = SeriesSource::Kt;
  std::vector<double> coeffs;  // c_s at index s + N - 1
  std::vector<DispersionSample> samples;
  double e_plus = std::numeric_limits<double>::quiet_NaN();
  double e_minus = std::numeric_limits<double>::quiet_NaN();
  double max_imag_residue = 0.0;
  bool symmetry_warning = false;
  std::vector<int> missing;

  [[nodiscard]] int min_s() const { return -n_sites + 1; }
  [[nodiscard]] int max_s() const { return n_sites; }
  // Any s, folded into the window by 2N-periodicity.
  [[nodiscard]] double coeff(int s) const;
  [[nodiscard]] std::complex<double> evaluate_complex(double k) const;
  [[nodiscard]] double evaluate(double k) const { return evaluate_complex(k).real(); }
  [[nodiscard]] double band_width() const;
  // sum of |c_s| over s != 0 (mod 2N)
  [[nodiscard]] double off_center_mass() const;
};

// D(k) = 2 + sum_{s=1}^{2N} e_s e^{-iks}
[[nodiscard]] DispersionSeries from_interface(const InterfaceSolution& sol, double e_plus, double e_minus);

// Inverse DFT from samples on the 2N grid k_j = pi j / N (in order).
// NaN values are treated as missing and fitted by minimum-norm least squares.
[[nodiscard]] DispersionSeries fourier_extract(const std::vector<std::pair<double, double>>& samples,
                                               SeriesSource source = SeriesSource::Ed);

[[nodiscard]] std::vector<std::pair<double, double>> evaluate_grid(const DispersionSeries& series);

// E_0(k) = (E+ + E-)/2 + (E+ - E-)/2 e^{-ikN}
[[nodiscard]] DispersionSeries ground_band(int n_sites, double e_plus, double e_minus);

// Coefficient-wise excited - ground on the window of the smaller chain.
[[nodiscard]] DispersionSeries difference(const DispersionSeries& excited, const DispersionSeries& ground);

struct CoefficientTrend {
  int s = 0;
  std::vector<int> n_values;
  std::vector<double> values;
  double estimate = 0.0;
  double decay_rate = 0.0;
  bool cauchy = true;
};

struct Extrapolation {
  DispersionSeries series;
  std::vector<CoefficientTrend> trends;
  bool all_cauchy = true;
};

[[nodiscard]] Extrapolation extrapolate(std::vector<DispersionSeries> series_by_n, bool richardson = false);

}  // namespace kinkchain
