#include "kinkchain/dispersion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "kinkchain/errors.hpp"

namespace kinkchain {

namespace {

constexpr double kGridTol = 1e-9;
constexpr double kImagTol = 1e-9;
constexpr double kFlatDiff = 1e-15;

int window_index(int n, int s) {
  const int period = 2 * n;
  int r = ((s + n - 1) % period + period) % period;
  return r;  // index of the representative of s in [-n+1, n]
}

DispersionSeries make_series(int n, SeriesSource source) {
  DispersionSeries out;
  out.n_sites = n;
  out.source = source;
  out.coeffs.assign(static_cast<std::size_t>(2 * n), 0.0);
  return out;
}

void fill_samples(DispersionSeries& series) {
  series.samples.clear();
  for (int j = 0; j < 2 * series.n_sites; ++j) {
    const double k = grid_k(series.n_sites, j);
    series.samples.push_back({j, k, series.evaluate(k)});
  }
}

}  // namespace

std::string to_string(SeriesSource s) {
  switch (s) {
    case SeriesSource::Kt: return "kt";
    case SeriesSource::Ed: return "ed";
    case SeriesSource::Extrapolated: return "extrapolated";
  }
  return "unknown";
}

SeriesSource series_source_from_string(const std::string& name) {
  if (name == "kt") return SeriesSource::Kt;
  if (name == "ed") return SeriesSource::Ed;
  if (name == "extrapolated") return SeriesSource::Extrapolated;
  throw ConfigError("unknown series source '" + name + "'");
}

double grid_k(int n_sites, int j) { return std::numbers::pi * j / n_sites; }

double DispersionSeries::coeff(int s) const {
  if (coeffs.empty()) return 0.0;
  return coeffs[static_cast<std::size_t>(window_index(n_sites, s))];
}

std::complex<double> DispersionSeries::evaluate_complex(double k) const {
  std::complex<double> sum = 0.0;
  for (int s = min_s(); s <= max_s(); ++s) sum += coeff(s) * std::polar(1.0, k * s);
  return sum;
}

double DispersionSeries::band_width() const {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int j = 0; j < 2 * n_sites; ++j) {
    const double v = evaluate(grid_k(n_sites, j));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

double DispersionSeries::off_center_mass() const {
  double total = 0.0;
  for (int s = min_s(); s <= max_s(); ++s)
    if (s != 0) total += std::abs(coeff(s));
  return total;
}

DispersionSeries from_interface(const InterfaceSolution& sol, double e_plus, double e_minus) {
  const int n = sol.n_sites;
  auto out = make_series(n, SeriesSource::Kt);
  out.e_plus = e_plus;
  out.e_minus = e_minus;
  for (int s = out.min_s(); s <= out.max_s(); ++s)
    out.coeffs[static_cast<std::size_t>(window_index(n, s))] = sol.fourier(-s) + (s == 0 ? 2.0 : 0.0);
  for (int j = 0; j < 2 * n; ++j) {
    const double k = grid_k(n, j);
    std::complex<double> d = 2.0;
    for (int s = 1; s <= 2 * n; ++s) d += sol.fourier(s) * std::polar(1.0, -k * s);
    out.samples.push_back({j, k, d.real()});
  }
  return out;
}

DispersionSeries fourier_extract(const std::vector<std::pair<double, double>>& samples, SeriesSource source) {
  if (samples.size() < 2 || samples.size() % 2 != 0)
    throw GridMismatchError("expected 2N samples, got " + std::to_string(samples.size()));
  const int n = static_cast<int>(samples.size() / 2);
  for (int j = 0; j < 2 * n; ++j)
    if (std::abs(samples[static_cast<std::size_t>(j)].first - grid_k(n, j)) > kGridTol)
      throw GridMismatchError("sample " + std::to_string(j) + " is not at k = pi j / N");

  auto out = make_series(n, source);
  std::vector<int> present;
  for (int j = 0; j < 2 * n; ++j) {
    const double v = samples[static_cast<std::size_t>(j)].second;
    out.samples.push_back({j, grid_k(n, j), v});
    if (std::isnan(v)) {
      out.missing.push_back(j);
    } else {
      present.push_back(j);
    }
  }
  if (present.empty()) throw InsufficientDataError("all dispersion samples are missing");

  std::vector<std::complex<double>> c(static_cast<std::size_t>(2 * n));
  if (out.missing.empty()) {
    for (int s = out.min_s(); s <= out.max_s(); ++s) {
      std::complex<double> sum = 0.0;
      for (int j = 0; j < 2 * n; ++j)
        sum += samples[static_cast<std::size_t>(j)].second * std::polar(1.0, -grid_k(n, j) * s);
      c[static_cast<std::size_t>(window_index(n, s))] = sum / static_cast<double>(2 * n);
    }
  } else {
    const auto rows = static_cast<Eigen::Index>(present.size());
    Eigen::MatrixXcd a(rows, 2 * n);
    Eigen::VectorXcd b(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const int j = present[static_cast<std::size_t>(r)];
      b(r) = samples[static_cast<std::size_t>(j)].second;
      for (int s = out.min_s(); s <= out.max_s(); ++s)
        a(r, window_index(n, s)) = std::polar(1.0, grid_k(n, j) * s);
    }
    const Eigen::VectorXcd x = a.completeOrthogonalDecomposition().solve(b);
    for (int i = 0; i < 2 * n; ++i) c[static_cast<std::size_t>(i)] = x(i);
  }
  for (int i = 0; i < 2 * n; ++i) {
    out.coeffs[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)].real();
    out.max_imag_residue = std::max(out.max_imag_residue, std::abs(c[static_cast<std::size_t>(i)].imag()));
  }
  out.symmetry_warning = out.max_imag_residue > kImagTol;
  return out;
}

std::vector<std::pair<double, double>> evaluate_grid(const DispersionSeries& series) {
  std::vector<std::pair<double, double>> out;
  for (int j = 0; j < 2 * series.n_sites; ++j) {
    const double k = grid_k(series.n_sites, j);
    out.emplace_back(k, series.evaluate(k));
  }
  return out;
}

DispersionSeries ground_band(int n_sites, double e_plus, double e_minus) {
  auto out = make_series(n_sites, SeriesSource::Ed);
  out.e_plus = e_plus;
  out.e_minus = e_minus;
  out.coeffs[static_cast<std::size_t>(window_index(n_sites, 0))] = 0.5 * (e_plus + e_minus);
  out.coeffs[static_cast<std::size_t>(window_index(n_sites, n_sites))] = 0.5 * (e_plus - e_minus);
  fill_samples(out);
  return out;
}

DispersionSeries difference(const DispersionSeries& excited, const DispersionSeries& ground) {
  const int n = std::min(excited.n_sites, ground.n_sites);
  auto out = make_series(n, excited.source);
  for (int s = out.min_s(); s <= out.max_s(); ++s)
    out.coeffs[static_cast<std::size_t>(window_index(n, s))] = excited.coeff(s) - ground.coeff(s);
  fill_samples(out);
  return out;
}

Extrapolation extrapolate(std::vector<DispersionSeries> series_by_n, bool richardson) {
  std::sort(series_by_n.begin(), series_by_n.end(),
            [](const DispersionSeries& a, const DispersionSeries& b) { return a.n_sites < b.n_sites; });
  series_by_n.erase(std::unique(series_by_n.begin(), series_by_n.end(),
                                [](const DispersionSeries& a, const DispersionSeries& b) {
                                  return a.n_sites == b.n_sites;
                                }),
                    series_by_n.end());
  if (series_by_n.size() < 3)
    throw InsufficientDataError("extrapolation needs at least three chain lengths");

  const int n = series_by_n.front().n_sites;
  Extrapolation result;
  result.series = make_series(n, SeriesSource::Extrapolated);
  for (int s = result.series.min_s(); s <= result.series.max_s(); ++s) {
    CoefficientTrend trend;
    trend.s = s;
    for (const auto& series : series_by_n) {
      trend.n_values.push_back(series.n_sites);
      trend.values.push_back(series.coeff(s));
    }
    const std::size_t m = trend.values.size();
    const double d_last = trend.values[m - 1] - trend.values[m - 2];
    const double d_prev = trend.values[m - 2] - trend.values[m - 3];
    if (std::abs(d_last) <= kFlatDiff) {
      trend.decay_rate = 0.0;
    } else if (std::abs(d_prev) <= kFlatDiff) {
      trend.decay_rate = std::numeric_limits<double>::infinity();
    } else {
      trend.decay_rate = std::abs(d_last) / std::abs(d_prev);
    }
    trend.cauchy = trend.decay_rate < 1.0;
    trend.estimate = trend.values.back();
    if (richardson && trend.decay_rate > 0.0 && std::isfinite(trend.decay_rate) && d_last != d_prev)
      trend.estimate -= d_last * d_last / (d_last - d_prev);
    result.all_cauchy = result.all_cauchy && trend.cauchy;
    result.series.coeffs[static_cast<std::size_t>(window_index(n, s))] = trend.estimate;
    result.trends.push_back(std::move(trend));
  }
  fill_samples(result.series);
  return result;
}

}  // namespace kinkchain
