#pragma once

#include <map>
#include <utility>
#include <vector>

#include "kinkchain/model.hpp"
#include "kinkchain/site_set.hpp"

namespace kinkchain {

struct GroundSolution {
  Model model = Model::XzAf;
  int n_sites = 0;
  double epsilon = 0.0;
  int w_max = 0;
  int n_max = 0;
  // Keyed by translation-class representative (smallest rotation).
  std::map<SiteSet, double> g;
  double e_plus = 0.0;
  double e_minus = 0.0;
  double norm_g = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> deltas;

  [[nodiscard]] double coefficient(const SiteSet& x) const;
  // g over all 2^N subsets, index = bit mask.
  [[nodiscard]] std::vector<double> dense() const;
};

[[nodiscard]] GroundSolution solve_ground(const ModelSpec& spec, const TruncationPolicy& policy);

// E_plus, E_minus recomputed from the stored g with the solution's truncation.
[[nodiscard]] std::pair<double, double> ground_energies(const GroundSolution& sol, const ModelSpec& spec,
                                                        const TruncationPolicy& policy);

// sum over X with <1,2> in dX of |g(X)| |dX| (|eps| M)^-w(X).
[[nodiscard]] double g_norm(const GroundSolution& sol, const TruncationPolicy& policy);

struct GroundResidual {
  double max_dev_even = 0.0;
  double max_dev_odd = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
};

// Evaluates the pointwise ground equation over all 2^N configurations and
// fits one constant per parity sector.
[[nodiscard]] GroundResidual residual_ground(const GroundSolution& sol, const ModelSpec& spec);

// Coefficients of exp(sum_{Y : <N,1> in dY} g(Y) sigma(Y)) - 1, the power
// series cut at the given order. Dense over all subsets.
[[nodiscard]] std::vector<double> seam_exponential(const std::vector<double>& g_dense, int n_sites, int order);

namespace detail {
// One Picard step applied to every subset (no representative folding), used
// to check translation covariance.
[[nodiscard]] std::vector<double> ground_update(const std::vector<double>& g_dense, const ModelSpec& spec,
                                                const TruncationPolicy& policy);
}  // namespace detail

}  // namespace kinkchain
