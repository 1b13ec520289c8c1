#pragma once

#include <map>
#include <vector>

#include "kinkchain/ground.hpp"
#include "kinkchain/model.hpp"
#include "kinkchain/site_set.hpp"

namespace kinkchain {

// exp(sum_{Y : <N,1> in dY} g(Y) sigma(Y)) = 1 + sum_Y h(Y) sigma(Y).
struct SeamExpansion {
  int n_sites = 0;
  int w_max = 0;
  std::map<SiteSet, double> h;

  [[nodiscard]] std::vector<double> dense() const;
};

struct InterfaceSolution {
  Model variant = Model::XzAf;
  int n_sites = 0;
  double epsilon = 0.0;
  int cutoff = 0;  // w_N bound (antiferro) or alpha bound (ferro)
  // e(X) for n(X) != 0. e(empty) = 1 and e(T^m empty) = 0 are implied.
  std::map<SiteSet, double> e_map;
  // e_s stored at index s mod 2N, so e_{2N} sits at 0.
  std::vector<double> e_s;
  SeamExpansion seam;
  double norm_e = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> deltas;

  [[nodiscard]] double e(const SiteSet& x) const;
  [[nodiscard]] double fourier(int s) const;
  // e over all subsets, normalization rows included.
  [[nodiscard]] std::vector<double> dense() const;
};

[[nodiscard]] SeamExpansion compute_h(const GroundSolution& ground, const TruncationPolicy& policy);

// spec is the seamed chain (J_N = -1, N odd). The ferro variant ignores
// ground and seam.
[[nodiscard]] InterfaceSolution solve_interface(Model variant, const GroundSolution& ground,
                                                const SeamExpansion& seam, const ModelSpec& spec,
                                                const TruncationPolicy& policy);

[[nodiscard]] double e_norm(const InterfaceSolution& sol, const TruncationPolicy& policy);

// Largest Walsh coefficient of the interface equation residual, over all
// subsets including the n(X) = 0 rows.
[[nodiscard]] double residual_interface(const InterfaceSolution& sol, const GroundSolution& ground,
                                        const ModelSpec& spec);

}  // namespace kinkchain
