#include "kinkchain/ground.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kinkchain/errors.hpp"
#include "kinkchain/walsh.hpp"
#include "kinkchain/weights.hpp"

namespace kinkchain {

namespace {

constexpr int kMaxGroundSites = 20;
constexpr double kBlowUp = 1e3;

void check_ground_spec(const ModelSpec& spec) {
  if (spec.model == Model::XxzFerro)
    throw ParameterDomainError("ground solver covers the antiferromagnetic chains only");
  if (spec.n_sites < 3 || spec.n_sites > kMaxGroundSites)
    throw ParameterDomainError("ground solver supports 3..20 sites");
  if (!spec.is_uniform())
    throw ParameterDomainError("ground solver needs uniform couplings");
}

bool nearest_pair(mask::Bits x, int n) {
  return mask::popcount(x) == 2 && (x & mask::rotl(x, 1, n)) != 0;
}

double truncated_exp(double v, int order) {
  double sum = 1.0;
  for (int k = order; k >= 1; --k) sum = 1.0 + sum * v / k;
  return sum;
}

std::pair<double, double> energies_from_h(const std::vector<double>& h, Model model, int n, double eps) {
  const mask::Bits lam = mask::full(n);
  const mask::Bits seam = mask::pair(n, n);
  double mean = -n - n * h[0];
  double split = -n * h[lam];
  if (model == Model::XxzAf) {
    mean += eps * n * h[seam];
    split += eps * n * h[lam ^ seam];
  }
  return {mean + split, mean - split};
}

std::vector<mask::Bits> canonical_table(int n) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<mask::Bits> rep(dim);
  for (std::size_t x = 0; x < dim; ++x) rep[x] = mask::canonical(x, n);
  return rep;
}

}  // namespace

double GroundSolution::coefficient(const SiteSet& x) const {
  auto it = g.find(canonical(x));
  return it == g.end() ? 0.0 : it->second;
}

std::vector<double> GroundSolution::dense() const {
  std::vector<double> out(std::size_t{1} << n_sites, 0.0);
  for (const auto& [rep, value] : g)
    for (int t = 0; t < n_sites; ++t) out[mask::rotl(rep.bits(), t, n_sites)] = value;
  return out;
}

std::vector<double> seam_exponential(const std::vector<double>& g_dense, int n_sites, int order) {
  const mask::Bits seam_bond = mask::site(n_sites);
  std::vector<double> part(g_dense.size(), 0.0);
  for (std::size_t x = 0; x < g_dense.size(); ++x)
    if (mask::boundary(x, n_sites) & seam_bond) part[x] = g_dense[x];
  auto values = walsh::to_values(std::move(part));
  for (double& v : values) v = truncated_exp(v, order);
  auto h = walsh::to_coefficients(std::move(values));
  h[0] -= 1.0;
  return h;
}

namespace detail {

std::vector<double> ground_update(const std::vector<double>& g_dense, const ModelSpec& spec,
                                  const TruncationPolicy& policy) {
  const int n = spec.n_sites;
  const double eps = spec.epsilon;
  const bool xxz = spec.model == Model::XxzAf;
  const mask::Bits lam = mask::full(n);
  const mask::Bits seam_bond = mask::site(n);
  const mask::Bits seam = mask::pair(n, n);
  const auto weights = WeightTable::get(n);

  const auto h = seam_exponential(g_dense, n, policy.series_order());
  std::vector<double> h_rest(h);
  for (std::size_t x = 0; x < h.size(); ++x)
    if (mask::boundary(x, n) & seam_bond) h_rest[x] -= g_dense[x];

  std::vector<double> next(g_dense.size(), 0.0);
  for (mask::Bits x = 1; x < lam; ++x) {
    if (weights->w(x) > policy.w_max) continue;
    double source = nearest_pair(x, n) ? (xxz ? 2.0 : 1.0) * eps : 0.0;
    for (int j = 1; j <= n; ++j) {
      const mask::Bits shifted = mask::rotr(x, j, n);
      source -= h_rest[shifted];
      if (xxz) source += eps * h[shifted ^ seam];
    }
    next[x] = source / mask::popcount(mask::boundary(x, n));
  }
  return next;
}

}  // namespace detail

GroundSolution solve_ground(const ModelSpec& spec, const TruncationPolicy& policy) {
  policy.validate();
  check_ground_spec(spec);
  spec.check_domain(policy.norm_m);

  const int n = spec.n_sites;
  GroundSolution sol;
  sol.model = spec.model;
  sol.n_sites = n;
  sol.epsilon = spec.epsilon;
  sol.w_max = policy.w_max;
  sol.n_max = policy.series_order();

  if (spec.epsilon == 0.0) {
    sol.e_plus = sol.e_minus = -n;
    sol.iterations = 1;
    sol.converged = true;
    sol.deltas.push_back(0.0);
    return sol;
  }

  const auto rep = canonical_table(n);
  std::vector<double> g(std::size_t{1} << n, 0.0);
  double delta = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= policy.max_iter; ++it) {
    const auto next = detail::ground_update(g, spec, policy);
    delta = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) {
      const double v = next[rep[x]];
      delta = std::max(delta, std::abs(v - g[x]));
      g[x] = v;
    }
    sol.deltas.push_back(delta);
    sol.iterations = it;
    if (!std::isfinite(delta) || delta > kBlowUp)
      throw DivergenceError("ground iteration blew up at step " + std::to_string(it), delta, it);
    if (delta < policy.tol) {
      sol.converged = true;
      break;
    }
  }
  if (!sol.converged)
    throw DivergenceError("ground iteration did not reach tol within max_iter", delta, sol.iterations);

  for (std::size_t x = 0; x < g.size(); ++x)
    if (rep[x] == x && g[x] != 0.0) sol.g.emplace(SiteSet(n, x), g[x]);

  const auto h = seam_exponential(g, n, sol.n_max);
  std::tie(sol.e_plus, sol.e_minus) = energies_from_h(h, spec.model, n, spec.epsilon);
  sol.norm_g = g_norm(sol, policy);
  return sol;
}

std::pair<double, double> ground_energies(const GroundSolution& sol, const ModelSpec& spec,
                                          const TruncationPolicy& policy) {
  if (spec.n_sites != sol.n_sites) throw SizeMismatchError("ground solution and spec differ in N");
  const int order = sol.n_max > 0 ? sol.n_max : policy.series_order();
  const auto h = seam_exponential(sol.dense(), sol.n_sites, order);
  return energies_from_h(h, spec.model, sol.n_sites, spec.epsilon);
}

double g_norm(const GroundSolution& sol, const TruncationPolicy& policy) {
  const int n = sol.n_sites;
  bool any = false;
  for (const auto& [rep, value] : sol.g) any = any || value != 0.0;
  if (!any) return 0.0;
  if (sol.epsilon == 0.0) throw ParameterDomainError("norm weight (|eps| M)^-w undefined at eps = 0");
  const double base = std::abs(sol.epsilon) * policy.norm_m;
  double total = 0.0;
  for (const auto& [rep, value] : sol.g) {
    const int w = mask::weight_w(rep.bits(), n);
    for (int t = 0; t < n; ++t) {
      const mask::Bits x = mask::rotl(rep.bits(), t, n);
      if (t > 0 && x == rep.bits()) break;
      const mask::Bits b = mask::boundary(x, n);
      if (b & 1U) total += std::abs(value) * mask::popcount(b) * std::pow(base, -w);
    }
  }
  return total;
}

GroundResidual residual_ground(const GroundSolution& sol, const ModelSpec& spec) {
  const int n = sol.n_sites;
  if (n > 24) throw SizeMismatchError("pointwise residual needs N <= 24");
  const bool xxz = spec.model == Model::XxzAf;
  const double eps = spec.epsilon;

  struct Term {
    mask::Bits x;
    double value;
  };
  std::vector<std::vector<Term>> per_bond(static_cast<std::size_t>(n));
  for (const auto& [rep, value] : sol.g) {
    for (int t = 0; t < n; ++t) {
      const mask::Bits x = mask::rotl(rep.bits(), t, n);
      if (t > 0 && x == rep.bits()) break;
      const mask::Bits b = mask::boundary(x, n);
      for (int j = 1; j <= n; ++j)
        if (b & mask::site(j)) per_bond[static_cast<std::size_t>(j - 1)].push_back({x, value});
    }
  }

  double lo[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  double hi[2] = {-lo[0], -lo[1]};
  const std::size_t dim = std::size_t{1} << n;
  for (mask::Bits s = 0; s < dim; ++s) {
    double l = 0.0;
    for (int j = 1; j <= n; ++j) {
      double exponent = 0.0;
      for (const auto& term : per_bond[static_cast<std::size_t>(j - 1)])
        exponent += (mask::popcount(term.x & s) & 1) ? -term.value : term.value;
      const double e = std::exp(exponent);
      const double zz = (mask::popcount(mask::pair(j, n) & s) & 1) ? -1.0 : 1.0;
      l += -e + eps * zz * (xxz ? 1.0 + e : 1.0);
    }
    const int sector = mask::popcount(s) & 1;
    lo[sector] = std::min(lo[sector], l);
    hi[sector] = std::max(hi[sector], l);
  }
  return GroundResidual{(hi[0] - lo[0]) / 2, (hi[1] - lo[1]) / 2, (hi[0] + lo[0]) / 2, (hi[1] + lo[1]) / 2};
}

}  // namespace kinkchain
