#include "kinkchain/interface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kinkchain/errors.hpp"
#include "kinkchain/hopping.hpp"
#include "kinkchain/walsh.hpp"
#include "kinkchain/weights.hpp"

namespace kinkchain {

namespace {

constexpr int kMaxInterfaceSites = 20;
constexpr double kBlowUp = 1e3;

double spin_product(mask::Bits s, mask::Bits x) { return (mask::popcount(s & x) & 1) ? -1.0 : 1.0; }

void check_interface_inputs(Model variant, const GroundSolution& ground, const SeamExpansion& seam,
                            const ModelSpec& spec) {
  if (spec.model != variant) throw ParameterDomainError("variant does not match the model spec");
  if (spec.n_sites % 2 == 0 || spec.n_sites < 3 || spec.n_sites > kMaxInterfaceSites)
    throw ParameterDomainError("interface solver needs odd N in 3..19");
  if (!spec.is_seamed()) throw ParameterDomainError("interface solver needs the seamed couplings (J_N = -1)");
  if (variant == Model::XxzFerro || spec.epsilon == 0.0) return;
  if (ground.model != variant || ground.n_sites != spec.n_sites || ground.epsilon != spec.epsilon)
    throw ParameterDomainError("ground solution does not belong to this chain");
  if (!ground.converged) throw ParameterDomainError("ground solution did not converge");
  if (seam.n_sites != spec.n_sites) throw ParameterDomainError("seam expansion does not belong to this chain");
}

// Subsets carrying an interface amplitude: n(X) != 0 and weight within the cutoff.
std::vector<mask::Bits> enumeration_domain(Model variant, int n, int cutoff) {
  std::vector<mask::Bits> domain;
  const mask::Bits dim = mask::Bits{1} << n;
  if (variant == Model::XxzFerro) {
    const auto hops = HoppingTable::get(n);
    for (mask::Bits x = 1; x < dim; ++x) {
      if (mask::n_of(x, n) == 0) continue;
      const auto a = hops->alpha(x);
      if (a && *a <= cutoff) domain.push_back(x);
    }
  } else {
    const auto weights = WeightTable::get(n);
    for (mask::Bits x = 1; x < dim; ++x)
      if (mask::n_of(x, n) != 0 && weights->wN(x) <= cutoff) domain.push_back(x);
  }
  return domain;
}

// Antiferro source S(X). For XZ it is
//   2 sum_{Y,Z,j in I(Z)} h(Y) e(Z) [(Y+j) ^ Z = X],
// evaluated pointwise as 2 sum_j (E_j - 1) F_j with E_j - 1 = sum_Y h(Y) sigma(Y+j)
// and F_j = sum_{Z : j in I(Z)} e(Z) sigma(Z). XXZ adds
//   -2 eps sum e(Z) [Z ^ {j,j+1} = X] - 2 eps sum h(Y) e(Z) [Z ^ (Y+j) ^ {j,j+1} = X].
std::vector<double> antiferro_source(const std::vector<double>& e, const std::vector<double>& seam_values,
                                     int n, double eps, bool xxz) {
  const std::size_t dim = e.size();
  std::vector<double> acc(dim, 0.0);
  std::vector<double> part(dim);
  for (int j = 1; j <= n; ++j) {
    const mask::Bits site_j = mask::site(j);
    for (std::size_t z = 0; z < dim; ++z)
      part[z] = (mask::interface_sites(z, n) & site_j) ? e[z] : 0.0;
    walsh::transform(part);
    const mask::Bits bond = mask::pair(j, n);
    for (mask::Bits s = 0; s < dim; ++s) {
      const double hop = seam_values[mask::rotr(s, j, n)];
      if (xxz) {
        const double zz = spin_product(s, bond);
        acc[s] += 2.0 * part[s] * (hop * (1.0 - eps * zz) - eps * zz);
      } else {
        acc[s] += 2.0 * part[s] * hop;
      }
    }
  }
  return walsh::to_coefficients(std::move(acc));
}

// Ferro source S(X) = -2 eps sum_{Z, j in I(Z)} e(Z) [Z ^ {j,j+1} = X].
std::vector<double> ferro_source(const std::vector<double>& e, int n, double eps) {
  std::vector<double> s(e.size(), 0.0);
  for (mask::Bits z = 0; z < e.size(); ++z) {
    if (e[z] == 0.0) continue;
    mask::Bits sites = mask::interface_sites(z, n);
    while (sites) {
      const int j = std::countr_zero(sites) + 1;
      sites &= sites - 1;
      s[z ^ mask::pair(j, n)] += -2.0 * eps * e[z];
    }
  }
  return s;
}

}  // namespace

std::vector<double> SeamExpansion::dense() const {
  std::vector<double> out(std::size_t{1} << n_sites, 0.0);
  for (const auto& [y, value] : h) out[y.bits()] = value;
  return out;
}

double InterfaceSolution::e(const SiteSet& x) const {
  if (x.is_empty()) return 1.0;
  auto it = e_map.find(x);
  return it == e_map.end() ? 0.0 : it->second;
}

double InterfaceSolution::fourier(int s) const {
  const int period = 2 * n_sites;
  int idx = s % period;
  if (idx < 0) idx += period;
  return e_s.empty() ? 0.0 : e_s[static_cast<std::size_t>(idx)];
}

std::vector<double> InterfaceSolution::dense() const {
  std::vector<double> out(std::size_t{1} << n_sites, 0.0);
  out[0] = 1.0;
  for (const auto& [x, value] : e_map) out[x.bits()] = value;
  return out;
}

SeamExpansion compute_h(const GroundSolution& ground, const TruncationPolicy& policy) {
  SeamExpansion seam;
  seam.n_sites = ground.n_sites;
  seam.w_max = policy.w_max;
  if (ground.g.empty()) return seam;
  const int n = ground.n_sites;
  const int order = ground.n_max > 0 ? ground.n_max : policy.series_order();
  const auto h = seam_exponential(ground.dense(), n, order);
  const auto weights = WeightTable::get(n);
  for (mask::Bits y = 0; y < h.size(); ++y)
    if (h[y] != 0.0 && weights->wN(y) <= policy.w_max) seam.h.emplace(SiteSet(n, y), h[y]);
  return seam;
}

InterfaceSolution solve_interface(Model variant, const GroundSolution& ground, const SeamExpansion& seam,
                                  const ModelSpec& spec, const TruncationPolicy& policy) {
  policy.validate();
  check_interface_inputs(variant, ground, seam, spec);
  spec.check_domain(policy.norm_m);

  const int n = spec.n_sites;
  const int period = 2 * n;
  const double eps = spec.epsilon;
  InterfaceSolution sol;
  sol.variant = variant;
  sol.n_sites = n;
  sol.epsilon = eps;
  sol.cutoff = variant == Model::XxzFerro ? policy.hop_cutoff(n) : policy.w_max;
  sol.e_s.assign(static_cast<std::size_t>(period), 0.0);
  if (variant != Model::XxzFerro) sol.seam = seam;

  if (eps == 0.0) {
    sol.iterations = 1;
    sol.converged = true;
    sol.deltas.push_back(0.0);
    return sol;
  }

  const auto domain = enumeration_domain(variant, n, sol.cutoff);
  std::vector<mask::Bits> chain(static_cast<std::size_t>(period));
  for (int m = 0; m < period; ++m) chain[static_cast<std::size_t>(m)] = mask::gen_translate_empty(m, n);
  // back[i][s] = T^{-s} X for X = domain[i]
  std::vector<mask::Bits> back(domain.size() * static_cast<std::size_t>(period));
  for (std::size_t i = 0; i < domain.size(); ++i)
    for (int s = 0; s < period; ++s)
      back[i * period + s] = mask::gen_translate(domain[i], -s, n);

  std::vector<double> seam_values;
  if (variant != Model::XxzFerro) seam_values = walsh::to_values(seam.dense());

  std::vector<double> e(std::size_t{1} << n, 0.0);
  e[0] = 1.0;
  std::vector<double> es(static_cast<std::size_t>(period), 0.0);
  std::vector<double> next_e(e.size());
  double delta = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= policy.max_iter; ++it) {
    const auto source = variant == Model::XxzFerro ? ferro_source(e, n, eps)
                                                   : antiferro_source(e, seam_values, n, eps,
                                                                      variant == Model::XxzAf);
    std::vector<double> next_es(static_cast<std::size_t>(period), 0.0);
    for (int m = 1; m <= period; ++m) next_es[m % period] = source[chain[m % period]];
    const auto& es_used = policy.jacobi ? es : next_es;

    delta = 0.0;
    next_e = e;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      const mask::Bits x = domain[i];
      double bilinear = 0.0;
      for (int s = 1; s <= period; ++s) bilinear += es_used[s % period] * e[back[i * period + (s % period)]];
      const double v = (bilinear - source[x]) / (2.0 * mask::n_of(x, n));
      delta = std::max(delta, std::abs(v - e[x]));
      next_e[x] = v;
    }
    for (int m = 0; m < period; ++m) delta = std::max(delta, std::abs(next_es[m] - es[m]));
    e.swap(next_e);
    es = std::move(next_es);

    sol.deltas.push_back(delta);
    sol.iterations = it;
    if (!std::isfinite(delta) || delta > kBlowUp)
      throw DivergenceError("interface iteration blew up at step " + std::to_string(it), delta, it);
    if (delta < policy.tol) {
      sol.converged = true;
      break;
    }
  }
  if (!sol.converged)
    throw DivergenceError("interface iteration did not reach tol within max_iter", delta, sol.iterations);

  for (mask::Bits x : domain)
    if (e[x] != 0.0) sol.e_map.emplace(SiteSet(n, x), e[x]);
  sol.e_s = es;
  sol.norm_e = e_norm(sol, policy);
  return sol;
}

double e_norm(const InterfaceSolution& sol, const TruncationPolicy& policy) {
  const int n = sol.n_sites;
  const int period = 2 * n;
  bool any = false;
  for (double v : sol.e_s) any = any || v != 0.0;
  for (const auto& [x, v] : sol.e_map) any = any || v != 0.0;
  if (!any) return 0.0;
  if (sol.epsilon == 0.0) throw ParameterDomainError("norm weight (|eps| M)^-w undefined at eps = 0");

  const double base = std::abs(sol.epsilon) * policy.norm_m;
  const bool ferro = sol.variant == Model::XxzFerro;
  auto weight_of = [&](const SiteSet& x) -> int {
    if (!ferro) return weight_wN(x);
    const auto a = alpha(x);
    if (!a) throw InvariantViolationError("nonzero coefficient on unreachable set " + x.to_string());
    return *a;
  };

  double total = 0.0;
  for (int s = 1; s <= period; ++s) {
    const double v = sol.fourier(s);
    if (v == 0.0) continue;
    total += std::abs(v) * std::pow(base, -weight_of(SiteSet(n, mask::gen_translate_empty(s, n))));
  }
  for (const auto& [x, v] : sol.e_map) {
    if (v == 0.0) continue;
    total += 2.0 * std::abs(v) * std::abs(n_of(x)) * std::pow(base, -weight_of(x));
  }
  return total;
}

double residual_interface(const InterfaceSolution& sol, const GroundSolution& ground, const ModelSpec& spec) {
  const int n = spec.n_sites;
  if (n > 15) throw SizeMismatchError("interface residual needs N <= 15");
  if (sol.n_sites != n) throw SizeMismatchError("interface solution and spec differ in N");
  const double eps = spec.epsilon;
  const bool ferro = spec.model == Model::XxzFerro;
  const bool xxz = spec.model == Model::XxzAf;
  const std::size_t dim = std::size_t{1} << n;

  const auto f = walsh::to_values(sol.dense());
  std::vector<double> log_omega(dim, 0.0);
  double mean = -n, split = 0.0;
  if (!ferro && !ground.g.empty()) {
    log_omega = walsh::to_values(ground.dense());
    for (double& v : log_omega) v *= -0.5;
  }
  if (!ferro && ground.n_sites == n) {
    mean = 0.5 * (ground.e_plus + ground.e_minus);
    split = 0.5 * (ground.e_plus - ground.e_minus);
  }

  std::vector<double> r(dim, 0.0);
  for (mask::Bits s = 0; s < dim; ++s) {
    double v = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double jj = spec.couplings[static_cast<std::size_t>(j - 1)];
      const mask::Bits bond = mask::pair(j, n);
      const mask::Bits flipped = s ^ bond;
      const double zz = spin_product(s, bond);
      const double ratio = std::exp(log_omega[flipped] - log_omega[s]);
      if (ferro) {
        v += jj * (-1.0 + eps * zz) * f[flipped] - eps * zz * f[s];
      } else if (xxz) {
        v += jj * (-1.0 + eps * zz) * ratio * f[flipped] + eps * zz * f[s];
      } else {
        v += -jj * ratio * f[flipped] + eps * zz * f[s];
      }
    }
    const double parity = (mask::popcount(s) & 1) ? -1.0 : 1.0;
    r[s] = v - (2.0 + mean + split * parity) * f[s];
  }

  // subtract sum_s e_s (T^s F), with (T f)(sigma) = sigma_1 f(tau sigma)
  std::vector<double> shifted = f;
  std::vector<double> tmp(dim);
  for (int step = 1; step <= 2 * n; ++step) {
    for (mask::Bits s = 0; s < dim; ++s)
      tmp[s] = ((s & 1U) ? -1.0 : 1.0) * shifted[mask::rotr(s, 1, n)];
    shifted.swap(tmp);
    const double c = sol.fourier(step);
    if (c == 0.0) continue;
    for (std::size_t s = 0; s < dim; ++s) r[s] -= c * shifted[s];
  }

  const auto coeffs = walsh::to_coefficients(std::move(r));
  double worst = 0.0;
  for (double c : coeffs) worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace kinkchain
