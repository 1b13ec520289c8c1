#include "kinkchain/model.hpp"

#include <cmath>
#include <sstream>

#include "kinkchain/errors.hpp"
#include "kinkchain/site_set.hpp"

namespace kinkchain {

std::string to_string(Model m) {
  switch (m) {
    case Model::XzAf: return "xz-af";
    case Model::XxzAf: return "xxz-af";
    case Model::XxzFerro: return "xxz-ferro";
  }
  return "unknown";
}

Model model_from_string(std::string_view name) {
  if (name == "xz-af") return Model::XzAf;
  if (name == "xxz-af") return Model::XxzAf;
  if (name == "xxz-ferro") return Model::XxzFerro;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected xz-af, xxz-af, xxz-ferro)");
}

ModelSpec ModelSpec::uniform(Model model, int n_sites, double epsilon) {
  if (n_sites < 2 || n_sites > kMaxSites)
    throw ParameterDomainError("chain length must be in 2..62");
  return ModelSpec{model, n_sites, epsilon, std::vector<int>(static_cast<std::size_t>(n_sites), 1)};
}

ModelSpec ModelSpec::seamed(Model model, int n_sites, double epsilon) {
  auto spec = uniform(model, n_sites, epsilon);
  spec.couplings.back() = -1;
  return spec;
}

bool ModelSpec::is_uniform() const {
  if (static_cast<int>(couplings.size()) != n_sites) return false;
  for (int j : couplings)
    if (j != 1) return false;
  return true;
}

bool ModelSpec::is_seamed() const {
  if (static_cast<int>(couplings.size()) != n_sites) return false;
  for (int i = 0; i + 1 < n_sites; ++i)
    if (couplings[static_cast<std::size_t>(i)] != 1) return false;
  return couplings.back() == -1;
}

void ModelSpec::check_domain(double norm_m) const {
  if (std::abs(epsilon) * norm_m > 1.0) {
    std::ostringstream os;
    os << "|epsilon| * M = " << std::abs(epsilon) * norm_m << " exceeds 1";
    throw ParameterDomainError(os.str());
  }
}

void TruncationPolicy::validate() const {
  if (w_max < 1) throw ConfigError("w_max must be >= 1");
  if (n_max != 0 && n_max < 2) throw ConfigError("n_max must be >= 2");
  if (alpha_max < 0) throw ConfigError("alpha_max must be >= 0");
  if (!(tol > 0)) throw ConfigError("tol must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (!(norm_m > 0)) throw ConfigError("norm_m must be positive");
}

}  // namespace kinkchain
