#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kinkchain {

enum class Model { XzAf, XxzAf, XxzFerro };

[[nodiscard]] std::string to_string(Model m);
[[nodiscard]] Model model_from_string(std::string_view name);

struct ModelSpec {
  Model model = Model::XzAf;
  int n_sites = 0;
  double epsilon = 0.0;
  std::vector<int> couplings;  // J_1..J_N, bond N is <N,1>

  // All couplings +1.
  static ModelSpec uniform(Model model, int n_sites, double epsilon);
  // Seam coupling J_N = -1, the frame in which the chain carries one kink.
  static ModelSpec seamed(Model model, int n_sites, double epsilon);

  [[nodiscard]] bool is_uniform() const;
  [[nodiscard]] bool is_seamed() const;
  [[nodiscard]] bool is_antiferro() const { return model != Model::XxzFerro; }

  // Throws ParameterDomainError when |eps| * norm_m > 1.
  void check_domain(double norm_m) const;
};

struct TruncationPolicy {
  int w_max = 6;
  int n_max = 0;      // 0 selects w_max + 2
  int alpha_max = 0;  // 0 selects N - 1 (ferro enumeration)
  double tol = 1e-13;
  int max_iter = 500;
  double norm_m = 10.0;
  bool jacobi = false;  // interface solver: plain Jacobi instead of e_m-first sweeps

  [[nodiscard]] int series_order() const { return n_max > 0 ? n_max : w_max + 2; }
  [[nodiscard]] int hop_cutoff(int n_sites) const { return alpha_max > 0 ? alpha_max : n_sites - 1; }

  // Throws ConfigError on w_max < 1, n_max in {1}, tol <= 0, max_iter < 1, norm_m <= 0.
  void validate() const;
};

}  // namespace kinkchain
