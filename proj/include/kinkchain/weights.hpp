#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "kinkchain/site_set.hpp"

namespace kinkchain {

// Size of the smallest connected bond cover of x (bonds are connected when
// they share a site or sit one site apart). On a ring this is
// max(1, ceil(L/2)) with L the shortest cyclic arc holding x; w(empty) = 0.
[[nodiscard]] int weight_w(const SiteSet& x);

// Same, with the cover required to touch the seam bond <N,1>. w_N(empty) = 1.
[[nodiscard]] int weight_wN(const SiteSet& x);

namespace mask {
[[nodiscard]] int weight_w(Bits x, int n) noexcept;
[[nodiscard]] int weight_wN(Bits x, int n) noexcept;
}  // namespace mask

// Dense w and w_N for every subset of an n-site ring. Built once, read-only.
class WeightTable {
 public:
  explicit WeightTable(int n_sites);

  [[nodiscard]] int n_sites() const noexcept { return n_; }
  [[nodiscard]] int w(mask::Bits x) const noexcept { return w_[x]; }
  [[nodiscard]] int wN(mask::Bits x) const noexcept { return wN_[x]; }

  // Shared instance per n (n <= 24).
  static std::shared_ptr<const WeightTable> get(int n_sites);

 private:
  int n_;
  std::vector<std::uint8_t> w_;
  std::vector<std::uint8_t> wN_;
};

}  // namespace kinkchain
