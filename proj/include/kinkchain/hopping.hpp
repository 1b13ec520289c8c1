#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "kinkchain/site_set.hpp"

namespace kinkchain {

// Distances under the kink hopping moves x -> x ^ {j, j+1}, j in I(x).
// std::nullopt stands for an unreachable target (infinite distance).
[[nodiscard]] std::optional<int> alpha(const SiteSet& x);

// alpha(T^m empty); m is taken mod 2N.
[[nodiscard]] std::optional<int> beta(int n_sites, int m);

// Full BFS table from the empty set, built once per n and shared.
class HoppingTable {
 public:
  static constexpr std::uint8_t kUnreachable = 0xff;
  static constexpr int kMaxTableSites = 20;

  explicit HoppingTable(int n_sites);

  [[nodiscard]] int n_sites() const noexcept { return n_; }
  [[nodiscard]] std::optional<int> alpha(mask::Bits x) const noexcept {
    const auto d = dist_[x];
    return d == kUnreachable ? std::nullopt : std::optional<int>(d);
  }

  static std::shared_ptr<const HoppingTable> get(int n_sites);

 private:
  int n_;
  std::vector<std::uint8_t> dist_;
};

}  // namespace kinkchain
