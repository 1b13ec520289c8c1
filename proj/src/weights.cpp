#include "kinkchain/weights.hpp"

#include <map>
#include <mutex>

#include "kinkchain/errors.hpp"

namespace kinkchain {

namespace mask {

int weight_w(Bits x, int n) noexcept {
  if (x == 0) return 0;
  // Longest cyclic run of absent sites.
  int longest = 0;
  int run = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < n; ++i) {
      if ((x >> i) & 1U) {
        run = 0;
      } else if (++run > longest) {
        longest = run;
      }
    }
  }
  if (longest > n) longest = n;
  const int arc = n - longest;
  return arc <= 2 ? 1 : (arc + 1) / 2;
}

int weight_wN(Bits x, int n) noexcept {
  const int a = weight_w(x | site(n), n);
  const int b = weight_w(x | site(1), n);
  return a < b ? a : b;
}

}  // namespace mask

int weight_w(const SiteSet& x) { return mask::weight_w(x.bits(), x.n_sites()); }

int weight_wN(const SiteSet& x) { return mask::weight_wN(x.bits(), x.n_sites()); }

WeightTable::WeightTable(int n_sites) : n_(n_sites) {
  if (n_sites < 1 || n_sites > 24)
    throw SizeMismatchError("weight table supports 1..24 sites");
  const std::size_t dim = std::size_t{1} << n_sites;
  w_.resize(dim);
  wN_.resize(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    w_[x] = static_cast<std::uint8_t>(mask::weight_w(x, n_sites));
    wN_[x] = static_cast<std::uint8_t>(mask::weight_wN(x, n_sites));
  }
}

std::shared_ptr<const WeightTable> WeightTable::get(int n_sites) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const WeightTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n_sites];
  if (!slot) slot = std::make_shared<const WeightTable>(n_sites);
  return slot;
}

}  // namespace kinkchain
