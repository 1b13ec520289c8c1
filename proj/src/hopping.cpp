#include "kinkchain/hopping.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <unordered_map>

#include "kinkchain/errors.hpp"

namespace kinkchain {

namespace {

template <typename Visit>
void for_each_move(mask::Bits x, int n, Visit&& visit) {
  mask::Bits sites = mask::interface_sites(x, n);
  while (sites) {
    const int j = std::countr_zero(sites) + 1;
    sites &= sites - 1;
    visit(x ^ mask::pair(j, n));
  }
}

// Meet-in-the-middle search between x and the empty set, for rings too large
// for the dense table.
std::optional<int> bidirectional_distance(mask::Bits x, int n) {
  if (x == 0) return 0;
  std::unordered_map<mask::Bits, int> seen_a{{x, 0}}, seen_b{{0, 0}};
  std::vector<mask::Bits> front_a{x}, front_b{0};
  int depth_a = 0, depth_b = 0;
  while (!front_a.empty() && !front_b.empty()) {
    const bool grow_a = front_a.size() <= front_b.size();
    auto& front = grow_a ? front_a : front_b;
    auto& seen = grow_a ? seen_a : seen_b;
    auto& other = grow_a ? seen_b : seen_a;
    int& depth = grow_a ? depth_a : depth_b;
    ++depth;
    std::vector<mask::Bits> next;
    std::optional<int> best;
    for (mask::Bits s : front) {
      for_each_move(s, n, [&](mask::Bits y) {
        if (seen.contains(y)) return;
        seen.emplace(y, depth);
        if (auto it = other.find(y); it != other.end()) {
          const int d = depth + it->second;
          if (!best || d < *best) best = d;
        }
        next.push_back(y);
      });
    }
    if (best) return best;
    front = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

HoppingTable::HoppingTable(int n_sites) : n_(n_sites) {
  if (n_sites < 2 || n_sites > kMaxTableSites)
    throw SizeMismatchError("hopping table supports 2..20 sites");
  dist_.assign(std::size_t{1} << n_sites, kUnreachable);
  std::deque<mask::Bits> queue{0};
  dist_[0] = 0;
  while (!queue.empty()) {
    const mask::Bits x = queue.front();
    queue.pop_front();
    const auto d = dist_[x];
    for_each_move(x, n_sites, [&](mask::Bits y) {
      if (dist_[y] == kUnreachable) {
        dist_[y] = static_cast<std::uint8_t>(d + 1);
        queue.push_back(y);
      }
    });
  }
}

std::shared_ptr<const HoppingTable> HoppingTable::get(int n_sites) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const HoppingTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n_sites];
  if (!slot) slot = std::make_shared<const HoppingTable>(n_sites);
  return slot;
}

std::optional<int> alpha(const SiteSet& x) {
  if (x.size() % 2 != 0) return std::nullopt;
  if (x.n_sites() <= HoppingTable::kMaxTableSites)
    return HoppingTable::get(x.n_sites())->alpha(x.bits());
  return bidirectional_distance(x.bits(), x.n_sites());
}

std::optional<int> beta(int n_sites, int m) {
  return alpha(SiteSet(n_sites, mask::gen_translate_empty(m, n_sites)));
}

}  // namespace kinkchain
