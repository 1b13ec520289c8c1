#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace kinkchain {

inline constexpr int kMaxSites = 62;

// Raw bit-mask helpers. Site i (1-based) lives in bit i-1, bond <j,j+1> in
// bit j-1, bond N is the seam <N,1>.
namespace mask {

using Bits = std::uint64_t;

[[nodiscard]] constexpr Bits full(int n) noexcept { return (Bits{1} << n) - 1; }
[[nodiscard]] constexpr Bits site(int i) noexcept { return Bits{1} << (i - 1); }
[[nodiscard]] constexpr int popcount(Bits x) noexcept { return std::popcount(x); }

// x + t: every site i moves to i + t (mod n).
[[nodiscard]] constexpr Bits rotl(Bits x, int t, int n) noexcept {
  t %= n;
  if (t < 0) t += n;
  if (t == 0) return x;
  return ((x << t) | (x >> (n - t))) & full(n);
}

[[nodiscard]] constexpr Bits rotr(Bits x, int t, int n) noexcept { return rotl(x, -t, n); }

// Bond j in the result iff exactly one of j, j+1 is in x.
[[nodiscard]] constexpr Bits boundary(Bits x, int n) noexcept { return x ^ rotr(x, 1, n); }

[[nodiscard]] constexpr Bits interface_sites(Bits x, int n) noexcept {
  return boundary(x, n) ^ site(n);
}

[[nodiscard]] constexpr int n_of(Bits x, int n) noexcept {
  const Bits b = boundary(x, n);
  return popcount(b) - ((b & site(n)) ? 2 : 0);
}

// {j, j+1} with the periodic wrap for j = n.
[[nodiscard]] constexpr Bits pair(int j, int n) noexcept {
  return site(j) | site(j == n ? 1 : j + 1);
}

// T^t of the empty set for t in [0, 2n).
[[nodiscard]] constexpr Bits gen_translate_empty(int t, int n) noexcept {
  t %= 2 * n;
  if (t < 0) t += 2 * n;
  if (t <= n) return full(t);
  return full(n) & ~full(t - n);
}

// T^t x = (x + t) xor T^t(empty).
[[nodiscard]] constexpr Bits gen_translate(Bits x, int t, int n) noexcept {
  return rotl(x, t, n) ^ gen_translate_empty(t, n);
}

// Smallest rotation of x, used as the translation-class representative.
[[nodiscard]] constexpr Bits canonical(Bits x, int n) noexcept {
  Bits best = x;
  for (int t = 1; t < n; ++t) {
    const Bits r = rotl(x, t, n);
    if (r < best) best = r;
  }
  return best;
}

}  // namespace mask

class SiteSet {
 public:
  SiteSet() = default;
  explicit SiteSet(int n_sites, mask::Bits bits = 0);

  static SiteSet empty(int n_sites) { return SiteSet(n_sites); }
  static SiteSet full(int n_sites) { return SiteSet(n_sites, mask::full(n_sites)); }
  static SiteSet of(int n_sites, std::initializer_list<int> sites);
  static SiteSet of(int n_sites, const std::vector<int>& sites);

  [[nodiscard]] int n_sites() const noexcept { return n_; }
  [[nodiscard]] mask::Bits bits() const noexcept { return bits_; }
  [[nodiscard]] bool contains(int site) const noexcept { return (bits_ >> (site - 1)) & 1U; }
  [[nodiscard]] int size() const noexcept { return mask::popcount(bits_); }
  [[nodiscard]] bool is_empty() const noexcept { return bits_ == 0; }
  [[nodiscard]] std::vector<int> sites() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const SiteSet&, const SiteSet&) = default;
  friend std::strong_ordering operator<=>(const SiteSet& a, const SiteSet& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  int n_ = 0;
  mask::Bits bits_ = 0;
};

class BondSet {
 public:
  BondSet() = default;
  BondSet(int n_sites, mask::Bits bits) : n_(n_sites), bits_(bits) {}

  [[nodiscard]] int n_sites() const noexcept { return n_; }
  [[nodiscard]] mask::Bits bits() const noexcept { return bits_; }
  [[nodiscard]] bool contains(int bond) const noexcept { return (bits_ >> (bond - 1)) & 1U; }
  [[nodiscard]] int size() const noexcept { return mask::popcount(bits_); }
  [[nodiscard]] std::vector<int> bonds() const;

  friend bool operator==(const BondSet&, const BondSet&) = default;

 private:
  int n_ = 0;
  mask::Bits bits_ = 0;
};

[[nodiscard]] SiteSet sym_diff(const SiteSet& a, const SiteSet& b);
[[nodiscard]] SiteSet translate(const SiteSet& x, int t);
[[nodiscard]] BondSet boundary(const SiteSet& x);
[[nodiscard]] SiteSet gen_translate(const SiteSet& x, int t);
[[nodiscard]] int n_of(const SiteSet& x);
[[nodiscard]] SiteSet interface_sites(const SiteSet& x);
[[nodiscard]] SiteSet canonical(const SiteSet& x);

}  // namespace kinkchain
