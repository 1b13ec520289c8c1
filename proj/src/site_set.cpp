#include "kinkchain/site_set.hpp"

#include "kinkchain/errors.hpp"

namespace kinkchain {

SiteSet::SiteSet(int n_sites, mask::Bits bits) : n_(n_sites), bits_(bits) {
  if (n_sites < 1 || n_sites > kMaxSites)
    throw SizeMismatchError("site count " + std::to_string(n_sites) + " outside [1, 62]");
  if (bits & ~mask::full(n_sites))
    throw SizeMismatchError("bits set beyond site " + std::to_string(n_sites));
}

SiteSet SiteSet::of(int n_sites, std::initializer_list<int> sites) {
  return of(n_sites, std::vector<int>(sites));
}

SiteSet SiteSet::of(int n_sites, const std::vector<int>& sites) {
  mask::Bits b = 0;
  for (int s : sites) {
    if (s < 1 || s > n_sites)
      throw SizeMismatchError("site " + std::to_string(s) + " outside 1.." + std::to_string(n_sites));
    b |= mask::site(s);
  }
  return SiteSet(n_sites, b);
}

std::vector<int> SiteSet::sites() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::string SiteSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int i : sites()) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

std::vector<int> BondSet::bonds() const {
  std::vector<int> out;
  for (int j = 1; j <= n_; ++j)
    if (contains(j)) out.push_back(j);
  return out;
}

SiteSet sym_diff(const SiteSet& a, const SiteSet& b) {
  if (a.n_sites() != b.n_sites())
    throw SizeMismatchError("symmetric difference of sets over " + std::to_string(a.n_sites()) +
                            " and " + std::to_string(b.n_sites()) + " sites");
  return SiteSet(a.n_sites(), a.bits() ^ b.bits());
}

SiteSet translate(const SiteSet& x, int t) {
  return SiteSet(x.n_sites(), mask::rotl(x.bits(), t, x.n_sites()));
}

BondSet boundary(const SiteSet& x) {
  return BondSet(x.n_sites(), mask::boundary(x.bits(), x.n_sites()));
}

SiteSet gen_translate(const SiteSet& x, int t) {
  return SiteSet(x.n_sites(), mask::gen_translate(x.bits(), t, x.n_sites()));
}

int n_of(const SiteSet& x) { return mask::n_of(x.bits(), x.n_sites()); }

SiteSet interface_sites(const SiteSet& x) {
  return SiteSet(x.n_sites(), mask::interface_sites(x.bits(), x.n_sites()));
}

SiteSet canonical(const SiteSet& x) {
  return SiteSet(x.n_sites(), mask::canonical(x.bits(), x.n_sites()));
}

}  // namespace kinkchain
