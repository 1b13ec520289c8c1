#include "kinkchain/ed.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "kinkchain/errors.hpp"
#include "kinkchain/site_set.hpp"
#include "kinkchain/walsh.hpp"

namespace kinkchain {

namespace {

using Complex = std::complex<double>;
using SparseC = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

constexpr int kMaxEdSites = 20;
constexpr int kDenseSectorLimit = 4096;
constexpr double kSymmetryTol = 1e-12;

// One Pauli letter per site: 'I', 'X', 'Y', 'Z'.
struct PauliTerm {
  double coeff;
  std::string ops;
};

PauliTerm bond_term(int n, int j, double coeff, char a, char b) {
  PauliTerm t{coeff, std::string(static_cast<std::size_t>(n), 'I')};
  t.ops[static_cast<std::size_t>(j - 1)] = a;
  t.ops[static_cast<std::size_t>(j == n ? 0 : j)] = b;
  return t;
}

// Rotation about Y: X -> Z, Z -> -X, Y -> Y.
void rotate(std::vector<PauliTerm>& terms) {
  for (auto& t : terms)
    for (char& c : t.ops) {
      if (c == 'X') {
        c = 'Z';
      } else if (c == 'Z') {
        c = 'X';
        t.coeff = -t.coeff;
      }
    }
}

std::vector<PauliTerm> original_terms(const ModelSpec& spec) {
  const int n = spec.n_sites;
  const double eps = spec.epsilon;
  std::vector<PauliTerm> terms;
  for (int j = 1; j <= n; ++j) {
    const double jj = spec.couplings[static_cast<std::size_t>(j - 1)];
    switch (spec.model) {
      case Model::XzAf:
        terms.push_back(bond_term(n, j, 1.0, 'Z', 'Z'));
        terms.push_back(bond_term(n, j, eps, 'X', 'X'));
        break;
      case Model::XxzAf:
        terms.push_back(bond_term(n, j, 1.0, 'Z', 'Z'));
        terms.push_back(bond_term(n, j, eps, 'X', 'X'));
        terms.push_back(bond_term(n, j, eps, 'Y', 'Y'));
        break;
      case Model::XxzFerro:
        terms.push_back(bond_term(n, j, -jj, 'Z', 'Z'));
        terms.push_back(bond_term(n, j, -eps, 'X', 'X'));
        terms.push_back(bond_term(n, j, -eps * jj, 'Y', 'Y'));
        break;
    }
  }
  return terms;
}

std::vector<PauliTerm> sublattice_frame_terms(const ModelSpec& spec) {
  const int n = spec.n_sites;
  const double eps = spec.epsilon;
  std::vector<PauliTerm> terms;
  for (int j = 1; j <= n; ++j) {
    const double jj = spec.couplings[static_cast<std::size_t>(j - 1)];
    terms.push_back(bond_term(n, j, -jj, 'X', 'X'));
    terms.push_back(bond_term(n, j, eps, 'Z', 'Z'));
    if (spec.model == Model::XxzAf) terms.push_back(bond_term(n, j, -eps * jj, 'Y', 'Y'));
  }
  return terms;
}

OperatorMatrix assemble(int n, const std::vector<PauliTerm>& terms) {
  const mask::Bits dim = mask::Bits{1} << n;
  std::map<std::pair<mask::Bits, mask::Bits>, Complex> entries;
  for (const auto& t : terms) {
    mask::Bits xm = 0, zm = 0;
    int ys = 0;
    for (int i = 0; i < n; ++i) {
      const char c = t.ops[static_cast<std::size_t>(i)];
      if (c == 'X' || c == 'Y') xm |= mask::Bits{1} << i;
      if (c == 'Z' || c == 'Y') zm |= mask::Bits{1} << i;
      if (c == 'Y') ++ys;
    }
    static const Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex phase = kPhase[ys % 4] * t.coeff;
    for (mask::Bits s = 0; s < dim; ++s) {
      const double sign = (mask::popcount(zm & s) & 1) ? -1.0 : 1.0;
      entries[{s ^ xm, s}] += sign * phase;
    }
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& [rc, v] : entries) {
    if (std::abs(v.imag()) > 1e-12) throw InvariantViolationError("Hamiltonian has imaginary matrix elements");
    if (v.real() != 0.0)
      trips.emplace_back(static_cast<int>(rc.first), static_cast<int>(rc.second), v.real());
  }
  OperatorMatrix out;
  out.n_sites = n;
  out.matrix.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  out.matrix.setFromTriplets(trips.begin(), trips.end());
  return out;
}

std::vector<int> sublattice_image_couplings(int n) {
  std::vector<int> j(static_cast<std::size_t>(n), 1);
  if (n % 2 == 1) j.back() = -1;
  return j;
}

void check_spec(const ModelSpec& spec) {
  if (spec.n_sites < 2 || spec.n_sites > kMaxEdSites) throw SizeMismatchError("exact diagonalization supports 2..20 sites");
  if (static_cast<int>(spec.couplings.size()) != spec.n_sites) throw SizeMismatchError("coupling list length differs from N");
}

OperatorMatrix shift_operator(int n, bool generalized) {
  const mask::Bits dim = mask::Bits{1} << n;
  std::vector<Eigen::Triplet<double>> trips;
  for (mask::Bits s = 0; s < dim; ++s) {
    const double sign = generalized && (s & 1U) ? -1.0 : 1.0;
    trips.emplace_back(static_cast<int>(s), static_cast<int>(mask::rotr(s, 1, n)), sign);
  }
  OperatorMatrix out;
  out.n_sites = n;
  out.matrix.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  out.matrix.setFromTriplets(trips.begin(), trips.end());
  return out;
}

OperatorMatrix parity_operator(int n) {
  const mask::Bits dim = mask::Bits{1} << n;
  std::vector<Eigen::Triplet<double>> trips;
  for (mask::Bits s = 0; s < dim; ++s)
    trips.emplace_back(static_cast<int>(s), static_cast<int>(s), (mask::popcount(s) & 1) ? -1.0 : 1.0);
  OperatorMatrix out;
  out.n_sites = n;
  out.matrix.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  out.matrix.setFromTriplets(trips.begin(), trips.end());
  return out;
}

double max_abs(const Eigen::SparseMatrix<double, Eigen::RowMajor>& m) {
  double best = 0.0;
  for (Eigen::Index r = 0; r < m.outerSize(); ++r)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(m, r); it; ++it)
      best = std::max(best, std::abs(it.value()));
  return best;
}

double distance_to(const Eigen::SparseMatrix<double, Eigen::RowMajor>& a,
                   const Eigen::SparseMatrix<double, Eigen::RowMajor>& b) {
  Eigen::SparseMatrix<double, Eigen::RowMajor> d = a - b;
  return max_abs(d);
}

Eigen::SparseMatrix<double, Eigen::RowMajor> power(const Eigen::SparseMatrix<double, Eigen::RowMajor>& m, int k) {
  Eigen::SparseMatrix<double, Eigen::RowMajor> out(m.rows(), m.cols());
  out.setIdentity();
  for (int i = 0; i < k; ++i) out = (out * m).pruned();
  return out;
}

// T as a signed permutation: T|c> = sign[c] |target[c]>.
struct SignedPermutation {
  std::vector<Eigen::Index> target;
  std::vector<double> sign;
};

SignedPermutation as_signed_permutation(const OperatorMatrix& t) {
  const Eigen::Index dim = t.dim();
  SignedPermutation p{std::vector<Eigen::Index>(static_cast<std::size_t>(dim), -1),
                      std::vector<double>(static_cast<std::size_t>(dim), 0.0)};
  for (Eigen::Index r = 0; r < t.matrix.outerSize(); ++r)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(t.matrix, r); it; ++it) {
      if (it.value() == 0.0) continue;
      const auto c = static_cast<std::size_t>(it.col());
      if (p.target[c] != -1 || std::abs(std::abs(it.value()) - 1.0) > 1e-12)
        throw SymmetryViolationError("translation operator is not a signed permutation");
      p.target[c] = r;
      p.sign[c] = it.value();
    }
  for (auto tgt : p.target)
    if (tgt < 0) throw SymmetryViolationError("translation operator is not a signed permutation");
  return p;
}

struct Orbit {
  Eigen::Index rep;
  int length;
  double closing_sign;
  int parity;
};

struct OrbitTable {
  std::vector<Orbit> orbits;
  std::vector<int> orbit_of;
  std::vector<int> position;
  std::vector<double> sign;  // T^position |rep> = sign |state>
};

OrbitTable build_orbits(const SignedPermutation& perm, const std::vector<int>& parity) {
  const std::size_t dim = perm.target.size();
  OrbitTable tab;
  tab.orbit_of.assign(dim, -1);
  tab.position.assign(dim, 0);
  tab.sign.assign(dim, 0.0);
  for (std::size_t b = 0; b < dim; ++b) {
    if (tab.orbit_of[b] != -1) continue;
    const int id = static_cast<int>(tab.orbits.size());
    std::size_t cur = b;
    double s = 1.0;
    int l = 0;
    do {
      tab.orbit_of[cur] = id;
      tab.position[cur] = l;
      tab.sign[cur] = s;
      s *= perm.sign[cur];
      cur = static_cast<std::size_t>(perm.target[cur]);
      ++l;
    } while (cur != b);
    tab.orbits.push_back({static_cast<Eigen::Index>(b), l, s, parity[b]});
  }
  return tab;
}

std::pair<double, double> lowest_two(const SparseC& hk) {
  const Eigen::Index d = hk.rows();
  if (d <= kDenseSectorLimit) {
    Eigen::MatrixXcd dense(hk);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return {ev(0), d > 1 ? ev(1) : std::numeric_limits<double>::quiet_NaN()};
  }
  const auto res = lanczos_lowest(hk);
  return {res.lowest, res.second};
}

std::vector<int> basis_parity(const OperatorMatrix& p) {
  std::vector<int> parity(static_cast<std::size_t>(p.dim()), 1);
  for (Eigen::Index r = 0; r < p.matrix.outerSize(); ++r)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(p.matrix, r); it; ++it)
      if (it.col() == r) parity[static_cast<std::size_t>(r)] = it.value() < 0 ? -1 : 1;
  return parity;
}

}  // namespace

Eigen::MatrixXd OperatorMatrix::dense() const { return Eigen::MatrixXd(matrix); }

std::string to_string(Frame f) {
  switch (f) {
    case Frame::Original: return "original";
    case Frame::Rotated: return "rotated";
    case Frame::RotatedSublattice: return "rotated-sublattice";
  }
  return "unknown";
}

Frame interface_frame(Model model) { return model == Model::XxzFerro ? Frame::Rotated : Frame::RotatedSublattice; }

OperatorMatrix build_hamiltonian(const ModelSpec& spec, Frame frame) {
  check_spec(spec);
  const int n = spec.n_sites;
  if (spec.model == Model::XxzFerro) {
    if (frame == Frame::RotatedSublattice)
      throw InvalidFrameError("the sublattice frame applies to the antiferromagnets only");
    auto terms = original_terms(spec);
    if (frame == Frame::Rotated) rotate(terms);
    return assemble(n, terms);
  }
  if (frame == Frame::RotatedSublattice) return assemble(n, sublattice_frame_terms(spec));
  // The antiferromagnet in its original frame is the uniform periodic chain,
  // whose sublattice image carries J_N = -1 exactly when N is odd.
  if (spec.couplings != sublattice_image_couplings(n))
    throw InvalidFrameError("couplings have no antiferromagnetic preimage in the " + to_string(frame) + " frame");
  auto terms = original_terms(spec);
  if (frame == Frame::Rotated) rotate(terms);
  return assemble(n, terms);
}

OperatorMatrix rotation_operator(int n_sites) {
  if (n_sites < 1 || n_sites > 14) throw SizeMismatchError("rotation operator supports 1..14 sites");
  Eigen::MatrixXd r1(2, 2);
  // basis order: up (bit 0), down (bit 1); R sigma^x R^T = sigma^z
  r1 << 1, 1, -1, 1;
  r1 /= std::numbers::sqrt2;
  const mask::Bits dim = mask::Bits{1} << n_sites;
  std::vector<Eigen::Triplet<double>> trips;
  for (mask::Bits a = 0; a < dim; ++a)
    for (mask::Bits b = 0; b < dim; ++b) {
      double v = 1.0;
      for (int i = 0; i < n_sites; ++i) v *= r1((a >> i) & 1U, (b >> i) & 1U);
      trips.emplace_back(static_cast<int>(a), static_cast<int>(b), v);
    }
  OperatorMatrix out;
  out.n_sites = n_sites;
  out.matrix.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  out.matrix.setFromTriplets(trips.begin(), trips.end());
  return out;
}

OperatorMatrix sublattice_operator(int n_sites) {
  // Product of sigma^z over odd sites, which flips sigma^x and sigma^y there.
  const mask::Bits dim = mask::Bits{1} << n_sites;
  mask::Bits odd = 0;
  for (int i = 1; i <= n_sites; i += 2) odd |= mask::site(i);
  std::vector<Eigen::Triplet<double>> trips;
  for (mask::Bits s = 0; s < dim; ++s)
    trips.emplace_back(static_cast<int>(s), static_cast<int>(s), (mask::popcount(s & odd) & 1) ? -1.0 : 1.0);
  OperatorMatrix out;
  out.n_sites = n_sites;
  out.matrix.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  out.matrix.setFromTriplets(trips.begin(), trips.end());
  return out;
}

double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b) {
  Eigen::SparseMatrix<double, Eigen::RowMajor> ab = a.matrix * b.matrix;
  Eigen::SparseMatrix<double, Eigen::RowMajor> ba = b.matrix * a.matrix;
  return distance_to(ab, ba);
}

Symmetries build_symmetries(const ModelSpec& spec) {
  check_spec(spec);
  const int n = spec.n_sites;
  Symmetries sym;
  sym.generalized = spec.is_seamed();
  sym.t = shift_operator(n, sym.generalized);
  sym.p = parity_operator(n);
  const auto h = build_hamiltonian(spec, interface_frame(spec.model));
  if (commutator_norm(h, sym.t) > kSymmetryTol) throw SymmetryViolationError("[H, T] does not vanish");
  if (commutator_norm(h, sym.p) > kSymmetryTol) throw SymmetryViolationError("[H, P] does not vanish");
  const auto tn = power(sym.t.matrix, n);
  Eigen::SparseMatrix<double, Eigen::RowMajor> id(tn.rows(), tn.cols());
  id.setIdentity();
  if (sym.generalized && distance_to(tn, sym.p.matrix) > 0.0) throw SymmetryViolationError("T^N differs from P");
  const auto t2n = (tn * tn).pruned();
  if (distance_to(t2n, id) > 0.0) throw SymmetryViolationError("T^2N differs from the identity");
  return sym;
}

std::vector<SectorSpectrum> sector_spectra(const OperatorMatrix& h, const OperatorMatrix& t) {
  const int n = h.n_sites;
  if (commutator_norm(h, t) > 1e-10) throw SymmetryViolationError("sector_spectra needs [H, T] = 0");
  const auto perm = as_signed_permutation(t);
  const auto tab = build_orbits(perm, basis_parity(parity_operator(n)));
  const int period = 2 * n;

  std::vector<SectorSpectrum> out;
  for (int j = 0; j < period; ++j) {
    const double k = std::numbers::pi * j / n;
    bool any = false;
    for (int parity : {1, -1}) {
      // orbits admitted by the phase condition e^{ikL} c = 1
      std::vector<int> local(tab.orbits.size(), -1);
      std::vector<int> members;
      for (std::size_t o = 0; o < tab.orbits.size(); ++o) {
        const auto& orb = tab.orbits[o];
        if (orb.parity != parity) continue;
        if (std::abs(std::polar(1.0, k * orb.length) * orb.closing_sign - 1.0) > 1e-9) continue;
        local[o] = static_cast<int>(members.size());
        members.push_back(static_cast<int>(o));
      }
      if (members.empty()) continue;
      any = true;
      const auto d = static_cast<Eigen::Index>(members.size());
      std::vector<Eigen::Triplet<Complex>> trips;
      for (Eigen::Index b = 0; b < d; ++b) {
        const auto& ob = tab.orbits[static_cast<std::size_t>(members[static_cast<std::size_t>(b)])];
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(h.matrix, ob.rep); it; ++it) {
          const auto sigma = static_cast<std::size_t>(it.col());
          const int a = local[static_cast<std::size_t>(tab.orbit_of[sigma])];
          if (a < 0) continue;
          const auto& oa = tab.orbits[static_cast<std::size_t>(tab.orbit_of[sigma])];
          const Complex amp = tab.sign[sigma] * std::polar(1.0, -k * tab.position[sigma]);
          trips.emplace_back(a, static_cast<int>(b),
                             std::sqrt(static_cast<double>(ob.length) / oa.length) * amp * it.value());
        }
      }
      SparseC hk(d, d);
      hk.setFromTriplets(trips.begin(), trips.end());
      const auto [lo, second] = lowest_two(hk);
      out.push_back({j, parity, lo, second, static_cast<int>(d)});
    }
    if (!any)
      out.push_back({j, (j % 2 == 0) ? 1 : -1, std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN(), 0});
  }
  return out;
}

std::pair<double, double> parity_energies(const OperatorMatrix& h_uniform, const OperatorMatrix& p) {
  const int n = h_uniform.n_sites;
  const auto shift = shift_operator(n, false);
  double e_plus = std::numeric_limits<double>::infinity();
  double e_minus = e_plus;
  if (commutator_norm(h_uniform, shift) <= kSymmetryTol && commutator_norm(p, shift) <= kSymmetryTol) {
    for (const auto& sec : sector_spectra(h_uniform, shift)) {
      if (sec.sector_dimension == 0) continue;
      auto& slot = sec.parity > 0 ? e_plus : e_minus;
      slot = std::min(slot, sec.lowest_energy);
    }
    return {e_plus, e_minus};
  }
  const auto parity = basis_parity(p);
  for (int sector : {1, -1}) {
    std::vector<int> index(parity.size(), -1);
    int d = 0;
    for (std::size_t s = 0; s < parity.size(); ++s)
      if (parity[s] == sector) index[s] = d++;
    std::vector<Eigen::Triplet<Complex>> trips;
    for (Eigen::Index r = 0; r < h_uniform.matrix.outerSize(); ++r) {
      if (index[static_cast<std::size_t>(r)] < 0) continue;
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(h_uniform.matrix, r); it; ++it)
        if (index[static_cast<std::size_t>(it.col())] >= 0)
          trips.emplace_back(index[static_cast<std::size_t>(r)], index[static_cast<std::size_t>(it.col())],
                             it.value());
    }
    SparseC hs(d, d);
    hs.setFromTriplets(trips.begin(), trips.end());
    (sector > 0 ? e_plus : e_minus) = lowest_two(hs).first;
  }
  return {e_plus, e_minus};
}

DispersionSeries oracle_dispersion(const ModelSpec& spec) {
  const int n = spec.n_sites;
  if (n % 2 == 0 || n < 3 || n > 13) throw ParameterDomainError("oracle dispersion needs odd N in 3..13");
  const auto seamed = ModelSpec::seamed(spec.model, n, spec.epsilon);
  const auto uniform = ModelSpec::uniform(spec.model, n, spec.epsilon);
  const auto sym = build_symmetries(seamed);
  const auto h_kink = build_hamiltonian(seamed, interface_frame(spec.model));
  const auto h_flat = build_hamiltonian(uniform, interface_frame(spec.model));
  const auto [e_plus, e_minus] = parity_energies(h_flat, sym.p);

  std::vector<double> excited(static_cast<std::size_t>(2 * n), std::numeric_limits<double>::quiet_NaN());
  for (const auto& sec : sector_spectra(h_kink, sym.t)) {
    if (sec.sector_dimension == 0) continue;
    auto& slot = excited[static_cast<std::size_t>(sec.k_index)];
    if (std::isnan(slot) || sec.lowest_energy < slot) slot = sec.lowest_energy;
  }
  std::vector<std::pair<double, double>> samples;
  for (int j = 0; j < 2 * n; ++j)
    samples.emplace_back(grid_k(n, j), excited[static_cast<std::size_t>(j)] - (j % 2 == 0 ? e_plus : e_minus));
  auto series = fourier_extract(samples, SeriesSource::Ed);
  series.e_plus = e_plus;
  series.e_minus = e_minus;
  return series;
}

WavefunctionCheck wavefunction_residual(const GroundSolution& ground, const InterfaceSolution& sol, int k_index,
                                        const ModelSpec& spec) {
  const int n = spec.n_sites;
  if (n % 2 == 0 || n > 13) throw ParameterDomainError("wavefunction check needs odd N <= 13");
  if (sol.n_sites != n) throw SizeMismatchError("interface solution and spec differ in N");
  const auto seamed = ModelSpec::seamed(spec.model, n, spec.epsilon);
  const auto sym = build_symmetries(seamed);
  const auto h = build_hamiltonian(seamed, interface_frame(spec.model));
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  const double k = std::numbers::pi * k_index / n;

  const auto f_values = walsh::to_values(sol.dense());
  Eigen::VectorXd omega = Eigen::VectorXd::Ones(dim);
  if (spec.model != Model::XxzFerro && !ground.g.empty()) {
    const auto gv = walsh::to_values(ground.dense());
    for (Eigen::Index s = 0; s < dim; ++s) omega(s) = std::exp(-0.5 * gv[static_cast<std::size_t>(s)]);
  }

  Eigen::VectorXcd shifted(dim);
  for (Eigen::Index s = 0; s < dim; ++s) shifted(s) = f_values[static_cast<std::size_t>(s)];
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  const Eigen::SparseMatrix<Complex, Eigen::RowMajor> t = sym.t.matrix.cast<Complex>();
  for (int l = 1; l <= 2 * n; ++l) {
    shifted = t * shifted;
    psi += std::polar(1.0, k * l) * shifted;
  }
  psi = psi.cwiseProduct(omega.cast<Complex>());

  const double norm = psi.norm();
  if (norm < 1e-12) throw DegenerateMomentumError("reconstructed state vanishes at k index " + std::to_string(k_index));
  const Eigen::VectorXcd t_psi = t * psi;
  if ((t_psi - std::polar(1.0, -k) * psi).norm() > 1e-9 * norm)
    throw SymmetryViolationError("reconstructed state is not a T eigenvector");

  const Eigen::SparseMatrix<Complex, Eigen::RowMajor> hc = h.matrix.cast<Complex>();
  const Eigen::VectorXcd h_psi = hc * psi;
  const double lambda = psi.dot(h_psi).real() / (norm * norm);
  return {(h_psi - lambda * psi).norm() / norm, lambda};
}

}  // namespace kinkchain
