#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "kinkchain/dispersion.hpp"
#include "kinkchain/ground.hpp"
#include "kinkchain/interface.hpp"
#include "kinkchain/model.hpp"

namespace kinkchain {

// Basis state index s: bit i-1 set <=> spin i points down (sigma^z_i = -1).
struct OperatorMatrix {
  int n_sites = 0;
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;

  [[nodiscard]] Eigen::MatrixXd dense() const;
  [[nodiscard]] Eigen::Index dim() const { return matrix.rows(); }
};

enum class Frame { Original, Rotated, RotatedSublattice };

[[nodiscard]] std::string to_string(Frame f);

// Frame in which the kink solvers work: sublattice-rotated for the
// antiferromagnets, rotated for the ferromagnet.
[[nodiscard]] Frame interface_frame(Model model);

[[nodiscard]] OperatorMatrix build_hamiltonian(const ModelSpec& spec, Frame frame);

// Product of single-site rotations R = [[1,1],[-1,1]]/sqrt(2).
[[nodiscard]] OperatorMatrix rotation_operator(int n_sites);
// Sign flip of sigma^x and sigma^y on odd sites (diagonal in the rotated basis).
[[nodiscard]] OperatorMatrix sublattice_operator(int n_sites);

struct Symmetries {
  OperatorMatrix t;
  OperatorMatrix p;
  bool generalized = false;  // T = sigma^z_1 . shift, else the plain shift
};

// T is generalized for the seamed chain and the plain shift for the uniform
// one. Throws SymmetryViolationError if T or P fails to commute with the
// frame Hamiltonian or the power identities break.
[[nodiscard]] Symmetries build_symmetries(const ModelSpec& spec);

[[nodiscard]] double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b);

struct SectorSpectrum {
  int k_index = 0;
  int parity = 1;
  double lowest_energy = 0.0;
  double second_energy = 0.0;  // NaN when the sector holds fewer than two states
  int sector_dimension = 0;
};

// One entry per (k_index, parity) pair with a nonempty sector, plus empty
// k sectors recorded with dimension 0 and NaN energies.
[[nodiscard]] std::vector<SectorSpectrum> sector_spectra(const OperatorMatrix& h, const OperatorMatrix& t);

[[nodiscard]] std::pair<double, double> parity_energies(const OperatorMatrix& h_uniform, const OperatorMatrix& p);

// D(k) from exact sector energies of the seamed chain and parity energies of
// the uniform chain of the same model, N and eps.
[[nodiscard]] DispersionSeries oracle_dispersion(const ModelSpec& spec);

struct WavefunctionCheck {
  double residual = 0.0;
  double rayleigh_energy = 0.0;
};

[[nodiscard]] WavefunctionCheck wavefunction_residual(const GroundSolution& ground, const InterfaceSolution& sol,
                                                      int k_index, const ModelSpec& spec);

struct LanczosResult {
  double lowest = 0.0;
  double second = 0.0;
  int steps = 0;
  bool converged = false;
};

// Two lowest eigenvalues of a Hermitian matrix by Lanczos with full
// reorthogonalisation. A degenerate lowest level is reported once.
[[nodiscard]] LanczosResult lanczos_lowest(const Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>& a,
                                           double tol = 1e-10, int max_steps = 600);

}  // namespace kinkchain
