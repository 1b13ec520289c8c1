#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <random>

#include "kinkchain/ed.hpp"

namespace kinkchain {

LanczosResult lanczos_lowest(const Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>& a, double tol,
                             int max_steps) {
  using Vec = Eigen::VectorXcd;
  const Eigen::Index n = a.rows();
  LanczosResult out;
  if (n == 0) return out;

  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> normal;
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = {normal(rng), normal(rng)};
  v.normalize();

  const int limit = static_cast<int>(std::min<Eigen::Index>(n, max_steps));
  std::vector<Vec> basis;
  std::vector<double> alphas, betas;
  double prev_low = std::numeric_limits<double>::infinity();
  double prev_second = std::numeric_limits<double>::infinity();

  for (int step = 0; step < limit; ++step) {
    basis.push_back(v);
    Vec w = a * v;
    const double alpha = w.dot(v).real();  // Eigen's dot conjugates the first argument
    alphas.push_back(alpha);
    w -= alpha * v;
    if (step > 0) w -= betas.back() * basis[basis.size() - 2];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) w -= q.dot(w) * q;
    const double beta = w.norm();

    const int m = static_cast<int>(alphas.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alphas[static_cast<std::size_t>(i)];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = betas[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const auto& ev = es.eigenvalues();
    const double low = ev(0);
    const double second = m > 1 ? ev(1) : std::numeric_limits<double>::quiet_NaN();
    out.lowest = low;
    out.second = second;
    out.steps = m;

    const bool exhausted = beta < 1e-12 || m == n;
    const double res_low = std::abs(beta * es.eigenvectors()(m - 1, 0));
    const double res_second = m > 1 ? std::abs(beta * es.eigenvectors()(m - 1, 1)) : 1.0;
    const bool settled = std::abs(low - prev_low) < tol && std::abs(second - prev_second) < tol;
    if (exhausted || (res_low < tol && res_second < tol && settled)) {
      out.converged = true;
      break;
    }
    prev_low = low;
    prev_second = second;
    betas.push_back(beta);
    v = w / beta;
  }
  return out;
}

}  // namespace kinkchain
