#include "orbitframes/linalg.hpp"

#include "orbitframes/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

namespace orbitframes {

double spectral_norm(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double condition_number(const MatrixXcd& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

double spectral_radius(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<MatrixXcd> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

VectorXd hermitian_eigenvalues(const MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

MatrixXcd hermitian_power(const MatrixXcd& h, double power, double floor) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  VectorXd ev = es.eigenvalues().cwiseMax(floor);
  if (power < 0.0 && (ev.array() <= 0.0).any()) {
    throw NumericalError("negative power of a singular Hermitian matrix");
  }
  ev = ev.array().pow(power).matrix();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd kernel_basis(const MatrixXcd& m, double rel_tol) {
  const Eigen::Index cols = m.cols();
  if (cols == 0) return MatrixXcd(0, 0);
  if (m.rows() == 0) return MatrixXcd::Identity(cols, cols);
  Eigen::BDCSVD<MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = rel_tol * s(0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

double multiset_distance(const VectorXcd& a, const VectorXcd& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<int> perm(static_cast<std::size_t>(a.size()));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      worst = std::max(worst, std::abs(a(i) - b(perm[static_cast<std::size_t>(i)])));
      if (worst >= best) break;
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return a.size() == 0 ? 0.0 : best;
}

}  // namespace orbitframes
