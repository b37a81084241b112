#pragma once

// H_h = L^2_+ (-) h L^2_+ for a finite Blaschke product h, realized in the
// Takenaka-Malmquist basis
//
//   e_k(z) = sqrt(1 - |l_k|^2) / (1 - conj(l_k) z) * prod_{j<k} (z - l_j) / (1 - conj(l_j) z),
//
// together with the compressed shift A_h = P_{H_h} M_z |_{H_h} and
// phi_h = P_{H_h} 1. Coordinates are always taken in this basis.

#include "orbitframes/blaschke.hpp"
#include "orbitframes/coeff_space.hpp"
#include "orbitframes/linalg.hpp"

#include <vector>

namespace orbitframes {

struct ModelSpaceOptions {
  /// Truncation growth stops once the basis Gram residual and the norm of the
  /// last quarter of every basis vector's coefficients are both below this.
  double gram_target = 1e-10;
  /// Reaching max_trunc with a residual above this is an error.
  double gram_limit = 1e-8;
  int max_trunc = 16384;
};

class ModelSpace {
 public:
  /// h in canonical form (unimodular constant 1).
  const BlaschkeProduct<double>& h() const { return h_; }
  const CoeffVecd& h_taylor() const { return h_taylor_; }
  const std::vector<CoeffVecd>& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int trunc() const { return trunc_; }
  /// Column j holds the coordinates of A_h e_j.
  const MatrixXcd& shift_matrix() const { return shift_; }
  const VectorXcd& phi() const { return phi_; }
  /// max |<e_j, e_k> - delta_jk| at the stored truncation.
  double gram_residual() const { return gram_residual_; }

  /// (<f, e_k>)_k.
  VectorXcd coordinates(const CoeffVecd& f) const;
  /// sum_k coords_k e_k on [0, trunc].
  CoeffVecd synthesize(const VectorXcd& coords) const;

 private:
  friend ModelSpace build_model_space(const BlaschkeProduct<double>& h, int n_trunc,
                                      const ModelSpaceOptions& options);

  BlaschkeProduct<double> h_;
  CoeffVecd h_taylor_;
  std::vector<CoeffVecd> basis_;
  int trunc_ = 0;
  MatrixXcd shift_;
  VectorXcd phi_;
  double gram_residual_ = 0.0;
};

/// Smallest admissible starting truncation, max(8 d, 64).
int default_truncation(int degree);

/// Builds the model space starting at truncation n_trunc (>= max(8d, 64)) and
/// doubling until the basis is orthonormal and its coefficient tails are
/// negligible (see ModelSpaceOptions::gram_target).
ModelSpace build_model_space(const BlaschkeProduct<double>& h, int n_trunc,
                             const ModelSpaceOptions& options = {});
ModelSpace build_model_space(const BlaschkeProduct<double>& h);

/// P_{H_h} f = h * P_-(f * conj(h)), restricted to indices >= 0.
CoeffVecd project_model(const ModelSpace& ms, const CoeffVecd& f);

/// Coordinates of P_{H_h}(z^m) from the closed form
/// z^m - sum_{n=0}^m conj(<h, z^{m-n}>) z^n h.
VectorXcd projected_monomial(const ModelSpace& ms, int m);

/// (A_h^n phi_h)_{n = 0..n_max}.
std::vector<VectorXcd> orbit(const ModelSpace& ms, int n_max);

/// (||A_h^n f||)_{n = 0..n_max} for f given in coordinates.
std::vector<double> decay_profile(const ModelSpace& ms, const VectorXcd& f, int n_max);

/// The same profile through coefficient space:
/// ||A_h^n f||^2 = sum_{k > n} |<f conj(h), z^{-k}>|^2.
std::vector<double> decay_profile_tail_sum(const ModelSpace& ms, const VectorXcd& f, int n_max);

/// || prod_j (A_h - l_j I) ||_2.
double minimal_polynomial_check(const ModelSpace& ms);

}  // namespace orbitframes
