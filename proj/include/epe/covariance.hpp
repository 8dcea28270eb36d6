#pragma once

#include <string>
#include <vector>

#include "epe/common.hpp"

namespace epe {

/// Eigen-decomposition of a Hermitian matrix: real eigenvalues in ascending
/// order and the matching orthonormal eigenvectors as columns.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};

/// Diagonalizes a Hermitian matrix, taking the real-symmetric fast path when
/// the imaginary part is identically zero.
EigenSystem hermitian_eigensystem(const Matrix& m);

/// Hermitian covariance matrix C_{jl} = 2<a_l^dag a_j> - delta_{jl} of a
/// particle-number-conserving Gaussian state. Spectrum lies in [-1, 1];
/// C^2 = I exactly for a pure state.
class CovarianceMatrix {
 public:
  /// Throws ValidationError unless entries are square and Hermitian to 1e-12.
  explicit CovarianceMatrix(Matrix entries, std::vector<std::string> basis_labels = {});

  Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }

  /// max |C^2 - I|.
  double purity_residual() const;
  bool is_pure(double tol = 1e-10) const { return purity_residual() < tol; }

 private:
  Matrix entries_;
  std::vector<std::string> labels_;
};

/// Single-particle (hopping) matrix h of a quadratic Hamiltonian
/// H = sum_{jl} h_{jl} a_j^dag a_l, in units of the hopping amplitude.
class SingleParticleHamiltonian {
 public:
  /// Throws ValidationError unless entries are square and Hermitian to 1e-12.
  explicit SingleParticleHamiltonian(Matrix entries, std::vector<std::string> basis_labels = {});

  Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }

 private:
  Matrix entries_;
  std::vector<std::string> labels_;
};

/// Grand-canonical Gaussian state C = -tanh(beta (h - mu I) / 2), evaluated
/// in the eigenbasis of h. beta = 0 gives C = 0 (infinite temperature).
CovarianceMatrix build_thermal_covariance(const SingleParticleHamiltonian& h, double beta,
                                          double mu = 0.0);

/// Pure ground state with the lowest n_filled orbitals occupied:
/// C = V diag(+1 on occupied, -1 on empty) V^dag. Throws DegeneracyError when
/// the spectral gap at the Fermi level is below degeneracy_tol.
CovarianceMatrix ground_state_covariance(const SingleParticleHamiltonian& h, Index n_filled,
                                         double degeneracy_tol = 1e-10);

/// Restricted covariance block C_A = P_A C P_A with basis labels carried over.
CovarianceMatrix restricted(const CovarianceMatrix& c, const Region& a);

/// Cross-correlation block C_AB = P_A C P_B for disjoint regions.
/// Satisfies C_AB = C_BA^dag.
Matrix cross_block(const CovarianceMatrix& c, const Region& a, const Region& b);

/// Per-mode entropy s(lambda) = -(1+lambda)/2 ln (1+lambda)/2
///                              -(1-lambda)/2 ln (1-lambda)/2, in nats.
/// Inputs within 1e-10 of +-1 are clamped; anything beyond is rejected.
double binary_entropy(double lambda);

/// Clamps a covariance eigenvalue into [-1, 1]; throws NumericalError when it
/// exceeds the interval by more than kSpectrumSlack.
double clamp_covariance_eigenvalue(double lambda);

/// Gaussian von Neumann entropy S(A) = Tr s(C_A) = sum_q s(lambda_q), nats.
double von_neumann_entropy(const CovarianceMatrix& c, const Region& a);

}  // namespace epe
