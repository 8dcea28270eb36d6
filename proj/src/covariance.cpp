#include "epe/covariance.hpp"

#include <cmath>

namespace epe {

namespace {

void require_hermitian(const Matrix& m, const std::string& what) {
  if (m.rows() != m.cols()) throw ValidationError(what + " must be square");
  if (m.size() == 0) return;
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev < kHermitianTol))
    throw ValidationError(what + " is not Hermitian (max deviation " + std::to_string(dev) + ")");
}

void check_labels(const std::vector<std::string>& labels, Index dim, const std::string& what) {
  if (!labels.empty() && static_cast<Index>(labels.size()) != dim)
    throw ValidationError(what + ": basis label count does not match dimension");
}

std::vector<std::string> gather_labels(const std::vector<std::string>& labels, const Region& a) {
  if (labels.empty()) return {};
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(a.size()));
  for (Index i : a.indices()) out.push_back(labels[static_cast<std::size_t>(i)]);
  return out;
}

// Rebuild V f(E) V^dag and symmetrize away reconstruction roundoff.
Matrix from_spectral(const EigenSystem& es, const RealVector& f) {
  Matrix m = es.vectors * f.asDiagonal() * es.vectors.adjoint();
  return Complex(0.5, 0.0) * (m + Matrix(m.adjoint()));
}

}  // namespace

EigenSystem hermitian_eigensystem(const Matrix& m) {
  if (m.size() == 0) return {RealVector(0), Matrix(0, 0)};
  const bool real_valued = m.imag().cwiseAbs().maxCoeff() == 0.0;
  if (real_valued) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(m.real());
    if (solver.info() != Eigen::Success) throw NumericalError("real-symmetric eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors().cast<Complex>()};
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CovarianceMatrix::CovarianceMatrix(Matrix entries, std::vector<std::string> basis_labels)
    : entries_(std::move(entries)), labels_(std::move(basis_labels)) {
  require_hermitian(entries_, "covariance matrix");
  check_labels(labels_, dim(), "covariance matrix");
}

double CovarianceMatrix::purity_residual() const {
  if (dim() == 0) return 0.0;
  Matrix sq = entries_ * entries_;
  sq -= Matrix::Identity(dim(), dim());
  return sq.cwiseAbs().maxCoeff();
}

SingleParticleHamiltonian::SingleParticleHamiltonian(Matrix entries,
                                                     std::vector<std::string> basis_labels)
    : entries_(std::move(entries)), labels_(std::move(basis_labels)) {
  require_hermitian(entries_, "single-particle Hamiltonian");
  check_labels(labels_, dim(), "single-particle Hamiltonian");
}

CovarianceMatrix build_thermal_covariance(const SingleParticleHamiltonian& h, double beta,
                                          double mu) {
  if (!std::isfinite(beta) || beta < 0.0)
    throw ValidationError("inverse temperature must be finite and >= 0");
  if (!std::isfinite(mu)) throw ValidationError("chemical potential must be finite");
  const EigenSystem es = hermitian_eigensystem(h.entries());
  RealVector occ(es.values.size());
  for (Index k = 0; k < es.values.size(); ++k)
    occ[k] = -std::tanh(0.5 * beta * (es.values[k] - mu));
  return CovarianceMatrix(from_spectral(es, occ), h.basis_labels());
}

CovarianceMatrix ground_state_covariance(const SingleParticleHamiltonian& h, Index n_filled,
                                         double degeneracy_tol) {
  const Index n = h.dim();
  if (n_filled < 0 || n_filled > n)
    throw ValidationError("particle count must lie in [0, dim]");
  if (n_filled == 0)
    return CovarianceMatrix(-Matrix::Identity(n, n), h.basis_labels());
  if (n_filled == n)
    return CovarianceMatrix(Matrix::Identity(n, n), h.basis_labels());

  const EigenSystem es = hermitian_eigensystem(h.entries());
  const double gap = es.values[n_filled] - es.values[n_filled - 1];
  if (gap <= degeneracy_tol)
    throw DegeneracyError(
        "degenerate Fermi level (gap " + std::to_string(gap) + " at orbital " +
        std::to_string(n_filled) +
        "): change boundary conditions or use a small finite temperature instead");
  RealVector occ = RealVector::Constant(n, -1.0);
  occ.head(n_filled).setConstant(1.0);
  return CovarianceMatrix(from_spectral(es, occ), h.basis_labels());
}

CovarianceMatrix restricted(const CovarianceMatrix& c, const Region& a) {
  a.require_within(c.dim(), "restriction region");
  const Index m = a.size();
  Matrix block(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) block(i, j) = c.entries()(a[i], a[j]);
  return CovarianceMatrix(std::move(block), gather_labels(c.basis_labels(), a));
}

Matrix cross_block(const CovarianceMatrix& c, const Region& a, const Region& b) {
  a.require_within(c.dim(), "region A");
  b.require_within(c.dim(), "region B");
  require_disjoint(a, b, "cross block");
  Matrix block(a.size(), b.size());
  for (Index i = 0; i < a.size(); ++i)
    for (Index j = 0; j < b.size(); ++j) block(i, j) = c.entries()(a[i], b[j]);
  return block;
}

double binary_entropy(double lambda) {
  if (!(std::abs(lambda) <= 1.0 + kSpectrumSlack))
    throw ValidationError("binary entropy argument outside [-1, 1]");
  lambda = std::clamp(lambda, -1.0, 1.0);
  const double p = 0.5 * (1.0 + lambda);
  const double q = 0.5 * (1.0 - lambda);
  double s = 0.0;
  if (p > 0.0) s -= p * std::log(p);
  if (q > 0.0) s -= q * std::log(q);
  return s;
}

double clamp_covariance_eigenvalue(double lambda) {
  if (!(std::abs(lambda) <= 1.0 + kSpectrumSlack))
    throw NumericalError("covariance spectrum out of bounds: eigenvalue " +
                         std::to_string(lambda));
  return std::clamp(lambda, -1.0, 1.0);
}

double von_neumann_entropy(const CovarianceMatrix& c, const Region& a) {
  const CovarianceMatrix block = restricted(c, a);
  const EigenSystem es = hermitian_eigensystem(block.entries());
  double total = 0.0;
  for (Index q = 0; q < es.values.size(); ++q)
    total += binary_entropy(clamp_covariance_eigenvalue(es.values[q]));
  return total;
}

}  // namespace epe
