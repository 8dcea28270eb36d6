#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace epe {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Hermiticity tolerance enforced on covariance matrices and Hamiltonians.
inline constexpr double kHermitianTol = 1e-12;

/// Eigenvalues of a covariance block may overshoot [-1, 1] by at most this
/// much before being rejected; anything closer is clamped onto the interval.
inline constexpr double kSpectrumSlack = 1e-10;

/// Default cutoff on 1 - lambda^2 below which a channel counts as pure.
inline constexpr double kDefaultTau = 1e-12;

/// Malformed input: bad regions, non-Hermitian matrices, invalid config.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: out-of-bounds spectra, eigensolver trouble.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate Fermi level in a ground-state construction.
class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// I/O failure while reading or writing result files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered set of mode indices naming a subsystem within a mode basis.
/// Indices are strictly increasing; an empty region is allowed.
class Region {
 public:
  Region() = default;

  /// Throws ValidationError unless indices are strictly increasing and >= 0.
  explicit Region(std::vector<Index> indices);

  /// The half-open index range [begin, end).
  static Region interval(Index begin, Index end);

  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  const std::vector<Index>& indices() const { return indices_; }
  Index operator[](Index i) const { return indices_[static_cast<std::size_t>(i)]; }

  bool contains(Index mode) const;
  bool disjoint_from(const Region& other) const;

  /// Sorted union; throws ValidationError if the regions overlap.
  Region disjoint_union(const Region& other) const;

  /// All indices in [0, dim) not contained in this region.
  Region complement_in(Index dim) const;

  /// Throws ValidationError unless every index is below dim.
  void require_within(Index dim, const std::string& what) const;

 private:
  std::vector<Index> indices_;
};

void require_disjoint(const Region& a, const Region& b, const std::string& what);

}  // namespace epe
