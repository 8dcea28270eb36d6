#pragma once

#include <utility>
#include <vector>

#include "epe/channels.hpp"
#include "epe/covariance.hpp"

namespace epe {

/// Pure Gaussian extension of a mixed state onto system (+) ancilla, with one
/// ancilla mode per physical mode. The extended covariance satisfies
/// C~^2 = I to 1e-10 and its top-left block reproduces the physical state.
class PurifiedState {
 public:
  /// Wraps an extended covariance, validating purity and the physical block.
  static PurifiedState from_extended(CovarianceMatrix extended, const CovarianceMatrix& physical);

  const CovarianceMatrix& extended() const { return extended_; }
  Index physical_dim() const { return extended_.dim() / 2; }
  Region physical_region() const { return Region::interval(0, physical_dim()); }
  Region ancilla_region() const { return Region::interval(physical_dim(), extended_.dim()); }

  /// Conjugates the ancilla sector by a unitary, producing a different but
  /// equally valid purification of the same physical state.
  PurifiedState rotate_ancilla(const Matrix& w) const;

 private:
  explicit PurifiedState(CovarianceMatrix extended) : extended_(std::move(extended)) {}
  CovarianceMatrix extended_;
};

/// Canonical purification in the eigenbasis of C: each eigenmode lambda pairs
/// with one ancilla mode through the 2x2 block
/// [[lambda, sqrt(1-lambda^2)], [sqrt(1-lambda^2), -lambda]].
PurifiedState build_purification(const CovarianceMatrix& c);

/// Partner mode eta_q = C_{A-bar,A} chi_q / sqrt(1 - lambda_q^2) on B (+) E,
/// normalized and satisfying C_{A-bar} eta_q = -lambda_q eta_q.
/// Throws ValidationError when channel q is masked as locally pure.
Vector partner_mode(const PurifiedState& p, const Region& a, const ChannelSet& channels, Index q);

/// Partner modes for every channel; masked channels yield empty vectors.
std::vector<Vector> partner_modes(const PurifiedState& p, const Region& a,
                                  const ChannelSet& channels);

/// Channel weights obtained by explicit projection of the partner modes onto
/// the physical complement B: w_q = (eta_q)^dag P_B eta_q. Serves as the
/// brute-force oracle for the closed-form weights.
ChannelSet oracle_weights(const PurifiedState& p, const Region& a, const Region& b,
                          double tau = kDefaultTau);

/// Residuals of the block identities implied by global purity.
struct PurityReport {
  double global;            // max |C~^2 - I|
  double block_a;           // max |C_A^2 + C_AB C_BA + C_AE C_EA - I_A|
  double block_complement;  // max |C_Abar^2 + C_AbarA C_AAbar - I_Abar|
  double block_cross;       // max |C_A C_AAbar + C_AAbar C_Abar|

  double max_residual() const;
};

PurityReport verify_purity_blocks(const CovarianceMatrix& extended, const Region& a,
                                  const Region& physical, const Region& ancilla);
PurityReport verify_purity_blocks(const PurifiedState& p, const Region& a);

/// Weights summed over degenerate lambda subspaces (grouped within
/// lambda_tol), as (representative lambda, summed weight) pairs in ascending
/// lambda order. Only subspace sums are basis-independent.
std::vector<std::pair<double, double>> subspace_weight_sums(const ChannelSet& channels,
                                                            double lambda_tol = 1e-8);

}  // namespace epe
