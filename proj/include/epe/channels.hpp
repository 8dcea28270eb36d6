#pragma once

#include <vector>

#include "epe/covariance.hpp"

namespace epe {

/// Eigenpairs (lambda_q, chi_q) of a restricted covariance block C_A together
/// with per-channel directional weights w_q and entropies s(lambda_q).
/// Channels with 1 - lambda_q^2 < tau are flagged as locally pure and carry
/// weight 0 and entropy 0.
struct ChannelSet {
  RealVector lambdas;           // ascending eigenvalues of C_A
  Matrix modes;                 // orthonormal eigenvectors as columns
  RealVector weights;           // w_q in [0, 1]; zero until populated
  RealVector entropies;         // s(lambda_q); zero on masked channels
  std::vector<bool> entangled;  // 1 - lambda_q^2 >= tau
  double tau = kDefaultTau;
  bool weights_populated = false;

  Index size() const { return lambdas.size(); }
};

/// Full eigensystem of C_A with the entangled-subspace mask applied.
/// tau must lie in (0, 1e-6].
ChannelSet channel_decomposition(const CovarianceMatrix& c, const Region& a,
                                 double tau = kDefaultTau);

/// Populates w_q = (chi_q)^dag C_AB C_BA chi_q / (1 - lambda_q^2) for every
/// entangled channel; masked channels keep weight 0.
ChannelSet channel_weights(const CovarianceMatrix& c, const Region& a, const Region& b,
                           ChannelSet channels);

/// Channel-sum form of the projected entropy: sum_q w_q s(lambda_q), nats.
/// Throws ValidationError when the weights have not been populated.
double epe_channel_sum(const ChannelSet& channels);

/// Closed trace form Tr_A[ K_AB s(C_A) / (I_A - C_A^2) ] with K_AB = C_AB C_BA,
/// evaluated spectrally on the entangled subspace of C_A.
double epe_trace(const CovarianceMatrix& c, const Region& a, const Region& b,
                 double tau = kDefaultTau);

/// Per-part projected entropies for disjoint complement regions. Their sum
/// equals epe_trace on the union of the parts (K is linear in the complement).
std::vector<double> epe_by_regions(const CovarianceMatrix& c, const Region& a,
                                   const std::vector<Region>& parts, double tau = kDefaultTau);

}  // namespace epe
