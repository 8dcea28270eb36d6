#include "epe/channels.hpp"

#include <cmath>

namespace epe {

namespace {

constexpr double kWeightSlack = 1e-9;

void require_tau(double tau) {
  if (!(tau > 0.0) || tau > 1e-6) throw ValidationError("tau must lie in (0, 1e-6]");
}

// s(lambda) / (1 - lambda^2) on the entangled subspace, exactly 0 elsewhere.
RealVector entropy_over_variance(const ChannelSet& channels) {
  RealVector g = RealVector::Zero(channels.size());
  for (Index q = 0; q < channels.size(); ++q) {
    if (!channels.entangled[static_cast<std::size_t>(q)]) continue;
    const double lambda = channels.lambdas[q];
    g[q] = channels.entropies[q] / (1.0 - lambda * lambda);
  }
  return g;
}

}  // namespace

ChannelSet channel_decomposition(const CovarianceMatrix& c, const Region& a, double tau) {
  require_tau(tau);
  const CovarianceMatrix block = restricted(c, a);
  EigenSystem es = hermitian_eigensystem(block.entries());

  ChannelSet channels;
  channels.tau = tau;
  channels.lambdas = std::move(es.values);
  channels.modes = std::move(es.vectors);
  for (Index q = 0; q < channels.lambdas.size(); ++q)
    channels.lambdas[q] = clamp_covariance_eigenvalue(channels.lambdas[q]);

  const Index n = channels.lambdas.size();
  channels.weights = RealVector::Zero(n);
  channels.entropies = RealVector::Zero(n);
  channels.entangled.assign(static_cast<std::size_t>(n), false);
  for (Index q = 0; q < n; ++q) {
    const double lambda = channels.lambdas[q];
    if (1.0 - lambda * lambda >= tau) {
      channels.entangled[static_cast<std::size_t>(q)] = true;
      channels.entropies[q] = binary_entropy(lambda);
    }
  }
  return channels;
}

ChannelSet channel_weights(const CovarianceMatrix& c, const Region& a, const Region& b,
                           ChannelSet channels) {
  if (channels.modes.rows() != a.size())
    throw ValidationError("channel set does not match region A");
  const Matrix c_ba = cross_block(c, b, a);

  for (Index q = 0; q < channels.size(); ++q) {
    if (!channels.entangled[static_cast<std::size_t>(q)]) {
      channels.weights[q] = 0.0;
      continue;
    }
    const double lambda = channels.lambdas[q];
    double w = (c_ba * channels.modes.col(q)).squaredNorm() / (1.0 - lambda * lambda);
    if (w < -kWeightSlack || w > 1.0 + kWeightSlack)
      throw NumericalError("channel weight " + std::to_string(w) +
                           " outside [0, 1]: corrupted covariance matrix");
    channels.weights[q] = std::clamp(w, 0.0, 1.0);
  }
  channels.weights_populated = true;
  return channels;
}

double epe_channel_sum(const ChannelSet& channels) {
  if (!channels.weights_populated) throw ValidationError("channel weights are unset");
  double total = 0.0;
  for (Index q = 0; q < channels.size(); ++q)
    if (channels.entangled[static_cast<std::size_t>(q)])
      total += channels.weights[q] * channels.entropies[q];
  return total;
}

double epe_trace(const CovarianceMatrix& c, const Region& a, const Region& b, double tau) {
  const ChannelSet channels = channel_decomposition(c, a, tau);
  const Matrix c_ab = cross_block(c, a, b);
  const Matrix k_ab = c_ab * c_ab.adjoint();
  const RealVector g = entropy_over_variance(channels);
  const Matrix weight_kernel =
      channels.modes * g.asDiagonal() * channels.modes.adjoint();
  return (k_ab.cwiseProduct(weight_kernel.transpose())).sum().real();
}

std::vector<double> epe_by_regions(const CovarianceMatrix& c, const Region& a,
                                   const std::vector<Region>& parts, double tau) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    require_disjoint(a, parts[i], "part " + std::to_string(i));
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      require_disjoint(parts[i], parts[j], "parts " + std::to_string(i) + "/" + std::to_string(j));
  }
  const ChannelSet channels = channel_decomposition(c, a, tau);
  const RealVector g = entropy_over_variance(channels);
  const Matrix weight_kernel =
      channels.modes * g.asDiagonal() * channels.modes.adjoint();

  std::vector<double> values;
  values.reserve(parts.size());
  for (const Region& part : parts) {
    const Matrix c_ap = cross_block(c, a, part);
    const Matrix k_ap = c_ap * c_ap.adjoint();
    values.push_back((k_ap.cwiseProduct(weight_kernel.transpose())).sum().real());
  }
  return values;
}

}  // namespace epe
