#include "epe/purification.hpp"

#include <algorithm>
#include <cmath>

namespace epe {

namespace {

constexpr double kPurityTol = 1e-10;
constexpr double kPhysicalBlockTol = 1e-12;

Matrix hermitized(const Matrix& m) { return Complex(0.5, 0.0) * (m + Matrix(m.adjoint())); }

}  // namespace

PurifiedState PurifiedState::from_extended(CovarianceMatrix extended,
                                           const CovarianceMatrix& physical) {
  const Index n = physical.dim();
  if (extended.dim() != 2 * n)
    throw ValidationError("extended covariance must have twice the physical dimension");
  const double purity = extended.purity_residual();
  if (!(purity < kPurityTol))
    throw ValidationError("extended covariance is not pure (residual " + std::to_string(purity) +
                          ")");
  const double block_dev =
      (extended.entries().topLeftCorner(n, n) - physical.entries()).cwiseAbs().maxCoeff();
  if (!(block_dev < kPhysicalBlockTol))
    throw ValidationError("extended covariance does not reproduce the physical block");
  return PurifiedState(std::move(extended));
}

PurifiedState PurifiedState::rotate_ancilla(const Matrix& w) const {
  const Index n = physical_dim();
  if (w.rows() != n || w.cols() != n) throw ValidationError("ancilla rotation has wrong shape");
  const double unitarity = (w.adjoint() * w - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(unitarity < 1e-10)) throw ValidationError("ancilla rotation is not unitary");

  Matrix t = Matrix::Zero(2 * n, 2 * n);
  t.topLeftCorner(n, n).setIdentity();
  t.bottomRightCorner(n, n) = w;
  Matrix rotated = hermitized(t * extended_.entries() * t.adjoint());
  // Keep the physical block bit-exact; the rotation only touches E.
  rotated.topLeftCorner(n, n) = extended_.entries().topLeftCorner(n, n);
  CovarianceMatrix physical(extended_.entries().topLeftCorner(n, n));
  return from_extended(CovarianceMatrix(std::move(rotated), extended_.basis_labels()), physical);
}

PurifiedState build_purification(const CovarianceMatrix& c) {
  const Index n = c.dim();
  const EigenSystem es = hermitian_eigensystem(c.entries());
  RealVector coupling(n);
  for (Index k = 0; k < n; ++k) {
    const double lambda = clamp_covariance_eigenvalue(es.values[k]);
    coupling[k] = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
  }
  const Matrix c_se = hermitized(es.vectors * coupling.asDiagonal() * es.vectors.adjoint());

  Matrix extended(2 * n, 2 * n);
  extended.topLeftCorner(n, n) = c.entries();
  extended.topRightCorner(n, n) = c_se;
  extended.bottomLeftCorner(n, n) = c_se;
  extended.bottomRightCorner(n, n) = -c.entries();

  std::vector<std::string> labels;
  if (!c.basis_labels().empty()) {
    labels = c.basis_labels();
    for (const std::string& name : c.basis_labels()) labels.push_back("anc:" + name);
  }
  return PurifiedState::from_extended(CovarianceMatrix(std::move(extended), std::move(labels)), c);
}

Vector partner_mode(const PurifiedState& p, const Region& a, const ChannelSet& channels,
                    Index q) {
  if (q < 0 || q >= channels.size()) throw ValidationError("channel index out of range");
  if (!channels.entangled[static_cast<std::size_t>(q)])
    throw ValidationError("partner mode requested for a locally pure (masked) channel");
  a.require_within(p.physical_dim(), "region A");
  const Region rest = a.complement_in(p.extended().dim());
  const Matrix c_rest_a = cross_block(p.extended(), rest, a);
  const double lambda = channels.lambdas[q];
  Vector eta = c_rest_a * channels.modes.col(q);
  eta /= std::sqrt(1.0 - lambda * lambda);
  return eta;
}

std::vector<Vector> partner_modes(const PurifiedState& p, const Region& a,
                                  const ChannelSet& channels) {
  a.require_within(p.physical_dim(), "region A");
  const Region rest = a.complement_in(p.extended().dim());
  const Matrix c_rest_a = cross_block(p.extended(), rest, a);
  std::vector<Vector> modes(static_cast<std::size_t>(channels.size()));
  for (Index q = 0; q < channels.size(); ++q) {
    if (!channels.entangled[static_cast<std::size_t>(q)]) continue;
    const double lambda = channels.lambdas[q];
    modes[static_cast<std::size_t>(q)] =
        c_rest_a * channels.modes.col(q) / std::sqrt(1.0 - lambda * lambda);
  }
  return modes;
}

ChannelSet oracle_weights(const PurifiedState& p, const Region& a, const Region& b, double tau) {
  a.require_within(p.physical_dim(), "region A");
  b.require_within(p.physical_dim(), "region B");
  require_disjoint(a, b, "oracle weights");

  ChannelSet channels = channel_decomposition(p.extended(), a, tau);
  const Region rest = a.complement_in(p.extended().dim());

  // Positions of B inside the complement listing (both are sorted).
  std::vector<Index> b_positions;
  b_positions.reserve(static_cast<std::size_t>(b.size()));
  {
    std::size_t k = 0;
    for (Index pos = 0; pos < rest.size(); ++pos) {
      if (k < static_cast<std::size_t>(b.size()) && rest[pos] == b.indices()[k]) {
        b_positions.push_back(pos);
        ++k;
      }
    }
  }

  const std::vector<Vector> etas = partner_modes(p, a, channels);
  for (Index q = 0; q < channels.size(); ++q) {
    if (!channels.entangled[static_cast<std::size_t>(q)]) continue;
    const Vector& eta = etas[static_cast<std::size_t>(q)];
    double w = 0.0;
    for (Index pos : b_positions) w += std::norm(eta[pos]);
    channels.weights[q] = std::clamp(w, 0.0, 1.0);
  }
  channels.weights_populated = true;
  return channels;
}

double PurityReport::max_residual() const {
  return std::max({global, block_a, block_complement, block_cross});
}

PurityReport verify_purity_blocks(const CovarianceMatrix& extended, const Region& a,
                                  const Region& physical, const Region& ancilla) {
  const Index dim = extended.dim();
  a.require_within(dim, "region A");
  physical.require_within(dim, "physical region");
  ancilla.require_within(dim, "ancilla region");
  require_disjoint(physical, ancilla, "purity blocks");
  for (Index i : a.indices())
    if (!physical.contains(i)) throw ValidationError("region A must lie in the physical region");

  const Region rest = a.complement_in(dim);
  Region b(std::vector<Index>{});
  {
    std::vector<Index> idx;
    for (Index i : physical.indices())
      if (!a.contains(i)) idx.push_back(i);
    b = Region(std::move(idx));
  }

  const Matrix c_a = restricted(extended, a).entries();
  const Matrix c_rest = restricted(extended, rest).entries();
  const Matrix c_ab = cross_block(extended, a, b);
  const Matrix c_ae = cross_block(extended, a, ancilla);
  const Matrix c_a_rest = cross_block(extended, a, rest);
  const Index m = a.size();

  PurityReport report{};
  report.global = extended.purity_residual();
  report.block_a = (c_a * c_a + c_ab * c_ab.adjoint() + c_ae * c_ae.adjoint() -
                    Matrix::Identity(m, m))
                       .cwiseAbs()
                       .maxCoeff();
  report.block_complement = (c_rest * c_rest + c_a_rest.adjoint() * c_a_rest -
                             Matrix::Identity(rest.size(), rest.size()))
                                .cwiseAbs()
                                .maxCoeff();
  report.block_cross = (c_a * c_a_rest + c_a_rest * c_rest).cwiseAbs().maxCoeff();
  return report;
}

PurityReport verify_purity_blocks(const PurifiedState& p, const Region& a) {
  return verify_purity_blocks(p.extended(), a, p.physical_region(), p.ancilla_region());
}

std::vector<std::pair<double, double>> subspace_weight_sums(const ChannelSet& channels,
                                                            double lambda_tol) {
  std::vector<std::pair<double, double>> sums;
  for (Index q = 0; q < channels.size(); ++q) {
    if (!channels.entangled[static_cast<std::size_t>(q)]) continue;
    const double lambda = channels.lambdas[q];
    const double w = channels.weights[q];
    if (!sums.empty() && lambda - sums.back().first <= lambda_tol) {
      sums.back().second += w;
    } else {
      sums.emplace_back(lambda, w);
    }
  }
  return sums;
}

}  // namespace epe
