#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "epe/channels.hpp"
#include "epe/lattice.hpp"
#include "support/random_states.hpp"

using namespace epe;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sorted_spectrum(const SingleParticleHamiltonian& h) {
  const EigenSystem es = hermitian_eigensystem(h.entries());
  std::vector<double> values(es.values.data(), es.values.data() + es.values.size());
  std::sort(values.begin(), values.end());
  return values;
}

// Closed-form chain dispersion 2 t cos k on the momentum set of the boundary
// condition. Oracle for the finite-ring spectra.
std::vector<double> chain_dispersion(Index sites, double t, bool antiperiodic) {
  std::vector<double> values;
  for (Index n = 0; n < sites; ++n) {
    const double k =
        2.0 * kPi * (static_cast<double>(n) + (antiperiodic ? 0.5 : 0.0)) / static_cast<double>(sites);
    values.push_back(2.0 * t * std::cos(k));
  }
  std::sort(values.begin(), values.end());
  return values;
}

// Pi-flux dispersion +-2t sqrt(cos^2 kx + cos^2 ky) over the allowed momenta
// (x periodic, y antiperiodic with ky restricted to (0, pi)).
std::vector<double> pi_flux_dispersion(Index lx, Index ly, double t) {
  std::vector<double> values;
  for (Index nx = 0; nx < lx; ++nx) {
    const double kx = 2.0 * kPi * static_cast<double>(nx) / static_cast<double>(lx);
    for (Index m = 0; m < ly / 2; ++m) {
      const double ky = kPi * (2.0 * static_cast<double>(m) + 1.0) / static_cast<double>(ly);
      const double e = 2.0 * t * std::sqrt(std::cos(kx) * std::cos(kx) +
                                           std::cos(ky) * std::cos(ky));
      values.push_back(e);
      values.push_back(-e);
    }
  }
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace

TEST_CASE("two-site open chain is the bare hopper") {
  const SingleParticleHamiltonian h = chain_1d(2, 1.0, Boundary::open);
  Matrix expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK((h.entries() - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("chain spectra match the cosine dispersion") {
  const std::vector<double> periodic = sorted_spectrum(chain_1d(4, 1.0, Boundary::periodic));
  const std::vector<double> expected_p = {-2.0, 0.0, 0.0, 2.0};
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(periodic[i] == doctest::Approx(expected_p[i]).epsilon(1e-12));

  const std::vector<double> anti = sorted_spectrum(chain_1d(4, 1.0, Boundary::antiperiodic));
  const double root2 = 1.4142135623730951;
  CHECK(anti[0] == doctest::Approx(-root2).epsilon(1e-12));
  CHECK(anti[1] == doctest::Approx(-root2).epsilon(1e-12));
  CHECK(anti[2] == doctest::Approx(root2).epsilon(1e-12));
  CHECK(anti[3] == doctest::Approx(root2).epsilon(1e-12));

  for (Index sites : {6, 9}) {
    const std::vector<double> got = sorted_spectrum(chain_1d(sites, 1.3, Boundary::periodic));
    const std::vector<double> want = chain_dispersion(sites, 1.3, false);
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10));
  }
}

TEST_CASE("SSH limits behave as dimers and edge modes") {
  const std::vector<double> dimerized = sorted_spectrum(ssh_chain(5, 1.0, 0.0));
  for (std::size_t i = 0; i < 5; ++i) CHECK(dimerized[i] == doctest::Approx(-1.0).epsilon(1e-12));
  for (std::size_t i = 5; i < 10; ++i) CHECK(dimerized[i] == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<double> topological = sorted_spectrum(ssh_chain(5, 0.0, 1.0));
  // The first and last site decouple exactly.
  CHECK(std::abs(topological[4]) < 1e-12);
  CHECK(std::abs(topological[5]) < 1e-12);

  const auto min_abs = [](const std::vector<double>& values) {
    double best = std::abs(values.front());
    for (double v : values) best = std::min(best, std::abs(v));
    return best;
  };
  CHECK(min_abs(sorted_spectrum(ssh_chain(40, 1.0, 1.0))) <
        min_abs(sorted_spectrum(ssh_chain(20, 1.0, 1.0))));
}

TEST_CASE("SSH spectrum is chiral symmetric") {
  const std::vector<double> values = sorted_spectrum(ssh_chain(7, 0.8, 1.7));
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i)
    CHECK(values[i] == doctest::Approx(-values[n - 1 - i]).epsilon(1e-12));
}

TEST_CASE("lattice builders emit Hermitian matrices to 1e-14") {
  const auto residual = [](const SingleParticleHamiltonian& h) {
    return (h.entries() - h.entries().adjoint()).cwiseAbs().maxCoeff();
  };
  CHECK(residual(chain_1d(9, 1.3, Boundary::periodic)) < 1e-14);
  CHECK(residual(ssh_chain(7, 0.8, 1.7)) < 1e-14);
  CHECK(residual(pi_flux(6, 4, 1.1)) < 1e-14);
  const SectorFamily family = pi_flux_sectors(6, 4, 1.1);
  for (const Sector& sector : family.sectors())
    CHECK(residual(sector.hamiltonian) < 1e-14);
}

TEST_CASE("pi-flux plaquettes enclose flux pi") {
  const Index lx = 4, ly = 4;
  const SingleParticleHamiltonian h = pi_flux(lx, ly, 1.0);
  const auto site = [ly](Index ix, Index iy) { return ix * ly + iy; };
  for (Index ix = 0; ix + 1 < lx; ++ix) {
    for (Index iy = 0; iy + 1 < ly; ++iy) {
      const Complex product = h.entries()(site(ix + 1, iy), site(ix, iy)) *
                              h.entries()(site(ix + 1, iy + 1), site(ix + 1, iy)) *
                              h.entries()(site(ix, iy + 1), site(ix + 1, iy + 1)) *
                              h.entries()(site(ix, iy), site(ix, iy + 1));
      CHECK(product.real() == doctest::Approx(-1.0).epsilon(1e-12));
      CHECK(std::abs(product.imag()) < 1e-12);
    }
  }
}

TEST_CASE("2x2 pi-flux lattice matches the hand count") {
  // Doubled bonds along x; antiperiodic y-bonds cancel: two dimers at +-2t.
  const std::vector<double> values = sorted_spectrum(pi_flux(2, 2, 1.0));
  CHECK(values[0] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(values[1] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(values[2] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(values[3] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("pi-flux spectrum matches the Dirac dispersion") {
  for (auto [lx, ly] : {std::pair<Index, Index>{8, 4}, {6, 8}}) {
    const std::vector<double> got = sorted_spectrum(pi_flux(lx, ly, 1.0));
    const std::vector<double> want = pi_flux_dispersion(lx, ly, 1.0);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("the gap above a Dirac node scales with the Fermi velocity") {
  const Index lx = 16, ly = 16;
  const double t = 1.0;
  const std::vector<double> values = sorted_spectrum(pi_flux(lx, ly, t));
  double min_abs = std::abs(values.front());
  for (double v : values) min_abs = std::min(min_abs, std::abs(v));

  // Distance from the node (pi/2, pi/2) to the nearest allowed momentum.
  double best = 1e300;
  for (Index nx = 0; nx < lx; ++nx) {
    for (Index m = 0; m < ly; ++m) {
      const double kx = 2.0 * kPi * static_cast<double>(nx) / static_cast<double>(lx);
      const double ky = kPi * (2.0 * static_cast<double>(m) + 1.0) / static_cast<double>(ly);
      const double dist = std::hypot(kx - kPi / 2.0, ky - kPi / 2.0);
      best = std::min(best, dist);
    }
  }
  const double v_f = 2.0 * t;
  CHECK(min_abs == doctest::Approx(v_f * best).epsilon(0.02));
}

TEST_CASE("pi-flux validates its lattice sizes") {
  CHECK_THROWS_AS(pi_flux(4, 3, 1.0), ValidationError);
  CHECK_THROWS_AS(pi_flux(1, 4, 1.0), ValidationError);
  CHECK_THROWS_AS(pi_flux_sectors(4, 3, 1.0), ValidationError);
  CHECK_THROWS_AS(pi_flux_sectors(4, 4, 1.0, Boundary::periodic, Boundary::open),
                  ValidationError);
}

TEST_CASE("sector spectra tile the full pi-flux spectrum") {
  const Index lx = 8, ly = 4;
  const SectorFamily family = pi_flux_sectors(lx, ly, 1.0);
  REQUIRE(family.sectors().size() == 2);
  std::vector<double> pooled;
  for (const Sector& sector : family.sectors()) {
    const std::vector<double> part = sorted_spectrum(sector.hamiltonian);
    pooled.insert(pooled.end(), part.begin(), part.end());
  }
  std::sort(pooled.begin(), pooled.end());
  const std::vector<double> full = sorted_spectrum(pi_flux(lx, ly, 1.0));
  REQUIRE(pooled.size() == full.size());
  for (std::size_t i = 0; i < full.size(); ++i)
    CHECK(pooled[i] == doctest::Approx(full[i]).epsilon(1e-10).scale(1.0));
}

TEST_CASE("sector embedding reassembles the full-lattice operators") {
  const Index lx = 4, ly = 4;
  for (Boundary bc_x : {Boundary::periodic, Boundary::antiperiodic, Boundary::open}) {
    for (Boundary bc_y : {Boundary::antiperiodic, Boundary::periodic}) {
      const SectorFamily family = pi_flux_sectors(lx, ly, 1.0, bc_x, bc_y);
      std::vector<Matrix> blocks;
      for (const Sector& sector : family.sectors())
        blocks.push_back(sector.hamiltonian.entries());
      const Matrix rebuilt = family.embed_blocks(blocks);
      const Matrix full = pi_flux(lx, ly, 1.0, bc_x, bc_y).entries();
      CHECK((rebuilt - full).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("sector decomposition reproduces strip entropies and EPE") {
  const Index lx = 8, ly = 4;
  const double beta = 3.0;
  const SectorFamily family = pi_flux_sectors(lx, ly, 1.0);

  const SingleParticleHamiltonian h_full = pi_flux(lx, ly, 1.0);
  const CovarianceMatrix c_full = build_thermal_covariance(h_full, beta);

  std::vector<Matrix> sector_covs;
  double vne_sum = 0.0;
  double epe_sum = 0.0;
  for (const Sector& sector : family.sectors()) {
    const CovarianceMatrix c_q = build_thermal_covariance(sector.hamiltonian, beta);
    sector_covs.push_back(c_q.entries());
    const Region a_q = family.sector_strip(1, 3);
    const Region b_q = a_q.complement_in(c_q.dim());
    vne_sum += von_neumann_entropy(c_q, a_q);
    epe_sum += epe_trace(c_q, a_q, b_q);
  }

  // The embedded covariance matches the full thermal state.
  CHECK((family.embed_blocks(sector_covs) - c_full.entries()).cwiseAbs().maxCoeff() < 1e-12);

  // Strip region [1, 4) is y-uniform, so both quantities decompose by sector.
  std::vector<Index> strip_sites;
  for (Index ix = 1; ix < 4; ++ix)
    for (Index iy = 0; iy < ly; ++iy) strip_sites.push_back(ix * ly + iy);
  const Region a_full{std::move(strip_sites)};
  const Region b_full = a_full.complement_in(lx * ly);
  CHECK(std::abs(vne_sum - von_neumann_entropy(c_full, a_full)) < 1e-9);
  CHECK(std::abs(epe_sum - epe_trace(c_full, a_full, b_full)) < 1e-9);
}

TEST_CASE("interval and strip regions index as documented") {
  CHECK(interval_region(10, 0, 3).indices() == std::vector<Index>{0, 1, 2});
  CHECK(interval_region(10, 0, 10).complement_in(10).empty());
  CHECK_THROWS_AS(interval_region(10, 8, 3), ValidationError);

  const Region strip = strip_region(4, 2, 1, 2);
  CHECK(strip.indices() == std::vector<Index>{2, 3, 4, 5});
  CHECK(strip_region(4, 2, 0, 4).complement_in(8).empty());
  CHECK_THROWS_AS(strip_region(4, 2, 3, 2), ValidationError);

  // Strip indices agree with the sector site map.
  const SectorFamily family = pi_flux_sectors(4, 4, 1.0);
  const Region phys = strip_region(4, 4, 1, 2);
  std::vector<Index> mapped;
  for (Index ix = 1; ix < 3; ++ix)
    for (Index c = 0; c < family.cell_count(); ++c)
      for (Index s = 0; s < 2; ++s) mapped.push_back(family.physical_site(ix, s, c));
  std::sort(mapped.begin(), mapped.end());
  CHECK(mapped == phys.indices());
}

TEST_CASE("infinite-line kernel reproduces the large-ring chain state") {
  const double beta = 4.0, t = 1.0;
  const CovarianceMatrix line = infinite_chain_covariance(288, beta, t);
  CHECK(line.entries().diagonal().cwiseAbs().maxCoeff() < 1e-12);

  const Region a_line = interval_region(288, 128, 16);
  const Region b_line = a_line.complement_in(288);
  const double epe_line = epe_trace(line, a_line, b_line);
  const double vne_line = von_neumann_entropy(line, a_line);

  const SingleParticleHamiltonian ring = chain_1d(512, t, Boundary::antiperiodic);
  const CovarianceMatrix c_ring = build_thermal_covariance(ring, beta);
  const Region a_ring = interval_region(512, 0, 16);
  const Region b_ring = a_ring.complement_in(512);
  CHECK(std::abs(epe_line - epe_trace(c_ring, a_ring, b_ring)) < 1e-6);
  CHECK(std::abs(vne_line - von_neumann_entropy(c_ring, a_ring)) < 1e-6);
}

TEST_CASE("infinite-line kernel is trivial at infinite temperature") {
  const CovarianceMatrix c = infinite_chain_covariance(8, 0.0, 1.0);
  CHECK(c.entries().cwiseAbs().maxCoeff() < 1e-15);
}
