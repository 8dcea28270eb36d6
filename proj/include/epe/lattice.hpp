#pragma once

#include <variant>
#include <vector>

#include "epe/covariance.hpp"

namespace epe {

enum class Boundary { periodic, antiperiodic, open };

struct ChainSpec {
  Index sites = 1024;
  double t = 1.0;
  Boundary bc = Boundary::antiperiodic;
};

struct SshSpec {
  Index cells = 60;  // two sites per cell
  double t1 = 1.0;
  double t2 = 2.0;
};

struct PiFluxSpec {
  Index lx = 200;
  Index ly = 100;  // must be even (two-site magnetic cell along y)
  double t = 1.0;
  Boundary bc_x = Boundary::periodic;
  Boundary bc_y = Boundary::antiperiodic;
};

using LatticeSpec = std::variant<ChainSpec, SshSpec, PiFluxSpec>;

/// Nearest-neighbor chain H = t sum_j (a_j^dag a_{j+1} + h.c.) with the given
/// boundary term; dispersion 2 t cos k for periodic boundaries.
SingleParticleHamiltonian chain_1d(Index sites, double t, Boundary bc);

/// Open SSH chain with intra-cell hopping t1 and inter-cell hopping t2;
/// 2 * cells modes ordered (cell, sublattice).
SingleParticleHamiltonian ssh_chain(Index cells, double t1, double t2);

/// Square-lattice pi-flux model: x-bonds carry -t (-1)^{i_y}, y-bonds -t,
/// so every plaquette encloses flux pi. Site (ix, iy) maps to index
/// ix * ly + iy. Dispersion E = +-2t sqrt(cos^2 kx + cos^2 ky).
SingleParticleHamiltonian pi_flux(Index lx, Index ly, double t,
                                  Boundary bc_x = Boundary::periodic,
                                  Boundary bc_y = Boundary::antiperiodic);

/// One transverse-momentum block of the pi-flux model: a 2*lx-mode effective
/// 1D Hamiltonian whose orbital (ix, s) maps to index 2*ix + s.
struct Sector {
  double ky;              // transverse momentum per single-site y translation
  double cell_momentum;   // Bloch phase q = 2 ky per two-site cell
  SingleParticleHamiltonian hamiltonian;
};

/// Transverse-momentum decomposition of the pi-flux model. The sector orbital
/// (ix, s) embeds into physical sites (ix, 2c + s) with amplitude
/// exp(i q c) / sqrt(ly/2); the direct sum of the sector blocks reproduces the
/// full lattice problem, and any y-uniform strip observable decomposes as a
/// sum over sectors.
class SectorFamily {
 public:
  SectorFamily(Index lx, Index ly, std::vector<Sector> sectors);

  Index lx() const { return lx_; }
  Index ly() const { return ly_; }
  Index cell_count() const { return ly_ / 2; }
  const std::vector<Sector>& sectors() const { return sectors_; }

  /// Strip [x0, x0 + width) expressed in sector orbital indices.
  Region sector_strip(Index x0, Index width) const;

  /// Physical site index reached by sector orbital (ix, s) in cell c.
  Index physical_site(Index ix, Index s, Index c) const;

  /// Assembles sum_q M_q B_q M_q^dag from per-sector blocks, where M_q is the
  /// sector embedding isometry. Intended for small-lattice validation.
  Matrix embed_blocks(const std::vector<Matrix>& per_sector) const;

 private:
  Index lx_ = 0;
  Index ly_ = 0;
  std::vector<Sector> sectors_;
};

/// Builds the ly/2 transverse-momentum sectors of the pi-flux model.
/// Requires a closed (periodic or antiperiodic) y boundary.
SectorFamily pi_flux_sectors(Index lx, Index ly, double t, Boundary bc_x = Boundary::periodic,
                             Boundary bc_y = Boundary::antiperiodic);

/// Contiguous interval of len sites starting at start within a chain of the
/// given length.
Region interval_region(Index length, Index start, Index len);

/// Vertical strip of width lx_width starting at column lx_start, as physical
/// site indices of the lx x ly lattice.
Region strip_region(Index lx, Index ly, Index lx_start, Index lx_width);

/// Half-filled infinite-chain covariance evaluated by momentum quadrature,
/// C_{jl} = -(1/2pi) Int dk tanh(beta t cos k) e^{ik(j-l)}, truncated to a
/// window of the given size. Validation alternative to a large finite ring.
CovarianceMatrix infinite_chain_covariance(Index window, double beta, double t,
                                           Index quadrature_nodes = 16384);

}  // namespace epe
