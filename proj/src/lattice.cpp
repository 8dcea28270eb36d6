#include "epe/lattice.hpp"

#include <cmath>
#include <numbers>

namespace epe {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_sign(Boundary bc) { return bc == Boundary::antiperiodic ? -1.0 : 1.0; }

std::string site_label(Index ix, Index iy) {
  return "x:" + std::to_string(ix) + ",y:" + std::to_string(iy);
}

}  // namespace

SingleParticleHamiltonian chain_1d(Index sites, double t, Boundary bc) {
  if (sites < 2) throw ValidationError("chain needs at least 2 sites");
  Matrix h = Matrix::Zero(sites, sites);
  for (Index j = 0; j + 1 < sites; ++j) {
    h(j, j + 1) += t;
    h(j + 1, j) += t;
  }
  if (bc != Boundary::open) {
    const double amp = t * wrap_sign(bc);
    h(sites - 1, 0) += amp;
    h(0, sites - 1) += amp;
  }
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(sites));
  for (Index j = 0; j < sites; ++j) labels.push_back("site:" + std::to_string(j));
  return SingleParticleHamiltonian(std::move(h), std::move(labels));
}

SingleParticleHamiltonian ssh_chain(Index cells, double t1, double t2) {
  if (cells < 2) throw ValidationError("SSH chain needs at least 2 cells");
  const Index n = 2 * cells;
  Matrix h = Matrix::Zero(n, n);
  for (Index j = 0; j < cells; ++j) {
    h(2 * j, 2 * j + 1) += t1;
    h(2 * j + 1, 2 * j) += t1;
    if (j + 1 < cells) {
      h(2 * j + 1, 2 * j + 2) += t2;
      h(2 * j + 2, 2 * j + 1) += t2;
    }
  }
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < cells; ++j) {
    labels.push_back("cell:" + std::to_string(j) + ",s:1");
    labels.push_back("cell:" + std::to_string(j) + ",s:2");
  }
  return SingleParticleHamiltonian(std::move(h), std::move(labels));
}

SingleParticleHamiltonian pi_flux(Index lx, Index ly, double t, Boundary bc_x, Boundary bc_y) {
  if (lx < 2 || ly < 2) throw ValidationError("pi-flux lattice needs lx, ly >= 2");
  if (ly % 2 != 0) throw ValidationError("pi-flux lattice requires even ly");
  const Index n = lx * ly;
  Matrix h = Matrix::Zero(n, n);
  const auto site = [ly](Index ix, Index iy) { return ix * ly + iy; };

  for (Index ix = 0; ix < lx; ++ix) {
    for (Index iy = 0; iy < ly; ++iy) {
      // x-bond (ix, iy) -> (ix+1, iy) with gauge phase (-1)^{iy}
      if (ix + 1 < lx || bc_x != Boundary::open) {
        double amp = -t * (iy % 2 == 0 ? 1.0 : -1.0);
        Index jx = ix + 1;
        if (jx == lx) {
          jx = 0;
          amp *= wrap_sign(bc_x);
        }
        h(site(jx, iy), site(ix, iy)) += amp;
        h(site(ix, iy), site(jx, iy)) += amp;
      }
      // y-bond (ix, iy) -> (ix, iy+1)
      if (iy + 1 < ly || bc_y != Boundary::open) {
        double amp = -t;
        Index jy = iy + 1;
        if (jy == ly) {
          jy = 0;
          amp *= wrap_sign(bc_y);
        }
        h(site(ix, jy), site(ix, iy)) += amp;
        h(site(ix, iy), site(ix, jy)) += amp;
      }
    }
  }
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (Index ix = 0; ix < lx; ++ix)
    for (Index iy = 0; iy < ly; ++iy) labels.push_back(site_label(ix, iy));
  return SingleParticleHamiltonian(std::move(h), std::move(labels));
}

SectorFamily::SectorFamily(Index lx, Index ly, std::vector<Sector> sectors)
    : lx_(lx), ly_(ly), sectors_(std::move(sectors)) {}

Region SectorFamily::sector_strip(Index x0, Index width) const {
  if (x0 < 0 || width < 0 || x0 + width > lx_)
    throw ValidationError("sector strip out of range");
  return Region::interval(2 * x0, 2 * (x0 + width));
}

Index SectorFamily::physical_site(Index ix, Index s, Index c) const {
  if (ix < 0 || ix >= lx_ || s < 0 || s > 1 || c < 0 || c >= cell_count())
    throw ValidationError("sector orbital out of range");
  return ix * ly_ + 2 * c + s;
}

Matrix SectorFamily::embed_blocks(const std::vector<Matrix>& per_sector) const {
  if (per_sector.size() != sectors_.size())
    throw ValidationError("one block per sector expected");
  const Index n = lx_ * ly_;
  const Index nc = cell_count();
  Matrix full = Matrix::Zero(n, n);
  for (std::size_t m = 0; m < sectors_.size(); ++m) {
    const Matrix& block = per_sector[m];
    if (block.rows() != 2 * lx_ || block.cols() != 2 * lx_)
      throw ValidationError("sector block has wrong shape");
    const double q = sectors_[m].cell_momentum;
    for (Index c = 0; c < nc; ++c) {
      for (Index cp = 0; cp < nc; ++cp) {
        const Complex phase =
            std::polar(1.0 / static_cast<double>(nc), q * static_cast<double>(c - cp));
        for (Index ix = 0; ix < lx_; ++ix)
          for (Index s = 0; s < 2; ++s)
            for (Index jx = 0; jx < lx_; ++jx)
              for (Index sp = 0; sp < 2; ++sp)
                full(physical_site(ix, s, c), physical_site(jx, sp, cp)) +=
                    phase * block(2 * ix + s, 2 * jx + sp);
      }
    }
  }
  return full;
}

SectorFamily pi_flux_sectors(Index lx, Index ly, double t, Boundary bc_x, Boundary bc_y) {
  if (lx < 2 || ly < 2) throw ValidationError("pi-flux lattice needs lx, ly >= 2");
  if (ly % 2 != 0) throw ValidationError("pi-flux lattice requires even ly");
  if (bc_y == Boundary::open)
    throw ValidationError("sector decomposition needs a closed y boundary");
  const Index nc = ly / 2;
  const double twist = bc_y == Boundary::antiperiodic ? 0.5 : 0.0;

  std::vector<Sector> sectors;
  sectors.reserve(static_cast<std::size_t>(nc));
  for (Index m = 0; m < nc; ++m) {
    const double q = 2.0 * kPi * (static_cast<double>(m) + twist) / static_cast<double>(nc);
    const Index dim = 2 * lx;
    Matrix h = Matrix::Zero(dim, dim);
    const auto orb = [](Index ix, Index s) { return 2 * ix + s; };
    for (Index ix = 0; ix < lx; ++ix) {
      // x-bonds: sublattice 0 sees -t, sublattice 1 sees +t
      if (ix + 1 < lx || bc_x != Boundary::open) {
        Index jx = ix + 1;
        double wrap = 1.0;
        if (jx == lx) {
          jx = 0;
          wrap = wrap_sign(bc_x);
        }
        for (Index s = 0; s < 2; ++s) {
          const double amp = -t * (s == 0 ? 1.0 : -1.0) * wrap;
          h(orb(jx, s), orb(ix, s)) += amp;
          h(orb(ix, s), orb(jx, s)) += amp;
        }
      }
      // y-bonds: intra-cell plus momentum-dressed inter-cell coupling
      const Complex inter = -t * std::polar(1.0, -q);
      h(orb(ix, 1), orb(ix, 0)) += Complex(-t, 0.0) + std::conj(inter);
      h(orb(ix, 0), orb(ix, 1)) += Complex(-t, 0.0) + inter;
    }
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(dim));
    for (Index ix = 0; ix < lx; ++ix)
      for (Index s = 0; s < 2; ++s)
        labels.push_back("ky:" + std::to_string(m) + ",x:" + std::to_string(ix) +
                         ",s:" + std::to_string(s));
    Sector sector{q / 2.0, q, SingleParticleHamiltonian(std::move(h), std::move(labels))};
    sectors.push_back(std::move(sector));
  }
  return SectorFamily(lx, ly, std::move(sectors));
}

Region interval_region(Index length, Index start, Index len) {
  if (start < 0 || len < 0 || start + len > length)
    throw ValidationError("interval out of range");
  return Region::interval(start, start + len);
}

Region strip_region(Index lx, Index ly, Index lx_start, Index lx_width) {
  if (lx_start < 0 || lx_width < 0 || lx_start + lx_width > lx)
    throw ValidationError("strip out of range");
  return Region::interval(lx_start * ly, (lx_start + lx_width) * ly);
}

CovarianceMatrix infinite_chain_covariance(Index window, double beta, double t,
                                           Index quadrature_nodes) {
  if (window < 1) throw ValidationError("window must contain at least one site");
  if (!std::isfinite(beta) || beta < 0.0)
    throw ValidationError("inverse temperature must be finite and >= 0");
  if (quadrature_nodes < 64) throw ValidationError("too few quadrature nodes");

  // Periodic trapezoid rule over the Brillouin zone; spectrally accurate for
  // the smooth tanh symbol.
  const Index nk = quadrature_nodes;
  RealVector symbol(nk), k_grid(nk);
  for (Index n = 0; n < nk; ++n) {
    const double k = -kPi + 2.0 * kPi * static_cast<double>(n) / static_cast<double>(nk);
    k_grid[n] = k;
    symbol[n] = std::tanh(beta * t * std::cos(k));
  }
  RealVector toeplitz(window);
  for (Index d = 0; d < window; ++d) {
    double acc = 0.0;
    for (Index n = 0; n < nk; ++n) acc += symbol[n] * std::cos(k_grid[n] * static_cast<double>(d));
    toeplitz[d] = -acc / static_cast<double>(nk);
  }
  Matrix c(window, window);
  for (Index j = 0; j < window; ++j)
    for (Index l = 0; l < window; ++l) c(j, l) = toeplitz[std::abs(j - l)];
  return CovarianceMatrix(std::move(c));
}

}  // namespace epe
