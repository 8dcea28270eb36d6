#include "epe/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "epe/channels.hpp"
#include "epe/parallel.hpp"

namespace epe {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_toy_physical(double lambda, double c) {
  if (!(std::abs(lambda) < 1.0))
    throw ValidationError("toy pair requires |lambda| < 1");
  if (std::abs(lambda + c) > 1.0 + 1e-12 || std::abs(lambda - c) > 1.0 + 1e-12)
    throw ValidationError("unphysical toy pair: |lambda +- c| exceeds 1");
}

// Number of occupied orbitals at half filling; rejects a gapless sector.
Index half_filling_count(const RealVector& energies, double degeneracy_tol) {
  Index count = 0;
  for (Index k = 0; k < energies.size(); ++k)
    if (energies[k] < 0.0) ++count;
  if (count == 0 || count == energies.size())
    throw DegeneracyError("half filling impossible: sector spectrum is one-sided");
  const double gap = energies[count] - energies[count - 1];
  if (gap <= degeneracy_tol)
    throw DegeneracyError("degenerate Fermi level in momentum sector (gap " +
                          std::to_string(gap) + "): change boundary conditions");
  return count;
}

}  // namespace

double mutual_information(const CovarianceMatrix& c, const Region& a, const Region& b) {
  require_disjoint(a, b, "mutual information");
  const Region joint = a.disjoint_union(b);
  double value =
      von_neumann_entropy(c, a) + von_neumann_entropy(c, b) - von_neumann_entropy(c, joint);
  if (value < 0.0 && value > -1e-9) value = 0.0;
  return value;
}

double conformal_length(double ell, double beta, double v_f) {
  if (!(ell > 0.0) || !(beta > 0.0) || !(v_f > 0.0))
    throw ValidationError("conformal length requires positive ell, beta, v_F");
  const double theta = v_f * beta / kTwoPi;
  return theta * (-std::expm1(-ell / theta));
}

double cft_epe_prediction(double ell, double beta, double v_f, double central_charge,
                          double cutoff, double constant) {
  if (!(cutoff > 0.0)) throw ValidationError("short-distance cutoff must be positive");
  return central_charge / 3.0 * std::log(conformal_length(ell, beta, v_f) / cutoff) + constant;
}

double cft_epe_plateau(double beta, double v_f, double central_charge, double cutoff,
                       double constant) {
  if (!(beta > 0.0) || !(v_f > 0.0) || !(cutoff > 0.0))
    throw ValidationError("plateau requires positive beta, v_F, cutoff");
  return central_charge / 3.0 * std::log(v_f * beta / (kTwoPi * cutoff)) + constant;
}

double toy_pair_weight(double lambda, double c) {
  require_toy_physical(lambda, c);
  return c * c / (1.0 - lambda * lambda);
}

double toy_pair_epe(double lambda, double c) {
  return toy_pair_weight(lambda, c) * binary_entropy(lambda);
}

double toy_pair_mi_leading(double lambda, double c) { return toy_pair_weight(lambda, c); }

double toy_pair_mi_exact(double lambda, double c) {
  require_toy_physical(lambda, c);
  return 2.0 * binary_entropy(lambda) - binary_entropy(lambda + c) - binary_entropy(lambda - c);
}

FitResult fit_line(const std::vector<PointXY>& points, double window_min, double window_max) {
  std::vector<PointXY> kept;
  for (const PointXY& p : points)
    if (p.x >= window_min && p.x <= window_max) kept.push_back(p);
  if (kept.size() < 3)
    throw ValidationError("line fit needs at least 3 points in the window (got " +
                          std::to_string(kept.size()) + ")");

  double mean_x = 0.0, mean_y = 0.0;
  for (const PointXY& p : kept) {
    mean_x += p.x;
    mean_y += p.y;
  }
  mean_x /= static_cast<double>(kept.size());
  mean_y /= static_cast<double>(kept.size());

  double sxx = 0.0, sxy = 0.0, syy = 0.0, x_lo = kept.front().x, x_hi = kept.front().x;
  for (const PointXY& p : kept) {
    const double dx = p.x - mean_x;
    const double dy = p.y - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
    x_lo = std::min(x_lo, p.x);
    x_hi = std::max(x_hi, p.x);
  }
  const double x_scale = std::max({std::abs(x_lo), std::abs(x_hi), 1e-300});
  if (sxx <= 1e-24 * x_scale * x_scale * static_cast<double>(kept.size()))
    throw ValidationError("line fit is degenerate: x values do not vary");

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  fit.n_points = kept.size();
  fit.window_min = x_lo;
  fit.window_max = x_hi;
  return fit;
}

std::vector<double> ground_state_epe_density(const PiFluxSpec& spec,
                                             const std::vector<Index>& widths, double tau,
                                             int threads) {
  for (Index w : widths)
    if (w < 1 || w >= spec.lx) throw ValidationError("strip width out of range");
  const SectorFamily family = pi_flux_sectors(spec.lx, spec.ly, spec.t, spec.bc_x, spec.bc_y);
  const std::size_t n_sectors = family.sectors().size();
  const std::size_t n_widths = widths.size();

  // per_sector[m * n_widths + iw] = sector EPE at widths[iw]
  std::vector<double> per_sector(n_sectors * n_widths, 0.0);
  parallel_for(n_sectors, threads, [&](std::size_t m) {
    const SingleParticleHamiltonian& h = family.sectors()[m].hamiltonian;
    const EigenSystem es = hermitian_eigensystem(h.entries());
    const Index filled = half_filling_count(es.values, 1e-10);
    const CovarianceMatrix c = ground_state_covariance(h, filled);
    for (std::size_t iw = 0; iw < n_widths; ++iw) {
      const Region a = family.sector_strip(0, widths[iw]);
      const Region b = a.complement_in(c.dim());
      per_sector[m * n_widths + iw] = epe_trace(c, a, b, tau);
    }
  });

  const double n_cut = 2.0 * static_cast<double>(spec.ly);
  std::vector<double> densities(n_widths, 0.0);
  for (std::size_t iw = 0; iw < n_widths; ++iw) {
    double total = 0.0;
    for (std::size_t m = 0; m < n_sectors; ++m) total += per_sector[m * n_widths + iw];
    densities[iw] = total / n_cut;
  }
  return densities;
}

std::vector<Index> area_law_widths(Index lx) {
  Index lo = std::max<Index>(2, lx / 8);
  Index hi = std::max<Index>(lo, lx / 3);
  // Widen the window on lattices where [lx/8, lx/3] holds fewer than three
  // integers; the desk-scale definition is untouched.
  while (hi - lo < 2 && (lo > 1 || hi < lx / 2)) {
    if (hi < lx / 2) ++hi;
    if (hi - lo < 2 && lo > 1) --lo;
  }
  std::vector<Index> widths;
  for (int i = 0; i < 8; ++i) {
    const double frac = static_cast<double>(i) / 7.0;
    const Index w = lo + static_cast<Index>(std::lround(frac * static_cast<double>(hi - lo)));
    if (widths.empty() || w != widths.back()) widths.push_back(w);
  }
  if (widths.size() < 3)
    throw ValidationError("lattice too small to fit the area-law coefficient");
  return widths;
}

AreaLawResult area_law_coefficient(const LatticeSpec& spec, double tau, int threads) {
  const PiFluxSpec* pf = std::get_if<PiFluxSpec>(&spec);
  if (pf == nullptr)
    throw ValidationError("area-law coefficient is defined for the pi-flux model");

  // The universal 1/ell_x term is removed by the fit, so the intercept is the
  // bare area-law density.
  const std::vector<Index> widths = area_law_widths(pf->lx);

  AreaLawResult result;
  result.widths = widths;
  result.densities = ground_state_epe_density(*pf, widths, tau, threads);
  std::vector<PointXY> points;
  points.reserve(widths.size());
  for (std::size_t i = 0; i < widths.size(); ++i)
    points.push_back({1.0 / static_cast<double>(widths[i]), result.densities[i]});
  result.fit = fit_line(points, 0.0, 1.0);
  result.epsilon = result.fit.intercept;
  return result;
}

std::vector<PointXY> collapse_dataset(const std::vector<ScanRecord>& records, double epsilon) {
  std::vector<PointXY> points;
  points.reserve(records.size());
  const std::string* model = nullptr;
  for (const ScanRecord& r : records) {
    if (r.quantity != "epe_density")
      throw ValidationError("collapse dataset expects epe_density records");
    if (model == nullptr)
      model = &r.model;
    else if (r.model != *model)
      throw ValidationError("collapse dataset mixes records from different models");
    if (!r.scaling_length.has_value() || !(*r.scaling_length > 0.0))
      throw ValidationError("collapse dataset needs a positive Dirac length per record");
    points.push_back({1.0 / *r.scaling_length, epsilon - r.value});
  }
  return points;
}

}  // namespace epe
