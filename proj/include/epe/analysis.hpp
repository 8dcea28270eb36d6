#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epe/covariance.hpp"
#include "epe/lattice.hpp"

namespace epe {

/// Mutual information I = S(A) + S(B) - S(A+B), nats. Tiny negative roundoff
/// (above -1e-9) is clamped to zero.
double mutual_information(const CovarianceMatrix& c, const Region& a, const Region& b);

/// Conformal / infrared length (v_F beta / 2pi)(1 - e^{-2 pi ell / v_F beta});
/// tends to ell for short subsystems and saturates at v_F beta / 2pi.
double conformal_length(double ell, double beta, double v_f);

/// Identical function of (ell_x, beta, v_F); named for the 2D Dirac scaling.
inline double dirac_length(double ell_x, double beta, double v_f) {
  return conformal_length(ell_x, beta, v_f);
}

/// Finite-temperature CFT form (c/3) ln[L_eff / a] + constant.
double cft_epe_prediction(double ell, double beta, double v_f, double central_charge,
                          double cutoff, double constant);

/// Large-ell plateau (c/3) ln[v_F beta / (2 pi a)] + constant.
double cft_epe_plateau(double beta, double v_f, double central_charge, double cutoff,
                       double constant);

/// Two-mode toy block [[lambda, c], [c, lambda]]: directional weight
/// w = c^2 / (1 - lambda^2). Requires |lambda| < 1 and |lambda +- c| <= 1.
double toy_pair_weight(double lambda, double c);

/// Projected entropy of the toy pair, w * s(lambda).
double toy_pair_epe(double lambda, double c);

/// Leading-order mutual information of the toy pair, c^2 / (1 - lambda^2).
double toy_pair_mi_leading(double lambda, double c);

/// Exact mutual information 2 s(lambda) - s(lambda + c) - s(lambda - c).
double toy_pair_mi_exact(double lambda, double c);

struct PointXY {
  double x = 0.0;
  double y = 0.0;
};

/// Ordinary least-squares line fit.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
  double window_min = 0.0;
  double window_max = 0.0;
};

/// Fits y = slope * x + intercept over the points with x in
/// [window_min, window_max]. Needs at least 3 points and non-degenerate x.
FitResult fit_line(const std::vector<PointXY>& points, double window_min, double window_max);

/// One scan observation: (model, beta, ell, quantity) -> value, with the
/// derived scaling length (L_eff or L_Dirac) where applicable.
struct ScanRecord {
  std::string model;
  double beta = 0.0;
  double ell = 0.0;
  std::string quantity;  // epe | vne | mi | epe_density
  double value = 0.0;
  std::optional<double> scaling_length;
};

/// Ground-state projected-entropy density E / N_cut of the pi-flux strip for
/// each requested width, computed sector by sector.
std::vector<double> ground_state_epe_density(const PiFluxSpec& spec,
                                             const std::vector<Index>& widths,
                                             double tau = kDefaultTau, int threads = 1);

struct AreaLawResult {
  double epsilon = 0.0;  // nats per unit cut length
  FitResult fit;
  std::vector<Index> widths;
  std::vector<double> densities;
};

/// Strip widths used for the area-law calibration: eight integers spanning
/// [lx/8, lx/3], widened toward [1, lx/2] on lattices too small for that
/// window to hold three distinct values.
std::vector<Index> area_law_widths(Index lx);

/// Area-law coefficient per unit cut length, extracted as the 1/ell_x -> 0
/// intercept of the ground-state EPE density over widths in [lx/8, lx/3].
AreaLawResult area_law_coefficient(const LatticeSpec& spec, double tau = kDefaultTau,
                                   int threads = 1);

/// Collapse coordinates (1 / L_Dirac, epsilon - density) from pi-flux scan
/// records carrying quantity "epe_density". Throws on mixed record sets.
std::vector<PointXY> collapse_dataset(const std::vector<ScanRecord>& records, double epsilon);

}  // namespace epe
