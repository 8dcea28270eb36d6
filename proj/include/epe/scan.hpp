#pragma once

#include <string>
#include <vector>

#include "epe/analysis.hpp"
#include "epe/lattice.hpp"

namespace epe {

enum class OutputFormat { csv, jsonl };

/// Kernel used for the 1D chain state: a large finite ring (default) or the
/// quadrature-evaluated infinite-line kernel truncated to a window.
enum class ChainKernel { ring, integral };

struct ChainScanConfig {
  Index sites = 1024;
  double t = 1.0;
  Boundary bc = Boundary::antiperiodic;
  std::vector<double> betas = {8.0, 16.0, 32.0, 64.0};
  Index ell_min = 8;
  Index ell_max = 256;
  Index ell_step = 8;
  ChainKernel kernel = ChainKernel::ring;
  Index integral_margin = 256;     // sites kept on each side of A in integral mode
  Index quadrature_nodes = 16384;  // momentum grid of the integral kernel
  double tau = kDefaultTau;
  int threads = 0;  // 0 = machine parallelism
};

struct ChainScanRow {
  double beta = 0.0;
  Index ell = 0;
  double epe = 0.0;
  double vne = 0.0;
  double l_eff = 0.0;
};

std::vector<ChainScanRow> run_chain_scan(const ChainScanConfig& config);

struct SshScanConfig {
  Index cells = 60;  // 120 sites
  double t1 = 1.0;
  std::vector<double> ratios = {0.5, 0.8, 1.2, 1.5, 2.0, 2.5, 3.0};  // t2 / t1
  std::vector<double> temperatures = {0.05, 0.1, 0.2, 0.4};
  double tau = kDefaultTau;
  int threads = 0;
};

struct SshScanRow {
  double temperature = 0.0;
  double ratio = 0.0;
  double epe = 0.0;      // half-chain projected entropy
  double half_mi = 0.0;  // I / 2 for the same bipartition
};

std::vector<SshScanRow> run_ssh_scan(const SshScanConfig& config);

struct PiFluxScanConfig {
  Index lx = 200;
  Index ly = 100;
  double t = 1.0;
  Boundary bc_x = Boundary::periodic;
  Boundary bc_y = Boundary::antiperiodic;
  std::vector<double> betas = {4.0, 8.0, 16.0};
  // Strips narrower than 4 sites resolve lattice-scale physics and fall off
  // the infrared collapse; the default grid starts above that.
  std::vector<Index> widths = {4, 5, 6, 7, 8, 10, 12, 16, 25, 40, 70, 100};
  bool full_matrix = false;  // small-lattice oracle path
  double tau = kDefaultTau;
  int threads = 0;
};

struct PiFluxScanRow {
  double beta = 0.0;
  Index ell_x = 0;
  double epe_density = 0.0;  // E / N_cut, N_cut = 2 ly
  double inv_l_dirac = 0.0;
  double collapse_ordinate = 0.0;  // epsilon - epe_density
};

struct PiFluxScanResult {
  double epsilon = 0.0;  // ground-state area-law calibration
  std::vector<PiFluxScanRow> rows;
};

PiFluxScanResult run_piflux_scan(const PiFluxScanConfig& config);

std::vector<ScanRecord> to_records(const std::vector<ChainScanRow>& rows);
std::vector<ScanRecord> to_records(const std::vector<SshScanRow>& rows, Index cells);
std::vector<ScanRecord> to_records(const PiFluxScanResult& result);

/// Fixed-format number rendering used by every table writer (12 significant
/// digits, so equal configs produce byte-identical output).
std::string format_number(double value);

std::string render_chain_table(const std::vector<ChainScanRow>& rows, OutputFormat format);
std::string render_ssh_table(const std::vector<SshScanRow>& rows, OutputFormat format);
std::string render_piflux_table(const PiFluxScanResult& result, OutputFormat format);

}  // namespace epe
