#include "epe/scan.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "epe/channels.hpp"
#include "epe/parallel.hpp"

namespace epe {

namespace {

using OrderedJson = nlohmann::ordered_json;

// Dense-matrix fallbacks are only allowed up to this many modes.
constexpr Index kFullMatrixModeLimit = 4096;

void require_positive_betas(const std::vector<double>& betas) {
  if (betas.empty()) throw ValidationError("beta list must not be empty");
  for (double beta : betas)
    if (!std::isfinite(beta) || !(beta > 0.0))
      throw ValidationError("scan betas must be finite and > 0");
}

Index count_negative(const RealVector& energies) {
  Index count = 0;
  for (Index k = 0; k < energies.size(); ++k)
    if (energies[k] < 0.0) ++count;
  return count;
}

CovarianceMatrix thermal_from_eigensystem(const EigenSystem& es, double beta) {
  RealVector occ(es.values.size());
  for (Index k = 0; k < es.values.size(); ++k) occ[k] = -std::tanh(0.5 * beta * es.values[k]);
  Matrix c = es.vectors * occ.asDiagonal() * es.vectors.adjoint();
  c = Complex(0.5, 0.0) * (c + Matrix(c.adjoint()));
  return CovarianceMatrix(std::move(c));
}

}  // namespace

std::vector<ChainScanRow> run_chain_scan(const ChainScanConfig& config) {
  if (config.sites < 2) throw ValidationError("chain scan needs at least 2 sites");
  if (!(config.t > 0.0)) throw ValidationError("chain scan requires hopping t > 0");
  require_positive_betas(config.betas);
  if (config.ell_min < 1 || config.ell_step < 1 || config.ell_max < config.ell_min)
    throw ValidationError("invalid ell grid");
  if (config.kernel == ChainKernel::ring && config.ell_max >= config.sites)
    throw ValidationError("ell_max must leave a nonempty complement on the ring");
  if (config.kernel == ChainKernel::integral && config.integral_margin < 1)
    throw ValidationError("integral kernel needs a positive margin");

  std::vector<Index> ells;
  for (Index ell = config.ell_min; ell <= config.ell_max; ell += config.ell_step)
    ells.push_back(ell);
  const double v_f = 2.0 * config.t;

  std::vector<ChainScanRow> rows(config.betas.size() * ells.size());

  if (config.kernel == ChainKernel::ring) {
    const SingleParticleHamiltonian h = chain_1d(config.sites, config.t, config.bc);
    const EigenSystem es = hermitian_eigensystem(h.entries());
    std::vector<CovarianceMatrix> states;
    states.reserve(config.betas.size());
    for (double beta : config.betas) states.push_back(thermal_from_eigensystem(es, beta));

    parallel_for(rows.size(), config.threads, [&](std::size_t i) {
      const std::size_t ib = i / ells.size();
      const Index ell = ells[i % ells.size()];
      const double beta = config.betas[ib];
      const CovarianceMatrix& c = states[ib];
      const Region a = interval_region(config.sites, 0, ell);
      const Region b = a.complement_in(config.sites);
      rows[i] = {beta, ell, epe_trace(c, a, b, config.tau), von_neumann_entropy(c, a),
                 conformal_length(static_cast<double>(ell), beta, v_f)};
    });
  } else {
    parallel_for(rows.size(), config.threads, [&](std::size_t i) {
      const std::size_t ib = i / ells.size();
      const Index ell = ells[i % ells.size()];
      const double beta = config.betas[ib];
      const Index window = ell + 2 * config.integral_margin;
      const CovarianceMatrix c =
          infinite_chain_covariance(window, beta, config.t, config.quadrature_nodes);
      const Region a = interval_region(window, config.integral_margin, ell);
      const Region b = a.complement_in(window);
      rows[i] = {beta, ell, epe_trace(c, a, b, config.tau), von_neumann_entropy(c, a),
                 conformal_length(static_cast<double>(ell), beta, v_f)};
    });
  }
  return rows;
}

std::vector<SshScanRow> run_ssh_scan(const SshScanConfig& config) {
  if (config.cells < 2) throw ValidationError("SSH scan needs at least 2 cells");
  if (!(config.t1 > 0.0)) throw ValidationError("SSH scan requires t1 > 0");
  if (config.ratios.empty() || config.temperatures.empty())
    throw ValidationError("SSH scan needs nonempty ratio and temperature lists");
  for (double r : config.ratios)
    if (!(r > 0.0)) throw ValidationError("SSH ratios must be > 0");
  for (double temp : config.temperatures)
    if (!(temp > 0.0)) throw ValidationError("SSH temperatures must be > 0");

  const Index sites = 2 * config.cells;
  const Region a = interval_region(sites, 0, sites / 2);
  std::vector<SshScanRow> rows(config.temperatures.size() * config.ratios.size());
  parallel_for(rows.size(), config.threads, [&](std::size_t i) {
    const double temp = config.temperatures[i / config.ratios.size()];
    const double ratio = config.ratios[i % config.ratios.size()];
    const SingleParticleHamiltonian h = ssh_chain(config.cells, config.t1, ratio * config.t1);
    const CovarianceMatrix c = build_thermal_covariance(h, 1.0 / temp);
    const Region b = a.complement_in(sites);
    rows[i] = {temp, ratio, epe_trace(c, a, b, config.tau),
               0.5 * mutual_information(c, a, b)};
  });
  return rows;
}

PiFluxScanResult run_piflux_scan(const PiFluxScanConfig& config) {
  if (config.lx < 2 || config.ly < 2) throw ValidationError("pi-flux scan needs lx, ly >= 2");
  if (config.ly % 2 != 0) throw ValidationError("pi-flux scan requires even ly");
  if (!(config.t > 0.0)) throw ValidationError("pi-flux scan requires t > 0");
  require_positive_betas(config.betas);
  if (config.widths.empty()) throw ValidationError("pi-flux scan needs a strip-width grid");
  for (Index w : config.widths)
    if (w < 1 || w >= config.lx)
      throw ValidationError("strip widths must lie in [1, lx)");
  if (config.full_matrix && config.lx * config.ly > kFullMatrixModeLimit)
    throw ValidationError("full-matrix path is limited to " +
                          std::to_string(kFullMatrixModeLimit) +
                          " modes; use the sector decomposition");

  const double v_f = 2.0 * config.t;
  const double n_cut = 2.0 * static_cast<double>(config.ly);
  const PiFluxSpec spec{config.lx, config.ly, config.t, config.bc_x, config.bc_y};

  PiFluxScanResult result;
  std::vector<double> densities(config.betas.size() * config.widths.size(), 0.0);

  if (config.full_matrix) {
    const SingleParticleHamiltonian h =
        pi_flux(config.lx, config.ly, config.t, config.bc_x, config.bc_y);
    const EigenSystem es = hermitian_eigensystem(h.entries());
    // Ground-state calibration through the same dense path.
    {
      const AreaLawResult area = [&] {
        AreaLawResult res;
        res.widths = area_law_widths(config.lx);
        const CovarianceMatrix gs = ground_state_covariance(h, count_negative(es.values));
        std::vector<PointXY> points;
        for (Index w : res.widths) {
          const Region a = strip_region(config.lx, config.ly, 0, w);
          const Region b = a.complement_in(gs.dim());
          const double density = epe_trace(gs, a, b, config.tau) / n_cut;
          res.densities.push_back(density);
          points.push_back({1.0 / static_cast<double>(w), density});
        }
        res.fit = fit_line(points, 0.0, 1.0);
        res.epsilon = res.fit.intercept;
        return res;
      }();
      result.epsilon = area.epsilon;
    }
    parallel_for(densities.size(), config.threads, [&](std::size_t i) {
      const double beta = config.betas[i / config.widths.size()];
      const Index width = config.widths[i % config.widths.size()];
      const CovarianceMatrix c = thermal_from_eigensystem(es, beta);
      const Region a = strip_region(config.lx, config.ly, 0, width);
      const Region b = a.complement_in(c.dim());
      densities[i] = epe_trace(c, a, b, config.tau) / n_cut;
    });
  } else {
    result.epsilon = area_law_coefficient(spec, config.tau, config.threads).epsilon;
    const SectorFamily family =
        pi_flux_sectors(config.lx, config.ly, config.t, config.bc_x, config.bc_y);
    const std::size_t n_sectors = family.sectors().size();
    const std::size_t n_points = densities.size();
    std::vector<double> per_sector(n_sectors * n_points, 0.0);
    parallel_for(n_sectors, config.threads, [&](std::size_t m) {
      const EigenSystem es = hermitian_eigensystem(family.sectors()[m].hamiltonian.entries());
      for (std::size_t ib = 0; ib < config.betas.size(); ++ib) {
        const CovarianceMatrix c = thermal_from_eigensystem(es, config.betas[ib]);
        for (std::size_t iw = 0; iw < config.widths.size(); ++iw) {
          const Region a = family.sector_strip(0, config.widths[iw]);
          const Region b = a.complement_in(c.dim());
          per_sector[m * n_points + ib * config.widths.size() + iw] =
              epe_trace(c, a, b, config.tau);
        }
      }
    });
    for (std::size_t i = 0; i < n_points; ++i) {
      double total = 0.0;
      for (std::size_t m = 0; m < n_sectors; ++m) total += per_sector[m * n_points + i];
      densities[i] = total / n_cut;
    }
  }

  result.rows.resize(densities.size());
  for (std::size_t i = 0; i < densities.size(); ++i) {
    const double beta = config.betas[i / config.widths.size()];
    const Index width = config.widths[i % config.widths.size()];
    const double l_dirac = dirac_length(static_cast<double>(width), beta, v_f);
    result.rows[i] = {beta, width, densities[i], 1.0 / l_dirac,
                      result.epsilon - densities[i]};
  }
  return result;
}

std::vector<ScanRecord> to_records(const std::vector<ChainScanRow>& rows) {
  std::vector<ScanRecord> records;
  records.reserve(2 * rows.size());
  for (const ChainScanRow& r : rows) {
    records.push_back({"chain", r.beta, static_cast<double>(r.ell), "epe", r.epe, r.l_eff});
    records.push_back({"chain", r.beta, static_cast<double>(r.ell), "vne", r.vne, r.l_eff});
  }
  return records;
}

std::vector<ScanRecord> to_records(const std::vector<SshScanRow>& rows, Index cells) {
  std::vector<ScanRecord> records;
  records.reserve(2 * rows.size());
  for (const SshScanRow& r : rows) {
    const double beta = 1.0 / r.temperature;
    const double ell = static_cast<double>(cells);  // half chain in sites
    records.push_back({"ssh", beta, ell, "epe", r.epe, std::nullopt});
    records.push_back({"ssh", beta, ell, "mi", 2.0 * r.half_mi, std::nullopt});
  }
  return records;
}

std::vector<ScanRecord> to_records(const PiFluxScanResult& result) {
  std::vector<ScanRecord> records;
  records.reserve(result.rows.size());
  for (const PiFluxScanRow& r : result.rows)
    records.push_back({"piflux", r.beta, static_cast<double>(r.ell_x), "epe_density",
                       r.epe_density, 1.0 / r.inv_l_dirac});
  return records;
}

std::string format_number(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

namespace {

std::string render_lines(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& cells,
                         OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i > 0) out << ',';
      out << header[i];
    }
    out << '\n';
    for (const auto& row : cells) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out << ',';
        out << row[i];
      }
      out << '\n';
    }
  } else {
    for (const auto& row : cells) {
      OrderedJson obj;
      for (std::size_t i = 0; i < header.size(); ++i) {
        // Re-parse numeric cells so jsonl carries numbers, not strings.
        if (i == 0) {
          obj[header[i]] = row[i];
        } else {
          obj[header[i]] = std::strtod(row[i].c_str(), nullptr);
        }
      }
      out << obj.dump() << '\n';
    }
  }
  return out.str();
}

}  // namespace

std::string render_chain_table(const std::vector<ChainScanRow>& rows, OutputFormat format) {
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const ChainScanRow& r : rows)
    cells.push_back({"chain", format_number(r.beta), std::to_string(r.ell),
                     format_number(r.epe), format_number(r.vne), format_number(r.l_eff)});
  return render_lines({"model", "beta", "ell", "epe", "vne", "l_eff"}, cells, format);
}

std::string render_ssh_table(const std::vector<SshScanRow>& rows, OutputFormat format) {
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const SshScanRow& r : rows)
    cells.push_back({"ssh", format_number(r.temperature), format_number(r.ratio),
                     format_number(r.epe), format_number(r.half_mi)});
  return render_lines({"model", "temperature", "t2_over_t1", "epe", "half_mi"}, cells, format);
}

std::string render_piflux_table(const PiFluxScanResult& result, OutputFormat format) {
  std::vector<std::vector<std::string>> cells;
  cells.reserve(result.rows.size() + 1);
  // Calibration row first: the zero-temperature area-law density.
  cells.push_back({"piflux_eps", "inf", "0", format_number(result.epsilon), "0", "0"});
  for (const PiFluxScanRow& r : result.rows)
    cells.push_back({"piflux", format_number(r.beta), std::to_string(r.ell_x),
                     format_number(r.epe_density), format_number(r.inv_l_dirac),
                     format_number(r.collapse_ordinate)});
  return render_lines(
      {"model", "beta", "ell_x", "epe_density", "inv_l_dirac", "collapse_ordinate"}, cells,
      format);
}

}  // namespace epe
