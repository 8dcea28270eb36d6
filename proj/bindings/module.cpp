// Python bindings for the projected-entropy toolkit. Matrices cross the
// boundary as numpy arrays; regions as lists of mode indices.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epe/analysis.hpp"
#include "epe/channels.hpp"
#include "epe/purification.hpp"
#include "epe/scan.hpp"

namespace py = pybind11;

namespace {

using epe::CovarianceMatrix;
using epe::Index;
using epe::Matrix;
using epe::Region;

Region make_region(const std::vector<Index>& indices) { return Region(indices); }

CovarianceMatrix make_cov(const Matrix& entries) { return CovarianceMatrix(entries); }

epe::Boundary boundary_from_name(const std::string& name) {
  if (name == "periodic") return epe::Boundary::periodic;
  if (name == "antiperiodic") return epe::Boundary::antiperiodic;
  if (name == "open") return epe::Boundary::open;
  throw epe::ValidationError("unknown boundary condition: " + name);
}

py::dict fit_to_dict(const epe::FitResult& fit) {
  py::dict out;
  out["slope"] = fit.slope;
  out["intercept"] = fit.intercept;
  out["r_squared"] = fit.r_squared;
  out["n_points"] = fit.n_points;
  out["x_min"] = fit.window_min;
  out["x_max"] = fit.window_max;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entanglement projected entropy for mixed fermionic Gaussian states";

  py::register_exception<epe::ValidationError>(m, "EpeValidationError", PyExc_ValueError);
  py::register_exception<epe::NumericalError>(m, "EpeNumericalError", PyExc_ArithmeticError);

  m.def("binary_entropy", &epe::binary_entropy, py::arg("lam"),
        "Per-mode entropy s(lambda) in nats.");

  m.def(
      "thermal_covariance",
      [](const Matrix& h, double beta, double mu) {
        return epe::build_thermal_covariance(epe::SingleParticleHamiltonian(h), beta, mu)
            .entries();
      },
      py::arg("h"), py::arg("beta"), py::arg("mu") = 0.0,
      "Covariance -tanh(beta (h - mu)/2) of the grand-canonical Gaussian state.");

  m.def(
      "ground_state_covariance",
      [](const Matrix& h, Index n_filled, double degeneracy_tol) {
        return epe::ground_state_covariance(epe::SingleParticleHamiltonian(h), n_filled,
                                            degeneracy_tol)
            .entries();
      },
      py::arg("h"), py::arg("n_filled"), py::arg("degeneracy_tol") = 1e-10,
      "Pure covariance with the lowest n_filled orbitals occupied.");

  m.def(
      "von_neumann_entropy",
      [](const Matrix& c, const std::vector<Index>& a) {
        return epe::von_neumann_entropy(make_cov(c), make_region(a));
      },
      py::arg("c"), py::arg("a"), "Gaussian entropy of the region, nats.");

  m.def(
      "epe",
      [](const Matrix& c, const std::vector<Index>& a, const std::vector<Index>& b,
         double tau) { return epe::epe_trace(make_cov(c), make_region(a), make_region(b), tau); },
      py::arg("c"), py::arg("a"), py::arg("b"), py::arg("tau") = epe::kDefaultTau,
      "Projected entropy E_B(A) from the closed trace form, nats.");

  m.def(
      "channel_data",
      [](const Matrix& c, const std::vector<Index>& a, const std::vector<Index>& b,
         double tau) {
        const CovarianceMatrix cov = make_cov(c);
        const Region ra = make_region(a);
        epe::ChannelSet channels =
            epe::channel_weights(cov, ra, make_region(b), epe::channel_decomposition(cov, ra, tau));
        return py::make_tuple(channels.lambdas, channels.weights, channels.entropies);
      },
      py::arg("c"), py::arg("a"), py::arg("b"), py::arg("tau") = epe::kDefaultTau,
      "Per-channel (lambdas, weights, entropies) of the decomposition of C_A.");

  m.def(
      "mutual_information",
      [](const Matrix& c, const std::vector<Index>& a, const std::vector<Index>& b) {
        return epe::mutual_information(make_cov(c), make_region(a), make_region(b));
      },
      py::arg("c"), py::arg("a"), py::arg("b"), "I = S(A) + S(B) - S(A+B), nats.");

  m.def(
      "purification",
      [](const Matrix& c) { return epe::build_purification(make_cov(c)).extended().entries(); },
      py::arg("c"), "Extended pure covariance on system (+) ancilla.");

  m.def(
      "oracle_weights",
      [](const Matrix& c, const std::vector<Index>& a, const std::vector<Index>& b,
         double tau) {
        const epe::ChannelSet channels =
            epe::oracle_weights(epe::build_purification(make_cov(c)), make_region(a),
                                make_region(b), tau);
        return py::make_tuple(channels.lambdas, channels.weights);
      },
      py::arg("c"), py::arg("a"), py::arg("b"), py::arg("tau") = epe::kDefaultTau,
      "Channel weights from the explicit purification (brute-force oracle).");

  m.def(
      "chain_hamiltonian",
      [](Index sites, double t, const std::string& bc) {
        return epe::chain_1d(sites, t, boundary_from_name(bc)).entries();
      },
      py::arg("sites"), py::arg("t") = 1.0, py::arg("bc") = "antiperiodic");

  m.def(
      "ssh_hamiltonian",
      [](Index cells, double t1, double t2) { return epe::ssh_chain(cells, t1, t2).entries(); },
      py::arg("cells"), py::arg("t1"), py::arg("t2"));

  m.def(
      "pi_flux_hamiltonian",
      [](Index lx, Index ly, double t, const std::string& bc_x, const std::string& bc_y) {
        return epe::pi_flux(lx, ly, t, boundary_from_name(bc_x), boundary_from_name(bc_y))
            .entries();
      },
      py::arg("lx"), py::arg("ly"), py::arg("t") = 1.0, py::arg("bc_x") = "periodic",
      py::arg("bc_y") = "antiperiodic");

  m.def("interval_region", &epe::interval_region, py::arg("length"), py::arg("start"),
        py::arg("len"), "Indices of a contiguous interval.");
  m.def(
      "strip_region",
      [](Index lx, Index ly, Index x0, Index width) {
        return epe::strip_region(lx, ly, x0, width).indices();
      },
      py::arg("lx"), py::arg("ly"), py::arg("lx_start"), py::arg("lx_width"),
      "Site indices of a vertical strip of the lx x ly lattice.");

  m.def("conformal_length", &epe::conformal_length, py::arg("ell"), py::arg("beta"),
        py::arg("v_f"));
  m.def("dirac_length", &epe::dirac_length, py::arg("ell_x"), py::arg("beta"), py::arg("v_f"));
  m.def("cft_epe_prediction", &epe::cft_epe_prediction, py::arg("ell"), py::arg("beta"),
        py::arg("v_f"), py::arg("central_charge"), py::arg("cutoff"), py::arg("constant"));
  m.def("toy_pair_epe", &epe::toy_pair_epe, py::arg("lam"), py::arg("c"));
  m.def("toy_pair_mi_leading", &epe::toy_pair_mi_leading, py::arg("lam"), py::arg("c"));
  m.def("toy_pair_mi_exact", &epe::toy_pair_mi_exact, py::arg("lam"), py::arg("c"));

  m.def(
      "fit_line",
      [](const std::vector<double>& x, const std::vector<double>& y, double window_min,
         double window_max) {
        if (x.size() != y.size())
          throw epe::ValidationError("x and y must have the same length");
        std::vector<epe::PointXY> points(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) points[i] = {x[i], y[i]};
        return fit_to_dict(epe::fit_line(points, window_min, window_max));
      },
      py::arg("x"), py::arg("y"),
      py::arg("window_min") = -std::numeric_limits<double>::infinity(),
      py::arg("window_max") = std::numeric_limits<double>::infinity(),
      "Ordinary least-squares line fit over the window.");

  m.def(
      "chain_scan",
      [](Index sites, double t, const std::string& bc, const std::vector<double>& betas,
         Index ell_min, Index ell_max, Index ell_step, double tau, int threads) {
        epe::ChainScanConfig config;
        config.sites = sites;
        config.t = t;
        config.bc = boundary_from_name(bc);
        config.betas = betas;
        config.ell_min = ell_min;
        config.ell_max = ell_max;
        config.ell_step = ell_step;
        config.tau = tau;
        config.threads = threads;
        py::list rows;
        for (const epe::ChainScanRow& r : epe::run_chain_scan(config)) {
          py::dict row;
          row["beta"] = r.beta;
          row["ell"] = r.ell;
          row["epe"] = r.epe;
          row["vne"] = r.vne;
          row["l_eff"] = r.l_eff;
          rows.append(row);
        }
        return rows;
      },
      py::arg("sites") = 1024, py::arg("t") = 1.0, py::arg("bc") = "antiperiodic",
      py::arg("betas") = std::vector<double>{8.0, 16.0, 32.0, 64.0}, py::arg("ell_min") = 8,
      py::arg("ell_max") = 256, py::arg("ell_step") = 8, py::arg("tau") = epe::kDefaultTau,
      py::arg("threads") = 0, "1D chain scan; one dict per (beta, ell) grid point.");

  m.def(
      "piflux_scan",
      [](Index lx, Index ly, double t, const std::vector<double>& betas,
         const std::vector<Index>& widths, double tau, int threads) {
        epe::PiFluxScanConfig config;
        config.lx = lx;
        config.ly = ly;
        config.t = t;
        config.betas = betas;
        config.widths = widths;
        config.tau = tau;
        config.threads = threads;
        const epe::PiFluxScanResult result = epe::run_piflux_scan(config);
        py::list rows;
        for (const epe::PiFluxScanRow& r : result.rows) {
          py::dict row;
          row["beta"] = r.beta;
          row["ell_x"] = r.ell_x;
          row["epe_density"] = r.epe_density;
          row["inv_l_dirac"] = r.inv_l_dirac;
          row["collapse_ordinate"] = r.collapse_ordinate;
          rows.append(row);
        }
        return py::make_tuple(result.epsilon, rows);
      },
      py::arg("lx") = 200, py::arg("ly") = 100, py::arg("t") = 1.0,
      py::arg("betas") = std::vector<double>{4.0, 8.0, 16.0},
      py::arg("widths") = std::vector<Index>{4, 5, 6, 7, 8, 10, 12, 16, 25, 40, 70, 100},
      py::arg("tau") = epe::kDefaultTau, py::arg("threads") = 0,
      "pi-flux strip scan via momentum sectors; returns (epsilon, rows).");

#ifdef EPE_VERSION
  m.attr("__version__") = EPE_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
