// Command-line driver for projected-entropy scans over fermionic Gaussian
// states. Subcommands: chain-scan, ssh-scan, piflux-scan, toy, fit.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epe/analysis.hpp"
#include "epe/scan.hpp"

namespace {

using epe::Index;
using epe::IoError;
using epe::ValidationError;

const std::map<std::string, epe::Boundary> kBoundaryNames{
    {"periodic", epe::Boundary::periodic},
    {"antiperiodic", epe::Boundary::antiperiodic},
    {"open", epe::Boundary::open}};

const std::map<std::string, epe::OutputFormat> kFormatNames{
    {"csv", epe::OutputFormat::csv}, {"jsonl", epe::OutputFormat::jsonl}};

const std::map<std::string, epe::ChainKernel> kKernelNames{
    {"ring", epe::ChainKernel::ring}, {"integral", epe::ChainKernel::integral}};

template <typename T>
T named_value(const std::map<std::string, T>& names, const std::string& key,
              const std::string& what) {
  const auto it = names.find(key);
  if (it == names.end()) throw ValidationError("unknown " + what + ": " + key);
  return it->second;
}

// JSON config file whose keys mirror the long option names. Options passed on
// the command line win over file values; unknown keys are rejected.
class JsonConfig {
 public:
  JsonConfig() = default;

  void load(const std::string& path, const CLI::App* cmd) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    try {
      data_ = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("malformed config file " + path + ": " + e.what());
    }
    if (!data_.is_object()) throw ValidationError("config file must hold a JSON object");
    cmd_ = cmd;
    active_ = true;
  }

  template <typename T>
  void apply(const std::string& key, T& target) {
    if (!active_ || !data_.contains(key)) return;
    consumed_.insert(key);
    if (cmd_->count("--" + key) > 0) return;  // command line wins
    try {
      target = data_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("config key '" + key + "': " + e.what());
    }
  }

  template <typename T>
  void apply_named(const std::string& key, const std::map<std::string, T>& names, T& target,
                   const std::string& what) {
    std::string value;
    bool present = active_ && data_.contains(key);
    if (!present) return;
    consumed_.insert(key);
    if (cmd_->count("--" + key) > 0) return;
    try {
      value = data_.at(key).get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("config key '" + key + "': " + e.what());
    }
    target = named_value(names, value, what);
  }

  void finish() const {
    if (!active_) return;
    for (const auto& item : data_.items())
      if (consumed_.find(item.key()) == consumed_.end())
        throw ValidationError("unknown config key: " + item.key());
  }

 private:
  nlohmann::json data_;
  const CLI::App* cmd_ = nullptr;
  std::set<std::string> consumed_;
  bool active_ = false;
};

struct OutputOptions {
  std::string out_path;  // empty = stdout
  epe::OutputFormat format = epe::OutputFormat::csv;
};

void add_output_options(CLI::App* cmd, OutputOptions& options, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file; flags override its values");
  cmd->add_option("--out", options.out_path, "output path (default: stdout)");
  cmd->add_option("--format", options.format, "output format")
      ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case));
}

void write_output(const std::string& text, const OutputOptions& options) {
  if (options.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(options.out_path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + options.out_path);
  out << text;
  out.flush();
  if (!out) throw IoError("failed to write output file: " + options.out_path);
}

// ---------------------------------------------------------------------------
// toy tables
// ---------------------------------------------------------------------------

std::string render_toy_table(const std::vector<double>& lambdas, const std::vector<double>& cs,
                             epe::OutputFormat format) {
  std::ostringstream csv;
  std::vector<std::string> header = {"model",      "lambda",     "c",
                                     "epe",        "mi_exact",   "mi_leading",
                                     "epe_over_mi_s"};
  std::vector<std::vector<std::string>> cells;
  for (double lambda : lambdas) {
    for (double c : cs) {
      if (std::abs(lambda + c) > 1.0 || std::abs(lambda - c) > 1.0) continue;
      const double epe_value = epe::toy_pair_epe(lambda, c);
      const double mi_exact = epe::toy_pair_mi_exact(lambda, c);
      const double mi_leading = epe::toy_pair_mi_leading(lambda, c);
      const double s = epe::binary_entropy(lambda);
      const double ratio = mi_exact > 0.0 && s > 0.0 ? epe_value / (mi_exact * s) : 0.0;
      cells.push_back({"toy", epe::format_number(lambda), epe::format_number(c),
                       epe::format_number(epe_value), epe::format_number(mi_exact),
                       epe::format_number(mi_leading), epe::format_number(ratio)});
    }
  }
  if (cells.empty()) throw ValidationError("toy grid contains no physical (lambda, c) pairs");

  if (format == epe::OutputFormat::csv) {
    for (std::size_t i = 0; i < header.size(); ++i) csv << (i ? "," : "") << header[i];
    csv << '\n';
    for (const auto& row : cells) {
      for (std::size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << row[i];
      csv << '\n';
    }
  } else {
    for (const auto& row : cells) {
      nlohmann::ordered_json obj;
      obj[header[0]] = row[0];
      for (std::size_t i = 1; i < header.size(); ++i)
        obj[header[i]] = std::strtod(row[i].c_str(), nullptr);
      csv << obj.dump() << '\n';
    }
  }
  return csv.str();
}

// ---------------------------------------------------------------------------
// fit: ordinary least squares over columns of a scan table
// ---------------------------------------------------------------------------

struct FitOptions {
  std::string in_path;
  std::string x_column;
  std::string y_column = "epe";
  std::string model_filter;
  bool log_x = false;
  double x_min = -std::numeric_limits<double>::infinity();
  double x_max = std::numeric_limits<double>::infinity();
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

epe::FitResult run_fit(const FitOptions& options) {
  std::ifstream in(options.in_path);
  if (!in) throw IoError("cannot open input file: " + options.in_path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("input file has no header row");
  const std::vector<std::string> header = split_csv_line(line);

  const auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  };
  const auto x_col = column(options.x_column);
  const auto y_col = column(options.y_column);
  if (!x_col) throw ValidationError("no column named '" + options.x_column + "'");
  if (!y_col) throw ValidationError("no column named '" + options.y_column + "'");
  std::optional<std::size_t> model_col = column("model");
  if (!options.model_filter.empty() && !model_col)
    throw ValidationError("--model given but the table has no model column");

  std::vector<epe::PointXY> points;
  std::size_t skipped = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw ValidationError("malformed row: " + line);
    if (!options.model_filter.empty() && fields[*model_col] != options.model_filter) continue;
    char* end = nullptr;
    double x = std::strtod(fields[*x_col].c_str(), &end);
    const double y = std::strtod(fields[*y_col].c_str(), nullptr);
    if (!std::isfinite(x) || !std::isfinite(y)) {
      ++skipped;
      continue;
    }
    if (x < options.x_min || x > options.x_max) continue;
    if (options.log_x) {
      if (!(x > 0.0)) {
        ++skipped;
        continue;
      }
      x = std::log(x);
    }
    points.push_back({x, y});
  }
  if (skipped > 0)
    std::cerr << "fit: skipped " << skipped << " rows with non-finite or non-positive values\n";
  return epe::fit_line(points, -std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity());
}

std::string render_fit(const epe::FitResult& fit, epe::OutputFormat format) {
  if (format == epe::OutputFormat::csv) {
    std::ostringstream out;
    out << "slope,intercept,r_squared,n_points,x_min,x_max\n"
        << epe::format_number(fit.slope) << ',' << epe::format_number(fit.intercept) << ','
        << epe::format_number(fit.r_squared) << ',' << fit.n_points << ','
        << epe::format_number(fit.window_min) << ',' << epe::format_number(fit.window_max)
        << '\n';
    return out.str();
  }
  nlohmann::ordered_json obj;
  obj["slope"] = fit.slope;
  obj["intercept"] = fit.intercept;
  obj["r_squared"] = fit.r_squared;
  obj["n_points"] = fit.n_points;
  obj["x_min"] = fit.window_min;
  obj["x_max"] = fit.window_max;
  return obj.dump() + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projected-entropy scans for mixed fermionic Gaussian states"};
  app.require_subcommand(1);

  // --- chain-scan -----------------------------------------------------------
  epe::ChainScanConfig chain;
  OutputOptions chain_out;
  std::string chain_config;
  CLI::App* chain_cmd =
      app.add_subcommand("chain-scan", "1D chain: EPE and vNE vs interval size");
  chain_cmd->add_option("--length", chain.sites, "chain length in sites");
  chain_cmd->add_option("--hopping", chain.t, "hopping amplitude t");
  chain_cmd->add_option("--bc", chain.bc, "boundary condition")
      ->transform(CLI::CheckedTransformer(kBoundaryNames, CLI::ignore_case));
  chain_cmd->add_option("--betas", chain.betas, "inverse temperatures");
  chain_cmd->add_option("--ell-min", chain.ell_min, "smallest interval");
  chain_cmd->add_option("--ell-max", chain.ell_max, "largest interval");
  chain_cmd->add_option("--ell-step", chain.ell_step, "interval stride");
  chain_cmd->add_option("--kernel", chain.kernel, "state kernel: ring or integral")
      ->transform(CLI::CheckedTransformer(kKernelNames, CLI::ignore_case));
  chain_cmd->add_option("--margin", chain.integral_margin,
                        "sites kept on each side of A (integral kernel)");
  chain_cmd->add_option("--nodes", chain.quadrature_nodes,
                        "momentum quadrature nodes (integral kernel)");
  chain_cmd->add_option("--tau", chain.tau, "purity cutoff on 1 - lambda^2");
  chain_cmd->add_option("--threads", chain.threads, "parallel width (0 = machine)");
  add_output_options(chain_cmd, chain_out, chain_config);
  chain_cmd->callback([&] {
    JsonConfig file;
    if (!chain_config.empty()) {
      file.load(chain_config, chain_cmd);
      file.apply("length", chain.sites);
      file.apply("hopping", chain.t);
      file.apply_named("bc", kBoundaryNames, chain.bc, "boundary condition");
      file.apply("betas", chain.betas);
      file.apply("ell-min", chain.ell_min);
      file.apply("ell-max", chain.ell_max);
      file.apply("ell-step", chain.ell_step);
      file.apply_named("kernel", kKernelNames, chain.kernel, "kernel");
      file.apply("margin", chain.integral_margin);
      file.apply("nodes", chain.quadrature_nodes);
      file.apply("tau", chain.tau);
      file.apply("threads", chain.threads);
      file.apply("out", chain_out.out_path);
      file.apply_named("format", kFormatNames, chain_out.format, "format");
      file.finish();
    }
    write_output(epe::render_chain_table(epe::run_chain_scan(chain), chain_out.format),
                 chain_out);
  });

  // --- ssh-scan --------------------------------------------------------------
  epe::SshScanConfig ssh;
  OutputOptions ssh_out;
  std::string ssh_config;
  CLI::App* ssh_cmd =
      app.add_subcommand("ssh-scan", "SSH chain: half-chain EPE and I/2 vs T, t2/t1");
  ssh_cmd->add_option("--cells", ssh.cells, "unit cells (two sites each)");
  ssh_cmd->add_option("--t1", ssh.t1, "intra-cell hopping");
  ssh_cmd->add_option("--ratios", ssh.ratios, "t2/t1 values");
  ssh_cmd->add_option("--temperatures", ssh.temperatures, "temperatures");
  ssh_cmd->add_option("--tau", ssh.tau, "purity cutoff on 1 - lambda^2");
  ssh_cmd->add_option("--threads", ssh.threads, "parallel width (0 = machine)");
  add_output_options(ssh_cmd, ssh_out, ssh_config);
  ssh_cmd->callback([&] {
    JsonConfig file;
    if (!ssh_config.empty()) {
      file.load(ssh_config, ssh_cmd);
      file.apply("cells", ssh.cells);
      file.apply("t1", ssh.t1);
      file.apply("ratios", ssh.ratios);
      file.apply("temperatures", ssh.temperatures);
      file.apply("tau", ssh.tau);
      file.apply("threads", ssh.threads);
      file.apply("out", ssh_out.out_path);
      file.apply_named("format", kFormatNames, ssh_out.format, "format");
      file.finish();
    }
    write_output(epe::render_ssh_table(epe::run_ssh_scan(ssh), ssh_out.format), ssh_out);
  });

  // --- piflux-scan -----------------------------------------------------------
  epe::PiFluxScanConfig piflux;
  OutputOptions piflux_out;
  std::string piflux_config;
  CLI::App* piflux_cmd = app.add_subcommand(
      "piflux-scan", "pi-flux torus: strip EPE density and scaling collapse");
  piflux_cmd->add_option("--lx", piflux.lx, "torus length along x");
  piflux_cmd->add_option("--ly", piflux.ly, "torus length along y (even)");
  piflux_cmd->add_option("--hopping", piflux.t, "hopping amplitude t");
  piflux_cmd->add_option("--bc-x", piflux.bc_x, "x boundary condition")
      ->transform(CLI::CheckedTransformer(kBoundaryNames, CLI::ignore_case));
  piflux_cmd->add_option("--bc-y", piflux.bc_y, "y boundary condition")
      ->transform(CLI::CheckedTransformer(kBoundaryNames, CLI::ignore_case));
  piflux_cmd->add_option("--betas", piflux.betas, "inverse temperatures");
  piflux_cmd->add_option("--widths", piflux.widths, "strip widths ell_x");
  piflux_cmd->add_flag("--full-matrix", piflux.full_matrix,
                       "dense whole-lattice path (small lattices only)");
  piflux_cmd->add_option("--tau", piflux.tau, "purity cutoff on 1 - lambda^2");
  piflux_cmd->add_option("--threads", piflux.threads, "parallel width (0 = machine)");
  add_output_options(piflux_cmd, piflux_out, piflux_config);
  piflux_cmd->callback([&] {
    JsonConfig file;
    if (!piflux_config.empty()) {
      file.load(piflux_config, piflux_cmd);
      file.apply("lx", piflux.lx);
      file.apply("ly", piflux.ly);
      file.apply("hopping", piflux.t);
      file.apply_named("bc-x", kBoundaryNames, piflux.bc_x, "boundary condition");
      file.apply_named("bc-y", kBoundaryNames, piflux.bc_y, "boundary condition");
      file.apply("betas", piflux.betas);
      file.apply("widths", piflux.widths);
      file.apply("full-matrix", piflux.full_matrix);
      file.apply("tau", piflux.tau);
      file.apply("threads", piflux.threads);
      file.apply("out", piflux_out.out_path);
      file.apply_named("format", kFormatNames, piflux_out.format, "format");
      file.finish();
    }
    write_output(epe::render_piflux_table(epe::run_piflux_scan(piflux), piflux_out.format),
                 piflux_out);
  });

  // --- toy -------------------------------------------------------------------
  std::vector<double> toy_lambdas = {0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<double> toy_cs = {0.01, 0.02, 0.05, 0.1};
  OutputOptions toy_out;
  std::string toy_config;
  CLI::App* toy_cmd =
      app.add_subcommand("toy", "two-mode toy pair: closed-form EPE and mutual information");
  toy_cmd->add_option("--lambdas", toy_lambdas, "covariance eigenvalue lambda grid");
  toy_cmd->add_option("--cs", toy_cs, "cross-correlation c grid");
  add_output_options(toy_cmd, toy_out, toy_config);
  toy_cmd->callback([&] {
    JsonConfig file;
    if (!toy_config.empty()) {
      file.load(toy_config, toy_cmd);
      file.apply("lambdas", toy_lambdas);
      file.apply("cs", toy_cs);
      file.apply("out", toy_out.out_path);
      file.apply_named("format", kFormatNames, toy_out.format, "format");
      file.finish();
    }
    write_output(render_toy_table(toy_lambdas, toy_cs, toy_out.format), toy_out);
  });

  // --- fit -------------------------------------------------------------------
  FitOptions fit;
  OutputOptions fit_out;
  std::string fit_config;
  CLI::App* fit_cmd = app.add_subcommand("fit", "least-squares line over scan-table columns");
  fit_cmd->add_option("--in", fit.in_path, "input table (csv)")->required();
  fit_cmd->add_option("--x", fit.x_column, "x column name")->required();
  fit_cmd->add_option("--y", fit.y_column, "y column name");
  fit_cmd->add_flag("--log-x", fit.log_x, "fit against ln(x)");
  fit_cmd->add_option("--xmin", fit.x_min, "window lower bound on the raw x column");
  fit_cmd->add_option("--xmax", fit.x_max, "window upper bound on the raw x column");
  fit_cmd->add_option("--model", fit.model_filter, "keep only rows with this model tag");
  add_output_options(fit_cmd, fit_out, fit_config);
  fit_cmd->callback([&] {
    JsonConfig file;
    if (!fit_config.empty()) {
      file.load(fit_config, fit_cmd);
      file.apply("in", fit.in_path);
      file.apply("x", fit.x_column);
      file.apply("y", fit.y_column);
      file.apply("log-x", fit.log_x);
      file.apply("xmin", fit.x_min);
      file.apply("xmax", fit.x_max);
      file.apply("model", fit.model_filter);
      file.apply("out", fit_out.out_path);
      file.apply_named("format", kFormatNames, fit_out.format, "format");
      file.finish();
    }
    write_output(render_fit(run_fit(fit), fit_out.format), fit_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const epe::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
