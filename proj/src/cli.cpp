#include "lineagedist/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "lineagedist/inference.hpp"
#include "lineagedist/lineage_distributions.hpp"
#include "lineagedist/paper_tables.hpp"
#include "lineagedist/simulation.hpp"
#include "lineagedist/tail_analytics.hpp"
#include "lineagedist/util.hpp"

namespace lineagedist {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double mu = std::numeric_limits<double>::quiet_NaN();
  double rho = std::numeric_limits<double>::quiet_NaN();
  double r = std::numeric_limits<double>::quiet_NaN();
  double theta = std::numeric_limits<double>::quiet_NaN();
  std::string method = "exact";
  std::string n_spec;
  std::string p_spec;
  double tau = 0.0;
  bool has_tau = false;
  std::int64_t replicates = 0;
  std::int64_t cap = 100000000;
  std::uint64_t seed = 0;
  bool has_seed = false;
  bool compare = false;
  std::string input;
  std::string output;
  double rel_tol = 0.0;

  void add_params(CLI::App* cmd) {
    cmd->add_option("--lambda", lambda, "per-capita birth rate");
    cmd->add_option("--mu", mu, "per-capita death rate");
    cmd->add_option("--rho", rho, "sublineage origination rate");
    cmd->add_option("--r", r, "rho/omega ratio");
    cmd->add_option("--theta", theta, "mu/lambda ratio");
  }
  void add_tols(CLI::App* cmd) {
    cmd->add_option("--rel-tol", rel_tol, "relative tolerance override");
  }

  bool ratios_given() const { return !std::isnan(r) || !std::isnan(theta); }
  bool rates_given() const {
    return !std::isnan(lambda) || !std::isnan(mu) || !std::isnan(rho);
  }

  ModelParams params() const {
    const bool rates = rates_given();
    const bool ratios = ratios_given();
    if (rates == ratios) {
      throw UsageError("supply exactly one of --lambda/--mu/--rho or "
                       "--r/--theta");
    }
    if (rates) {
      if (std::isnan(lambda) || std::isnan(mu) || std::isnan(rho)) {
        throw UsageError("--lambda, --mu and --rho must be given together");
      }
      return ModelParams(lambda, mu, rho);
    }
    if (std::isnan(r) || std::isnan(theta)) {
      throw UsageError("--r and --theta must be given together");
    }
    return ModelParams::from_ratios(r, theta);
  }

  SeriesControl series_control() const {
    SeriesControl s;
    if (rel_tol > 0.0) s.rel_tol = rel_tol;
    return s;
  }
  QuadratureConfig quad_config() const {
    QuadratureConfig q;
    if (rel_tol > 0.0) q.rel_tol = rel_tol;
    return q;
  }
};

std::vector<MethodKind> parse_methods(const std::string& spec) {
  if (spec == "exact") return {MethodKind::ExactSeries};
  if (spec == "exact-quad") return {MethodKind::ExactQuadrature};
  if (spec == "second-order") return {MethodKind::SecondOrder};
  if (spec == "asymptotic") return {MethodKind::Asymptotic};
  if (spec == "all") {
    return {MethodKind::ExactSeries, MethodKind::SecondOrder,
            MethodKind::Asymptotic};
  }
  throw UsageError("--method must be one of exact|exact-quad|second-order|"
                   "asymptotic|all, got '" + spec + "'");
}

const char* method_name(MethodKind m) {
  switch (m) {
    case MethodKind::ExactSeries: return "exact";
    case MethodKind::ExactQuadrature: return "exact-quad";
    case MethodKind::SecondOrder: return "second-order";
    case MethodKind::Asymptotic: return "asymptotic";
  }
  return "?";
}

std::vector<double> parse_p_spec(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(token, &pos));
      if (pos != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError("--p: unparsable token '" + token + "'");
    }
  }
  if (out.empty()) throw UsageError("--p requires at least one value");
  return out;
}

std::vector<std::int64_t> parse_n_spec(const std::string& spec) {
  if (spec.empty()) throw UsageError("--n requires a list or range");
  std::vector<std::int64_t> out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto dots = token.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoll(token));
      } else {
        const std::int64_t a = std::stoll(token.substr(0, dots));
        const std::int64_t b = std::stoll(token.substr(dots + 2));
        if (a > b) throw UsageError("--n range start exceeds end: " + token);
        if (b - a > 10000000) throw UsageError("--n range too large: " + token);
        for (std::int64_t v = a; v <= b; ++v) out.push_back(v);
      }
    } catch (const std::invalid_argument&) {
      throw UsageError("--n: unparsable token '" + token + "'");
    } catch (const std::out_of_range&) {
      throw UsageError("--n: token out of range '" + token + "'");
    }
  }
  if (out.empty()) throw UsageError("--n produced an empty grid");
  for (std::int64_t v : out) {
    if (v < 1) throw UsageError("--n values must be >= 1");
  }
  return out;
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("--output: cannot open '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }
  bool is_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

int cmd_pmf(const CommonFlags& f, std::ostream& out) {
  const ModelParams params = f.params();
  const auto ns = parse_n_spec(f.n_spec);
  OutputTarget target(f.output, out);
  std::ostream& os = target.stream();
  os << "n,method,value\n";
  if (f.has_tau) {
    const auto methods = parse_methods(f.method);
    if (methods.size() != 1 || methods[0] != MethodKind::ExactQuadrature) {
      throw UsageError("--tau: finite clade age requires --method exact-quad");
    }
    for (std::int64_t n : ns) {
      os << n << ",exact-quad,"
         << format_value(q_finite_tau(params, n, f.tau, f.quad_config()))
         << '\n';
    }
    return 0;
  }
  for (MethodKind m : parse_methods(f.method)) {
    for (std::int64_t n : ns) {
      os << n << ',' << method_name(m) << ','
         << format_value(q_pmf(params, n, m, f.quad_config(),
                               f.series_control()))
         << '\n';
    }
  }
  return 0;
}

int cmd_cdf(const CommonFlags& f, std::ostream& out) {
  const ModelParams params = f.params();
  auto ns = parse_n_spec(f.n_spec);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  OutputTarget target(f.output, out);
  std::ostream& os = target.stream();
  os << "n,method,value\n";
  for (MethodKind m : parse_methods(f.method)) {
    CdfRequest req{params, m, ns, CdfNormalization::SelfNormalized,
                   f.quad_config(), f.series_control()};
    for (const auto& [n, v] : cdf(req)) {
      os << n << ',' << method_name(m) << ',' << format_value(v) << '\n';
    }
  }
  return 0;
}

int cmd_quantile(const CommonFlags& f, std::ostream& out, std::ostream& err) {
  const ModelParams params = f.params();
  const std::vector<double> p_list = parse_p_spec(f.p_spec);
  OutputTarget target(f.output, out);
  std::ostream& os = target.stream();
  os << "p,method,n_star\n";
  for (MethodKind m : parse_methods(f.method)) {
    for (double p : p_list) {
      QuantileRequest req{params, m, p, f.quad_config(), f.series_control()};
      const std::int64_t n_star = quantile(req);
      os << format_value(p) << ',' << method_name(m) << ',' << n_star << '\n';
      for (const Table2Cell& cell : kTable2) {
        if (cell.p == p && std::abs(cell.r - params.r()) < 1e-12 &&
            std::abs(cell.theta - params.theta()) < 1e-12 &&
            ((cell.dist == 'E' && m == MethodKind::ExactSeries) ||
             (cell.dist == 'S' && m == MethodKind::SecondOrder) ||
             (cell.dist == 'A' && m == MethodKind::Asymptotic))) {
          err << "note: source table prints n*=" << cell.n_star
              << " for this cell (computed " << n_star << ")\n";
        }
      }
    }
  }
  return 0;
}

int cmd_table1(const CommonFlags& f, std::ostream& out) {
  OutputTarget target(f.output, out);
  std::ostream& os = target.stream();
  os << "r,theta,n,dist,computed,paper_value,diff\n";
  int failures = 0;
  std::map<std::pair<double, double>,
           std::map<char, std::unique_ptr<DistributionEvaluator>>>
      evals;
  for (const Table1Cell& cell : kTable1) {
    std::string computed = "NA";
    std::string diff = "NA";
    try {
      auto& ev = evals[{cell.r, cell.theta}][cell.dist];
      if (!ev) {
        const MethodKind m = cell.dist == 'E'   ? MethodKind::ExactSeries
                             : cell.dist == 'S' ? MethodKind::SecondOrder
                                                : MethodKind::Asymptotic;
        ev = std::make_unique<DistributionEvaluator>(
            ModelParams::from_ratios(cell.r, cell.theta), m, f.quad_config(),
            f.series_control());
      }
      const double v = ev->cdf(cell.n);
      computed = format_value(v);
      diff = format_value(v - cell.value);
    } catch (const std::exception&) {
      ++failures;
    }
    os << format_value(cell.r) << ',' << format_value(cell.theta) << ','
       << cell.n << ',' << cell.dist << ',' << computed << ','
       << format_value(cell.value) << ',' << diff << '\n';
  }
  return failures * 10 > static_cast<int>(kTable1.size()) ? 3 : 0;
}

int cmd_table2(const CommonFlags& f, std::ostream& out) {
  OutputTarget target(f.output, out);
  std::ostream& os = target.stream();
  os << "r,theta,p,dist,computed,paper_value,diff,note\n";
  int failures = 0;
  for (const Table2Cell& cell : kTable2) {
    std::string computed;
    std::string diff;
    std::string note;
    try {
      const MethodKind m = cell.dist == 'E'   ? MethodKind::ExactSeries
                           : cell.dist == 'S' ? MethodKind::SecondOrder
                                              : MethodKind::Asymptotic;
      QuantileRequest req{ModelParams::from_ratios(cell.r, cell.theta), m,
                          cell.p, f.quad_config(), f.series_control()};
      const std::int64_t n_star = quantile(req);
      computed = std::to_string(n_star);
      diff = std::to_string(n_star - cell.n_star);
    } catch (const QuantileOverflowError&) {
      note = "overflow_gt_int64max";
    } catch (const std::exception&) {
      computed = "NA";
      ++failures;
    }
    os << format_value(cell.r) << ',' << format_value(cell.theta) << ','
       << format_value(cell.p) << ',' << cell.dist << ',' << computed << ','
       << cell.n_star << ',' << diff << ',' << note << '\n';
  }
  return failures * 10 > static_cast<int>(kTable2.size()) ? 3 : 0;
}

int cmd_figures(const CommonFlags& f, std::ostream& out) {
  (void)out;
  const std::string prefix = f.output.empty() ? "figure_" : f.output;
  std::vector<std::int64_t> grid;
  for (int k = 0; k <= 60; ++k) {
    const auto n =
        static_cast<std::int64_t>(std::llround(std::pow(10.0, k / 10.0)));
    if (grid.empty() || n > grid.back()) grid.push_back(n);
  }
  struct Figure {
    const char* name;
    double r, theta;
  };
  const Figure figures[6] = {
      {"1a", 0.4, 0.01}, {"1b", 0.4, 0.1}, {"1c", 0.4, 0.4},
      {"2a", 0.1, 0.01}, {"2b", 0.1, 0.1}, {"2c", 0.1, 0.4},
  };
  for (const Figure& fig : figures) {
    std::ofstream os(prefix + "fig" + fig.name + ".csv");
    if (!os) throw UsageError("figures: cannot open output file under '" +
                              prefix + "'");
    os << "n,exact,second_order,asymptotic\n";
    const ModelParams params = ModelParams::from_ratios(fig.r, fig.theta);
    DistributionEvaluator e(params, MethodKind::ExactSeries, f.quad_config(),
                            f.series_control());
    DistributionEvaluator s(params, MethodKind::SecondOrder, f.quad_config(),
                            f.series_control());
    DistributionEvaluator a(params, MethodKind::Asymptotic, f.quad_config(),
                            f.series_control());
    for (std::int64_t n : grid) {
      os << n << ',' << format_value(e.cdf(n)) << ',' << format_value(s.cdf(n))
         << ',' << format_value(a.cdf(n)) << '\n';
    }
  }
  return 0;
}

int cmd_simulate(const CommonFlags& f, std::ostream& out, std::ostream& err) {
  if (!f.has_seed) throw UsageError("simulate: --seed is required");
  if (f.replicates < 1) throw UsageError("simulate: --replicates must be >= 1");
  SimulationConfig cfg{f.params(), f.replicates,
                       f.has_tau ? std::optional<double>(f.tau) : std::nullopt,
                       f.seed, true, f.cap};
  const SizeSample sample = sample_lineage_size(cfg);
  OutputTarget target(f.output, out);
  write_histogram_csv(sample, target.stream());
  std::ostream& meta = target.is_file() ? out : err;
  meta << "replicates=" << f.replicates << '\n'
       << "replicates_used=" << sample.n_replicates_used << '\n'
       << "truncation_rejections=" << sample.truncation_rejections << '\n'
       << "capped_replicates=" << sample.capped_replicates << '\n';
  if (f.compare) {
    const TvdComparison tvd = compare_histogram_to_exact(sample, cfg.params);
    meta << "tvd_pooled=" << format_value(tvd.pooled) << '\n'
         << "tvd_raw_restricted=" << format_value(tvd.raw_restricted) << '\n'
         << "pooled_singleton_max=" << tvd.singleton_max << '\n'
         << "pooled_overflow_start=" << tvd.overflow_start << '\n';
  }
  return 0;
}

int cmd_fit(const CommonFlags& f, std::ostream& out) {
  if (f.input.empty()) throw UsageError("fit: --input is required");
  std::ifstream is(f.input);
  if (!is) throw UsageError("fit: cannot open '" + f.input + "'");
  const ObservedCounts data = ObservedCounts::from_csv(is);
  std::optional<std::pair<double, double>> init;
  if (!std::isnan(f.r) && !std::isnan(f.theta)) init = {{f.r, f.theta}};
  const FitResult fit = fit_mle(data, init);
  out << "r_hat=" << format_value(fit.r_hat) << '\n'
      << "theta_hat=" << format_value(fit.theta_hat) << '\n'
      << "log_likelihood=" << format_value(fit.log_likelihood) << '\n'
      << "converged=" << (fit.converged ? "true" : "false") << '\n'
      << "iterations=" << fit.iterations << '\n'
      << "boundary_hit_r=" << (fit.boundary_hit_r ? "true" : "false") << '\n'
      << "boundary_hit_theta=" << (fit.boundary_hit_theta ? "true" : "false")
      << '\n';
  if (!f.output.empty()) {
    std::ofstream os(f.output);
    if (!os) throw UsageError("--output: cannot open '" + f.output + "'");
    os << "r_hat,theta_hat,log_likelihood,converged,iterations,"
          "boundary_hit_r,boundary_hit_theta\n"
       << format_value(fit.r_hat) << ',' << format_value(fit.theta_hat) << ','
       << format_value(fit.log_likelihood) << ','
       << (fit.converged ? 1 : 0) << ',' << fit.iterations << ','
       << (fit.boundary_hit_r ? 1 : 0) << ','
       << (fit.boundary_hit_theta ? 1 : 0) << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"lineage-size distributions of birth-death processes"};
  app.require_subcommand(1);

  CommonFlags f;
  auto* pmf = app.add_subcommand("pmf", "lineage-size pmf values");
  auto* cdf_cmd = app.add_subcommand("cdf", "cumulative distribution values");
  auto* quantile_cmd =
      app.add_subcommand("quantile", "upper percentiles n*");
  auto* table1 = app.add_subcommand("table1", "cumulative-probability table "
                                              "with printed values alongside");
  auto* table2 = app.add_subcommand("table2", "percentile table with printed "
                                              "values alongside");
  auto* figures = app.add_subcommand("figures", "CDF curves for the six "
                                                "figure panels");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo histogram");
  auto* fit = app.add_subcommand("fit", "maximum-likelihood fit of (r, theta)");

  for (CLI::App* cmd : {pmf, cdf_cmd, quantile_cmd, simulate, fit}) {
    f.add_params(cmd);
    f.add_tols(cmd);
  }
  f.add_tols(table1);
  f.add_tols(table2);
  f.add_tols(figures);
  for (CLI::App* cmd : {pmf, cdf_cmd}) {
    cmd->add_option("--method", f.method, "exact|exact-quad|second-order|"
                                          "asymptotic|all");
    cmd->add_option("--n", f.n_spec, "sizes: list 10,50,100 or range 1..10")
        ->required();
  }
  quantile_cmd->add_option("--method", f.method,
                           "exact|exact-quad|second-order|asymptotic|all");
  quantile_cmd->add_option("--p", f.p_spec, "upper tail probabilities, "
                                            "comma separated")
      ->required();
  pmf->add_option("--tau", f.tau, "finite clade age")
      ->each([&f](const std::string&) { f.has_tau = true; });
  simulate->add_option("--tau", f.tau, "finite clade age")
      ->each([&f](const std::string&) { f.has_tau = true; });
  simulate->add_option("--replicates", f.replicates, "replicate count");
  simulate->add_option("--cap", f.cap, "event budget per replicate");
  simulate->add_option("--seed", f.seed, "RNG seed (required)")
      ->each([&f](const std::string&) { f.has_seed = true; });
  simulate->add_flag("--compare", f.compare,
                     "print TVD against the exact pmf");
  fit->add_option("--input", f.input, "CSV of observed sizes");
  for (CLI::App* cmd :
       {pmf, cdf_cmd, quantile_cmd, table1, table2, figures, simulate, fit}) {
    cmd->add_option("--output", f.output, "output path (figures: prefix)");
  }

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("lineagedist");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()),
                const_cast<char**>(argv.data()));
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
    if (pmf->parsed()) return cmd_pmf(f, out);
    if (cdf_cmd->parsed()) return cmd_cdf(f, out);
    if (quantile_cmd->parsed()) return cmd_quantile(f, out, err);
    if (table1->parsed()) return cmd_table1(f, out);
    if (table2->parsed()) return cmd_table2(f, out);
    if (figures->parsed()) return cmd_figures(f, out);
    if (simulate->parsed()) return cmd_simulate(f, out, err);
    if (fit->parsed()) return cmd_fit(f, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace lineagedist
