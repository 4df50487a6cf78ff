#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orthoclone/cli.hpp"
#include "orthoclone/cloneropt.hpp"
#include "orthoclone/pdcsim.hpp"

namespace orthoclone::cli {

using nlohmann::json;

std::string csv_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double json_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return std::strtod(buf, nullptr);
}

namespace {

enum class Format { kCsv, kJson };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

json optional_json(const std::optional<long long>& v) {
  return v ? json(*v) : json("none");
}

std::string optional_csv(const std::optional<long long>& v) {
  return v ? std::to_string(*v) : "none";
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
  long long m_min = 1;
  long long m_max = 20;
};

int cmd_scan(const ScanArgs& a, Format fmt, std::ostream& out) {
  if (a.m_min < 1 || a.m_max < a.m_min || a.m_max > 1'000'000) {
    throw UsageError("scan: need 1 <= m-min <= m-max <= 1000000");
  }
  json rows = json::array();
  if (fmt == Format::kCsv) write_csv_row(out, {"M", "f_perp", "f_parallel", "advantage"});
  for (long long M = a.m_min; M <= a.m_max; ++M) {
    const double fp = cloneropt::fidelity_perp(M);
    // The identical-pair cloner needs at least two outputs.
    std::optional<double> fpar;
    if (M >= 2) fpar = cloneropt::fidelity_parallel(2, M);
    if (fmt == Format::kCsv) {
      write_csv_row(out, {std::to_string(M), csv_number(fp),
                          fpar ? csv_number(*fpar) : "",
                          fpar ? csv_number(fp - *fpar) : ""});
    } else {
      rows.push_back({{"M", M},
                      {"f_perp", json_number(fp)},
                      {"f_parallel", fpar ? json(json_number(*fpar)) : json(nullptr)},
                      {"advantage", fpar ? json(json_number(fp - *fpar)) : json(nullptr)}});
    }
  }
  if (fmt == Format::kJson) out << json{{"rows", rows}}.dump(2) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  int M = 0;
  double tol = 1e-12;
  int max_iter = 10000;
};

int cmd_optimize(const OptimizeArgs& a, Format fmt, std::ostream& out,
                 std::ostream& err) {
  if (a.M < 1 || a.M > cloneropt::kMaxOperatorM) {
    throw UsageError("optimize: --m must lie in [1, 30]");
  }
  if (!(a.tol > 0.0) || a.max_iter < 1) {
    throw UsageError("optimize: --tol and --max-iter must be positive");
  }
  const cloneropt::FidelityOperator A = cloneropt::build_A(a.M);
  cloneropt::OptimizeResult result;
  bool converged = true;
  try {
    result = cloneropt::optimize_choi(A, {a.tol, a.max_iter});
  } catch (const cloneropt::NonConvergence& e) {
    err << e.what() << '\n';
    result = e.last();
    converged = false;
  }
  const double residual = cloneropt::extremal_residual(result.chi, result.certificate, A);
  const double fp = cloneropt::fidelity_perp(a.M);

  if (fmt == Format::kCsv) {
    write_csv_row(out, {"M", "fidelity", "f_perp", "iterations", "duality_gap",
                        "extremal_residual", "trace_defect", "converged"});
    write_csv_row(out, {std::to_string(a.M), csv_number(result.fidelity), csv_number(fp),
                        std::to_string(result.iterations), csv_number(result.duality_gap()),
                        csv_number(residual), csv_number(result.chi.trace_defect()),
                        csv_bool(converged)});
  } else {
    out << json{{"M", a.M},
                {"fidelity", json_number(result.fidelity)},
                {"f_perp", json_number(fp)},
                {"iterations", result.iterations},
                {"duality_gap", json_number(result.duality_gap())},
                {"extremal_residual", json_number(residual)},
                {"trace_defect", json_number(result.chi.trace_defect())},
                {"converged", converged}}
               .dump(2)
        << '\n';
  }
  return converged ? kSuccess : kNonConvergence;
}

// ---------------------------------------------------------------- certificate

int cmd_certificate(int M, Format fmt, std::ostream& out) {
  if (M < 1 || M > cloneropt::kMaxOperatorM) {
    throw UsageError("certificate: --m must lie in [1, 30]");
  }
  const cloneropt::FidelityOperator A = cloneropt::build_A(M);
  // Report rather than throw when the check fails; the psd field says so.
  const cloneropt::DualCertificate cert =
      cloneropt::certify(cloneropt::analytic_multiplier(M), A);
  const auto& ev = cert.distinct_eigenvalues;
  // Ascending order puts the zero eigenvalue first.
  const double mu3 = ev.size() > 0 ? ev[0] : NAN;
  const double mu1 = ev.size() > 1 ? ev[1] : NAN;
  const double mu2 = ev.size() > 2 ? ev[2] : NAN;
  const double fp = cloneropt::fidelity_perp(M);

  if (fmt == Format::kCsv) {
    std::vector<std::string> head{"M", "trace", "f_perp", "mu1", "mu2", "mu3",
                                  "min_eigenvalue", "psd"};
    std::vector<std::string> row{std::to_string(M), csv_number(cert.trace()),
                                 csv_number(fp), csv_number(mu1), csv_number(mu2),
                                 csv_number(mu3), csv_number(cert.min_eigenvalue),
                                 csv_bool(cert.feasible())};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        head.push_back("lambda_" + std::to_string(r) + std::to_string(c));
        row.push_back(csv_number(cert.lambda(r, c).real()));
      }
    write_csv_row(out, head);
    write_csv_row(out, row);
  } else {
    json lambda = json::array();
    for (int r = 0; r < 4; ++r) {
      json line = json::array();
      for (int c = 0; c < 4; ++c) line.push_back(json_number(cert.lambda(r, c).real()));
      lambda.push_back(line);
    }
    json distinct = json::array();
    for (double v : ev) distinct.push_back(json_number(v));
    out << json{{"M", M},
                {"basis", {"00", "11", "01", "10"}},
                {"lambda", lambda},
                {"trace", json_number(cert.trace())},
                {"f_perp", json_number(fp)},
                {"mu1", json_number(mu1)},
                {"mu2", json_number(mu2)},
                {"mu3", json_number(mu3)},
                {"distinct_eigenvalues", distinct},
                {"min_eigenvalue", json_number(cert.min_eigenvalue)},
                {"psd", cert.feasible()}}
               .dump(2)
        << '\n';
  }
  return kSuccess;
}

// ---------------------------------------------------------------- pdc

struct PdcArgs {
  int M = 0;
  double y_min = 0.0;
  double y_max = 1.0;
  int steps = 101;
};

int cmd_pdc(const PdcArgs& a, Format fmt, std::ostream& out) {
  if (a.M < 1) throw UsageError("pdc: --m must be at least 1");
  if (!(a.y_min >= 0.0) || !(a.y_max > a.y_min) || !std::isfinite(a.y_max)) {
    throw UsageError("pdc: need 0 <= y-min < y-max");
  }
  if (a.steps < 2) throw UsageError("pdc: --steps must be at least 2");

  std::vector<double> grid(static_cast<std::size_t>(a.steps));
  for (int i = 0; i < a.steps; ++i) {
    grid[i] = a.y_min + (a.y_max - a.y_min) * i / (a.steps - 1);
  }
  const auto rows = pdcsim::gain_scan(a.M, grid);
  const auto best = rows[pdcsim::best_row(rows)];
  const double y_opt = pdcsim::optimal_gain(a.M);
  const double f_opt = pdcsim::pdc_fidelity(a.M, y_opt);
  const double p_opt = pdcsim::pdc_amplitudes(pdcsim::GainParameter::from_y(y_opt), a.M).success_prob;

  if (fmt == Format::kCsv) {
    out << "# M=" << a.M << '\n'
        << "# y_opt=" << csv_number(y_opt) << '\n'
        << "# fidelity_at_y_opt=" << csv_number(f_opt) << '\n'
        << "# success_prob_at_y_opt=" << csv_number(p_opt) << '\n'
        << "# grid_best_y=" << csv_number(best.y) << '\n';
    write_csv_row(out, {"y", "fidelity", "success_prob"});
    for (const auto& r : rows) {
      write_csv_row(out, {csv_number(r.y), csv_number(r.fidelity), csv_number(r.success_prob)});
    }
  } else {
    json table = json::array();
    for (const auto& r : rows) {
      table.push_back({{"y", json_number(r.y)},
                       {"fidelity", json_number(r.fidelity)},
                       {"success_prob", json_number(r.success_prob)}});
    }
    out << json{{"M", a.M},
                {"y_opt", json_number(y_opt)},
                {"fidelity_at_y_opt", json_number(f_opt)},
                {"success_prob_at_y_opt", json_number(p_opt)},
                {"grid_best_y", json_number(best.y)},
                {"grid_best_fidelity", json_number(best.fidelity)},
                {"rows", table}}
               .dump(2)
        << '\n';
  }
  return kSuccess;
}

// ---------------------------------------------------------------- crossover

struct CrossoverArgs {
  long long N = 1;
  long long m_max = 100;
};

int cmd_crossover(const CrossoverArgs& a, Format fmt, std::ostream& out) {
  if (a.N < 1) throw UsageError("crossover: --n must be at least 1");
  if (a.m_max < a.N + 1 || a.m_max > 1'000'000) {
    throw UsageError("crossover: need n + 1 <= m-max <= 1000000");
  }
  const cloneropt::CrossoverResult res = cloneropt::crossover(a.N, a.m_max);

  if (fmt == Format::kCsv) {
    out << "# N=" << a.N << '\n'
        << "# m_max=" << a.m_max << '\n'
        << "# strict_crossover=" << optional_csv(res.strict) << '\n'
        << "# equality=" << optional_csv(res.equality) << '\n';
    write_csv_row(out, {"M", "f_perp_general", "f_parallel", "advantage"});
  }
  json curves = json::array();
  for (long long M = a.N + 1; M <= a.m_max; ++M) {
    const double fp = cloneropt::fidelity_perp_general(a.N, M);
    const double fpar = cloneropt::fidelity_parallel(a.N + 1, M);
    if (fmt == Format::kCsv) {
      write_csv_row(out, {std::to_string(M), csv_number(fp), csv_number(fpar),
                          csv_number(fp - fpar)});
    } else {
      curves.push_back({{"M", M},
                        {"f_perp_general", json_number(fp)},
                        {"f_parallel", json_number(fpar)},
                        {"advantage", json_number(fp - fpar)}});
    }
  }
  if (fmt == Format::kJson) {
    out << json{{"N", a.N},
                {"m_max", a.m_max},
                {"strict_crossover", optional_json(res.strict)},
                {"equality", optional_json(res.equality)},
                {"curves", curves}}
               .dump(2)
        << '\n';
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal cloning of orthogonal qubit pairs", "orthoclone"};
  app.require_subcommand(1);

  std::string format = "csv";
  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Closed-form fidelities of both cloners over a range of M");
  scan_cmd->add_option("--m-min", scan.m_min, "First clone count")->capture_default_str();
  scan_cmd->add_option("--m-max", scan.m_max, "Last clone count")->capture_default_str();
  add_format(scan_cmd);

  OptimizeArgs opt;
  auto* opt_cmd = app.add_subcommand("optimize", "Fixed-point optimization of the cloning map");
  opt_cmd->add_option("--m", opt.M, "Clone count")->required();
  opt_cmd->add_option("--tol", opt.tol, "Convergence threshold")->capture_default_str();
  opt_cmd->add_option("--max-iter", opt.max_iter, "Iteration budget")->capture_default_str();
  add_format(opt_cmd);

  int cert_m = 0;
  auto* cert_cmd = app.add_subcommand("certificate", "Dual optimality certificate");
  cert_cmd->add_option("--m", cert_m, "Clone count")->required();
  add_format(cert_cmd);

  PdcArgs pdc;
  auto* pdc_cmd = app.add_subcommand("pdc", "Down-conversion gain scan");
  pdc_cmd->add_option("--m", pdc.M, "Photons detected in mode 2")->required();
  pdc_cmd->add_option("--y-min", pdc.y_min, "Smallest gain y = sinh^2(gamma)")->capture_default_str();
  pdc_cmd->add_option("--y-max", pdc.y_max, "Largest gain")->capture_default_str();
  pdc_cmd->add_option("--steps", pdc.steps, "Number of grid points")->capture_default_str();
  add_format(pdc_cmd);

  CrossoverArgs cross;
  auto* cross_cmd = app.add_subcommand("crossover", "Smallest M where N+1 inputs with one flipped beat N+1 identical");
  cross_cmd->add_option("--n", cross.N, "Identical copies alongside the orthogonal qubit")->capture_default_str();
  cross_cmd->add_option("--m-max", cross.m_max, "Scan bound")->capture_default_str();
  add_format(cross_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "orthoclone: " << e.what() << '\n';
    return kUsageError;
  }

  const Format fmt = format == "json" ? Format::kJson : Format::kCsv;
  try {
    if (*scan_cmd) return cmd_scan(scan, fmt, out);
    if (*opt_cmd) return cmd_optimize(opt, fmt, out, err);
    if (*cert_cmd) return cmd_certificate(cert_m, fmt, out);
    if (*pdc_cmd) return cmd_pdc(pdc, fmt, out);
    if (*cross_cmd) return cmd_crossover(cross, fmt, out);
  } catch (const UsageError& e) {
    err << "orthoclone: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "orthoclone: " << e.what() << '\n';
    return kUsageError;
  } catch (const SizeError& e) {
    err << "orthoclone: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace orthoclone::cli
