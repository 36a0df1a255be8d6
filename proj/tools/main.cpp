#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "smalleig/battery.hpp"
#include "smalleig/driver.hpp"
#include "smalleig/errors.hpp"
#include "smalleig/hessenberg.hpp"
#include "smalleig/io.hpp"
#include "smalleig/verify.hpp"

namespace {

using namespace smalleig;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;       // I/O, parse, or validation failure
constexpr int kExitRetry = 2;       // probabilistic retry budget exhausted
constexpr int kExitPrecision = 3;   // theory-mode or roundoff-floor refusal

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw IoError("cannot write output file: " + output_path);
  out << text << "\n";
}

struct SolveArgs {
  std::string input, output;
  double delta = 0.1;
  double phi = 0.2;
  double beta = 0.0;  // > 0 selects the forward-error wrapper
  std::uint64_t seed = 0;
  std::string mode = "practical";
  int m_cap = kDefaultDegreeCap;
  int retry_budget = -1;
  bool trace = false;
};

int run_solve(const SolveArgs& a) {
  ComplexMatrix m = read_matrix_json(a.input);
  SolveOptions opt;
  opt.mode = (a.mode == "theory") ? SolveMode::theory : SolveMode::practical;
  opt.degree_cap = a.m_cap;
  opt.retry_budget = a.retry_budget;
  opt.record_traces = a.trace;
  RngStream rng(a.seed);
  try {
    EigenReport report =
        (a.beta > 0.0) ? forward_eig(m, a.beta, a.phi, rng, opt)
                       : solve(m, a.delta, a.phi, rng, opt).report;
    emit(report_to_json_string(report), a.output);
    return kExitOk;
  } catch (const RetryBudgetExceeded& e) {
    emit(failure_report_json_string(m.dim(), 0, e.what()), a.output);
    return kExitRetry;
  } catch (const PrecisionInsufficient& e) {
    emit(failure_report_json_string(m.dim(), e.required_bits, e.what()),
         a.output);
    return kExitPrecision;
  }
}

struct DistSpecArgs {
  std::string input;
  double shift_re = 0.0, shift_im = 0.0;
  int degree = 1;
  bool check = false;
};

int run_distspec(const DistSpecArgs& a) {
  if (a.degree < 1) throw IoError("--m must be >= 1");
  ComplexMatrix m = read_matrix_json(a.input);
  HessenbergMatrix h = is_hessenberg(m) ? HessenbergMatrix(m)
                                         : hess_bu(m).H;
  Complex s(a.shift_re, a.shift_im);
  DistSpecResult r = dist_spec(h, s, a.degree);
  std::printf("tau = %.17g\n", r.tau);
  if (a.check) {
    std::vector<Complex> eigs = verify::oracle_eigenvalues(h.matrix());
    double d = std::numeric_limits<double>::infinity();
    for (const Complex& z : eigs) d = std::min(d, std::abs(s - z));
    std::printf("oracle_dist = %.17g\n", d);
    std::printf("bracket = [%.17g, %.17g] %s\n", 0.9 * d, 1.1 * d,
                (r.tau >= 0.9 * d && r.tau <= 1.1 * d) ? "ok" : "MISS");
  }
  return kExitOk;
}

struct PseudoArgs {
  std::string input, output;
  double eps = 0.0;
  std::vector<double> box;  // re_min, re_max, im_min, im_max
  double step = 0.0;
};

int run_pseudospec(const PseudoArgs& a) {
  if (a.box.size() != 4) throw IoError("--box needs re_min,re_max,im_min,im_max");
  double re_min = a.box[0], re_max = a.box[1], im_min = a.box[2],
         im_max = a.box[3];
  if (!(a.step > 0.0) || re_max < re_min || im_max < im_min ||
      a.step > (re_max - re_min) || a.step > (im_max - im_min)) {
    throw IoError("grid step must be positive and no wider than the box");
  }
  if (a.eps < 0.0) throw IoError("--eps must be >= 0");
  ComplexMatrix m = read_matrix_json(a.input);
  std::vector<verify::PseudospecSample> grid =
      verify::pseudospectrum_grid(m, re_min, re_max, im_min, im_max, a.step);
  std::string text = "re,im,sigma_min,in_pseudospectrum\n";
  char line[128];
  for (const verify::PseudospecSample& p : grid) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%d\n", p.re, p.im,
                  p.sigma_min, p.sigma_min <= a.eps ? 1 : 0);
    text += line;
  }
  if (!text.empty() && text.back() == '\n') text.pop_back();
  emit(text, a.output);
  return kExitOk;
}

int run_verify(int trials, std::uint64_t seed) {
  if (trials < 1) throw IoError("--trials must be >= 1");
  double scale = std::min(1.0, std::max(0.01, trials / 1000.0));
  std::vector<battery::CheckResult> results = battery::run_battery(scale, seed);
  bool all = true;
  for (const battery::CheckResult& r : results) {
    std::printf("%s: %s (%s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all = all && r.pass;
  }
  return all ? kExitOk : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized shifted-inverse-iteration eigensolver"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "compute all eigenvalues of a matrix file");
  solve_cmd->add_option("--input", sa.input, "matrix JSON file")->required();
  solve_cmd->add_option("--output", sa.output, "report JSON file (default stdout)");
  solve_cmd->add_option("--delta", sa.delta, "relative backward accuracy");
  solve_cmd->add_option("--phi", sa.phi, "failure probability tolerance");
  solve_cmd->add_option("--beta", sa.beta,
                        "forward accuracy; selects the forward-error wrapper");
  solve_cmd->add_option("--seed", sa.seed, "RNG seed")->required();
  solve_cmd->add_option("--mode", sa.mode, "practical|theory")
      ->check(CLI::IsMember({"practical", "theory"}));
  solve_cmd->add_option("--m-cap", sa.m_cap, "practical-mode degree cap");
  solve_cmd->add_option("--retry-budget", sa.retry_budget,
                        "consecutive retries before giving up (-1 = auto)");
  solve_cmd->add_flag("--trace", sa.trace, "record shift traces in the report");

  DistSpecArgs da;
  CLI::App* dist_cmd = app.add_subcommand(
      "distspec", "estimate the distance from a point to the spectrum");
  dist_cmd->add_option("--input", da.input, "matrix JSON file")->required();
  dist_cmd->add_option("--shift-re", da.shift_re, "shift real part")->required();
  dist_cmd->add_option("--shift-im", da.shift_im, "shift imaginary part");
  dist_cmd->add_option("--m", da.degree, "iteration degree")->required();
  dist_cmd->add_flag("--verify", da.check, "print the oracle distance and bracket");

  PseudoArgs pa;
  CLI::App* pseudo_cmd =
      app.add_subcommand("pseudospec", "sigma_min over a grid, as CSV");
  pseudo_cmd->add_option("--input", pa.input, "matrix JSON file")->required();
  pseudo_cmd->add_option("--eps", pa.eps, "pseudospectrum level")->required();
  pseudo_cmd->add_option("--box", pa.box, "re_min,re_max,im_min,im_max")
      ->required()
      ->delimiter(',');
  pseudo_cmd->add_option("--step", pa.step, "grid step")->required();
  pseudo_cmd->add_option("--output", pa.output, "CSV file (default stdout)");

  int trials = 200;
  std::uint64_t verify_seed = 20260801;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the verification battery at reduced trial counts");
  verify_cmd->add_option("--trials", trials, "trial budget (1000 = full scale)");
  verify_cmd->add_option("--seed", verify_seed, "RNG seed");

  try {
    app.parse(argc, argv);
    if (solve_cmd->parsed()) return run_solve(sa);
    if (dist_cmd->parsed()) return run_distspec(da);
    if (pseudo_cmd->parsed()) return run_pseudospec(pa);
    if (verify_cmd->parsed()) return run_verify(trials, verify_seed);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
