#pragma once

#include <string>
#include <vector>

#include "smalleig/global.hpp"
#include "smalleig/matrix.hpp"
#include "smalleig/oneeig.hpp"

namespace smalleig {

// Scalars derived once per solve. Values are the verbatim formulas; the
// practical-mode roundoff floor on the decouple threshold is applied at
// runtime and never stored here.
struct ParameterLedger {
  double backward_target;     // Delta = delta sigma / 2
  double decouple_threshold;  // omega = min(eps, Delta) / (3n)
  double forward_accuracy;    // beta = omega / 20
  double mass_lower_bound;    // p = phi eps^2 / (2 n^5 zeta^2)
  double oneeig_failure_tol;  // varphi = phi / (2n)
  long m1;                    // dist_spec degree budget
  long m2;                    // decouple step budget, m2 <= m1
  double eta1;
  double eta2;
  double ginibre_scale;       // gamma (set by preprocess, else 0)
  double ginibre_norm_bound;  // W (set by preprocess, else 0)
  long required_bits;
};

ParameterLedger compute_parameters(double delta, double phi,
                                   const GlobalData& g);

// Pseudospectral and shattering parameters guaranteed, with probability
// 1 - phi, for M + gamma G_n. Returns {eps, zeta}.
struct ShatteringParams {
  double eps;
  double zeta;
};
ShatteringParams shattering_parameters(double norm_m, double gamma, double phi,
                                       int n);

struct PrecisionRequirement {
  long bits;
  std::string asymptotic;  // growth-order label for reporting
};
PrecisionRequirement required_precision(const ParameterLedger& ledger,
                                        const GlobalData& g);

enum class SolveMode { practical, theory };

struct SolveOptions {
  SolveMode mode = SolveMode::practical;
  int degree_cap = kDefaultDegreeCap;  // cap on m1/m2 in practical mode
  int retry_budget = -1;               // -1: ceil(log2(1/phi)) + 3
  bool record_traces = false;
};

struct DeflationNode {
  int dim;
  int retries = 0;
  std::vector<int> cuts;
  std::vector<DeflationNode> children;
};

struct EigenReport {
  std::vector<Complex> eigenvalues;
  int n;
  bool success;
  int rhess_calls;    // calls contributing to the output chain
  int decouple_calls;
  int deflate_calls;
  int retries;        // discarded rhess/one_eig rounds
  int budget_used;    // chain applications, <= 3(n-1) when retries = 0
  long required_bits;
  DeflationNode tree;
  std::vector<ShiftTrace> traces;  // populated when record_traces
};

struct PreprocessResult {
  ComplexMatrix perturbed;
  GlobalData global;
  ParameterLedger ledger;
};

// Ginibre regularization: perturbs M by gamma G_n with gamma = delta sigma /
// (4 W), W = 2 sqrt(2) + sqrt(log(6/phi)/n), and certifies (eps, zeta) at
// failure budget phi/3. ||perturbed - M|| <= delta ||M|| / 2 with probability
// at least 1 - phi/3.
PreprocessResult preprocess(const ComplexMatrix& M, double delta, double phi,
                            RngStream& rng);

// Recursive solve on a matrix whose pseudospectrum is already shattered for
// the global data (caller contract, normally via preprocess). Output is the
// exact spectrum of a matrix within backward distance 3(n-1) omega <= Delta
// of the unitary orbit of M.
EigenReport small_eig(const ComplexMatrix& M, double delta, double phi,
                      const GlobalData& g, RngStream& rng,
                      const SolveOptions& opt = {});

struct SolveOutcome {
  EigenReport report;
  ComplexMatrix perturbed;
  GlobalData global;
  ParameterLedger ledger;
};

// preprocess + small_eig(perturbed, delta/2, phi/3): eigenvalues of some
// matrix within delta ||M|| of M, with probability at least 1 - phi.
SolveOutcome solve(const ComplexMatrix& M, double delta, double phi,
                   RngStream& rng, const SolveOptions& opt = {});

// Forward-error wrapper: runs solve at accuracy (beta/12)^n so that every
// output is within beta ||M|| of a true eigenvalue under optimal labelling.
EigenReport forward_eig(const ComplexMatrix& M, double beta, double phi,
                        RngStream& rng, const SolveOptions& opt = {});

// Practical-mode floor for the decouple threshold (see solve internals).
double omega_floor(const GlobalData& g);

}  // namespace smalleig
